//! Object catalog: per-category footprint shapes, height/mass ranges, and
//! material parameters used by the scenario generator.
//!
//! Dimensions are fixed per category (placement-feasibility calibration in
//! the acceptance suite depends on them); heights and masses are ranges the
//! generator samples per instance.

use super::{Category, Material};
use crate::geometry::{Point2, Polygon};

/// Body-frame footprint template. Both variants are centered on their
/// bounding box, so an instance's `pose.position` is its bbox center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FootprintShape {
    /// Full extents (long, short) of an axis-aligned rectangle.
    Rect(f64, f64),
    /// Right triangle with legs along +x and +y from the right-angle
    /// corner at (-a/2, -b/2).
    RightTriangle(f64, f64),
}

impl FootprintShape {
    pub fn polygon(&self) -> Polygon {
        match *self {
            FootprintShape::Rect(w, h) => Polygon::rectangle(0.0, 0.0, w, h),
            FootprintShape::RightTriangle(a, b) => Polygon::new(vec![
                Point2::new(-a / 2.0, -b / 2.0),
                Point2::new(a / 2.0, -b / 2.0),
                Point2::new(-a / 2.0, b / 2.0),
            ])
            .expect("triangle template is valid"),
        }
    }

    /// Full extents of the bounding box.
    pub fn bbox(&self) -> (f64, f64) {
        match *self {
            FootprintShape::Rect(w, h) => (w, h),
            FootprintShape::RightTriangle(a, b) => (a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialRange {
    Rigid,
    Paper { gsm: (f64, f64) },
    Book { thickness: (f64, f64), spine_gap: (f64, f64) },
}

impl MaterialRange {
    /// Materialize with a unit sample u ∈ [0, 1) per range.
    pub fn sample(&self, u1: f64, u2: f64) -> Material {
        let lerp = |(lo, hi): (f64, f64), u: f64| lo + (hi - lo) * u;
        match *self {
            MaterialRange::Rigid => Material::Rigid,
            MaterialRange::Paper { gsm } => Material::Paper { gsm: lerp(gsm, u1) },
            MaterialRange::Book { thickness, spine_gap } => Material::Book {
                thickness: lerp(thickness, u1),
                spine_gap: lerp(spine_gap, u2),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategorySpec {
    pub category: Category,
    pub shape: FootprintShape,
    /// Sampled uniform per instance, meters.
    pub height: (f64, f64),
    /// Sampled uniform per instance, kilograms.
    pub mass: (f64, f64),
    pub material: MaterialRange,
}

/// The full category table. Books' thickness range stays inside the
/// high-success prying band; paper weights stay under the 70 mm-offset
/// critical GSM.
pub fn material_catalog() -> &'static [CategorySpec] {
    const CATALOG: &[CategorySpec] = &[
        CategorySpec {
            category: Category::Pen,
            shape: FootprintShape::Rect(0.140, 0.008),
            height: (0.008, 0.008),
            mass: (0.008, 0.012),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::Eraser,
            shape: FootprintShape::Rect(0.060, 0.022),
            height: (0.010, 0.012),
            mass: (0.020, 0.030),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::LeadCase,
            shape: FootprintShape::Rect(0.075, 0.025),
            height: (0.008, 0.012),
            mass: (0.010, 0.020),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::StraightRuler,
            shape: FootprintShape::Rect(0.300, 0.035),
            height: (0.002, 0.002),
            mass: (0.015, 0.025),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::TriangleRuler30,
            shape: FootprintShape::RightTriangle(0.2598, 0.150),
            height: (0.002, 0.002),
            mass: (0.012, 0.020),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::TriangleRuler45,
            shape: FootprintShape::RightTriangle(0.160, 0.160),
            height: (0.002, 0.002),
            mass: (0.010, 0.018),
            material: MaterialRange::Rigid,
        },
        CategorySpec {
            category: Category::Paper,
            shape: FootprintShape::Rect(0.297, 0.210),
            height: (0.0005, 0.0005),
            mass: (0.004, 0.006),
            material: MaterialRange::Paper { gsm: (70.0, 80.0) },
        },
        CategorySpec {
            category: Category::Book,
            shape: FootprintShape::Rect(0.260, 0.190),
            height: (0.011, 0.013),
            mass: (0.200, 0.300),
            material: MaterialRange::Book {
                thickness: (0.011, 0.013),
                spine_gap: (0.003, 0.007),
            },
        },
        CategorySpec {
            category: Category::PenHolder,
            shape: FootprintShape::Rect(0.340, 0.180),
            height: (0.100, 0.100),
            mass: (0.250, 0.350),
            material: MaterialRange::Rigid,
        },
    ];
    CATALOG
}

pub fn category_spec(cat: Category) -> &'static CategorySpec {
    material_catalog()
        .iter()
        .find(|s| s.category == cat)
        .expect("every category is cataloged")
}
