//! Deterministic scene builders shared by unit tests.

use super::{Category, ObjectId, ObjectState, Scene, SupportRef};
use crate::geometry::{Polygon, Pose2};
use crate::perception::TableModel;
use crate::sim::materials::category_spec;

pub const TABLE_LONG: f64 = 0.90;
pub const TABLE_SHORT: f64 = 0.55;
pub const HOLDER_CENTER: (f64, f64) = (-0.22, 0.16);
pub const STACK_ZONE: (f64, f64) = (0.28, 0.16);

pub fn table() -> TableModel {
    TableModel::from_support_polygon(Polygon::rectangle(0.0, 0.0, TABLE_LONG, TABLE_SHORT), 0.0)
}

pub fn holder_region() -> Polygon {
    let spec = category_spec(Category::PenHolder);
    let (w, h) = spec.shape.bbox();
    Polygon::rectangle(HOLDER_CENTER.0, HOLDER_CENTER.1, w, h)
}

/// Object with mid-range height/mass/material, so tests are deterministic.
pub fn object(id: &str, category: Category, pose: Pose2) -> ObjectState {
    let spec = category_spec(category);
    let mid = |(lo, hi): (f64, f64)| 0.5 * (lo + hi);
    ObjectState {
        id: ObjectId::from(id),
        category,
        footprint: spec.shape.polygon(),
        pose,
        height: mid(spec.height),
        mass: mid(spec.mass),
        material: spec.material.sample(0.5, 0.5),
        supported_by: SupportRef::Desktop,
    }
}

pub fn scene_with(objects: Vec<ObjectState>) -> Scene {
    let mut scene = Scene {
        table: table(),
        objects,
        pen_holder_region: holder_region(),
        stack_zone: Pose2::new(STACK_ZONE.0, STACK_ZONE.1, 0.0),
        rng_seed: 0,
    };
    scene.refresh_support().expect("test scene resolves support");
    scene.validate().expect("test scene is valid");
    scene
}

pub fn two_on_desktop() -> Scene {
    scene_with(vec![
        object("pen", Category::Pen, Pose2::new(0.05, -0.10, 0.4)),
        object("eraser", Category::Eraser, Pose2::new(-0.12, -0.18, 1.2)),
    ])
}

pub fn eraser_on_book() -> Scene {
    scene_with(vec![
        object("book", Category::Book, Pose2::new(0.10, -0.05, 0.2)),
        object("eraser", Category::Eraser, Pose2::new(0.11, -0.04, 1.0)),
    ])
}

pub fn paper_on_desktop() -> Scene {
    scene_with(vec![object(
        "paper",
        Category::Paper,
        Pose2::new(-0.05, -0.12, 0.3),
    )])
}

pub fn ruler_on_book() -> Scene {
    scene_with(vec![
        object("book", Category::Book, Pose2::new(0.10, -0.08, 0.0)),
        object(
            "ruler",
            Category::StraightRuler,
            Pose2::new(0.11, -0.07, 0.35),
        ),
    ])
}

pub fn ruler_on_paper() -> Scene {
    scene_with(vec![
        object("paper", Category::Paper, Pose2::new(0.0, -0.12, 0.0)),
        object(
            "ruler",
            Category::StraightRuler,
            Pose2::new(0.01, -0.11, 0.2),
        ),
    ])
}
