//! Minimum-area oriented bounding rectangle (rotating calipers).

use super::{convex_hull, GeometryError, OrientedRect, Point2, Polygon, Vec2};

/// Minimum-area oriented rectangle containing the polygon. One side of the
/// optimum is collinear with a hull edge, so only hull-edge directions are
/// scanned; ties keep the first (lowest hull edge index) candidate.
pub fn min_area_rect(poly: &Polygon) -> Result<OrientedRect, GeometryError> {
    min_area_rect_of_points(poly.vertices())
}

pub(crate) fn min_area_rect_of_points(points: &[Point2]) -> Result<OrientedRect, GeometryError> {
    let hull = convex_hull(points)?;
    let v = hull.vertices();
    let n = v.len();

    let mut best: Option<(f64, usize, f64, f64, f64, f64)> = None; // area, edge, extents
    for i in 0..n {
        let u = (v[(i + 1) % n] - v[i]).normalized().expect("hull edge");
        let w = u.perp();
        let (mut lo_u, mut hi_u) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_w, mut hi_w) = (f64::INFINITY, f64::NEG_INFINITY);
        for &p in v {
            let d = p - v[i];
            let pu = d.dot(u);
            let pw = d.dot(w);
            lo_u = lo_u.min(pu);
            hi_u = hi_u.max(pu);
            lo_w = lo_w.min(pw);
            hi_w = hi_w.max(pw);
        }
        let area = (hi_u - lo_u) * (hi_w - lo_w);
        if best.map_or(true, |b| area < b.0) {
            best = Some((area, i, lo_u, hi_u, lo_w, hi_w));
        }
    }

    let (_, i, lo_u, hi_u, lo_w, hi_w) = best.expect("hull has edges");
    let u = (v[(i + 1) % n] - v[i]).normalized().expect("hull edge");
    let w = u.perp();
    let cu = 0.5 * (lo_u + hi_u);
    let cw = 0.5 * (lo_w + hi_w);
    let center = v[i] + u * cu + w * cw;
    let mut a = 0.5 * (hi_u - lo_u);
    let mut b = 0.5 * (hi_w - lo_w);
    let mut angle = u.angle();
    if a < b {
        std::mem::swap(&mut a, &mut b);
        angle += std::f64::consts::FRAC_PI_2;
    }
    Ok(OrientedRect {
        center,
        half_extents: (a, b),
        angle: super::normalize_orientation(angle),
    })
}

/// Signed distance from a point to the rectangle boundary (negative inside).
/// Test helper for containment checks with explicit tolerances.
#[cfg(test)]
pub(crate) fn rect_signed_distance(rect: &OrientedRect, p: Point2) -> f64 {
    let u = Vec2::unit(rect.angle);
    let w = u.perp();
    let d = p - rect.center;
    let du = d.dot(u).abs() - rect.half_extents.0;
    let dw = d.dot(w).abs() - rect.half_extents.1;
    du.max(dw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    /// Angle-sweep reference: scan orientations in small steps and take the
    /// smallest axis-aligned bounding box in each rotated frame. The sweep
    /// brackets the true optimum, so the calipers result must not exceed it
    /// by more than the sweep's angular resolution allows.
    pub(crate) fn sweep_min_area(points: &[Point2], step_deg: f64) -> f64 {
        let mut best = f64::INFINITY;
        let mut deg = 0.0f64;
        while deg < 90.0 {
            let u = Vec2::unit(deg.to_radians());
            let w = u.perp();
            let (mut lo_u, mut hi_u) = (f64::INFINITY, f64::NEG_INFINITY);
            let (mut lo_w, mut hi_w) = (f64::INFINITY, f64::NEG_INFINITY);
            for &p in points {
                let d = p - Point2::new(0.0, 0.0);
                lo_u = lo_u.min(d.dot(u));
                hi_u = hi_u.max(d.dot(u));
                lo_w = lo_w.min(d.dot(w));
                hi_w = hi_w.max(d.dot(w));
            }
            best = best.min((hi_u - lo_u) * (hi_w - lo_w));
            deg += step_deg;
        }
        best
    }

    #[test]
    fn axis_aligned_rectangle() {
        let p = Polygon::rectangle(0.0, 0.0, 0.3, 0.04);
        let r = min_area_rect(&p).unwrap();
        assert_relative_eq!(r.half_extents.0, 0.15, epsilon = 1e-12);
        assert_relative_eq!(r.half_extents.1, 0.02, epsilon = 1e-12);
        assert_relative_eq!(r.angle, 0.0, epsilon = 1e-12);
        assert_relative_eq!(r.center.x, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rotated_unit_square() {
        let s = std::f64::consts::FRAC_PI_4;
        let verts: Vec<Point2> = [(0.5, 0.0), (0.0, 0.5), (-0.5, 0.0), (0.0, -0.5)]
            .iter()
            .map(|&(x, y)| Point2::new(x * 2.0f64.sqrt(), y * 2.0f64.sqrt()))
            .collect();
        let p = Polygon::new(verts).unwrap();
        let r = min_area_rect(&p).unwrap();
        assert_relative_eq!(r.area(), 1.0, epsilon = 1e-9);
        // Square orientation is only defined mod pi/2.
        let folded = r.angle.rem_euclid(std::f64::consts::FRAC_PI_2);
        assert!(
            (folded - s).abs() < 1e-9 || folded.min(std::f64::consts::FRAC_PI_2 - folded) < 1e-9,
            "angle {} not 45 deg mod 90",
            r.angle
        );
    }

    #[test]
    fn matches_sweep_oracle_on_seeded_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let n = rng.gen_range(4..25);
            let pts: Vec<Point2> = (0..n)
                .map(|_| Point2::new(rng.gen_range(-0.4..0.4), rng.gen_range(-0.3..0.3)))
                .collect();
            let Ok(r) = min_area_rect_of_points(&pts) else { continue };
            let sweep = sweep_min_area(&pts, 0.05);
            // The sweep only brackets the optimum from above.
            assert!(
                r.area() <= sweep * (1.0 + 1e-9),
                "calipers {} worse than sweep {}",
                r.area(),
                sweep
            );
            assert!(sweep <= r.area() * 1.001, "sweep beat calipers: {} vs {}", sweep, r.area());
        }
    }

    proptest! {
        #[test]
        fn contains_all_points_and_invariants(
            pts in proptest::collection::vec((-0.4f64..0.4, -0.3f64..0.3), 3..20)
        ) {
            let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
            if let Ok(r) = min_area_rect_of_points(&pts) {
                prop_assert!(r.half_extents.0 >= r.half_extents.1);
                prop_assert!((0.0..std::f64::consts::PI).contains(&r.angle));
                for p in &pts {
                    prop_assert!(rect_signed_distance(&r, *p) <= 1e-9);
                }
            }
        }
    }
}
