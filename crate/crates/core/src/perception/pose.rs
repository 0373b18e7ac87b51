//! Pose and keypoint estimation from 2D object contours.

use super::{PerceptionConfig, PerceptionError};
use crate::geometry::{approx_polygon, convex_hull, min_area_rect, Point2, Polygon, Pose2};

/// Pose of a contour from its minimum-area bounding rectangle.
///
/// Returns the rectangle center/orientation as a [`Pose2`] (theta in
/// [0, pi), the long-axis direction) and the full extents
/// `(length, width)` with `length >= width`.
pub fn estimate_pose_minrect(contour: &Polygon) -> Result<(Pose2, (f64, f64)), PerceptionError> {
    let rect = min_area_rect(contour)?;
    let pose = Pose2::new(rect.center.x, rect.center.y, rect.angle);
    let (a, b) = rect.half_extents;
    Ok((pose, (2.0 * a, 2.0 * b)))
}

/// Contour vertices worth grasp-planning against: the convex hull reduced
/// by polygon approximation at `cfg.approx_epsilon`. CCW, starting at the
/// lexicographically smallest vertex, so equal inputs give equal output
/// order.
pub fn extract_keypoints(
    contour: &Polygon,
    cfg: &PerceptionConfig,
) -> Result<Vec<Point2>, PerceptionError> {
    let hull = convex_hull(contour.vertices())?;
    let simplified = approx_polygon(&hull, cfg.approx_epsilon)?;
    Ok(simplified.vertices().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::normalize_orientation;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn rect_contour(cx: f64, cy: f64, w: f64, h: f64, theta: f64) -> Polygon {
        let pose = Pose2::new(cx, cy, theta);
        let verts = [
            Point2::new(-w / 2.0, -h / 2.0),
            Point2::new(w / 2.0, -h / 2.0),
            Point2::new(w / 2.0, h / 2.0),
            Point2::new(-w / 2.0, h / 2.0),
        ]
        .iter()
        .map(|p| pose.apply(*p))
        .collect();
        Polygon::new(verts).unwrap()
    }

    #[test]
    fn eraser_footprint_at_30_degrees() {
        let theta = 30f64.to_radians();
        let contour = rect_contour(0.11, -0.04, 0.060, 0.022, theta);
        let (pose, dims) = estimate_pose_minrect(&contour).unwrap();
        assert_abs_diff_eq!(pose.position.x, 0.11, epsilon = 1e-9);
        assert_abs_diff_eq!(pose.position.y, -0.04, epsilon = 1e-9);
        assert_abs_diff_eq!(pose.theta, theta, epsilon = 1e-9);
        assert_abs_diff_eq!(dims.0, 0.060, epsilon = 1e-9);
        assert_abs_diff_eq!(dims.1, 0.022, epsilon = 1e-9);
    }

    #[test]
    fn axis_aligned_footprint_is_theta_zero() {
        let contour = rect_contour(0.0, 0.0, 0.3, 0.035, 0.0);
        let (pose, dims) = estimate_pose_minrect(&contour).unwrap();
        assert_abs_diff_eq!(pose.theta, 0.0, epsilon = 1e-12);
        assert!(dims.0 >= dims.1);
    }

    #[test]
    fn square_keypoints_are_its_corners() {
        let contour = rect_contour(0.0, 0.0, 0.1, 0.1, 0.0);
        let kp = extract_keypoints(&contour, &PerceptionConfig::default()).unwrap();
        assert_eq!(kp.len(), 4);
        assert_abs_diff_eq!(kp[0].x, -0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(kp[0].y, -0.05, epsilon = 1e-12);
    }

    #[test]
    fn triangle_contour_gives_three_keypoints() {
        // 30-60-90 triangle footprint, legs 0.15 and 0.2598.
        let contour = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.2598, 0.0),
            Point2::new(0.0, 0.15),
        ])
        .unwrap();
        let kp = extract_keypoints(&contour, &PerceptionConfig::default()).unwrap();
        assert_eq!(kp.len(), 3);
    }

    #[test]
    fn jittered_ruler_contour_gives_four_corner_keypoints() {
        // Straight-ruler rectangle with sub-millimeter inward edge jitter.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let (w, h) = (0.30, 0.035);
        let mut verts = Vec::new();
        let corners = [
            Point2::new(-w / 2.0, -h / 2.0),
            Point2::new(w / 2.0, -h / 2.0),
            Point2::new(w / 2.0, h / 2.0),
            Point2::new(-w / 2.0, h / 2.0),
        ];
        for i in 0..4 {
            let a = corners[i];
            let b = corners[(i + 1) % 4];
            verts.push(a);
            for s in 1..8 {
                let t = s as f64 / 8.0;
                let inward = rng.gen_range(0.0..0.0009);
                let n = (b - a).perp().normalized().unwrap();
                // Polygon is CCW, so the left normal points inward… for this
                // vertex order the inward direction is +perp of the edge.
                verts.push(Point2::new(
                    a.x + (b.x - a.x) * t + n.x * inward,
                    a.y + (b.y - a.y) * t + n.y * inward,
                ));
            }
        }
        let contour = Polygon::new(verts).unwrap();
        let kp = extract_keypoints(&contour, &PerceptionConfig::default()).unwrap();
        assert_eq!(kp.len(), 4);
        for c in corners {
            let nearest = kp
                .iter()
                .map(|p| (*p - c).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 0.002, "corner {:?} off by {}", c, nearest);
        }
    }

    proptest! {
        // Rotating the contour rotates the recovered orientation (mod pi).
        #[test]
        fn minrect_pose_rotation_equivariant(
            theta0 in 0.0..std::f64::consts::PI,
            phi in -3.0..3.0f64,
            w in 0.05..0.4f64,
            aspect in 1.3..6.0f64,
        ) {
            let h = w / aspect;
            let c0 = rect_contour(0.0, 0.0, w, h, theta0);
            let c1 = c0.transformed(&Pose2::new(0.0, 0.0, phi));
            let (p0, _) = estimate_pose_minrect(&c0).unwrap();
            let (p1, _) = estimate_pose_minrect(&c1).unwrap();
            let expect = normalize_orientation(p0.theta + phi);
            let mut diff = (p1.theta - expect).abs();
            diff = diff.min((diff - std::f64::consts::PI).abs());
            prop_assert!(diff < 1e-9, "diff {}", diff);
        }
    }
}
