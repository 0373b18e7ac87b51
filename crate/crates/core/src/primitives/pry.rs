//! Pry grasp: lever a book up by its spine, then pull it onto a stack.
//!
//! A closed book lying flat offers no pinchable face, but the spine edge
//! overhangs the cover gap. One fingertip slides against the desk at the
//! spine's base while the gripper tilts by the prying angle α, wedging the
//! spine between the fingers; pulling toward the gripper then pivots the
//! book upright enough to lift.
//!
//! α is chosen from the calibrated reliability bands for the book's
//! thickness: the configured default when the whole band is reliable,
//! clipped into the reliable interval otherwise. Books too thick to wedge
//! at any tested angle are refused.

use super::feasibility::FeasibilityTables;
use super::gripper::GripperModel;
use super::{PrimitiveConfig, PrimitiveError};
use crate::geometry::{GripperPose, Point2, Point3, Pose2, Vec2};
use crate::sim::{Category, ObjectId, ObjectState, Scene};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PryPlan {
    pub object_id: ObjectId,
    /// Pose the plan was computed against; executing against a moved
    /// object is refused.
    pub planned_pose: Pose2,
    /// Fingertip pose at the spine's base: yaw faces into the book, the
    /// tilt is the prying angle.
    pub contact_pose: GripperPose,
    /// Prying angle actually used, radians.
    pub alpha: f64,
    /// How far the gripper opens to admit the spine: atan(thickness over
    /// finger length).
    pub opening_angle: f64,
    /// Unit direction the spine is dragged while levering, away from the
    /// book's body.
    pub pull_vector: Vec2,
    /// Where the book goes once lifted.
    pub place_pose: Pose2,
}

/// Plan a spine pry for a book, destined for `stack_target`.
pub fn plan_pry_grasp(
    obj: &ObjectState,
    scene: &Scene,
    stack_target: Pose2,
    cfg: &PrimitiveConfig,
    tables: &FeasibilityTables,
) -> Result<PryPlan, PrimitiveError> {
    if obj.category != Category::Book {
        return Err(PrimitiveError::UnsupportedCategory(obj.category));
    }
    let thickness = obj
        .book_thickness()
        .ok_or(PrimitiveError::UnsupportedCategory(obj.category))?;

    let (lo_deg, hi_deg) = tables
        .pry_feasible_alpha_deg(thickness, cfg.feasible_threshold)
        .ok_or(PrimitiveError::InfeasibleThickness(thickness))?;
    let alpha = cfg
        .default_pry_alpha
        .clamp(lo_deg.to_radians(), hi_deg.to_radians());

    // The spine runs along the long edge on the body frame's -y side.
    let (long, short) = {
        let (bx, by) = obj.footprint.bounding_box();
        (by.x - bx.x, by.y - bx.y)
    };
    debug_assert!(long >= short);
    let spine_mid_body = Point2::new(0.0, -0.5 * short);
    let spine_mid = obj.pose.apply(spine_mid_body);
    // Perpendicular to the spine: +y in body frame faces into the book.
    let into = Vec2::unit(obj.pose.theta + FRAC_PI_2);

    let base = scene.base_z(&obj.id)?;
    let contact_pose = GripperPose {
        position: Point3 {
            x: spine_mid.x,
            y: spine_mid.y,
            z: base,
        },
        yaw: into.angle(),
        tilt: alpha,
    };

    let gripper = GripperModel::default();
    Ok(PryPlan {
        object_id: obj.id.clone(),
        planned_pose: obj.pose,
        contact_pose,
        alpha,
        opening_angle: thickness.atan2(gripper.finger_length_l),
        pull_vector: -into,
        place_pose: stack_target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::test_scene;
    use crate::sim::Material;
    use approx::assert_relative_eq;

    fn book_scene(theta: f64, thickness: f64) -> Scene {
        let mut book = test_scene::object("book", Category::Book, Pose2::new(0.10, -0.05, theta));
        book.material = Material::Book {
            thickness,
            spine_gap: 0.005,
        };
        book.height = thickness;
        test_scene::scene_with(vec![book])
    }

    fn plan(scene: &Scene, cfg: &PrimitiveConfig) -> Result<PryPlan, PrimitiveError> {
        let book = scene.object(&ObjectId::from("book")).unwrap();
        plan_pry_grasp(
            book,
            scene,
            scene.stack_zone,
            cfg,
            &FeasibilityTables::default(),
        )
    }

    #[test]
    fn contact_sits_at_spine_base_facing_in() {
        let theta = 0.3;
        let scene = book_scene(theta, 0.012);
        let p = plan(&scene, &PrimitiveConfig::default()).unwrap();
        // Spine midpoint: body (0, -0.095) through the pose.
        let expect = Pose2::new(0.10, -0.05, theta).apply(Point2::new(0.0, -0.095));
        assert_relative_eq!(p.contact_pose.position.x, expect.x, epsilon = 1e-12);
        assert_relative_eq!(p.contact_pose.position.y, expect.y, epsilon = 1e-12);
        // Fingertip starts at the desk surface, not the book top.
        assert_relative_eq!(p.contact_pose.position.z, 0.0, epsilon = 1e-12);
        assert_relative_eq!(p.contact_pose.yaw, theta + FRAC_PI_2, epsilon = 1e-12);
        // Pull drags the spine outward, opposite the facing.
        assert_relative_eq!(p.pull_vector.dot(Vec2::unit(p.contact_pose.yaw)), -1.0, epsilon = 1e-12);
        assert_relative_eq!(p.place_pose.position.x, scene.stack_zone.position.x);
    }

    #[test]
    fn default_angle_survives_when_band_allows_it() {
        let cfg = PrimitiveConfig::default();
        let p = plan(&book_scene(0.0, 0.012), &cfg).unwrap();
        assert_relative_eq!(p.alpha, cfg.default_pry_alpha);
        assert_relative_eq!(p.contact_pose.tilt, cfg.default_pry_alpha);
    }

    #[test]
    fn angle_is_clipped_into_the_reliable_band() {
        let mut cfg = PrimitiveConfig::default();
        cfg.default_pry_alpha = 14f64.to_radians();
        // 12 mm books are reliable only between 6 and 12 degrees.
        let p = plan(&book_scene(0.0, 0.012), &cfg).unwrap();
        assert_relative_eq!(p.alpha, 12f64.to_radians());

        cfg.default_pry_alpha = 1f64.to_radians();
        let p = plan(&book_scene(0.0, 0.012), &cfg).unwrap();
        assert_relative_eq!(p.alpha, 6f64.to_radians());
    }

    #[test]
    fn thin_covers_allow_flat_entry() {
        let mut cfg = PrimitiveConfig::default();
        cfg.default_pry_alpha = 0.0;
        let p = plan(&book_scene(0.0, 0.003), &cfg).unwrap();
        assert_relative_eq!(p.alpha, 0.0);
    }

    #[test]
    fn too_thick_is_refused() {
        let err = plan(&book_scene(0.0, 0.024), &PrimitiveConfig::default()).unwrap_err();
        assert!(matches!(err, PrimitiveError::InfeasibleThickness(t) if (t - 0.024).abs() < 1e-12));
    }

    #[test]
    fn opening_angle_matches_spine_geometry() {
        let p = plan(&book_scene(0.0, 0.012), &PrimitiveConfig::default()).unwrap();
        let gripper = GripperModel::default();
        assert_relative_eq!(
            p.opening_angle,
            (0.012f64).atan2(gripper.finger_length_l),
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_non_books() {
        let scene = test_scene::two_on_desktop();
        let pen = scene.object(&ObjectId::from("pen")).unwrap();
        let err = plan_pry_grasp(
            pen,
            &scene,
            scene.stack_zone,
            &PrimitiveConfig::default(),
            &FeasibilityTables::default(),
        )
        .unwrap_err();
        assert!(matches!(err, PrimitiveError::UnsupportedCategory(Category::Pen)));
    }
}
