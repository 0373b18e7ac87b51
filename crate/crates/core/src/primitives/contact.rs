//! Vertical pinch grasps for small items and sheet pinches for paper.
//!
//! Two modes: `Contact` presses the fingertips into (or past) the support
//! surface so the object is caged before closing; `Noncontact` stops short
//! of the surface. Contact mode is the reliable one; it needs headroom
//! below the object, so on top of another object the descend depth is
//! capped to the object's own height.

use super::{PrimitiveConfig, PrimitiveError};
use crate::geometry::{min_area_rect, GripperPose, Pose2};
use crate::sim::{Category, ObjectId, ObjectState, Scene, SupportRef};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraspMode {
    Contact,
    Noncontact,
}

impl fmt::Display for GraspMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraspMode::Contact => "contact",
            GraspMode::Noncontact => "noncontact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactGraspPlan {
    pub object_id: ObjectId,
    /// Pose the plan was computed against; executing against a moved
    /// object is refused.
    pub planned_pose: Pose2,
    pub grasp_pose: GripperPose,
    /// How far below the object's top face the fingertips descend.
    pub depth: f64,
    pub mode: GraspMode,
}

/// Plan a top-down pinch of a small object, or the edge pinch of a sheet.
///
/// Small objects are pinched across the short axis at the footprint
/// center. Paper is pinched a fixed distance in from one long edge — a
/// sheet has no graspable center.
pub fn plan_contact_grasp(
    obj: &ObjectState,
    scene: &Scene,
    cfg: &PrimitiveConfig,
    mode: GraspMode,
) -> Result<ContactGraspPlan, PrimitiveError> {
    if !(obj.category.is_small() || obj.category == Category::Paper) {
        return Err(PrimitiveError::UnsupportedCategory(obj.category));
    }
    let rect = min_area_rect(&obj.world_footprint())?;
    let top = scene.top_z(&obj.id)?;

    let (point, yaw) = if obj.category == Category::Paper {
        // Long-edge midpoint (side between corners 0 and 1), moved inward.
        let edge_mid = rect.edge_centers()[0];
        let inward = (rect.center - edge_mid).normalized().ok_or_else(|| {
            PrimitiveError::BadTable("degenerate footprint rectangle".into())
        })?;
        (edge_mid + inward * cfg.paper_grasp_offset, rect.angle)
    } else {
        (rect.center, rect.angle)
    };

    let mult = match (mode, &obj.supported_by) {
        (GraspMode::Noncontact, _) => cfg.depth_mult_noncontact,
        (GraspMode::Contact, SupportRef::Desktop) => cfg.depth_mult_contact,
        (GraspMode::Contact, SupportRef::Object(_)) => cfg.depth_mult_on_support,
    };

    Ok(ContactGraspPlan {
        object_id: obj.id.clone(),
        planned_pose: obj.pose,
        grasp_pose: GripperPose::upright(point.x, point.y, top, yaw),
        depth: mult * obj.height,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::test_scene;
    use approx::assert_relative_eq;

    #[test]
    fn centered_pinch_on_desktop() {
        let scene = test_scene::two_on_desktop();
        let pen = scene.object(&ObjectId::from("pen")).unwrap();
        let plan =
            plan_contact_grasp(pen, &scene, &PrimitiveConfig::default(), GraspMode::Contact)
                .unwrap();
        assert_relative_eq!(plan.grasp_pose.position.x, pen.pose.position.x, epsilon = 1e-12);
        assert_relative_eq!(plan.grasp_pose.position.y, pen.pose.position.y, epsilon = 1e-12);
        assert_relative_eq!(plan.grasp_pose.position.z, scene.table_z() + pen.height);
        assert_relative_eq!(plan.depth, 1.5 * pen.height);
        assert_eq!(plan.grasp_pose.tilt, 0.0);
        // Yaw matches the body long axis modulo pi.
        let d = (plan.grasp_pose.yaw - pen.pose.theta).rem_euclid(std::f64::consts::PI);
        assert!(d < 1e-9 || (std::f64::consts::PI - d) < 1e-9);
    }

    #[test]
    fn noncontact_depth_is_half_height() {
        let scene = test_scene::two_on_desktop();
        let pen = scene.object(&ObjectId::from("pen")).unwrap();
        let plan =
            plan_contact_grasp(pen, &scene, &PrimitiveConfig::default(), GraspMode::Noncontact)
                .unwrap();
        assert_relative_eq!(plan.depth, 0.5 * pen.height);
    }

    #[test]
    fn on_support_contact_depth_is_full_height() {
        let scene = test_scene::eraser_on_book();
        let eraser = scene.object(&ObjectId::from("eraser")).unwrap();
        let plan =
            plan_contact_grasp(eraser, &scene, &PrimitiveConfig::default(), GraspMode::Contact)
                .unwrap();
        assert_relative_eq!(plan.depth, 1.0 * eraser.height);
        // Top face sits above the book.
        let book = scene.object(&ObjectId::from("book")).unwrap();
        assert_relative_eq!(
            plan.grasp_pose.position.z,
            scene.table_z() + book.height + eraser.height
        );
    }

    #[test]
    fn paper_pinch_sits_inside_the_edge() {
        let scene = test_scene::paper_on_desktop();
        let paper = scene.object(&ObjectId::from("paper")).unwrap();
        let cfg = PrimitiveConfig::default();
        let plan = plan_contact_grasp(paper, &scene, &cfg, GraspMode::Contact).unwrap();
        let rect = min_area_rect(&paper.world_footprint()).unwrap();
        let d = (plan.grasp_pose.xy() - rect.center).norm();
        // Offset from the long edge, i.e. short half-extent minus offset
        // from center.
        assert_relative_eq!(d, rect.half_extents.1 - cfg.paper_grasp_offset, epsilon = 1e-12);
    }

    #[test]
    fn rejects_books_and_rulers() {
        let scene = test_scene::eraser_on_book();
        let book = scene.object(&ObjectId::from("book")).unwrap();
        assert!(matches!(
            plan_contact_grasp(book, &scene, &PrimitiveConfig::default(), GraspMode::Contact),
            Err(PrimitiveError::UnsupportedCategory(Category::Book))
        ));
    }
}
