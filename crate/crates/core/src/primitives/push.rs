//! Push–grasp: slide a thin object until it overhangs a support edge,
//! then pinch the overhang.
//!
//! Flat items like rulers leave no gap for a fingertip, so they cannot be
//! pinched where they lie. The primitive tilts the gripper, pushes the
//! object along one of its body axes toward the nearest support edge,
//! and grasps the part that juts out past the edge.
//!
//! The support region is the surface the object's center rests on — a
//! book's top face, or otherwise the desktop. A sheet of paper is *not*
//! treated as a support here: it is too thin to change heights and too
//! light to stay put, so planning proceeds against the desktop and the
//! push drags the sheet along, which is exactly how co-grasp failures
//! arise.

use super::{PrimitiveConfig, PrimitiveError};
use crate::geometry::{
    foot_of_perpendicular, min_area_rect, nearest_edge, ray_exit,
    GripperPose, Point2, Polygon, Pose2, Segment, Vec2,
};
use crate::sim::{Category, ObjectId, ObjectState, Scene, SupportRef};
use serde::{Deserialize, Serialize};

const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PushGraspPlan {
    pub object_id: ObjectId,
    /// Pose the plan was computed against; executing against a moved
    /// object is refused.
    pub planned_pose: Pose2,
    /// What the object is being pushed off of.
    pub support_id: SupportRef,
    /// Unit push direction, a body axis of the object.
    pub direction: Vec2,
    /// Support edge the object is pushed over.
    pub target_edge: Segment,
    /// Outward unit normal of the target edge.
    pub edge_normal: Vec2,
    /// Where the gripper presses on the object before pushing.
    pub push_contact: Point2,
    /// Landing point on the support edge where the overhang is grasped.
    pub grasp_point: Point2,
    /// Tilted pose at the start of the push stroke.
    pub push_start: GripperPose,
    /// Same tilt, translated to the grasp point: end of the stroke.
    pub push_end: GripperPose,
    /// Tilted pinch pose over the overhang.
    pub grasp_pose: GripperPose,
}

/// Outward unit normal of a CCW polygon edge.
fn outward_normal(edge: &Segment) -> Vec2 {
    -edge.direction().perp()
}

/// Pick the push direction: the object body axis most aligned with the
/// outward normal of the support edge nearest the object's center.
///
/// Exact 45° ties are broken by the shorter travel to the support
/// boundary, then by preferring the long axis. Returns the direction and
/// the index of the target edge.
pub fn push_direction(
    obj_angle: f64,
    support: &Polygon,
    obj_pos: Point2,
) -> (Vec2, usize) {
    let near = nearest_edge(support, obj_pos);
    let n = outward_normal(&near.segment);

    let long = Vec2::unit(obj_angle);
    let short = long.perp();
    let candidates = [long, -long, short, -short];

    let mut best_i = 0usize;
    let mut best_dot = f64::NEG_INFINITY;
    for (i, c) in candidates.iter().enumerate() {
        let dot = c.dot(n);
        if dot > best_dot + TIE_EPS {
            best_i = i;
            best_dot = dot;
            continue;
        }
        if dot >= best_dot - TIE_EPS {
            // Tie: shorter exit through the boundary wins; a remaining tie
            // keeps the earlier candidate, i.e. the long axis.
            let dist = |d: Vec2| ray_exit(support, obj_pos, d).map_or(f64::INFINITY, |(_, t)| t);
            if dist(*c) < dist(candidates[best_i]) - TIE_EPS {
                best_i = i;
                best_dot = dot;
            }
        }
    }
    (candidates[best_i], near.index)
}

/// Support region the push planner reasons about: the top face of a book
/// the object sits on, else the desktop. Sheets of paper are deliberately
/// not modeled as supports (see module docs).
pub(crate) fn support_region(
    obj: &ObjectState,
    scene: &Scene,
) -> Result<(Polygon, SupportRef), PrimitiveError> {
    if let SupportRef::Object(under_id) = &obj.supported_by {
        let under = scene.object(under_id).map_err(|_| PrimitiveError::NoSupport)?;
        if under.category == Category::Book {
            return Ok((under.world_footprint(), SupportRef::Object(under_id.clone())));
        }
    }
    Ok((scene.table.support_polygon.clone(), SupportRef::Desktop))
}

/// Plan a push–grasp for a ruler-like object.
///
/// Errors with [`PrimitiveError::EdgeUnreachable`] when the chosen
/// direction would leave the support through a different edge than the
/// one being targeted — pushing further would drop the object somewhere
/// unplanned instead of creating a graspable overhang.
pub fn plan_push_grasp(
    obj: &ObjectState,
    scene: &Scene,
    cfg: &PrimitiveConfig,
) -> Result<PushGraspPlan, PrimitiveError> {
    if !obj.category.is_ruler() {
        return Err(PrimitiveError::UnsupportedCategory(obj.category));
    }
    let (support, support_id) = support_region(obj, scene)?;
    let rect = min_area_rect(&obj.world_footprint())?;
    let pos = obj.center();

    let (direction, edge_idx) = push_direction(rect.angle, &support, pos);
    let target_edge = support.edge(edge_idx);
    let edge_normal = outward_normal(&target_edge);

    match ray_exit(&support, pos, direction) {
        Some((exit_idx, _)) if exit_idx == edge_idx => {}
        _ => return Err(PrimitiveError::EdgeUnreachable),
    }

    // The push stops once the footprint juts past the edge by the
    // overhang margin; at that point the center sits `extent - delta`
    // inside the edge, where extent is the footprint's reach from the
    // center along the edge normal. A shape whose reach is under the
    // margin (a triangle with its hypotenuse toward the edge) would end
    // centered past the edge and topple, so the edge is not reachable.
    let reach = obj
        .world_footprint()
        .vertices()
        .iter()
        .map(|v| (*v - pos).dot(edge_normal))
        .fold(f64::NEG_INFINITY, f64::max);
    if reach <= cfg.overhang_delta + 1e-9 {
        return Err(PrimitiveError::EdgeUnreachable);
    }

    let grasp_point = foot_of_perpendicular(pos, &target_edge);

    // Press the gripper on the object edge-center farthest from the
    // landing point: the longest runway for the stroke. Ties keep the
    // lowest index.
    let centers = rect.edge_centers();
    let mut push_contact = centers[0];
    let mut best = push_contact.distance(grasp_point);
    for c in centers.iter().skip(1) {
        let d = c.distance(grasp_point);
        if d > best + TIE_EPS {
            push_contact = *c;
            best = d;
        }
    }

    let top = scene.top_z(&obj.id)?;
    let over_object = GripperPose::upright(push_contact.x, push_contact.y, top, rect.angle);
    let over_edge = GripperPose::upright(grasp_point.x, grasp_point.y, top, target_edge.angle());

    // Tilt away from the travel: if the gripper's heading runs with the
    // push, pitch backward so the fingertip trails instead of stabbing.
    let heading = Vec2::unit(over_object.yaw);
    let tilt_sign = if heading.dot(direction) > 1e-12 { -1.0 } else { 1.0 };

    let push_start = over_object.tilted(cfg.theta_p, tilt_sign);
    let push_end = push_start.at(grasp_point.x, grasp_point.y, push_start.position.z);
    let grasp_pose = over_edge.tilted(cfg.theta_g, tilt_sign);

    Ok(PushGraspPlan {
        object_id: obj.id.clone(),
        planned_pose: obj.pose,
        support_id,
        direction,
        target_edge,
        edge_normal,
        push_contact,
        grasp_point,
        push_start,
        push_end,
        grasp_pose,
    })
}
