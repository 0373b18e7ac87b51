//! Execution of primitive plans against the scene.
//!
//! The [`Simulator`] owns a scene, an optional in-hand object, and the
//! calibrated feasibility tables. Motion is purely kinematic: pushes are
//! straight-line slides, grasps teleport an object into the hand, places
//! teleport it back out. What makes episodes interesting is everything
//! around the motion — staleness guards, support bookkeeping, collision
//! sweeps, co-grasp physics on paper, and feasibility gates that either
//! threshold (deterministic mode) or sample (stochastic mode) the
//! calibrated success rates.
//!
//! Failures are data, not bugs: they come back as
//! [`ActionResult::failure`] with a cause, leaving the scene valid.
//! Programmer errors (grasping with a full hand, executing a stale plan)
//! are `Err` instead.

use super::{
    ActionResult, Category, FailureCause, ObjectId, ObjectState, Scene, SimConfig, SimError,
    SupportRef,
};
use crate::geometry::{
    convex_hull, convex_intersection_area, min_area_rect, normalize_angle, point_in_polygon,
    polygon_clearance, ray_exit, Point2, Polygon, Pose2, Segment, Vec2,
};
use crate::primitives::{
    contact_grasp_probability, paper_grasp_feasible, pry_probability, support_region,
    ContactGraspPlan, FeasibilityTables, PrimitiveConfig, PryPlan, PushGraspPlan,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

const POSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecMode {
    /// Feasibility-table cells gate success by threshold; no randomness.
    Deterministic,
    /// Cells are Bernoulli rates; triangular rulers pick up in-hand yaw
    /// noise.
    Stochastic,
}

/// Object lifted off the scene, with the in-hand yaw error it acquired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InHand {
    pub object: ObjectState,
    pub yaw_error: f64,
}

/// Any of the three grasp plans, for uniform execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraspPlan {
    Contact(ContactGraspPlan),
    Push(PushGraspPlan),
    Pry(PryPlan),
}

impl GraspPlan {
    pub fn object_id(&self) -> &ObjectId {
        match self {
            GraspPlan::Contact(p) => &p.object_id,
            GraspPlan::Push(p) => &p.object_id,
            GraspPlan::Pry(p) => &p.object_id,
        }
    }

    pub fn planned_pose(&self) -> Pose2 {
        match self {
            GraspPlan::Contact(p) => p.planned_pose,
            GraspPlan::Push(p) => p.planned_pose,
            GraspPlan::Pry(p) => p.planned_pose,
        }
    }
}

/// Where a held object goes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceTarget {
    /// Drop into the pen-holder region, centered, straightened.
    PenHolder,
    /// Snap onto the book stack anchor (on top of whatever is there).
    StackZone,
    /// Put down at an exact pose (used to reorient sheets in place).
    AlignedPose(Pose2),
}

/// Shove one object away from another until they are comfortably apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationPushPlan {
    /// The object being cleared around (stays put).
    pub object_id: ObjectId,
    /// The object that gets shoved.
    pub neighbor_id: ObjectId,
    pub planned_object_pose: Pose2,
    pub planned_neighbor_pose: Pose2,
    /// Unit direction of the shove: outward along the line of centers.
    pub direction: Vec2,
}

/// Plan a separation push of `neighbor_id` directly away from `object_id`.
pub fn plan_separation_push(
    scene: &Scene,
    object_id: &ObjectId,
    neighbor_id: &ObjectId,
) -> Result<SeparationPushPlan, SimError> {
    let obj = scene.object(object_id)?;
    let nb = scene.object(neighbor_id)?;
    let direction = (nb.center() - obj.center())
        .normalized()
        .ok_or_else(|| SimError::InvalidScene("coincident centers in separation push".into()))?;
    Ok(SeparationPushPlan {
        object_id: object_id.clone(),
        neighbor_id: neighbor_id.clone(),
        planned_object_pose: obj.pose,
        planned_neighbor_pose: nb.pose,
        direction,
    })
}

pub struct Simulator {
    pub scene: Scene,
    pub hand: Option<InHand>,
    pub tables: FeasibilityTables,
    pub prim_cfg: PrimitiveConfig,
    pub sim_cfg: SimConfig,
    pub mode: ExecMode,
    rng: ChaCha8Rng,
}

fn poses_match(a: &Pose2, b: &Pose2) -> bool {
    a.position.distance(b.position) <= POSE_TOL
        && normalize_angle(a.theta - b.theta).abs() <= POSE_TOL
}

fn segments_match(a: &Segment, b: &Segment) -> bool {
    a.a.distance(b.a) <= 1e-6 && a.b.distance(b.b) <= 1e-6
}

/// Convex hull of a footprint swept by a straight translation.
fn swept_hull(fp: &Polygon, delta: Vec2) -> Result<Polygon, SimError> {
    let mut pts: Vec<Point2> = fp.vertices().to_vec();
    pts.extend(fp.vertices().iter().map(|v| *v + delta));
    Ok(convex_hull(&pts)?)
}

/// Largest signed overhang of a footprint past an edge (negative while
/// fully inside).
fn max_overhang(fp: &Polygon, edge: &Segment, outward: Vec2) -> f64 {
    fp.vertices()
        .iter()
        .map(|v| (*v - edge.a).dot(outward))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn support_chain_ids(scene: &Scene, id: &ObjectId) -> Result<Vec<ObjectId>, SimError> {
    let mut out = Vec::new();
    let mut cur = scene.object(id)?;
    let mut hops = 0usize;
    while let SupportRef::Object(u) = &cur.supported_by {
        out.push(u.clone());
        cur = scene.object(u)?;
        hops += 1;
        if hops > scene.objects.len() {
            return Err(SimError::CyclicSupport(id.clone()));
        }
    }
    Ok(out)
}

impl Simulator {
    pub fn new(scene: Scene, mode: ExecMode, seed: u64) -> Self {
        Simulator::with_configs(
            scene,
            mode,
            seed,
            FeasibilityTables::default(),
            PrimitiveConfig::default(),
            SimConfig::default(),
        )
    }

    pub fn with_configs(
        scene: Scene,
        mode: ExecMode,
        seed: u64,
        tables: FeasibilityTables,
        prim_cfg: PrimitiveConfig,
        sim_cfg: SimConfig,
    ) -> Self {
        Simulator {
            scene,
            hand: None,
            tables,
            prim_cfg,
            sim_cfg,
            mode,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn require_hand_empty(&self) -> Result<(), SimError> {
        match &self.hand {
            Some(h) => Err(SimError::HandFull(h.object.id.clone())),
            None => Ok(()),
        }
    }

    /// Sweep `moving` footprints through a translation and fail on any
    /// overlap with a bystander sharing its height interval. Objects
    /// already in the holder are containerized and exempt; an object's own
    /// supporters slide underneath it by definition.
    fn sweep_collides(
        &self,
        moving: &[(&ObjectId, &Polygon)],
        exclude: &BTreeSet<ObjectId>,
    ) -> Result<bool, SimError> {
        for (id, hull) in moving {
            let b1 = self.scene.base_z(id)?;
            let t1 = self.scene.top_z(id)?;
            for other in &self.scene.objects {
                if &other.id == *id || exclude.contains(&other.id) {
                    continue;
                }
                if self.scene.in_holder(other) {
                    continue;
                }
                let b2 = self.scene.base_z(&other.id)?;
                let t2 = self.scene.top_z(&other.id)?;
                if t1.min(t2) - b1.max(b2) <= 1e-9 {
                    continue;
                }
                if convex_intersection_area(hull, &other.world_footprint()) > 1e-8 {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Slide the object along the planned direction until it overhangs
    /// the support edge by the configured margin.
    ///
    /// If the object rests on a sheet of paper, the sheet is dragged
    /// along: it is too light to slide against. This is what the
    /// push planner cannot see, and what makes overhangs created over
    /// paper unsafe to pinch.
    pub fn apply_push(&mut self, plan: &PushGraspPlan) -> Result<ActionResult, SimError> {
        self.require_hand_empty()?;
        let obj = self.scene.object(&plan.object_id)?.clone();
        if !poses_match(&obj.pose, &plan.planned_pose) {
            return Err(SimError::StalePlan(plan.object_id.clone()));
        }

        let (support, _) = support_region(&obj, &self.scene)
            .map_err(|e| SimError::InvalidScene(e.to_string()))?;
        let d = plan.direction;
        let n = plan.edge_normal;
        let dn = d.dot(n);
        let exit_ok = match ray_exit(&support, obj.center(), d) {
            Some((idx, _)) => segments_match(&support.edge(idx), &plan.target_edge),
            None => false,
        };
        let fp = obj.world_footprint();
        // Reach of the footprint past its center along the edge normal; if
        // it is under the overhang margin the push would carry the center
        // past the edge and the object would topple off the support.
        let reach = fp
            .vertices()
            .iter()
            .map(|v| (*v - obj.center()).dot(n))
            .fold(f64::NEG_INFINITY, f64::max);
        if !exit_ok || dn <= 1e-9 || reach <= self.prim_cfg.overhang_delta + 1e-9 {
            return Ok(ActionResult::failure(
                FailureCause::EdgeUnreachable,
                self.scene.clone(),
            ));
        }

        let s_max = max_overhang(&fp, &plan.target_edge, n);
        let t = ((self.prim_cfg.overhang_delta - s_max) / dn).max(0.0);
        let delta = d * t;

        let dragged: Option<ObjectId> = match &obj.supported_by {
            SupportRef::Object(u) if self.scene.object(u)?.category == Category::Paper => {
                Some(u.clone())
            }
            _ => None,
        };

        let mut exclude: BTreeSet<ObjectId> =
            support_chain_ids(&self.scene, &obj.id)?.into_iter().collect();
        exclude.insert(obj.id.clone());

        let obj_swept = swept_hull(&fp, delta)?;
        let mut moving: Vec<(&ObjectId, &Polygon)> = vec![(&obj.id, &obj_swept)];
        let paper_swept;
        if let Some(pid) = &dragged {
            exclude.insert(pid.clone());
            paper_swept = swept_hull(&self.scene.object(pid)?.world_footprint(), delta)?;
            moving.push((pid, &paper_swept));
        }

        if self.sweep_collides(&moving, &exclude)? {
            return Ok(ActionResult::failure(
                FailureCause::Collision,
                self.scene.clone(),
            ));
        }

        self.scene.object_mut(&obj.id)?.pose.position = obj.pose.position + delta;
        if let Some(pid) = &dragged {
            let p = self.scene.object_mut(pid)?;
            p.pose.position = p.pose.position + delta;
        }
        self.scene.refresh_support()?;
        self.scene.validate()?;
        Ok(ActionResult::success(self.scene.clone()))
    }

    /// Close the fingers on an object and lift it into the hand.
    pub fn apply_grasp(&mut self, plan: &GraspPlan) -> Result<ActionResult, SimError> {
        self.require_hand_empty()?;
        let obj = self.scene.object(plan.object_id())?.clone();
        if !poses_match(&obj.pose, &plan.planned_pose()) {
            return Err(SimError::StalePlan(obj.id.clone()));
        }

        if let GraspPlan::Push(p) = plan {
            // Pinching an overhang that was created by dragging a sheet
            // pinches the sheet too. The planner never knows; the world
            // does.
            if let SupportRef::Object(u) = &obj.supported_by {
                if self.scene.object(u)?.category == Category::Paper {
                    return Ok(ActionResult::failure(
                        FailureCause::Cograsp,
                        self.scene.clone(),
                    ));
                }
            }
            let overhang = max_overhang(&obj.world_footprint(), &p.target_edge, p.edge_normal);
            if overhang < self.prim_cfg.overhang_delta - 1e-9 {
                return Err(SimError::NoOverhang(obj.id.clone()));
            }
        }

        let prob = self.grasp_probability(&obj, plan)?;
        let success = match self.mode {
            ExecMode::Deterministic => prob >= self.prim_cfg.feasible_threshold,
            ExecMode::Stochastic => self.rng.gen::<f64>() < prob,
        };
        if !success {
            return Ok(ActionResult::failure(
                FailureCause::Infeasible,
                self.scene.clone(),
            ));
        }

        let yaw_error = if self.mode == ExecMode::Stochastic && obj.category.is_triangular() {
            Normal::new(0.0, self.sim_cfg.triangle_yaw_sigma)
                .expect("yaw sigma is non-negative")
                .sample(&mut self.rng)
        } else {
            0.0
        };

        self.scene.objects.retain(|o| o.id != obj.id);
        self.hand = Some(InHand {
            object: obj,
            yaw_error,
        });
        self.scene.refresh_support()?;
        self.scene.validate()?;
        Ok(ActionResult::success(self.scene.clone()))
    }

    fn grasp_probability(&self, obj: &ObjectState, plan: &GraspPlan) -> Result<f64, SimError> {
        Ok(match plan {
            // A sufficient overhang pinches like any tabletop edge grasp.
            GraspPlan::Push(_) => 1.0,
            GraspPlan::Pry(p) => {
                let thickness = obj.book_thickness().ok_or_else(|| {
                    SimError::InvalidScene(format!("{} pried but is not a book", obj.id))
                })?;
                pry_probability(&self.tables, thickness, p.alpha)
            }
            GraspPlan::Contact(c) => {
                if obj.category == Category::Paper {
                    let gsm = obj.paper_gsm().ok_or_else(|| {
                        SimError::InvalidScene(format!("{} has no paper weight", obj.id))
                    })?;
                    match paper_grasp_feasible(&self.tables, gsm, self.prim_cfg.paper_grasp_offset)
                    {
                        Ok(true) => 1.0,
                        Ok(false) => 0.0,
                        Err(e) => return Err(SimError::InvalidScene(e.to_string())),
                    }
                } else {
                    let rect = min_area_rect(&obj.world_footprint())?;
                    let delta = c.grasp_pose.xy() - rect.center;
                    let axis = Vec2::unit(rect.angle);
                    let lon = delta.dot(axis).abs() / (2.0 * rect.half_extents.0);
                    let lat = delta.dot(axis.perp()).abs() / (2.0 * rect.half_extents.1);
                    contact_grasp_probability(&self.tables, c.mode, obj.height, (lat, lon))
                }
            }
        })
    }

    /// Put the held object down at the target.
    pub fn apply_place(&mut self, target: &PlaceTarget) -> Result<ActionResult, SimError> {
        let InHand {
            mut object,
            yaw_error,
        } = self.hand.take().ok_or(SimError::NothingInHand)?;

        match target {
            PlaceTarget::PenHolder => {
                let center = self.scene.pen_holder_region.centroid();
                object.pose = Pose2::new(center.x, center.y, normalize_angle(yaw_error));
                object.supported_by = SupportRef::Desktop;
                let inside = object
                    .world_footprint()
                    .vertices()
                    .iter()
                    .all(|v| point_in_polygon(*v, &self.scene.pen_holder_region));
                self.scene.objects.push(object);
                self.scene.refresh_support()?;
                self.scene.validate()?;
                if inside {
                    Ok(ActionResult::success(self.scene.clone()))
                } else {
                    Ok(ActionResult::failure(
                        FailureCause::PlacementOutOfRegion,
                        self.scene.clone(),
                    ))
                }
            }
            PlaceTarget::StackZone => {
                let zone = self.scene.stack_zone;
                let mut top: Option<(f64, ObjectId)> = None;
                for o in &self.scene.objects {
                    if o.category == Category::Book
                        && point_in_polygon(zone.position, &o.world_footprint())
                    {
                        let z = self.scene.top_z(&o.id)?;
                        let better = match &top {
                            None => true,
                            Some((bz, bid)) => z > *bz || (z == *bz && o.id < *bid),
                        };
                        if better {
                            top = Some((z, o.id.clone()));
                        }
                    }
                }

                // A small in-hand yaw settles out as the book squares
                // against the stack; past the tolerance it stays crooked.
                let r = object
                    .footprint
                    .vertices()
                    .iter()
                    .map(|v| v.distance(Point2::new(0.0, 0.0)))
                    .fold(0.0, f64::max);
                let shift = 2.0 * r * (0.5 * yaw_error.abs()).sin();
                let aligned = shift <= self.sim_cfg.stack_align_tol;
                let theta = if aligned {
                    zone.theta
                } else {
                    normalize_angle(zone.theta + yaw_error)
                };
                object.pose = Pose2::new(zone.position.x, zone.position.y, theta);
                object.supported_by = match &top {
                    Some((_, id)) => SupportRef::Object(id.clone()),
                    None => SupportRef::Desktop,
                };
                self.scene.objects.push(object);
                self.scene.refresh_support()?;
                self.scene.validate()?;
                if aligned {
                    Ok(ActionResult::success(self.scene.clone()))
                } else {
                    Ok(ActionResult::failure(
                        FailureCause::PlacementOutOfRegion,
                        self.scene.clone(),
                    ))
                }
            }
            PlaceTarget::AlignedPose(goal) => {
                object.pose =
                    Pose2::new(goal.position.x, goal.position.y, normalize_angle(goal.theta + yaw_error));
                object.supported_by = SupportRef::Desktop;
                let fp = object.world_footprint();
                for other in &self.scene.objects {
                    if other.supported_by != SupportRef::Desktop || self.scene.in_holder(other) {
                        continue;
                    }
                    if convex_intersection_area(&fp, &other.world_footprint()) > 1e-8 {
                        // Refused: the object stays in hand, the scene
                        // stays as it was.
                        self.hand = Some(InHand { object, yaw_error });
                        return Ok(ActionResult::failure(
                            FailureCause::Collision,
                            self.scene.clone(),
                        ));
                    }
                }
                self.scene.objects.push(object);
                self.scene.refresh_support()?;
                self.scene.validate()?;
                Ok(ActionResult::success(self.scene.clone()))
            }
        }
    }

    /// Shove the neighbor along the line of centers until the pair has at
    /// least the configured clearance.
    pub fn apply_separation_push(
        &mut self,
        plan: &SeparationPushPlan,
    ) -> Result<ActionResult, SimError> {
        self.require_hand_empty()?;
        let obj = self.scene.object(&plan.object_id)?.clone();
        let nb = self.scene.object(&plan.neighbor_id)?.clone();
        if !poses_match(&obj.pose, &plan.planned_object_pose) {
            return Err(SimError::StalePlan(obj.id.clone()));
        }
        if !poses_match(&nb.pose, &plan.planned_neighbor_pose) {
            return Err(SimError::StalePlan(nb.id.clone()));
        }

        let goal = self.sim_cfg.separation_threshold;
        let obj_fp = obj.world_footprint();
        let nb_fp = nb.world_footprint();
        let clearance_at =
            |t: f64| polygon_clearance(&obj_fp, &nb_fp.translated(plan.direction * t));

        let t_final = if clearance_at(0.0) >= goal {
            0.0
        } else {
            let mut lo = 0.0;
            let mut hi = 0.002;
            while clearance_at(hi) < goal {
                lo = hi;
                hi *= 2.0;
                if hi > 1.0 {
                    return Ok(ActionResult::failure(
                        FailureCause::Collision,
                        self.scene.clone(),
                    ));
                }
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if clearance_at(mid) >= goal {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        };

        let delta = plan.direction * t_final;
        let swept = swept_hull(&nb_fp, delta)?;
        let mut exclude: BTreeSet<ObjectId> =
            support_chain_ids(&self.scene, &nb.id)?.into_iter().collect();
        exclude.insert(nb.id.clone());
        if self.sweep_collides(&[(&nb.id, &swept)], &exclude)? {
            return Ok(ActionResult::failure(
                FailureCause::Collision,
                self.scene.clone(),
            ));
        }

        self.scene.object_mut(&nb.id)?.pose.position = nb.pose.position + delta;
        self.scene.refresh_support()?;
        self.scene.validate()?;
        Ok(ActionResult::success(self.scene.clone()))
    }
}
