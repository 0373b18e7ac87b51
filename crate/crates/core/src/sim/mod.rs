//! Kinematic 2.5D desk-scene world model.
//!
//! A [`Scene`] is a value: a table, a set of objects with convex body-frame
//! footprints and planar poses, and the two organization targets (pen-holder
//! region and book stack zone). Height is tracked only through support
//! chains — object A rests on whatever object's footprint contains A's
//! center, or directly on the desktop. The [`Simulator`] executes primitive
//! plans against a scene with purely kinematic motion plus feasibility-table
//! outcomes; nothing here models forces.
//!
//! Every mutation keeps two invariants: footprints of objects sharing a
//! support layer never overlap (the pen holder is exempt — it is a
//! container), and the support relation stays acyclic.

mod actions;
mod materials;
mod scenario;
mod support;
#[cfg(test)]
pub(crate) mod test_scene;

pub use actions::{
    plan_separation_push, ExecMode, GraspPlan, InHand, PlaceTarget, SeparationPushPlan, Simulator,
};
pub use materials::{material_catalog, CategorySpec};
pub use scenario::{generate_scenario, scenario_catalog, CxyzSpec};
pub use support::{support_graph, SupportGraph};

use crate::geometry::{GeometryError, Point2, Polygon, Pose2};
use crate::perception::TableModel;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("unknown object: {0}")]
    UnknownObject(ObjectId),
    #[error("support relation contains a cycle involving {0}")]
    CyclicSupport(ObjectId),
    #[error("plan is stale: {0} moved since planning")]
    StalePlan(ObjectId),
    #[error("push-grasp without sufficient overhang on {0}")]
    NoOverhang(ObjectId),
    #[error("nothing in hand")]
    NothingInHand,
    #[error("hand already holds {0}")]
    HandFull(ObjectId),
    #[error("unknown scenario spec: {0}")]
    UnknownSpec(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
}

/// Object identifier, unique within a scene.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectId(pub String);

impl ObjectId {
    pub fn new(s: impl Into<String>) -> Self {
        ObjectId(s.into())
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Pen,
    Eraser,
    LeadCase,
    StraightRuler,
    TriangleRuler30,
    TriangleRuler45,
    Paper,
    Book,
    PenHolder,
}

impl Category {
    /// Directly graspable low-profile items.
    pub fn is_small(self) -> bool {
        matches!(self, Category::Pen | Category::Eraser | Category::LeadCase)
    }

    pub fn is_ruler(self) -> bool {
        matches!(
            self,
            Category::StraightRuler | Category::TriangleRuler30 | Category::TriangleRuler45
        )
    }

    pub fn is_triangular(self) -> bool {
        matches!(self, Category::TriangleRuler30 | Category::TriangleRuler45)
    }

    /// Planar deformables: sheets and books.
    pub fn is_deformable(self) -> bool {
        matches!(self, Category::Paper | Category::Book)
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::Pen => "pen",
            Category::Eraser => "eraser",
            Category::LeadCase => "lead_case",
            Category::StraightRuler => "straight_ruler",
            Category::TriangleRuler30 => "triangle_ruler_30",
            Category::TriangleRuler45 => "triangle_ruler_45",
            Category::Paper => "paper",
            Category::Book => "book",
            Category::PenHolder => "pen_holder",
        }
    }
}

/// Physical behavior class; drives feasibility lookups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Material {
    Rigid,
    /// Sheet paper; grams per square meter governs grasp feasibility.
    Paper { gsm: f64 },
    /// Bound book; spine thickness and the natural spine-table gap.
    Book { thickness: f64, spine_gap: f64 },
}

/// What an object rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportRef {
    Desktop,
    Object(ObjectId),
}

impl fmt::Display for SupportRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportRef::Desktop => f.write_str("desktop"),
            SupportRef::Object(id) => write!(f, "{}", id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectState {
    pub id: ObjectId,
    pub category: Category,
    /// Convex footprint in the body frame, centered on its bounding box —
    /// `pose.position` is therefore the footprint's bbox center in world.
    pub footprint: Polygon,
    pub pose: Pose2,
    pub height: f64,
    pub mass: f64,
    pub material: Material,
    pub supported_by: SupportRef,
}

impl ObjectState {
    pub fn world_footprint(&self) -> Polygon {
        self.footprint.transformed(&self.pose)
    }

    /// Reference point for support containment.
    pub fn center(&self) -> Point2 {
        self.pose.position
    }

    /// Book spine thickness, if this is a book.
    pub fn book_thickness(&self) -> Option<f64> {
        match self.material {
            Material::Book { thickness, .. } => Some(thickness),
            _ => None,
        }
    }

    pub fn paper_gsm(&self) -> Option<f64> {
        match self.material {
            Material::Paper { gsm } => Some(gsm),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub table: TableModel,
    pub objects: Vec<ObjectState>,
    /// Container region: everything organized "into the holder" targets this.
    pub pen_holder_region: Polygon,
    /// Book stack anchor pose on the table.
    pub stack_zone: Pose2,
    pub rng_seed: u64,
}

impl Scene {
    pub fn object(&self, id: &ObjectId) -> Result<&ObjectState, SimError> {
        self.objects
            .iter()
            .find(|o| &o.id == id)
            .ok_or_else(|| SimError::UnknownObject(id.clone()))
    }

    pub fn object_mut(&mut self, id: &ObjectId) -> Result<&mut ObjectState, SimError> {
        self.objects
            .iter_mut()
            .find(|o| &o.id == id)
            .ok_or_else(|| SimError::UnknownObject(id.clone()))
    }

    pub fn contains(&self, id: &ObjectId) -> bool {
        self.objects.iter().any(|o| &o.id == id)
    }

    /// Height of the table surface in world z.
    pub fn table_z(&self) -> f64 {
        self.table.height()
    }

    /// World z of the given object's top face, following its support chain.
    pub fn top_z(&self, id: &ObjectId) -> Result<f64, SimError> {
        Ok(self.base_z(id)? + self.object(id)?.height)
    }

    /// World z of the given object's underside.
    pub fn base_z(&self, id: &ObjectId) -> Result<f64, SimError> {
        let mut z = self.table_z();
        let mut cur = self.object(id)?;
        let mut hops = 0usize;
        loop {
            match &cur.supported_by {
                SupportRef::Desktop => return Ok(z),
                SupportRef::Object(under) => {
                    let under = self.object(under)?;
                    z += under.height;
                    cur = under;
                    hops += 1;
                    if hops > self.objects.len() {
                        return Err(SimError::CyclicSupport(id.clone()));
                    }
                }
            }
        }
    }

    /// Recompute every `supported_by` from geometry (see [`support_graph`]).
    pub fn refresh_support(&mut self) -> Result<(), SimError> {
        let graph = support_graph(self)?;
        for obj in &mut self.objects {
            obj.supported_by = graph.supporter(&obj.id).clone();
        }
        Ok(())
    }

    /// Check the scene invariants: acyclic supports, every supporter's
    /// footprint containing its rider's center, and no same-layer footprint
    /// overlap (objects inside the pen holder are exempt — it is a
    /// container and its contents deliberately share space).
    pub fn validate(&self) -> Result<(), SimError> {
        use crate::geometry::{convex_intersection_area, point_in_polygon};
        support_graph(self)?;
        for obj in &self.objects {
            match &obj.supported_by {
                SupportRef::Desktop => {
                    if !point_in_polygon(obj.center(), &self.table.support_polygon) {
                        return Err(SimError::InvalidScene(format!(
                            "{} is off the table",
                            obj.id
                        )));
                    }
                }
                SupportRef::Object(under) => {
                    let under = self.object(under)?;
                    if !point_in_polygon(obj.center(), &under.world_footprint()) {
                        return Err(SimError::InvalidScene(format!(
                            "{} is not over its supporter {}",
                            obj.id, under.id
                        )));
                    }
                }
            }
        }
        for (i, a) in self.objects.iter().enumerate() {
            for b in &self.objects[i + 1..] {
                if a.supported_by != b.supported_by {
                    continue;
                }
                if self.in_holder(a) && self.in_holder(b) {
                    continue;
                }
                let inter = convex_intersection_area(&a.world_footprint(), &b.world_footprint());
                if inter >= 1e-8 {
                    return Err(SimError::InvalidScene(format!(
                        "{} and {} overlap on the same layer ({} m^2)",
                        a.id, b.id, inter
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn in_holder(&self, obj: &ObjectState) -> bool {
        crate::geometry::point_in_polygon(obj.center(), &self.pen_holder_region)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, SimError> {
        let scene: Scene =
            serde_json::from_str(s).map_err(|e| SimError::InvalidScene(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }
}

/// Outcome of one primitive execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Failure,
}

/// Why an action failed; `None` iff the action succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureCause {
    None,
    Infeasible,
    Cograsp,
    PlacementOutOfRegion,
    Collision,
    EdgeUnreachable,
}

impl fmt::Display for FailureCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureCause::None => "none",
            FailureCause::Infeasible => "infeasible",
            FailureCause::Cograsp => "cograsp",
            FailureCause::PlacementOutOfRegion => "placement_out_of_region",
            FailureCause::Collision => "collision",
            FailureCause::EdgeUnreachable => "edge_unreachable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionResult {
    pub outcome: Outcome,
    pub cause: FailureCause,
    pub scene_after: Scene,
}

impl ActionResult {
    pub fn success(scene: Scene) -> Self {
        ActionResult {
            outcome: Outcome::Success,
            cause: FailureCause::None,
            scene_after: scene,
        }
    }

    pub fn failure(cause: FailureCause, scene: Scene) -> Self {
        debug_assert!(cause != FailureCause::None);
        ActionResult {
            outcome: Outcome::Failure,
            cause,
            scene_after: scene,
        }
    }

    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

/// Simulator knobs beyond the primitive planner's own config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Minimum footprint clearance before a separation push is required.
    pub separation_threshold: f64,
    /// In-hand yaw noise (std-dev, radians) for triangular rulers in
    /// stochastic mode. Straight rulers and everything else carry none.
    pub triangle_yaw_sigma: f64,
    /// Stack placement tolerance: max edge misalignment.
    pub stack_align_tol: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            separation_threshold: 0.010,
            triangle_yaw_sigma: 6f64.to_radians(),
            stack_align_tol: 0.005,
        }
    }
}
