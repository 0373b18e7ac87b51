//! The three environment-assisted manipulation primitives.
//!
//! Each primitive exploits a constraint instead of fighting it: contact
//! grasping presses the fingertips into the support surface to cage objects
//! too flat to pinch mid-air; push–grasp slides a planar object over a
//! support edge (desktop or book) until enough of it overhangs to pinch;
//! pry grasping rotates a tilted gripper under a book's spine to peel it
//! off the table. Planners here are pure: scene in, poses out. Whether a
//! grasp would *succeed* is a separate, table-driven question — see
//! [`FeasibilityTables`].

mod contact;
mod feasibility;
mod gripper;
mod pry;
mod push;

pub use contact::{plan_contact_grasp, ContactGraspPlan, GraspMode};
pub use feasibility::{
    contact_grasp_probability, paper_grasp_feasible, pry_probability, pry_probability_checked,
    FeasibilityTables, MAX_PAPER_GRASP_OFFSET,
};
pub use gripper::GripperModel;
pub use pry::{plan_pry_grasp, PryPlan};
pub use push::{plan_push_grasp, push_direction, PushGraspPlan};
pub(crate) use push::support_region;

use crate::geometry::GeometryError;
use crate::sim::Category;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrimitiveError {
    #[error("category {0:?} is not handled by this primitive")]
    UnsupportedCategory(Category),
    #[error("object has no support surface")]
    NoSupport,
    #[error("support edge unreachable: push path exits the support first")]
    EdgeUnreachable,
    #[error("no prying angle is reliable for thickness {0} m")]
    InfeasibleThickness(f64),
    #[error("grasp offset {0} m outside the gripper's reach")]
    OffsetOutOfRange(f64),
    #[error("feasibility table: {0}")]
    BadTable(String),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("scene: {0}")]
    Scene(#[from] crate::sim::SimError),
}

/// Planner tunables. Angle defaults are working values — the primitive
/// geometry defines their role, not their magnitude; everything else is
/// calibrated hardware data.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PrimitiveConfig {
    /// Push-pose tilt θ_p (radians).
    pub theta_p: f64,
    /// Grasp-pose tilt θ_g (radians).
    pub theta_g: f64,
    /// Required overhang past the support edge before grasping, meters.
    pub overhang_delta: f64,
    /// Grasp depth multiplier: contact grasp on the desktop.
    pub depth_mult_contact: f64,
    /// Grasp depth multiplier: non-contact grasp.
    pub depth_mult_noncontact: f64,
    /// Grasp depth multiplier: contact grasp on top of another object —
    /// shallower, to avoid cograsping the support.
    pub depth_mult_on_support: f64,
    /// Prying angle α to use when the whole tested band is reliable.
    pub default_pry_alpha: f64,
    /// Deterministic mode: a primitive is feasible iff its table
    /// probability reaches this.
    pub feasible_threshold: f64,
    /// Distance from the paper edge at which the sheet is pinched.
    pub paper_grasp_offset: f64,
}

impl Default for PrimitiveConfig {
    fn default() -> Self {
        PrimitiveConfig {
            theta_p: 30f64.to_radians(),
            theta_g: 45f64.to_radians(),
            overhang_delta: 0.015,
            depth_mult_contact: 1.5,
            depth_mult_noncontact: 0.5,
            depth_mult_on_support: 1.0,
            default_pry_alpha: 9f64.to_radians(),
            feasible_threshold: 0.9,
            paper_grasp_offset: 0.070,
        }
    }
}
