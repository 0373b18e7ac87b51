//! Geometric planning toolkit and kinematic simulator for desk organization.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: exact-ish 2D primitives (hulls, oriented rectangles,
//!   polygon queries) that everything else is built on.
//! - [`perception`]: point-cloud filtering, plane extraction, and tabletop
//!   contour analysis, plus a synthetic depth-cloud generator for tests.
//! - [`primitives`]: pose generators and feasibility tables for the three
//!   environment-assisted manipulation primitives (contact grasp, push-grasp,
//!   pry-grasp).
//! - [`sim`]: a deterministic 2.5D kinematic world model with seeded
//!   stochastic grasp/placement outcomes and a scenario catalog.
//! - [`planner`]: primitive assignment, ordering, plan construction, and
//!   episode execution with per-action replanning.
//! - [`render`]: top-down SVG views of scenes.
//! - [`suite`]: batch episode runner (data-parallel when the `parallel`
//!   feature is enabled) with CSV reporting.
//!
//! All linear units are meters and all angles are radians unless a name says
//! otherwise. Seeded entry points are pure functions of their inputs: the same
//! scene, config, and seed always produce byte-identical reports.

pub mod geometry;
pub mod perception;
pub mod primitives;
pub mod sim;
