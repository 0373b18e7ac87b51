//! Point-cloud processing for tabletop scenes.
//!
//! The pipeline mirrors a depth-camera stack: downsample, drop statistical
//! outliers, fit the dominant plane with seeded RANSAC, then reason about
//! the table contour and object contours in the plane's 2D frame. A
//! synthetic cloud generator ([`synth_cloud`]) provides ground-truth-labeled
//! inputs for all of it.
//!
//! The plane frame: origin at the projection of the world origin onto the
//! plane, x axis along the projection of world +x, y = normal x x-axis. For
//! a horizontal table at height z0 this maps (x, y, z) to (x, y), so 2D
//! results compare directly against world-frame footprints.

mod cloud;
mod filters;
mod pose;
mod ransac;
pub(crate) mod synth;
mod table;

pub use cloud::PointCloud3;
pub use filters::{remove_outliers, voxel_downsample};
pub use pose::{estimate_pose_minrect, extract_keypoints};
pub use ransac::{ransac_plane, PlaneModel};
pub use synth::{synth_cloud_patches, synth_cloud_table_only, SurfacePatch, SynthParams};
pub use table::{extract_table, TableModel};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PerceptionError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("no consensus: best plane explains {best_fraction:.3} of points (need {needed:.3})")]
    NoConsensus { best_fraction: f64, needed: f64 },
    #[error("geometry: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("io: {0}")]
    Io(String),
}

/// Tunables for the perception pipeline. Defaults match the bench setup the
/// simulator is calibrated against.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PerceptionConfig {
    /// Voxel edge length for downsampling, meters.
    pub voxel_leaf: f64,
    /// Neighbor count for statistical outlier removal.
    pub outlier_k: usize,
    /// Outlier threshold: mean + this multiple of the stddev.
    pub outlier_stddev_mult: f64,
    /// RANSAC inlier distance, meters.
    pub ransac_dist: f64,
    /// RANSAC iteration budget.
    pub ransac_iters: usize,
    /// Contour simplification tolerance, meters. Default is a working value
    /// chosen for 5 mm voxel grids; tune per sensor.
    pub approx_epsilon: f64,
    /// Seed for all randomized steps.
    pub rng_seed: u64,
}

impl Default for PerceptionConfig {
    fn default() -> Self {
        Self {
            voxel_leaf: 0.005,
            outlier_k: 8,
            outlier_stddev_mult: 1.0,
            ransac_dist: 0.005,
            ransac_iters: 500,
            approx_epsilon: 0.002,
            rng_seed: 0,
        }
    }
}
