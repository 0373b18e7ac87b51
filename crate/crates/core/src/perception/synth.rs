//! Synthetic depth-cloud generator (overhead orthographic camera model).
//!
//! Stands in for a sensor: samples a regular grid over the table, resolves
//! stacked surfaces by taking the highest one per sample (an overhead
//! camera sees only the top), adds Gaussian depth noise, and mixes in
//! uniform spurious returns between the table and the camera.

use crate::geometry::{point_in_polygon, Point2, Point3, Polygon};
use crate::perception::PointCloud3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// One horizontal top surface visible from above.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    pub footprint: Polygon,
    pub top_z: f64,
}

#[derive(Debug, Clone)]
pub struct SynthParams {
    /// Lateral sample spacing.
    pub grid_step: f64,
    /// Std-dev of Gaussian depth noise on each surface sample.
    pub noise_sigma: f64,
    /// Spurious returns added as a fraction of surface samples.
    pub outlier_fraction: f64,
    /// Camera height above the table; bounds the outlier volume.
    pub camera_height: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            grid_step: 0.005,
            noise_sigma: 0.0,
            outlier_fraction: 0.0,
            camera_height: 0.74,
        }
    }
}

/// Sample a cloud from explicit top surfaces. Deterministic per seed.
pub fn synth_cloud_patches(
    table: &Polygon,
    table_z: f64,
    patches: &[SurfacePatch],
    params: &SynthParams,
    seed: u64,
) -> PointCloud3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = if params.noise_sigma > 0.0 {
        Some(Normal::new(0.0, params.noise_sigma).expect("finite sigma"))
    } else {
        None
    };

    let (mut lo, mut hi) = table.bounding_box();
    for p in patches {
        let (plo, phi) = p.footprint.bounding_box();
        lo.x = lo.x.min(plo.x);
        lo.y = lo.y.min(plo.y);
        hi.x = hi.x.max(phi.x);
        hi.y = hi.y.max(phi.y);
    }

    let step = params.grid_step;
    let nx = ((hi.x - lo.x) / step).ceil() as i64;
    let ny = ((hi.y - lo.y) / step).ceil() as i64;
    let mut points = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let xy = Point2::new(
                lo.x + (i as f64 + 0.5) * step,
                lo.y + (j as f64 + 0.5) * step,
            );
            let mut z = if point_in_polygon(xy, table) {
                Some(table_z)
            } else {
                None
            };
            for p in patches {
                if point_in_polygon(xy, &p.footprint) && z.map_or(true, |cur| p.top_z > cur) {
                    z = Some(p.top_z);
                }
            }
            if let Some(mut z) = z {
                if let Some(n) = &noise {
                    z += n.sample(&mut rng);
                }
                points.push(Point3 { x: xy.x, y: xy.y, z });
            }
        }
    }

    if params.outlier_fraction > 0.0 {
        let n_out = (params.outlier_fraction * points.len() as f64).round() as usize;
        let (tlo, thi) = table.bounding_box();
        let mut added = 0;
        while added < n_out {
            let xy = Point2::new(rng.gen_range(tlo.x..thi.x), rng.gen_range(tlo.y..thi.y));
            if !point_in_polygon(xy, table) {
                continue;
            }
            let z = rng.gen_range(table_z..table_z + params.camera_height);
            points.push(Point3 { x: xy.x, y: xy.y, z });
            added += 1;
        }
    }

    PointCloud3::new(points)
}

/// Bare-table cloud (no objects).
pub fn synth_cloud_table_only(
    table: &Polygon,
    table_z: f64,
    params: &SynthParams,
    seed: u64,
) -> PointCloud3 {
    synth_cloud_patches(table, table_z, &[], params, seed)
}
