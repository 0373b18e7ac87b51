//! Cloud denoising: voxel downsampling and statistical outlier removal.

use super::{PerceptionError, PointCloud3};
use crate::geometry::Point3;
use std::collections::BTreeMap;

/// Downsample by replacing every occupied `leaf`-sized voxel with the
/// centroid of its points. Output order follows voxel index order, so the
/// result is deterministic regardless of input order.
pub fn voxel_downsample(cloud: &PointCloud3, leaf: f64) -> Result<PointCloud3, PerceptionError> {
    if !(leaf > 0.0) {
        return Err(PerceptionError::DegenerateInput("leaf must be positive"));
    }
    let mut cells: BTreeMap<(i64, i64, i64), (f64, f64, f64, usize)> = BTreeMap::new();
    for p in &cloud.points {
        let key = (
            (p.x / leaf).floor() as i64,
            (p.y / leaf).floor() as i64,
            (p.z / leaf).floor() as i64,
        );
        let e = cells.entry(key).or_insert((0.0, 0.0, 0.0, 0));
        e.0 += p.x;
        e.1 += p.y;
        e.2 += p.z;
        e.3 += 1;
    }
    let points = cells
        .values()
        .map(|&(sx, sy, sz, n)| Point3 {
            x: sx / n as f64,
            y: sy / n as f64,
            z: sz / n as f64,
        })
        .collect();
    Ok(PointCloud3::new(points))
}

/// Statistical outlier removal: a point is dropped when its mean distance to
/// its `k` nearest neighbors exceeds `mean + stddev_mult * stddev` of that
/// statistic over the whole cloud. Returns the kept cloud and the kept
/// indices (ascending).
pub fn remove_outliers(
    cloud: &PointCloud3,
    k: usize,
    stddev_mult: f64,
) -> Result<(PointCloud3, Vec<usize>), PerceptionError> {
    let n = cloud.points.len();
    if k == 0 {
        return Err(PerceptionError::DegenerateInput("k must be positive"));
    }
    if n <= k {
        // Too small to rank neighbors; keep everything.
        return Ok((cloud.clone(), (0..n).collect()));
    }

    let mean_dists = mean_knn_distances(&cloud.points, k);
    let mean: f64 = mean_dists.iter().sum::<f64>() / n as f64;
    let var: f64 = mean_dists.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64;
    let threshold = mean + stddev_mult * var.sqrt();

    let mut kept = Vec::with_capacity(n);
    let mut indices = Vec::with_capacity(n);
    for (i, p) in cloud.points.iter().enumerate() {
        if mean_dists[i] <= threshold {
            kept.push(*p);
            indices.push(i);
        }
    }
    Ok((PointCloud3::new(kept), indices))
}

/// Mean distance from each point to its k nearest neighbors. Uses a uniform
/// grid sized from the cloud density; exact distances, deterministic ties.
fn mean_knn_distances(points: &[Point3], k: usize) -> Vec<f64> {
    let n = points.len();
    let (mut lo, mut hi) = ([f64::INFINITY; 3], [f64::NEG_INFINITY; 3]);
    for p in points {
        for (i, v) in [p.x, p.y, p.z].into_iter().enumerate() {
            lo[i] = lo[i].min(v);
            hi[i] = hi[i].max(v);
        }
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(hi[2] - lo[2]).max(1e-6);
    // Aim for a handful of points per cell.
    let cell = (extent / (n as f64).cbrt()).max(1e-6) * 1.5;

    let key = |p: &Point3| {
        (
            ((p.x - lo[0]) / cell).floor() as i64,
            ((p.y - lo[1]) / cell).floor() as i64,
            ((p.z - lo[2]) / cell).floor() as i64,
        )
    };
    let mut grid: BTreeMap<(i64, i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i);
    }

    let mut out = vec![0.0; n];
    let mut heap: Vec<f64> = Vec::new(); // max-heap-by-scan; k is small
    for (i, p) in points.iter().enumerate() {
        let (cx, cy, cz) = key(p);
        heap.clear();
        let mut ring = 0i64;
        loop {
            // Gather candidates in the cube shell at Chebyshev radius `ring`.
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    for dz in -ring..=ring {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != ring {
                            continue;
                        }
                        if let Some(cellpts) = grid.get(&(cx + dx, cy + dy, cz + dz)) {
                            for &j in cellpts {
                                if j == i {
                                    continue;
                                }
                                let q = &points[j];
                                let d = ((p.x - q.x).powi(2)
                                    + (p.y - q.y).powi(2)
                                    + (p.z - q.z).powi(2))
                                .sqrt();
                                insert_bounded(&mut heap, d, k);
                            }
                        }
                    }
                }
            }
            // Neighbors beyond `ring` cells are at least (ring) * cell away;
            // stop once the current k-th distance can't be beaten.
            let done = heap.len() == k && heap[k - 1] <= ring as f64 * cell;
            if done || ring as f64 * cell > extent * 2.0 {
                break;
            }
            ring += 1;
        }
        out[i] = heap.iter().sum::<f64>() / heap.len().max(1) as f64;
    }
    out
}

/// Keep the k smallest values, sorted ascending.
fn insert_bounded(buf: &mut Vec<f64>, d: f64, k: usize) {
    let pos = buf.partition_point(|&x| x <= d);
    if buf.len() < k {
        buf.insert(pos, d);
    } else if pos < k {
        buf.insert(pos, d);
        buf.pop();
    }
}
