//! Seeded RANSAC plane fit with least-squares refinement.

use super::{PerceptionConfig, PerceptionError, PointCloud3};
use crate::geometry::Point3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plane in Hessian normal form: `normal . p = offset`, unit normal with
/// `normal.z > 0` (upward-facing for tabletops).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PlaneModel {
    pub normal: Point3,
    pub offset: f64,
}

impl PlaneModel {
    pub fn distance(&self, p: &Point3) -> f64 {
        (self.normal.x * p.x + self.normal.y * p.y + self.normal.z * p.z - self.offset).abs()
    }

    /// Project a point onto the plane.
    pub fn project(&self, p: &Point3) -> Point3 {
        let d = self.normal.x * p.x + self.normal.y * p.y + self.normal.z * p.z - self.offset;
        Point3 {
            x: p.x - d * self.normal.x,
            y: p.y - d * self.normal.y,
            z: p.z - d * self.normal.z,
        }
    }
}

/// Minimum fraction of the cloud the winning plane must explain.
const MIN_INLIER_FRACTION: f64 = 0.10;

/// Fit the dominant plane. Samples are drawn from a ChaCha stream seeded by
/// `cfg.rng_seed`, so results are a pure function of (cloud, config). The
/// winning consensus set is refined by a least-squares fit, and the returned
/// inlier indices are measured against that refined plane.
pub fn ransac_plane(
    cloud: &PointCloud3,
    cfg: &PerceptionConfig,
) -> Result<(PlaneModel, Vec<usize>), PerceptionError> {
    let pts = &cloud.points;
    let n = pts.len();
    if n < 3 {
        return Err(PerceptionError::DegenerateInput("plane fit needs 3+ points"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut best: Option<(usize, PlaneModel)> = None;

    for _ in 0..cfg.ransac_iters {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        if i == j || j == k || i == k {
            continue;
        }
        let Some(model) = plane_through(&pts[i], &pts[j], &pts[k]) else {
            continue;
        };
        let count = pts.iter().filter(|p| model.distance(p) <= cfg.ransac_dist).count();
        if best.as_ref().map_or(true, |(c, _)| count > *c) {
            best = Some((count, model));
        }
    }

    let (best_count, sampled) = best.ok_or(PerceptionError::DegenerateInput(
        "all samples degenerate (collinear cloud?)",
    ))?;
    let fraction = best_count as f64 / n as f64;
    if fraction < MIN_INLIER_FRACTION {
        return Err(PerceptionError::NoConsensus {
            best_fraction: fraction,
            needed: MIN_INLIER_FRACTION,
        });
    }

    let consensus: Vec<usize> = (0..n)
        .filter(|&i| sampled.distance(&pts[i]) <= cfg.ransac_dist)
        .collect();
    let refined = least_squares_plane(pts, &consensus).unwrap_or(sampled);
    let inliers: Vec<usize> = (0..n)
        .filter(|&i| refined.distance(&pts[i]) <= cfg.ransac_dist)
        .collect();
    Ok((refined, inliers))
}

fn plane_through(a: &Point3, b: &Point3, c: &Point3) -> Option<PlaneModel> {
    let u = [b.x - a.x, b.y - a.y, b.z - a.z];
    let v = [c.x - a.x, c.y - a.y, c.z - a.z];
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if norm < 1e-12 {
        return None;
    }
    let mut normal = Point3 { x: n[0] / norm, y: n[1] / norm, z: n[2] / norm };
    let mut offset = normal.x * a.x + normal.y * a.y + normal.z * a.z;
    if normal.z < 0.0 {
        normal = Point3 { x: -normal.x, y: -normal.y, z: -normal.z };
        offset = -offset;
    }
    Some(PlaneModel { normal, offset })
}

/// Least-squares plane through the indexed subset: centroid plus the
/// covariance eigenvector with the smallest eigenvalue.
fn least_squares_plane(pts: &[Point3], idx: &[usize]) -> Option<PlaneModel> {
    if idx.len() < 3 {
        return None;
    }
    let m = idx.len() as f64;
    let (mut cx, mut cy, mut cz) = (0.0, 0.0, 0.0);
    for &i in idx {
        cx += pts[i].x;
        cy += pts[i].y;
        cz += pts[i].z;
    }
    cx /= m;
    cy /= m;
    cz /= m;

    let mut cov = nalgebra::Matrix3::<f64>::zeros();
    for &i in idx {
        let d = nalgebra::Vector3::new(pts[i].x - cx, pts[i].y - cy, pts[i].z - cz);
        cov += d * d.transpose();
    }
    let eig = nalgebra::SymmetricEigen::new(cov);
    let mut min_i = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] < eig.eigenvalues[min_i] {
            min_i = i;
        }
    }
    let v = eig.eigenvectors.column(min_i);
    let norm = v.norm();
    if norm < 1e-12 || !norm.is_finite() {
        return None;
    }
    let mut normal = Point3 { x: v[0] / norm, y: v[1] / norm, z: v[2] / norm };
    if normal.z < 0.0 {
        normal = Point3 { x: -normal.x, y: -normal.y, z: -normal.z };
    }
    let offset = normal.x * cx + normal.y * cy + normal.z * cz;
    Some(PlaneModel { normal, offset })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn flat_cloud(n_side: usize, z: f64) -> PointCloud3 {
        let mut pts = Vec::new();
        for i in 0..n_side {
            for j in 0..n_side {
                pts.push(Point3 {
                    x: i as f64 * 0.01,
                    y: j as f64 * 0.01,
                    z,
                });
            }
        }
        PointCloud3::new(pts)
    }

    #[test]
    fn noiseless_plane_is_exact() {
        let cloud = flat_cloud(20, 0.05);
        let (plane, inliers) = ransac_plane(&cloud, &PerceptionConfig::default()).unwrap();
        assert!((plane.normal.z - 1.0).abs() < 1e-9);
        assert!((plane.offset - 0.05).abs() < 1e-9);
        assert_eq!(inliers.len(), cloud.len());
    }

    #[test]
    fn too_few_points_is_degenerate() {
        let cloud = PointCloud3::new(vec![
            Point3 { x: 0.0, y: 0.0, z: 0.0 },
            Point3 { x: 1.0, y: 0.0, z: 0.0 },
        ]);
        assert!(matches!(
            ransac_plane(&cloud, &PerceptionConfig::default()),
            Err(PerceptionError::DegenerateInput(_))
        ));
    }

    #[test]
    fn pure_noise_has_no_consensus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point3> = (0..800)
            .map(|_| Point3 {
                x: rng.gen_range(-0.3..0.3),
                y: rng.gen_range(-0.2..0.2),
                z: rng.gen_range(0.0..0.74),
            })
            .collect();
        let res = ransac_plane(&PointCloud3::new(pts), &PerceptionConfig::default());
        assert!(matches!(res, Err(PerceptionError::NoConsensus { .. })), "{:?}", res);
    }

    #[test]
    fn same_seed_same_inliers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut pts = Vec::new();
        for i in 0..40 {
            for j in 0..40 {
                pts.push(Point3 {
                    x: i as f64 * 0.01,
                    y: j as f64 * 0.01,
                    z: rng.gen_range(-0.002..0.002),
                });
            }
        }
        for _ in 0..160 {
            pts.push(Point3 {
                x: rng.gen_range(0.0..0.4),
                y: rng.gen_range(0.0..0.4),
                z: rng.gen_range(0.0..0.7),
            });
        }
        let cloud = PointCloud3::new(pts);
        let cfg = PerceptionConfig::default();
        let (p1, i1) = ransac_plane(&cloud, &cfg).unwrap();
        let (p2, i2) = ransac_plane(&cloud, &cfg).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(i1, i2);
    }

    #[test]
    fn noisy_table_with_outliers_recovers_plane() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut pts = Vec::new();
        let n_table;
        {
            let mut count = 0;
            for i in 0..120 {
                for j in 0..80 {
                    let z: f64 = rng.sample(rand_distr::Normal::new(0.0, 0.002).unwrap());
                    pts.push(Point3 {
                        x: i as f64 * 0.005 - 0.3,
                        y: j as f64 * 0.005 - 0.2,
                        z,
                    });
                    count += 1;
                }
            }
            n_table = count;
        }
        let n_out = n_table / 5;
        for _ in 0..n_out {
            pts.push(Point3 {
                x: rng.gen_range(-0.3..0.3),
                y: rng.gen_range(-0.2..0.2),
                z: rng.gen_range(0.0..0.74),
            });
        }
        let cloud = PointCloud3::new(pts);
        let (plane, inliers) = ransac_plane(&cloud, &PerceptionConfig::default()).unwrap();

        let tilt = plane.normal.z.clamp(-1.0, 1.0).acos().to_degrees();
        assert!(tilt < 1.0, "normal tilted {} deg", tilt);

        let true_inliers: Vec<usize> = (0..n_table).collect();
        let recalled = true_inliers
            .iter()
            .filter(|i| inliers.binary_search(i).is_ok())
            .count();
        let recall = recalled as f64 / n_table as f64;
        assert!(recall >= 0.95, "recall {}", recall);
    }
}
