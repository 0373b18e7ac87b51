//! Table extraction: plane inliers to support polygon and boundary edges.

use super::{
    ransac_plane, remove_outliers, voxel_downsample, PerceptionConfig, PerceptionError, PlaneModel,
    PointCloud3,
};
use crate::geometry::{approx_polygon, convex_hull, Point2, Point3, Polygon, Segment};
use serde::{Deserialize, Serialize};

/// Table surface model in the plane's 2D frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableModel {
    pub plane: PlaneModel,
    /// Convex support region containing every plane inlier.
    pub support_polygon: Polygon,
    /// Boundary edges usable as push targets (longer than
    /// [`MIN_EDGE_LENGTH`]), fitted on the simplified hull.
    pub edges: Vec<Segment>,
    /// Longest boundary edge; ties keep the lowest index.
    pub dominant_edge: Segment,
}

/// Hull edges shorter than this are sampling artifacts, not table sides.
pub const MIN_EDGE_LENGTH: f64 = 0.10;

impl TableModel {
    /// Build directly from a known horizontal surface at `z` (ground truth
    /// for simulation; no sensing involved).
    pub fn from_support_polygon(support: Polygon, z: f64) -> Self {
        let plane = PlaneModel {
            normal: Point3 { x: 0.0, y: 0.0, z: 1.0 },
            offset: z,
        };
        let (edges, dominant_edge) = boundary_edges(&support);
        Self {
            plane,
            support_polygon: support,
            edges,
            dominant_edge,
        }
    }

    pub fn height(&self) -> f64 {
        // Valid for the near-horizontal planes this toolkit deals with.
        self.offset_along_z()
    }

    fn offset_along_z(&self) -> f64 {
        self.plane.offset / self.plane.normal.z
    }

    /// Map a 3D point into the plane frame (see module docs in
    /// [`crate::perception`]).
    pub fn to_plane_frame(&self, p: &Point3) -> Point2 {
        plane_frame_coords(&self.plane, p)
    }
}

/// In-plane coordinates: origin at the world origin's projection, x along
/// the projection of world +x (world +y if the plane is vertical about x).
fn plane_frame_coords(plane: &PlaneModel, p: &Point3) -> Point2 {
    let n = plane.normal;
    let (e1, e2) = plane_frame_axes(&n);
    let origin = Point3 {
        x: plane.offset * n.x,
        y: plane.offset * n.y,
        z: plane.offset * n.z,
    };
    let d = [p.x - origin.x, p.y - origin.y, p.z - origin.z];
    Point2::new(
        d[0] * e1[0] + d[1] * e1[1] + d[2] * e1[2],
        d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2],
    )
}

fn plane_frame_axes(n: &Point3) -> ([f64; 3], [f64; 3]) {
    // e1 = normalize(x_hat - (x_hat . n) n), falling back to y_hat.
    let mut e1 = [1.0 - n.x * n.x, -n.x * n.y, -n.x * n.z];
    let norm = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    if norm < 1e-6 {
        e1 = [-n.y * n.x, 1.0 - n.y * n.y, -n.y * n.z];
        let norm = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
        e1 = [e1[0] / norm, e1[1] / norm, e1[2] / norm];
    } else {
        e1 = [e1[0] / norm, e1[1] / norm, e1[2] / norm];
    }
    let e2 = [
        n.y * e1[2] - n.z * e1[1],
        n.z * e1[0] - n.x * e1[2],
        n.x * e1[1] - n.y * e1[0],
    ];
    (e1, e2)
}

/// Denoise, fit the dominant plane, and model the table top.
///
/// The support polygon is the full convex hull of the inliers (so it
/// contains every one of them); boundary edges come from the
/// `approx_epsilon`-simplified hull, because the raw hull of a noisy grid
/// has no long straight runs.
pub fn extract_table(
    cloud: &PointCloud3,
    cfg: &PerceptionConfig,
) -> Result<TableModel, PerceptionError> {
    let down = voxel_downsample(cloud, cfg.voxel_leaf)?;
    let (clean, _) = remove_outliers(&down, cfg.outlier_k, cfg.outlier_stddev_mult)?;
    let (plane, inliers) = ransac_plane(&clean, cfg)?;

    let projected: Vec<Point2> = inliers
        .iter()
        .map(|&i| plane_frame_coords(&plane, &clean.points[i]))
        .collect();
    let support = convex_hull(&projected)?;
    let simplified = approx_polygon(&support, cfg.approx_epsilon)?;
    let (edges, dominant_edge) = boundary_edges(&simplified);
    Ok(TableModel {
        plane,
        support_polygon: support,
        edges,
        dominant_edge,
    })
}

/// Boundary edges above the length cutoff plus the dominant (longest) edge.
/// When every edge is short the dominant edge is still defined and is the
/// only entry, keeping the invariant that it appears in `edges`.
fn boundary_edges(poly: &Polygon) -> (Vec<Segment>, Segment) {
    let mut longest = poly.edge(0);
    for e in poly.edges().skip(1) {
        if e.length() > longest.length() {
            longest = e;
        }
    }
    let mut edges: Vec<Segment> = poly.edges().filter(|e| e.length() > MIN_EDGE_LENGTH).collect();
    if edges.is_empty() {
        edges.push(longest);
    }
    (edges, longest)
}
