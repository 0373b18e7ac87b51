//! Exact-ish 2D computational geometry for tabletop planning.
//!
//! Why this design (short): planners downstream reason about object
//! footprints as simple polygons in a table-fixed frame. All routines here
//! are deterministic, allocation-light, and tolerance-based rather than
//! exact-arithmetic; the shared coincidence tolerance is [`EPS`] (meters).
//!
//! Conventions:
//! - polygons store CCW vertices and positive signed area;
//! - pose angles live in `[-pi, pi)`, rectangle orientations in `[0, pi)`
//!   (a rectangle is pi-periodic);
//! - boundary points count as inside for containment queries.

mod hull;
mod minrect;
mod queries;
mod simplify;

pub use hull::convex_hull;
pub use minrect::min_area_rect;
pub use queries::{
    convex_intersection_area, foot_of_perpendicular, nearest_edge, point_in_polygon,
    point_segment_distance, polygon_clearance, ray_exit, NearestEdge,
};
pub use simplify::approx_polygon;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coincidence / collinearity tolerance, meters.
pub const EPS: f64 = 1e-9;

/// Cross-product threshold under which three points count as collinear.
/// Units are m^2; desk-scale baselines make this far stricter than [`EPS`].
pub(crate) const COLLINEAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
}

/// Normalize an angle to `[-pi, pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = (theta + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI);
    t - std::f64::consts::PI
}

/// Normalize a pi-periodic orientation to `[0, pi)`.
pub fn normalize_orientation(theta: f64) -> f64 {
    theta.rem_euclid(std::f64::consts::PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Vec2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` from +x.
    #[inline]
    pub fn unit(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z component of the 3D cross).
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// CCW perpendicular.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n < EPS {
            None
        } else {
            Some(Vec2::new(self.x / n, self.y / n))
        }
    }

    #[inline]
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Point2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Add<Vec2> for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub<Vec2> for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Planar pose: position plus heading in `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub position: Point2,
    pub theta: f64,
}

impl Pose2 {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            position: Point2::new(x, y),
            theta: normalize_angle(theta),
        }
    }

    /// Map a body-frame point into the world frame.
    #[inline]
    pub fn apply(&self, p: Point2) -> Point2 {
        let (s, c) = self.theta.sin_cos();
        Point2::new(
            self.position.x + c * p.x - s * p.y,
            self.position.y + s * p.x + c * p.y,
        )
    }
}

/// Top-down gripper target: wrist position, yaw about vertical, and a tilt
/// that leans the fingertip away from vertical. Positive tilt displaces the
/// fingertip along the yaw heading `(cos yaw, sin yaw)`; planners pick the
/// tilt sign so the fingertip trails the direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GripperPose {
    pub position: Point3,
    pub yaw: f64,
    /// Lean from vertical, `[-pi/2, pi/2]`.
    pub tilt: f64,
}

impl GripperPose {
    pub fn upright(x: f64, y: f64, z: f64, yaw: f64) -> Self {
        Self {
            position: Point3 { x, y, z },
            yaw: normalize_angle(yaw),
            tilt: 0.0,
        }
    }

    /// Same orientation, new position.
    pub fn at(&self, x: f64, y: f64, z: f64) -> Self {
        Self {
            position: Point3 { x, y, z },
            yaw: self.yaw,
            tilt: self.tilt,
        }
    }

    /// Lean by `angle` in direction `sign` (+1 leans along the yaw heading).
    pub fn tilted(&self, angle: f64, sign: f64) -> Self {
        let tilt = (self.tilt + sign.signum() * angle).clamp(
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
        );
        Self {
            position: self.position,
            yaw: self.yaw,
            tilt,
        }
    }

    #[inline]
    pub fn xy(&self) -> Point2 {
        Point2::new(self.position.x, self.position.y)
    }
}

/// Non-degenerate line segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        debug_assert!((b - a).norm() >= EPS, "zero-length segment");
        Self { a, b }
    }

    #[inline]
    pub fn length(&self) -> f64 {
        (self.b - self.a).norm()
    }

    #[inline]
    pub fn direction(&self) -> Vec2 {
        (self.b - self.a).normalized().expect("segment invariant")
    }

    #[inline]
    pub fn angle(&self) -> f64 {
        (self.b - self.a).angle()
    }

    #[inline]
    pub fn midpoint(&self) -> Point2 {
        self.a.midpoint(self.b)
    }
}

/// Simple polygon stored CCW with positive signed area.
///
/// Construction validates the invariants; CW input is reversed rather than
/// rejected. Deserialization goes through the same validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::DegenerateInput("polygon needs 3+ vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::DegenerateInput("non-finite vertex"));
        }
        for i in 0..vertices.len() {
            let j = (i + 1) % vertices.len();
            if (vertices[j] - vertices[i]).norm() < EPS {
                return Err(GeometryError::DegenerateInput("repeated vertex"));
            }
        }
        let area = signed_area(&vertices);
        if area.abs() < 1e-12 {
            return Err(GeometryError::DegenerateInput("zero-area polygon"));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let poly = Self { vertices };
        if !poly.is_simple() {
            return Err(GeometryError::DegenerateInput("self-intersecting polygon"));
        }
        Ok(poly)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        // Area-weighted centroid; valid because the area is nonzero.
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..self.vertices.len() {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % self.vertices.len()];
            let w = p.x * q.y - q.x * p.y;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn edge(&self, i: usize) -> Segment {
        let j = (i + 1) % self.vertices.len();
        Segment::new(self.vertices[i], self.vertices[j])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn transformed(&self, pose: &Pose2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| pose.apply(v)).collect(),
        }
    }

    pub fn translated(&self, d: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
        }
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Axis-aligned rectangle helper: center `(cx, cy)`, full dims `(w, h)`.
    pub fn rectangle(cx: f64, cy: f64, w: f64, h: f64) -> Polygon {
        Polygon::new(vec![
            Point2::new(cx - 0.5 * w, cy - 0.5 * h),
            Point2::new(cx + 0.5 * w, cy - 0.5 * h),
            Point2::new(cx + 0.5 * w, cy + 0.5 * h),
            Point2::new(cx - 0.5 * w, cy + 0.5 * h),
        ])
        .expect("rectangle construction")
    }

    fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (a1, a2) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in (i + 1)..n {
                // Skip adjacent edges (shared endpoint).
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (b1, b2) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if segments_properly_intersect(a1, a2, b1, b2) {
                    return false;
                }
            }
        }
        true
    }
}

impl TryFrom<Vec<Point2>> for Polygon {
    type Error = GeometryError;
    fn try_from(v: Vec<Point2>) -> Result<Self, Self::Error> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<Point2> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let mut a = 0.0;
    for i in 0..vertices.len() {
        let p = vertices[i];
        let q = vertices[(i + 1) % vertices.len()];
        a += p.x * q.y - q.x * p.y;
    }
    0.5 * a
}

fn segments_properly_intersect(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> bool {
    let d1 = (a2 - a1).cross(b1 - a1);
    let d2 = (a2 - a1).cross(b2 - a1);
    let d3 = (b2 - b1).cross(a1 - b1);
    let d4 = (b2 - b1).cross(a2 - b1);
    d1 * d2 < -COLLINEAR_EPS && d3 * d4 < -COLLINEAR_EPS
}

/// Oriented rectangle: `half_extents.0 >= half_extents.1` and the angle of
/// the long axis normalized to `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedRect {
    pub center: Point2,
    pub half_extents: (f64, f64),
    pub angle: f64,
}

impl OrientedRect {
    pub fn area(&self) -> f64 {
        4.0 * self.half_extents.0 * self.half_extents.1
    }

    /// Corners in CCW order starting from the (+long, +short) quadrant.
    pub fn corners(&self) -> [Point2; 4] {
        let u = Vec2::unit(self.angle) * self.half_extents.0;
        let v = Vec2::unit(self.angle).perp() * self.half_extents.1;
        let c = self.center;
        [c + u + v, c - u + v, c - u - v, c + u - v]
    }

    /// Edge midpoints, index i between corners i and i+1. Indices 1 and 3
    /// are the short-edge centers (ends of the long axis).
    pub fn edge_centers(&self) -> [Point2; 4] {
        let c = self.corners();
        [
            c[0].midpoint(c[1]),
            c[1].midpoint(c[2]),
            c[2].midpoint(c[3]),
            c[3].midpoint(c[0]),
        ]
    }
}
