//! Point/segment/polygon queries shared by the planners and the simulator.

use super::{Point2, Polygon, Segment, Vec2, EPS};

/// Containment test; boundary points (within [`EPS`]) count as inside.
pub fn point_in_polygon(p: Point2, poly: &Polygon) -> bool {
    for e in poly.edges() {
        if point_segment_distance(p, &e) <= EPS {
            return true;
        }
    }
    // Even-odd ray cast, +x direction, half-open edges.
    let v = poly.vertices();
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_int {
                inside = !inside;
            }
        }
    }
    inside
}

/// Foot of the perpendicular from `p` onto the segment, clamped to it.
pub fn foot_of_perpendicular(p: Point2, seg: &Segment) -> Point2 {
    let d = seg.b - seg.a;
    let t = ((p - seg.a).dot(d) / d.norm_squared()).clamp(0.0, 1.0);
    seg.a + d * t
}

pub fn point_segment_distance(p: Point2, seg: &Segment) -> f64 {
    p.distance(foot_of_perpendicular(p, seg))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestEdge {
    pub index: usize,
    pub segment: Segment,
    pub distance: f64,
}

/// Edge of the polygon closest to `p`; ties keep the lowest edge index.
pub fn nearest_edge(poly: &Polygon, p: Point2) -> NearestEdge {
    let mut best = NearestEdge {
        index: 0,
        segment: poly.edge(0),
        distance: point_segment_distance(p, &poly.edge(0)),
    };
    for i in 1..poly.len() {
        let seg = poly.edge(i);
        let d = point_segment_distance(p, &seg);
        if d < best.distance {
            best = NearestEdge { index: i, segment: seg, distance: d };
        }
    }
    best
}

/// Area of the intersection of two convex polygons (Sutherland-Hodgman).
/// Returns 0 when they do not overlap. Both inputs must be convex.
pub fn convex_intersection_area(a: &Polygon, b: &Polygon) -> f64 {
    let mut subject: Vec<Point2> = a.vertices().to_vec();
    let clip = b.vertices();
    let n = clip.len();
    for i in 0..n {
        if subject.is_empty() {
            return 0.0;
        }
        let ca = clip[i];
        let cb = clip[(i + 1) % n];
        let edge = cb - ca;
        let inside = |p: Point2| edge.cross(p - ca) >= -EPS;
        let mut out = Vec::with_capacity(subject.len() + 1);
        for j in 0..subject.len() {
            let cur = subject[j];
            let prev = subject[(j + subject.len() - 1) % subject.len()];
            let cur_in = inside(cur);
            let prev_in = inside(prev);
            if cur_in != prev_in {
                if let Some(x) = line_segment_crossing(prev, cur, ca, edge) {
                    out.push(x);
                }
            }
            if cur_in {
                out.push(cur);
            }
        }
        subject = out;
    }
    if subject.len() < 3 {
        return 0.0;
    }
    let mut area = 0.0;
    for i in 0..subject.len() {
        let p = subject[i];
        let q = subject[(i + 1) % subject.len()];
        area += p.x * q.y - q.x * p.y;
    }
    (0.5 * area).abs()
}

/// Intersection of segment prev->cur with the infinite line through `origin`
/// with direction `dir`.
fn line_segment_crossing(prev: Point2, cur: Point2, origin: Point2, dir: Vec2) -> Option<Point2> {
    let seg = cur - prev;
    let denom = dir.cross(seg);
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = dir.cross(prev - origin) / -denom;
    Some(prev + seg * t)
}

/// Minimum gap between two convex polygons; 0 when they overlap or touch.
pub fn polygon_clearance(a: &Polygon, b: &Polygon) -> f64 {
    if convex_intersection_area(a, b) > 0.0 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for v in a.vertices() {
        for e in b.edges() {
            best = best.min(point_segment_distance(*v, &e));
        }
    }
    for v in b.vertices() {
        for e in a.edges() {
            best = best.min(point_segment_distance(*v, &e));
        }
    }
    best
}

/// Where a ray leaving `origin` along `dir` first crosses the polygon
/// boundary, as `(edge index, distance)`. `None` when the ray never crosses
/// (origin outside pointing away, or parallel grazing).
pub fn ray_exit(poly: &Polygon, origin: Point2, dir: Vec2) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in poly.edges().enumerate() {
        let seg = e.b - e.a;
        let denom = dir.cross(seg);
        if denom.abs() < 1e-15 {
            continue;
        }
        let rel = e.a - origin;
        let t = rel.cross(seg) / denom; // distance along the ray
        let u = rel.cross(dir) / denom; // position along the edge
        if t > EPS && (-1e-12..=1.0 + 1e-12).contains(&u)
            && best.map_or(true, |(_, bt)| t < bt)
        {
            best = Some((i, t));
        }
    }
    best
}
