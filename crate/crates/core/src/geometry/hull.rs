//! Convex hull via Andrew's monotone chain.

use super::{GeometryError, Point2, Polygon, COLLINEAR_EPS, EPS};

/// Convex hull of a point set, CCW, strictly convex (collinear boundary
/// points are dropped). Errors when fewer than three distinct points remain
/// or all points are collinear.
pub fn convex_hull(points: &[Point2]) -> Result<Polygon, GeometryError> {
    let mut pts: Vec<Point2> = points.iter().copied().filter(|p| p.is_finite()).collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| (*a - *b).norm() < EPS);
    if pts.len() < 3 {
        return Err(GeometryError::DegenerateInput("hull needs 3+ distinct points"));
    }

    let cross = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);

    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= COLLINEAR_EPS
        {
            lower.pop();
        }
        lower.push(p);
    }

    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= COLLINEAR_EPS
        {
            upper.pop();
        }
        upper.push(p);
    }

    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeometryError::DegenerateInput("all points collinear"));
    }
    Polygon::new(lower)
}
