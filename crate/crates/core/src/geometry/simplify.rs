//! Closed-contour simplification (Ramer-Douglas-Peucker on a ring).

use super::{point_segment_distance, GeometryError, Point2, Polygon, Segment};

/// Simplify a closed contour: vertices farther than `epsilon` from the
/// simplified boundary are kept, the rest are dropped.
///
/// The ring is split at its diameter pair (the two vertices farthest from
/// each other — always genuine extremes of the shape, so anchoring there
/// never pins a noise point into the output), each open chain is
/// simplified, and the halves are rejoined. Anchoring at extremes also
/// makes the operation idempotent for a fixed epsilon: the diameter pair
/// of the simplified ring is the pair it was split at. Output preserves
/// CCW order and is rotated to start at its lexicographically smallest
/// vertex so equal inputs give byte-equal outputs.
pub fn approx_polygon(poly: &Polygon, epsilon: f64) -> Result<Polygon, GeometryError> {
    if !(epsilon > 0.0) {
        return Err(GeometryError::DegenerateInput("epsilon must be positive"));
    }
    let v = poly.vertices();
    let n = v.len();

    // Diameter pair; ties resolve to the lowest index pair for determinism.
    let (mut a, mut b) = (0usize, 1usize);
    let mut best = -1.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (v[j] - v[i]).norm_squared();
            if d > best {
                best = d;
                a = i;
                b = j;
            }
        }
    }

    let ring_slice = |from: usize, to: usize| -> Vec<Point2> {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(v[i]);
            if i == to {
                break;
            }
            i = (i + 1) % n;
        }
        out
    };

    let first = rdp_keep(&ring_slice(a, b), epsilon);
    let second = rdp_keep(&ring_slice(b, a), epsilon);

    let mut out = first;
    out.extend_from_slice(&second[1..second.len() - 1]);
    if out.len() < 3 {
        return Err(GeometryError::DegenerateInput("simplification collapsed polygon"));
    }
    let start = (0..out.len())
        .min_by(|&i, &j| out[i].x.total_cmp(&out[j].x).then(out[i].y.total_cmp(&out[j].y)))
        .expect("non-empty output");
    out.rotate_left(start);
    Polygon::new(out)
}

/// Open-chain RDP: keeps both endpoints, recursing on the farthest vertex
/// whenever it deviates more than `epsilon` from the chord.
fn rdp_keep(chain: &[Point2], epsilon: f64) -> Vec<Point2> {
    debug_assert!(chain.len() >= 2);
    if chain.len() == 2 {
        return chain.to_vec();
    }
    let chord = Segment::new(chain[0], chain[chain.len() - 1]);
    let mut worst = 0usize;
    let mut worst_d = -1.0;
    for (i, &p) in chain.iter().enumerate().take(chain.len() - 1).skip(1) {
        let d = point_segment_distance(p, &chord);
        if d > worst_d {
            worst_d = d;
            worst = i;
        }
    }
    if worst_d > epsilon {
        let mut left = rdp_keep(&chain[..=worst], epsilon);
        let right = rdp_keep(&chain[worst..], epsilon);
        left.pop();
        left.extend_from_slice(&right);
        left
    } else {
        vec![chain[0], chain[chain.len() - 1]]
    }
}
