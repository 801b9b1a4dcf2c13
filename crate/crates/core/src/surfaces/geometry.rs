//! Exact planar predicates on Gaussian-rational points.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::gauss::GaussianRational as G;

/// Sign of the turn `a → b → c`: `Greater` for counterclockwise.
pub fn orient(a: &G, b: &G, c: &G) -> Ordering {
    (b - a).cross(&(c - a)).cmp(&BigRational::zero())
}

fn on_segment(p: &G, q: &G, x: &G) -> bool {
    let (lo_re, hi_re) = minmax(p.re(), q.re());
    let (lo_im, hi_im) = minmax(p.im(), q.im());
    x.re() >= lo_re && x.re() <= hi_re && x.im() >= lo_im && x.im() <= hi_im
}

fn minmax<'a>(a: &'a BigRational, b: &'a BigRational) -> (&'a BigRational, &'a BigRational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether the closed segments `[p1, p2]` and `[q1, q2]` meet.
pub fn segments_intersect(p1: &G, p2: &G, q1: &G, q2: &G) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 != d2 && d3 != d4 && d1 != Ordering::Equal && d2 != Ordering::Equal && d3 != Ordering::Equal && d4 != Ordering::Equal {
        return true;
    }
    (d1 == Ordering::Equal && on_segment(q1, q2, p1))
        || (d2 == Ordering::Equal && on_segment(q1, q2, p2))
        || (d3 == Ordering::Equal && on_segment(p1, p2, q1))
        || (d4 == Ordering::Equal && on_segment(p1, p2, q2))
}

/// Partial sums `start, start + v_1, …`.
pub fn cumulative(start: &G, vectors: &[G]) -> Vec<G> {
    let mut out = Vec::with_capacity(vectors.len() + 1);
    out.push(start.clone());
    for v in vectors {
        let next = out.last().unwrap() + v;
        out.push(next);
    }
    out
}

/// Simplicity of the polyline through `points` (closed when `closed`).
///
/// Consecutive segments may be collinear but must not fold back; segments
/// that are not consecutive must be disjoint.
pub fn polyline_simple(points: &[G], closed: bool) -> bool {
    let n = if closed { points.len() } else { points.len().saturating_sub(1) };
    let seg = |k: usize| (&points[k], &points[(k + 1) % points.len()]);
    for i in 0..n {
        let (a, b) = seg(i);
        if a == b {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let consecutive = j == i + 1;
            let wrap = closed && i == 0 && j == n - 1;
            if consecutive {
                // shared point b == c: reject a fold back along the same line
                if orient(a, b, d) == Ordering::Equal && (b - a).dot(&(d - c)).is_negative() {
                    return false;
                }
                if n == 2 && closed && segments_intersect(a, b, c, d) && !(a == d) {
                    return false;
                }
                continue;
            }
            if wrap {
                if orient(c, d, b) == Ordering::Equal && (d - c).dot(&(b - a)).is_negative() {
                    return false;
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Twice the signed area of a closed polygon.
pub fn area2(points: &[G]) -> BigRational {
    let n = points.len();
    (0..n).map(|k| points[k].cross(&points[(k + 1) % n])).fold(BigRational::zero(), |acc, x| acc + x)
}

/// Bounding box `(min_re, max_re, min_im, max_im)`.
pub fn bbox(points: &[G]) -> (BigRational, BigRational, BigRational, BigRational) {
    let mut it = points.iter();
    let first = it.next().expect("bbox of nonempty set");
    let (mut x0, mut x1, mut y0, mut y1) = (first.re().clone(), first.re().clone(), first.im().clone(), first.im().clone());
    for p in it {
        if p.re() < &x0 {
            x0 = p.re().clone();
        }
        if p.re() > &x1 {
            x1 = p.re().clone();
        }
        if p.im() < &y0 {
            y0 = p.im().clone();
        }
        if p.im() > &y1 {
            y1 = p.im().clone();
        }
    }
    (x0, x1, y0, y1)
}

/// A point far enough along direction `dir` from `from` to leave any box of
/// the given half-perimeter around the figure.
pub fn far_along(from: &G, dir: &G, extent: &BigRational) -> G {
    let l1 = dir.re().abs() + dir.im().abs();
    let k = (extent + BigRational::from_integer(1.into())) / l1;
    from + &dir.scale(&k)
}
