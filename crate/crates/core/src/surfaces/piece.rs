//! Building blocks of a translation surface and the angles at their corners.
//!
//! Every piece is a topological disk whose boundary is a cycle of slots. A
//! slot is a straight segment with a traversal vector, oriented so the piece
//! lies on its left. Corner `k` sits at the start of slot `k`.

use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::geometry::{area2, bbox, cumulative, far_along, polyline_simple};
use crate::gauss::{ccw_angle, GaussianRational as G};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Piece {
    /// A simple polygon with counterclockwise edge vectors.
    Polygon { edges: Vec<G> },
    /// Neighbourhood of a pole of order `order ≥ 2`: `order − 1` half-planes
    /// glued cyclically, cut along the broken lines through `top` and `bottom`.
    /// `tau` is the number of left-open domains above the top line.
    PolarPart { order: u32, tau: u32, top: Vec<G>, bottom: Vec<G>, pole: usize },
    /// Neighbourhood of a simple pole: a half-infinite cylinder bounded by the
    /// chain `vectors`.
    SimplePolePart { vectors: Vec<G>, pole: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PieceError {
    #[error("piece has a zero-length segment")]
    ZeroSegment,
    #[error("polygon needs at least three edges")]
    TooFewEdges,
    #[error("polygon edges do not close up")]
    NotClosed,
    #[error("polygon is not simple")]
    NotSimple,
    #[error("polygon is not counterclockwise")]
    Clockwise,
    #[error("pole order {0} is below 2")]
    OrderTooSmall(u32),
    #[error("type {tau} is outside 1..={max}")]
    TypeOutOfRange { tau: u32, max: u32 },
    #[error("polar part with no segments")]
    EmptyPolarPart,
    #[error("top arguments must not increase and bottom arguments must not decrease")]
    ArgumentOrder,
    #[error("segment sum points to the left")]
    LeftPointingChain,
    #[error("broken line crosses itself")]
    SelfIntersecting,
    #[error("simple pole part has zero residue")]
    ZeroResidue,
}

impl Piece {
    pub fn polygon(edges: Vec<G>) -> Self {
        Piece::Polygon { edges }
    }

    pub fn polar(order: u32, tau: u32, top: Vec<G>, bottom: Vec<G>, pole: usize) -> Self {
        Piece::PolarPart { order, tau, top, bottom, pole }
    }

    pub fn simple(vectors: Vec<G>, pole: usize) -> Self {
        Piece::SimplePolePart { vectors, pole }
    }

    /// Traversal vectors of the boundary slots, in cyclic order.
    pub fn slots(&self) -> Vec<G> {
        match self {
            Piece::Polygon { edges } => edges.clone(),
            Piece::PolarPart { top, bottom, .. } => top.iter().cloned().chain(bottom.iter().rev().map(|w| -w)).collect(),
            Piece::SimplePolePart { vectors, .. } => vectors.clone(),
        }
    }

    pub fn slot_count(&self) -> usize {
        match self {
            Piece::Polygon { edges } => edges.len(),
            Piece::PolarPart { top, bottom, .. } => top.len() + bottom.len(),
            Piece::SimplePolePart { vectors, .. } => vectors.len(),
        }
    }

    /// Slot index of the `k`-th top segment of a polar part.
    pub fn top_slot(&self, k: usize) -> usize {
        k
    }

    /// Slot index of the `j`-th bottom segment of a polar part.
    pub fn bottom_slot(&self, j: usize) -> usize {
        match self {
            Piece::PolarPart { top, bottom, .. } => top.len() + bottom.len() - 1 - j,
            _ => j,
        }
    }

    /// Label and order of the pole the piece contains.
    pub fn pole(&self) -> Option<(usize, u32)> {
        match self {
            Piece::Polygon { .. } => None,
            Piece::PolarPart { order, pole, .. } => Some((*pole, *order)),
            Piece::SimplePolePart { pole, .. } => Some((*pole, 1)),
        }
    }

    pub fn validate(&self) -> Result<(), PieceError> {
        if self.slots().iter().any(G::is_zero) {
            return Err(PieceError::ZeroSegment);
        }
        match self {
            Piece::Polygon { edges } => {
                if edges.len() < 3 {
                    return Err(PieceError::TooFewEdges);
                }
                if !edges.iter().sum::<G>().is_zero() {
                    return Err(PieceError::NotClosed);
                }
                let pts = cumulative(&G::zero(), &edges[..edges.len() - 1]);
                if !polyline_simple(&pts, true) {
                    return Err(PieceError::NotSimple);
                }
                if !area2(&pts).is_positive() {
                    return Err(PieceError::Clockwise);
                }
                Ok(())
            }
            Piece::PolarPart { order, tau, top, bottom, .. } => {
                if *order < 2 {
                    return Err(PieceError::OrderTooSmall(*order));
                }
                if *tau < 1 || *tau > order - 1 {
                    return Err(PieceError::TypeOutOfRange { tau: *tau, max: order - 1 });
                }
                if top.is_empty() && bottom.is_empty() {
                    return Err(PieceError::EmptyPolarPart);
                }
                let non_increasing = top.windows(2).all(|w| w[0].arg_cmp(&w[1]).is_ge());
                let non_decreasing = bottom.windows(2).all(|w| w[0].arg_cmp(&w[1]).is_le());
                if !non_increasing || !non_decreasing {
                    return Err(PieceError::ArgumentOrder);
                }
                for chain in [top, bottom] {
                    if !chain.is_empty() && chain.iter().sum::<G>().re().is_negative() {
                        return Err(PieceError::LeftPointingChain);
                    }
                    if !broken_line_simple(chain) {
                        return Err(PieceError::SelfIntersecting);
                    }
                }
                Ok(())
            }
            Piece::SimplePolePart { vectors, .. } => {
                if vectors.is_empty() || vectors.iter().sum::<G>().is_zero() {
                    return Err(PieceError::ZeroResidue);
                }
                if !half_cylinder_simple(vectors) {
                    return Err(PieceError::SelfIntersecting);
                }
                Ok(())
            }
        }
    }

    /// Angle at each corner, aligned with [`Piece::slots`]. Assumes a valid piece.
    pub fn corner_angles(&self) -> Vec<f64> {
        match self {
            Piece::Polygon { edges } => {
                let n = edges.len();
                (0..n).map(|k| ordinary(&edges[(k + n - 1) % n], &edges[k])).collect()
            }
            Piece::SimplePolePart { vectors, .. } => {
                let n = vectors.len();
                let mut out = Vec::with_capacity(n);
                let l = half_cylinder_direction(vectors);
                out.push(ccw_angle(&vectors[0], &l) + ccw_angle(&l, &-&vectors[n - 1]));
                for k in 1..n {
                    out.push(ordinary(&vectors[k - 1], &vectors[k]));
                }
                out
            }
            Piece::PolarPart { order, tau, top, bottom, .. } => {
                let b = *order as f64;
                let t = *tau as f64;
                let one = G::one();
                let minus = -G::one();
                let mut out = Vec::with_capacity(top.len() + bottom.len());
                match (top.is_empty(), bottom.is_empty()) {
                    (false, false) => {
                        let l = top.len();
                        let m = bottom.len();
                        out.push(ccw_angle(&top[0], &minus) + ccw_angle(&minus, &bottom[0]) + 2.0 * PI * (t - 1.0));
                        for k in 1..l {
                            out.push(ordinary(&top[k - 1], &top[k]));
                        }
                        out.push(
                            ccw_angle(&one, &-&top[l - 1]) + ccw_angle(&-&bottom[m - 1], &one) + 2.0 * PI * (b - t - 1.0),
                        );
                        for j in (0..m - 1).rev() {
                            out.push(ordinary(&-&bottom[j + 1], &-&bottom[j]));
                        }
                    }
                    (false, true) => {
                        let l = top.len();
                        out.push(ccw_angle(&top[0], &minus) + ccw_angle(&one, &-&top[l - 1]) + PI * (2.0 * b - 3.0));
                        for k in 1..l {
                            out.push(ordinary(&top[k - 1], &top[k]));
                        }
                    }
                    (true, false) => {
                        let m = bottom.len();
                        out.push(ccw_angle(&minus, &bottom[0]) + ccw_angle(&-&bottom[m - 1], &one) + PI * (2.0 * b - 3.0));
                        for j in (0..m - 1).rev() {
                            out.push(ordinary(&-&bottom[j + 1], &-&bottom[j]));
                        }
                    }
                    (true, true) => {}
                }
                out
            }
        }
    }
}

/// Interior angle between incoming `a` and outgoing `b` with the region on the left.
fn ordinary(a: &G, b: &G) -> f64 {
    ccw_angle(b, &-a)
}

/// Residue at the pole inside the piece; `None` for polygons.
pub fn residue_of_piece(piece: &Piece) -> Option<G> {
    match piece {
        Piece::Polygon { .. } => None,
        Piece::PolarPart { top, bottom, .. } => Some(top.iter().sum::<G>() - bottom.iter().sum::<G>()),
        Piece::SimplePolePart { vectors, .. } => Some(vectors.iter().sum()),
    }
}

/// The chain with its two horizontal rays, truncated outside its bounding box.
fn broken_line_simple(chain: &[G]) -> bool {
    let mut pts = cumulative(&G::zero(), chain);
    let (x0, x1, _, _) = bbox(&pts);
    let one = num_rational::BigRational::from_integer(1.into());
    let left = G::new(x0 - &one, num_rational::BigRational::zero());
    let end = pts.last().unwrap().clone();
    let right = G::new(x1 + &one, end.im().clone());
    pts.insert(0, left);
    pts.push(right);
    polyline_simple(&pts, false)
}

/// Direction of the two parallel rays bounding a half-infinite cylinder:
/// perpendicular to the chord, pointing to its left.
fn half_cylinder_direction(vectors: &[G]) -> G {
    let chord: G = vectors.iter().sum();
    &G::i() * &chord
}

fn half_cylinder_simple(vectors: &[G]) -> bool {
    let pts = cumulative(&G::zero(), vectors);
    let (x0, x1, y0, y1) = bbox(&pts);
    let extent = (x1 - x0) + (y1 - y0);
    let dir = half_cylinder_direction(vectors);
    let start = far_along(&pts[0], &dir, &extent);
    let end = far_along(pts.last().unwrap(), &dir, &extent);
    let mut line = vec![start];
    line.extend(pts);
    line.push(end);
    polyline_simple(&line, false)
}
