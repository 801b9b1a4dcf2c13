//! Surfaces glued from pieces, and the exact recomputation of their invariants.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::piece::{residue_of_piece, Piece, PieceError};
use crate::gauss::GaussianRational as G;
use crate::residues::ResidueTuple;
use crate::stratum::StratumSignature;

/// Relative tolerance on cone angles, as a fraction of a full turn.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotRef {
    pub piece: usize,
    pub slot: usize,
}

impl SlotRef {
    pub fn new(piece: usize, slot: usize) -> Self {
        Self { piece, slot }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSurface {
    pub pieces: Vec<Piece>,
    pub pairings: Vec<(SlotRef, SlotRef)>,
}

impl FlatSurface {
    pub fn add(&mut self, piece: Piece) -> usize {
        self.pieces.push(piece);
        self.pieces.len() - 1
    }

    pub fn glue(&mut self, a: SlotRef, b: SlotRef) {
        self.pairings.push((a, b));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub order: u32,
    pub residue: G,
}

/// Invariants of a surface: genus, zero orders and the poles by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub genus: u32,
    pub zeros: Vec<u32>,
    pub poles: Vec<PoleRecord>,
}

impl Profile {
    /// Zeros sorted in decreasing order, for multiset comparison.
    pub fn sorted_zeros(&self) -> Vec<u32> {
        let mut z = self.zeros.clone();
        z.sort_unstable_by(|a, b| b.cmp(a));
        z
    }

    pub fn residues(&self) -> ResidueTuple {
        ResidueTuple::new(self.poles.iter().map(|p| p.residue.clone()).collect())
    }

    /// Whether the profile lies in `sig` with residues `r`, labels in tuple order.
    pub fn matches(&self, sig: &StratumSignature, r: &ResidueTuple) -> bool {
        let mut want = sig.zeros.clone();
        want.sort_unstable_by(|a, b| b.cmp(a));
        self.genus == sig.genus
            && self.sorted_zeros() == want
            && self.poles.len() == sig.pole_count()
            && self.poles.iter().enumerate().all(|(k, p)| p.order == sig.pole_order(k) && p.residue == r.entries[k])
    }

    pub fn signature(&self) -> StratumSignature {
        let poles = self.poles.iter().filter(|p| p.order >= 2).map(|p| p.order).collect();
        let s = self.poles.iter().filter(|p| p.order == 1).count() as u32;
        StratumSignature::new(self.genus, self.sorted_zeros(), poles, s)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SurfaceError {
    #[error("piece {index}: {source}")]
    Piece { index: usize, source: PieceError },
    #[error("pairing refers to missing slot {0:?}")]
    MissingSlot(SlotRef),
    #[error("slot {0:?} is glued more than once")]
    SlotReused(SlotRef),
    #[error("slot {0:?} is not glued")]
    SlotFree(SlotRef),
    #[error("slots {0:?} and {1:?} are not opposite vectors")]
    NotOpposite(SlotRef, SlotRef),
    #[error("surface is not connected")]
    Disconnected,
    #[error("cone angle {angle} is not a positive multiple of 2π")]
    BadConeAngle { angle: f64 },
    #[error("Euler characteristic {0} does not give an integer genus")]
    BadEuler(i64),
    #[error("pole labels must be 0..{0} without repetition")]
    PoleLabels(usize),
    #[error("surface has no pieces")]
    Empty,
}

/// One vertex of the glued surface: its cone angle and the corners it collects.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexOrbit {
    pub corners: Vec<SlotRef>,
    pub angle: f64,
}

/// Cycles of corners around the vertices of the gluing.
pub fn vertex_orbits(surface: &FlatSurface) -> Result<Vec<VertexOrbit>, SurfaceError> {
    let partner = partners(surface)?;
    let counts: Vec<usize> = surface.pieces.iter().map(Piece::slot_count).collect();
    let angles: Vec<Vec<f64>> = surface.pieces.iter().map(Piece::corner_angles).collect();
    let mut seen: Vec<Vec<bool>> = counts.iter().map(|&c| vec![false; c]).collect();
    let mut out = Vec::new();
    for p in 0..counts.len() {
        for k in 0..counts[p] {
            if seen[p][k] {
                continue;
            }
            let mut corners = Vec::new();
            let mut angle = 0.0;
            let mut cur = SlotRef::new(p, k);
            while !seen[cur.piece][cur.slot] {
                seen[cur.piece][cur.slot] = true;
                corners.push(cur);
                angle += angles[cur.piece][cur.slot];
                let b = partner[cur.piece][cur.slot];
                cur = SlotRef::new(b.piece, (b.slot + 1) % counts[b.piece]);
            }
            out.push(VertexOrbit { corners, angle });
        }
    }
    Ok(out)
}

fn partners(surface: &FlatSurface) -> Result<Vec<Vec<SlotRef>>, SurfaceError> {
    let slots: Vec<Vec<G>> = surface.pieces.iter().map(Piece::slots).collect();
    let unset = SlotRef::new(usize::MAX, usize::MAX);
    let mut partner: Vec<Vec<SlotRef>> = slots.iter().map(|s| vec![unset; s.len()]).collect();
    for &(a, b) in &surface.pairings {
        for x in [a, b] {
            if x.piece >= slots.len() || x.slot >= slots[x.piece].len() {
                return Err(SurfaceError::MissingSlot(x));
            }
        }
        if a == b {
            return Err(SurfaceError::SlotReused(a));
        }
        for (x, y) in [(a, b), (b, a)] {
            if partner[x.piece][x.slot] != unset {
                return Err(SurfaceError::SlotReused(x));
            }
            partner[x.piece][x.slot] = y;
        }
        if slots[a.piece][a.slot] != -&slots[b.piece][b.slot] {
            return Err(SurfaceError::NotOpposite(a, b));
        }
    }
    for (p, row) in partner.iter().enumerate() {
        if let Some(k) = row.iter().position(|&x| x == unset) {
            return Err(SurfaceError::SlotFree(SlotRef::new(p, k)));
        }
    }
    Ok(partner)
}

fn connected(surface: &FlatSurface) -> bool {
    let n = surface.pieces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &surface.pairings {
        let (ra, rb) = (find(&mut parent, a.piece), find(&mut parent, b.piece));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == root)
}

/// Checks every piece and gluing, then recomputes genus, zero orders from
/// cone angles, and pole orders and residues from the pole pieces.
pub fn verify_surface(surface: &FlatSurface) -> Result<Profile, SurfaceError> {
    if surface.pieces.is_empty() {
        return Err(SurfaceError::Empty);
    }
    for (index, piece) in surface.pieces.iter().enumerate() {
        piece.validate().map_err(|source| SurfaceError::Piece { index, source })?;
    }
    let orbits = vertex_orbits(surface)?;
    if !connected(surface) {
        return Err(SurfaceError::Disconnected);
    }
    let mut zeros = Vec::new();
    for o in &orbits {
        let turns = o.angle / TAU;
        let k = turns.round();
        if k < 1.0 || (turns - k).abs() > ANGLE_TOLERANCE * k.max(1.0) {
            return Err(SurfaceError::BadConeAngle { angle: o.angle });
        }
        if k > 1.0 {
            zeros.push(k as u32 - 1);
        }
    }
    zeros.sort_unstable_by(|a, b| b.cmp(a));

    let v = orbits.len() as i64;
    let e = surface.pairings.len() as i64;
    let f = surface.pieces.len() as i64;
    let chi = v - e + f;
    if chi > 2 || (2 - chi) % 2 != 0 {
        return Err(SurfaceError::BadEuler(chi));
    }
    let genus = ((2 - chi) / 2) as u32;

    let mut labelled: Vec<(usize, PoleRecord)> = surface
        .pieces
        .iter()
        .filter_map(|p| {
            let (label, order) = p.pole()?;
            Some((label, PoleRecord { order, residue: residue_of_piece(p)? }))
        })
        .collect();
    labelled.sort_by_key(|(l, _)| *l);
    let count = labelled.len();
    if labelled.iter().enumerate().any(|(k, (l, _))| *l != k) {
        return Err(SurfaceError::PoleLabels(count));
    }
    let poles = labelled.into_iter().map(|(_, p)| p).collect();
    Ok(Profile { genus, zeros, poles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::g;

    fn square_torus() -> FlatSurface {
        let mut s = FlatSurface::default();
        let p = s.add(Piece::polygon(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]));
        s.glue(SlotRef::new(p, 0), SlotRef::new(p, 2));
        s.glue(SlotRef::new(p, 1), SlotRef::new(p, 3));
        s
    }

    #[test]
    fn torus() {
        let prof = verify_surface(&square_torus()).unwrap();
        assert_eq!(prof, Profile { genus: 1, zeros: vec![], poles: vec![] });
    }

    #[test]
    fn trivial_part_closed_on_itself() {
        let mut s = FlatSurface::default();
        let p = s.add(Piece::polar(3, 1, vec![g(1, 0)], vec![g(1, 0)], 0));
        s.glue(SlotRef::new(p, 0), SlotRef::new(p, 1));
        let prof = verify_surface(&s).unwrap();
        assert_eq!(prof.genus, 0);
        assert_eq!(prof.zeros, vec![1]);
        assert_eq!(prof.poles, vec![PoleRecord { order: 3, residue: G::zero() }]);
    }

    #[test]
    fn gluing_errors() {
        let mut s = square_torus();
        s.pairings.pop();
        assert!(matches!(verify_surface(&s), Err(SurfaceError::SlotFree(_))));
        let mut s = square_torus();
        s.pairings[1] = (SlotRef::new(0, 1), SlotRef::new(0, 2));
        assert!(verify_surface(&s).is_err());
    }
}
