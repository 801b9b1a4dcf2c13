//! Explicit flat surfaces with a prescribed pole configuration.
//!
//! Pole labels follow the residue tuple: label `k` carries residue `r[k]`
//! and order `orders[k]` (1 for simple poles).

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::piece::Piece;
use super::surface::{FlatSurface, SlotRef};
use crate::gauss::GaussianRational as G;
use crate::graphs::{removal_sequence, ConnectionGraph};

impl FlatSurface {
    /// Glues `a` to `b` (opposite traversals) through a stack of trivial
    /// polar parts `(u;u)` of type 1, one per `(label, order)` in `inserts`.
    pub fn glue_through(&mut self, a: SlotRef, b: SlotRef, inserts: &[(usize, u32)]) {
        self.glue_through_typed(a, b, &inserts.iter().map(|&(l, o)| (l, o, 1)).collect::<Vec<_>>());
    }

    /// As [`FlatSurface::glue_through`] with an explicit type for each part.
    pub fn glue_through_typed(&mut self, a: SlotRef, b: SlotRef, inserts: &[(usize, u32, u32)]) {
        let t = self.pieces[a.piece].slots()[a.slot].clone();
        let forward = t.is_forward();
        let u = if forward { t.clone() } else { -&t };
        let mut cur = a;
        for &(label, order, tau) in inserts {
            let k = self.add(Piece::polar(order, tau, vec![u.clone()], vec![u.clone()], label));
            let (top, bottom) = (SlotRef::new(k, 0), SlotRef::new(k, 1));
            if forward {
                self.glue(cur, bottom);
                cur = top;
            } else {
                self.glue(cur, top);
                cur = bottom;
            }
        }
        self.glue(cur, b);
    }
}

/// Piece carrying a single slot of traversal `r` around pole `label`.
fn satellite(label: usize, order: u32, r: &G) -> Piece {
    if order == 1 {
        Piece::simple(vec![r.clone()], label)
    } else if r.is_forward() {
        Piece::polar(order, 1, vec![r.clone()], vec![], label)
    } else {
        Piece::polar(order, 1, vec![], vec![-r], label)
    }
}

fn zero_residue_poles(orders: &[u32], r: &[G], skip: Option<usize>) -> Vec<(usize, u32)> {
    (0..r.len()).filter(|&k| r[k].is_zero() && Some(k) != skip).map(|k| (k, orders[k])).collect()
}

/// Genus zero, one zero: a convex polygon with edges `−r_k` for the nonzero
/// residues, each edge closed off by a pole piece. Zero-residue poles are
/// trivial parts inserted along the first edge. Needs non-collinear residues.
pub fn residual_polygon(orders: &[u32], r: &[G]) -> Option<FlatSurface> {
    let mut nonzero: Vec<usize> = (0..r.len()).filter(|&k| !r[k].is_zero()).collect();
    if nonzero.len() < 3 {
        return None;
    }
    let neg: Vec<G> = r.iter().map(|x| -x).collect();
    nonzero.sort_by(|&a, &b| neg[a].arg_cmp(&neg[b]).then(a.cmp(&b)));
    let mut s = FlatSurface::default();
    let poly = s.add(Piece::polygon(nonzero.iter().map(|&k| neg[k].clone()).collect()));
    let mut inserts = zero_residue_poles(orders, r, None);
    for (edge, &k) in nonzero.iter().enumerate() {
        let sat = s.add(satellite(k, orders[k], &r[k]));
        let here = if edge == 0 { std::mem::take(&mut inserts) } else { Vec::new() };
        s.glue_through(SlotRef::new(sat, 0), SlotRef::new(poly, edge), &here);
    }
    Some(s)
}

/// Genus zero, one zero: one polar part (the hub, the first higher pole)
/// whose top carries `−r_j` for backward residues and whose bottom carries
/// `r_j` for forward ones; every other pole closes one hub segment.
pub fn collinear_hub(orders: &[u32], r: &[G]) -> Option<FlatSurface> {
    let hub = orders.iter().position(|&b| b >= 2)?;
    let others: Vec<usize> = (0..r.len()).filter(|&k| k != hub && !r[k].is_zero()).collect();
    if others.is_empty() {
        return None;
    }
    let mut top: Vec<usize> = others.iter().copied().filter(|&k| !r[k].is_forward()).collect();
    let mut bottom: Vec<usize> = others.iter().copied().filter(|&k| r[k].is_forward()).collect();
    top.sort_by(|&a, &b| (-&r[b]).arg_cmp(&-&r[a]).then(a.cmp(&b)));
    bottom.sort_by(|&a, &b| r[a].arg_cmp(&r[b]).then(a.cmp(&b)));
    let hub_piece = Piece::polar(
        orders[hub],
        1,
        top.iter().map(|&k| -&r[k]).collect(),
        bottom.iter().map(|&k| r[k].clone()).collect(),
        hub,
    );
    let mut s = FlatSurface::default();
    let h = s.add(hub_piece.clone());
    let mut inserts = zero_residue_poles(orders, r, Some(hub));
    let slots: Vec<(usize, usize)> = top
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, hub_piece.top_slot(i)))
        .chain(bottom.iter().enumerate().map(|(j, &k)| (k, hub_piece.bottom_slot(j))))
        .collect();
    for (n, (k, slot)) in slots.into_iter().enumerate() {
        let sat = s.add(satellite(k, orders[k], &r[k]));
        let here = if n == 0 { std::mem::take(&mut inserts) } else { Vec::new() };
        s.glue_through(SlotRef::new(sat, 0), SlotRef::new(h, slot), &here);
    }
    Some(s)
}

/// Genus zero, zero residues: trivial parts `(1;1)` of types `taus` glued in
/// a cycle, top of each to the bottom of the next. The left corners meet in
/// a zero of order `Σ τ − 1`, the right corners in one of order `Σ (b − τ) − 1`.
pub fn zero_residue_chain(orders: &[u32], taus: &[u32]) -> FlatSurface {
    let mut s = FlatSurface::default();
    let one = G::one();
    for (k, (&b, &t)) in orders.iter().zip(taus).enumerate() {
        s.add(Piece::polar(b, t, vec![one.clone()], vec![one.clone()], k));
    }
    let p = orders.len();
    for k in 0..p {
        s.glue(SlotRef::new(k, 0), SlotRef::new((k + 1) % p, 1));
    }
    s
}

/// Types in `1..b_k` summing to `total`, filled greedily from the front.
pub fn split_types(orders: &[u32], total: u32) -> Option<Vec<u32>> {
    let mut taus = vec![1u32; orders.len()];
    let mut left = total.checked_sub(orders.len() as u32)?;
    for (t, &b) in taus.iter_mut().zip(orders) {
        let add = left.min(b - 2);
        *t += add;
        left -= add;
    }
    (left == 0).then_some(taus)
}

/// Genus zero, three zeros `a1 ≤ a2 ≤ a3`, zero residues: the first pole of
/// order 2 carries the part `(1+i, 1−i; 2)` closed by a triangle with
/// vertices `A1 = 0`, `A2 = 1+i`, `A3 = 2`. Every other pole is a trivial
/// part stacked on one triangle side, contributing `2πτ` at the side's start
/// and `2π(b − τ)` at its end.
pub fn zero_residue_triangle(orders: &[u32], zeros: [u32; 3]) -> Option<FlatSurface> {
    let hub = orders.iter().position(|&b| b == 2)?;
    let others: Vec<usize> = (0..orders.len()).filter(|&k| k != hub).collect();
    let b: Vec<u32> = others.iter().map(|&k| orders[k]).collect();
    let choice = triangle_distribution(&b, zeros)?;
    let mut s = FlatSurface::default();
    let (v1, v2, v3) = (G::from_ints(1, 1), G::from_ints(1, -1), G::from_ints(2, 0));
    let hub_piece = Piece::polar(2, 1, vec![v1.clone(), v2.clone()], vec![v3.clone()], hub);
    let h = s.add(hub_piece.clone());
    let tri = s.add(Piece::polygon(vec![v3, -&v2, -&v1]));
    // hub slot and triangle edge for each side
    let pairs = [
        (SlotRef::new(h, hub_piece.top_slot(0)), SlotRef::new(tri, 2)),
        (SlotRef::new(h, hub_piece.top_slot(1)), SlotRef::new(tri, 1)),
        (SlotRef::new(h, hub_piece.bottom_slot(0)), SlotRef::new(tri, 0)),
    ];
    for (side, &(a, b)) in pairs.iter().enumerate() {
        let stack: Vec<(usize, u32, u32)> = others
            .iter()
            .zip(&choice)
            .filter(|(_, c)| c.0 == side)
            .map(|(&k, &(_, tau))| (k, orders[k], tau))
            .collect();
        s.glue_through_typed(a, b, &stack);
    }
    Some(s)
}

/// Edge counts from each pole to the triangle vertices, distributed greedily:
/// start with one edge to `A1` and the rest to `A2`; move whole `A2` stacks to
/// `A3` in index order while `A2` keeps at least `a2`; on the first pole where
/// that fails move just enough, then move its `A1` edge to `A3`; finally move
/// `A1` edges of later poles to `A3` until `A1` has `a1`.
///
/// Returns `(side, τ)` per pole with sides `A1A2`, `A2A3`, `A1A3`.
pub fn triangle_distribution(orders: &[u32], zeros: [u32; 3]) -> Option<Vec<(usize, u32)>> {
    let mut a = zeros;
    a.sort_unstable();
    let m = orders.len();
    let mut e: Vec<[u32; 3]> = orders.iter().map(|&b| [1, b - 1, 0]).collect();
    let val = |e: &[[u32; 3]], v: usize| e.iter().map(|x| x[v]).sum::<u32>();
    let mut i0 = None;
    for i in 0..m {
        let v2 = val(&e, 1);
        if v2 - e[i][1] >= a[1] {
            e[i][2] += e[i][1];
            e[i][1] = 0;
        } else {
            let shift = v2.checked_sub(a[1])?;
            e[i][1] -= shift;
            e[i][2] += shift;
            e[i][0] -= 1;
            e[i][2] += 1;
            i0 = Some(i);
            break;
        }
    }
    let i0 = i0?;
    for j in i0 + 1..m {
        if val(&e, 0) <= a[0] {
            break;
        }
        e[j][0] -= 1;
        e[j][2] += 1;
    }
    if val(&e, 0) != a[0] || val(&e, 1) != a[1] || val(&e, 2) != a[2] {
        return None;
    }
    e.iter()
        .map(|x| match (x[0] > 0, x[1] > 0, x[2] > 0) {
            (true, true, false) => Some((0, x[0])),
            (false, true, true) => Some((1, x[1])),
            (true, false, true) => Some((2, x[0])),
            _ => None,
        })
        .collect()
}

/// Genus zero, one zero, simple poles only: one half-infinite cylinder per
/// vertex of the connection graph, its chain made of the glued segments.
///
/// Along vertex `v` the segments come in removal order: first the edges of
/// leaves removed onto `v`, then the edge by which `v` itself is removed.
/// `labels[v]` is the pole label of vertex `v`.
pub fn connection_graph_surface(graph: &ConnectionGraph, direction: &G, labels: &[usize]) -> FlatSurface {
    let n = graph.vertex_count();
    let removals = removal_sequence(graph);
    let mut chains: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, rm) in removals.iter().enumerate() {
        chains[rm.onto].push(e);
    }
    for (e, rm) in removals.iter().enumerate() {
        chains[rm.leaf].push(e);
    }
    let mut s = FlatSurface::default();
    let mut where_: Vec<Vec<SlotRef>> = vec![Vec::new(); removals.len()];
    for v in 0..n {
        let sign = graph.sides[v].sign();
        let vectors: Vec<G> = chains[v].iter().map(|&e| direction.scale_int(sign * removals[e].length)).collect();
        let piece = s.add(Piece::simple(vectors, labels[v]));
        for (slot, &e) in chains[v].iter().enumerate() {
            where_[e].push(SlotRef::new(piece, slot));
        }
    }
    for ends in where_ {
        s.glue(ends[0], ends[1]);
    }
    s
}

/// Genus one, one zero, simple poles only: a square torus with a convex hole
/// whose sides are `−r_k`, cut into a lower and an upper polygon along
/// horizontal segments through the leftmost and rightmost hole vertices.
pub fn torus_with_hole(r: &[G]) -> Option<FlatSurface> {
    let n = r.len();
    if n < 2 || r.iter().any(G::is_zero) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| r[a].arg_cmp(&r[b]).then(a.cmp(&b)));
    let mut pts = vec![G::zero()];
    for &k in &order[..n - 1] {
        let next = pts.last().unwrap() + &r[k];
        pts.push(next);
    }
    let lex = |a: &G, b: &G| a.re().cmp(b.re()).then(a.im().cmp(b.im()));
    let il = (0..n).min_by(|&a, &b| lex(&pts[a], &pts[b])).unwrap();
    order.rotate_left(il);
    let mut pts = vec![G::zero()];
    for &k in &order[..n - 1] {
        let next = pts.last().unwrap() + &r[k];
        pts.push(next);
    }
    let ir = (0..n).max_by(|&a, &b| lex(&pts[a], &pts[b])).unwrap();
    let lower = &order[..ir];
    let upper = &order[ir..];
    let rpt = pts[ir].clone();

    let one = BigRational::one();
    let xs: Vec<&BigRational> = pts.iter().map(G::re).collect();
    let ys: Vec<&BigRational> = pts.iter().map(G::im).collect();
    let x0 = -one.clone();
    let x1 = (*xs.iter().max().unwrap()).clone() + &one;
    let y0 = (*ys.iter().min().unwrap()).clone() - &one;
    let y1 = (*ys.iter().max().unwrap()).clone() + &one;
    let yl = BigRational::zero();
    let yr = rpt.im().clone();
    let mut breaks = vec![y0.clone(), yl.clone(), yr.clone(), y1.clone()];
    breaks.sort();
    breaks.dedup();
    let intervals: Vec<(BigRational, BigRational)> = breaks.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let up = |h: &BigRational| G::new(BigRational::zero(), h.clone());
    let real = |x: BigRational| G::new(x, BigRational::zero());
    let width = &x1 - &x0;
    let right_gap = &x1 - rpt.re();

    // lower polygon, counterclockwise from the bottom left corner
    let mut lo = vec![real(width.clone())];
    let mut lo_right = Vec::new();
    for (i, (a, b)) in intervals.iter().enumerate() {
        if b <= &yr {
            lo_right.push((i, lo.len()));
            lo.push(up(&(b - a)));
        }
    }
    let lo_conn_r = lo.len();
    lo.push(real(-right_gap.clone()));
    let lo_chain = lo.len();
    for &k in lower.iter().rev() {
        lo.push(-&r[k]);
    }
    let lo_conn_l = lo.len();
    lo.push(real(-one.clone()));
    let mut lo_left = Vec::new();
    for (i, (a, b)) in intervals.iter().enumerate().rev() {
        if b <= &yl {
            lo_left.push((i, lo.len()));
            lo.push(-up(&(b - a)));
        }
    }

    // upper polygon, counterclockwise from the left end of the left connector
    let mut hi = vec![real(one.clone())];
    let hi_chain = hi.len();
    for &k in upper.iter().rev() {
        hi.push(-&r[k]);
    }
    let hi_conn_r = hi.len();
    hi.push(real(right_gap));
    let mut hi_right = Vec::new();
    for (i, (a, b)) in intervals.iter().enumerate() {
        if a >= &yr {
            hi_right.push((i, hi.len()));
            hi.push(up(&(b - a)));
        }
    }
    let hi_top = hi.len();
    hi.push(real(-width));
    let mut hi_left = Vec::new();
    for (i, (a, b)) in intervals.iter().enumerate().rev() {
        if a >= &yl {
            hi_left.push((i, hi.len()));
            hi.push(-up(&(b - a)));
        }
    }

    let mut s = FlatSurface::default();
    let pl = s.add(Piece::polygon(lo));
    let ph = s.add(Piece::polygon(hi));
    s.glue(SlotRef::new(pl, 0), SlotRef::new(ph, hi_top));
    s.glue(SlotRef::new(pl, lo_conn_l), SlotRef::new(ph, 0));
    s.glue(SlotRef::new(pl, lo_conn_r), SlotRef::new(ph, hi_conn_r));
    let rights: Vec<(usize, SlotRef)> = lo_right
        .iter()
        .map(|&(i, k)| (i, SlotRef::new(pl, k)))
        .chain(hi_right.iter().map(|&(i, k)| (i, SlotRef::new(ph, k))))
        .collect();
    let lefts: Vec<(usize, SlotRef)> = lo_left
        .iter()
        .map(|&(i, k)| (i, SlotRef::new(pl, k)))
        .chain(hi_left.iter().map(|&(i, k)| (i, SlotRef::new(ph, k))))
        .collect();
    for (i, a) in &lefts {
        let (_, b) = rights.iter().find(|(j, _)| j == i)?;
        s.glue(*a, *b);
    }
    for (n, &k) in lower.iter().rev().enumerate() {
        let c = s.add(Piece::simple(vec![r[k].clone()], k));
        s.glue(SlotRef::new(c, 0), SlotRef::new(pl, lo_chain + n));
    }
    for (n, &k) in upper.iter().rev().enumerate() {
        let c = s.add(Piece::simple(vec![r[k].clone()], k));
        s.glue(SlotRef::new(c, 0), SlotRef::new(ph, hi_chain + n));
    }
    Some(s)
}

/// Genus one, one zero, zero residues: parts `(1;1)` of types `taus` in a
/// row, top of each glued to the bottom of the next, the two free segments
/// closed by a unit cylinder.
pub fn type_chain(orders: &[u32], taus: &[u32]) -> FlatSurface {
    let mut s = FlatSurface::default();
    let one = G::one();
    let p = orders.len();
    for (k, (&b, &t)) in orders.iter().zip(taus).enumerate() {
        s.add(Piece::polar(b, t, vec![one.clone()], vec![one.clone()], k));
    }
    for k in 0..p.saturating_sub(1) {
        s.glue(SlotRef::new(k, 0), SlotRef::new(k + 1, 1));
    }
    let cyl = s.add(Piece::polygon(vec![G::from_ints(1, 0), G::from_ints(0, 1), G::from_ints(-1, 0), G::from_ints(0, -1)]));
    s.glue(SlotRef::new(0, 1), SlotRef::new(cyl, 0));
    s.glue(SlotRef::new(p - 1, 0), SlotRef::new(cyl, 2));
    s.glue(SlotRef::new(cyl, 1), SlotRef::new(cyl, 3));
    s
}

/// Parts `(i, 1; 1, i)` and `(1;1)` of order 2 used by the slanted families.
fn slanted_part(label: usize) -> Piece {
    let (one, i) = (G::one(), G::i());
    Piece::polar(2, 1, vec![i.clone(), one.clone()], vec![one, i], label)
}

/// Genus one, all poles of order 2, zero residues: `p − 1` parts `(1;1)`
/// and one `(i, 1; 1, i)` whose vertical segments are glued to each other,
/// the horizontal segments glued in a cycle.
pub fn slanted_last(p: usize) -> Option<FlatSurface> {
    if p == 0 {
        return None;
    }
    let one = G::one();
    let mut s = FlatSurface::default();
    for k in 0..p - 1 {
        s.add(Piece::polar(2, 1, vec![one.clone()], vec![one.clone()], k));
    }
    let last = s.add(slanted_part(p - 1));
    // horizontal top and bottom slots of each part
    let horiz = |k: usize| if k == last { (SlotRef::new(k, 1), SlotRef::new(k, 3)) } else { (SlotRef::new(k, 0), SlotRef::new(k, 1)) };
    for k in 0..p {
        s.glue(horiz(k).0, horiz((k + 1) % p).1);
    }
    s.glue(SlotRef::new(last, 0), SlotRef::new(last, 2));
    Some(s)
}

/// Genus one, odd number of poles of order 2, zero residues: `p − 2` parts
/// `(1;1)`, one `(i, 1; 1, i)` and one `(i;i)`, the vertical segments of the
/// last two glued crosswise.
pub fn slanted_pair(p: usize) -> Option<FlatSurface> {
    if p < 3 || p.is_multiple_of(2) {
        return None;
    }
    let (one, i) = (G::one(), G::i());
    let mut s = FlatSurface::default();
    for k in 0..p - 2 {
        s.add(Piece::polar(2, 1, vec![one.clone()], vec![one.clone()], k));
    }
    let q = s.add(slanted_part(p - 2));
    let v = s.add(Piece::polar(2, 1, vec![i.clone()], vec![i], p - 1));
    let horiz = |k: usize| if k == q { (SlotRef::new(k, 1), SlotRef::new(k, 3)) } else { (SlotRef::new(k, 0), SlotRef::new(k, 1)) };
    let m = p - 1;
    for k in 0..m {
        s.glue(horiz(k).0, horiz((k + 1) % m).1);
    }
    s.glue(SlotRef::new(q, 0), SlotRef::new(v, 1));
    s.glue(SlotRef::new(v, 0), SlotRef::new(q, 2));
    Some(s)
}

/// Holomorphic, genus `g ≥ 1`, one zero of order `2g − 2`: a convex
/// `4g`-gon with opposite sides glued.
pub fn holomorphic_polygon(g: u32) -> Option<FlatSurface> {
    if g == 0 {
        return None;
    }
    let half: Vec<G> = (0..2 * g as i64).map(|k| G::from_ints(g as i64 - k, 1)).collect();
    let mut edges = half.clone();
    edges.extend(half.iter().map(|e| -e));
    let m = half.len();
    let mut s = FlatSurface::default();
    let p = s.add(Piece::polygon(edges));
    for k in 0..m {
        s.glue(SlotRef::new(p, k), SlotRef::new(p, k + m));
    }
    Some(s)
}
