//! Connection graphs: weighted bipartite trees encoding genus-zero surfaces
//! with one zero and only simple poles.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::residues::PrimitiveRay;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

/// Weighted tree whose edges cross the `Plus`/`Minus` partition.
///
/// Weights are integers: a collinear commensurable residue tuple is an
/// integer vector times a direction, and leaf removal keeps integrality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionGraph {
    pub sides: Vec<Side>,
    pub weights: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// Pole index carried by each vertex.
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("sides, weights and labels have different lengths")]
    Shape,
    #[error("edge ({0}, {1}) references a missing vertex")]
    BadVertex(usize, usize),
    #[error("edge ({0}, {1}) does not cross the partition")]
    NotBipartite(usize, usize),
    #[error("graph is not a tree")]
    NotTree,
    #[error("plus-side weight {plus} differs from minus-side weight {minus}")]
    Unbalanced { plus: i64, minus: i64 },
    #[error("vertex {0} is not a leaf")]
    NotLeaf(usize),
    #[error("cannot remove a leaf from a graph with fewer than two vertices")]
    TooSmall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantifier {
    /// Every sequence of 1 to A-1 leaf removals keeps all weights positive.
    Universal,
    /// Some complete sequence of A-1 removals keeps all weights positive.
    Existential,
}

impl ConnectionGraph {
    pub fn new(
        sides: Vec<Side>,
        weights: Vec<i64>,
        edges: Vec<(usize, usize)>,
        labels: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let g = Self { sides, weights, edges, labels };
        g.check_structure()?;
        Ok(g)
    }

    /// Graph for a primitive ray: vertex `k` carries `|integers[k]|`.
    pub fn from_ray_edges(ray: &PrimitiveRay, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let sides = ray.integers.iter().map(|&x| if x > 0 { Side::Plus } else { Side::Minus }).collect();
        let weights = ray.integers.iter().map(|x| x.abs()).collect();
        Self::new(sides, weights, edges, (0..ray.integers.len()).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_structure(&self) -> Result<(), GraphError> {
        let n = self.weights.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if self.sides.len() != n || self.labels.len() != n {
            return Err(GraphError::Shape);
        }
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(GraphError::BadVertex(u, v));
            }
            if self.sides[u] == self.sides[v] {
                return Err(GraphError::NotBipartite(u, v));
            }
        }
        if self.edges.len() + 1 != n || !connected(n, &self.edges) {
            return Err(GraphError::NotTree);
        }
        let plus: i64 = self.side_sum(Side::Plus);
        let minus: i64 = self.side_sum(Side::Minus);
        if plus != minus {
            return Err(GraphError::Unbalanced { plus, minus });
        }
        Ok(())
    }

    fn side_sum(&self, side: Side) -> i64 {
        self.weights.iter().zip(&self.sides).filter(|(_, &s)| s == side).map(|(w, _)| w).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    /// Removes a leaf and subtracts its weight from its neighbor.
    pub fn leaf_removal(&self, leaf: usize) -> Result<Self, GraphError> {
        if self.vertex_count() < 2 {
            return Err(GraphError::TooSmall);
        }
        if leaf >= self.vertex_count() || self.degree(leaf) != 1 {
            return Err(GraphError::NotLeaf(leaf));
        }
        let nb = self.neighbors(leaf)[0];
        let mut weights = self.weights.clone();
        weights[nb] -= weights[leaf];
        let keep = |v: usize| v != leaf;
        let idx = |v: usize| if v > leaf { v - 1 } else { v };
        Ok(Self {
            sides: (0..self.vertex_count()).filter(|&v| keep(v)).map(|v| self.sides[v]).collect(),
            weights: (0..self.vertex_count()).filter(|&v| keep(v)).map(|v| weights[v]).collect(),
            edges: self.edges.iter().filter(|&&(a, b)| a != leaf && b != leaf).map(|&(a, b)| (idx(a), idx(b))).collect(),
            labels: (0..self.vertex_count()).filter(|&v| keep(v)).map(|v| self.labels[v]).collect(),
        })
    }

    /// For each edge `(u, v)`, the signed weight of the component of `u`
    /// after deleting the edge, oriented by the side of `u`. By balance the
    /// same value is obtained from the side of `v`.
    pub fn edge_lengths(&self) -> Vec<i64> {
        let n = self.vertex_count();
        let adj = adjacency(n, &self.edges);
        self.edges
            .iter()
            .map(|&(u, v)| {
                let mut stack = vec![u];
                let mut seen = vec![false; n];
                seen[u] = true;
                seen[v] = true;
                let mut total = 0;
                while let Some(x) = stack.pop() {
                    total += self.sides[x].sign() * self.weights[x];
                    for &y in &adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                self.sides[u].sign() * total
            })
            .collect()
    }

    pub fn is_connection_graph(&self) -> bool {
        self.is_connection_graph_with(Quantifier::Universal)
    }

    /// Decides the leaf-removal condition by exploring removal sequences.
    ///
    /// After removing a set of vertices the remaining weights do not depend
    /// on the removal order, so states are keyed by the remaining vertex set.
    pub fn is_connection_graph_with(&self, mode: Quantifier) -> bool {
        if self.check_structure().is_err() || self.weights.iter().any(|&w| w <= 0) {
            return false;
        }
        let n = self.vertex_count();
        assert!(n <= 64, "removal search supports at most 64 vertices");
        if n <= 2 {
            return true;
        }
        let adj = adjacency(n, &self.edges);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        explore(&adj, full, self.weights.clone(), mode, &mut memo)
    }
}

fn explore(adj: &[Vec<usize>], mask: u64, weights: Vec<i64>, mode: Quantifier, memo: &mut HashMap<u64, bool>) -> bool {
    if mask.count_ones() <= 2 {
        return true;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let mut any = false;
    let mut all = true;
    for leaf in 0..adj.len() {
        if mask >> leaf & 1 == 0 {
            continue;
        }
        let live: Vec<usize> = adj[leaf].iter().copied().filter(|&y| mask >> y & 1 == 1).collect();
        if live.len() != 1 {
            continue;
        }
        let nb = live[0];
        let mut next = weights.clone();
        next[nb] -= next[leaf];
        let ok = next[nb] > 0 && explore(adj, mask & !(1 << leaf), next, mode, memo);
        any |= ok;
        all &= ok;
        match mode {
            Quantifier::Existential if any => break,
            Quantifier::Universal if !all => break,
            _ => {}
        }
    }
    let result = match mode {
        Quantifier::Universal => all,
        Quantifier::Existential => any,
    };
    memo.insert(mask, result);
    result
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = adjacency(n, edges);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Decodes a Prüfer sequence over `n = seq.len() + 2` labels.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a, b));
    edges
}

/// Calls `visit` on every labeled tree on `n ≥ 2` vertices in Prüfer order;
/// stops early when `visit` returns `true`.
pub fn for_each_tree(n: usize, mut visit: impl FnMut(Vec<(usize, usize)>) -> bool) -> bool {
    if n < 2 {
        return false;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        if visit(prufer_decode(&seq, n)) {
            return true;
        }
        let mut k = len;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
        }
    }
}

/// Exhaustive search over bipartite spanning trees of the complete bipartite
/// graph on the ray's positive and negative entries.
pub fn find_connection_graph(ray: &PrimitiveRay) -> Option<ConnectionGraph> {
    find_connection_graph_for(&ray.integers)
}

/// Same as [`find_connection_graph`] for any signed integer weights summing to zero.
pub fn find_connection_graph_for(integers: &[i64]) -> Option<ConnectionGraph> {
    let n = integers.len();
    if n < 2 || integers.contains(&0) || integers.iter().sum::<i64>() != 0 {
        return None;
    }
    let sides: Vec<Side> = integers.iter().map(|&x| if x > 0 { Side::Plus } else { Side::Minus }).collect();
    let weights: Vec<i64> = integers.iter().map(|x| x.abs()).collect();
    let mut found = None;
    for_each_tree(n, |edges| {
        if edges.iter().any(|&(a, b)| sides[a] == sides[b]) {
            return false;
        }
        let g = ConnectionGraph { sides: sides.clone(), weights: weights.clone(), edges, labels: (0..n).collect() };
        if g.edge_lengths().iter().all(|&l| l > 0) {
            found = Some(g);
            true
        } else {
            false
        }
    });
    found
}

/// Whether some bipartite spanning tree on `integers` passes the leaf-removal
/// test read with quantifier `mode`. Slower than [`find_connection_graph_for`],
/// which uses the equivalent edge-length test for the universal reading.
pub fn connection_graph_exists(integers: &[i64], mode: Quantifier) -> bool {
    let n = integers.len();
    if n < 2 || integers.contains(&0) || integers.iter().sum::<i64>() != 0 {
        return false;
    }
    let sides: Vec<Side> = integers.iter().map(|&x| if x > 0 { Side::Plus } else { Side::Minus }).collect();
    let weights: Vec<i64> = integers.iter().map(|x| x.abs()).collect();
    for_each_tree(n, |edges| {
        if edges.iter().any(|&(a, b)| sides[a] == sides[b]) {
            return false;
        }
        let g = ConnectionGraph { sides: sides.clone(), weights: weights.clone(), edges, labels: (0..n).collect() };
        g.is_connection_graph_with(mode)
    })
}

/// Whether signed integer weights admit a connection graph: a primitive
/// rescaling must have positive sum at least `len - 1`.
pub fn connection_feasible(integers: &[i64]) -> bool {
    let n = integers.len();
    if n < 2 || integers.contains(&0) || integers.iter().sum::<i64>() != 0 {
        return false;
    }
    let g = integers.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let total: i64 = integers.iter().filter(|&&x| x > 0).sum();
    total / g >= n as i64 - 1
}

/// One leaf removal: `leaf` is glued along a segment of `length` onto `onto`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub leaf: usize,
    pub onto: usize,
    pub length: i64,
}

/// Builds a connection graph by repeatedly removing a lightest-possible leaf
/// whose removal leaves a feasible weight vector. Returns the graph with
/// edges listed in removal order.
pub fn construct_connection_graph(integers: &[i64]) -> Option<ConnectionGraph> {
    if !connection_feasible(integers) {
        return None;
    }
    let n = integers.len();
    let sides: Vec<Side> = integers.iter().map(|&x| if x > 0 { Side::Plus } else { Side::Minus }).collect();
    let mut weights: Vec<i64> = integers.iter().map(|x| x.abs()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(n - 1);
    while alive.len() > 2 {
        let mut cands: Vec<(i64, i64, usize, usize)> = Vec::new();
        for &l in &alive {
            for &m in &alive {
                if sides[l] != sides[m] && weights[l] < weights[m] {
                    cands.push((weights[l], -weights[m], l, m));
                }
            }
        }
        cands.sort();
        let (_, _, l, m) = cands.into_iter().find(|&(_, _, l, m)| {
            let rest: Vec<i64> = alive
                .iter()
                .filter(|&&v| v != l)
                .map(|&v| {
                    let w = if v == m { weights[v] - weights[l] } else { weights[v] };
                    sides[v].sign() * w
                })
                .collect();
            connection_feasible(&rest)
        })?;
        weights[m] -= weights[l];
        edges.push((l, m));
        alive.retain(|&v| v != l);
    }
    edges.push((alive[0], alive[1]));
    let weights = integers.iter().map(|x| x.abs()).collect();
    ConnectionGraph::new(sides, weights, edges, (0..n).collect()).ok()
}

/// A complete removal sequence of a connection graph, removing at each step
/// the leaf of smallest index. The last entry glues the final two vertices.
pub fn removal_sequence(g: &ConnectionGraph) -> Vec<Removal> {
    let n = g.vertex_count();
    let adj = adjacency(n, &g.edges);
    let mut alive = vec![true; n];
    let mut weights = g.weights.clone();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for _ in 0..n.saturating_sub(1) {
        let live = |v: usize, alive: &[bool]| adj[v].iter().copied().filter(|&y| alive[y]).collect::<Vec<_>>();
        let Some(leaf) = (0..n).find(|&v| alive[v] && live(v, &alive).len() == 1) else { break };
        let onto = live(leaf, &alive)[0];
        out.push(Removal { leaf, onto, length: weights[leaf] });
        weights[onto] -= weights[leaf];
        alive[leaf] = false;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> ConnectionGraph {
        ConnectionGraph::new(
            vec![Side::Plus, Side::Minus, Side::Minus, Side::Minus],
            vec![3, 1, 1, 1],
            vec![(0, 1), (0, 2), (0, 3)],
            vec![0, 1, 2, 3],
        )
        .unwrap()
    }

    #[test]
    fn leaf_removal_examples() {
        let g = star().leaf_removal(1).unwrap();
        assert_eq!(g.weights, vec![2, 1, 1]);
        assert_eq!(g.edges, vec![(0, 1), (0, 2)]);
        assert_eq!(star().leaf_removal(0), Err(GraphError::NotLeaf(0)));

        let path = ConnectionGraph::new(
            vec![Side::Plus, Side::Minus, Side::Plus, Side::Minus],
            vec![1, 1, 1, 1],
            vec![(0, 1), (1, 2), (2, 3)],
            vec![0, 1, 2, 3],
        )
        .unwrap();
        assert_eq!(path.leaf_removal(0).unwrap().weights, vec![0, 1, 1]);

        let pair = ConnectionGraph::new(vec![Side::Plus, Side::Minus], vec![2, 2], vec![(0, 1)], vec![0, 1]).unwrap();
        assert_eq!(pair.leaf_removal(1).unwrap().weights, vec![0]);
    }

    #[test]
    fn structure_errors() {
        let e = ConnectionGraph::new(vec![Side::Plus, Side::Plus], vec![1, 1], vec![(0, 1)], vec![0, 1]);
        assert_eq!(e, Err(GraphError::NotBipartite(0, 1)));
        let e = ConnectionGraph::new(vec![Side::Plus, Side::Minus], vec![2, 1], vec![(0, 1)], vec![0, 1]);
        assert!(matches!(e, Err(GraphError::Unbalanced { .. })));
    }

    #[test]
    fn recognition_examples() {
        assert!(star().is_connection_graph());
        assert!(star().is_connection_graph_with(Quantifier::Existential));
        // every spanning tree of K_{2,2} with unit weights fails
        let ray = PrimitiveRay::from_integers(vec![1, 1, -1, -1]);
        let mut trees = 0;
        for_each_tree(4, |edges| {
            if let Ok(g) = ConnectionGraph::from_ray_edges(&ray, edges) {
                trees += 1;
                assert!(!g.is_connection_graph());
            }
            false
        });
        assert_eq!(trees, 4);
        // 7-pole example: center 3 joined to the three 2's, each 2 to a 1
        let g = ConnectionGraph::new(
            vec![Side::Plus, Side::Plus, Side::Plus, Side::Plus, Side::Minus, Side::Minus, Side::Minus],
            vec![3, 1, 1, 1, 2, 2, 2],
            vec![(0, 4), (0, 5), (0, 6), (4, 1), (5, 2), (6, 3)],
            (0..7).collect(),
        )
        .unwrap();
        assert!(g.is_connection_graph());
        assert_eq!(g.edge_lengths(), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn search_examples() {
        let g = find_connection_graph(&PrimitiveRay::from_integers(vec![3, 1, 1, 1, -2, -2, -2])).unwrap();
        assert!(g.is_connection_graph());
        assert!(find_connection_graph(&PrimitiveRay::from_integers(vec![1, 1, -1, -1])).is_none());
        let g = find_connection_graph(&PrimitiveRay::from_integers(vec![2, 1, -3])).unwrap();
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn prufer_counts() {
        for n in 2..=6 {
            let mut count = 0usize;
            for_each_tree(n, |edges| {
                assert_eq!(edges.len(), n - 1);
                assert!(connected(n, &edges));
                count += 1;
                false
            });
            assert_eq!(count, n.pow(n as u32 - 2));
        }
    }

    #[test]
    fn constructive_graphs() {
        let ints = [3, 1, 1, 1, -2, -2, -2];
        let g = construct_connection_graph(&ints).unwrap();
        assert!(g.is_connection_graph());
        assert!(construct_connection_graph(&[1, 1, -1, -1]).is_none());
        assert!(construct_connection_graph(&[2, 2, -2, -2]).is_none());
        assert!(connection_feasible(&[3, -3]));
        let seq = removal_sequence(&g);
        assert_eq!(seq.len(), 6);
        assert!(seq.iter().all(|r| r.length > 0));
        assert_eq!(seq.iter().map(|r| r.length).sum::<i64>(), 6);
    }
}
