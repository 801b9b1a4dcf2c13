//! Stable configurations: trees of genus-zero components, one zero each,
//! joined at simple-pole nodes with opposite residues.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::connection::{construct_connection_graph, for_each_tree, ConnectionGraph};
use super::{SearchBudget, SearchOutcome};
use crate::gauss::GaussianRational;
use crate::residues::{commensurable_integers, validate_residues, ResidueTuple, ResidueViolation};
use crate::stratum::{StratumSignature, StratumViolation};

/// One half of a node, seen from the component that carries it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeHalf {
    pub edge: usize,
    pub neighbor: usize,
    pub residue: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableComponent {
    /// Index of the zero in the stratum's zero list.
    pub zero_index: usize,
    pub zero: u32,
    /// Original poles carried by the component, as indices into the residue tuple.
    pub poles: Vec<usize>,
    pub nodes: Vec<NodeHalf>,
    /// Integer weights of `poles` followed by `nodes`, in units of the direction.
    pub weights: Vec<i64>,
    /// Connection graph on `weights`, edges in removal order.
    pub graph: ConnectionGraph,
}

impl StableComponent {
    pub fn residues(&self, r: &ResidueTuple) -> Vec<GaussianRational> {
        self.poles
            .iter()
            .map(|&k| r.entries[k].clone())
            .chain(self.nodes.iter().map(|h| h.residue.clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableConfigTree {
    pub direction: GaussianRational,
    pub components: Vec<StableComponent>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StableError {
    #[error(transparent)]
    Stratum(#[from] StratumViolation),
    #[error(transparent)]
    Residues(#[from] ResidueViolation),
    #[error("stable configurations are searched for genus 0 with simple poles only")]
    OutOfScope,
    #[error("residues are not collinear; the closed form already decides this case")]
    NotCollinear,
    #[error("integer weights overflow")]
    Overflow,
}

/// Searches trees of components (component `k` carries zero `k`), pole
/// assignments and node residues realizing `r`.
///
/// Node residues are not free: on a tree the residue at each node half is
/// minus the sum of the original residues on its side, so only the tree and
/// the pole assignment are enumerated.
pub fn find_stable_config(
    sig: &StratumSignature,
    r: &ResidueTuple,
    budget: SearchBudget,
) -> Result<SearchOutcome<StableConfigTree>, StableError> {
    sig.validate()?;
    validate_residues(sig, r)?;
    if sig.genus != 0 || sig.p() != 0 || sig.n() == 0 {
        return Err(StableError::OutOfScope);
    }
    let (direction, ints) = commensurable_integers(&r.entries)
        .map_err(|_| StableError::OutOfScope)?
        .ok_or(StableError::NotCollinear)?;
    let ints: Vec<i64> = ints.iter().map(|k| i64::try_from(k).map_err(|_| StableError::Overflow)).collect::<Result<_, _>>()?;
    let n = sig.n();
    let s = ints.len();

    let mut outcome = SearchOutcome::NotFound;
    let mut examined = 0u64;
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by_key(|&k| (ints[k], k));

    let mut try_tree = |edges: Vec<(usize, usize)>| -> bool {
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut cap = Vec::with_capacity(n);
        for (&z, &d) in sig.zeros.iter().zip(&deg) {
            let c = z as i64 + 2 - d as i64;
            if c < 0 {
                return false;
            }
            cap.push(c as usize);
        }
        let mut assign = vec![usize::MAX; s];
        let mut stop = false;
        assign_poles(&order, &ints, 0, &mut cap, &mut assign, &mut |assign| {
            examined += 1;
            if examined > budget.max_configurations {
                outcome = SearchOutcome::BudgetExceeded;
                stop = true;
                return true;
            }
            match check(sig, &ints, &direction, &edges, assign) {
                Check::Found(tree) => {
                    outcome = SearchOutcome::Found(tree);
                    stop = true;
                    true
                }
                Check::No => false,
            }
        });
        stop
    };
    if n == 1 {
        try_tree(Vec::new());
    } else {
        for_each_tree(n, try_tree);
    }
    Ok(outcome)
}

/// Assigns poles in `order` to components with remaining capacity; equal
/// residues go to nondecreasing components so each multiset split is seen once.
fn assign_poles(
    order: &[usize],
    ints: &[i64],
    at: usize,
    cap: &mut [usize],
    assign: &mut [usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if at == order.len() {
        return cap.iter().all(|&c| c == 0) && visit(assign);
    }
    let pole = order[at];
    let start = if at > 0 && ints[order[at - 1]] == ints[pole] { assign[order[at - 1]] } else { 0 };
    for k in start..cap.len() {
        if cap[k] == 0 {
            continue;
        }
        cap[k] -= 1;
        assign[pole] = k;
        let stop = assign_poles(order, ints, at + 1, cap, assign, visit);
        cap[k] += 1;
        if stop {
            return true;
        }
    }
    assign[pole] = usize::MAX;
    false
}

enum Check {
    Found(StableConfigTree),
    No,
}

fn check(
    sig: &StratumSignature,
    ints: &[i64],
    direction: &GaussianRational,
    edges: &[(usize, usize)],
    assign: &[usize],
) -> Check {
    let n = sig.n();
    let mut halves: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        let side = side_of(n, edges, e, a);
        let on_a: i64 = (0..ints.len()).filter(|&k| side[assign[k]]).map(|k| ints[k]).sum();
        if on_a == 0 {
            return Check::No;
        }
        halves[a].push((e, b, -on_a));
        halves[b].push((e, a, on_a));
    }
    let mut components = Vec::with_capacity(n);
    for (k, half) in halves.iter().enumerate() {
        let poles: Vec<usize> = (0..ints.len()).filter(|&j| assign[j] == k).collect();
        let weights: Vec<i64> = poles.iter().map(|&j| ints[j]).chain(half.iter().map(|h| h.2)).collect();
        let Some(graph) = construct_connection_graph(&weights) else { return Check::No };
        let nodes = half
            .iter()
            .map(|&(edge, neighbor, w)| NodeHalf { edge, neighbor, residue: direction.scale_int(w) })
            .collect();
        components.push(StableComponent {
            zero_index: k,
            zero: sig.zeros[k],
            poles,
            nodes,
            weights,
            graph,
        });
    }
    Check::Found(StableConfigTree { direction: direction.clone(), components, edges: edges.to_vec() })
}

/// Vertices on the side of `root` after deleting edge `e`.
fn side_of(n: usize, edges: &[(usize, usize)], e: usize, root: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for (i, &(a, b)) in edges.iter().enumerate() {
            if i == e {
                continue;
            }
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}
