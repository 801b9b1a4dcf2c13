//! Configurations of components joined at simple-pole nodes whose residues
//! are prescribed cylinder circumferences.

use serde::{Deserialize, Serialize};

use super::{SearchBudget, SearchOutcome};
use crate::decide::{decide_realizable, validate_cylinder_request, CircumferenceTuple, CylinderError};
use crate::gauss::GaussianRational;
use crate::residues::ResidueTuple;
use crate::stratum::StratumSignature;

/// Node `k` joins components `a` and `b` (possibly equal). The half on `a`
/// carries `sign·λ_k`, the half on `b` carries `-sign·λ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderNode {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderComponent {
    pub genus: u32,
    /// Indices into the stratum's zero list.
    pub zero_indices: Vec<usize>,
    pub zeros: Vec<u32>,
    /// Residues at the node halves carried by this component.
    pub residues: Vec<GaussianRational>,
}

impl CylinderComponent {
    pub fn stratum(&self) -> StratumSignature {
        StratumSignature::new(self.genus, self.zeros.clone(), vec![], self.residues.len() as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderConfig {
    pub components: Vec<CylinderComponent>,
    pub nodes: Vec<CylinderNode>,
}

impl CylinderConfig {
    /// Arithmetic genus of the nodal curve.
    pub fn genus(&self) -> u32 {
        let g: u32 = self.components.iter().map(|c| c.genus).sum();
        g + self.nodes.len() as u32 + 1 - self.components.len() as u32
    }
}

/// Exhaustive search over zero partitions, node endpoints and node
/// orientations. Each component must carry at least one zero and realize its
/// node residues by the closed-form decision.
pub fn find_cylinder_config(
    sig: &StratumSignature,
    lambda: &CircumferenceTuple,
    budget: SearchBudget,
) -> Result<SearchOutcome<CylinderConfig>, CylinderError> {
    validate_cylinder_request(sig, lambda)?;
    let n = sig.n();
    let t = lambda.len();
    let mut examined = 0u64;
    let mut outcome = SearchOutcome::NotFound;
    for_each_set_partition(n, &mut |blocks| {
        let k = blocks.iter().copied().max().map_or(0, |m| m + 1);
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
        let mut choice = vec![0usize; t];
        loop {
            let ends: Vec<(usize, usize)> = choice.iter().map(|&c| pairs[c]).collect();
            if let Some(found) = try_endpoints(sig, lambda, blocks, k, &ends, &mut examined, budget) {
                outcome = found;
                return true;
            }
            if !advance(&mut choice, pairs.len()) {
                return false;
            }
        }
    });
    Ok(outcome)
}

fn try_endpoints(
    sig: &StratumSignature,
    lambda: &CircumferenceTuple,
    blocks: &[usize],
    k: usize,
    ends: &[(usize, usize)],
    examined: &mut u64,
    budget: SearchBudget,
) -> Option<SearchOutcome<CylinderConfig>> {
    if !connected(k, ends) {
        return None;
    }
    let mut halves = vec![0usize; k];
    for &(a, b) in ends {
        halves[a] += 1;
        halves[b] += 1;
    }
    let mut genera = Vec::with_capacity(k);
    for (c, &h) in halves.iter().enumerate() {
        let zero_sum: i64 = (0..sig.n()).filter(|&z| blocks[z] == c).map(|z| sig.zeros[z] as i64).sum();
        let twice = zero_sum - h as i64 + 2;
        if twice < 0 || twice % 2 != 0 {
            return None;
        }
        genera.push((twice / 2) as u32);
    }
    let total: i64 = genera.iter().map(|&g| g as i64).sum::<i64>() + ends.len() as i64 - k as i64 + 1;
    if total != sig.genus as i64 {
        return None;
    }
    let flippable: Vec<usize> = (0..ends.len()).filter(|&i| ends[i].0 != ends[i].1).collect();
    for mask in 0u64..(1u64 << flippable.len()) {
        *examined += 1;
        if *examined > budget.max_configurations {
            return Some(SearchOutcome::BudgetExceeded);
        }
        let nodes: Vec<CylinderNode> = ends
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let flip = flippable.iter().position(|&f| f == i).is_some_and(|bit| mask >> bit & 1 == 1);
                CylinderNode { a, b, sign: if flip { -1 } else { 1 } }
            })
            .collect();
        let mut components: Vec<CylinderComponent> = (0..k)
            .map(|c| CylinderComponent {
                genus: genera[c],
                zero_indices: (0..sig.n()).filter(|&z| blocks[z] == c).collect(),
                zeros: (0..sig.n()).filter(|&z| blocks[z] == c).map(|z| sig.zeros[z]).collect(),
                residues: Vec::new(),
            })
            .collect();
        for (i, node) in nodes.iter().enumerate() {
            let v = lambda.entries[i].scale_int(node.sign as i64);
            components[node.b].residues.push(-v.clone());
            components[node.a].residues.push(v);
        }
        let ok = components.iter().all(|c| {
            decide_realizable(&c.stratum(), &ResidueTuple::new(c.residues.clone())).is_ok_and(|v| v.realizable)
        });
        if ok {
            return Some(SearchOutcome::Found(CylinderConfig { components, nodes }));
        }
    }
    None
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn connected(k: usize, ends: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..k).all(|x| find(&mut parent, x) == root)
}

/// Restricted growth strings of length `n`; stops when `visit` returns `true`.
fn for_each_set_partition(n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(cur: &mut Vec<usize>, n: usize, max: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == n {
            return visit(cur);
        }
        let hi = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=hi {
            cur.push(b);
            let stop = rec(cur, n, max.max(b), visit);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(n), n, 0, visit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_partition_counts() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15)] {
            let mut count = 0;
            for_each_set_partition(n, &mut |_| {
                count += 1;
                false
            });
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn four_unit_cylinders_in_4_1_1() {
        let sig = StratumSignature::holomorphic(4, vec![4, 1, 1]);
        let out = find_cylinder_config(&sig, &CircumferenceTuple::from_ints(&[1, 1, 1, 1]), SearchBudget::default()).unwrap();
        let SearchOutcome::Found(cfg) = out else { panic!("expected a configuration") };
        assert_eq!(cfg.genus(), 4);
        for c in &cfg.components {
            let sum: GaussianRational = c.residues.iter().sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn minimal_stratum_matches_closed_form() {
        let sig = StratumSignature::holomorphic(4, vec![6]);
        let out = find_cylinder_config(&sig, &CircumferenceTuple::from_ints(&[1, 1, 1, 1]), SearchBudget::default()).unwrap();
        assert_eq!(out, SearchOutcome::NotFound);
        let out = find_cylinder_config(&sig, &CircumferenceTuple::from_ints(&[1, 1, 1, 4]), SearchBudget::default()).unwrap();
        assert!(out.is_found());
    }
}
