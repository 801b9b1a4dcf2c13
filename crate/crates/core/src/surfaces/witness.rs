//! Witness construction: picks a base surface for a realizable pair and
//! records the surgeries that reach the requested stratum.

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::builders::{
    collinear_hub, connection_graph_surface, holomorphic_polygon, residual_polygon, slanted_last, slanted_pair,
    split_types, torus_with_hole, type_chain, zero_residue_chain, zero_residue_triangle,
};
use super::certificate::{
    blow_up_zero, rotation_number, sew_handle, verify_certificate, CertificateError,
    ConstructionCertificate, GenusOneFamily, RotationClaim, StableGluing,
};
use super::surface::{verify_surface, FlatSurface};
use crate::decide::{decide_realizable, DecideError, Reason};
use crate::gauss::GaussianRational as G;
use crate::graphs::{construct_connection_graph, find_stable_config, SearchBudget, SearchOutcome};
use crate::residues::{commensurable_integers, ResidueTuple};
use crate::stratum::StratumSignature;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error("not realizable ({})", .0.as_str())]
    NotRealizable(Reason),
    #[error("search budget exhausted before a configuration was found")]
    BudgetExceeded,
    #[error("no base family realizes rotation number {0} here")]
    NoFamilyForRotation(u32),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

fn fail<T>(msg: impl Into<String>) -> Result<T, WitnessError> {
    Err(WitnessError::Construction(msg.into()))
}

/// Certificate for a pair the decision procedure accepts. The result is
/// checked with [`verify_certificate`] before it is returned.
pub fn build_witness(sig: &StratumSignature, r: &ResidueTuple) -> Result<ConstructionCertificate, WitnessError> {
    build_witness_with_budget(sig, r, SearchBudget::default())
}

pub fn build_witness_with_budget(
    sig: &StratumSignature,
    r: &ResidueTuple,
    budget: SearchBudget,
) -> Result<ConstructionCertificate, WitnessError> {
    let verdict = decide_realizable(sig, r)?;
    if !verdict.realizable {
        return Err(WitnessError::NotRealizable(verdict.reason));
    }
    let cert = if sig.is_holomorphic() {
        holomorphic(sig)?
    } else if sig.genus == 0 {
        genus_zero(sig, r, budget)?
    } else {
        positive_genus(sig, r, budget)?
    };
    let prof = verify_certificate(&cert)?;
    if !prof.matches(sig, r) {
        return fail(format!("certificate verifies to {prof:?}, not the requested stratum"));
    }
    Ok(cert)
}

/// Genus-one, one-zero, zero-residue certificate whose base family has the
/// requested rotation number.
pub fn build_witness_with_rotation(
    sig: &StratumSignature,
    r: &ResidueTuple,
    rotation: u32,
) -> Result<ConstructionCertificate, WitnessError> {
    decide_realizable(sig, r)?;
    if sig.genus != 1 || sig.n() != 1 || sig.s() != 0 || !r.is_zero() || sig.p() == 0 {
        return Err(WitnessError::NoFamilyForRotation(rotation));
    }
    let orders = sig.poles.clone();
    let gcd = orders.iter().fold(sig.zeros[0], |acc, &b| acc.gcd(&b));
    if rotation == 0 || gcd % rotation != 0 {
        return Err(WitnessError::NoFamilyForRotation(rotation));
    }
    let total: u32 = orders.iter().sum();
    let p = orders.len() as u32;
    let mut candidates: Vec<(FlatSurface, GenusOneFamily)> = Vec::new();
    for sum in p..=total - p {
        if let Some(taus) = split_types(&orders, sum) {
            candidates.push((type_chain(&orders, &taus), GenusOneFamily::TypeChain));
        }
    }
    if orders.iter().all(|&b| b == 2) {
        candidates.extend(slanted_last(orders.len()).map(|s| (s, GenusOneFamily::SlantedLast)));
        candidates.extend(slanted_pair(orders.len()).map(|s| (s, GenusOneFamily::SlantedPair)));
    }
    for (surface, family) in candidates {
        let prof = verify_surface(&surface).map_err(CertificateError::from)?;
        if rotation_number(&surface, &prof, family)? == rotation {
            let mut cert = ConstructionCertificate::from_surface(surface)?;
            cert.rotation = Some(RotationClaim { family, rotation });
            verify_certificate(&cert)?;
            return Ok(cert);
        }
    }
    Err(WitnessError::NoFamilyForRotation(rotation))
}

fn orders(sig: &StratumSignature) -> Vec<u32> {
    (0..sig.pole_count()).map(|k| sig.pole_order(k)).collect()
}

fn zero_id(cert: &ConstructionCertificate, order: u32) -> Result<usize, WitnessError> {
    match cert.claimed.zeros.iter().position(|&z| z == order) {
        Some(k) => Ok(k),
        None => fail(format!("no zero of order {order} to operate on")),
    }
}

/// Splits the zero of order `Σ zeros` into `zeros` when there are several.
fn blow_up_into(cert: ConstructionCertificate, zeros: &[u32]) -> Result<ConstructionCertificate, WitnessError> {
    if zeros.len() < 2 {
        return Ok(cert);
    }
    let total = zeros.iter().sum();
    let id = zero_id(&cert, total)?;
    let mut parts = zeros.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(blow_up_zero(&cert, id, parts)?)
}

fn holomorphic(sig: &StratumSignature) -> Result<ConstructionCertificate, WitnessError> {
    let Some(surface) = holomorphic_polygon(sig.genus) else { return fail("holomorphic genus zero") };
    blow_up_into(ConstructionCertificate::from_surface(surface)?, &sig.zeros)
}

fn genus_zero(sig: &StratumSignature, r: &ResidueTuple, budget: SearchBudget) -> Result<ConstructionCertificate, WitnessError> {
    let ord = orders(sig);
    if r.is_zero() {
        return zero_residues(&sig.poles, &sig.zeros);
    }
    let total = sig.zero_sum() as u32;
    if sig.p() == 0 {
        let Some((dir, ints)) = commensurable_integers(&r.entries).map_err(DecideError::from)? else {
            let Some(s) = residual_polygon(&ord, &r.entries) else { return fail("residual polygon") };
            return blow_up_into(ConstructionCertificate::from_surface(s)?, &sig.zeros);
        };
        let ints: Vec<i64> = match ints.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => return fail("integer weights overflow"),
        };
        if let Some(graph) = construct_connection_graph(&ints) {
            let labels: Vec<usize> = (0..ints.len()).collect();
            let s = connection_graph_surface(&graph, &dir, &labels);
            return blow_up_into(ConstructionCertificate::from_surface(s)?, &sig.zeros);
        }
        return stable(sig, r, budget);
    }
    let nonzero: Vec<G> = r.entries.iter().filter(|x| !x.is_zero()).cloned().collect();
    let collinear = commensurable_integers(&nonzero).map_err(DecideError::from)?.is_some();
    let base = if collinear { collinear_hub(&ord, &r.entries) } else { residual_polygon(&ord, &r.entries) };
    let Some(s) = base else { return fail("single-zero base") };
    let cert = ConstructionCertificate::from_surface(s)?;
    if cert.claimed.zeros != [total] && total > 0 {
        return fail("base does not have a single zero");
    }
    blow_up_into(cert, &sig.zeros)
}

fn stable(sig: &StratumSignature, r: &ResidueTuple, budget: SearchBudget) -> Result<ConstructionCertificate, WitnessError> {
    let tree = match find_stable_config(sig, r, budget) {
        Ok(SearchOutcome::Found(t)) => t,
        Ok(SearchOutcome::BudgetExceeded) => return Err(WitnessError::BudgetExceeded),
        Ok(SearchOutcome::NotFound) => return fail("no stable configuration found"),
        Err(e) => return fail(e.to_string()),
    };
    let components = tree
        .components
        .iter()
        .map(|c| {
            let labels: Vec<usize> = (0..c.weights.len()).collect();
            connection_graph_surface(&c.graph, &tree.direction, &labels)
        })
        .collect();
    let gluing = StableGluing { tree, residues: r.entries.clone(), components };
    Ok(ConstructionCertificate::from_stable(gluing)?)
}

/// Genus zero, zero residues at poles of orders `orders` (all at least 2).
fn zero_residues(orders: &[u32], zeros: &[u32]) -> Result<ConstructionCertificate, WitnessError> {
    let total_b: u32 = orders.iter().sum();
    let p = orders.len() as u32;
    let mut z = zeros.to_vec();
    z.sort_unstable();
    match z.len() {
        0 | 1 => {
            if p != 1 {
                return fail("one zero needs exactly one pole");
            }
            Ok(ConstructionCertificate::from_surface(zero_residue_chain(orders, &[orders[0] - 1]))?)
        }
        2 => {
            let Some(taus) = split_types(orders, z[0] + 1) else { return fail("no types for the two-zero chain") };
            Ok(ConstructionCertificate::from_surface(zero_residue_chain(orders, &taus))?)
        }
        3 => {
            let merged = z[0] + z[1];
            if merged + p < total_b {
                let base = zero_residues(orders, &[merged, z[2]])?;
                let id = zero_id(&base, merged)?;
                return Ok(blow_up_zero(&base, id, vec![z[1], z[0]])?);
            }
            let Some(s) = zero_residue_triangle(orders, [z[0], z[1], z[2]]) else {
                return fail("no side assignment for the triangle");
            };
            Ok(ConstructionCertificate::from_surface(s)?)
        }
        _ => {
            let merged = z[0] + z[1];
            let mut rest = vec![merged];
            rest.extend(&z[2..]);
            let base = zero_residues(orders, &rest)?;
            let id = zero_id(&base, merged)?;
            Ok(blow_up_zero(&base, id, vec![z[1], z[0]])?)
        }
    }
}

fn positive_genus(sig: &StratumSignature, r: &ResidueTuple, budget: SearchBudget) -> Result<ConstructionCertificate, WitnessError> {
    let g = sig.genus;
    let total = sig.zero_sum() as u32;
    let reduced = total as i64 - 2 * g as i64;
    let genus_zero_sig = StratumSignature::new(0, vec![reduced.max(0) as u32], sig.poles.clone(), sig.simple_poles);
    let via_genus_zero = reduced >= 1 && decide_realizable(&genus_zero_sig, r).is_ok_and(|v| v.realizable);
    let (mut cert, handles) = if via_genus_zero {
        (genus_zero(&genus_zero_sig, r, budget)?, g)
    } else {
        let s = if r.is_zero() {
            let taus = vec![1; sig.p()];
            type_chain(&sig.poles, &taus)
        } else if sig.p() == 0 {
            match torus_with_hole(&r.entries) {
                Some(s) => s,
                None => return fail("torus with hole"),
            }
        } else {
            return fail("no genus-one base for these residues");
        };
        (ConstructionCertificate::from_surface(s)?, g - 1)
    };
    let merged = total - 2 * handles;
    for k in 0..handles {
        let id = zero_id(&cert, merged + 2 * k)?;
        cert = sew_handle(&cert, id)?;
    }
    blow_up_into(cert, &sig.zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::g;

    fn check(sig: StratumSignature, r: ResidueTuple) -> ConstructionCertificate {
        let c = build_witness(&sig, &r).unwrap_or_else(|e| panic!("{sig}: {e}"));
        assert!(verify_certificate(&c).unwrap().matches(&sig, &r));
        c
    }

    #[test]
    fn genus_zero_cases() {
        check(StratumSignature::new(0, vec![4, 1], vec![3, 4], 0), ResidueTuple::zeros(2));
        check(StratumSignature::new(0, vec![3, 3, 3], vec![2, 2, 2, 2, 3], 0), ResidueTuple::zeros(5));
        check(StratumSignature::new(0, vec![1, 1, 1, 1, 1, 1], vec![2, 2, 2, 2], 0), ResidueTuple::zeros(4));
        check(StratumSignature::new(0, vec![5], vec![], 7), ResidueTuple::from_ints(&[3, 1, 1, 1, -2, -2, -2]));
        check(StratumSignature::new(0, vec![2, 2], vec![], 6), ResidueTuple::from_ints(&[2, 1, 1, -1, -1, -2]));
        check(StratumSignature::new(0, vec![1, 1], vec![], 4), ResidueTuple::new(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]));
        check(StratumSignature::new(0, vec![2, 1], vec![2], 3), ResidueTuple::from_ints(&[0, 1, 1, -2]));
        check(StratumSignature::new(0, vec![], vec![2], 0), ResidueTuple::zeros(1));
        check(StratumSignature::new(0, vec![], vec![], 2), ResidueTuple::from_ints(&[1, -1]));
    }

    #[test]
    fn not_realizable_is_reported() {
        let sig = StratumSignature::new(0, vec![4], vec![], 6);
        let err = build_witness(&sig, &ResidueTuple::from_ints(&[2, 1, 1, -2, -1, -1])).unwrap_err();
        assert_eq!(err, WitnessError::NotRealizable(Reason::ExcludedPrimitiveRay));
    }

    #[test]
    fn positive_genus_cases() {
        check(StratumSignature::new(1, vec![1, 1], vec![], 2), ResidueTuple::from_ints(&[1, -1]));
        check(StratumSignature::new(1, vec![4], vec![2, 2], 0), ResidueTuple::zeros(2));
        check(StratumSignature::new(2, vec![2, 2], vec![2], 0), ResidueTuple::zeros(1));
        check(StratumSignature::new(2, vec![2, 1, 1], vec![], 2), ResidueTuple::from_ints(&[1, -1]));
        check(StratumSignature::new(3, vec![1, 1, 1, 1], vec![], 0), ResidueTuple::zeros(0));
        check(StratumSignature::new(1, vec![], vec![], 0), ResidueTuple::zeros(0));
    }

    #[test]
    fn rotation_families() {
        for (zeros, poles, rot) in [(6, vec![3, 3], 1), (6, vec![3, 3], 3), (4, vec![2, 2], 1), (6, vec![2, 2, 2], 2)] {
            let sig = StratumSignature::new(1, vec![zeros], poles.clone(), 0);
            let c = build_witness_with_rotation(&sig, &ResidueTuple::zeros(poles.len()), rot).unwrap();
            assert_eq!(c.rotation.unwrap().rotation, rot);
        }
        let sig = StratumSignature::new(1, vec![4], vec![2, 2], 0);
        assert!(build_witness_with_rotation(&sig, &ResidueTuple::zeros(2), 3).is_err());
    }
}
