//! Closed-form realizability verdicts.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::GaussianRational;
use crate::residues::{
    collinear_normal_form, commensurable_integers, validate_residues, CollinearClass, NormalFormError, PrimitiveRay,
    ResidueTuple, ResidueViolation,
};
use crate::stratum::{StratumSignature, StratumViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    GenusPositiveSurjective,
    NonCollinear,
    MixedPolesSurjective,
    ZeroVectorAllowed,
    ZeroVectorExcludedByLargeZero,
    ExcludedPrimitiveRay,
    CollinearSumExceedsMaxZero,
    NonCommensurableCollinear,
    FewerCylindersThanGenus,
    StableConfigurationFound,
    ExcludedByExhaustiveSearch,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::GenusPositiveSurjective => "genus-positive-surjective",
            Reason::NonCollinear => "non-collinear",
            Reason::MixedPolesSurjective => "mixed-poles-surjective",
            Reason::ZeroVectorAllowed => "zero-vector-allowed",
            Reason::ZeroVectorExcludedByLargeZero => "zero-vector-excluded-by-large-zero",
            Reason::ExcludedPrimitiveRay => "excluded-primitive-ray",
            Reason::CollinearSumExceedsMaxZero => "collinear-sum-exceeds-max-zero",
            Reason::NonCommensurableCollinear => "non-commensurable-collinear",
            Reason::FewerCylindersThanGenus => "fewer-cylinders-than-genus",
            Reason::StableConfigurationFound => "stable-configuration-found",
            Reason::ExcludedByExhaustiveSearch => "excluded-by-exhaustive-search",
        }
    }

    /// Whether the tag asserts non-realizability.
    pub fn is_exclusion(self) -> bool {
        matches!(
            self,
            Reason::ZeroVectorExcludedByLargeZero | Reason::ExcludedPrimitiveRay | Reason::ExcludedByExhaustiveSearch
        )
    }
}

/// Builder family in the witness module that realizes a positive verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuilderHint {
    ResidualPolygon,
    CollinearHub,
    ZeroResidueChain,
    ConnectionGraph,
    StableGluing,
    GenusReduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub realizable: bool,
    pub reason: Reason,
    /// For positive genus the answer is the same in every connected component.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub every_component: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_hint: Option<BuilderHint>,
    /// The primitive ray behind a collinear verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<PrimitiveRay>,
}

impl Verdict {
    fn new(reason: Reason) -> Self {
        Self { realizable: !reason.is_exclusion(), reason, every_component: false, certificate_hint: None, ray: None }
    }

    fn hint(mut self, hint: BuilderHint) -> Self {
        self.certificate_hint = Some(hint);
        self
    }

    fn with_ray(mut self, ray: PrimitiveRay) -> Self {
        self.ray = Some(ray);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Stratum(#[from] StratumViolation),
    #[error(transparent)]
    Residues(#[from] ResidueViolation),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
}

pub fn decide_realizable(sig: &StratumSignature, r: &ResidueTuple) -> Result<Verdict, DecideError> {
    sig.validate()?;
    validate_residues(sig, r)?;
    if sig.genus >= 1 {
        let mut v = Verdict::new(Reason::GenusPositiveSurjective).hint(BuilderHint::GenusReduction);
        v.every_component = true;
        return Ok(v);
    }
    if sig.s() == 0 {
        if r.is_zero() {
            let bound = sig.higher_pole_sum() as i64 - (sig.p() as i64 + 1);
            let reason = if sig.max_zero() as i64 <= bound {
                Reason::ZeroVectorAllowed
            } else {
                Reason::ZeroVectorExcludedByLargeZero
            };
            return Ok(Verdict::new(reason).hint(BuilderHint::ZeroResidueChain));
        }
        return Ok(nonzero_with_higher_poles(r));
    }
    if sig.p() >= 1 {
        return Ok(nonzero_with_higher_poles(r));
    }
    Ok(match collinear_normal_form(&r.entries)? {
        CollinearClass::NonCollinear => Verdict::new(Reason::NonCollinear).hint(BuilderHint::ResidualPolygon),
        CollinearClass::NonCommensurableCollinear => Verdict::new(Reason::NonCommensurableCollinear),
        CollinearClass::Ray(ray) => {
            if ray.positive_sum <= sig.max_zero() as u64 {
                Verdict::new(Reason::ExcludedPrimitiveRay).with_ray(ray)
            } else {
                let hint = if sig.n() == 1 {
                    BuilderHint::ConnectionGraph
                } else {
                    BuilderHint::StableGluing
                };
                Verdict::new(Reason::CollinearSumExceedsMaxZero).hint(hint).with_ray(ray)
            }
        }
    })
}

fn nonzero_with_higher_poles(r: &ResidueTuple) -> Verdict {
    let nonzero: Vec<GaussianRational> = r.entries.iter().filter(|x| !x.is_zero()).cloned().collect();
    match commensurable_integers(&nonzero) {
        Ok(None) => Verdict::new(Reason::NonCollinear).hint(BuilderHint::ResidualPolygon),
        _ => Verdict::new(Reason::MixedPolesSurjective).hint(BuilderHint::CollinearHub),
    }
}

/// All primitive integer residue vectors of length `s` with positive sum at
/// most `max_zero`, up to permutation and global sign.
///
/// Each ray is listed with its positive entries first, then the negative ones,
/// both by decreasing absolute value, and the sign is chosen to make that
/// listing lexicographically largest. Output is sorted.
pub fn enumerate_excluded_rays(s: usize, max_zero: u32) -> Vec<PrimitiveRay> {
    let mut seen = BTreeSet::new();
    for s1 in 1..s {
        let s2 = s - s1;
        for total in 1..=max_zero as i64 {
            for pos in partitions(total, s1) {
                for neg in partitions(total, s2) {
                    let g = pos.iter().chain(&neg).fold(0i64, |acc, &x| acc.gcd(&x));
                    if g != 1 {
                        continue;
                    }
                    let a = listing(&pos, &neg);
                    let b = listing(&neg, &pos);
                    seen.insert(a.max(b));
                }
            }
        }
    }
    seen.into_iter().map(PrimitiveRay::from_integers).collect()
}

fn listing(pos: &[i64], neg: &[i64]) -> Vec<i64> {
    pos.iter().copied().chain(neg.iter().map(|&x| -x)).collect()
}

/// Primitive integer vectors of length `s` with nonzero entries in
/// `[-bound, bound]` and sum zero, one per class under permutation and global
/// sign, listed like [`enumerate_excluded_rays`]. Output is sorted.
pub fn primitive_tuples(s: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    for s1 in 1..s {
        for total in 1..=bound * s1.min(s - s1) as i64 {
            for pos in partitions(total, s1) {
                if pos[0] > bound {
                    continue;
                }
                for neg in partitions(total, s - s1) {
                    if neg[0] > bound {
                        continue;
                    }
                    let g = pos.iter().chain(&neg).fold(0i64, |acc, &x| acc.gcd(&x));
                    if g == 1 {
                        seen.insert(listing(&pos, &neg).max(listing(&neg, &pos)));
                    }
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Partitions of `total` into exactly `parts` positive parts, each nonincreasing.
pub fn partitions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(rest: i64, parts: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.min(rest - (parts as i64 - 1));
        for x in (1..=hi).rev() {
            if x * (parts as i64) < rest {
                break;
            }
            cur.push(x);
            rec(rest - x, parts - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts as i64 <= total {
        rec(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Circumferences `λ_1, …, λ_t` of disjoint cylinders, each up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CircumferenceTuple {
    pub entries: Vec<GaussianRational>,
}

impl CircumferenceTuple {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        Self { entries }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| GaussianRational::from_ints(v, 0)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum CylinderOutcome {
    Decided(Verdict),
    NeedsSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error(transparent)]
    Stratum(#[from] StratumViolation),
    #[error("cylinder circumferences require a holomorphic stratum")]
    NotHolomorphic,
    #[error("at least one circumference is required")]
    Empty,
    #[error("circumference {0} is zero")]
    ZeroEntry(usize),
    #[error("{t} cylinders exceeds Naveh bound g+n-1 = {bound}")]
    ExceedsNavehBound { t: usize, bound: usize },
}

pub fn validate_cylinder_request(sig: &StratumSignature, lambda: &CircumferenceTuple) -> Result<(), CylinderError> {
    sig.validate()?;
    if !sig.is_holomorphic() {
        return Err(CylinderError::NotHolomorphic);
    }
    if lambda.is_empty() {
        return Err(CylinderError::Empty);
    }
    if let Some(k) = lambda.entries.iter().position(GaussianRational::is_zero) {
        return Err(CylinderError::ZeroEntry(k));
    }
    let bound = (sig.genus as usize + sig.n()).saturating_sub(1);
    if lambda.len() > bound {
        return Err(CylinderError::ExceedsNavehBound { t: lambda.len(), bound });
    }
    Ok(())
}

pub fn decide_cylinder_tuple(sig: &StratumSignature, lambda: &CircumferenceTuple) -> Result<CylinderOutcome, CylinderError> {
    validate_cylinder_request(sig, lambda)?;
    let t = lambda.len();
    let g = sig.genus as usize;
    if t < g {
        return Ok(CylinderOutcome::Decided(Verdict::new(Reason::FewerCylindersThanGenus)));
    }
    if t == g && sig.n() == 1 {
        let verdict = match commensurable_integers(&lambda.entries).expect("entries checked nonzero") {
            None => Verdict::new(Reason::NonCollinear),
            Some((direction, ints)) => {
                let integers: Vec<i64> = ints.iter().map(|k| i64::try_from(k.abs()).unwrap_or(i64::MAX)).collect();
                let positive_sum = integers.iter().map(|&k| k as u64).sum::<u64>();
                let ray = PrimitiveRay { direction, integers, positive_sum };
                if positive_sum <= 2 * g as u64 - 2 {
                    Verdict::new(Reason::ExcludedPrimitiveRay).with_ray(ray)
                } else {
                    Verdict::new(Reason::CollinearSumExceedsMaxZero).with_ray(ray)
                }
            }
        };
        return Ok(CylinderOutcome::Decided(verdict));
    }
    Ok(CylinderOutcome::NeedsSearch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::g;

    fn s0(zeros: Vec<u32>, poles: Vec<u32>, s: u32) -> StratumSignature {
        StratumSignature::new(0, zeros, poles, s)
    }

    fn decide(sig: &StratumSignature, r: &[i64]) -> Verdict {
        decide_realizable(sig, &ResidueTuple::from_ints(r)).unwrap()
    }

    #[test]
    fn tuple_sweep_sizes() {
        let counts: Vec<usize> = (2..=7).map(|s| primitive_tuples(s, 5).len()).collect();
        assert_eq!(counts, vec![1, 5, 21, 41, 109, 195]);
        assert_eq!(primitive_tuples(4, 1), vec![vec![1, 1, -1, -1]]);
    }

    #[test]
    fn verdict_examples() {
        let v = decide(&s0(vec![2], vec![], 4), &[1, 1, -1, -1]);
        assert!(!v.realizable);
        assert_eq!(v.reason, Reason::ExcludedPrimitiveRay);

        let v = decide(&s0(vec![2], vec![2, 2], 0), &[0, 0]);
        assert!(!v.realizable);
        assert_eq!(v.reason, Reason::ZeroVectorExcludedByLargeZero);

        assert!(decide(&s0(vec![1, 1], vec![2, 2], 0), &[0, 0]).realizable);
        assert!(decide(&s0(vec![5], vec![], 7), &[3, 1, 1, 1, -2, -2, -2]).realizable);

        let v = decide(&StratumSignature::new(1, vec![6], vec![3, 3], 0), &[0, 0]);
        assert!(v.realizable && v.every_component);

        let r = ResidueTuple::new(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]);
        let v = decide_realizable(&s0(vec![2], vec![], 4), &r).unwrap();
        assert_eq!((v.realizable, v.reason), (true, Reason::NonCollinear));
    }

    #[test]
    fn errors_propagate() {
        let bad = s0(vec![3], vec![], 1);
        assert!(matches!(
            decide_realizable(&bad, &ResidueTuple::from_ints(&[1])),
            Err(DecideError::Stratum(StratumViolation::SingleSimplePole))
        ));
        assert!(matches!(
            decide_realizable(&s0(vec![2], vec![], 4), &ResidueTuple::from_ints(&[1, 1])),
            Err(DecideError::Residues(_))
        ));
    }

    #[test]
    fn excluded_ray_table() {
        let counts: Vec<usize> = (2..=6).map(|s| enumerate_excluded_rays(s, s as u32 - 2).len()).collect();
        assert_eq!(counts, vec![0, 0, 1, 1, 4]);
        let six: Vec<Vec<i64>> = enumerate_excluded_rays(6, 4).into_iter().map(|r| r.integers).collect();
        assert_eq!(
            six,
            vec![
                vec![1, 1, 1, -1, -1, -1],
                vec![2, 1, 1, -2, -1, -1],
                vec![2, 2, -1, -1, -1, -1],
                vec![3, 1, -1, -1, -1, -1],
            ]
        );
        assert_eq!(enumerate_excluded_rays(5, 3)[0].integers, vec![2, 1, -1, -1, -1]);
        assert!(enumerate_excluded_rays(3, 0).is_empty());
    }

    #[test]
    fn partitions_small() {
        assert_eq!(partitions(4, 2), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions(3, 3), vec![vec![1, 1, 1]]);
        assert!(partitions(2, 3).is_empty());
    }

    #[test]
    fn cylinder_closed_forms() {
        let min4 = StratumSignature::holomorphic(4, vec![6]);
        let out = decide_cylinder_tuple(&min4, &CircumferenceTuple::from_ints(&[1, 1, 1, 1])).unwrap();
        assert!(matches!(out, CylinderOutcome::Decided(ref v) if !v.realizable));
        let out = decide_cylinder_tuple(&min4, &CircumferenceTuple::from_ints(&[1, -1, 3, 2])).unwrap();
        assert!(matches!(out, CylinderOutcome::Decided(ref v) if v.realizable));
        let three = CircumferenceTuple::new(vec![g(1, 0), g(1, 1), g(2, 0)]);
        let out = decide_cylinder_tuple(&min4, &three).unwrap();
        assert!(matches!(out, CylinderOutcome::Decided(ref v) if v.realizable));
        let multi = StratumSignature::holomorphic(4, vec![4, 1, 1]);
        assert_eq!(
            decide_cylinder_tuple(&multi, &CircumferenceTuple::from_ints(&[1, 1, 1, 1])).unwrap(),
            CylinderOutcome::NeedsSearch
        );
        assert!(matches!(
            decide_cylinder_tuple(&min4, &CircumferenceTuple::from_ints(&[1, 1, 1, 1, 1])),
            Err(CylinderError::ExceedsNavehBound { t: 5, bound: 4 })
        ));
    }
}
