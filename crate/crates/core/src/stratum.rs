//! Strata signatures `ΩM_g(a_1,…,a_n; -b_1,…,-b_p; (-1^s))`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The partition data of a stratum: genus, zero orders, higher pole orders
/// (each at least 2) and the number of simple poles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumSignature {
    pub genus: u32,
    pub zeros: Vec<u32>,
    #[serde(default)]
    pub poles: Vec<u32>,
    #[serde(default)]
    pub simple_poles: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StratumViolation {
    #[error("zero orders must be positive")]
    NonPositiveZero,
    #[error("higher pole orders must be at least 2, found {0}")]
    PoleOrderTooSmall(u32),
    #[error("degree identity fails: sum of orders is {found}, expected 2g-2 = {expected}")]
    Degree { found: i64, expected: i64 },
    #[error("empty stratum (a;-1): a single simple pole cannot carry a residue")]
    SingleSimplePole,
}

impl StratumSignature {
    pub fn new(genus: u32, zeros: Vec<u32>, poles: Vec<u32>, simple_poles: u32) -> Self {
        Self { genus, zeros, poles, simple_poles }
    }

    /// Holomorphic stratum `ΩM_g(zeros)`.
    pub fn holomorphic(genus: u32, zeros: Vec<u32>) -> Self {
        Self::new(genus, zeros, Vec::new(), 0)
    }

    pub fn n(&self) -> usize {
        self.zeros.len()
    }

    pub fn p(&self) -> usize {
        self.poles.len()
    }

    pub fn s(&self) -> usize {
        self.simple_poles as usize
    }

    pub fn pole_count(&self) -> usize {
        self.p() + self.s()
    }

    /// Order `b` of the pole with the given index (1 for simple poles).
    pub fn pole_order(&self, index: usize) -> u32 {
        self.poles.get(index).copied().unwrap_or(1)
    }

    pub fn max_zero(&self) -> u32 {
        self.zeros.iter().copied().max().unwrap_or(0)
    }

    pub fn zero_sum(&self) -> u64 {
        self.zeros.iter().map(|&a| a as u64).sum()
    }

    pub fn higher_pole_sum(&self) -> u64 {
        self.poles.iter().map(|&b| b as u64).sum()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.poles.is_empty() && self.simple_poles == 0
    }

    /// Checks the degree identity and the excluded `(a;-1)` pattern.
    ///
    /// Zero-free signatures are accepted whenever the degree identity holds:
    /// besides the flat torus this admits `ΩM_0(;-2)` and `ΩM_0(;-1,-1)`.
    pub fn validate(&self) -> Result<(), StratumViolation> {
        if self.zeros.contains(&0) {
            return Err(StratumViolation::NonPositiveZero);
        }
        if let Some(&b) = self.poles.iter().find(|&&b| b < 2) {
            return Err(StratumViolation::PoleOrderTooSmall(b));
        }
        if self.poles.is_empty() && self.simple_poles == 1 {
            return Err(StratumViolation::SingleSimplePole);
        }
        let found = self.zero_sum() as i64 - self.higher_pole_sum() as i64 - self.simple_poles as i64;
        let expected = 2 * self.genus as i64 - 2;
        if found != expected {
            return Err(StratumViolation::Degree { found, expected });
        }
        Ok(())
    }
}

pub fn validate_stratum(sig: &StratumSignature) -> Result<(), StratumViolation> {
    sig.validate()
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32], neg: bool| {
            v.iter()
                .map(|x| if neg { format!("-{x}") } else { x.to_string() })
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "ΩM_{}({}", self.genus, join(&self.zeros, false))?;
        if !self.poles.is_empty() || self.simple_poles > 0 {
            write!(f, ";{}", join(&self.poles, true))?;
        }
        if self.simple_poles > 0 {
            write!(f, ";(-1^{})", self.simple_poles)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_examples() {
        assert_eq!(StratumSignature::new(0, vec![4, 1], vec![3, 4], 0).validate(), Ok(()));
        assert_eq!(StratumSignature::holomorphic(1, vec![]).validate(), Ok(()));
        assert_eq!(StratumSignature::new(0, vec![], vec![], 2).validate(), Ok(()));
        assert_eq!(StratumSignature::new(0, vec![], vec![2], 0).validate(), Ok(()));
    }

    #[test]
    fn rejects_single_simple_pole() {
        let sig = StratumSignature::new(0, vec![3], vec![], 1);
        assert_eq!(sig.validate(), Err(StratumViolation::SingleSimplePole));
        let sig = StratumSignature::new(1, vec![1], vec![], 1);
        assert_eq!(sig.validate(), Err(StratumViolation::SingleSimplePole));
    }

    #[test]
    fn degree_report() {
        let err = StratumSignature::new(0, vec![4], vec![2, 2, 3], 1).validate().unwrap_err();
        assert_eq!(err, StratumViolation::Degree { found: -4, expected: -2 });
        assert!(err.to_string().contains("degree identity"));
    }

    #[test]
    fn bad_orders() {
        assert_eq!(
            StratumSignature::new(0, vec![0, 1], vec![3], 0).validate(),
            Err(StratumViolation::NonPositiveZero)
        );
        assert_eq!(
            StratumSignature::new(0, vec![1], vec![1], 2).validate(),
            Err(StratumViolation::PoleOrderTooSmall(1))
        );
    }

    #[test]
    fn display() {
        let sig = StratumSignature::new(0, vec![2], vec![], 4);
        assert_eq!(sig.to_string(), "ΩM_0(2;;(-1^4))");
    }
}
