//! Residue tuples and the integer normal form of collinear tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::GaussianRational;
use crate::stratum::StratumSignature;

/// Residues `(r_1, …, r_{p+s})`, higher poles first, then simple poles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidueTuple {
    pub entries: Vec<GaussianRational>,
}

impl ResidueTuple {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![GaussianRational::zero(); len])
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

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn sum(&self) -> GaussianRational {
        self.entries.iter().sum()
    }

    pub fn scaled(&self, c: &GaussianRational) -> Self {
        Self::new(self.entries.iter().map(|r| r * c).collect())
    }
}

impl From<Vec<GaussianRational>> for ResidueTuple {
    fn from(entries: Vec<GaussianRational>) -> Self {
        Self::new(entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ResidueViolation {
    #[error("residue tuple has {found} entries, the stratum has {expected} poles")]
    LengthMismatch { found: usize, expected: usize },
    #[error("residues sum to {0}, not zero")]
    NonZeroSum(Box<GaussianRational>),
    #[error("zero at simple pole {0}")]
    ZeroAtSimplePole(usize),
}

pub fn validate_residues(sig: &StratumSignature, r: &ResidueTuple) -> Result<(), ResidueViolation> {
    let expected = sig.pole_count();
    if r.len() != expected {
        return Err(ResidueViolation::LengthMismatch { found: r.len(), expected });
    }
    if let Some(k) = (sig.p()..expected).find(|&k| r.entries[k].is_zero()) {
        return Err(ResidueViolation::ZeroAtSimplePole(k));
    }
    let sum = r.sum();
    if !sum.is_zero() {
        return Err(ResidueViolation::NonZeroSum(Box::new(sum)));
    }
    Ok(())
}

/// Primitive integer vector `integers` with `entries = direction · integers`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimitiveRay {
    pub direction: GaussianRational,
    pub integers: Vec<i64>,
    pub positive_sum: u64,
}

impl PrimitiveRay {
    /// Builds a ray along the real axis. Entries must be nonzero with gcd 1.
    pub fn from_integers(integers: Vec<i64>) -> Self {
        let positive_sum = integers.iter().filter(|&&x| x > 0).map(|&x| x as u64).sum();
        Self { direction: GaussianRational::one(), integers, positive_sum }
    }

    pub fn residues(&self) -> ResidueTuple {
        ResidueTuple::new(self.integers.iter().map(|&k| self.direction.scale_int(k)).collect())
    }

    pub fn positives(&self) -> Vec<i64> {
        self.integers.iter().copied().filter(|&x| x > 0).collect()
    }

    pub fn negatives(&self) -> Vec<i64> {
        self.integers.iter().copied().filter(|&x| x < 0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum CollinearClass {
    Ray(PrimitiveRay),
    NonCollinear,
    /// Collinear with an irrational ratio. Never produced for Gaussian
    /// rationals; kept so callers can match the full classification.
    NonCommensurableCollinear,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("entry {0} is zero; the ray is undefined")]
    ZeroEntry(usize),
    #[error("empty tuple")]
    Empty,
    #[error("integer normal form does not fit in 64 bits")]
    Overflow,
}

/// Integer multiples `k_i` and a direction `d` with `entries[i] = d·k_i`,
/// `gcd(k) = 1` and `k_0 > 0`. `None` when the entries are not collinear.
pub fn commensurable_integers(
    entries: &[GaussianRational],
) -> Result<Option<(GaussianRational, Vec<BigInt>)>, NormalFormError> {
    let first = entries.first().ok_or(NormalFormError::Empty)?;
    if let Some(k) = entries.iter().position(GaussianRational::is_zero) {
        return Err(NormalFormError::ZeroEntry(k));
    }
    let mut ratios = Vec::with_capacity(entries.len());
    for e in entries {
        match e.real_ratio(first) {
            Some(q) => ratios.push(q),
            None => return Ok(None),
        }
    }
    let lcm = ratios.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<BigInt> = ratios.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    let ints: Vec<BigInt> = scaled.into_iter().map(|k| k / &gcd).collect();
    let lead = BigRational::from_integer(ints[0].clone());
    let direction = first.scale(&lead.recip());
    Ok(Some((direction, ints)))
}

/// Classifies a tuple of nonzero residues by collinearity.
pub fn collinear_normal_form(entries: &[GaussianRational]) -> Result<CollinearClass, NormalFormError> {
    let Some((direction, ints)) = commensurable_integers(entries)? else {
        return Ok(CollinearClass::NonCollinear);
    };
    let integers = ints
        .iter()
        .map(|k| k.to_i64().ok_or(NormalFormError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let positive_sum = ints
        .iter()
        .filter(|k| k.is_positive())
        .fold(BigInt::zero(), |acc, k| acc + k)
        .to_u64()
        .ok_or(NormalFormError::Overflow)?;
    Ok(CollinearClass::Ray(PrimitiveRay { direction, integers, positive_sum }))
}
