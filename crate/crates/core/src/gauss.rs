//! Exact Gaussian-rational numbers `re + im·i` with `re, im ∈ ℚ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Exact complex number with rational coordinates.
///
/// `BigRational` keeps both parts reduced with a positive denominator, so
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn from_fracs(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// `Im(conj(self)·other)`; positive when `other` lies counterclockwise of `self`.
    pub fn cross(&self, other: &Self) -> BigRational {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn dot(&self, other: &Self) -> BigRational {
        &self.re * &other.re + &self.im * &other.im
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm_sqr();
        let num = self * &other.conj();
        Some(Self::new(num.re / &n, num.im / n))
    }

    /// Real ratio `self / other` when the two are real multiples of each other.
    pub fn real_ratio(&self, other: &Self) -> Option<BigRational> {
        let q = self.checked_div(other)?;
        q.is_real().then_some(q.re)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Argument in `(-π, π]` as a float.
    pub fn arg_f64(&self) -> f64 {
        let (x, y) = self.to_f64_pair();
        y.atan2(x)
    }

    /// 0 for arguments in `(-π, 0]`, 1 for `(0, π]`.
    fn half(&self) -> u8 {
        if self.im.is_positive() || (self.im.is_zero() && self.re.is_negative()) {
            1
        } else {
            0
        }
    }

    /// Exact comparison of arguments taken in `(-π, π]`. Both values must be nonzero.
    pub fn arg_cmp(&self, other: &Self) -> Ordering {
        debug_assert!(!self.is_zero() && !other.is_zero());
        self.half().cmp(&other.half()).then_with(|| {
            // same half: larger argument lies counterclockwise
            match self.cross(other).cmp(&BigRational::zero()) {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => Ordering::Equal,
            }
        })
    }

    /// Canonical representative of the real line through `self`: real part
    /// positive, or zero real part with positive imaginary part.
    pub fn is_forward(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && self.im.is_positive())
    }
}

/// Counterclockwise angle in `[0, 2π)` needed to rotate direction `from` onto `to`.
pub fn ccw_angle(from: &GaussianRational, to: &GaussianRational) -> f64 {
    ccw_angle_f64(from.arg_f64(), to.arg_f64())
}

pub fn ccw_angle_f64(from: f64, to: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut d = (to - from) % tau;
    if d < 0.0 {
        d += tau;
    }
    if d >= tau {
        d -= tau;
    }
    d
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| GaussianRational::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| GaussianRational::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero Gaussian rational"));

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a GaussianRational>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

// JSON: {"re":[num,den],"im":[num,den]}; integers that overflow i64 are
// written as decimal strings. A bare integer is accepted on input.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(v: &BigInt) -> Self {
        v.to_i64().map_or_else(|| IntRepr::Big(v.to_string()), IntRepr::Small)
    }

    fn to_big<E: de::Error>(&self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse().map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }
}

fn frac_repr(r: &BigRational) -> [IntRepr; 2] {
    [IntRepr::from_big(r.numer()), IntRepr::from_big(r.denom())]
}

fn frac_from<E: de::Error>(parts: &[IntRepr; 2]) -> Result<BigRational, E> {
    let num = parts[0].to_big()?;
    let den = parts[1].to_big()?;
    if den.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize)]
struct WireOut<'a> {
    re: [IntRepr; 2],
    im: [IntRepr; 2],
    #[serde(skip)]
    _p: std::marker::PhantomData<&'a ()>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WireIn {
    Full {
        re: [IntRepr; 2],
        #[serde(default)]
        im: Option<[IntRepr; 2]>,
    },
    Integer(i64),
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireOut { re: frac_repr(&self.re), im: frac_repr(&self.im), _p: Default::default() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match WireIn::deserialize(d)? {
            WireIn::Integer(v) => Ok(GaussianRational::from(v)),
            WireIn::Full { re, im } => {
                let re = frac_from::<D::Error>(&re)?;
                let im = match im {
                    Some(im) => frac_from::<D::Error>(&im)?,
                    None => BigRational::zero(),
                };
                Ok(GaussianRational::new(re, im))
            }
        }
    }
}

/// Convenience constructor used throughout tests: `g(re, im)` with integer parts.
pub fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}
