#![allow(dead_code)]

use flatres::gauss::{g, GaussianRational as G};
use flatres::{ResidueTuple, StratumSignature};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

/// Primitive integer tuples of length `s` with nonzero entries in
/// `[-bound, bound]` summing to zero, one per multiset up to global sign.
pub fn primitive_tuples(s: usize, bound: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (-bound..=bound).filter(|&x| x != 0).rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(values: &[i64], start: usize, s: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == s {
            if cur.iter().sum::<i64>() == 0 && cur.iter().fold(0i64, |a, &x| a.gcd(&x)) == 1 {
                let neg: Vec<i64> = {
                    let mut v: Vec<i64> = cur.iter().map(|x| -x).collect();
                    v.sort_unstable_by(|a, b| b.cmp(a));
                    v
                };
                if *cur >= neg {
                    out.push(cur.clone());
                }
            }
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, i, s, cur, out);
            cur.pop();
        }
    }
    rec(&values, 0, s, &mut cur, &mut out);
    out
}

/// Random composition of `total` into `parts` positive integers.
pub fn composition(rng: &mut impl Rng, total: u32, parts: usize) -> Vec<u32> {
    assert!(parts >= 1 && total as usize >= parts);
    let mut cuts: Vec<u32> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Random integer vector of length `len` with nonzero entries summing to zero.
pub fn balanced_ints(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let mut v: Vec<i64> = (0..len - 1).map(|_| loop {
            let x = rng.gen_range(-bound..=bound);
            if x != 0 {
                break x;
            }
        }).collect();
        let last = -v.iter().sum::<i64>();
        if last != 0 {
            v.push(last);
            return v;
        }
    }
}

/// Random Gaussian residues summing to zero, generically non-collinear.
pub fn balanced_gaussians(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<G> {
    loop {
        let mut v: Vec<G> = (0..len - 1).map(|_| g(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))).collect();
        let last = -v.iter().sum::<G>();
        v.push(last);
        if v.iter().all(|x| !x.is_zero()) {
            return v;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    NonCollinear,
    CollinearHigher,
    ZeroVector,
    SimplePoles,
    GenusOne,
    HigherGenus,
}

/// A realizable pair of the requested kind.
pub fn realizable_pair(rng: &mut impl Rng, case: Case) -> (StratumSignature, ResidueTuple) {
    loop {
        if let Some(pair) = try_pair(rng, case) {
            if flatres::decide_realizable(&pair.0, &pair.1).is_ok_and(|v| v.realizable) {
                return pair;
            }
        }
    }
}

fn random_poles(rng: &mut impl Rng, p: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..p).map(|_| rng.gen_range(2..=4)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn try_pair(rng: &mut impl Rng, case: Case) -> Option<(StratumSignature, ResidueTuple)> {
    match case {
        Case::NonCollinear => {
            let p = rng.gen_range(0..=2);
            let s = rng.gen_range(if p == 0 { 3 } else { 0 }..=4);
            if p + s < 3 {
                return None;
            }
            let poles = random_poles(rng, p);
            let mut r = balanced_gaussians(rng, p + s, 4);
            if p > 0 && rng.gen_bool(0.3) {
                r[0] = G::zero();
                let fix = -r.iter().sum::<G>();
                r[1] = &r[1] + &fix;
            }
            let total = poles.iter().sum::<u32>() + s as u32 - 2;
            let n = rng.gen_range(1..=total.clamp(1, 3) as usize);
            if total == 0 {
                return None;
            }
            let zeros = composition(rng, total, n);
            Some((StratumSignature::new(0, zeros, poles, s as u32), ResidueTuple::new(r)))
        }
        Case::CollinearHigher => {
            let p = rng.gen_range(1..=3);
            let s = rng.gen_range(0..=3);
            if p + s < 2 {
                return None;
            }
            let poles = random_poles(rng, p);
            let dir = g(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if dir.is_zero() {
                return None;
            }
            let ints = balanced_ints(rng, p + s, 4);
            let mut r: Vec<G> = ints.iter().map(|&k| dir.scale_int(k)).collect();
            if p >= 2 && rng.gen_bool(0.3) {
                let k = r[0].clone();
                r[0] = G::zero();
                r[1] = &r[1] + &k;
                if r[1].is_zero() {
                    return None;
                }
            }
            let total = poles.iter().sum::<u32>() + s as u32 - 2;
            if total == 0 {
                return None;
            }
            let n = rng.gen_range(1..=total.min(3) as usize);
            let zeros = composition(rng, total, n);
            Some((StratumSignature::new(0, zeros, poles, s as u32), ResidueTuple::new(r)))
        }
        Case::ZeroVector => {
            let p = rng.gen_range(1..=5);
            let poles = random_poles(rng, p);
            let total = poles.iter().sum::<u32>() - 2;
            let n = rng.gen_range(0..=total.min(5) as usize);
            let zeros = if n == 0 { Vec::new() } else { composition(rng, total, n) };
            if n == 0 && total != 0 {
                return None;
            }
            Some((StratumSignature::new(0, zeros, poles, 0), ResidueTuple::zeros(p)))
        }
        Case::SimplePoles => {
            let s = rng.gen_range(2..=7);
            let ints = balanced_ints(rng, s, 4);
            let dir = g(rng.gen_range(1..=3), rng.gen_range(-2..=2));
            let r: Vec<G> = ints.iter().map(|&k| dir.scale_int(k)).collect();
            let total = s as u32 - 2;
            let zeros = if total == 0 {
                Vec::new()
            } else {
                let n = rng.gen_range(1..=total.min(3) as usize);
                composition(rng, total, n)
            };
            Some((StratumSignature::new(0, zeros, vec![], s as u32), ResidueTuple::new(r)))
        }
        Case::GenusOne | Case::HigherGenus => {
            let genus = if case == Case::GenusOne { 1 } else { rng.gen_range(2..=3) };
            let kind = rng.gen_range(0..4);
            let (poles, s, r) = match kind {
                0 => {
                    let p = rng.gen_range(1..=3);
                    (random_poles(rng, p), 0, ResidueTuple::zeros(p))
                }
                1 => {
                    let s = rng.gen_range(2..=4);
                    let ints = balanced_ints(rng, s, 3);
                    (vec![], s, ResidueTuple::from_ints(&ints))
                }
                2 => {
                    let p = rng.gen_range(1..=2);
                    let s = rng.gen_range(0..=2);
                    if p + s < 2 {
                        return None;
                    }
                    (random_poles(rng, p), s, ResidueTuple::new(balanced_gaussians(rng, p + s, 3)))
                }
                _ => (vec![], 0, ResidueTuple::zeros(0)),
            };
            let total = poles.iter().sum::<u32>() + s as u32 + 2 * genus - 2;
            if total == 0 {
                return Some((StratumSignature::new(genus, vec![], poles, s as u32), r));
            }
            let n = rng.gen_range(1..=total.min(4) as usize);
            let zeros = composition(rng, total, n);
            Some((StratumSignature::new(genus, zeros, poles, s as u32), r))
        }
    }
}
