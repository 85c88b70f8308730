//! Exact evaluators for vertex-count lower bounds of graphs with chromatic
//! number `chi` and all odd cycles of length at least `2k + 1`.
//!
//! Values are exact rationals; the usable integer bound is the ceiling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cycles::Length;

/// Bound families, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    Sys,
    Bb1,
    Bb2,
    Bb3,
    Mix1,
    Mix2,
    Mix3Printed,
    Mix3Recursive,
    BallA,
    BallB,
    Eq2,
    Gromov,
}

impl BoundId {
    pub const ALL: [BoundId; 12] = [
        BoundId::Sys,
        BoundId::Bb1,
        BoundId::Bb2,
        BoundId::Bb3,
        BoundId::Mix1,
        BoundId::Mix2,
        BoundId::Mix3Printed,
        BoundId::Mix3Recursive,
        BoundId::BallA,
        BoundId::BallB,
        BoundId::Eq2,
        BoundId::Gromov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Sys => "SYS",
            BoundId::Bb1 => "BB1",
            BoundId::Bb2 => "BB2",
            BoundId::Bb3 => "BB3",
            BoundId::Mix1 => "MIX1",
            BoundId::Mix2 => "MIX2",
            BoundId::Mix3Printed => "MIX3_PRINTED",
            BoundId::Mix3Recursive => "MIX3_RECURSIVE",
            BoundId::BallA => "BALL_A",
            BoundId::BallB => "BALL_B",
            BoundId::Eq2 => "EQ2",
            BoundId::Gromov => "GROMOV",
        }
    }

    /// Short label used in comparison tables.
    pub fn label(self) -> &'static str {
        match self {
            BoundId::Sys => "sys",
            BoundId::Bb1 => "BB-1",
            BoundId::Bb2 => "BB-2",
            BoundId::Bb3 => "BB-3",
            BoundId::Mix1 => "MIX-1",
            BoundId::Mix2 => "MIX-2",
            BoundId::Mix3Printed => "MIX-3",
            BoundId::Mix3Recursive => "MIX-3r",
            BoundId::BallA => "ball-a",
            BoundId::BallB => "ball-b",
            BoundId::Eq2 => "eq2",
            BoundId::Gromov => "gromov",
        }
    }

    /// Whether the bound is a function of `(chi, k)` alone.
    pub fn is_chi_k(self) -> bool {
        self != BoundId::Gromov
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown bound id {0:?}")]
pub struct UnknownBound(pub String);

impl FromStr for BoundId {
    type Err = UnknownBound;

    /// Accepts the identifier (`MIX3_PRINTED`) or the table label (`MIX-3`),
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        BoundId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(t) || id.label().eq_ignore_ascii_case(t))
            .ok_or_else(|| UnknownBound(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub chi: u64,
    pub k: u64,
}

impl BoundParams {
    pub fn new(chi: u64, k: u64) -> Self {
        Self { chi, k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{id} needs chi >= {min}, got {chi}")]
    ChiTooSmall { id: BoundId, min: u64, chi: u64 },
    #[error("parameters need chi >= 1 and k >= 1, got chi={chi}, k={k}")]
    InvalidParams { chi: u64, k: u64 },
    #[error("GROMOV needs finite girth")]
    InfiniteGirth,
    #[error("GROMOV needs girth >= 3, got {0}")]
    GirthTooSmall(usize),
    #[error("GROMOV needs forest essentiality >= 1")]
    EssentialityTooSmall,
}

/// An evaluated bound: exact value and its ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub id: BoundId,
    pub raw: BigRational,
    pub ceil: BigInt,
}

impl BoundValue {
    fn new(id: BoundId, raw: BigRational) -> Self {
        let ceil = raw.ceil().to_integer();
        Self { id, raw, ceil }
    }

    fn int(id: BoundId, v: BigInt) -> Self {
        Self::new(id, BigRational::from_integer(v))
    }

    /// The ceiling, saturated to `u64::MAX`; negative values clamp to 0.
    pub fn ceil_u64(&self) -> u64 {
        if self.ceil < BigInt::zero() {
            0
        } else {
            self.ceil.to_u64().unwrap_or(u64::MAX)
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundValue", 3)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("raw", &self.raw.to_string())?;
        match self.ceil.to_u64() {
            Some(c) => st.serialize_field("ceil", &c)?,
            None => st.serialize_field("ceil", &self.ceil.to_string())?,
        }
        st.end()
    }
}

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn j(chi: u64) -> i64 {
    ((chi as i64) - 1) / 2
}

/// Rising product `(start)(start+1)...(start+k-1)` over `2^(k-1) k^k`.
fn product_term(start: i64, k: i64) -> BigRational {
    let num: BigInt = (0..k).map(|i| int(start + i)).product();
    let den = BigInt::from(2).pow((k - 1) as u32) * int(k).pow(k as u32);
    ratio(num, den)
}

/// `2 C(k-2+J, J) + C(k-2+J, J-1)` with `J = floor((chi-1)/2)`.
fn ball_term(chi: u64, k: i64) -> BigInt {
    let jj = j(chi);
    int(2) * binom(k - 2 + jj, jj) + binom(k - 2 + jj, jj - 1)
}

/// `2 C(k-2+floor(m/2), floor(m/2)) + C(k-2+floor(m/2), floor(m/2)-1)`: the
/// lower estimate for the largest radius-`(k-1)` ball of a graph that is not
/// `(m-1)`-colorable. `d_lower(1, 1) = 0` under the binomial convention.
pub fn d_lower(m: u64, k: u64) -> BigInt {
    let h = (m / 2) as i64;
    let k = k as i64;
    int(2) * binom(k - 2 + h, h) + binom(k - 2 + h, h - 1)
}

/// `1 + sum_{c=2}^{m} d_lower(c, k)`.
pub fn f_recursive(m: u64, k: u64) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, c| acc + d_lower(c, k))
}

fn check(p: BoundParams) -> Result<(), BoundError> {
    if p.chi == 0 || p.k == 0 {
        Err(BoundError::InvalidParams { chi: p.chi, k: p.k })
    } else {
        Ok(())
    }
}

fn require_chi(id: BoundId, p: BoundParams, min: u64) -> Result<(), BoundError> {
    if p.chi < min {
        Err(BoundError::ChiTooSmall { id, min, chi: p.chi })
    } else {
        Ok(())
    }
}

/// Evaluates a `(chi, k)` bound. `chi = 1` yields 1 for every bound.
pub fn evaluate(id: BoundId, p: BoundParams) -> Result<BoundValue, BoundError> {
    check(p)?;
    if p.chi == 1 && id.is_chi_k() {
        return Ok(BoundValue::int(id, BigInt::one()));
    }
    let chi = p.chi as i64;
    let k = p.k as i64;
    let one = || BigRational::one();
    let raw = match id {
        BoundId::Sys => {
            let jj = j(p.chi);
            BigRational::from_integer(int(2) * binom(k - 1 + jj, k - 1) + binom(k - 1 + jj, k) - 1)
        }
        BoundId::Bb1 => product_term(chi + k - 1, k) + one(),
        BoundId::Bb2 => product_term(chi + k - 2, k) + BigRational::from_integer(int((chi - 1) * (k - 1) + 2)),
        BoundId::Bb3 => {
            BigRational::from_integer(int(chi - 1)) + ratio(int((k - 1) * (chi - 2) * (chi + 1)), int(2)) + one()
        }
        BoundId::Mix1 => {
            require_chi(id, p, 2)?;
            product_term(chi + k - 2, k) + BigRational::from_integer(ball_term(p.chi, k)) + one()
        }
        BoundId::Mix2 => {
            require_chi(id, p, 2)?;
            BigRational::from_integer(int(chi - 2))
                + ratio(int((k - 1) * (chi - 3) * chi), int(2))
                + BigRational::from_integer(ball_term(p.chi, k))
                + one()
        }
        BoundId::Mix3Printed => {
            require_chi(id, p, 2)?;
            let jj = j(p.chi);
            let mut v = int(4) * binom(k - 1 + jj, jj) + int(2) * binom(k - 1 + jj, jj - 1) - 1;
            if p.chi % 2 == 0 {
                v -= ball_term(p.chi, k);
            }
            BigRational::from_integer(v)
        }
        BoundId::Mix3Recursive => BigRational::from_integer(f_recursive(p.chi - 1, p.k) + 1),
        BoundId::BallA => {
            require_chi(id, p, 3)?;
            BigRational::from_integer(ball_term(p.chi, k))
        }
        BoundId::BallB => {
            require_chi(id, p, 3)?;
            let n = j(p.chi);
            BigRational::from_integer(int(2) * binom(k - 1 + n, k - 1) + binom(k - 1 + n, k) - 1)
        }
        BoundId::Eq2 => BigRational::from_integer(int((k - 1) * (chi - 1) + 1)),
        BoundId::Gromov => panic!("GROMOV depends on forest essentiality and girth; use bound_gromov"),
    };
    Ok(BoundValue::new(id, raw))
}

pub fn bound_sys(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Sys, p)
}

pub fn bound_bb1(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Bb1, p)
}

pub fn bound_bb2(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Bb2, p)
}

pub fn bound_bb3(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Bb3, p)
}

pub fn bound_mix1(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Mix1, p)
}

pub fn bound_mix2(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Mix2, p)
}

pub fn bound_mix3_printed(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Mix3Printed, p)
}

/// `f_recursive(chi - 1, k) + 1`.
pub fn bound_mix3_recursive(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Mix3Recursive, p)
}

/// Lower bound for the largest ball of radius `k - 1`.
pub fn ball_lower_a(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::BallA, p)
}

/// Lower bound for the largest ball of radius `k`.
pub fn ball_lower_b(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::BallB, p)
}

/// `(k-1)(chi-1) + 1`, a lower bound for the largest ball of radius `k - 1`.
pub fn bound_eq2(p: BoundParams) -> Result<BoundValue, BoundError> {
    evaluate(BoundId::Eq2, p)
}

/// `C(n'+floor(s/2)-1, n'-1) + 2 C(n'+floor(s/2)-1, n') - 1` for forest
/// essentiality `n'` and girth `s`.
pub fn bound_gromov(nprime: u64, girth: Length) -> Result<BoundValue, BoundError> {
    let s = girth.finite().ok_or(BoundError::InfiniteGirth)?;
    if s < 3 {
        return Err(BoundError::GirthTooSmall(s));
    }
    if nprime == 0 {
        return Err(BoundError::EssentialityTooSmall);
    }
    let n = nprime as i64;
    let top = n + (s / 2) as i64 - 1;
    let v = binom(top, n - 1) + int(2) * binom(top, n) - 1;
    Ok(BoundValue::int(BoundId::Gromov, v))
}

/// `b_n(i)` for `i = 0..=r+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnTable {
    pub n: u64,
    pub r: u64,
    pub values: Vec<BigInt>,
}

/// `b_1(i) = 2i + 1` for `i <= r`, `b_1(r + 1) = 2r + 2`, and
/// `b_n(i) = sum_{j <= i} b_{n-1}(j)`.
pub fn bn_table(n: u64, r: u64) -> BnTable {
    assert!(n >= 1, "n must be at least 1");
    let mut values: Vec<BigInt> = (0..=r).map(|i| int(2 * i as i64 + 1)).collect();
    values.push(int(2 * r as i64 + 2));
    for _ in 1..n {
        let mut acc = BigInt::zero();
        for v in values.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    BnTable { n, r, values }
}

/// The bound with the largest exact value among `catalog`; on ties the one
/// later in catalog order wins. Bounds whose guards reject `p` are skipped.
pub fn best_bound(p: BoundParams, catalog: &[BoundId]) -> Option<(BoundId, BoundValue)> {
    let mut ids: Vec<BoundId> = catalog.iter().copied().filter(|id| id.is_chi_k()).collect();
    ids.sort();
    ids.dedup();
    let mut best: Option<BoundValue> = None;
    for id in ids {
        let Ok(v) = evaluate(id, p) else { continue };
        if best.as_ref().map_or(true, |b| v.raw >= b.raw) {
            best = Some(v);
        }
    }
    best.map(|b| (b.id, b))
}
