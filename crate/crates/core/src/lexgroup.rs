//! The value group ℤʳ under the lexicographic order.
//!
//! [`LexVec`] is a finite group element, [`GroupElement`] adjoins the
//! infinite value of `0`. The convex subgroups of ℤʳ-lex form the chain
//! `Δ_0 = ℤʳ ⊃ Δ_1 ⊃ … ⊃ Δ_r = {0}` where `Δ_j` is the set of vectors whose
//! first `j` coordinates vanish; [`ConvexIndex`] names them.
//!
//! Mixing ranks is a programming error: the operator impls and the `Ord`
//! impls panic on it, the `checked_*`/[`GroupElement::lex_cmp`] entry points
//! report [`Error::RankMismatch`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A finite element of ℤʳ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LexVec(Vec<BigInt>);

impl LexVec {
    pub fn new<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        assert!(!coords.is_empty(), "rank must be at least 1");
        LexVec(coords)
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        LexVec(vec![BigInt::zero(); rank])
    }

    /// The vector with a single `1` at 1-based position `index`.
    pub fn unit(rank: usize, index: usize) -> Self {
        assert!((1..=rank).contains(&index));
        let mut v = Self::zero(rank);
        v.0[index - 1] = BigInt::from(1);
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// 1-based index of the first nonzero coordinate, `None` for zero.
    ///
    /// `γ ∈ Δ_j` iff the result is `None` or exceeds `j`.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }

    pub fn is_positive(&self) -> bool {
        self.leading_index()
            .is_some_and(|i| self.0[i - 1].is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.leading_index()
            .is_some_and(|i| self.0[i - 1].is_negative())
    }

    /// Lexicographic comparison of the first `j` coordinates only, i.e. the
    /// order of the images in `ℤʳ / Δ_j`.
    pub fn prefix_cmp(&self, other: &Self, j: usize) -> Ordering {
        self.assert_rank(other);
        self.0[..j].cmp(&other.0[..j])
    }

    /// Whether the image of `self` in `ℤʳ / Δ_j` is positive.
    pub fn prefix_positive(&self, j: usize) -> bool {
        self.0[..j]
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_positive)
    }

    /// Zero out coordinates `j+1..r` (canonical representative mod `Δ_j`).
    pub fn truncate(&self, j: usize) -> Self {
        let mut v = self.clone();
        for c in v.0.iter_mut().skip(j) {
            *c = BigInt::zero();
        }
        v
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LexVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self - other)
    }

    pub fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            })
        }
    }

    fn assert_rank(&self, other: &Self) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in value group");
    }
}

impl Ord for LexVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assert_rank(other);
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for LexVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LexVec {
    type Output = LexVec;
    fn add(self, rhs: &LexVec) -> LexVec {
        self.assert_rank(rhs);
        LexVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LexVec {
    type Output = LexVec;
    fn sub(self, rhs: &LexVec) -> LexVec {
        self.assert_rank(rhs);
        LexVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LexVec {
    type Output = LexVec;
    fn neg(self) -> LexVec {
        LexVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A value of the valuation: a finite element of ℤʳ or `Infinity` (the
/// value of `0`), which is greater than everything finite.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Finite(LexVec),
    Infinity,
}

impl GroupElement {
    pub fn finite<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        GroupElement::Finite(LexVec::new(coords))
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement::Finite(LexVec::zero(rank))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GroupElement::Infinity)
    }

    pub fn as_finite(&self) -> Option<&LexVec> {
        match self {
            GroupElement::Finite(v) => Some(v),
            GroupElement::Infinity => None,
        }
    }

    pub fn lex_cmp(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (GroupElement::Finite(a), GroupElement::Finite(b)) => {
                a.check_rank(b)?;
                Ok(a.cmp(b))
            }
            (GroupElement::Infinity, GroupElement::Infinity) => Ok(Ordering::Equal),
            (GroupElement::Infinity, _) => Ok(Ordering::Greater),
            (_, GroupElement::Infinity) => Ok(Ordering::Less),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (GroupElement::Finite(a), GroupElement::Finite(b)) => {
                Ok(GroupElement::Finite(a.checked_add(b)?))
            }
            _ => Ok(GroupElement::Infinity),
        }
    }

    /// `self − other`; `other` must be finite.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (_, GroupElement::Infinity) => Err(Error::InfiniteOperand),
            (GroupElement::Infinity, _) => Ok(GroupElement::Infinity),
            (GroupElement::Finite(a), GroupElement::Finite(b)) => {
                Ok(GroupElement::Finite(a.checked_sub(b)?))
            }
        }
    }

    /// `λ·γ` for `λ ≥ 0`. `0·∞` is left undefined.
    pub fn scalar_mul(&self, lambda: &BigInt) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::Precondition("negative scalar".into()));
        }
        match self {
            GroupElement::Finite(a) => Ok(GroupElement::Finite(a.scale(lambda))),
            GroupElement::Infinity if lambda.is_zero() => Err(Error::InfiniteOperand),
            GroupElement::Infinity => Ok(GroupElement::Infinity),
        }
    }

    pub fn leading_index(&self) -> Result<Option<usize>> {
        self.as_finite()
            .map(LexVec::leading_index)
            .ok_or(Error::InfiniteOperand)
    }
}

impl From<LexVec> for GroupElement {
    fn from(v: LexVec) -> Self {
        GroupElement::Finite(v)
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Finite(a), GroupElement::Finite(b)) => a.cmp(b),
            (GroupElement::Infinity, GroupElement::Infinity) => Ordering::Equal,
            (GroupElement::Infinity, _) => Ordering::Greater,
            (_, GroupElement::Infinity) => Ordering::Less,
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(v) => v.fmt(f),
            GroupElement::Infinity => write!(f, "inf"),
        }
    }
}

/// Names the convex subgroup `Δ_j`, `0 ≤ j ≤ r`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConvexIndex(pub usize);

impl ConvexIndex {
    pub fn contains(self, g: &LexVec) -> bool {
        g.leading_index().is_none_or(|i| i > self.0)
    }
}

/// The exponent sequence `n ↦ base + n·step` for `n ≥ start`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineExp {
    pub base: LexVec,
    pub step: LexVec,
    pub start: u64,
}

impl AffineExp {
    pub fn new(base: LexVec, step: LexVec, start: u64) -> Result<Self> {
        base.check_rank(&step)?;
        Ok(AffineExp { base, step, start })
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn eval(&self, n: u64) -> Result<LexVec> {
        if n < self.start {
            return Err(Error::BelowStart {
                index: n,
                start: self.start,
            });
        }
        Ok(&self.base + &self.step.scale(&BigInt::from(n)))
    }

    /// The unique `n ≥ start` with `base + n·step = γ`. Requires `step > 0`.
    pub fn solve(&self, gamma: &LexVec) -> Option<u64> {
        debug_assert!(self.step.is_positive());
        let diff = gamma - &self.base;
        // step ≠ 0, so its leading coordinate pins n down.
        let p = self.step.leading_index()?;
        let (q, r) = diff.coords()[p - 1].div_rem(&self.step.coords()[p - 1]);
        if !r.is_zero() {
            return None;
        }
        let n = u64::try_from(q).ok()?;
        (n >= self.start && self.step.scale(&BigInt::from(n)) == diff).then_some(n)
    }

    /// The least `n ≥ start` with `base + n·step > γ`, or `None` if `γ`
    /// exceeds every value. Requires `step > 0`.
    pub fn first_exceeding(&self, gamma: &LexVec) -> Option<u64> {
        debug_assert!(self.step.is_positive());
        let diff = gamma - &self.base;
        let p = self.step.leading_index()?;
        // step ∈ Δ_{p-1}: the first p-1 coordinates of base + n·step never move.
        match diff.prefix_cmp(&LexVec::zero(diff.rank()), p - 1) {
            Ordering::Less => return Some(self.start),
            Ordering::Greater => return None,
            Ordering::Equal => {}
        }
        let sp = &self.step.coords()[p - 1];
        let dp = &diff.coords()[p - 1];
        let (q, r) = dp.div_mod_floor(sp);
        // n·sp > dp  iff  n > q (floor); n = q works too when dp = q·sp and
        // the remaining coordinates already exceed.
        let candidate = if r.is_zero() && self.step.scale(&q) > diff {
            q
        } else {
            q + 1
        };
        let n = if candidate.is_negative() {
            0
        } else {
            u64::try_from(candidate).ok()?
        };
        Some(n.max(self.start))
    }
}
