//! Pseudo-convergent sequences `E = {s_n}` with an explicit prefix and a
//! geometric tail, and the closed forms that make their polynomial closure
//! decidable.
//!
//! A sequence is `s_0, …, s_{n0}` followed by the differences
//! `c_n = s_{n+1} − s_n = u·t^{n·b}` for `n ≥ n0`, with `b > 0`. Its gauge
//! `δ_n = v(c_n)` is `v(u) + n·b` on the tail, the breadth ideal depends only
//! on `v(u)` and the leading index of `b`, and
//! `σ = s_{n0} + u·t^{n0·b} / (1 − t^b)` is always a pseudo-limit.

mod closure;
mod equality;

pub use closure::{
    classify, closure_describe, in_closure, Classification, ClassifyCertificate,
    ClosureDescription, CosetPart, OutsideReason, Part,
};
pub use equality::{closure_equal, EqualityFailure, EqualityReport};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideals::{largest_prime_in, Cut, PrimeCut};
use crate::lexgroup::{AffineExp, LexVec};
use crate::valfield::{geo_sum, FieldElement};

/// The differences `c_n = u·t^{n·b}` for `n ≥ start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoTail {
    pub u: FieldElement,
    pub b: LexVec,
    pub start: usize,
}

impl GeoTail {
    pub fn new(u: FieldElement, b: LexVec, start: usize) -> Self {
        GeoTail { u, b, start }
    }

    /// `c_n` for any `n` (the formula, regardless of `start`).
    pub fn diff_at(&self, n: usize) -> FieldElement {
        let shift = FieldElement::t_pow(&self.b.scale(&BigInt::from(n)))
            .expect("tail exponents stay in range");
        &self.u * &shift
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCSeq {
    rank: usize,
    prefix: Vec<FieldElement>,
    tail: GeoTail,
}

/// Check every structural and gauge condition of a prefix/tail pair.
pub fn validate(prefix: &[FieldElement], tail: &GeoTail) -> Result<()> {
    let first = prefix
        .first()
        .ok_or_else(|| Error::Precondition("prefix must contain at least s_0".into()))?;
    let rank = first.rank();
    for x in prefix.iter().chain(std::iter::once(&tail.u)) {
        if x.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: x.rank(),
            });
        }
    }
    tail.b.check_rank(&LexVec::zero(rank))?;
    let n0 = prefix.len() - 1;
    if tail.start != n0 {
        return Err(Error::Precondition(format!(
            "tail starts at {} but the prefix ends at s_{n0}",
            tail.start
        )));
    }
    if tail.u.is_zero() {
        return Err(Error::NotPseudoConvergent {
            index: n0,
            reason: "tail coefficient u is zero".into(),
        });
    }
    if !tail.b.is_positive() {
        return Err(Error::NotPseudoConvergent {
            index: n0,
            reason: format!("tail step {} is not positive", tail.b),
        });
    }
    let mut prev: Option<LexVec> = None;
    for i in 0..n0 {
        let c = &prefix[i + 1] - &prefix[i];
        let d = c
            .finite_valuation()
            .ok_or_else(|| Error::NotPseudoConvergent {
                index: i,
                reason: format!("s_{} = s_{i}", i + 1),
            })?;
        if let Some(p) = &prev {
            if d <= *p {
                return Err(Error::NotPseudoConvergent {
                    index: i,
                    reason: format!("gauge {d} does not exceed {p}"),
                });
            }
        }
        prev = Some(d);
    }
    let tail_first = &tail.u.finite_valuation().expect("u ≠ 0") + &tail.b.scale(&BigInt::from(n0));
    if let Some(p) = prev {
        if tail_first <= p {
            return Err(Error::NotPseudoConvergent {
                index: n0,
                reason: format!("tail gauge {tail_first} does not exceed {p}"),
            });
        }
    }
    Ok(())
}

impl PCSeq {
    /// Build and validate.
    pub fn new(prefix: Vec<FieldElement>, tail: GeoTail) -> Result<Self> {
        validate(&prefix, &tail)?;
        Ok(PCSeq {
            rank: prefix[0].rank(),
            prefix,
            tail,
        })
    }

    /// A single starting term and a tail `c_n = u·t^{n·b}` from `n = 0`.
    pub fn geometric(s0: FieldElement, u: FieldElement, b: LexVec) -> Result<Self> {
        Self::new(vec![s0], GeoTail::new(u, b, 0))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn prefix(&self) -> &[FieldElement] {
        &self.prefix
    }

    pub fn tail(&self) -> &GeoTail {
        &self.tail
    }

    /// Index `n0` where the geometric tail takes over.
    pub fn start(&self) -> usize {
        self.tail.start
    }

    pub fn term(&self, n: usize) -> FieldElement {
        let n0 = self.start();
        if n <= n0 {
            return self.prefix[n].clone();
        }
        let sum = geo_sum(&self.tail.u, &self.tail.b, n0 as u64, n as u64).expect("validated tail");
        &self.prefix[n0] + &sum
    }

    /// `s_0, …, s_{count−1}`, built incrementally.
    pub fn terms(&self, count: usize) -> Vec<FieldElement> {
        let mut out: Vec<FieldElement> = self.prefix.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = &out[n - 1] + &self.diff(n - 1);
            out.push(next);
        }
        out
    }

    /// `c_n = s_{n+1} − s_n`.
    pub fn diff(&self, n: usize) -> FieldElement {
        if n < self.start() {
            &self.prefix[n + 1] - &self.prefix[n]
        } else {
            self.tail.diff_at(n)
        }
    }

    /// `δ_n = v(c_n)`.
    pub fn gauge_at(&self, n: usize) -> LexVec {
        if n < self.start() {
            self.diff(n).finite_valuation().expect("validated gauge")
        } else {
            self.tail_gauge().eval(n as u64).expect("n ≥ start")
        }
    }

    /// Prefix gauges `δ_0..δ_{n0−1}` and the affine tail `v(u) + n·b`.
    pub fn gauge_form(&self) -> (Vec<LexVec>, AffineExp) {
        let prefix = (0..self.start()).map(|n| self.gauge_at(n)).collect();
        (prefix, self.tail_gauge())
    }

    pub fn tail_gauge(&self) -> AffineExp {
        AffineExp {
            base: self.tail.u.finite_valuation().expect("u ≠ 0"),
            step: self.tail.b.clone(),
            start: self.start() as u64,
        }
    }

    /// Leading index `p` of the tail step `b`.
    pub fn step_index(&self) -> usize {
        self.tail.b.leading_index().expect("b > 0")
    }

    /// `Br(E) = {x : v(x) > δ_n for all n}`.
    pub fn breadth(&self) -> Cut {
        match self.step_index() {
            1 => Cut::Zero,
            p => Cut::open(self.tail_gauge().base, p - 1).expect("1 ≤ p−1 < r"),
        }
    }

    /// The pseudo-limit `σ = s_{n0} + u·t^{n0·b} / (1 − t^b)`.
    pub fn pseudo_limit(&self) -> FieldElement {
        let n0 = self.start();
        let one = FieldElement::one(self.rank);
        let tb = FieldElement::t_pow(&self.tail.b).expect("tail exponent in range");
        let lead = self.tail.diff_at(n0);
        &self.prefix[n0] + &(&lead / &(&one - &tb))
    }

    pub fn is_pseudo_limit(&self, alpha: &FieldElement) -> bool {
        self.breadth().contains(&(alpha - &self.pseudo_limit()))
    }

    /// `P_k`, the largest prime ideal in `c_k^{-1} Br(E)`.
    pub fn coset_prime(&self, k: usize) -> PrimeCut {
        let shifted = self.breadth().shift(&-&self.gauge_at(k));
        largest_prime_in(&shifted, self.rank).expect("c_k^{-1} Br(E) ⊆ M")
    }

    /// The constant `P_k` for `k ≥ n0`: `P_{p−1}`.
    pub fn tail_prime(&self) -> PrimeCut {
        PrimeCut::new(self.step_index() - 1, self.rank).expect("p ≤ r")
    }

    /// The same sequence with the tail starting at `n0 ≥ start()`.
    pub fn with_start(&self, n0: usize) -> PCSeq {
        if n0 <= self.start() {
            return self.clone();
        }
        PCSeq {
            rank: self.rank,
            prefix: self.terms(n0 + 1),
            tail: GeoTail::new(self.tail.u.clone(), self.tail.b.clone(), n0),
        }
    }

    /// Replace `s_k` by `value`, moving the tail start past `k` if needed.
    pub fn replace_term(&self, k: usize, value: FieldElement) -> Result<PCSeq> {
        let mut seq = self.with_start(self.start().max(k + 1));
        seq.prefix[k] = value;
        PCSeq::new(seq.prefix, seq.tail)
    }
}
