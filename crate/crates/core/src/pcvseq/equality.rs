use std::fmt;

use num_bigint::BigInt;

use super::PCSeq;
use crate::error::{Error, Result};
use crate::lexgroup::{GroupElement, LexVec};
use crate::valfield::FieldElement;

/// The first condition that separates `Ē` from `F̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityFailure {
    /// `δ_n ≠ η_n`.
    GaugeMismatch {
        n: usize,
        left: LexVec,
        right: LexVec,
    },
    /// `(t_k − s_k)/c_k ∉ P_k`; `valuation` is that of the quotient.
    CosetCondition { k: usize, valuation: GroupElement },
}

impl fmt::Display for EqualityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityFailure::GaugeMismatch { n, left, right } => {
                write!(f, "gauge mismatch at n={n}: {left} ≠ {right}")
            }
            EqualityFailure::CosetCondition { k, valuation } => write!(
                f,
                "coset condition fails at k={k}: v((t_k - s_k)/c_k) = {valuation} not in P_k"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    /// Common tail start used for the comparison.
    pub aligned_start: usize,
    /// Human-readable list of the conditions verified, in order.
    pub checked: Vec<String>,
    pub failure: Option<EqualityFailure>,
}

impl EqualityReport {
    pub fn equal(&self) -> bool {
        self.failure.is_none()
    }
}

/// Decide `Ē = F̄`: equal gauges, and `t_k − s_k ∈ c_k·P_k` for every `k`.
///
/// After aligning the tails at a common `n0`, the indices `k < n0` are
/// checked one by one. For `k ≥ n0` write `t_k − s_k = A − B·t^{k·b}`; then
/// `(t_k − s_k)/c_k = A/(u·t^{k·b}) − B/u` and, since `b ∈ Δ_{p−1}`, the
/// image of each summand in `ℤʳ/Δ_{p−1}` does not depend on `k`. The two
/// summands can cancel for at most one `k`, so the condition holds for all
/// `k ≥ n0` iff `A/u` and `B/u` both lie in `P_{p−1}`.
pub fn closure_equal(e: &PCSeq, f: &PCSeq) -> Result<EqualityReport> {
    if e.rank() != f.rank() {
        return Err(Error::RankMismatch {
            expected: e.rank(),
            found: f.rank(),
        });
    }
    let n0 = e.start().max(f.start());
    let (e, f) = (e.with_start(n0), f.with_start(n0));
    let mut report = EqualityReport {
        aligned_start: n0,
        checked: Vec::new(),
        failure: None,
    };

    for n in 0..n0 {
        let (l, r) = (e.gauge_at(n), f.gauge_at(n));
        if l != r {
            report.failure = Some(EqualityFailure::GaugeMismatch {
                n,
                left: l,
                right: r,
            });
            return Ok(report);
        }
    }
    let (ge, gf) = (e.tail_gauge(), f.tail_gauge());
    if ge.base != gf.base || ge.step != gf.step {
        // Two distinct affine maps agree at most once.
        for n in [n0, n0 + 1] {
            let (l, r) = (e.gauge_at(n), f.gauge_at(n));
            if l != r {
                report.failure = Some(EqualityFailure::GaugeMismatch {
                    n,
                    left: l,
                    right: r,
                });
                return Ok(report);
            }
        }
        unreachable!("distinct affine gauges agree at two points");
    }
    report.checked.push(format!(
        "gauges agree: {} prefix values, tail {} + n*{}",
        n0, ge.base, ge.step
    ));

    let se = e.terms(n0 + 1);
    let sf = f.terms(n0 + 1);
    for k in 0..n0 {
        let q = &(&sf[k] - &se[k]) / &e.diff(k);
        let prime = e.coset_prime(k);
        if !prime.contains(&q) {
            report.failure = Some(EqualityFailure::CosetCondition {
                k,
                valuation: q.valuation(),
            });
            return Ok(report);
        }
        report
            .checked
            .push(format!("k={k}: (t_k - s_k)/c_k in {prime}"));
    }

    let rank = e.rank();
    let b = &e.tail().b;
    let u = &e.tail().u;
    let du = &f.tail().u - u;
    let one = FieldElement::one(rank);
    let denom = &one - &FieldElement::t_pow(b)?;
    let lead = FieldElement::t_pow(&b.scale(&BigInt::from(n0)))?;
    let a = &(&sf[n0] - &se[n0]) + &(&(&du * &lead) / &denom);
    let bcoef = &du / &denom;
    let prime = e.tail_prime();
    let a_ok = prime.contains(&(&a / u));
    let b_ok = prime.contains(&(&bcoef / u));
    report.checked.push(format!(
        "tail k>={n0}: v(A/u) = {}, v(B/u) = {} against {prime}",
        (&a / u).valuation(),
        (&bcoef / u).valuation()
    ));
    if !(a_ok && b_ok) {
        // The condition then fails at n0 or n0 + 1; report the concrete index.
        for k in [n0, n0 + 1] {
            let q = &(&f.term(k) - &e.term(k)) / &e.diff(k);
            if !prime.contains(&q) {
                report.failure = Some(EqualityFailure::CosetCondition {
                    k,
                    valuation: q.valuation(),
                });
                return Ok(report);
            }
        }
        unreachable!("tail summands cancel at two consecutive indices");
    }
    Ok(report)
}
