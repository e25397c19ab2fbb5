//! The regular basis `H_n(X) = Π_{i<n} (X − s_i)/(s_n − s_i)` of
//! `Int(E, V)`, Newton expansion in it, and the `H_n(α) ∈ V` membership
//! test for `Ē`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lexgroup::{GroupElement, LexVec};
use crate::pcvseq::PCSeq;
use crate::valfield::{FieldElement, KPoly};

pub const DEFAULT_HORIZON: usize = 30;

pub fn hn_build(seq: &PCSeq, n: usize) -> KPoly {
    let terms = seq.terms(n + 1);
    let sn = &terms[n];
    // Scaling once at the end keeps the intermediate coefficients small.
    let (top, bottom) = terms[..n].iter().fold(
        (KPoly::one(seq.rank()), FieldElement::one(seq.rank())),
        |(top, bottom), si| (top.mul(&KPoly::linear_root(si)), &bottom * &(sn - si)),
    );
    top.scale(&bottom.inv().expect("s_n ≠ s_i"))
}

/// `H_n(α)` as the product of its linear factors.
pub fn hn_eval(seq: &PCSeq, n: usize, alpha: &FieldElement) -> FieldElement {
    let terms = seq.terms(n + 1);
    hn_eval_with(&terms, n, alpha)
}

fn hn_eval_with(terms: &[FieldElement], n: usize, alpha: &FieldElement) -> FieldElement {
    let sn = &terms[n];
    let mut acc = FieldElement::one(alpha.rank());
    for si in &terms[..n] {
        let top = alpha - si;
        if top.is_zero() {
            return FieldElement::zero(alpha.rank());
        }
        acc = &acc * &(&top / &(sn - si));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnValue {
    Zero,
    Unit,
}

/// `v(H_n(α))` from its linear factors: `Σ_{i<n} v(α − s_i) − Σ_{i<n} v(s_n − s_i)`,
/// `Infinity` when `α` is one of `s_0..s_{n−1}`.
pub fn hn_valuation(seq: &PCSeq, n: usize, alpha: &FieldElement) -> GroupElement {
    let terms = seq.terms(n + 1);
    let rank = seq.rank();
    let mut acc = LexVec::zero(rank);
    for si in &terms[..n] {
        match (alpha - si).finite_valuation() {
            None => return GroupElement::Infinity,
            Some(g) => acc = &acc + &g,
        }
        acc = &acc - &(&terms[n] - si).finite_valuation().expect("distinct terms");
    }
    GroupElement::Finite(acc)
}

/// `H_n(s_j)` is `0` for `j < n` and a unit of `V` for `j ≥ n`.
///
/// Decided through [`hn_valuation`]; the product itself is never expanded.
pub fn hn_values_check(seq: &PCSeq, n: usize, j: usize) -> Result<HnValue> {
    let value = hn_valuation(seq, n, &seq.term(j));
    let expected = if j < n { HnValue::Zero } else { HnValue::Unit };
    let ok = match expected {
        HnValue::Zero => value.is_infinite(),
        HnValue::Unit => value == GroupElement::zero(seq.rank()),
    };
    if ok {
        Ok(expected)
    } else {
        Err(Error::Precondition(format!(
            "v(H_{n}(s_{j})) = {value}, expected {}",
            if j < n { "inf" } else { "0" }
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// `H_n(α) ∈ V` for every `n ≤ horizon`.
    Pass,
    /// `n` is the least index with `H_n(α) ∉ V`.
    Fail { n: usize, valuation: LexVec },
}

impl fmt::Display for OracleOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleOutcome::Pass => write!(f, "Pass"),
            OracleOutcome::Fail { n, valuation } => {
                write!(f, "Fail({n}) with v(H_{n}) = {valuation}")
            }
        }
    }
}

/// One-sided membership test: `α ∈ Ē` forces `H_n(α) ∈ V` for all `n`.
///
/// `v(H_n(α)) = Σ_{i<n} v(α − s_i) − Σ_{i<n} v(s_n − s_i)`, computed from
/// exact differences; `H_n(α) = 0` when `α` is one of `s_0..s_{n−1}`.
pub fn oracle_in_closure(seq: &PCSeq, alpha: &FieldElement, horizon: usize) -> OracleOutcome {
    ClosureOracle::new(seq, horizon).check(alpha)
}

/// [`oracle_in_closure`] for many `α` against one sequence: the terms and
/// `Σ_{i<n} v(s_n − s_i)` are computed once.
#[derive(Clone, Debug)]
pub struct ClosureOracle {
    terms: Vec<FieldElement>,
    /// `bottoms[n − 1] = Σ_{i<n} v(s_n − s_i)`
    bottoms: Vec<LexVec>,
}

impl ClosureOracle {
    pub fn new(seq: &PCSeq, horizon: usize) -> Self {
        let terms = seq.terms(horizon + 1);
        let rank = seq.rank();
        let bottoms = (1..=horizon)
            .map(|n| {
                terms[..n].iter().fold(LexVec::zero(rank), |acc, si| {
                    &acc + &(&terms[n] - si).finite_valuation().expect("distinct terms")
                })
            })
            .collect();
        ClosureOracle { terms, bottoms }
    }

    pub fn horizon(&self) -> usize {
        self.bottoms.len()
    }

    pub fn check(&self, alpha: &FieldElement) -> OracleOutcome {
        assert_eq!(
            self.terms[0].rank(),
            alpha.rank(),
            "rank mismatch in oracle"
        );
        let mut top = LexVec::zero(alpha.rank());
        for (n, bottom) in (1..).zip(&self.bottoms) {
            match (alpha - &self.terms[n - 1]).finite_valuation() {
                // α = s_i for some i < n: H_m(α) = 0 for every m > i
                None => return OracleOutcome::Pass,
                Some(gap) => top = &top + &gap,
            }
            let v = &top - bottom;
            if v.is_negative() {
                return OracleOutcome::Fail { n, valuation: v };
            }
        }
        OracleOutcome::Pass
    }
}

/// `f = Σ a_n·H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub coeffs: Vec<FieldElement>,
}

impl BasisExpansion {
    /// `Σ a_n·H_n` as a polynomial.
    pub fn reconstruct(&self, seq: &PCSeq) -> KPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(KPoly::zero(seq.rank()), |acc, (n, a)| {
                if a.is_zero() {
                    acc
                } else {
                    acc.add(&hn_build(seq, n).scale(a))
                }
            })
    }

    pub fn all_in_v(&self) -> bool {
        self.coeffs.iter().all(FieldElement::in_v)
    }
}

/// Newton interpolation along `s_0, s_1, …` by repeated synthetic
/// division: `f = b_0 + (X − s_0)(b_1 + (X − s_1)(b_2 + …))`, and then
/// `a_n = b_n·Π_{i<n}(s_n − s_i)` since `H_n` is the Newton product over
/// that normalizer.
pub fn expand_in_basis(seq: &PCSeq, f: &KPoly) -> BasisExpansion {
    assert_eq!(seq.rank(), f.rank(), "rank mismatch in expansion");
    let Some(d) = f.degree() else {
        return BasisExpansion { coeffs: Vec::new() };
    };
    let terms = seq.terms(d + 1);
    let mut q: Vec<FieldElement> = f.coeffs().to_vec();
    let mut coeffs = Vec::with_capacity(d + 1);
    for (n, sn) in terms.iter().enumerate() {
        // q ← (q − q(s_n)) / (X − s_n), remainder q(s_n)
        let mut carry = FieldElement::zero(seq.rank());
        let mut quotient = vec![FieldElement::zero(seq.rank()); q.len().saturating_sub(1)];
        for k in (0..q.len()).rev() {
            carry = &q[k] + &(sn * &carry);
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        let normalizer = terms[..n]
            .iter()
            .fold(FieldElement::one(seq.rank()), |acc, si| &acc * &(sn - si));
        coeffs.push(&carry * &normalizer);
        q = quotient;
    }
    BasisExpansion { coeffs }
}

/// `f ∈ Int(E, V)` iff every coefficient in the regular basis lies in `V`.
pub fn is_integer_valued(seq: &PCSeq, f: &KPoly) -> bool {
    expand_in_basis(seq, f).all_in_v()
}
