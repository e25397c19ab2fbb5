use std::fmt;

use super::{GeoTail, PCSeq};
use crate::ideals::{Cut, PrimeCut};
use crate::lexgroup::{GroupElement, LexVec};
use crate::valfield::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutsideReason {
    /// `v(α − s_k) < δ_k` at the first index where `v(α − s_n) ≠ δ_n`.
    GaugeUndershoot(usize),
    /// `v(α − s_k) > δ_k` but `(α − s_k)/c_k ∉ P_k`.
    CosetPrimeFail(usize),
    /// `v(α − s_n) = δ_n` for `n ≤ k` and `= δ_k < δ_n` afterwards.
    GaugeMismatch(usize),
}

/// Where `α` sits relative to `Ē = Lim(E) ∪ ⋃_k (s_k + c_k·P_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PseudoLimit,
    Coset(usize),
    Outside(OutsideReason),
}

impl Classification {
    pub fn is_member(&self) -> bool {
        !matches!(self, Classification::Outside(_))
    }
}

impl fmt::Display for OutsideReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutsideReason::GaugeUndershoot(k) => write!(f, "GaugeUndershoot({k})"),
            OutsideReason::CosetPrimeFail(k) => write!(f, "CosetPrimeFail({k})"),
            OutsideReason::GaugeMismatch(k) => write!(f, "GaugeMismatch({k})"),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::PseudoLimit => write!(f, "PseudoLimit"),
            Classification::Coset(k) => write!(f, "Coset({k})"),
            Classification::Outside(r) => write!(f, "Outside({r})"),
        }
    }
}

/// The values `classify` looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyCertificate {
    pub class: Classification,
    /// `v(α − σ)`.
    pub limit_gap: GroupElement,
    /// The index `k` the verdict refers to, if any.
    pub index: Option<usize>,
    /// `δ_k`.
    pub gauge: Option<LexVec>,
    /// `v(α − s_k)`.
    pub term_gap: Option<GroupElement>,
    /// `v((α − s_k)/c_k)` and `P_k`, when the coset test ran.
    pub scaled_gap: Option<GroupElement>,
    pub prime: Option<PrimeCut>,
}

/// Decide membership of `α` in `Ē` through `d = α − σ`.
///
/// `v(σ − s_n) = δ_n` for every `n`, so `v(α − s_n)` differs from `δ_n`
/// at most where `v(d)` meets the gauge; that leaves one index to examine.
pub fn classify(seq: &PCSeq, alpha: &FieldElement) -> ClassifyCertificate {
    assert_eq!(seq.rank(), alpha.rank(), "rank mismatch in classify");
    let sigma = seq.pseudo_limit();
    let d = alpha - &sigma;
    let limit_gap = d.valuation();
    let mut cert = ClassifyCertificate {
        class: Classification::PseudoLimit,
        limit_gap: limit_gap.clone(),
        index: None,
        gauge: None,
        term_gap: None,
        scaled_gap: None,
        prime: None,
    };
    if seq.breadth().contains_value(&limit_gap) {
        return cert;
    }
    let vd = limit_gap.as_finite().expect("0 ∈ Br(E)").clone();
    let (prefix_gauge, tail_gauge) = seq.gauge_form();
    let on_gauge = prefix_gauge
        .iter()
        .position(|g| *g == vd)
        .or_else(|| tail_gauge.solve(&vd).map(|n| n as usize));
    match on_gauge {
        Some(k) => {
            let delta = seq.gauge_at(k);
            let diff = alpha - &seq.term(k);
            let w = diff.valuation();
            cert.index = Some(k);
            cert.term_gap = Some(w.clone());
            if w > GroupElement::Finite(delta.clone()) {
                let scaled = &diff / &seq.diff(k);
                let prime = seq.coset_prime(k);
                cert.scaled_gap = Some(scaled.valuation());
                cert.prime = Some(prime);
                cert.class = if prime.contains(&scaled) {
                    Classification::Coset(k)
                } else {
                    Classification::Outside(OutsideReason::CosetPrimeFail(k))
                };
            } else {
                cert.class = Classification::Outside(OutsideReason::GaugeMismatch(k));
            }
            cert.gauge = Some(delta);
        }
        None => {
            let k = prefix_gauge
                .iter()
                .position(|g| *g > vd)
                .or_else(|| tail_gauge.first_exceeding(&vd).map(|n| n as usize))
                .expect("α − σ ∉ Br(E) lies below some gauge value");
            cert.index = Some(k);
            cert.gauge = Some(seq.gauge_at(k));
            cert.term_gap = Some(limit_gap);
            cert.class = Classification::Outside(OutsideReason::GaugeUndershoot(k));
        }
    }
    cert
}

pub fn in_closure(seq: &PCSeq, alpha: &FieldElement) -> bool {
    classify(seq, alpha).class.is_member()
}

/// One coset `s_k + c_k·P_k` of the closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPart {
    pub k: usize,
    pub center: FieldElement,
    pub scale: FieldElement,
    pub prime: PrimeCut,
}

impl CosetPart {
    pub fn contains(&self, alpha: &FieldElement) -> bool {
        self.prime
            .contains(&(&(alpha - &self.center) / &self.scale))
    }
}

impl fmt::Display for CosetPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={}: s_k = {}, c_k = {}, {}",
            self.k, self.center, self.scale, self.prime
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    PseudoLimits,
    Coset(usize),
}

/// `Ē = (σ + Br(E)) ∪ ⋃_{k ≥ 0} (s_k + c_k·P_k)`, a disjoint union.
///
/// Cosets with `k < n0` are listed; from `n0` on the prime is the constant
/// `tail_prime` and the coset for any `k` comes from [`Self::coset`].
#[derive(Clone, Debug)]
pub struct ClosureDescription {
    pub sigma: FieldElement,
    pub breadth: Cut,
    pub prefix_cosets: Vec<CosetPart>,
    pub tail_prime: PrimeCut,
    pub tail: GeoTail,
    seq: PCSeq,
}

pub fn closure_describe(seq: &PCSeq) -> ClosureDescription {
    let prefix_cosets = (0..seq.start()).map(|k| coset_part(seq, k)).collect();
    ClosureDescription {
        sigma: seq.pseudo_limit(),
        breadth: seq.breadth(),
        prefix_cosets,
        tail_prime: seq.tail_prime(),
        tail: seq.tail().clone(),
        seq: seq.clone(),
    }
}

fn coset_part(seq: &PCSeq, k: usize) -> CosetPart {
    CosetPart {
        k,
        center: seq.term(k),
        scale: seq.diff(k),
        prime: seq.coset_prime(k),
    }
}

impl ClosureDescription {
    pub fn sequence(&self) -> &PCSeq {
        &self.seq
    }

    pub fn coset(&self, k: usize) -> CosetPart {
        match self.prefix_cosets.get(k) {
            Some(c) => c.clone(),
            None => CosetPart {
                k,
                center: self.seq.term(k),
                scale: self.tail.diff_at(k),
                prime: self.tail_prime,
            },
        }
    }

    pub fn part_contains(&self, part: Part, alpha: &FieldElement) -> bool {
        match part {
            Part::PseudoLimits => self.breadth.contains(&(alpha - &self.sigma)),
            Part::Coset(k) => self.coset(k).contains(alpha),
        }
    }

    /// Every described part containing `α`, scanning cosets `k ≤ horizon`.
    pub fn parts_containing(&self, alpha: &FieldElement, horizon: usize) -> Vec<Part> {
        let terms = self.seq.terms(horizon + 1);
        let mut parts = Vec::new();
        if self.part_contains(Part::PseudoLimits, alpha) {
            parts.push(Part::PseudoLimits);
        }
        for (k, s) in terms.iter().enumerate() {
            let prime = if k < self.prefix_cosets.len() {
                self.prefix_cosets[k].prime
            } else {
                self.tail_prime
            };
            let scaled = &(alpha - s) / &self.seq.diff(k);
            if prime.contains(&scaled) {
                parts.push(Part::Coset(k));
            }
        }
        parts
    }
}
