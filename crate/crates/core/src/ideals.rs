//! Fractional ideals of `V` as up-closed value sets ("cuts"), the prime
//! ideals `P_j`, and the largest prime ideal contained in an ideal.
//!
//! Three shapes are representable:
//!
//! * `Zero`: value set `{∞}`;
//! * `ClosedPrincipal(θ)`: `{γ ≥ θ}`, the ideal `t^θ V`;
//! * `OpenCoset(θ, j)`: `{γ : γ − θ > Δ_j}`, i.e. the first `j`
//!   coordinates of `γ − θ` are lex-positive.
//!
//! `OpenCoset(θ, r)` is `{γ > θ} = {γ ≥ θ + e_r}`, so the canonical form
//! rewrites it as `ClosedPrincipal(θ + e_r)`; for `j < r` the coordinates
//! of `θ` after `j` are zeroed. With both rules, two cuts are equal iff
//! their canonical forms are structurally equal.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lexgroup::{ConvexIndex, GroupElement, LexVec};
use crate::valfield::FieldElement;

#[derive(Clone, Debug)]
pub enum Cut {
    Zero,
    ClosedPrincipal(LexVec),
    OpenCoset { theta: LexVec, j: usize },
}

impl Cut {
    pub fn closed(theta: LexVec) -> Self {
        Cut::ClosedPrincipal(theta)
    }

    pub fn open(theta: LexVec, j: usize) -> Result<Self> {
        let r = theta.rank();
        if !(1..=r).contains(&j) {
            return Err(Error::Precondition(format!(
                "open coset index {j} outside 1..={r}"
            )));
        }
        Ok(Cut::OpenCoset { theta, j }.canonical())
    }

    /// The maximal ideal `M = {γ > 0} = t_r V`.
    pub fn maximal(rank: usize) -> Self {
        Cut::ClosedPrincipal(LexVec::unit(rank, rank))
    }

    /// The valuation ring `V` itself.
    pub fn whole(rank: usize) -> Self {
        Cut::ClosedPrincipal(LexVec::zero(rank))
    }

    pub fn canonical(&self) -> Self {
        match self {
            Cut::OpenCoset { theta, j } if *j == theta.rank() => {
                Cut::ClosedPrincipal(theta + &LexVec::unit(theta.rank(), *j))
            }
            Cut::OpenCoset { theta, j } => Cut::OpenCoset {
                theta: theta.truncate(*j),
                j: *j,
            },
            other => other.clone(),
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            Cut::Zero => None,
            Cut::ClosedPrincipal(t) | Cut::OpenCoset { theta: t, .. } => Some(t.rank()),
        }
    }

    pub fn contains_value(&self, g: &GroupElement) -> bool {
        let g = match g {
            GroupElement::Infinity => return true,
            GroupElement::Finite(g) => g,
        };
        match self {
            Cut::Zero => false,
            Cut::ClosedPrincipal(theta) => g >= theta,
            Cut::OpenCoset { theta, j } => (g - theta).prefix_positive(*j),
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.contains_value(&x.valuation())
    }

    /// Shift the value set by `η` (multiplication by an element of value `η`).
    pub fn shift(&self, eta: &LexVec) -> Self {
        match self {
            Cut::Zero => Cut::Zero,
            Cut::ClosedPrincipal(theta) => Cut::ClosedPrincipal(theta + eta),
            Cut::OpenCoset { theta, j } => Cut::OpenCoset {
                theta: theta + eta,
                j: *j,
            }
            .canonical(),
        }
    }

    /// `x·I` for `x ≠ 0`.
    pub fn scale(&self, x: &FieldElement) -> Result<Self> {
        let v = x.finite_valuation().ok_or(Error::DivisionByZero)?;
        if let Some(r) = self.rank() {
            if r != v.rank() {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: v.rank(),
                });
            }
        }
        Ok(self.shift(&v))
    }

    /// Value-set inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Cut) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        match (&a, &b) {
            (Cut::Zero, _) => true,
            (_, Cut::Zero) => false,
            (Cut::ClosedPrincipal(x), Cut::ClosedPrincipal(y)) => x >= y,
            // a closed set is contained iff its minimum is
            (Cut::ClosedPrincipal(x), _) => b.contains_value(&GroupElement::Finite(x.clone())),
            (Cut::OpenCoset { theta, j }, _) => {
                // Members are the γ whose first j coordinates are ≥ θ + e_j
                // there, with arbitrary remaining coordinates.
                let lower = theta + &LexVec::unit(theta.rank(), *j);
                match &b {
                    Cut::ClosedPrincipal(y) => lower.prefix_cmp(y, *j) == Ordering::Greater,
                    Cut::OpenCoset { theta: phi, j: k } => {
                        let m = (*j).min(*k);
                        lower.prefix_cmp(phi, m) == Ordering::Greater
                    }
                    Cut::Zero => unreachable!(),
                }
            }
        }
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (Cut::Zero, Cut::Zero) => true,
            (Cut::ClosedPrincipal(a), Cut::ClosedPrincipal(b)) => a == b,
            (Cut::OpenCoset { theta: a, j: i }, Cut::OpenCoset { theta: b, j: k }) => {
                a == b && i == k
            }
            _ => false,
        }
    }
}

impl Eq for Cut {}

/// `0`, `>=(a,b)`, `>((a,b) ; j)`.
impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonical() {
            Cut::Zero => write!(f, "0"),
            Cut::ClosedPrincipal(t) => write!(f, ">={t}"),
            Cut::OpenCoset { theta, j } => write!(f, ">({theta} ; {j})"),
        }
    }
}

/// The prime ideal `P_j`: `0` for `j = 0`, else `OpenCoset(0, j)`.
/// `P_r = M`, and `P_j ⊆ P_k` iff `j ≤ k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimeCut {
    pub index: ConvexIndex,
    pub rank: usize,
}

impl PrimeCut {
    pub fn new(j: usize, rank: usize) -> Result<Self> {
        if j > rank {
            return Err(Error::Precondition(format!(
                "prime index {j} exceeds rank {rank}"
            )));
        }
        Ok(PrimeCut {
            index: ConvexIndex(j),
            rank,
        })
    }

    pub fn j(&self) -> usize {
        self.index.0
    }

    pub fn as_cut(&self) -> Cut {
        match self.j() {
            0 => Cut::Zero,
            j => Cut::OpenCoset {
                theta: LexVec::zero(self.rank),
                j,
            }
            .canonical(),
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.as_cut().contains(x)
    }
}

impl fmt::Display for PrimeCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}", self.j())
    }
}

/// The largest prime ideal contained in `I ⊆ M`.
///
/// For `ClosedPrincipal(θ)` it is `P_{ℓ−1}` with `ℓ` the leading index of
/// `θ`, except `I = M` which is itself prime. For `OpenCoset(θ, j)` it is
/// `P_{min(j, ℓ−1)}`, reading `ℓ − 1` as `j` when `θ` normalizes to zero.
pub fn largest_prime_in(ideal: &Cut, rank: usize) -> Result<PrimeCut> {
    if let Some(r) = ideal.rank() {
        if r != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: r,
            });
        }
    }
    if !ideal.is_subset(&Cut::maximal(rank)) {
        return Err(Error::Precondition(format!(
            "ideal {ideal} is not contained in the maximal ideal"
        )));
    }
    let j = match ideal.canonical() {
        Cut::Zero => 0,
        Cut::ClosedPrincipal(theta) if theta == LexVec::unit(rank, rank) => rank,
        Cut::ClosedPrincipal(theta) => theta.leading_index().expect("θ > 0") - 1,
        Cut::OpenCoset { theta, j } => match theta.leading_index() {
            None => j,
            Some(l) => j.min(l - 1),
        },
    };
    PrimeCut::new(j, rank)
}

/// The largest prime ideal strictly contained in `I ⊆ M`: the same as
/// [`largest_prime_in`] unless `I` is itself prime.
pub fn largest_prime_strictly_in(ideal: &Cut, rank: usize) -> Result<PrimeCut> {
    let p = largest_prime_in(ideal, rank)?;
    if p.j() > 0 && p.as_cut() == *ideal {
        PrimeCut::new(p.j() - 1, rank)
    } else {
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Pass,
    /// `x ∉ t^n V` for the monomial `t` with exponent `witness`, `n = power`.
    Fail {
        witness: LexVec,
        power: u32,
    },
}

/// Brute-force form of the largest prime in `I`: `x` belongs iff
/// `v(x) ≥ n·v(t)` for every `t ∈ V \ I` and every `n ≥ 1`.
///
/// `v` is onto ℤʳ, so monomials `t` suffice; this enumerates exponents in
/// `[−B, B]ʳ` that are `≥ 0` and outside `I`, and powers `1..=N`. A `Pass`
/// is only evidence up to those bounds.
#[derive(Clone, Debug)]
pub struct LargestPrimeOracle {
    rank: usize,
    power_bound: u32,
    exponents: Vec<LexVec>,
}

impl LargestPrimeOracle {
    pub fn new(ideal: &Cut, rank: usize, box_bound: i64, power_bound: u32) -> Result<Self> {
        if !ideal.is_subset(&Cut::maximal(rank)) {
            return Err(Error::Precondition(format!(
                "ideal {ideal} is not contained in the maximal ideal"
            )));
        }
        if box_bound < 0 || power_bound == 0 {
            return Err(Error::Precondition("oracle bounds must be positive".into()));
        }
        let mut exponents = Vec::new();
        let mut cur = vec![-box_bound; rank];
        loop {
            let e = LexVec::new(cur.iter().copied());
            if !e.is_negative() && !ideal.contains_value(&GroupElement::Finite(e.clone())) {
                exponents.push(e);
            }
            // odometer increment
            let mut i = rank;
            loop {
                if i == 0 {
                    return Ok(LargestPrimeOracle {
                        rank,
                        power_bound,
                        exponents,
                    });
                }
                i -= 1;
                if cur[i] < box_bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -box_bound;
            }
        }
    }

    pub fn check(&self, x: &FieldElement) -> OracleVerdict {
        self.check_value(&x.valuation())
    }

    /// Least power `n` first, then enumeration order of `t`.
    pub fn check_value(&self, g: &GroupElement) -> OracleVerdict {
        let g = match g {
            GroupElement::Infinity => return OracleVerdict::Pass,
            GroupElement::Finite(g) => g,
        };
        assert_eq!(g.rank(), self.rank, "rank mismatch in prime oracle");
        for n in 1..=self.power_bound {
            let nb = num_bigint::BigInt::from(n);
            for e in &self.exponents {
                if *g < e.scale(&nb) {
                    return OracleVerdict::Fail {
                        witness: e.clone(),
                        power: n,
                    };
                }
            }
        }
        OracleVerdict::Pass
    }
}
