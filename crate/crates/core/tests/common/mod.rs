//! Seeded random generators shared by the acceptance and property suites,
//! plus a few reference computations that avoid the library's shortcuts.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use pclosure::ideals::{Cut, PrimeCut};
use pclosure::lexgroup::{GroupElement, LexVec};
use pclosure::pcvseq::{GeoTail, PCSeq};
use pclosure::valfield::{FieldElement, MPoly};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lv(c: &[i64]) -> LexVec {
    LexVec::new(c.iter().copied())
}

pub fn coords(v: &LexVec) -> Vec<i64> {
    v.coords()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}

pub fn small_rational(rng: &mut impl Rng) -> BigRational {
    let (n, d) = *[
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-3, 2),
        (3, 1),
        (5, 3),
    ]
    .choose(rng)
    .unwrap();
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rand_vec(rng: &mut impl Rng, rank: usize, lo: i64, hi: i64) -> LexVec {
    LexVec::new((0..rank).map(|_| rng.gen_range(lo..=hi)))
}

/// A random `γ > 0` with small coordinates.
pub fn rand_positive(rng: &mut impl Rng, rank: usize) -> LexVec {
    let lead = rng.gen_range(0..rank);
    let mut c = vec![0i64; rank];
    c[lead] = rng.gen_range(1..=2);
    for x in c.iter_mut().skip(lead + 1) {
        *x = rng.gen_range(-2..=2);
    }
    lv(&c)
}

pub fn mono(c: BigRational, e: &LexVec) -> FieldElement {
    FieldElement::mono(c, e).unwrap()
}

pub fn t_pow(e: &LexVec) -> FieldElement {
    FieldElement::t_pow(e).unwrap()
}

/// `c·t^γ` times `1 + (a higher monomial)` half of the time.
pub fn rand_with_value(rng: &mut impl Rng, gamma: &LexVec) -> FieldElement {
    let rank = gamma.rank();
    let lead = mono(small_rational(rng), gamma);
    if rng.gen_bool(0.5) {
        let higher = mono(small_rational(rng), &rand_positive(rng, rank));
        &lead * &(&FieldElement::one(rank) + &higher)
    } else {
        lead
    }
}

/// A sum of a few random Laurent monomials.
pub fn rand_element(rng: &mut impl Rng, rank: usize, terms: usize, span: i64) -> FieldElement {
    (0..terms).fold(FieldElement::zero(rank), |acc, _| {
        &acc + &mono(small_rational(rng), &rand_vec(rng, rank, -span, span))
    })
}

/// A random element of `V` or, sometimes, a rational function in `V`.
pub fn rand_field_element(rng: &mut impl Rng, rank: usize) -> FieldElement {
    let terms = rng.gen_range(0..=3);
    let num = rand_element(rng, rank, terms, 3);
    if rng.gen_bool(0.3) {
        let terms = rng.gen_range(1..=2);
        let den = rand_element(rng, rank, terms, 2);
        if den.is_zero() {
            num
        } else {
            &num / &den
        }
    } else {
        num
    }
}

/// A pseudo-convergent sequence with 0–2 explicit prefix steps and a
/// geometric tail, all exponents small.
pub fn rand_sequence(rng: &mut impl Rng, rank: usize) -> PCSeq {
    let extra = rng.gen_range(0..=2);
    let terms = rng.gen_range(0..=2);
    let s0 = rand_element(rng, rank, terms, 2);
    let mut prefix = vec![s0];
    let mut gauge = rand_vec(rng, rank, -2, 1);
    for _ in 0..extra {
        let step = rand_with_value(rng, &gauge);
        let next = prefix.last().unwrap() + &step;
        prefix.push(next);
        gauge = &gauge + &rand_positive(rng, rank);
    }
    let n0 = prefix.len() - 1;
    let b = rand_positive(rng, rank);
    // δ_{n0} = v(u) + n0·b must be `gauge`
    let vu = &gauge - &b.scale(&BigInt::from(n0));
    let u = rand_with_value(rng, &vu);
    PCSeq::new(prefix, GeoTail::new(u, b, n0)).expect("generated sequence is pseudo-convergent")
}

/// Independent lex comparison of plain coordinate vectors.
pub fn lex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn lex_min_exponent(p: &MPoly) -> Option<Vec<i64>> {
    p.terms()
        .map(|(e, _)| e.iter().map(|&x| i64::from(x)).collect::<Vec<_>>())
        .min_by(|a, b| lex_cmp(a, b))
}

/// `v(x)` recomputed by scanning every term of numerator and denominator.
pub fn reference_valuation(x: &FieldElement) -> Option<Vec<i64>> {
    let n = lex_min_exponent(x.numer())?;
    let d = lex_min_exponent(x.denom()).expect("nonzero denominator");
    Some(n.iter().zip(&d).map(|(a, b)| a - b).collect())
}

/// Is `γ` in `P_j`, i.e. are its first `j` coordinates lex-positive?
pub fn in_prime_ref(gamma: &[i64], j: usize) -> bool {
    lex_cmp(&gamma[..j], &vec![0; j]) == Ordering::Greater
}

/// A random exponent in `P_j` (`None` when `j = 0`).
pub fn rand_in_prime(rng: &mut impl Rng, rank: usize, j: usize) -> Option<LexVec> {
    if j == 0 {
        return None;
    }
    let lead = rng.gen_range(0..j);
    let mut c = vec![0i64; rank];
    c[lead] = rng.gen_range(1..=2);
    for x in c.iter_mut().skip(lead + 1) {
        *x = rng.gen_range(-3..=3);
    }
    Some(lv(&c))
}

/// A random exponent in `M \ P_j`.
pub fn rand_outside_prime(rng: &mut impl Rng, rank: usize, j: usize) -> Option<LexVec> {
    if j >= rank {
        return None;
    }
    let lead = rng.gen_range(j..rank);
    let mut c = vec![0i64; rank];
    c[lead] = rng.gen_range(1..=2);
    for x in c.iter_mut().skip(lead + 1) {
        *x = rng.gen_range(-2..=2);
    }
    Some(lv(&c))
}

/// A random exponent in the cut (when it has any finite value).
pub fn rand_in_cut(rng: &mut impl Rng, cut: &Cut, rank: usize) -> Option<LexVec> {
    match cut.canonical() {
        Cut::Zero => None,
        Cut::ClosedPrincipal(theta) => Some(&theta + &rand_nonneg(rng, rank)),
        Cut::OpenCoset { theta, j } => {
            let shift = rand_in_prime(rng, rank, j).expect("j ≥ 1 for an open coset");
            Some(&theta + &shift)
        }
    }
}

/// A random `γ ≥ 0`.
pub fn rand_nonneg(rng: &mut impl Rng, rank: usize) -> LexVec {
    if rng.gen_bool(0.2) {
        LexVec::zero(rank)
    } else {
        rand_positive(rng, rank)
    }
}

pub fn prime_of(seq: &PCSeq, k: usize) -> PrimeCut {
    if k < seq.start() {
        seq.coset_prime(k)
    } else {
        seq.tail_prime()
    }
}

pub fn finite(g: &GroupElement) -> Vec<i64> {
    coords(g.as_finite().expect("finite valuation"))
}

/// A random cut `I ⊊ M` of one of the three shapes.
pub fn rand_cut_in_m(rng: &mut impl Rng, rank: usize) -> Cut {
    loop {
        let cut = match rng.gen_range(0..3) {
            0 => Cut::Zero,
            1 => Cut::closed(rand_vec(rng, rank, -1, 3)),
            _ => match Cut::open(rand_vec(rng, rank, -1, 3), rng.gen_range(1..=rank)) {
                Ok(c) => c,
                Err(_) => continue,
            },
        };
        let m = Cut::maximal(rank);
        if cut.is_subset(&m) && cut != m {
            return cut;
        }
    }
}
