//! Exact arithmetic in `K = ℚ(t1,…,tr)` with the lexicographic monomial
//! valuation `v: K* → ℤʳ`.

mod field;
mod kpoly;
mod mpoly;

pub use field::{lexvec_from_i64, FieldElement};
pub use kpoly::KPoly;
pub use mpoly::{Exponent, MPoly};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lexgroup::LexVec;

/// Ranges at most this long are summed term by term.
const DIRECT_SUM_LIMIT: u64 = 64;

/// `Σ_{i=n0}^{n-1} u·t^{i·b} = u·(t^{n0·b} − t^{n·b}) / (1 − t^b)` for `b > 0`.
///
/// Short ranges are summed directly, which gives a Laurent polynomial
/// without the `1 − t^b` denominator; longer ones use the closed form. The
/// two agree as elements of `K`.
pub fn geo_sum(u: &FieldElement, b: &LexVec, n0: u64, n: u64) -> Result<FieldElement> {
    if u.is_zero() {
        return Err(Error::Precondition("geometric sum needs u ≠ 0".into()));
    }
    if !b.is_positive() {
        return Err(Error::Precondition(format!(
            "geometric ratio exponent {b} is not > 0"
        )));
    }
    if n < n0 {
        return Err(Error::Precondition(format!(
            "upper index {n} below start {n0}"
        )));
    }
    u.check_rank(&FieldElement::zero(b.rank()))?;
    if n == n0 {
        return Ok(FieldElement::zero(u.rank()));
    }
    if n - n0 <= DIRECT_SUM_LIMIT {
        let mut acc = FieldElement::zero(u.rank());
        for i in n0..n {
            acc = &acc + &FieldElement::t_pow(&b.scale(&BigInt::from(i)))?;
        }
        return Ok(&acc * u);
    }
    geo_sum_closed(u, b, n0, n)
}

/// The closed form of [`geo_sum`], always through `1 − t^b`.
pub fn geo_sum_closed(u: &FieldElement, b: &LexVec, n0: u64, n: u64) -> Result<FieldElement> {
    let rank = u.rank();
    let one = FieldElement::one(rank);
    let tb = FieldElement::t_pow(b)?;
    let lo = FieldElement::t_pow(&b.scale(&BigInt::from(n0)))?;
    let hi = FieldElement::t_pow(&b.scale(&BigInt::from(n)))?;
    let ratio = (&lo - &hi).checked_div(&(&one - &tb))?;
    Ok(&ratio * u)
}
