use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mpoly::{Exponent, MPoly};
use crate::error::{Error, Result};
use crate::lexgroup::{GroupElement, LexVec};

/// Above this many terms we skip the exact-division attempt in
/// normalization.
const EXACT_DIV_LIMIT: usize = 4096;

/// An element of `K = ℚ(t1,…,tr)` stored as `num / den`.
///
/// Normalization only cancels the common monomial factor, rational
/// content, proportional pairs and exact polynomial quotients; there is no
/// multivariate gcd, so equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct FieldElement {
    num: MPoly,
    den: MPoly,
}

impl FieldElement {
    pub fn zero(rank: usize) -> Self {
        FieldElement {
            num: MPoly::zero(rank),
            den: MPoly::one(rank),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(MPoly::one(rank))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let rank = p.rank();
        FieldElement {
            num: p,
            den: MPoly::one(rank),
        }
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(rank, c))
    }

    pub fn from_int(rank: usize, n: i64) -> Self {
        Self::constant(rank, BigRational::from_integer(n.into()))
    }

    /// The variable `t_i`, 1-based.
    pub fn var(rank: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(rank, i))
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if num.rank() != den.rank() {
            return Err(Error::RankMismatch {
                expected: num.rank(),
                found: den.rank(),
            });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    /// The Laurent monomial `c·t^e`; `e` may have negative entries.
    pub fn mono(c: BigRational, e: &LexVec) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Precondition(
                "monomial coefficient must be nonzero".into(),
            ));
        }
        let rank = e.rank();
        let mut pos: Exponent = vec![0; rank];
        let mut neg: Exponent = vec![0; rank];
        for (i, x) in e.coords().iter().enumerate() {
            let m = x
                .abs()
                .to_u32()
                .ok_or_else(|| Error::Precondition(format!("exponent {x} out of range")))?;
            if x.is_negative() {
                neg[i] = m;
            } else {
                pos[i] = m;
            }
        }
        Ok(FieldElement {
            num: MPoly::monomial(rank, c, pos),
            den: MPoly::monomial(rank, BigRational::one(), neg),
        })
    }

    /// `t^e` with coefficient 1.
    pub fn t_pow(e: &LexVec) -> Result<Self> {
        Self::mono(BigRational::one(), e)
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.ratio_to(&self.den).is_some_and(|c| c.is_one())
    }

    /// The constant value if `self ∈ ℚ`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// `v(x) = v(num) − v(den)`, with `v` of a polynomial its lex-minimal
    /// exponent; `v(0) = Infinity`.
    pub fn valuation(&self) -> GroupElement {
        match (self.num.order(), self.den.order()) {
            (Some(n), Some(d)) => GroupElement::Finite(&n - &d),
            _ => GroupElement::Infinity,
        }
    }

    /// Valuation of a nonzero element; `None` for zero.
    pub fn finite_valuation(&self) -> Option<LexVec> {
        match self.valuation() {
            GroupElement::Finite(v) => Some(v),
            GroupElement::Infinity => None,
        }
    }

    pub fn in_v(&self) -> bool {
        self.finite_valuation().is_none_or(|v| !v.is_negative())
    }

    pub fn in_m(&self) -> bool {
        self.finite_valuation().is_none_or(|v| v.is_positive())
    }

    pub fn is_unit(&self) -> bool {
        self.finite_valuation().is_some_and(|v| v.is_zero())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self * other)
    }

    /// `x^n`; negative `n` requires `x ≠ 0`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(n.unsigned_abs())
            .map_err(|_| Error::Precondition(format!("exponent {n} out of range")))?;
        Ok(Self::normalized(base.num.pow(e), base.den.pow(e)))
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

    fn normalized(num: MPoly, den: MPoly) -> Self {
        debug_assert!(!den.is_zero());
        let rank = num.rank();
        if num.is_zero() {
            return Self::zero(rank);
        }
        if let Some(c) = num.ratio_to(&den) {
            return Self::constant(rank, c);
        }
        let (mut num, mut den) = (num, den);
        let m: Exponent = {
            let a = num.min_exponent().expect("nonzero");
            let b = den.min_exponent().expect("nonzero");
            a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect()
        };
        if m.iter().any(|&x| x > 0) {
            num = num.shift_down(&m);
            den = den.shift_down(&m);
        }
        if !den.is_monomial() && num.len() <= EXACT_DIV_LIMIT && den.len() <= EXACT_DIV_LIMIT {
            // Compare the parts left after pulling out each side's own
            // monomial factor, so that `p·g / (t^k·g)` still cancels `g`.
            let mn = num.min_exponent().expect("nonzero");
            let md = den.min_exponent().expect("nonzero");
            let (n0, d0) = (num.shift_down(&mn), den.shift_down(&md));
            let mono = |e: Exponent| MPoly::monomial(rank, BigRational::one(), e);
            if let Some(q) = exact_div(&n0, &d0) {
                num = q.shift_up(&mn);
                den = mono(md);
            } else if let Some(q) = (!n0.is_monomial()).then(|| exact_div(&d0, &n0)).flatten() {
                den = q.shift_up(&md);
                num = mono(mn);
            }
        }
        let cn = num.content();
        let cd = den.content();
        let mut scale = &cd.recip() * &cn;
        let lead_sign_neg = den
            .lowest_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let mut num = num.scale(&cn.recip());
        let mut den = den.scale(&cd.recip());
        if lead_sign_neg {
            den = -&den;
            scale = -scale;
        }
        num = num.scale(&scale);
        // Keep a constant denominator equal to 1.
        if let Some(c) = den.as_constant() {
            num = num.scale(&c.recip());
            den = MPoly::one(rank);
        }
        FieldElement { num, den }
    }
}

/// `Some(a / b)` when `b` divides `a` exactly, by lex-leading-term
/// reduction (terminates because lex is a well-order on exponents).
fn exact_div(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let rank = a.rank();
    if !divisibility_plausible(a, b) {
        return None;
    }
    let (lb_exp, lb_coef) = b.terms().last()?;
    let (lb_exp, lb_coef) = (lb_exp.clone(), lb_coef.clone());
    let mut rem = a.clone();
    let mut quot = MPoly::zero(rank);
    let mut steps = 0usize;
    while let Some((le, lc)) = rem.terms().last() {
        steps += 1;
        if steps > 4 * EXACT_DIV_LIMIT {
            return None;
        }
        if le.iter().zip(&lb_exp).any(|(x, y)| x < y) {
            return None;
        }
        let e: Exponent = le.iter().zip(&lb_exp).map(|(x, y)| x - y).collect();
        let c = lc / &lb_coef;
        let t = MPoly::monomial(rank, c, e);
        rem = &rem - &(&t * b);
        quot = &quot + &t;
    }
    Some(quot)
}

/// Necessary conditions for `b | a`: lowest and highest terms divide, and
/// per-variable degree ranges fit.
fn divisibility_plausible(a: &MPoly, b: &MPoly) -> bool {
    if a.is_monomial() && !b.is_monomial() {
        return false;
    }
    let fits = |x: &[u32], y: &[u32]| x.iter().zip(y).all(|(p, q)| p >= q);
    let ends = |p: &MPoly| {
        (
            p.terms().next().map(|(e, _)| e.clone()),
            p.terms().last().map(|(e, _)| e.clone()),
        )
    };
    let ((alo, ahi), (blo, bhi)) = (ends(a), ends(b));
    let (Some(alo), Some(ahi), Some(blo), Some(bhi)) = (alo, ahi, blo, bhi) else {
        return false;
    };
    if !fits(&alo, &blo) || !fits(&ahi, &bhi) {
        return false;
    }
    let (amin, amax) = (a.min_exponent().unwrap(), a.max_exponent().unwrap());
    let (bmin, bmax) = (b.min_exponent().unwrap(), b.max_exponent().unwrap());
    fits(&amin, &bmin)
        && fits(&amax, &bmax)
        && amax
            .iter()
            .zip(&amin)
            .zip(bmax.iter().zip(&bmin))
            .all(|((ah, al), (bh, bl))| ah - al >= bh - bl)
}

/// A common denominator for `a/da + b/db`: the larger one when one divides
/// the other, the product otherwise. Returns `(den, fa, fb)` with
/// `den = da·fa = db·fb`.
fn common_den(da: &MPoly, db: &MPoly) -> (MPoly, MPoly, MPoly) {
    let rank = da.rank();
    if da == db {
        return (da.clone(), MPoly::one(rank), MPoly::one(rank));
    }
    if !da.is_monomial() && !db.is_monomial() {
        if db.len() >= da.len() {
            if let Some(q) = exact_div(db, da) {
                return (db.clone(), q, MPoly::one(rank));
            }
        } else if let Some(q) = exact_div(da, db) {
            return (da.clone(), MPoly::one(rank), q);
        }
    }
    (da * db, db.clone(), da.clone())
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for FieldElement {}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let (den, fa, fb) = common_den(&self.den, &rhs.den);
        FieldElement::normalized(&(&self.num * &fa) + &(&rhs.num * &fb), den)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let (den, fa, fb) = common_den(&self.den, &rhs.den);
        FieldElement::normalized(&(&self.num * &fa) - &(&rhs.num * &fb), den)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero(self.rank());
        }
        FieldElement::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; see [`FieldElement::checked_div`].
impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in K")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let simple_den = self.den.is_monomial()
            && self
                .den
                .terms()
                .all(|(e, c)| c.is_one() && e.iter().filter(|&&x| x > 0).count() == 1);
        if simple_den {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

/// Convenience for building elements from `BigInt` exponents in tests and
/// the parser.
pub fn lexvec_from_i64(e: &[i64]) -> LexVec {
    LexVec::new(e.iter().map(|&x| BigInt::from(x)))
}
