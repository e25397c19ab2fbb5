use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lexgroup::LexVec;

pub type Exponent = Vec<u32>;

/// A polynomial in `t1..tr` with rational coefficients.
///
/// Terms are keyed by exponent vector; `BTreeMap` iterates keys in lex
/// order, so the first key is the lex-minimal exponent of the support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    rank: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MPoly {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        MPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        Self::monomial(rank, c, vec![0; rank])
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigRational::one())
    }

    pub fn monomial(rank: usize, c: BigRational, exp: Exponent) -> Self {
        assert_eq!(exp.len(), rank, "exponent length must equal the rank");
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `t_i`, 1-based.
    pub fn var(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i));
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        Self::monomial(rank, BigRational::one(), e)
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent length must equal the rank");
            p.add_term(e, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if this polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Lex-minimal term of the support; this is the initial term for the
    /// valuation.
    pub fn lowest_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next()
    }

    /// The valuation of a nonzero polynomial: its lex-minimal exponent.
    pub fn order(&self) -> Option<LexVec> {
        self.lowest_term()
            .map(|(e, _)| LexVec::new(e.iter().map(|&x| BigInt::from(x))))
    }

    /// Componentwise minimum of the exponents in the support.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
            acc
        }))
    }

    /// Componentwise maximum of the exponents.
    pub fn max_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
            acc
        }))
    }

    /// Divide every exponent by `t^e`; `e` must be ≤ every exponent.
    pub fn shift_down(&self, e: &[u32]) -> Self {
        MPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn shift_up(&self, e: &[u32]) -> Self {
        MPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let exp = k
                        .iter()
                        .zip(e)
                        .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                        .collect();
                    (exp, c.clone())
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        MPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num, den)
        }
    }

    /// `Some(c)` with `self = c·other`, when the two are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        if self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let mut ratio: Option<BigRational> = None;
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(&other.terms) {
            if e1 != e2 {
                return None;
            }
            let r = c1 / c2;
            match &ratio {
                Some(q) if *q != r => return None,
                Some(_) => {}
                None => ratio = Some(r),
            }
        }
        ratio
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.rank);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_rank(&self, other: &Self) {
        assert_eq!(self.rank, other.rank, "rank mismatch in polynomial ring");
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.assert_rank(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.assert_rank(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.assert_rank(rhs);
        let mut out = MPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1
                    .iter()
                    .zip(e2)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Terms in lex-increasing exponent order: `-t2 + t2^2 + 3/2*t1`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| {
                    if x == 1 {
                        format!("t{}", j + 1)
                    } else {
                        format!("t{}^{}", j + 1, x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}
