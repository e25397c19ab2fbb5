use std::fmt;

use super::field::FieldElement;

/// A polynomial in `X` with coefficients in `K`, lowest degree first.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    rank: usize,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn zero(rank: usize) -> Self {
        KPoly {
            rank,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let rank = c.rank();
        Self::new(rank, vec![c])
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(FieldElement::one(rank))
    }

    /// The indeterminate `X`.
    pub fn x(rank: usize) -> Self {
        Self::new(
            rank,
            vec![FieldElement::zero(rank), FieldElement::one(rank)],
        )
    }

    /// `X − a`.
    pub fn linear_root(a: &FieldElement) -> Self {
        let rank = a.rank();
        Self::new(rank, vec![-a, FieldElement::one(rank)])
    }

    pub fn new(rank: usize, coeffs: Vec<FieldElement>) -> Self {
        for c in &coeffs {
            assert_eq!(c.rank(), rank, "rank mismatch in K[X]");
        }
        let mut p = KPoly { rank, coeffs };
        p.trim();
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.rank))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.coeffs.len() {
            0 => Some(FieldElement::zero(self.rank)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.rank);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::new(self.rank, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        KPoly {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.rank);
        }
        let mut coeffs =
            vec![FieldElement::zero(self.rank); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::new(self.rank, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.rank, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }
}

/// `c0 + (c1)*X + (c2)*X^2 …`, zero coefficients omitted.
impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 if c.is_one() => write!(f, "X")?,
                1 => write!(f, "({c})*X")?,
                _ if c.is_one() => write!(f, "X^{i}")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}
