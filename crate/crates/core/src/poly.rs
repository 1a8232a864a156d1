//! Dense univariate polynomials with exact `i64` coefficients.
//!
//! All arithmetic is checked; overflow surfaces as [`Error::Overflow`]
//! instead of wrapping.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// `coeffs[k]` is the coefficient of `x^k`. The last stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: impl Into<Vec<i64>>) -> Self {
        let mut p = Poly { coeffs: coeffs.into() };
        p.canonicalize();
        p
    }

    pub fn canonicalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (k, c) in short.iter().enumerate() {
            out[k] = out[k]
                .checked_add(*c)
                .ok_or_else(|| Error::Overflow(format!("polynomial addition at x^{k}")))?;
        }
        Ok(Poly::from_coeffs(out))
    }

    /// Multiplication by `x`.
    pub fn shift_mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0);
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, c| {
            acc.checked_add(*c)
                .ok_or_else(|| Error::Overflow("polynomial evaluation at x = 1".into()))
        })
    }

    /// Adds `c * x^k` in place.
    pub fn add_term(&mut self, c: i64, k: usize) -> Result<()> {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, 0);
        }
        self.coeffs[k] = self.coeffs[k]
            .checked_add(c)
            .ok_or_else(|| Error::Overflow(format!("polynomial term x^{k}")))?;
        self.canonicalize();
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(Poly::from_coeffs)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Ascending powers, e.g. `2 + 3*x + x^2`; the zero polynomial prints `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("x")?,
                (1, m) => write!(f, "{m}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, m) => write!(f, "{m}*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
