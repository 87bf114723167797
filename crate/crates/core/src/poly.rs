//! Polynomials in the loop variable `a` with exact non-negative coefficients.
//!
//! The coefficient of `a^k` counts drawings with `k` closed curves, so every
//! coefficient is a count. Arithmetic is checked: an overflow is reported as
//! [`Error::Overflow`] instead of wrapping.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Exact count type used for every coefficient.
pub type Count = u128;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopPoly {
    // coeffs[k] is the coefficient of a^k; never ends in a zero
    coeffs: Vec<Count>,
}

impl LoopPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Count) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * a^k`.
    pub fn monomial(k: usize, c: Count) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `a^k`.
    pub fn a_pow(k: usize) -> Self {
        Self::monomial(k, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Count>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Count] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `a^k` (zero past the degree).
    pub fn coefficient(&self, k: usize) -> Count {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (lhs, rhs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *lhs = lhs.checked_add(*rhs).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    /// Multiplies by `a`; used when a loop closes.
    pub fn shift_by_a(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: Count) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|x| x.checked_mul(c).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0 as Count; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                let term = x.checked_mul(*y).ok_or(Error::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Evaluates at an integer point with Horner's rule.
    pub fn eval(&self, a: Count) -> Result<Count> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0 as Count, |acc, c| acc.checked_mul(a).and_then(|v| v.checked_add(*c)).ok_or(Error::Overflow))
    }

    /// Sum of all coefficients, i.e. the value at `a = 1`.
    pub fn total(&self) -> Result<Count> {
        self.eval(1)
    }

    /// Drops every term of degree one or more.
    pub fn truncate_a0(&self) -> Self {
        Self::constant(self.coefficient(0))
    }
}

impl fmt::Display for LoopPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, *c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("a")?,
                (1, c) => write!(f, "{c}a")?,
                (k, 1) => write!(f, "a^{k}")?,
                (k, c) => write!(f, "{c}a^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LoopPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn add_and_shift() {
        let sum = LoopPoly::a_pow(3).add(&LoopPoly::a_pow(1)).unwrap();
        assert_eq!(sum.coeffs(), &[0, 1, 0, 1]);
        assert_eq!(sum.to_string(), "a + a^3");
        assert_eq!(LoopPoly::one().shift_by_a(), LoopPoly::a_pow(1));
        assert_eq!(LoopPoly::zero().shift_by_a(), LoopPoly::zero());
    }

    #[test]
    fn canonical_form_has_no_trailing_zeros() {
        let p = LoopPoly::from_coeffs(vec![0, 2, 0, 0]);
        assert_eq!(p.coeffs(), &[0, 2]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(LoopPoly::from_coeffs(vec![0, 0]), LoopPoly::zero());
        assert_eq!(LoopPoly::monomial(4, 0), LoopPoly::zero());
    }

    #[test]
    fn coefficient_past_degree_is_zero() {
        let p = LoopPoly::monomial(2, 7);
        assert_eq!(p.coefficient(2), 7);
        assert_eq!(p.coefficient(1), 0);
        assert_eq!(p.coefficient(50), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let big = LoopPoly::constant(Count::MAX);
        assert_eq!(big.add(&LoopPoly::one()), Err(Error::Overflow));
        assert_eq!(big.scale(2), Err(Error::Overflow));
        assert_eq!(big.mul(&LoopPoly::constant(3)), Err(Error::Overflow));
        assert_eq!(LoopPoly::monomial(2, 1 << 70).eval(1 << 30), Err(Error::Overflow));
    }

    #[test]
    fn display() {
        let p = LoopPoly::from_coeffs(vec![3, 1, 0, 12]);
        assert_eq!(p.to_string(), "3 + a + 12a^3");
        assert_eq!(LoopPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = LoopPoly> {
        proptest::collection::vec(0u128..1000, 0..6).prop_map(LoopPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn eval_is_a_ring_homomorphism(p in small_poly(), q in small_poly(), a in 0u128..5) {
            let sum = p.add(&q).unwrap();
            let prod = p.mul(&q).unwrap();
            prop_assert_eq!(sum.eval(a).unwrap(), p.eval(a).unwrap() + q.eval(a).unwrap());
            prop_assert_eq!(prod.eval(a).unwrap(), p.eval(a).unwrap() * q.eval(a).unwrap());
            prop_assert_eq!(p.shift_by_a().eval(a).unwrap(), a * p.eval(a).unwrap());
        }
    }
}
