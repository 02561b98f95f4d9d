//! Dense polynomials in monomial form.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so equality of canonical forms is equality of polynomials. Differentiation
//! and the lattice shifts `p(x) -> p(x ± 1)` are coefficient transforms; no
//! numerical differencing happens anywhere in the crate.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![T::zero(), T::one()])
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, c: &T) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly<T>) -> Poly<T> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Multiplies by the monomial `x`.
    pub fn mul_x(&self) -> Poly<T> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `p(x + delta)` by Horner-style recomposition; exact in rational mode.
    pub fn compose_shift(&self, delta: &T) -> Poly<T> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (x + delta) + c
            acc = acc.mul_x().add(&acc.scale(delta)).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Forward difference on the unit lattice: `p(x+1) - p(x)`.
    pub fn forward_diff(&self) -> Poly<T> {
        self.compose_shift(&T::one()).sub(self)
    }

    /// Backward difference on the unit lattice: `p(x) - p(x-1)`.
    pub fn backward_diff(&self) -> Poly<T> {
        self.sub(&self.compose_shift(&(-T::one())))
    }

    /// Casts coefficients to `f64`.
    pub fn to_f64(&self) -> Poly<f64> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}
