//! Family catalog: the defining data of the four polynomial families.
//!
//! A [`Family`] holds the coefficients of the hypergeometric-type equation
//! `sigma y'' + tau y' + lambda_n y = 0` (or its forward/backward difference
//! analog on the unit lattice), the family parameters, and everything that
//! derives from them: eigenvalues, shifted tau, three-term recurrence
//! coefficients, weights, and squared norms.
//!
//! Families:
//! - Hermite: `sigma = 1`, `tau = -2s`, weight `exp(-s^2)` on the real line.
//! - Laguerre(alpha): `sigma = s`, `tau = 1 + alpha - s`, weight
//!   `s^alpha exp(-s)` on `(0, inf)`.
//! - Kravchuk(p, N): `sigma = x`, `tau = (Np - x)/q`, binomial weight
//!   `C(N,x) p^x q^(N-x)` on `{0, ..., N}`.
//! - Meixner(gamma, mu): `sigma = x`, `tau = gamma mu - x(1 - mu)`, weight
//!   `mu^x (gamma)_x / x!` on `{0, 1, 2, ...}` (total mass `(1-mu)^-gamma`,
//!   not renormalized, so the standard squared norms hold verbatim).

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::special;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Hermite,
    Laguerre,
    Kravchuk,
    Meixner,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyName::Hermite => "hermite",
            FamilyName::Laguerre => "laguerre",
            FamilyName::Kravchuk => "kravchuk",
            FamilyName::Meixner => "meixner",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Continuous,
    Discrete,
}

/// Where the orthogonality measure lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    RealLine,
    PositiveReals,
    /// Integers `0 ..= max`.
    FiniteLattice { max: i64 },
    /// Integers `0, 1, 2, ...`
    Lattice,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params<T: Scalar> {
    Hermite,
    Laguerre { alpha: T },
    Kravchuk { p: T, size: i64 },
    Meixner { gamma: T, mu: T },
}

/// Three-term recurrence coefficients in
/// `x P_n = alpha_n P_{n+1} + beta_n P_n + gamma_n P_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recurrence<T: Scalar> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family<T: Scalar> {
    name: FamilyName,
    params: Params<T>,
    sigma: Poly<T>,
    tau: Poly<T>,
}

impl<T: Scalar> Family<T> {
    /// Hermite: `H'' - 2s H' + 2n H = 0`.
    pub fn hermite() -> Self {
        Family {
            name: FamilyName::Hermite,
            params: Params::Hermite,
            sigma: Poly::one(),
            tau: Poly::from_coeffs(vec![T::zero(), T::from_int(-2)]),
        }
    }

    /// Laguerre: `s L'' + (1 + alpha - s) L' + n L = 0`, requires `alpha > -1`.
    pub fn laguerre(alpha: T) -> Result<Self> {
        if !(alpha.clone() + T::one()).is_positive() {
            return Err(Error::InvalidParameter(format!(
                "laguerre alpha must exceed -1, got {alpha}"
            )));
        }
        Ok(Family {
            name: FamilyName::Laguerre,
            params: Params::Laguerre { alpha: alpha.clone() },
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![T::one() + alpha, T::from_int(-1)]),
        })
    }

    /// Kravchuk: `sigma = x`, `tau = (Np - x)/q`; requires `0 < p < 1`, `N >= 1`.
    pub fn kravchuk(p: T, size: i64) -> Result<Self> {
        if !p.is_positive() || !(T::one() - p.clone()).is_positive() {
            return Err(Error::InvalidParameter(format!(
                "kravchuk p must lie in (0,1), got {p}"
            )));
        }
        if size < 1 {
            return Err(Error::InvalidParameter(format!(
                "kravchuk N must be a positive integer, got {size}"
            )));
        }
        let q = T::one() - p.clone();
        let np_over_q = T::from_int(size) * p.clone() / q.clone();
        let inv_q = T::one() / q;
        Ok(Family {
            name: FamilyName::Kravchuk,
            params: Params::Kravchuk { p, size },
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![np_over_q, -inv_q]),
        })
    }

    /// Meixner: `sigma = x`, `tau = gamma mu - x(1 - mu)`; requires
    /// `gamma > 0`, `0 < mu < 1`.
    pub fn meixner(gamma: T, mu: T) -> Result<Self> {
        if !gamma.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "meixner gamma must be positive, got {gamma}"
            )));
        }
        if !mu.is_positive() || !(T::one() - mu.clone()).is_positive() {
            return Err(Error::InvalidParameter(format!(
                "meixner mu must lie in (0,1), got {mu}"
            )));
        }
        Ok(Family {
            name: FamilyName::Meixner,
            params: Params::Meixner { gamma: gamma.clone(), mu: mu.clone() },
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![gamma * mu.clone(), mu - T::one()]),
        })
    }

    pub fn name(&self) -> FamilyName {
        self.name
    }

    pub fn params(&self) -> &Params<T> {
        &self.params
    }

    pub fn kind(&self) -> Kind {
        match self.name {
            FamilyName::Hermite | FamilyName::Laguerre => Kind::Continuous,
            FamilyName::Kravchuk | FamilyName::Meixner => Kind::Discrete,
        }
    }

    pub fn support(&self) -> Support {
        match &self.params {
            Params::Hermite => Support::RealLine,
            Params::Laguerre { .. } => Support::PositiveReals,
            Params::Kravchuk { size, .. } => Support::FiniteLattice { max: *size },
            Params::Meixner { .. } => Support::Lattice,
        }
    }

    /// Largest degree with meaningful orthogonality claims (`N` for Kravchuk).
    pub fn max_degree(&self) -> Option<usize> {
        match self.support() {
            Support::FiniteLattice { max } => Some(max as usize),
            _ => None,
        }
    }

    pub fn in_support(&self, x: i64) -> bool {
        match self.support() {
            Support::FiniteLattice { max } => (0..=max).contains(&x),
            Support::Lattice => x >= 0,
            _ => false,
        }
    }

    pub fn sigma(&self) -> &Poly<T> {
        &self.sigma
    }

    pub fn tau(&self) -> &Poly<T> {
        &self.tau
    }

    /// `tau'` (for lattice families this equals the forward difference of tau).
    pub fn tau_prime(&self) -> T {
        self.tau.coeff(1)
    }

    /// `sigma''` (equals the second lattice difference of sigma).
    pub fn sigma_second(&self) -> T {
        self.sigma.coeff(2) * T::from_int(2)
    }

    /// Eigenvalue `lambda_n = -n (tau' + (n-1)/2 sigma'')`.
    pub fn eigenvalue(&self, n: usize) -> T {
        T::from_int(n as i64) * self.eigenvalue_slope(n)
    }

    /// `lambda_n / n` continued polynomially through `n = 0`:
    /// `-(tau' + (n-1)/2 sigma'')`. Removes the spurious singularity in the
    /// simplified raising/lowering forms.
    pub fn eigenvalue_slope(&self, n: usize) -> T {
        let half = T::from_ratio(n as i64 - 1, 2);
        -(self.tau_prime() + half * self.sigma_second())
    }

    /// `tau_n`: continuous `tau + n sigma'`; lattice
    /// `tau(x+n) + sigma(x+n) - sigma(x)`.
    pub fn shifted_tau(&self, n: usize) -> Poly<T> {
        let shift = T::from_int(n as i64);
        match self.kind() {
            Kind::Continuous => self
                .tau
                .add(&self.sigma.derivative().scale(&shift)),
            Kind::Discrete => self
                .tau
                .compose_shift(&shift)
                .add(&self.sigma.compose_shift(&shift))
                .sub(&self.sigma),
        }
    }

    /// Coefficients of `x P_n = alpha_n P_{n+1} + beta_n P_n + gamma_n P_{n-1}`.
    pub fn recurrence(&self, n: usize) -> Recurrence<T> {
        let n_t = T::from_int(n as i64);
        match &self.params {
            Params::Hermite => Recurrence {
                alpha: T::from_ratio(1, 2),
                beta: T::zero(),
                gamma: n_t,
            },
            Params::Laguerre { alpha } => Recurrence {
                alpha: T::from_int(-(n as i64 + 1)),
                beta: T::from_int(2 * n as i64 + 1) + alpha.clone(),
                gamma: -(n_t + alpha.clone()),
            },
            Params::Kravchuk { p, size } => {
                let q = T::one() - p.clone();
                Recurrence {
                    alpha: T::from_int(n as i64 + 1),
                    beta: n_t.clone() + p.clone() * T::from_int(size - 2 * n as i64),
                    gamma: p.clone() * q * T::from_int(size - n as i64 + 1),
                }
            }
            Params::Meixner { gamma, mu } => {
                let one_minus_mu = T::one() - mu.clone();
                Recurrence {
                    alpha: -(mu.clone() / one_minus_mu.clone()),
                    beta: (n_t.clone() + mu.clone() * (n_t.clone() + gamma.clone()))
                        / one_minus_mu.clone(),
                    gamma: -(n_t.clone() * (n_t + gamma.clone() - T::one()) / one_minus_mu),
                }
            }
        }
    }

    /// Lattice weight at integer `x`, by the closed form (binomial for
    /// Kravchuk, `mu^x (gamma)_x / x!` for Meixner).
    pub fn weight(&self, x: i64) -> Result<T> {
        if !self.in_support(x) {
            return Err(Error::OutsideSupport {
                family: self.name.to_string(),
                point: x.to_string(),
            });
        }
        match &self.params {
            Params::Kravchuk { p, size } => {
                let q = T::one() - p.clone();
                let mut w = binomial_scalar::<T>(*size, x);
                for _ in 0..x {
                    w = w * p.clone();
                }
                for _ in 0..(*size - x) {
                    w = w * q.clone();
                }
                Ok(w)
            }
            Params::Meixner { gamma, mu } => {
                let mut w = T::one();
                for k in 0..x {
                    // rho(x+1)/rho(x) = mu (gamma + x) / (x + 1)
                    w = w * mu.clone() * (gamma.clone() + T::from_int(k))
                        / T::from_int(k + 1);
                }
                Ok(w)
            }
            _ => Err(Error::InvalidParameter(format!(
                "{} has no lattice weight",
                self.name
            ))),
        }
    }

    /// `sigma(s) * (ln rho)'(s)` for the continuous families; polynomial even
    /// when the logarithmic derivative itself is not. Used for the exact
    /// Pearson check and for product-form derivatives of the normalized
    /// functions.
    pub fn sigma_log_weight_derivative(&self) -> Option<Poly<T>> {
        match &self.params {
            // rho = exp(-s^2): sigma (ln rho)' = -2s
            Params::Hermite => Some(Poly::from_coeffs(vec![T::zero(), T::from_int(-2)])),
            // rho = s^alpha exp(-s): sigma (ln rho)' = alpha - s
            Params::Laguerre { alpha } => {
                Some(Poly::from_coeffs(vec![alpha.clone(), T::from_int(-1)]))
            }
            _ => None,
        }
    }

    /// Residual of the Pearson relation.
    ///
    /// Continuous: the polynomial `sigma' + sigma (ln rho)' - tau`, identically
    /// zero when `(sigma rho)' = tau rho`. Lattice: the value
    /// `sigma(x+1) rho(x+1) - sigma(x) rho(x) - tau(x) rho(x)` at `x`.
    pub fn pearson_residual(&self, x: i64) -> Result<T> {
        match self.kind() {
            Kind::Continuous => {
                let p = self
                    .sigma
                    .derivative()
                    .add(&self.sigma_log_weight_derivative().expect("continuous"))
                    .sub(&self.tau);
                Ok(p.eval(&T::from_int(x)))
            }
            Kind::Discrete => {
                let here = T::from_int(x);
                let next = T::from_int(x + 1);
                let rho_here = self.weight(x)?;
                let rho_next = match self.support() {
                    Support::FiniteLattice { max } if x + 1 > max => T::zero(),
                    _ => self.weight(x + 1)?,
                };
                Ok(self.sigma.eval(&next) * rho_next
                    - self.sigma.eval(&here) * rho_here.clone()
                    - self.tau.eval(&here) * rho_here)
            }
        }
    }

    /// Squared norm `d_n^2` in exact arithmetic, when it is a rational
    /// quantity: always for Kravchuk, for Meixner when `gamma` is an integer
    /// (the mass factor `(1-mu)^-gamma` must stay in the field). Continuous
    /// norms involve `sqrt(pi)` or gamma-function values and return `None`.
    pub fn squared_norm_exact(&self, n: usize) -> Option<T> {
        match &self.params {
            Params::Kravchuk { p, size } => {
                if n as i64 > *size {
                    return None;
                }
                let q = T::one() - p.clone();
                let mut d = binomial_scalar::<T>(*size, n as i64);
                for _ in 0..n {
                    d = d * p.clone() * q.clone();
                }
                Some(d)
            }
            Params::Meixner { gamma, mu } => {
                let g = gamma.to_integer()?;
                if g <= 0 {
                    return None;
                }
                // n! (gamma)_n mu^-n (1-mu)^-gamma
                let mut d = T::one();
                for k in 0..n {
                    d = d * T::from_int(k as i64 + 1) * (gamma.clone() + T::from_int(k as i64))
                        / mu.clone();
                }
                let one_minus_mu = T::one() - mu.clone();
                for _ in 0..g {
                    d = d / one_minus_mu.clone();
                }
                Some(d)
            }
            _ => None,
        }
    }

    /// Squared norm relative to `d_0^2`; rational for every lattice family
    /// regardless of parameter integrality (mass factors cancel).
    pub fn squared_norm_ratio(&self, n: usize) -> Option<T> {
        match &self.params {
            Params::Kravchuk { .. } => {
                let d0 = self.squared_norm_exact(0)?;
                self.squared_norm_exact(n).map(|d| d / d0)
            }
            Params::Meixner { gamma, mu } => {
                // n! (gamma)_n mu^-n
                let mut d = T::one();
                for k in 0..n {
                    d = d * T::from_int(k as i64 + 1) * (gamma.clone() + T::from_int(k as i64))
                        / mu.clone();
                }
                Some(d)
            }
            _ => None,
        }
    }

    /// Casts the family to the float mode.
    pub fn to_f64(&self) -> Family<f64> {
        let params = match &self.params {
            Params::Hermite => Params::Hermite,
            Params::Laguerre { alpha } => Params::Laguerre { alpha: alpha.to_f64() },
            Params::Kravchuk { p, size } => Params::Kravchuk { p: p.to_f64(), size: *size },
            Params::Meixner { gamma, mu } => {
                Params::Meixner { gamma: gamma.to_f64(), mu: mu.to_f64() }
            }
        };
        Family {
            name: self.name,
            params,
            sigma: self.sigma.to_f64(),
            tau: self.tau.to_f64(),
        }
    }

    /// Serializable descriptor (scalars rendered as strings; rationals in
    /// `num/den` form).
    pub fn descriptor(&self) -> FamilyDescriptor {
        let mut params = BTreeMap::new();
        match &self.params {
            Params::Hermite => {}
            Params::Laguerre { alpha } => {
                params.insert("alpha".to_string(), alpha.repr());
            }
            Params::Kravchuk { p, size } => {
                params.insert("p".to_string(), p.repr());
                params.insert("N".to_string(), size.to_string());
            }
            Params::Meixner { gamma, mu } => {
                params.insert("gamma".to_string(), gamma.repr());
                params.insert("mu".to_string(), mu.repr());
            }
        }
        let support = match self.support() {
            Support::RealLine => "(-inf, inf)".to_string(),
            Support::PositiveReals => "(0, inf)".to_string(),
            Support::FiniteLattice { max } => format!("{{0, ..., {max}}}"),
            Support::Lattice => "{0, 1, 2, ...}".to_string(),
        };
        FamilyDescriptor {
            name: self.name,
            kind: self.kind(),
            params,
            sigma: (0..3).map(|k| self.sigma.coeff(k).repr()).collect(),
            tau: (0..2).map(|k| self.tau.coeff(k).repr()).collect(),
            support,
        }
    }
}

impl Family<f64> {
    /// Weight density at a continuous point, or at the nearest lattice point
    /// check for discrete families.
    pub fn weight_continuous(&self, s: f64) -> Result<f64> {
        match &self.params {
            Params::Hermite => Ok((-s * s).exp()),
            Params::Laguerre { alpha } => {
                if s <= 0.0 {
                    return Err(Error::OutsideSupport {
                        family: self.name.to_string(),
                        point: s.to_string(),
                    });
                }
                Ok(s.powf(*alpha) * (-s).exp())
            }
            _ => Err(Error::InvalidParameter(format!(
                "{} is a lattice family",
                self.name
            ))),
        }
    }

    /// `ln rho(x)` for lattice families, stable at sizes where the weight
    /// itself underflows (Kravchuk with N in the thousands).
    pub fn log_weight(&self, x: i64) -> Result<f64> {
        if !self.in_support(x) {
            return Err(Error::OutsideSupport {
                family: self.name.to_string(),
                point: x.to_string(),
            });
        }
        match &self.params {
            Params::Kravchuk { p, size } => {
                let q = 1.0 - p;
                let n = *size as f64;
                let xf = x as f64;
                Ok(special::ln_gamma(n + 1.0)
                    - special::ln_gamma(xf + 1.0)
                    - special::ln_gamma(n - xf + 1.0)
                    + xf * p.ln()
                    + (n - xf) * q.ln())
            }
            Params::Meixner { gamma, mu } => {
                let xf = x as f64;
                Ok(xf * mu.ln() + special::ln_gamma(gamma + xf)
                    - special::ln_gamma(xf + 1.0)
                    - special::ln_gamma(*gamma))
            }
            _ => Err(Error::InvalidParameter(format!(
                "{} is a continuous family",
                self.name
            ))),
        }
    }

    /// Squared norm `d_n^2` in float mode, defined for every family.
    pub fn squared_norm(&self, n: usize) -> f64 {
        match &self.params {
            Params::Hermite => {
                2f64.powi(n as i32) * special::factorial(n) * std::f64::consts::PI.sqrt()
            }
            Params::Laguerre { alpha } => {
                (special::ln_gamma(alpha + n as f64 + 1.0) - special::ln_gamma(n as f64 + 1.0))
                    .exp()
            }
            Params::Kravchuk { .. } => self.squared_norm_exact(n).expect("n <= N"),
            Params::Meixner { gamma, mu } => {
                special::factorial(n) * special::pochhammer(*gamma, n) * mu.powi(-(n as i32))
                    * (1.0 - mu).powf(-gamma)
            }
        }
    }

    /// Total mass of the orthogonality measure (`integral rho` or `sum rho`).
    pub fn mass(&self) -> f64 {
        match &self.params {
            Params::Hermite => std::f64::consts::PI.sqrt(),
            Params::Laguerre { alpha } => special::gamma(alpha + 1.0),
            Params::Kravchuk { .. } => 1.0,
            Params::Meixner { gamma, mu } => (1.0 - mu).powf(-gamma),
        }
    }
}

/// `C(n, k)` as a scalar, by the multiplicative formula (exact for rationals).
pub fn binomial_scalar<T: Scalar>(n: i64, k: i64) -> T {
    if k < 0 || k > n {
        return T::zero();
    }
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int(n - i) / T::from_int(i + 1);
    }
    acc
}

/// Pochhammer symbol `(a)_k` as a scalar.
pub fn pochhammer_scalar<T: Scalar>(a: &T, k: usize) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * (a.clone() + T::from_int(i as i64));
    }
    acc
}

/// Serializable family descriptor: `{name, kind, params, sigma, tau, support}`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub name: FamilyName,
    pub kind: Kind,
    pub params: BTreeMap<String, String>,
    pub sigma: Vec<String>,
    pub tau: Vec<String>,
    pub support: String,
}
