//! Polynomial sequence builders and the defining-equation residual.
//!
//! Three independent routes produce the same sequence:
//! - [`build_by_recurrence`]: the three-term recurrence
//!   `x P_n = alpha_n P_{n+1} + beta_n P_n + gamma_n P_{n-1}`;
//! - [`build_by_raising`]: the simplified raising relation, solving
//!   `sigma DP_n = -(lambda_n/n)((2n+1)/lambda_{2n+1}) tau_n P_n
//!    - (lambda_{2n}/2n) alpha_n P_{n+1}` for `P_{n+1}`, where `D` is the
//!   derivative (continuous) or the backward difference (lattice);
//! - [`lower`]: the recurrence-combined lowering relation, which recovers
//!   `P_{n-1}` from `P_n` (the lattice branch uses the forward-difference
//!   form built from `nabla = delta - delta nabla`).
//!
//! The spurious `n = 0` division in the simplified forms is removed by
//! carrying `lambda_n / n` as the polynomial `-(tau' + (n-1)/2 sigma'')`.
//!
//! All arithmetic is coefficient arithmetic; in rational mode the route
//! equalities and residuals are exact, not approximate.

use crate::error::{Error, Result};
use crate::family::{Family, Kind};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A polynomial family table `P_0 ... P_{n_max}` in monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeq<T: Scalar> {
    pub family: Family<T>,
    polys: Vec<Poly<T>>,
}

impl<T: Scalar> PolySeq<T> {
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &Poly<T> {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Poly<T>] {
        &self.polys
    }

    pub fn eval(&self, n: usize, x: &T) -> T {
        self.polys[n].eval(x)
    }

    pub fn to_f64(&self) -> PolySeq<f64> {
        PolySeq {
            family: self.family.to_f64(),
            polys: self.polys.iter().map(|p| p.to_f64()).collect(),
        }
    }

    /// Test-support constructor; production code uses the builders.
    pub fn from_parts(family: Family<T>, polys: Vec<Poly<T>>) -> Self {
        PolySeq { family, polys }
    }
}

/// Builds `P_0 ... P_{n_max}` by the three-term recurrence, with `P_0 = 1`
/// and the convention `P_{-1} = 0`.
pub fn build_by_recurrence<T: Scalar>(family: &Family<T>, n_max: usize) -> Result<PolySeq<T>> {
    let mut polys: Vec<Poly<T>> = Vec::with_capacity(n_max + 1);
    polys.push(Poly::one());
    for n in 0..n_max {
        let rec = family.recurrence(n);
        if rec.alpha.is_zero() {
            return Err(Error::Degenerate(format!(
                "recurrence alpha_{n} vanishes for {}",
                family.name()
            )));
        }
        let prev = if n == 0 { Poly::zero() } else { polys[n - 1].clone() };
        let p = &polys[n];
        let next = p
            .mul_x()
            .sub(&p.scale(&rec.beta))
            .sub(&prev.scale(&rec.gamma))
            .scale(&(T::one() / rec.alpha));
        debug_assert_eq!(next.degree(), Some(n + 1));
        polys.push(next);
    }
    Ok(PolySeq { family: family.clone(), polys })
}

/// Builds the sequence by iterating the simplified raising relation from the
/// `n = 0` bootstrap (`P_0 = 1`, the polynomial solution of the first-order
/// relation obtained at `n = 0`).
pub fn build_by_raising<T: Scalar>(family: &Family<T>, n_max: usize) -> Result<PolySeq<T>> {
    let mut polys: Vec<Poly<T>> = Vec::with_capacity(n_max + 1);
    polys.push(Poly::one());
    for n in 0..n_max {
        let next = raise(family, &polys[n], n)?;
        polys.push(next);
    }
    Ok(PolySeq { family: family.clone(), polys })
}

/// One raising step: `P_{n+1}` from `P_n`.
pub fn raise<T: Scalar>(family: &Family<T>, p: &Poly<T>, n: usize) -> Result<Poly<T>> {
    let r1 = family.eigenvalue_slope(n); // lambda_n / n
    let r2 = family.eigenvalue_slope(2 * n); // lambda_2n / 2n
    let r3 = family.eigenvalue_slope(2 * n + 1); // lambda_{2n+1} / (2n+1)
    if r2.is_zero() || r3.is_zero() {
        return Err(Error::Degenerate(format!(
            "raising step degenerate at n = {n} for {}",
            family.name()
        )));
    }
    let alpha = family.recurrence(n).alpha;
    if alpha.is_zero() {
        return Err(Error::Degenerate(format!(
            "recurrence alpha_{n} vanishes for {}",
            family.name()
        )));
    }
    let dp = match family.kind() {
        Kind::Continuous => p.derivative(),
        Kind::Discrete => p.backward_diff(),
    };
    let sigma_dp = family.sigma().mul(&dp);
    let tau_term = family.shifted_tau(n).mul(p).scale(&(r1 / r3.clone()));
    Ok(sigma_dp
        .add(&tau_term)
        .neg()
        .scale(&(T::one() / (r2 * alpha))))
}

/// One lowering step: `P_{n-1}` from `P_n` (`1 <= n`).
///
/// Continuous branch: the derivative-based relation obtained by combining the
/// raising form with the recurrence. Lattice branch: the forward-difference
/// relation `(sigma + tau) delta P_n = [...] P_n + (lambda_2n/2n) gamma_n
/// P_{n-1}` implemented exactly as displayed.
pub fn lower<T: Scalar>(family: &Family<T>, p: &Poly<T>, n: usize) -> Result<Poly<T>> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            what: "lowering needs n >= 1".to_string(),
        });
    }
    let r1 = family.eigenvalue_slope(n);
    let r2 = family.eigenvalue_slope(2 * n);
    let r3 = family.eigenvalue_slope(2 * n + 1);
    let rec = family.recurrence(n);
    if rec.gamma.is_zero() {
        return Err(Error::Degenerate(format!(
            "recurrence gamma_{n} vanishes for {}; lowering impossible",
            family.name()
        )));
    }
    if r2.is_zero() || r3.is_zero() {
        return Err(Error::Degenerate(format!(
            "lowering step degenerate at n = {n} for {}",
            family.name()
        )));
    }
    let tau_term = family.shifted_tau(n).mul(p).scale(&(r1 / r3.clone()));
    let x_minus_beta = Poly::from_coeffs(vec![-rec.beta, T::one()]);
    let drift = x_minus_beta.mul(p).scale(&r2);
    let numerator = match family.kind() {
        Kind::Continuous => family.sigma().mul(&p.derivative()).add(&tau_term).add(&drift),
        Kind::Discrete => {
            let sigma_plus_tau = family.sigma().add(family.tau());
            let lambda_term = p.scale(&family.eigenvalue(n));
            sigma_plus_tau
                .mul(&p.forward_diff())
                .add(&tau_term)
                .add(&lambda_term)
                .add(&drift)
        }
    };
    Ok(numerator.scale(&(T::one() / (r2 * rec.gamma))))
}

/// Values `P_0(x) ... P_{n_max}(x)` by the three-term recurrence in value
/// space, the standard evaluation scheme for orthogonal polynomials. In
/// float mode this is far better conditioned than Horner on the monomial
/// coefficients (whose sign-alternating terms cancel catastrophically near
/// the support edges); in rational mode it agrees with coefficient
/// evaluation exactly.
pub fn eval_by_recurrence<T: Scalar>(family: &Family<T>, n_max: usize, x: &T) -> Vec<T> {
    let mut vals: Vec<T> = Vec::with_capacity(n_max + 1);
    vals.push(T::one());
    for n in 0..n_max {
        let rec = family.recurrence(n);
        let prev = if n == 0 { T::zero() } else { vals[n - 1].clone() };
        let next = ((x.clone() - rec.beta) * vals[n].clone() - rec.gamma * prev) / rec.alpha;
        vals.push(next);
    }
    vals
}

/// Float value recurrence with double-double compensation. The recurrence
/// coefficients are rebuilt in `Dd` from the family parameters, so the
/// cancellation between `beta_n P_n` and `gamma_n P_{n-1}` near support
/// edges (severe for Kravchuk with small `p`) stays ~16 digits clean in the
/// returned `f64` values.
pub fn eval_values(family: &Family<f64>, n_max: usize, x: f64) -> Vec<f64> {
    use crate::dd::Dd;
    use crate::family::Params;
    let xd = Dd::from_f64(x);
    let mut cur = Dd::ONE;
    let mut prev = Dd::ZERO;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    for n in 0..n_max {
        let nf = n as f64;
        // alpha, beta, gamma in Dd straight from the parameters
        let (alpha, beta, gamma) = match family.params() {
            Params::Hermite => (Dd::from_f64(0.5), Dd::ZERO, Dd::from_f64(nf)),
            Params::Laguerre { alpha } => (
                Dd::from_f64(-(nf + 1.0)),
                Dd::from_f64(2.0 * nf + 1.0).add(Dd::from_f64(*alpha)),
                Dd::from_f64(nf).add(Dd::from_f64(*alpha)).neg(),
            ),
            Params::Kravchuk { p, size } => {
                let p = Dd::from_f64(*p);
                let q = Dd::ONE.sub(p);
                (
                    Dd::from_f64(nf + 1.0),
                    Dd::from_f64(nf).add(p.mul_f64(*size as f64 - 2.0 * nf)),
                    p.mul(q).mul_f64(*size as f64 - nf + 1.0),
                )
            }
            Params::Meixner { gamma, mu } => {
                let mu = Dd::from_f64(*mu);
                let onemm = Dd::ONE.sub(mu);
                (
                    mu.neg().div(onemm),
                    Dd::from_f64(nf)
                        .add(mu.mul(Dd::from_f64(nf).add(Dd::from_f64(*gamma))))
                        .div(onemm),
                    Dd::from_f64(nf)
                        .mul(Dd::from_f64(nf + *gamma - 1.0))
                        .div(onemm)
                        .neg(),
                )
            }
        };
        let next = xd.sub(beta).mul(cur).sub(gamma.mul(prev)).div(alpha);
        prev = cur;
        cur = next;
        out.push(cur.value());
    }
    out
}

/// Residual of the defining equation as a polynomial:
/// `sigma P'' + tau P' + lambda_n P` (continuous) or
/// `sigma delta nabla P + tau delta P + lambda_n P` (lattice).
/// Identically zero exactly when `P` solves the equation of index `n`.
pub fn equation_residual_poly<T: Scalar>(
    family: &Family<T>,
    p: &Poly<T>,
    n: usize,
) -> Poly<T> {
    let lambda = family.eigenvalue(n);
    match family.kind() {
        Kind::Continuous => family
            .sigma()
            .mul(&p.derivative().derivative())
            .add(&family.tau().mul(&p.derivative()))
            .add(&p.scale(&lambda)),
        Kind::Discrete => family
            .sigma()
            .mul(&p.backward_diff().forward_diff())
            .add(&family.tau().mul(&p.forward_diff()))
            .add(&p.scale(&lambda)),
    }
}

/// Residual of the defining equation at a point.
pub fn equation_residual<T: Scalar>(
    family: &Family<T>,
    seq: &PolySeq<T>,
    n: usize,
    point: &T,
) -> T {
    equation_residual_poly(family, seq.poly(n), n).eval(point)
}
