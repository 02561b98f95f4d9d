//! Exact-arithmetic certification of the polynomial engine, plus the
//! float-vs-exact drift measurement.
//!
//! A certificate runs, in the scalar mode of the family it is given (exact
//! when the parameters are rational, float otherwise):
//! - the Pearson relation on a support sample,
//! - per degree: the three-term recurrence, the raising step, the lowering
//!   inversion, and the defining-equation residual,
//! - the Gram matrix: exactly diagonal with the stated squared norms for
//!   lattice families; by quadrature (flagged `float`) for continuous ones.
//!
//! Any failure pinpoints the first offending `(relation, n)` pair. In exact
//! mode the per-degree checks are equalities of rational coefficient
//! vectors; nothing is compared against a tolerance.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::Result;
use crate::family::{Family, Kind};
use crate::gram::{diagonality_failure, gram_f64, gram_mass_ratio, MEIXNER_TAIL_EPS};
use crate::normalized::eval_drift;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sequence::{
    build_by_recurrence, equation_residual_poly, lower, raise, PolySeq,
};

/// Relative tolerance applied when certification runs in float mode
/// (irrational parameters); exact mode compares coefficients verbatim.
pub const FLOAT_FALLBACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// Verified as an identity of exact rationals.
    Exact,
    /// Verified numerically at [`FLOAT_FALLBACK_TOL`] (float parameters or
    /// continuous-family Gram via quadrature).
    Float,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub n_max: usize,
    pub checks: Vec<CheckResult>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == CheckStatus::Failed)
    }
}

/// Builds the table by recurrence and certifies it.
pub fn certify_family<T: Scalar>(family: &Family<T>, n_max: usize) -> Result<CertificateReport> {
    let seq = build_by_recurrence(family, n_max)?;
    Ok(certify_seq(family, &seq))
}

/// Certifies a *given* table against the family data. Used directly by the
/// fault-injection tests, which hand in deliberately corrupted tables.
pub fn certify_seq<T: Scalar>(family: &Family<T>, seq: &PolySeq<T>) -> CertificateReport {
    let n_max = seq.max_degree();
    let mut checks = Vec::new();
    let exact_status = if T::EXACT { CheckStatus::Exact } else { CheckStatus::Float };
    let (rec_label, raise_label, lower_label, eq_label) = match family.kind() {
        Kind::Continuous => ("C2", "C3", "C4", "C1"),
        Kind::Discrete => ("D2", "D3", "D4", "D1"),
    };

    // Pearson relation on a support sample.
    {
        let sample: Vec<i64> = match family.kind() {
            Kind::Continuous => (-3..=6).collect(),
            Kind::Discrete => {
                let top = family.max_degree().map_or(2 * n_max as i64 + 8, |m| m as i64);
                (0..=top).collect()
            }
        };
        let mut failure = None;
        for x in sample {
            match family.pearson_residual(x) {
                Ok(r) if scalar_small(&r, 1.0) => {}
                Ok(_) => {
                    failure = Some(format!("pearson at x = {x}"));
                    break;
                }
                Err(e) => {
                    failure = Some(format!("pearson at x = {x}: {e}"));
                    break;
                }
            }
        }
        checks.push(result("pearson", exact_status, failure));
    }

    // Per-degree relation checks, in ascending n so the first failure is the
    // lowest offending index.
    let mut rec_fail = None;
    let mut raise_fail = None;
    let mut lower_fail = None;
    let mut eq_fail = None;
    for n in 0..n_max {
        if rec_fail.is_none() {
            let rec = family.recurrence(n);
            let prev = if n == 0 { Poly::zero() } else { seq.poly(n - 1).clone() };
            let lhs = seq.poly(n).mul_x();
            let rhs = seq
                .poly(n + 1)
                .scale(&rec.alpha)
                .add(&seq.poly(n).scale(&rec.beta))
                .add(&prev.scale(&rec.gamma));
            if !poly_close(&lhs, &rhs) {
                rec_fail = Some(format!("{rec_label} at n = {n}"));
            }
        }
        if raise_fail.is_none() {
            match raise(family, seq.poly(n), n) {
                Ok(up) if poly_close(&up, seq.poly(n + 1)) => {}
                Ok(_) => raise_fail = Some(format!("{raise_label} at n = {n}")),
                Err(e) => raise_fail = Some(format!("{raise_label} at n = {n}: {e}")),
            }
        }
        if lower_fail.is_none() {
            match lower(family, seq.poly(n + 1), n + 1) {
                Ok(down) if poly_close(&down, seq.poly(n)) => {}
                Ok(_) => lower_fail = Some(format!("{lower_label} at n = {}", n + 1)),
                Err(e) => lower_fail = Some(format!("{lower_label} at n = {}: {e}", n + 1)),
            }
        }
    }
    for n in 0..=n_max {
        if eq_fail.is_none() {
            let res = equation_residual_poly(family, seq.poly(n), n);
            let scale = seq
                .poly(n)
                .coeffs()
                .iter()
                .fold(1.0f64, |acc, c| acc.max(c.to_f64().abs()));
            let ok = res.coeffs().iter().all(|c| scalar_small(c, scale));
            if !ok {
                eq_fail = Some(format!("{eq_label} at n = {n}"));
            }
        }
    }
    checks.push(result(&format!("recurrence ({rec_label})"), exact_status, rec_fail));
    checks.push(result(&format!("raising ({raise_label})"), exact_status, raise_fail));
    checks.push(result(&format!("lowering inversion ({lower_label})"), exact_status, lower_fail));
    checks.push(result(&format!("defining equation ({eq_label})"), exact_status, eq_fail));

    // Gram matrix.
    match family.kind() {
        Kind::Discrete => {
            let failure = match gram_mass_ratio(seq) {
                Ok(gram) => {
                    if T::EXACT {
                        diagonality_failure(family, &gram)
                            .map(|(n, m)| format!("gram entry ({n}, {m})"))
                    } else {
                        float_gram_failure(family, &gram)
                    }
                }
                Err(e) => Some(format!("gram: {e}")),
            };
            checks.push(result("gram diagonal with stated norms", exact_status, failure));
        }
        Kind::Continuous => {
            // Quadrature route; flagged float regardless of parameter mode.
            let failure = quadrature_gram_failure(&seq.to_f64());
            checks.push(result("gram (quadrature)", CheckStatus::Float, failure));
        }
    }

    CertificateReport {
        family: family.name().to_string(),
        params: family.descriptor().params,
        n_max,
        checks,
    }
}

fn result(name: &str, ok_status: CheckStatus, failure: Option<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        status: if failure.is_some() { CheckStatus::Failed } else { ok_status },
        first_failure: failure,
    }
}

/// Exact mode: `is_zero`. Float mode: small relative to the given scale.
fn scalar_small<T: Scalar>(v: &T, scale: f64) -> bool {
    if T::EXACT {
        v.is_zero()
    } else {
        v.to_f64().abs() <= FLOAT_FALLBACK_TOL * scale.max(1.0)
    }
}

fn poly_close<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> bool {
    if T::EXACT {
        return a == b;
    }
    let scale = a
        .coeffs()
        .iter()
        .chain(b.coeffs())
        .fold(1.0f64, |acc, c| acc.max(c.to_f64().abs()));
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).all(|k| (a.coeff(k).to_f64() - b.coeff(k).to_f64()).abs() <= FLOAT_FALLBACK_TOL * scale)
}

fn float_gram_failure<T: Scalar>(family: &Family<T>, gram: &[Vec<T>]) -> Option<String> {
    for (i, row) in gram.iter().enumerate() {
        let scale = family
            .squared_norm_ratio(i)
            .map(|d| d.to_f64())
            .unwrap_or(1.0);
        for (j, entry) in row.iter().enumerate() {
            let v = entry.to_f64();
            if i == j {
                if (v - scale).abs() > FLOAT_FALLBACK_TOL * scale.max(1.0) {
                    return Some(format!("gram entry ({i}, {j})"));
                }
            } else if v.abs() > FLOAT_FALLBACK_TOL * scale.max(1.0) {
                return Some(format!("gram entry ({i}, {j})"));
            }
        }
    }
    None
}

fn quadrature_gram_failure(seq: &PolySeq<f64>) -> Option<String> {
    let family = &seq.family;
    let gram = match gram_f64(seq, MEIXNER_TAIL_EPS) {
        Ok(g) => g,
        Err(e) => return Some(format!("quadrature: {e}")),
    };
    let n = seq.max_degree() + 1;
    for i in 0..n {
        for j in 0..n {
            let scale = (family.squared_norm(i) * family.squared_norm(j)).sqrt();
            let target = if i == j { family.squared_norm(i) } else { 0.0 };
            if (gram[i][j] - target).abs() > 1e-10 * scale {
                return Some(format!("gram entry ({i}, {j})"));
            }
        }
    }
    None
}

/// Max pointwise drift of the float engine against the exact table over
/// `grid x {0..n_max}`, relative to `max(|exact value|, 1)`.
pub fn float_drift<T: Scalar>(family: &Family<T>, n_max: usize, grid: &[T]) -> Result<f64> {
    let exact = build_by_recurrence(family, n_max)?;
    let float = build_by_recurrence(&family.to_f64(), n_max)?;
    Ok(eval_drift(&exact, &float, grid))
}

/// Default drift grid for a family: the lattice support (capped) for
/// discrete families, integer points in `[-10, 10]` (continuous) otherwise.
pub fn default_drift_grid<T: Scalar>(family: &Family<T>, cap: i64) -> Vec<T> {
    match family.kind() {
        Kind::Continuous => (-10..=10).map(T::from_int).collect(),
        Kind::Discrete => {
            let top = family.max_degree().map_or(cap, |m| (m as i64).min(cap));
            (0..=top).map(T::from_int).collect()
        }
    }
}
