//! Discrete-to-continuous limit verification with measured convergence
//! orders.
//!
//! Meixner to Laguerre: `m_n^(alpha+1, 1-h)(s/h) / n! -> L_n^alpha(s)` as
//! `h -> 0`. The raw polynomial limit evaluates at the real point `s/h`
//! directly (the polynomial is defined for real arguments); the normalized
//! variant needs the weight on the integer lattice, so it evaluates at the
//! two bracketing integers, interpolates linearly, and rescales by the grid
//! density factor `h^{-1/2}`.
//!
//! Kravchuk to Hermite: `p = 1/2`, scaling `x = Np + sqrt(2Npq) s` rounded to
//! the lattice, amplitude factor `(2Npq)^{1/4}`. The scaling constants are
//! schedule configuration (validated by the monotone-convergence property),
//! not displayed quantities.
//!
//! Both schedules also track how fast the *relations* converge: the
//! normalized Meixner recurrence evaluated on Laguerre functions, and the
//! Kravchuk raising/lowering relations evaluated on Hermite functions at the
//! de-scaled lattice points.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::normalized::{relative_residual, NormalizedFamily};
use crate::scalar::Scalar;
use crate::sequence::build_by_recurrence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    MeixnerToLaguerre,
    KravchukToHermite,
}

/// One schedule entry's measured errors.
#[derive(Debug, Clone)]
pub struct LimitEntry {
    /// `h` (Meixner) or `N` (Kravchuk).
    pub param: f64,
    pub n: usize,
    /// Headline error: raw polynomial sup-error for Meixner, rescaled
    /// normalized-function sup-error for Kravchuk.
    pub sup_error: f64,
    pub rms_error: f64,
    /// Normalized-function variant (Meixner only).
    pub sup_normalized: Option<f64>,
    pub rms_normalized: Option<f64>,
    /// Sup over the grid of the relation residual at this schedule entry.
    pub relation_residual: f64,
}

/// A validated limit schedule: every entry's scaling map must send the test
/// grid into the source family's support.
#[derive(Debug, Clone)]
pub struct LimitSchedule {
    pub kind: LimitKind,
    /// Laguerre/Hermite target parameter (`alpha`; ignored for Kravchuk).
    pub alpha: f64,
    /// Decreasing `h` values, or increasing even `N` values.
    pub steps: Vec<f64>,
    pub s_grid: Vec<f64>,
}

impl LimitSchedule {
    pub fn meixner_laguerre(alpha: f64, h_steps: Vec<f64>, s_grid: Vec<f64>) -> Result<Self> {
        if alpha <= -1.0 {
            return Err(Error::InvalidParameter(format!("alpha must exceed -1, got {alpha}")));
        }
        if h_steps.is_empty() || s_grid.is_empty() {
            return Err(Error::InvalidParameter("empty limit schedule".into()));
        }
        let s_max = s_grid.iter().cloned().fold(0.0f64, f64::max);
        for &h in &h_steps {
            if !(0.0 < h && h < 1.0) {
                return Err(Error::InvalidParameter(format!("h must lie in (0,1), got {h}")));
            }
            if s_max / h > 1e6 {
                return Err(Error::NonConvergentTail(format!(
                    "s/h = {:.3e} exceeds the lattice horizon",
                    s_max / h
                )));
            }
        }
        if s_grid.iter().any(|&s| s <= 0.0) {
            return Err(Error::InvalidParameter(
                "meixner-laguerre grid must be positive (Laguerre support)".into(),
            ));
        }
        Ok(LimitSchedule { kind: LimitKind::MeixnerToLaguerre, alpha, steps: h_steps, s_grid })
    }

    pub fn kravchuk_hermite(sizes: Vec<i64>, s_grid: Vec<f64>) -> Result<Self> {
        if sizes.is_empty() || s_grid.is_empty() {
            return Err(Error::InvalidParameter("empty limit schedule".into()));
        }
        for &size in &sizes {
            if size < 2 || size % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "kravchuk-hermite schedule needs even N >= 2, got {size}"
                )));
            }
            let half = size as f64 / 2.0;
            let spread = half.sqrt(); // sqrt(2Npq) at p = 1/2
            for &s in &s_grid {
                let x = half + spread * s;
                if !(0.0..=size as f64).contains(&x.round()) {
                    return Err(Error::InvalidParameter(format!(
                        "grid point s = {s} maps outside {{0..{size}}}"
                    )));
                }
            }
        }
        Ok(LimitSchedule {
            kind: LimitKind::KravchukToHermite,
            alpha: 0.0,
            steps: sizes.into_iter().map(|v| v as f64).collect(),
            s_grid,
        })
    }

    /// Runs the schedule for one degree.
    pub fn run(&self, n: usize) -> Result<Vec<LimitEntry>> {
        match self.kind {
            LimitKind::MeixnerToLaguerre => self
                .steps
                .iter()
                .map(|&h| meixner_to_laguerre_entry(n, self.alpha, h, &self.s_grid))
                .collect(),
            LimitKind::KravchukToHermite => self
                .steps
                .iter()
                .map(|&size| kravchuk_to_hermite_entry(n, size as i64, &self.s_grid))
                .collect(),
        }
    }

    /// Abscissa against which the order is fitted (`h`, or `1/N`).
    pub fn order_abscissa(&self, param: f64) -> f64 {
        match self.kind {
            LimitKind::MeixnerToLaguerre => param,
            LimitKind::KravchukToHermite => 1.0 / param,
        }
    }
}

/// Raw-polynomial limit error at one point, in any scalar mode. With
/// rational inputs the result is the exact error of the substitution,
/// which the float pipeline is tested against.
pub fn meixner_laguerre_raw_error<T: Scalar>(
    n: usize,
    alpha: &T,
    h: &T,
    s: &T,
) -> Result<T> {
    let gamma = alpha.clone() + T::one();
    let mu = T::one() - h.clone();
    let meixner = Family::meixner(gamma, mu)?;
    let laguerre = Family::laguerre(alpha.clone())?;
    let m_seq = build_by_recurrence(&meixner, n)?;
    let l_seq = build_by_recurrence(&laguerre, n)?;
    let mut inv_fact = T::one();
    for k in 1..=n {
        inv_fact = inv_fact / T::from_int(k as i64);
    }
    let lattice_point = s.clone() / h.clone();
    Ok(m_seq.eval(n, &lattice_point) * inv_fact - l_seq.eval(n, &s.clone()))
}

fn meixner_to_laguerre_entry(n: usize, alpha: f64, h: f64, s_grid: &[f64]) -> Result<LimitEntry> {
    let gamma = alpha + 1.0;
    let mu = 1.0 - h;
    let meixner_nf = NormalizedFamily::new(Family::meixner(gamma, mu)?, n + 1)?;
    let laguerre_nf = NormalizedFamily::new(Family::laguerre(alpha)?, n + 1)?;

    let mut sup_raw: f64 = 0.0;
    let mut sum_sq_raw = 0.0;
    let mut sup_norm: f64 = 0.0;
    let mut sum_sq_norm = 0.0;
    let mut relation: f64 = 0.0;
    for &s in s_grid {
        let raw = meixner_laguerre_raw_error::<f64>(n, &alpha, &h, &s)?.abs();
        sup_raw = sup_raw.max(raw);
        sum_sq_raw += raw * raw;

        // normalized variant: bracketing integers, linear interpolation,
        // density rescale by h^{-1/2}
        let xf = s / h;
        let x0 = xf.floor() as i64;
        let t = xf - x0 as f64;
        let m0 = meixner_nf.psi_lattice(n, x0)?;
        let m1 = meixner_nf.psi_lattice(n, x0 + 1)?;
        let interp = ((1.0 - t) * m0 + t * m1) / h.sqrt();
        let target = laguerre_nf.psi(n, s)?;
        let err = (interp - target).abs();
        sup_norm = sup_norm.max(err);
        sum_sq_norm += err * err;

        // (ND2) -> (NC2): the normalized Meixner recurrence evaluated on the
        // Laguerre functions at x = s/h.
        let nf = n as f64;
        let psi = laguerre_nf.psi(n, s)?;
        let psi_up = laguerre_nf.psi(n + 1, s)?;
        let psi_down = if n == 0 { 0.0 } else { laguerre_nf.psi(n - 1, s)? };
        let terms = [
            (mu * (gamma + nf) * (nf + 1.0)).sqrt() * psi_up,
            (mu * nf * (nf + gamma - 1.0)).sqrt() * psi_down,
            -(mu * (xf + nf + gamma) - xf + nf) * psi,
        ];
        relation = relation.max(relative_residual(&terms));
    }
    let count = s_grid.len() as f64;
    Ok(LimitEntry {
        param: h,
        n,
        sup_error: sup_raw,
        rms_error: (sum_sq_raw / count).sqrt(),
        sup_normalized: Some(sup_norm),
        rms_normalized: Some((sum_sq_norm / count).sqrt()),
        relation_residual: relation,
    })
}

fn kravchuk_to_hermite_entry(n: usize, size: i64, s_grid: &[f64]) -> Result<LimitEntry> {
    if n as i64 >= size {
        return Err(Error::IndexOutOfRange {
            index: n,
            what: format!("kravchuk degree must stay below N = {size}"),
        });
    }
    let p = 0.5;
    let q = 0.5;
    let np = size as f64 * p;
    let spread = (2.0 * size as f64 * p * q).sqrt();
    let amp = spread.sqrt(); // (2Npq)^{1/4}
    let kravchuk_nf = NormalizedFamily::new(Family::kravchuk(p, size)?, n + 1)?;
    let hermite_nf = NormalizedFamily::new(Family::hermite(), n + 1)?;

    // Hermite psi at the de-scaled lattice point x.
    let hermite_at = |k: usize, x: f64| hermite_nf.psi(k, (x - np) / spread);

    let mut sup: f64 = 0.0;
    let mut sum_sq = 0.0;
    let mut relation: f64 = 0.0;
    for &s in s_grid {
        let x = (np + spread * s).round();
        let xi = x as i64;
        let rescaled = amp * kravchuk_nf.psi_lattice(n, xi)?;
        let target = hermite_nf.psi(n, s)?;
        let err = (rescaled - target).abs();
        sup = sup.max(err);
        sum_sq += err * err;

        // (ND3) on Hermite functions: raising relation at lattice point x.
        let nf = n as f64;
        let big_n = size as f64;
        let terms3 = [
            (p * q * (nf + 1.0) * (big_n - nf)).sqrt() * hermite_at(n + 1, x)?,
            -p * (x + nf - big_n) * hermite_at(n, x)?,
            -(p * q * x * (big_n - x + 1.0)).sqrt() * hermite_at(n, x - 1.0)?,
        ];
        relation = relation.max(relative_residual(&terms3));
        // (ND4): lowering relation, defined for n >= 1.
        if n >= 1 {
            let terms4 = [
                (p * q * nf * (big_n - nf + 1.0)).sqrt() * hermite_at(n - 1, x)?,
                -p * (x + nf - big_n) * hermite_at(n, x)?,
                -(p * q * (big_n - x) * (x + 1.0)).sqrt() * hermite_at(n, x + 1.0)?,
            ];
            relation = relation.max(relative_residual(&terms4));
        }
    }
    Ok(LimitEntry {
        param: size as f64,
        n,
        sup_error: sup,
        rms_error: (sum_sq / s_grid.len() as f64).sqrt(),
        sup_normalized: None,
        rms_normalized: None,
        relation_residual: relation,
    })
}

/// Least-squares slope of `ln(err)` against `ln(x)`. `None` when fewer than
/// two entries carry a positive error (a zero-error schedule has no order).
pub fn fit_order(xs: &[f64], errs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(errs)
        .filter(|(&x, &e)| x > 0.0 && e > 0.0)
        .map(|(&x, &e)| (x.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Default grids used by the CLI and the acceptance suite.
pub fn default_grid(kind: LimitKind) -> Vec<f64> {
    match kind {
        // positive, clear of the lattice origin
        LimitKind::MeixnerToLaguerre => (1..=10).map(|k| k as f64 * 0.5).collect(),
        // symmetric, inside the N = 16 window after scaling
        LimitKind::KravchukToHermite => (-8..=8).map(|k| k as f64 * 0.25).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn raw_error_closed_form_exact() {
        // n = 1, alpha = 0: the raw error is exactly s h / (1 - h) in
        // magnitude (the signed difference comes out negative).
        for (hn, hd) in [(1i64, 10i64), (1, 20), (1, 40)] {
            for sn in 1..=6i64 {
                let s = q(sn, 2);
                let h = q(hn, hd);
                let err = meixner_laguerre_raw_error::<Rational>(1, &q(0, 1), &h, &s).unwrap();
                let closed = s * h.clone() / (Rational::from_int(1) - h);
                assert_eq!(-err, closed);
            }
        }
    }

    #[test]
    fn raw_error_closed_form_float() {
        for h in [0.1, 0.05, 0.025, 0.0125, 0.00625] {
            for s in [0.5, 1.0, 2.5, 5.0] {
                let err = meixner_laguerre_raw_error::<f64>(1, &0.0, &h, &s).unwrap();
                let closed = s * h / (1.0 - h);
                assert!(
                    (err.abs() - closed).abs() < 1e-12,
                    "h = {h} s = {s}: {err} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn meixner_raw_error_n0_is_zero() {
        let sched = LimitSchedule::meixner_laguerre(
            0.0,
            vec![0.1, 0.05],
            default_grid(LimitKind::MeixnerToLaguerre),
        )
        .unwrap();
        for entry in sched.run(0).unwrap() {
            assert_eq!(entry.sup_error, 0.0);
        }
    }

    #[test]
    fn meixner_errors_halve_with_h() {
        let sched = LimitSchedule::meixner_laguerre(
            0.0,
            vec![0.1, 0.05, 0.025, 0.0125],
            default_grid(LimitKind::MeixnerToLaguerre),
        )
        .unwrap();
        let entries = sched.run(2).unwrap();
        // First-order behavior: as h shrinks the halving ratio settles into
        // [1.8, 2.2] (the first step still carries a visible h^2 term).
        for w in entries[1..].windows(2) {
            let ratio = w[0].sup_error / w[1].sup_error;
            assert!(
                (1.8..=2.2).contains(&ratio),
                "halving h should halve the error: ratio {ratio}"
            );
        }
        let order = fit_order(
            &entries.iter().map(|e| e.param).collect::<Vec<_>>(),
            &entries.iter().map(|e| e.sup_error).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!((0.8..=1.2).contains(&order), "order {order}");
    }

    #[test]
    fn meixner_normalized_and_relation_converge() {
        let sched = LimitSchedule::meixner_laguerre(
            1.0,
            vec![0.1, 0.05, 0.025, 0.0125, 0.00625],
            default_grid(LimitKind::MeixnerToLaguerre),
        )
        .unwrap();
        let entries = sched.run(3).unwrap();
        for w in entries.windows(2) {
            assert!(w[1].sup_normalized.unwrap() < w[0].sup_normalized.unwrap());
            assert!(w[1].relation_residual < w[0].relation_residual);
        }
        // relation residual decays at the same first order as the values
        let order = fit_order(
            &entries.iter().map(|e| e.param).collect::<Vec<_>>(),
            &entries.iter().map(|e| e.relation_residual).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!((0.8..=1.2).contains(&order), "relation order {order}");
    }

    #[test]
    fn kravchuk_monotone_and_peak() {
        let sched = LimitSchedule::kravchuk_hermite(
            vec![16, 64, 256, 1024],
            default_grid(LimitKind::KravchukToHermite),
        )
        .unwrap();
        for n in 0..=2usize {
            let entries = sched.run(n).unwrap();
            for w in entries.windows(2) {
                assert!(
                    w[1].sup_error < w[0].sup_error,
                    "n = {n}: {} !< {}",
                    w[1].sup_error,
                    w[0].sup_error
                );
                assert!(w[1].relation_residual < w[0].relation_residual);
            }
        }
        // n = 0 peak at s = 0, N = 1024: (N/2)^{1/4} psi_0(N/2) vs pi^{-1/4}
        let nf = NormalizedFamily::new(Family::kravchuk(0.5, 1024).unwrap(), 1).unwrap();
        let peak = (512.0f64).powf(0.25) * nf.psi_lattice(0, 512).unwrap();
        let target = std::f64::consts::PI.powf(-0.25);
        assert!((peak - target).abs() / target < 0.01, "peak {peak} vs {target}");
    }

    #[test]
    fn kravchuk_fitted_order_reasonable() {
        let sched = LimitSchedule::kravchuk_hermite(
            vec![16, 64, 256, 1024],
            default_grid(LimitKind::KravchukToHermite),
        )
        .unwrap();
        let entries = sched.run(2).unwrap();
        let xs: Vec<f64> = entries.iter().map(|e| sched.order_abscissa(e.param)).collect();
        let errs: Vec<f64> = entries.iter().map(|e| e.sup_error).collect();
        let order = fit_order(&xs, &errs).unwrap();
        assert!(order > 0.4, "kravchuk order {order}");
    }

    #[test]
    fn schedule_validation() {
        assert!(LimitSchedule::meixner_laguerre(0.0, vec![1.5], vec![1.0]).is_err());
        assert!(LimitSchedule::meixner_laguerre(0.0, vec![1e-9], vec![5.0]).is_err());
        assert!(LimitSchedule::kravchuk_hermite(vec![15], vec![0.0]).is_err());
        assert!(LimitSchedule::kravchuk_hermite(vec![4], vec![50.0]).is_err());
        // degree out of range
        let sched = LimitSchedule::kravchuk_hermite(vec![4], vec![0.0]).unwrap();
        assert!(sched.run(4).is_err());
    }

    #[test]
    fn order_fit_on_synthetic_data() {
        let xs = [0.1, 0.05, 0.025, 0.0125];
        let errs: Vec<f64> = xs.iter().map(|&x: &f64| 3.0 * x.powf(1.5)).collect();
        let order = fit_order(&xs, &errs).unwrap();
        assert!((order - 1.5).abs() < 1e-12);
        assert!(fit_order(&[0.1], &[0.0]).is_none());
    }
}
