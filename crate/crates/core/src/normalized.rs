//! Orthonormal functions `psi_n = d_n^{-1} sqrt(rho) P_n` and the normalized
//! relations they satisfy.
//!
//! Derivatives of `psi_n` are always the analytic product-rule expressions
//! over (polynomial) x (exponential/power prefactor); nothing here takes a
//! finite difference. The positive square root of the weight is used
//! everywhere; phase factors appear only where the Wigner mapping
//! ([`crate::wigner`]) prints one.

use crate::error::{Error, Result};
use crate::family::{Family, Kind, Params};
use crate::gram::{gram_f64, MEIXNER_TAIL_EPS};
use crate::quadrature::gauss_rule;
use crate::scalar::Scalar;
use crate::sequence::{build_by_recurrence, eval_values, PolySeq};

/// Sampled values of one normalized function on a grid or lattice slice.
#[derive(Debug, Clone)]
pub struct NormalizedState {
    pub family: String,
    pub n: usize,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    pub norm_checked: bool,
}

/// A family together with its polynomial table and normalization constants,
/// ready to evaluate `psi_n` and its analytic derivatives.
#[derive(Debug, Clone)]
pub struct NormalizedFamily {
    family: Family<f64>,
    seq: PolySeq<f64>,
    inv_norms: Vec<f64>,
}

/// The four relations satisfied by the normalized continuous functions:
/// the self-adjoint equation, the normalized recurrence, and the
/// raising/lowering (creation/annihilation) relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcRelation {
    Nc1,
    Nc2,
    Nc3,
    Nc4,
}

/// Difference analogs for the normalized Meixner functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdRelation {
    Nd1,
    Nd2,
    Nd3,
    Nd4,
}

impl NormalizedFamily {
    pub fn new(family: Family<f64>, n_max: usize) -> Result<Self> {
        if let Some(max) = family.max_degree() {
            if n_max > max {
                return Err(Error::IndexOutOfRange {
                    index: n_max,
                    what: format!("{} norms are defined for n <= {max}", family.name()),
                });
            }
        }
        let seq = build_by_recurrence(&family, n_max)?;
        let inv_norms = (0..=n_max)
            .map(|n| 1.0 / family.squared_norm(n).sqrt())
            .collect();
        Ok(NormalizedFamily { family, seq, inv_norms })
    }

    pub fn family(&self) -> &Family<f64> {
        &self.family
    }

    pub fn seq(&self) -> &PolySeq<f64> {
        &self.seq
    }

    pub fn max_index(&self) -> usize {
        self.seq.max_degree()
    }

    /// `sqrt(rho)` at a continuous point.
    fn sqrt_weight(&self, s: f64) -> Result<f64> {
        match self.family.params() {
            Params::Hermite => Ok((-0.5 * s * s).exp()),
            Params::Laguerre { alpha } => {
                if s <= 0.0 {
                    return Err(Error::OutsideSupport {
                        family: self.family.name().to_string(),
                        point: s.to_string(),
                    });
                }
                Ok(s.powf(alpha / 2.0) * (-0.5 * s).exp())
            }
            _ => Err(Error::InvalidParameter(
                "sqrt_weight at a real point is for continuous families".into(),
            )),
        }
    }

    /// `P_n(x)` by the value-space recurrence (the well-conditioned
    /// evaluation; monomial coefficients stay reserved for symbolic work).
    fn value(&self, n: usize, x: f64) -> f64 {
        eval_values(&self.family, n, x)[n]
    }

    /// `psi_n` at a continuous point.
    pub fn psi(&self, n: usize, s: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.inv_norms[n] * self.sqrt_weight(s)? * self.value(n, s))
    }

    /// `psi_n` at a lattice point; goes through `ln rho` so large supports
    /// (Kravchuk with N in the thousands) do not underflow.
    pub fn psi_lattice(&self, n: usize, x: i64) -> Result<f64> {
        self.check_index(n)?;
        let lw = self.family.log_weight(x)?;
        Ok(self.inv_norms[n] * (0.5 * lw).exp() * self.value(n, x as f64))
    }

    /// `(psi_n, psi_n', psi_n'')` at a continuous point, by the product rule
    /// with `u = (ln sqrt(rho))'`.
    pub fn psi_derivatives(&self, n: usize, s: f64) -> Result<(f64, f64, f64)> {
        self.check_index(n)?;
        let (u, du) = match self.family.params() {
            Params::Hermite => (-s, -1.0),
            Params::Laguerre { alpha } => {
                if s <= 0.0 {
                    return Err(Error::OutsideSupport {
                        family: self.family.name().to_string(),
                        point: s.to_string(),
                    });
                }
                (alpha / (2.0 * s) - 0.5, -alpha / (2.0 * s * s))
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "derivatives are for continuous families".into(),
                ))
            }
        };
        let base = self.inv_norms[n] * self.sqrt_weight(s)?;
        let p = self.seq.poly(n);
        let v = p.eval(&s);
        let dv = p.derivative().eval(&s);
        let ddv = p.derivative().derivative().eval(&s);
        let psi = base * v;
        let dpsi = base * (dv + u * v);
        let ddpsi = base * (ddv + 2.0 * u * dv + (u * u + du) * v);
        Ok((psi, dpsi, ddpsi))
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.seq.max_degree() {
            return Err(Error::IndexOutOfRange {
                index: n,
                what: format!("table built to n_max = {}", self.seq.max_degree()),
            });
        }
        Ok(())
    }

    /// Residual of one normalized continuous relation, relative to the
    /// largest participating term. Index-shifted terms with vanishing
    /// square-root prefactors drop out automatically.
    pub fn nc_residual(&self, relation: NcRelation, n: usize, s: f64) -> Result<f64> {
        let terms = self.nc_terms(relation, n, s)?;
        Ok(relative_residual(&terms))
    }

    /// Splits a relation into *elementary products* (single products of
    /// evaluated factors, no internal cancellation) that sum to its residual,
    /// so `max |term|` is a sound scale even where whole sub-expressions like
    /// `(s + d/ds) psi_0` vanish identically.
    fn nc_terms(&self, relation: NcRelation, n: usize, s: f64) -> Result<Vec<f64>> {
        let nf = n as f64;
        match self.family.params() {
            Params::Hermite => {
                let base = self.inv_norms[n] * self.sqrt_weight(s)?;
                let p = self.seq.poly(n);
                let wv = base * p.eval(&s);
                let wdv = base * p.derivative().eval(&s);
                let wddv = base * p.derivative().derivative().eval(&s);
                Ok(match relation {
                    // psi'' + (2n+1-s^2) psi, with psi'' expanded over the
                    // Gaussian factor: w (P'' - 2sP' + (s^2-1)P)
                    NcRelation::Nc1 => vec![
                        wddv,
                        -2.0 * s * wdv,
                        (s * s - 1.0) * wv,
                        (2.0 * nf + 1.0 - s * s) * wv,
                    ],
                    NcRelation::Nc2 => vec![
                        (2.0 * (nf + 1.0)).sqrt() * self.shifted_psi(n, 1, s)?,
                        (2.0 * nf).sqrt() * self.shifted_psi(n, -1, s)?,
                        -2.0 * s * wv,
                    ],
                    // sqrt(n+1) psi_{n+1} - (s psi - psi')/sqrt(2)
                    NcRelation::Nc3 => {
                        let r = 1.0 / 2f64.sqrt();
                        vec![
                            (nf + 1.0).sqrt() * self.shifted_psi(n, 1, s)?,
                            -r * s * wv,
                            r * wdv,
                            -r * s * wv,
                        ]
                    }
                    // sqrt(n) psi_{n-1} - (s psi + psi')/sqrt(2)
                    NcRelation::Nc4 => {
                        let r = 1.0 / 2f64.sqrt();
                        vec![
                            nf.sqrt() * self.shifted_psi(n, -1, s)?,
                            -r * s * wv,
                            -r * wdv,
                            r * s * wv,
                        ]
                    }
                })
            }
            Params::Laguerre { alpha } => {
                let a = *alpha;
                if s <= 0.0 {
                    return Err(Error::OutsideSupport {
                        family: self.family.name().to_string(),
                        point: s.to_string(),
                    });
                }
                let base = self.inv_norms[n] * self.sqrt_weight(s)?;
                let p = self.seq.poly(n);
                let wv = base * p.eval(&s);
                let wdv = base * p.derivative().eval(&s);
                let wddv = base * p.derivative().derivative().eval(&s);
                Ok(match relation {
                    // Self-adjoint form multiplied through by s:
                    // s^2 psi'' + s psi' + [ns + s/2 - (alpha-s)^2/4] psi = 0,
                    // psi'' and psi' expanded over the s^(a/2) e^(-s/2) factor.
                    NcRelation::Nc1 => vec![
                        s * s * wddv,
                        (a * s - s * s) * wdv,
                        (0.25 * (a * a - 2.0 * a) - 0.5 * a * s + 0.25 * s * s) * wv,
                        s * wdv,
                        0.5 * (a - s) * wv,
                        (nf * s + 0.5 * s - 0.25 * (a - s) * (a - s)) * wv,
                    ],
                    NcRelation::Nc2 => vec![
                        ((nf + 1.0) * (nf + a + 1.0)).sqrt() * self.shifted_psi(n, 1, s)?,
                        (nf * (nf + a)).sqrt() * self.shifted_psi(n, -1, s)?,
                        -(2.0 * nf + a + 1.0 - s) * wv,
                    ],
                    // sqrt((n+1)(n+a+1)) psi_{n+1} - (2n+a+2-s)/2 psi - s psi'
                    NcRelation::Nc3 => vec![
                        ((nf + 1.0) * (nf + a + 1.0)).sqrt() * self.shifted_psi(n, 1, s)?,
                        -0.5 * (2.0 * nf + a + 2.0 - s) * wv,
                        -s * wdv,
                        -0.5 * (a - s) * wv,
                    ],
                    // sqrt(n(n+a)) psi_{n-1} - (2n+a-s)/2 psi + s psi'
                    NcRelation::Nc4 => vec![
                        (nf * (nf + a)).sqrt() * self.shifted_psi(n, -1, s)?,
                        -0.5 * (2.0 * nf + a - s) * wv,
                        s * wdv,
                        0.5 * (a - s) * wv,
                    ],
                })
            }
            _ => Err(Error::InvalidParameter(
                "NC relations are for Hermite and Laguerre".into(),
            )),
        }
    }

    /// `psi_{n+shift}`, with out-of-table indices contributing zero (their
    /// prefactors vanish in every relation that references them).
    fn shifted_psi(&self, n: usize, shift: i64, s: f64) -> Result<f64> {
        let idx = n as i64 + shift;
        if idx < 0 {
            return Ok(0.0);
        }
        self.psi(idx as usize, s)
    }

    fn shifted_psi_lattice(&self, n: i64, x: i64) -> Result<f64> {
        if n < 0 || x < 0 {
            return Ok(0.0);
        }
        if let Params::Kravchuk { size, .. } = self.family.params() {
            if x > *size {
                return Ok(0.0);
            }
        }
        self.psi_lattice(n as usize, x)
    }

    /// Residual of one normalized Meixner relation at lattice point `x`,
    /// relative to the largest term.
    pub fn meixner_nd_residual(&self, relation: NdRelation, n: usize, x: i64) -> Result<f64> {
        let Params::Meixner { gamma, mu } = self.family.params() else {
            return Err(Error::InvalidParameter(
                "ND relations here are for Meixner; Wigner has its own module".into(),
            ));
        };
        let (g, m) = (*gamma, *mu);
        self.check_index(n)?;
        let nf = n as f64;
        let xf = x as f64;
        let here = self.psi_lattice(n, x)?;
        let terms = match relation {
            NdRelation::Nd1 => {
                let right = self.shifted_psi_lattice(n as i64, x + 1)?;
                let left = self.shifted_psi_lattice(n as i64, x - 1)?;
                vec![
                    (m * (g + xf) * (xf + 1.0)).sqrt() * right,
                    (m * xf * (xf + g - 1.0)).sqrt() * left,
                    -(m * (xf + nf + g) - nf + xf) * here,
                ]
            }
            NdRelation::Nd2 => {
                let up = self.shifted_psi_lattice(n as i64 + 1, x)?;
                let down = self.shifted_psi_lattice(n as i64 - 1, x)?;
                vec![
                    (m * (g + nf) * (nf + 1.0)).sqrt() * up,
                    (m * nf * (nf + g - 1.0)).sqrt() * down,
                    -(m * (xf + nf + g) - xf + nf) * here,
                ]
            }
            NdRelation::Nd3 => {
                let up = self.shifted_psi_lattice(n as i64 + 1, x)?;
                let left = self.shifted_psi_lattice(n as i64, x - 1)?;
                vec![
                    (m * (g + nf) * (nf + 1.0)).sqrt() * up,
                    -m * (xf + nf + g) * here,
                    (m * xf * (xf + g - 1.0)).sqrt() * left,
                ]
            }
            NdRelation::Nd4 => {
                let down = self.shifted_psi_lattice(n as i64 - 1, x)?;
                let right = self.shifted_psi_lattice(n as i64, x + 1)?;
                vec![
                    (m * nf * (nf + g - 1.0)).sqrt() * down,
                    -m * (xf + nf + g) * here,
                    (m * (g + xf) * (xf + 1.0)).sqrt() * right,
                ]
            }
        };
        Ok(relative_residual(&terms))
    }

    /// Largest deviation of `<psi_n, psi_m>` from the identity over the full
    /// table (quadrature for continuous families, support summation with a
    /// tail cutoff for lattice ones).
    pub fn orthonormality_defect(&self) -> Result<f64> {
        let gram = gram_f64(&self.seq, MEIXNER_TAIL_EPS)?;
        let n = self.seq.max_degree() + 1;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let normalized = gram[i][j] * self.inv_norms[i] * self.inv_norms[j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((normalized - target).abs());
            }
        }
        Ok(worst)
    }

    /// Samples `psi_n` into a [`NormalizedState`].
    pub fn state(&self, n: usize, points: &[f64]) -> Result<NormalizedState> {
        let values = match self.family.kind() {
            Kind::Continuous => points
                .iter()
                .map(|&s| self.psi(n, s))
                .collect::<Result<Vec<_>>>()?,
            Kind::Discrete => points
                .iter()
                .map(|&x| self.psi_lattice(n, x.round() as i64))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(NormalizedState {
            family: self.family.name().to_string(),
            n,
            points: points.to_vec(),
            values,
            norm_checked: false,
        })
    }
}

/// `|sum of terms| / max |term|`; falls back to the absolute residual when
/// every term is below the floating-point floor.
pub fn relative_residual(terms: &[f64]) -> f64 {
    let total: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
    if scale < 1e-290 {
        total.abs()
    } else {
        total.abs() / scale
    }
}

/// Hydrogen-atom radial functions built on Laguerre:
/// `psi_{n,l}(s) = sqrt(rho_1(s)) L^(2l+1)_(n-l-1)(s)` with
/// `rho_1 = s^(2l+2) e^(-s)`.
pub struct HydrogenStates {
    tables: Vec<(usize, NormalizedFamily)>, // (l, Laguerre(2l+1) table)
}

impl HydrogenStates {
    pub fn new(max_n: usize) -> Result<Self> {
        let mut tables = Vec::new();
        for l in 0..max_n {
            let fam = Family::laguerre((2 * l + 1) as f64)?;
            tables.push((l, NormalizedFamily::new(fam, max_n)?));
        }
        Ok(HydrogenStates { tables })
    }

    fn table(&self, l: usize) -> Result<&NormalizedFamily> {
        self.tables
            .iter()
            .find(|(tl, _)| *tl == l)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::IndexOutOfRange {
                index: l,
                what: "hydrogen l beyond the prepared tables".into(),
            })
    }

    fn radial_index(n: usize, l: usize) -> Result<usize> {
        if n == 0 || l >= n {
            return Err(Error::InvalidParameter(format!(
                "hydrogen needs n > l >= 0, got n = {n}, l = {l}"
            )));
        }
        Ok(n - l - 1)
    }

    /// Un-normalized `psi_{n,l}(s)`.
    pub fn psi(&self, n: usize, l: usize, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Err(Error::Singular(format!("hydrogen needs s > 0, got {s}")));
        }
        let k = Self::radial_index(n, l)?;
        let table = self.table(l)?;
        let lag = table.seq().eval(k, &s);
        Ok(rho1_sqrt(l, s) * lag)
    }

    /// Relative residual of the radial Sturm-Liouville equation
    /// `psi'' - rho_1^{-1/2} (rho_1^{1/2})'' psi + (n - l - 1) s^{-1} psi = 0`.
    pub fn residual(&self, n: usize, l: usize, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Err(Error::Singular(format!("hydrogen needs s > 0, got {s}")));
        }
        let k = Self::radial_index(n, l)?;
        let table = self.table(l)?;
        let p = table.seq().poly(k);
        let v = p.eval(&s);
        let dv = p.derivative().eval(&s);
        let ddv = p.derivative().derivative().eval(&s);
        // u = (ln rho_1^{1/2})' = (l+1)/s - 1/2
        let u = (l as f64 + 1.0) / s - 0.5;
        let du = -(l as f64 + 1.0) / (s * s);
        let w = rho1_sqrt(l, s);
        let curvature = u * u + du; // rho_1^{-1/2} (rho_1^{1/2})''
        // psi'' - curvature psi + (n-l-1)/s psi, as elementary products (the
        // curvature parts of psi'' and of -curvature*psi cancel exactly).
        let terms = [
            w * ddv,
            2.0 * u * w * dv,
            curvature * w * v,
            -curvature * w * v,
            (n as f64 - l as f64 - 1.0) / s * w * v,
        ];
        Ok(relative_residual(&terms))
    }

    /// Normalized overlap `<psi_{n1,l}, psi_{n2,l}>` with weight `s^{-1}`,
    /// by Gauss-Laguerre quadrature exact for the polynomial integrand.
    pub fn overlap(&self, n1: usize, n2: usize, l: usize) -> Result<f64> {
        let k1 = Self::radial_index(n1, l)?;
        let k2 = Self::radial_index(n2, l)?;
        let table = self.table(l)?;
        let rule = gauss_rule(table.family(), k1.max(k2) + 1)?;
        let p1 = table.seq().poly(k1);
        let p2 = table.seq().poly(k2);
        let raw = rule.integrate(|s| p1.eval(&s) * p2.eval(&s));
        let d1 = table.family().squared_norm(k1);
        let d2 = table.family().squared_norm(k2);
        Ok(raw / (d1 * d2).sqrt())
    }
}

fn rho1_sqrt(l: usize, s: f64) -> f64 {
    s.powi(l as i32 + 1) * (-0.5 * s).exp()
}

/// Worst pointwise drift between the exact table (coefficient evaluation,
/// exact) and the float engine (value-space recurrence), relative to
/// `max(|exact|, 1)`; the floor keeps symmetric-point exact zeros from
/// blowing up the metric. Shared by the certify module and tests.
pub fn eval_drift<T: Scalar>(exact: &PolySeq<T>, float: &PolySeq<f64>, points: &[T]) -> f64 {
    let n_max = exact.max_degree().min(float.max_degree());
    let mut worst: f64 = 0.0;
    for pt in points {
        let floats = eval_values(&float.family, n_max, pt.to_f64());
        for (n, f) in floats.iter().enumerate() {
            let e = exact.eval(n, pt).to_f64();
            worst = worst.max((f - e).abs() / e.abs().max(1.0));
        }
    }
    worst
}

/// `(P_n(x), psi_n(x))` pair for tabulation.
pub fn table_row(nf: &NormalizedFamily, n: usize, point: f64) -> Result<(f64, f64)> {
    match nf.family().kind() {
        Kind::Continuous => Ok((nf.value(n, point), nf.psi(n, point)?)),
        Kind::Discrete => {
            let x = point.round() as i64;
            Ok((nf.value(n, x as f64), nf.psi_lattice(n, x)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_ground_state_value() {
        let nf = NormalizedFamily::new(Family::hermite(), 4).unwrap();
        let expect = std::f64::consts::PI.powf(-0.25);
        assert!((nf.psi(0, 0.0).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn meixner_ground_state_value() {
        let fam = Family::meixner(1.0, 0.5).unwrap();
        let nf = NormalizedFamily::new(fam, 3).unwrap();
        assert!((nf.psi_lattice(0, 0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn kravchuk_small_ground_state() {
        let fam = Family::kravchuk(0.5, 1).unwrap();
        let nf = NormalizedFamily::new(fam, 1).unwrap();
        assert!((nf.psi_lattice(0, 0).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermite_nc_relations() {
        let nf = NormalizedFamily::new(Family::hermite(), 12).unwrap();
        // NC1 at n = 0 is the Gaussian ground state, identically.
        for s in [-3.0, -0.5, 0.0, 1.7] {
            assert!(nf.nc_residual(NcRelation::Nc1, 0, s).unwrap() < 1e-14);
        }
        let mut grid = Vec::new();
        let mut s = -8.0;
        while s <= 8.0 {
            grid.push(s);
            s += 0.5;
        }
        for n in 0..=10 {
            for &s in &grid {
                for rel in [NcRelation::Nc1, NcRelation::Nc2, NcRelation::Nc3, NcRelation::Nc4] {
                    let r = nf.nc_residual(rel, n, s).unwrap();
                    assert!(r < 1e-10, "hermite {rel:?} n = {n} s = {s}: {r}");
                }
            }
        }
    }

    #[test]
    fn hermite_nc3_reproduces_psi1() {
        let nf = NormalizedFamily::new(Family::hermite(), 2).unwrap();
        for &s in &[-2.0, -1.0, 0.5, 3.0] {
            let (psi0, dpsi0, _) = nf.psi_derivatives(0, s).unwrap();
            let built = (s * psi0 - dpsi0) / 2f64.sqrt();
            let direct = nf.psi(1, s).unwrap();
            assert!((built - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn laguerre_nc_relations() {
        for alpha in [0.0, 0.5, 2.0] {
            let fam = Family::laguerre(alpha).unwrap();
            let nf = NormalizedFamily::new(fam, 12).unwrap();
            let mut grid = Vec::new();
            let mut s = 0.5;
            while s <= 30.0 {
                grid.push(s);
                s += 1.5;
            }
            for n in 0..=10 {
                for &s in &grid {
                    for rel in
                        [NcRelation::Nc1, NcRelation::Nc2, NcRelation::Nc3, NcRelation::Nc4]
                    {
                        let r = nf.nc_residual(rel, n, s).unwrap();
                        assert!(r < 1e-10, "laguerre({alpha}) {rel:?} n = {n} s = {s}: {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn laguerre_nc2_spot_value() {
        // n = 1, alpha = 0, s = 1: sqrt((n+1)(n+alpha+1)) = 2, so
        // 2 psi_2(1) + psi_0(1) - (4 - 1) psi_1(1) = 0 (and psi_1(1) = 0).
        let fam = Family::laguerre(0.0).unwrap();
        let nf = NormalizedFamily::new(fam, 3).unwrap();
        let lhs = 2.0 * nf.psi(2, 1.0).unwrap() + nf.psi(0, 1.0).unwrap()
            - 3.0 * nf.psi(1, 1.0).unwrap();
        assert!(lhs.abs() < 1e-12);
        assert!(nf.psi(1, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn meixner_nd_relations_and_duality() {
        let fam = Family::meixner(1.0, 0.5).unwrap();
        let nf = NormalizedFamily::new(fam, 9).unwrap();
        for n in 0..=8usize {
            for x in 0..=20i64 {
                for rel in [NdRelation::Nd1, NdRelation::Nd2, NdRelation::Nd3, NdRelation::Nd4] {
                    let r = nf.meixner_nd_residual(rel, n, x).unwrap();
                    assert!(r < 1e-10, "{rel:?} n = {n} x = {x}: {r}");
                }
            }
        }
        // Self-duality M_n(x) = M_x(n), which exchanges (ND1,ND3) with (ND2,ND4).
        let nf = NormalizedFamily::new(Family::meixner(1.0, 0.5).unwrap(), 15).unwrap();
        for n in 0..=6usize {
            for x in 0..=6i64 {
                let a = nf.psi_lattice(n, x).unwrap();
                let b = nf.psi_lattice(x as usize, n as i64).unwrap();
                assert!((a - b).abs() < 1e-12, "duality n = {n} x = {x}");
            }
        }
    }

    #[test]
    fn orthonormality() {
        let nf = NormalizedFamily::new(Family::hermite(), 8).unwrap();
        assert!(nf.orthonormality_defect().unwrap() < 1e-10);
        let nf = NormalizedFamily::new(Family::meixner(2.0, 0.25).unwrap(), 8).unwrap();
        assert!(nf.orthonormality_defect().unwrap() < 1e-10);
        let nf = NormalizedFamily::new(Family::kravchuk(0.3, 10).unwrap(), 10).unwrap();
        assert!(nf.orthonormality_defect().unwrap() < 1e-10);
    }

    #[test]
    fn hydrogen_residuals() {
        let hy = HydrogenStates::new(6).unwrap();
        let mut s = 0.1;
        while s <= 30.0 {
            for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 1), (4, 2), (6, 3)] {
                let r = hy.residual(n, l, s).unwrap();
                assert!(r < 1e-10, "(n,l) = ({n},{l}) s = {s}: {r}");
            }
            s += 0.7;
        }
        // closed-form spot: n=1, l=0 has psi = s e^{-s/2}
        assert!((hy.psi(1, 0, 2.0).unwrap() - 2.0 * (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn hydrogen_orthogonality_same_l() {
        let hy = HydrogenStates::new(6).unwrap();
        assert!(hy.overlap(1, 2, 0).unwrap().abs() < 1e-12);
        assert!(hy.overlap(2, 3, 1).unwrap().abs() < 1e-12);
        assert!(hy.overlap(2, 3, 0).unwrap().abs() < 1e-12);
        assert!((hy.overlap(2, 2, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hydrogen_domain_errors() {
        let hy = HydrogenStates::new(4).unwrap();
        assert!(hy.residual(1, 1, 1.0).is_err());
        assert!(hy.residual(2, 0, 0.0).is_err());
        assert!(hy.residual(2, 0, -1.0).is_err());
    }

    #[test]
    fn out_of_table_index_rejected() {
        let nf = NormalizedFamily::new(Family::hermite(), 3).unwrap();
        assert!(nf.psi(4, 0.0).is_err());
        // Kravchuk norms stop at n = N
        assert!(NormalizedFamily::new(Family::kravchuk(0.5, 4).unwrap(), 5).is_err());
    }
}
