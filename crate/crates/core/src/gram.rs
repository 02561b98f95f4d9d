//! Gram matrices of the polynomial tables against the family weight.
//!
//! Lattice families get an exact route: Kravchuk by direct summation over the
//! finite support, Meixner through the factorial-moment functional of the
//! negative-binomial weight,
//! `sum_x rho(x) (x)_k = mu^k (gamma)_k (1-mu)^(-gamma-k)`,
//! which turns every Gram entry into `(1-mu)^(-gamma)` times a rational
//! number. Off-diagonal entries are then *exactly* zero, with no truncation
//! of the infinite support. (The float mode still sums directly with a tail
//! cutoff, so the two modes stay independent.)
//!
//! Continuous families use the Golub–Welsch rule of [`crate::quadrature`].

use crate::error::{Error, Result};
use crate::family::{Family, Kind, Params};
use crate::quadrature::gauss_rule;
use crate::scalar::Scalar;
use crate::sequence::{eval_values, PolySeq};

/// Tail threshold for the float-mode Meixner summation.
pub const MEIXNER_TAIL_EPS: f64 = 1e-30;

/// Exact Gram matrix of a lattice family, *normalized by the total mass*
/// (entries are `<P_n, P_m> / <1, 1>`), which keeps every entry inside the
/// scalar field even when the mass itself is irrational (Meixner with
/// non-integer `gamma`). The diagonal equals
/// [`Family::squared_norm_ratio`].
pub fn gram_mass_ratio<T: Scalar>(seq: &PolySeq<T>) -> Result<Vec<Vec<T>>> {
    let family = &seq.family;
    let n = seq.max_degree() + 1;
    match family.params() {
        Params::Kravchuk { size, .. } => {
            if seq.max_degree() as i64 > *size {
                return Err(Error::IndexOutOfRange {
                    index: seq.max_degree(),
                    what: format!("Kravchuk table beyond N = {size}"),
                });
            }
            let mut gram = vec![vec![T::zero(); n]; n];
            for x in 0..=*size {
                let w = family.weight(x)?;
                let values: Vec<T> =
                    (0..n).map(|k| seq.eval(k, &T::from_int(x))).collect();
                for i in 0..n {
                    for j in i..n {
                        gram[i][j] = gram[i][j].clone()
                            + w.clone() * values[i].clone() * values[j].clone();
                    }
                }
            }
            mirror(&mut gram);
            Ok(gram)
        }
        Params::Meixner { gamma, mu } => {
            let max_power = 2 * seq.max_degree();
            let moments = meixner_moments(gamma, mu, max_power);
            let mut gram = vec![vec![T::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    let prod = seq.poly(i).mul(seq.poly(j));
                    let mut acc = T::zero();
                    for (k, c) in prod.coeffs().iter().enumerate() {
                        acc = acc + c.clone() * moments[k].clone();
                    }
                    gram[i][j] = acc;
                }
            }
            mirror(&mut gram);
            Ok(gram)
        }
        _ => Err(Error::InvalidParameter(format!(
            "exact Gram is for lattice families, got {}",
            family.name()
        ))),
    }
}

/// Mass-normalized moments `L[x^k] = sum_x rho(x) x^k / sum_x rho(x)` of the
/// Meixner weight, via Stirling numbers of the second kind and the closed
/// factorial moments.
fn meixner_moments<T: Scalar>(gamma: &T, mu: &T, max_power: usize) -> Vec<T> {
    let stirling = stirling2::<T>(max_power);
    let ratio = mu.clone() / (T::one() - mu.clone());
    // falling[k] = mu^k (gamma)_k / (1-mu)^k
    let mut falling = Vec::with_capacity(max_power + 1);
    falling.push(T::one());
    for k in 0..max_power {
        let last: T = falling[k].clone();
        falling.push(last * ratio.clone() * (gamma.clone() + T::from_int(k as i64)));
    }
    (0..=max_power)
        .map(|j| {
            let mut acc = T::zero();
            for (k, f) in falling.iter().enumerate().take(j + 1) {
                acc = acc + stirling[j][k].clone() * f.clone();
            }
            acc
        })
        .collect()
}

/// Stirling numbers of the second kind, rows `0 ..= n_max`.
fn stirling2<T: Scalar>(n_max: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for n in 1..=n_max {
        let mut row = vec![T::zero(); n + 1];
        for k in 1..=n {
            let carry = if k < n { rows[n - 1][k].clone() } else { T::zero() };
            row[k] = T::from_int(k as i64) * carry + rows[n - 1][k - 1].clone();
        }
        rows.push(row);
    }
    rows
}

fn mirror<T: Scalar>(m: &mut [Vec<T>]) {
    for i in 0..m.len() {
        for j in 0..i {
            m[i][j] = m[j][i].clone();
        }
    }
}

/// Float-mode Gram matrix with the true (un-normalized) measure. Lattice
/// families sum directly (Meixner truncated when the weight envelope drops
/// below `tail_eps`); continuous families use Gauss quadrature of order
/// `max_degree + 1`.
pub fn gram_f64(seq: &PolySeq<f64>, tail_eps: f64) -> Result<Vec<Vec<f64>>> {
    let family = &seq.family;
    let n = seq.max_degree() + 1;
    match family.kind() {
        Kind::Continuous => {
            let rule = gauss_rule(family, seq.max_degree() + 1)?;
            let mut gram = vec![vec![0.0; n]; n];
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let values = eval_values(family, seq.max_degree(), x);
                for i in 0..n {
                    for j in i..n {
                        gram[i][j] += w * values[i] * values[j];
                    }
                }
            }
            mirror_f64(&mut gram);
            Ok(gram)
        }
        Kind::Discrete => {
            let max = match family.params() {
                Params::Kravchuk { size, .. } => Some(*size),
                _ => None,
            };
            let mut gram = vec![vec![0.0; n]; n];
            let mut w = family.weight(0)?;
            let mut x = 0i64;
            loop {
                let values = eval_values(family, seq.max_degree(), x as f64);
                let envelope = values.iter().fold(1.0f64, |acc, v| acc.max(v * v));
                for i in 0..n {
                    for j in i..n {
                        gram[i][j] += w * values[i] * values[j];
                    }
                }
                x += 1;
                match max {
                    Some(m) if x > m => break,
                    Some(_) => {
                        w = family.weight(x)?;
                    }
                    None => {
                        // rho(x+1) = rho(x) mu (gamma + x) / (x + 1)
                        let Params::Meixner { gamma, mu } = family.params() else {
                            unreachable!()
                        };
                        w *= mu * (gamma + (x - 1) as f64) / x as f64;
                        if w * envelope < tail_eps && x as usize > 4 * (n + 2) {
                            break;
                        }
                        if x > 200_000 {
                            return Err(Error::NonConvergentTail(format!(
                                "Meixner tail still {w:.3e} at x = {x}"
                            )));
                        }
                    }
                }
            }
            mirror_f64(&mut gram);
            Ok(gram)
        }
    }
}

fn mirror_f64(m: &mut [Vec<f64>]) {
    for i in 0..m.len() {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
}

/// Checks that an *exact, mass-normalized* Gram matrix is diagonal with the
/// stated squared-norm ratios; returns the first offending `(n, m)` pair.
pub fn diagonality_failure<T: Scalar>(
    family: &Family<T>,
    gram: &[Vec<T>],
) -> Option<(usize, usize)> {
    for (i, row) in gram.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if i != j && !entry.is_zero() {
                return Some((i, j));
            }
            if i == j {
                match family.squared_norm_ratio(i) {
                    Some(expected) if expected == *entry => {}
                    _ => return Some((i, j)),
                }
            }
        }
    }
    None
}
