//! Small special-function kit: log-gamma, gamma, factorials.
//!
//! Lanczos approximation with g = 7 and 9 coefficients; max relative error
//! ~2e-10 over the positive axis, which is ample for weight prefactors and
//! normalization constants (the exact-arithmetic paths never call these).

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // Reflection keeps the approximation in its accurate range.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma function for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// `n!` as f64 (exact through 20!, then via gamma).
pub fn factorial(n: usize) -> f64 {
    if n <= 20 {
        (1..=n).map(|k| k as f64).product()
    } else {
        gamma(n as f64 + 1.0)
    }
}

/// Binomial coefficient as f64, computed multiplicatively.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).map(|k| a + k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integers_and_half() {
        for n in 1..10usize {
            let expect = factorial(n - 1);
            assert!(
                (gamma(n as f64) - expect).abs() / expect < 1e-12,
                "gamma({n}) = {}, expected {expect}",
                gamma(n as f64)
            );
        }
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5) - sqrt_pi).abs() < 1e-12);
        assert!((gamma(1.5) - 0.5 * sqrt_pi).abs() < 1e-12);
        assert!((gamma(2.5) - 0.75 * sqrt_pi).abs() < 1e-12);
    }

    #[test]
    fn ln_gamma_large() {
        // ln(100!) from exact integer arithmetic: 363.73937555556349...
        assert!((ln_gamma(101.0) - 363.73937555556347).abs() < 1e-9);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(binomial(20, 10), 184756.0);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(3.0, 0), 1.0);
    }
}
