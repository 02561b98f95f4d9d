//! Minimal double-double arithmetic (compensated `f64` pairs, ~31 digits).
//!
//! The three-term value recurrence cancels catastrophically near lattice
//! support edges when a family parameter is small (Kravchuk with
//! `p = sin^2(beta/2)` close to 0 loses ~7 digits by degree 6 at `x = 0`).
//! Running just that recurrence in double-double absorbs the amplification
//! without changing the algorithm. Products lean on `f64::mul_add`, so the
//! error terms are exact.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(a: f64) -> Dd {
        Dd { hi: a, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        quick_two_sum(s.hi, s.lo + self.lo + other.lo)
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        quick_two_sum(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        quick_two_sum(q1, q2).add(Dd::from_f64(q3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_beyond_f64() {
        // (1 + 2^-60) - 1 survives in double-double
        let one_plus = Dd::ONE.add(Dd::from_f64(2f64.powi(-60)));
        let diff = one_plus.sub(Dd::ONE);
        assert_eq!(diff.value(), 2f64.powi(-60));
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = Dd::from_f64(std::f64::consts::PI).mul(Dd::from_f64(1.0 / 3.0));
        let b = a.div(Dd::from_f64(1.0 / 3.0));
        assert!((b.value() - std::f64::consts::PI).abs() < 1e-30);
        assert!(b.sub(Dd::from_f64(std::f64::consts::PI)).value().abs() < 1e-30);
    }

    #[test]
    fn cancellation_is_compensated() {
        // (a + tiny) - a in dd keeps tiny exactly
        let a = 1e16;
        let tiny = 0.5;
        let dd = two_sum(a, tiny);
        let back = Dd { hi: dd.hi, lo: dd.lo }.sub(Dd::from_f64(a));
        assert_eq!(back.value(), tiny);
    }
}
