use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in `n`, coefficients from the constant term upward,
/// with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    /// From coefficients listed highest power first, as formulas are printed.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = alloc::vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly(self.0.iter().map(|v| v / c).collect())
    }

    fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.div_scalar(&self.content());
        if p.leading().is_some_and(Signed::is_negative) {
            p = p.div_scalar(&-BigInt::one());
        }
        p
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading().unwrap();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for v in r.iter_mut() {
                *v *= lc;
            }
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &top * c;
            }
            r = IntPoly::new(r).0;
        }
        IntPoly::new(r)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient `self / d`; panics if `d` does not divide `self` over
    /// the integers.
    fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        if self.is_zero() {
            return IntPoly::default();
        }
        let lc = d.leading().unwrap();
        let mut r = self.0.clone();
        let mut q = alloc::vec![BigInt::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let (c, rem) = r.last().unwrap().div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r = IntPoly::new(r).0;
        }
        assert!(r.is_empty(), "inexact polynomial division");
        IntPoly::new(q)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match e {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{e}")?,
            }
        }
        Ok(())
    }
}

/// Rational function `p(n) / q(n)` with integer coefficients, kept in normal
/// form: `p`, `q` coprime, joint content 1, leading coefficient of `q`
/// positive. Two equal functions therefore have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionN {
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalFunctionN {
    /// Normalizes `p / q`. Returns `None` when `q` is identically zero.
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        if numerator.is_zero() {
            return Some(RationalFunctionN {
                numerator,
                denominator: IntPoly::new(alloc::vec![BigInt::one()]),
            });
        }
        let g = numerator.gcd(&denominator);
        let mut p = numerator.div_exact(&g);
        let mut q = denominator.div_exact(&g);
        let mut content = p.content().gcd(&q.content());
        if q.leading().is_some_and(Signed::is_negative) {
            content = -content;
        }
        p = p.div_scalar(&content);
        q = q.div_scalar(&content);
        Some(RationalFunctionN {
            numerator: p,
            denominator: q,
        })
    }

    /// Product of factors, each listed highest power first.
    pub fn from_factors(numerator: &[&[i64]], denominator: &[&[i64]]) -> Self {
        let prod = |fs: &[&[i64]]| {
            fs.iter()
                .fold(IntPoly::new(alloc::vec![BigInt::one()]), |acc, f| {
                    acc.mul(&IntPoly::from_descending(f))
                })
        };
        Self::new(prod(numerator), prod(denominator)).expect("nonzero denominator")
    }

    pub fn constant(c: &BigRational) -> Self {
        Self::new(
            IntPoly::new(alloc::vec![c.numer().clone()]),
            IntPoly::new(alloc::vec![c.denom().clone()]),
        )
        .expect("positive denominator")
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    pub fn num_degree(&self) -> Option<usize> {
        self.numerator.degree()
    }

    pub fn den_degree(&self) -> usize {
        self.denominator.degree().expect("nonzero denominator")
    }

    /// Value at `n`, or `None` at a pole.
    pub fn eval(&self, n: i64) -> Option<BigRational> {
        let n = BigInt::from(n);
        let d = self.denominator.eval(&n);
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.numerator.eval(&n), d))
    }

    /// The square of this function.
    pub fn squared(&self) -> RationalFunctionN {
        RationalFunctionN::new(
            self.numerator.mul(&self.numerator),
            self.denominator.mul(&self.denominator),
        )
        .expect("nonzero denominator")
    }

    /// Human-readable form such as `(n^2-1)/(8*n-4)`.
    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for RationalFunctionN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if nonzero > 1 {
                alloc::format!("({p})")
            } else {
                alloc::format!("{p}")
            }
        };
        if self.denominator.coeffs() == [BigInt::one()] {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", wrap(&self.numerator), wrap(&self.denominator))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn normalization_cancels_common_factors() {
        // (n^2 - 1) / (2n + 2) = (n - 1) / 2
        let rf = RationalFunctionN::new(
            IntPoly::from_descending(&[1, 0, -1]),
            IntPoly::from_descending(&[2, 2]),
        )
        .unwrap();
        assert_eq!(rf, RationalFunctionN::from_factors(&[&[1, -1]], &[&[2]]));
        assert_eq!(rf.to_string(), "(n-1)/2");
    }

    #[test]
    fn normalization_fixes_sign_and_content() {
        let rf = RationalFunctionN::new(
            IntPoly::from_descending(&[-6, 0]),
            IntPoly::from_descending(&[-4, 2]),
        )
        .unwrap();
        assert_eq!(rf.numerator().coeffs(), [BigInt::zero(), BigInt::from(3)]);
        assert_eq!(
            rf.denominator().coeffs(),
            [BigInt::from(-1), BigInt::from(2)]
        );
        assert_eq!(rf.to_string(), "3*n/(2*n-1)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(
            RationalFunctionN::new(IntPoly::from_descending(&[1]), IntPoly::default()).is_none()
        );
    }

    #[test]
    fn evaluation_and_poles() {
        let rf = RationalFunctionN::from_factors(&[&[1, 0, -1]], &[&[8, -4]]);
        assert_eq!(rf.eval(3), Some(BigRational::new(2.into(), 5.into())));
        let pole = RationalFunctionN::from_factors(&[&[1]], &[&[1, -2]]);
        assert_eq!(pole.eval(2), None);
    }

    #[test]
    fn display_constant_and_polynomial() {
        assert_eq!(
            RationalFunctionN::constant(&BigRational::from_integer(7.into())).to_string(),
            "7"
        );
        assert_eq!(
            RationalFunctionN::from_factors(&[&[1, 0, -1]], &[&[8, -4]]).to_string(),
            "(n^2-1)/(8*n-4)"
        );
        assert_eq!(
            RationalFunctionN::from_factors(&[&[-1, 0, 0]], &[&[1]]).to_string(),
            "-n^2"
        );
    }

    #[test]
    fn gcd_of_products() {
        let a = IntPoly::from_descending(&[2, -1, -1]); // (2n+1)(n-1)
        let b = IntPoly::from_descending(&[3, -3]); // 3(n-1)
        assert_eq!(a.gcd(&b), IntPoly::from_descending(&[1, -1]));
    }
}
