use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, ExactRational};
use crate::error::Error;

/// One of the two coefficient markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    /// Depth of the rightmost leaf (the catalytic variable).
    T,
    /// Marks the statistic whose distribution is being counted.
    Q,
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::T => "t",
            Marker::Q => "q",
        })
    }
}

/// Sparse polynomial in `t` and `q` with exact rational coefficients.
///
/// Keys are exponent pairs `(e_t, e_q)`. Zero coefficients are never stored,
/// so structural equality is coefficient-wise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), ExactRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(et: u32, eq: u32, c: ExactRational) -> Self {
        let mut p = Self::zero();
        p.add_term(et, eq, c);
        p
    }

    /// The marker itself, `t` or `q`.
    pub fn var(marker: Marker) -> Self {
        match marker {
            Marker::T => Self::monomial(1, 0, ExactRational::one()),
            Marker::Q => Self::monomial(0, 1, ExactRational::one()),
        }
    }

    /// Builds a polynomial from `(e_t, e_q, coefficient)` integer triples.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(et, eq, c) in terms {
            p.add_term(et, eq, rat(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(e_t, e_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &ExactRational)> + '_ {
        self.terms.iter().map(|(&(et, eq), c)| (et, eq, c))
    }

    pub fn coeff(&self, et: u32, eq: u32) -> ExactRational {
        self.terms
            .get(&(et, eq))
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// The value of a polynomial free of both markers (zero counts).
    pub fn constant_value(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Highest exponent of `marker`, `None` for the zero polynomial.
    pub fn degree(&self, marker: Marker) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(et, eq)| match marker {
                Marker::T => et,
                Marker::Q => eq,
            })
            .max()
    }

    pub fn depends_on(&self, marker: Marker) -> bool {
        self.degree(marker).is_some_and(|d| d > 0)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn add_term(&mut self, et: u32, eq: u32, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((et, eq)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                add_into(o.get_mut(), &c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += a * b` without building the product separately.
    pub fn add_mul(&mut self, a: &Poly2, b: &Poly2) {
        for (&(at, aq), ac) in &a.terms {
            for (&(bt, bq), bc) in &b.terms {
                self.add_term(at + bt, aq + bq, mul_rat(ac, bc));
            }
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `t^et q^eq`.
    pub fn shift(&self, et: u32, eq: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + et, b + eq), v.clone()))
                .collect(),
        }
    }

    /// Replaces `marker` by the rational `value`.
    pub fn substitute(&self, marker: Marker, value: &ExactRational) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(et, eq), c) in &self.terms {
            let (e, key) = match marker {
                Marker::T => (et, (0, eq)),
                Marker::Q => (eq, (et, 0)),
            };
            out.add_term(key.0, key.1, c * pow(value, e));
        }
        out
    }

    /// `d/dq`: `t^a q^b -> b t^a q^(b-1)`.
    pub fn q_derivative(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(et, eq), c) in &self.terms {
            if eq > 0 {
                out.add_term(et, eq - 1, c * rat(i64::from(eq)));
            }
        }
        out
    }

    /// `q d/dq`: `t^a q^b -> b t^a q^b`.
    pub fn q_euler(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(et, eq), c) in &self.terms {
            out.add_term(et, eq, c * rat(i64::from(eq)));
        }
        out
    }

    /// Maps a polynomial `c(t)` to `q^n c(1/q)`, moving every `t` exponent `a`
    /// to the `q` exponent `n - a`. Fails if any `t` degree exceeds `n` or the
    /// polynomial already depends on `q`.
    pub fn reverse_t_into_q(&self, n: u32) -> Result<Poly2, Error> {
        let mut out = Poly2::zero();
        for (&(et, eq), c) in &self.terms {
            if eq != 0 {
                return Err(Error::UnexpectedMarker {
                    marker: Marker::Q,
                    index: n as usize,
                });
            }
            if et > n {
                return Err(Error::DegreeOverflow {
                    index: n as usize,
                    degree: et,
                });
            }
            out.add_term(0, n - et, c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, t: &ExactRational, q: &ExactRational) -> ExactRational {
        self.terms
            .iter()
            .map(|(&(et, eq), c)| c * pow(t, et) * pow(q, eq))
            .fold(ExactRational::zero(), |acc, v| acc + v)
    }
}

// Integer-valued rationals are the common case; skip the gcd reduction that
// `Ratio` arithmetic performs on every operation.
fn mul_rat(a: &ExactRational, b: &ExactRational) -> ExactRational {
    if a.is_integer() && b.is_integer() {
        ExactRational::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

fn add_into(slot: &mut ExactRational, c: &ExactRational) {
    if slot.is_integer() && c.is_integer() {
        let sum = slot.numer() + c.numer();
        *slot = ExactRational::new_raw(sum, BigInt::one());
    } else {
        *slot += c;
    }
}

fn pow(base: &ExactRational, e: u32) -> ExactRational {
    if e == 0 {
        return ExactRational::one();
    }
    num_traits::pow(base.clone(), e as usize)
}

impl From<i64> for Poly2 {
    fn from(c: i64) -> Self {
        Poly2::from_int(c)
    }
}

impl From<BigInt> for Poly2 {
    fn from(c: BigInt) -> Self {
        Poly2::constant(ExactRational::from_integer(c))
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (&(et, eq), c) in &rhs.terms {
            self.add_term(et, eq, c.clone());
        }
    }
}

impl SubAssign<&Poly2> for Poly2 {
    fn sub_assign(&mut self, rhs: &Poly2) {
        for (&(et, eq), c) in &rhs.terms {
            self.add_term(et, eq, -c.clone());
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl fmt::Display for Poly2 {
    /// Renders like `2*q*t^2 - 1/2*q + 3`, highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| core::cmp::Reverse((k.0 + k.1, k.1)));
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<alloc::string::String> = Vec::new();
            if !mag.is_one() || *key == (0, 0) {
                factors.push(alloc::format!("{mag}"));
            }
            for (name, e) in [("q", key.1), ("t", key.0)] {
                match e {
                    0 => {}
                    1 => factors.push(name.into()),
                    _ => factors.push(alloc::format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q() -> Poly2 {
        Poly2::var(Marker::Q)
    }
    fn t() -> Poly2 {
        Poly2::var(Marker::T)
    }

    #[test]
    fn substitute_t_to_one() {
        let p = &(&q() * &t()) + &(&t() * &t());
        assert_eq!(p.substitute(Marker::T, &rat(1)), &q() + &Poly2::one());
    }

    #[test]
    fn substitute_to_zero_drops_marker() {
        let p = Poly2::from_int_terms(&[(0, 2, 3), (1, 1, 5), (0, 0, 1)]);
        assert_eq!(
            p.substitute(Marker::T, &rat(0)),
            Poly2::from_int_terms(&[(0, 2, 3), (0, 0, 1)])
        );
    }

    #[test]
    fn q_derivative_power_rule() {
        let p = Poly2::from_int_terms(&[(0, 0, 1), (0, 1, 3), (0, 2, 1)]);
        assert_eq!(
            p.q_derivative(),
            Poly2::from_int_terms(&[(0, 0, 3), (0, 1, 2)])
        );
        assert_eq!(p.q_euler(), Poly2::from_int_terms(&[(0, 1, 3), (0, 2, 2)]));
    }

    #[test]
    fn square_of_one_plus_q() {
        let p = &Poly2::one() + &q();
        assert_eq!(
            &p * &p,
            Poly2::from_int_terms(&[(0, 0, 1), (0, 1, 2), (0, 2, 1)])
        );
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn reverse_t_into_q_reflects_exponents() {
        // t + t^2 at x^2 -> q + 1
        let p = Poly2::from_int_terms(&[(1, 0, 1), (2, 0, 1)]);
        assert_eq!(
            p.reverse_t_into_q(2).unwrap(),
            Poly2::from_int_terms(&[(0, 1, 1), (0, 0, 1)])
        );
        assert!(matches!(
            p.reverse_t_into_q(1),
            Err(Error::DegreeOverflow { .. })
        ));
        assert!(q().reverse_t_into_q(3).is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = Poly2::from_int_terms(&[(2, 1, 2), (0, 1, -1), (0, 0, 3)]);
        assert_eq!(p.to_string(), "2*q*t^2 - q + 3");
        assert_eq!(Poly2::zero().to_string(), "0");
    }
}
