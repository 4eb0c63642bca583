use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{ExactRational, Marker, Poly2};
use crate::error::Error;

/// Power series in `x` truncated after `x^order`, with [`Poly2`] coefficients.
///
/// Binary operations between series of different orders truncate to the
/// smaller order; nothing beyond a series' own order is ever assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly2>,
}

impl Series {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Poly2>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the x^0 coefficient"
        );
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Poly2::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Poly2::one(), order)
    }

    pub fn constant(c: Poly2, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// A polynomial in `x` (coefficients listed from `x^0`) viewed as a series
    /// of the given order. Terms above `order` are dropped.
    pub fn from_x_poly(coeffs: &[Poly2], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        s
    }

    /// Builds from `(e_x, e_t, e_q, coefficient)` integer terms.
    pub fn from_int_terms(terms: &[(usize, u32, u32, i64)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(ex, et, eq, c) in terms {
            if ex <= order {
                s.coeffs[ex].add_term(et, eq, super::rat(c));
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly2 {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly2] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly2> {
        self.coeffs
    }

    /// Truncates, or zero-pads, to `order`.
    pub fn with_order(&self, order: usize) -> Series {
        let mut coeffs: Vec<Poly2> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Poly2::zero());
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly2::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// First index, up to the smaller order, where the two series differ.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Equality up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn map_coeffs(&self, f: impl FnMut(&Poly2) -> Poly2) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, marker: Marker, value: &ExactRational) -> Series {
        self.map_coeffs(|c| c.substitute(marker, value))
    }

    pub fn scale(&self, c: &Poly2) -> Series {
        self.map_coeffs(|p| p * c)
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_x(&self, k: usize) -> Series {
        let order = self.order();
        let mut s = Series::zero(order);
        for (i, c) in self
            .coeffs
            .iter()
            .enumerate()
            .take((order + 1).saturating_sub(k))
        {
            s.coeffs[i + k] = c.clone();
        }
        s
    }

    /// Square root with constant term 1.
    ///
    /// Uses `y_n = (s_n - sum_{i=1}^{n-1} y_i y_{n-i}) / 2`, so only halving is
    /// ever needed.
    pub fn sqrt(&self) -> Result<Series, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstantTerm);
        }
        let half = ExactRational::new(1.into(), 2.into());
        let mut y = Vec::with_capacity(self.coeffs.len());
        y.push(Poly2::one());
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            let mut cross = Poly2::zero();
            for i in 1..n {
                cross.add_mul(&y[i], &y[n - i]);
            }
            acc -= &cross;
            y.push(acc.scale(&half));
        }
        Ok(Series { coeffs: y })
    }

    /// Multiplicative inverse; the constant coefficient must be a nonzero
    /// rational free of both markers.
    pub fn inverse(&self) -> Result<Series, Error> {
        let c0 = self.coeffs[0]
            .constant_value()
            .ok_or(Error::NotInvertible)?;
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv = c0.recip();
        let neg_inv = -inv.clone();
        let mut u = Vec::with_capacity(self.coeffs.len());
        u.push(Poly2::constant(inv));
        for n in 1..self.coeffs.len() {
            let mut acc = Poly2::zero();
            for i in 1..=n {
                acc.add_mul(&self.coeffs[i], &u[n - i]);
            }
            u.push(acc.scale(&neg_inv));
        }
        Ok(Series { coeffs: u })
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    /// Truncated Cauchy product.
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = Series::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_mul(a, b);
                }
            }
        }
        out
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
