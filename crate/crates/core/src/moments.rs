//! Moments of the jump statistics, extracted exactly from the bivariate
//! enumerators.
//!
//! For a series `S(x, q) = sum_n x^n c_n(q)`, applying `(q d/dq)^r` and then
//! setting `q = 1` gives the power sums `sum_T stat(T)^r` over trees with `n`
//! internal vertices; dividing by the Catalan count gives the raw moments.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, ExactRational, Marker, Poly2, Series};
use crate::error::Error;
use crate::genfunc::{solve_jump_distance, solve_jumps};
use crate::guess::RationalFunctionN;

/// Default number of tree sizes in a moment table.
pub const DEFAULT_NMAX: usize = 60;

/// Which statistic the `q` marker counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistic {
    /// Number of jumps, enumerated by `H(x,q)`.
    Jumps,
    /// Sum of jump distances, enumerated by `K(x,q)`.
    JumpDistance,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Jumps => "jumps",
            Statistic::JumpDistance => "jumpdist",
        }
    }

    /// The bivariate enumerator of this statistic up to `x^order`.
    pub fn series(self, order: usize) -> Result<Series, Error> {
        match self {
            Statistic::Jumps => solve_jumps(order),
            Statistic::JumpDistance => solve_jump_distance(order),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "jumps" | "j" => Ok(Statistic::Jumps),
            "jumpdist" | "jd" => Ok(Statistic::JumpDistance),
            _ => Err(Error::InvalidArgument(
                "statistic must be 'jumps' or 'jumpdist'",
            )),
        }
    }
}

/// `(q d/dq)^r` applied coefficient-wise, then `q := 1`. The coefficient of
/// `x^n` in the result is the power sum `sum_T stat(T)^r`.
pub fn q_log_derivative_power(s: &Series, r: u32) -> Result<Series, Error> {
    if let Some(index) = s.coeffs().iter().position(|c| c.depends_on(Marker::T)) {
        return Err(Error::UnexpectedMarker {
            marker: Marker::T,
            index,
        });
    }
    let one = rat(1);
    Ok(s.map_coeffs(|c| {
        let mut c = c.clone();
        for _ in 0..r {
            c = c.q_euler();
        }
        c.substitute(Marker::Q, &one)
    }))
}

/// A scaled central moment `mu_r / mu_2^(r/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaledMoment {
    /// `mu_2 = 0`: the statistic is constant at this size.
    Undefined,
    Even(ExactRational),
    /// Odd orders can be irrational; kept as the sign of `mu_r` and the exact
    /// square `mu_r^2 / mu_2^r`.
    Odd {
        sign: Ordering,
        square: ExactRational,
    },
}

/// Moments of one statistic over all trees with `n` internal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentRow {
    pub n: usize,
    /// Number of trees, `b_n`.
    pub count: BigUint,
    /// `m_1 .. m_R`.
    pub raw: Vec<ExactRational>,
    /// `mu_2 .. mu_R`.
    pub central: Vec<ExactRational>,
    /// Scaled moments of orders `2 .. R`.
    pub scaled: Vec<ScaledMoment>,
}

impl MomentRow {
    pub fn raw(&self, r: usize) -> Option<&ExactRational> {
        r.checked_sub(1).and_then(|i| self.raw.get(i))
    }

    pub fn central(&self, r: usize) -> Option<&ExactRational> {
        r.checked_sub(2).and_then(|i| self.central.get(i))
    }

    pub fn scaled(&self, r: usize) -> Option<&ScaledMoment> {
        r.checked_sub(2).and_then(|i| self.scaled.get(i))
    }

    /// `mu_{2k} / mu_2^k`, `None` when undefined or out of range.
    pub fn scaled_even(&self, r: usize) -> Option<&ExactRational> {
        match self.scaled(r)? {
            ScaledMoment::Even(v) => Some(v),
            _ => None,
        }
    }

    /// `mu_r^2 / mu_2^r` with the sign of `mu_r`, for any order.
    pub fn scaled_squared(&self, r: usize) -> Option<(Ordering, ExactRational)> {
        match self.scaled(r)? {
            ScaledMoment::Undefined => None,
            ScaledMoment::Even(v) => Some((Ordering::Greater, v * v)),
            ScaledMoment::Odd { sign, square } => Some((*sign, square.clone())),
        }
    }

    /// The quantity named by `spec`, if defined for this row.
    pub fn value(&self, spec: MomentSpec) -> Option<ExactRational> {
        match spec {
            MomentSpec::Raw(r) => self.raw(r).cloned(),
            MomentSpec::Central(r) => self.central(r).cloned(),
            MomentSpec::Scaled(r) => self.scaled_even(r).cloned(),
            MomentSpec::ScaledSquared(r) => self.scaled_squared(r).map(|(_, v)| v),
        }
    }
}

/// Which moment sequence to read from a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MomentSpec {
    /// `m_r`; the mean is `Raw(1)`.
    Raw(usize),
    /// `mu_r`; the variance is `Central(2)`.
    Central(usize),
    /// `mu_r / mu_2^(r/2)` for even `r`.
    Scaled(usize),
    /// `mu_r^2 / mu_2^r`, any `r`.
    ScaledSquared(usize),
}

impl MomentSpec {
    pub const MEAN: MomentSpec = MomentSpec::Raw(1);
    pub const VARIANCE: MomentSpec = MomentSpec::Central(2);

    pub fn order(self) -> usize {
        match self {
            MomentSpec::Raw(r)
            | MomentSpec::Central(r)
            | MomentSpec::Scaled(r)
            | MomentSpec::ScaledSquared(r) => r,
        }
    }
}

impl fmt::Display for MomentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MomentSpec::Raw(1) => f.write_str("mean"),
            MomentSpec::Central(2) => f.write_str("variance"),
            MomentSpec::Raw(r) => write!(f, "raw:{r}"),
            MomentSpec::Central(r) => write!(f, "central:{r}"),
            MomentSpec::Scaled(r) => write!(f, "scaled:{r}"),
            MomentSpec::ScaledSquared(r) => write!(f, "scaled-squared:{r}"),
        }
    }
}

impl FromStr for MomentSpec {
    type Err = Error;

    /// Accepts `mean`, `variance`, `raw:R`, `central:R`, `scaled:R` (even R)
    /// and `scaled-squared:R`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mean" => return Ok(MomentSpec::MEAN),
            "variance" => return Ok(MomentSpec::VARIANCE),
            _ => {}
        }
        let bad = Error::InvalidArgument(
            "moment must be mean, variance, raw:R, central:R, scaled:R (even R) or scaled-squared:R",
        );
        let (kind, r) = s.split_once(':').ok_or(bad.clone())?;
        let r: usize = r.parse().map_err(|_| bad.clone())?;
        let spec = match kind {
            "raw" if r >= 1 => MomentSpec::Raw(r),
            "central" if r >= 2 => MomentSpec::Central(r),
            "scaled" if r >= 2 && r % 2 == 0 => MomentSpec::Scaled(r),
            "scaled" if r >= 2 => {
                return Err(Error::InvalidArgument(
                    "odd scaled moments may be irrational; use scaled-squared:R",
                ))
            }
            "scaled-squared" if r >= 2 => MomentSpec::ScaledSquared(r),
            _ => return Err(bad),
        };
        Ok(spec)
    }
}

/// Moments of one statistic for every `n` in `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub stat: Statistic,
    pub max_order: usize,
    pub rows: Vec<MomentRow>,
}

impl MomentTable {
    pub fn row(&self, n: usize) -> Option<&MomentRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// `(n, value)` for every row in `range` where the quantity is defined.
    pub fn sequence(
        &self,
        spec: MomentSpec,
        range: core::ops::RangeInclusive<usize>,
    ) -> Vec<(i64, ExactRational)> {
        self.rows
            .iter()
            .filter(|r| range.contains(&r.n))
            .filter_map(|r| r.value(spec).map(|v| (r.n as i64, v)))
            .collect()
    }
}

/// Builds the moment table of `stat` for moment orders up to `max_order` and
/// tree sizes up to `n_max`.
pub fn moment_table(stat: Statistic, max_order: usize, n_max: usize) -> Result<MomentTable, Error> {
    if max_order < 2 || n_max < 2 {
        return Err(Error::InvalidArgument(
            "moment tables need max order >= 2 and n_max >= 2",
        ));
    }
    moment_table_from_series(stat, &stat.series(n_max)?, max_order)
}

/// As [`moment_table`], from an already computed enumerator.
pub fn moment_table_from_series(
    stat: Statistic,
    series: &Series,
    max_order: usize,
) -> Result<MomentTable, Error> {
    let sums: Vec<Series> = (0..=max_order as u32)
        .map(|r| q_log_derivative_power(series, r))
        .collect::<Result<_, _>>()?;
    let constant = |s: &Series, n: usize| s.coeff(n).constant_value().expect("q eliminated");
    let rows = (0..=series.order())
        .map(|n| {
            let count = constant(&sums[0], n);
            let raw: Vec<ExactRational> = (1..=max_order)
                .map(|r| constant(&sums[r], n) / &count)
                .collect();
            let central = central_moments(&raw);
            let scaled = scaled_moments(&central);
            MomentRow {
                n,
                count: count.to_integer().to_biguint().expect("positive count"),
                raw,
                central,
                scaled,
            }
        })
        .collect();
    Ok(MomentTable {
        stat,
        max_order,
        rows,
    })
}

/// `mu_r = sum_k C(r,k) (-m_1)^(r-k) m_k`, for `r = 2..=R`, with `m_0 = 1`.
fn central_moments(raw: &[ExactRational]) -> Vec<ExactRational> {
    let m = |k: usize| {
        if k == 0 {
            ExactRational::one()
        } else {
            raw[k - 1].clone()
        }
    };
    let neg_mean = -m(1);
    (2..=raw.len())
        .map(|r| {
            let mut binom = BigInt::one();
            let mut acc = ExactRational::zero();
            for k in 0..=r {
                acc += ExactRational::from_integer(binom.clone())
                    * num_traits::pow(neg_mean.clone(), r - k)
                    * m(k);
                binom = binom * BigInt::from(r - k) / BigInt::from(k + 1);
            }
            acc
        })
        .collect()
}

fn scaled_moments(central: &[ExactRational]) -> Vec<ScaledMoment> {
    let Some(var) = central.first() else {
        return Vec::new();
    };
    if var.is_zero() {
        return alloc::vec![ScaledMoment::Undefined; central.len()];
    }
    central
        .iter()
        .enumerate()
        .map(|(i, mu)| {
            let r = i + 2;
            if r % 2 == 0 {
                ScaledMoment::Even(mu / num_traits::pow(var.clone(), r / 2))
            } else {
                let sign = if mu.is_zero() {
                    Ordering::Equal
                } else if mu.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                ScaledMoment::Odd {
                    sign,
                    square: mu * mu / num_traits::pow(var.clone(), r),
                }
            }
        })
        .collect()
}

/// A printed closed form for one moment sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    /// Theorem label, e.g. `"7.3"`.
    pub label: &'static str,
    pub stat: Statistic,
    pub spec: MomentSpec,
    pub formula: RationalFunctionN,
    /// For squared odd moments: the sign the unsquared moment must have for
    /// every `n` from the given size on.
    pub sign: Option<(Ordering, usize)>,
}

/// The nine reference formulas, coefficient lists copied as printed (highest
/// power first, factored where printed factored). The skewness formula
/// `3 sqrt(2)/2 * sqrt(A/B)` is stored squared: `9/2 * A/B`.
pub fn reference_forms() -> Vec<ClosedForm> {
    use MomentSpec::*;
    use Statistic::*;
    let form = |label, stat, spec, num: &[&[i64]], den: &[&[i64]]| ClosedForm {
        label,
        stat,
        spec,
        formula: RationalFunctionN::from_factors(num, den),
        sign: None,
    };
    let mut skew = form(
        "8.3",
        JumpDistance,
        ScaledSquared(3),
        &[&[9], &[1, -1, -8, 12], &[1, 0]],
        &[&[2], &[2, 15, 23, -24, -16]],
    );
    // Printed as a positive radical; asserted from n = 4 on.
    skew.sign = Some((Ordering::Greater, 4));
    alloc::vec![
        form("7.1", Jumps, Raw(1), &[&[1, -1]], &[&[2]]),
        form("7.2", Jumps, Central(2), &[&[1, 0, -1]], &[&[8, -4]]),
        form(
            "7.3",
            Jumps,
            Scaled(4),
            &[&[6, -11, -2, 3]],
            &[&[2, -3, -2, 3]]
        ),
        form(
            "7.4",
            Jumps,
            Scaled(6),
            &[&[60, -300, 391, -20, -82, -16, 15]],
            &[&[4, -16, 7, 32, -26, -16, 15]],
        ),
        form(
            "7.5",
            Jumps,
            Scaled(8),
            &[&[840, -7980, 27006, -38933, 23070, -6937, 3178, -1167, -142, 105]],
            &[&[8, -60, 118, 75, -402, 135, 418, -255, -142, 105]],
        ),
        form(
            "8.1",
            JumpDistance,
            Raw(1),
            &[&[1, 0], &[1, -1]],
            &[&[1, 2]]
        ),
        form(
            "8.2",
            JumpDistance,
            Central(2),
            &[&[2], &[1, 0], &[2, -1, -1]],
            &[&[1, 7, 16, 12]]
        ),
        skew,
        form(
            "8.4",
            JumpDistance,
            Scaled(4),
            &[&[25, 58, -45, -34, -172, -48]],
            &[&[2], &[2, 17, 30, -29, -20], &[1, 0]],
        ),
    ]
}

/// Result of comparing one closed form with a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCheck {
    pub label: &'static str,
    /// Values agree on every compared row and any prescribed sign holds.
    pub pass: bool,
    /// Rows compared.
    pub checked: usize,
    /// First `n` where the exact value differs from the formula.
    pub first_mismatch: Option<usize>,
    /// First `n` where a squared odd moment has the wrong sign.
    pub first_sign_mismatch: Option<usize>,
}

/// Compares every form for the table's statistic against every row with
/// `n >= 2` where the quantity is defined. Values and signs are tracked
/// separately; `pass` needs at least one compared row and no failure of
/// either kind.
pub fn check_closed_forms(table: &MomentTable, forms: &[ClosedForm]) -> Vec<FormCheck> {
    forms
        .iter()
        .filter(|f| f.stat == table.stat && f.spec.order() <= table.max_order)
        .map(|f| {
            let mut checked = 0;
            let mut first_mismatch = None;
            let mut first_sign_mismatch = None;
            for row in table.rows.iter().filter(|r| r.n >= 2) {
                let Some(value) = row.value(f.spec) else {
                    continue;
                };
                checked += 1;
                if first_mismatch.is_none() && f.formula.eval(row.n as i64).as_ref() != Some(&value)
                {
                    first_mismatch = Some(row.n);
                }
                if let (Some((want, from)), MomentSpec::ScaledSquared(r)) = (f.sign, f.spec) {
                    let (sign, _) = row.scaled_squared(r).expect("defined");
                    if row.n >= from && sign != want && first_sign_mismatch.is_none() {
                        first_sign_mismatch = Some(row.n);
                    }
                }
            }
            FormCheck {
                label: f.label,
                pass: checked > 0 && first_mismatch.is_none() && first_sign_mismatch.is_none(),
                checked,
                first_mismatch,
                first_sign_mismatch,
            }
        })
        .collect()
}

/// `sum_T stat(T)^r` over all trees of size `n`: the coefficient extracted
/// by [`q_log_derivative_power`]. Exposed for callers that hold a bivariate
/// polynomial instead of a series.
pub fn power_sum(coeff: &Poly2, r: u32) -> ExactRational {
    coeff
        .terms()
        .map(|(_, eq, c)| c * ExactRational::from_integer(BigInt::from(eq).pow(r)))
        .fold(ExactRational::zero(), |a, b| a + b)
}
