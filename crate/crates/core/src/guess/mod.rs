//! Guessing closed forms: fit exact data `(n, a_n)` to a rational function of
//! `n`, accept only what reproduces held-out points, and read off limits.

mod linalg;
mod ratfun;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use linalg::nullspace;
pub use ratfun::{IntPoly, RationalFunctionN};

/// Number of trailing points excluded from fitting unless the caller says
/// otherwise.
pub const DEFAULT_HOLDOUT: usize = 5;

/// Why a single fit at fixed degrees produced nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitError {
    /// Fewer than `deg_num + deg_den + 2` points, or repeated `n`.
    NotEnoughPoints,
    /// Only the zero solution: no function of these degrees fits.
    NoFit,
    /// More than one independent solution; more data is needed.
    AmbiguousFit { dimension: usize },
    /// The unique solution has a pole at, or misses, one of the inputs.
    Rejected { n: i64 },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::NotEnoughPoints => {
                f.write_str("not enough distinct points for the requested degrees")
            }
            FitError::NoFit => f.write_str("no rational function of these degrees fits"),
            FitError::AmbiguousFit { dimension } => {
                write!(
                    f,
                    "fit is ambiguous (solution space of dimension {dimension})"
                )
            }
            FitError::Rejected { n } => {
                write!(f, "fitted function does not reproduce the point n={n}")
            }
        }
    }
}

/// Fits `p(n) / q(n)` with `deg p <= deg_num`, `deg q <= deg_den` through
/// every point by solving `p(n_i) - a_i q(n_i) = 0` exactly.
pub fn fit_rational(
    points: &[(i64, BigRational)],
    deg_num: usize,
    deg_den: usize,
) -> Result<RationalFunctionN, FitError> {
    let cols = deg_num + deg_den + 2;
    if points.len() < cols {
        return Err(FitError::NotEnoughPoints);
    }
    let mut ns: Vec<i64> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != points.len() {
        return Err(FitError::NotEnoughPoints);
    }

    // Row i, scaled by the denominator of a_i:
    //   den(a_i) n_i^k  for k <= deg_num,   -num(a_i) n_i^k  for k <= deg_den.
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|(n, a)| {
            let n = BigInt::from(*n);
            let mut row = Vec::with_capacity(cols);
            let mut pw = BigInt::one();
            for _ in 0..=deg_num {
                row.push(a.denom() * &pw);
                pw *= &n;
            }
            let mut pw = BigInt::one();
            for _ in 0..=deg_den {
                row.push(-(a.numer() * &pw));
                pw *= &n;
            }
            row
        })
        .collect();

    let basis = nullspace(&rows, cols);
    match basis.len() {
        0 => return Err(FitError::NoFit),
        1 => {}
        dimension => return Err(FitError::AmbiguousFit { dimension }),
    }
    let v = &basis[0];
    let p = IntPoly::new(v[..=deg_num].to_vec());
    let q = IntPoly::new(v[deg_num + 1..].to_vec());
    let rf = RationalFunctionN::new(p, q).ok_or(FitError::NoFit)?;
    for (n, a) in points {
        if rf.eval(*n).as_ref() != Some(a) {
            return Err(FitError::Rejected { n: *n });
        }
    }
    Ok(rf)
}

/// A formula that survived holdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guess {
    pub formula: RationalFunctionN,
    /// Degree bounds of the successful attempt.
    pub deg_num: usize,
    pub deg_den: usize,
    /// Number of degree pairs tried, including the accepted one.
    pub attempts: usize,
}

/// No candidate survived; lists every degree pair that was tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessFailure {
    pub attempted: Vec<(usize, usize)>,
    pub reason: &'static str,
}

impl fmt::Display for GuessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} degree pairs attempted",
            self.reason,
            self.attempted.len()
        )?;
        if let Some(last) = self.attempted.last() {
            write!(f, ", up to ({}, {})", last.0, last.1)?;
        }
        f.write_str(")")
    }
}

/// Tries degree pairs by increasing total degree, smaller denominator degree
/// first, fitting on all but the last `holdout` points. The first candidate
/// that reproduces every held-out point exactly is returned.
pub fn guess_rational(
    points: &[(i64, BigRational)],
    max_total_degree: usize,
    holdout: usize,
) -> Result<Guess, GuessFailure> {
    let mut attempted = Vec::new();
    if holdout == 0 {
        return Err(GuessFailure {
            attempted,
            reason: "holdout must be at least one point",
        });
    }
    if points.len() <= holdout {
        return Err(GuessFailure {
            attempted,
            reason: "not enough points beyond the holdout",
        });
    }
    let (train, held) = points.split_at(points.len() - holdout);
    for total in 0..=max_total_degree {
        if train.len() < total + 2 {
            break;
        }
        for deg_den in 0..=total {
            let deg_num = total - deg_den;
            attempted.push((deg_num, deg_den));
            let Ok(rf) = fit_rational(train, deg_num, deg_den) else {
                continue;
            };
            if held.iter().all(|(n, a)| rf.eval(*n).as_ref() == Some(a)) {
                return Ok(Guess {
                    formula: rf,
                    deg_num,
                    deg_den,
                    attempts: attempted.len(),
                });
            }
        }
    }
    Err(GuessFailure {
        attempted,
        reason: "no candidate survived holdout",
    })
}

/// Behaviour of a rational function as `n -> infinity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Zero,
    Finite(BigRational),
    Divergent,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Zero => f.write_str("0"),
            Limit::Finite(v) => write!(f, "{v}"),
            Limit::Divergent => f.write_str("divergent"),
        }
    }
}

impl Limit {
    /// The limit as a rational, `None` if divergent.
    pub fn value(&self) -> Option<BigRational> {
        match self {
            Limit::Zero => Some(BigRational::zero()),
            Limit::Finite(v) => Some(v.clone()),
            Limit::Divergent => None,
        }
    }
}

pub fn limit_at_infinity(rf: &RationalFunctionN) -> Limit {
    let Some(dn) = rf.num_degree() else {
        return Limit::Zero;
    };
    let dd = rf.den_degree();
    match dn.cmp(&dd) {
        core::cmp::Ordering::Less => Limit::Zero,
        core::cmp::Ordering::Greater => Limit::Divergent,
        core::cmp::Ordering::Equal => Limit::Finite(BigRational::new(
            rf.numerator().leading().unwrap().clone(),
            rf.denominator().leading().unwrap().clone(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(
        rf: &RationalFunctionN,
        range: core::ops::RangeInclusive<i64>,
    ) -> Vec<(i64, BigRational)> {
        range.map(|n| (n, rf.eval(n).unwrap())).collect()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn fits_mean_of_jumps() {
        let pts: Vec<_> = (1..=5)
            .map(|n| (n, BigRational::new((n - 1).into(), 2.into())))
            .collect();
        let rf = fit_rational(&pts, 1, 0).unwrap();
        assert_eq!(rf, RationalFunctionN::from_factors(&[&[1, -1]], &[&[2]]));
    }

    #[test]
    fn fits_constant() {
        let pts: Vec<_> = (1..=3).map(|n| (n, r(7))).collect();
        assert_eq!(
            fit_rational(&pts, 0, 0).unwrap(),
            RationalFunctionN::constant(&r(7))
        );
    }

    #[test]
    fn fits_variance_of_jumps() {
        let target = RationalFunctionN::from_factors(&[&[1, 0, -1]], &[&[8, -4]]);
        let rf = fit_rational(&sample(&target, 2..=8), 2, 1).unwrap();
        assert_eq!(rf, target);
    }

    #[test]
    fn fit_error_paths() {
        let target = RationalFunctionN::from_factors(&[&[1, 0, -1]], &[&[8, -4]]);
        let pts = sample(&target, 2..=8);
        assert_eq!(
            fit_rational(&pts[..3], 2, 1),
            Err(FitError::NotEnoughPoints)
        );
        assert_eq!(fit_rational(&pts, 1, 0), Err(FitError::NoFit));
        assert!(matches!(
            fit_rational(&pts, 3, 2),
            Err(FitError::AmbiguousFit { dimension: 2 })
        ));
        let dup = [(1, r(1)), (1, r(1)), (2, r(2))];
        assert_eq!(fit_rational(&dup, 0, 0), Err(FitError::NotEnoughPoints));
    }

    #[test]
    fn guess_prefers_lowest_degree() {
        let target = RationalFunctionN::from_factors(&[&[6, -11, -2, 3]], &[&[2, -3, -2, 3]]);
        let g = guess_rational(&sample(&target, 2..=30), 10, DEFAULT_HOLDOUT).unwrap();
        assert_eq!(g.formula, target);
        assert_eq!((g.deg_num, g.deg_den), (3, 3));
    }

    #[test]
    fn catalan_numbers_are_not_rational() {
        let pts: Vec<_> = (1..=25)
            .map(|n| {
                (
                    n,
                    BigRational::from_integer(crate::trees::catalan(n as usize).into()),
                )
            })
            .collect();
        let err = guess_rational(&pts, 6, DEFAULT_HOLDOUT).unwrap_err();
        assert_eq!(err.attempted.len(), (1..=7).sum::<usize>());
    }

    #[test]
    fn holdout_is_mandatory() {
        let pts: Vec<_> = (1..=5).map(|n| (n, r(n))).collect();
        assert!(guess_rational(&pts, 3, 0).is_err());
        assert!(guess_rational(&pts, 3, 5).is_err());
    }

    #[test]
    fn holdout_rejects_overfit() {
        // Polynomial data until n = 8, then a different value.
        let mut pts: Vec<_> = (1..=8).map(|n| (n, r(n * n))).collect();
        pts.push((9, r(0)));
        let err = guess_rational(&pts, 2, 1).unwrap_err();
        assert_eq!(err.reason, "no candidate survived holdout");
    }

    #[test]
    fn limits() {
        let kurt = RationalFunctionN::from_factors(&[&[6, -11, -2, 3]], &[&[2, -3, -2, 3]]);
        assert_eq!(limit_at_infinity(&kurt), Limit::Finite(r(3)));
        let var = RationalFunctionN::from_factors(&[&[1, 0, -1]], &[&[8, -4]]);
        assert_eq!(limit_at_infinity(&var), Limit::Divergent);
        let decay = RationalFunctionN::from_factors(&[&[1]], &[&[1, 2]]);
        assert_eq!(limit_at_infinity(&decay), Limit::Zero);
        assert_eq!(
            limit_at_infinity(&RationalFunctionN::constant(&r(0))),
            Limit::Zero
        );
    }
}
