//! The five generating functions as truncated series, and exact checks of
//! every functional equation and closed form.
//!
//! Closed forms contain square roots and denominators whose constant terms
//! are not units (`1 - t`, `2q`), so each one is checked cross-multiplied as
//! a [`RadicalIdentity`] rather than by dividing.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebra::{fixed_point_solve, rat, ExactRational, Marker, Poly2, Series};
use crate::error::Error;
use crate::trees::brute_force_enumerator_capped;

/// Default series order for theorem verification.
pub const DEFAULT_VERIFY_ORDER: usize = 40;

/// The verifiable statements, numbered as the CLI numbers them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// `f = 1 + x f^2` and `f = (1 - sqrt(1-4x)) / (2x)`.
    Catalan,
    /// The functional equation for `F(x,t,q)`.
    TrivariateEquation,
    /// Closed form of `F(x,t,q)`.
    TrivariateClosedForm,
    /// Closed form of `H(x,q)`.
    JumpsClosedForm,
    /// `J(x,t) = 1 + x t J(x,1) J(x,t)`.
    DepthEquation,
    /// Closed form of `J(x,t)`.
    DepthClosedForm,
    /// Closed form of `K(x,q)`.
    JumpDistanceClosedForm,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Catalan,
        Theorem::TrivariateEquation,
        Theorem::TrivariateClosedForm,
        Theorem::JumpsClosedForm,
        Theorem::DepthEquation,
        Theorem::DepthClosedForm,
        Theorem::JumpDistanceClosedForm,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Theorem> {
        Theorem::ALL.get(n as usize).copied()
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Where an identity first failed and what was left over there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub residual: Poly2,
}

/// Outcome of checking one theorem at one truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub theorem: Theorem,
    pub order: usize,
    pub pass: bool,
    pub first_failure: Option<Failure>,
}

impl Verdict {
    fn from_residual(theorem: Theorem, order: usize, residual: &Series) -> Verdict {
        let first_failure = residual.first_nonzero().map(|n| Failure {
            n,
            residual: residual.coeff(n).clone(),
        });
        Verdict {
            theorem,
            order,
            pass: first_failure.is_none(),
            first_failure,
        }
    }

    /// Combines two checks of the same theorem; the earlier failure wins.
    fn and(self, other: Verdict) -> Verdict {
        if self.pass {
            other
        } else {
            self
        }
    }
}

/// The identity `(A + a sqrt(R)) S + (B + b sqrt(R)) = 0`, where `A`, `B`, `R`
/// are polynomials in `x` over `Poly2`, `a`, `b` are `Poly2`, and `sqrt(R)` is
/// the branch with constant term 1.
///
/// Fields are public so that tests can perturb a single coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalIdentity {
    pub series_factor: Vec<Poly2>,
    pub series_radical: Poly2,
    pub free_part: Vec<Poly2>,
    pub free_radical: Poly2,
    pub radicand: Vec<Poly2>,
}

/// `[c_0, c_1, ...]` as polynomials from `(e_t, e_q, coeff)` lists.
fn xpoly(coeffs: &[&[(u32, u32, i64)]]) -> Vec<Poly2> {
    coeffs
        .iter()
        .map(|terms| Poly2::from_int_terms(terms))
        .collect()
}

/// `q^2 x^2 - 2 q x^2 - 2 q x + x^2 - 2x + 1`.
fn jump_radicand() -> Vec<Poly2> {
    xpoly(&[
        &[(0, 0, 1)],
        &[(0, 1, -2), (0, 0, -2)],
        &[(0, 2, 1), (0, 1, -2), (0, 0, 1)],
    ])
}

impl RadicalIdentity {
    /// `2x f - 1 + sqrt(1 - 4x) = 0`.
    pub fn catalan() -> Self {
        RadicalIdentity {
            series_factor: xpoly(&[&[], &[(0, 0, 2)]]),
            series_radical: Poly2::zero(),
            free_part: xpoly(&[&[(0, 0, -1)]]),
            free_radical: Poly2::one(),
            radicand: xpoly(&[&[(0, 0, 1)], &[(0, 0, -4)]]),
        }
    }

    /// `2(qtx + t^2 x - tx - t + 1) F + (-qtx + tx + t sqrt(R) + t - 2) = 0`,
    /// with the printed radicand already factored as `t^2 R`.
    pub fn trivariate() -> Self {
        RadicalIdentity {
            series_factor: xpoly(&[
                &[(1, 0, -2), (0, 0, 2)],
                &[(1, 1, 2), (2, 0, 2), (1, 0, -2)],
            ]),
            series_radical: Poly2::zero(),
            free_part: xpoly(&[&[(1, 0, 1), (0, 0, -2)], &[(1, 1, -1), (1, 0, 1)]]),
            free_radical: Poly2::var(Marker::T),
            radicand: jump_radicand(),
        }
    }

    /// `2qx H + (-qx + sqrt(R) + x - 1) = 0`.
    pub fn jumps() -> Self {
        RadicalIdentity {
            series_factor: xpoly(&[&[], &[(0, 1, 2)]]),
            series_radical: Poly2::zero(),
            free_part: xpoly(&[&[(0, 0, -1)], &[(0, 1, -1), (0, 0, 1)]]),
            free_radical: Poly2::one(),
            radicand: jump_radicand(),
        }
    }

    /// `(t sqrt(1 - 4x) - t + 2) J - 2 = 0`.
    pub fn depth() -> Self {
        RadicalIdentity {
            series_factor: xpoly(&[&[(1, 0, -1), (0, 0, 2)]]),
            series_radical: Poly2::var(Marker::T),
            free_part: xpoly(&[&[(0, 0, -2)]]),
            free_radical: Poly2::zero(),
            radicand: xpoly(&[&[(0, 0, 1)], &[(0, 0, -4)]]),
        }
    }

    /// `(sqrt(1 - 4qx) - 1 + 2q) K - 2q = 0`.
    pub fn jump_distance() -> Self {
        RadicalIdentity {
            series_factor: xpoly(&[&[(0, 0, -1), (0, 1, 2)]]),
            series_radical: Poly2::one(),
            free_part: xpoly(&[&[(0, 1, -2)]]),
            free_radical: Poly2::zero(),
            radicand: xpoly(&[&[(0, 0, 1)], &[(0, 1, -4)]]),
        }
    }

    /// Left-hand side evaluated on `s`, at the order of `s`.
    pub fn residual(&self, s: &Series) -> Result<Series, Error> {
        let order = s.order();
        let root = Series::from_x_poly(&self.radicand, order).sqrt()?;
        let factor =
            &Series::from_x_poly(&self.series_factor, order) + &root.scale(&self.series_radical);
        let free = &Series::from_x_poly(&self.free_part, order) + &root.scale(&self.free_radical);
        Ok(&(&factor * s) + &free)
    }

    pub fn check(&self, theorem: Theorem, s: &Series) -> Result<Verdict, Error> {
        Ok(Verdict::from_residual(
            theorem,
            s.order(),
            &self.residual(s)?,
        ))
    }
}

/// `f = 1 + x f^2`: the Catalan generating function.
pub fn solve_catalan(order: usize) -> Series {
    fixed_point_solve(catalan_map, order).expect("catalan map is contractive")
}

fn catalan_map(f: &Series) -> Series {
    &Series::one(f.order()) + &(f * f).shift_x(1)
}

/// `F -> 1 + x t F(x,0,q) F + x t q (F(x,1,q) - F(x,0,q)) F`.
pub fn trivariate_map(f: &Series) -> Series {
    let order = f.order();
    let at_zero = f.substitute(Marker::T, &ExactRational::zero());
    let at_one = f.substitute(Marker::T, &rat(1));
    let q = Poly2::var(Marker::Q);
    let t = Poly2::var(Marker::T);
    // Both self-references multiply F, so combine them first.
    let g = &at_zero + &(&at_one - &at_zero).scale(&q);
    &Series::one(order) + &(&g * f).scale(&t).shift_x(1)
}

/// `F(x,t,q) = sum_T x^V t^D q^J`, the fixed point of [`trivariate_map`].
///
/// Coefficients are produced one at a time from
/// `F_n = t sum_{i<n} G_i F_{n-1-i}` with `G_i = F_i(0) + q (F_i(1) - F_i(0))`,
/// which is the same fixed point without re-multiplying settled
/// coefficients. The result is then confirmed with one application of the map.
pub fn solve_trivariate(order: usize) -> Result<Series, Error> {
    let t = Poly2::var(Marker::T);
    let q = Poly2::var(Marker::Q);
    let zero = ExactRational::zero();
    let one = rat(1);
    let mut f: Vec<Poly2> = alloc::vec![Poly2::one()];
    let mut g: Vec<Poly2> = Vec::with_capacity(order + 1);
    for n in 1..=order {
        let last = &f[n - 1];
        let at_zero = last.substitute(Marker::T, &zero);
        let at_one = last.substitute(Marker::T, &one);
        g.push(&at_zero + &(&(&at_one - &at_zero) * &q));
        let mut acc = Poly2::zero();
        for i in 0..n {
            acc.add_mul(&g[i], &f[n - 1 - i]);
        }
        f.push(&acc * &t);
    }
    let f = Series::new(f);
    if let Some(index) = trivariate_map(&f).first_difference(&f) {
        return Err(Error::NotContractive {
            iteration: order + 1,
            index,
        });
    }
    Ok(f)
}

/// [`solve_trivariate`] by plain iteration of [`trivariate_map`] through
/// [`fixed_point_solve`]. Same result, much slower at high order.
pub fn solve_trivariate_by_iteration(order: usize) -> Result<Series, Error> {
    fixed_point_solve(trivariate_map, order)
}

/// Checks the closed form of `F` against the series solution. The printed
/// radicand is first confirmed to equal `t^2` times the jump radicand.
pub fn verify_trivariate_closed_form(order: usize) -> Result<Verdict, Error> {
    let f = solve_trivariate(order)?;
    verify_trivariate_with(&RadicalIdentity::trivariate(), &f)
}

pub fn verify_trivariate_with(identity: &RadicalIdentity, f: &Series) -> Result<Verdict, Error> {
    let order = f.order();
    let printed = Series::from_int_terms(
        &[
            (2, 2, 2, 1),
            (2, 2, 1, -2),
            (1, 2, 1, -2),
            (2, 2, 0, 1),
            (1, 2, 0, -2),
            (0, 2, 0, 1),
        ],
        order,
    );
    let factored =
        Series::from_x_poly(&identity.radicand, order).scale(&Poly2::monomial(2, 0, rat(1)));
    let radicand = Verdict::from_residual(
        Theorem::TrivariateClosedForm,
        order,
        &(&printed - &factored),
    );
    Ok(radicand.and(identity.check(Theorem::TrivariateClosedForm, f)?))
}

fn require(verdict: Verdict) -> Result<(), Error> {
    match verdict.first_failure {
        None => Ok(()),
        Some(fail) => Err(Error::IdentityFailed {
            theorem: alloc::format!("{}", verdict.theorem),
            index: fail.n,
        }),
    }
}

/// `H(x,q) = F(x,1,q)`, confirmed against its closed form.
pub fn solve_jumps(order: usize) -> Result<Series, Error> {
    let h = solve_trivariate(order)?.substitute(Marker::T, &rat(1));
    require(RadicalIdentity::jumps().check(Theorem::JumpsClosedForm, &h)?)?;
    Ok(h)
}

/// `J(x,t) = 1 / (1 - x t f(x))`, confirmed against its closed form.
pub fn solve_depth(order: usize) -> Result<Series, Error> {
    let j = depth_from_catalan(order)?;
    require(RadicalIdentity::depth().check(Theorem::DepthClosedForm, &j)?)?;
    Ok(j)
}

fn depth_from_catalan(order: usize) -> Result<Series, Error> {
    let f = solve_catalan(order);
    let xtf = f.scale(&Poly2::var(Marker::T)).shift_x(1);
    (&Series::one(order) - &xtf).inverse()
}

/// `K(x,q) = J(qx, 1/q)`: the coefficient `c_n(t)` becomes `q^n c_n(1/q)`.
pub fn solve_jump_distance(order: usize) -> Result<Series, Error> {
    let k = reverse_depth(&solve_depth(order)?)?;
    require(RadicalIdentity::jump_distance().check(Theorem::JumpDistanceClosedForm, &k)?)?;
    Ok(k)
}

/// Applies the `t -> q` exponent reversal coefficient by coefficient.
pub fn reverse_depth(j: &Series) -> Result<Series, Error> {
    let coeffs = j
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.reverse_t_into_q(n as u32))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Series::new(coeffs))
}

/// True when every coefficient is a polynomial with nonnegative integer
/// coefficients, as any weight enumerator must be.
pub fn is_enumerator(s: &Series) -> bool {
    s.coeffs().iter().all(Poly2::is_nonneg_integral)
}

/// Runs the check for one theorem at the given order. The functional
/// equation for `F` is additionally compared with brute-force enumeration up
/// to `min(order, oracle_cap)`.
pub fn verify(theorem: Theorem, order: usize, oracle_cap: usize) -> Result<Verdict, Error> {
    match theorem {
        Theorem::Catalan => {
            let f = solve_catalan(order);
            let eq = Verdict::from_residual(theorem, order, &(&f - &catalan_map(&f)));
            let counts = Series::new(
                (0..=order)
                    .map(|n| Poly2::from(num_bigint::BigInt::from(crate::trees::catalan(n))))
                    .collect(),
            );
            let numbers = Verdict::from_residual(theorem, order, &(&f - &counts));
            Ok(eq
                .and(numbers)
                .and(RadicalIdentity::catalan().check(theorem, &f)?))
        }
        Theorem::TrivariateEquation => {
            let f = solve_trivariate(order)?;
            let eq = Verdict::from_residual(theorem, order, &(&f - &trivariate_map(&f)));
            let m = order.min(oracle_cap);
            let oracle = brute_force_enumerator_capped(m, oracle_cap)?;
            Ok(eq.and(Verdict::from_residual(
                theorem,
                order,
                &(&f.with_order(m) - &oracle),
            )))
        }
        Theorem::TrivariateClosedForm => verify_trivariate_closed_form(order),
        Theorem::JumpsClosedForm => {
            let h = solve_trivariate(order)?.substitute(Marker::T, &rat(1));
            RadicalIdentity::jumps().check(theorem, &h)
        }
        Theorem::DepthEquation => {
            let j = depth_from_catalan(order)?;
            let at_one = j.substitute(Marker::T, &rat(1));
            let rhs =
                &Series::one(order) + &(&at_one * &j).scale(&Poly2::var(Marker::T)).shift_x(1);
            let f = solve_catalan(order);
            let eq = Verdict::from_residual(theorem, order, &(&j - &rhs));
            Ok(eq.and(Verdict::from_residual(theorem, order, &(&at_one - &f))))
        }
        Theorem::DepthClosedForm => {
            RadicalIdentity::depth().check(theorem, &depth_from_catalan(order)?)
        }
        Theorem::JumpDistanceClosedForm => {
            let k = reverse_depth(&depth_from_catalan(order)?)?;
            RadicalIdentity::jump_distance().check(theorem, &k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::brute_force_enumerator;

    fn p(terms: &[(u32, u32, i64)]) -> Poly2 {
        Poly2::from_int_terms(terms)
    }

    #[test]
    fn catalan_low_order() {
        assert_eq!(solve_catalan(0), Series::one(0));
        let f = solve_catalan(4);
        let want: Vec<Poly2> = [1, 1, 2, 5, 14]
            .iter()
            .map(|&c| Poly2::from_int(c))
            .collect();
        assert_eq!(f.coeffs(), &want[..]);
    }

    #[test]
    fn catalan_radical_form_order_20() {
        let v = RadicalIdentity::catalan()
            .check(Theorem::Catalan, &solve_catalan(20))
            .unwrap();
        assert!(v.pass);
    }

    #[test]
    fn trivariate_matches_enumeration() {
        let f = solve_trivariate(8).unwrap();
        assert!(f.coeff(0).is_one());
        assert_eq!(f, brute_force_enumerator(8).unwrap());
        let total = f
            .substitute(Marker::T, &rat(1))
            .substitute(Marker::Q, &rat(1));
        let cat = solve_catalan(8);
        assert_eq!(total, cat);
    }

    #[test]
    fn recurrence_matches_plain_iteration() {
        assert_eq!(
            solve_trivariate(9).unwrap(),
            solve_trivariate_by_iteration(9).unwrap()
        );
    }

    #[test]
    fn theorem1_map_at_order_3() {
        let h3 = solve_trivariate(3)
            .unwrap()
            .coeff(3)
            .substitute(Marker::T, &rat(1));
        assert_eq!(h3, p(&[(0, 0, 1), (0, 1, 3), (0, 2, 1)]));
    }

    #[test]
    fn trivariate_closed_form_constant_term() {
        assert!(verify_trivariate_closed_form(0).unwrap().pass);
        assert!(verify_trivariate_closed_form(12).unwrap().pass);
    }

    #[test]
    fn trivariate_sign_flip_is_caught() {
        let f = solve_trivariate(6).unwrap();
        let mut id = RadicalIdentity::trivariate();
        id.free_part[1] = p(&[(1, 1, 1), (1, 0, 1)]);
        let v = verify_trivariate_with(&id, &f).unwrap();
        assert!(!v.pass);
        assert!(v.first_failure.unwrap().n <= 2);
    }

    #[test]
    fn jumps_low_coefficients() {
        let h = solve_jumps(3).unwrap();
        assert_eq!(*h.coeff(2), p(&[(0, 0, 1), (0, 1, 1)]));
        assert_eq!(*h.coeff(3), p(&[(0, 0, 1), (0, 1, 3), (0, 2, 1)]));
        assert_eq!(h.substitute(Marker::Q, &rat(1)), solve_catalan(3));
    }

    #[test]
    fn depth_low_coefficients() {
        let j = solve_depth(6).unwrap();
        assert!(j.coeff(0).is_one());
        assert_eq!(*j.coeff(2), p(&[(1, 0, 1), (2, 0, 1)]));
        assert_eq!(j.substitute(Marker::T, &rat(1)), solve_catalan(6));
    }

    #[test]
    fn jump_distance_low_coefficients() {
        let k = solve_jump_distance(6).unwrap();
        assert_eq!(*k.coeff(2), p(&[(0, 0, 1), (0, 1, 1)]));
        // JD over the five trees is {0,1,1,2,2}.
        assert_eq!(*k.coeff(3), p(&[(0, 0, 1), (0, 1, 2), (0, 2, 2)]));
        assert_eq!(k.substitute(Marker::Q, &rat(1)), solve_catalan(6));
    }

    #[test]
    fn reversal_rejects_overlong_degree() {
        let bad = Series::from_int_terms(&[(0, 0, 0, 1), (1, 2, 0, 1)], 1);
        assert!(matches!(
            reverse_depth(&bad),
            Err(Error::DegreeOverflow {
                index: 1,
                degree: 2
            })
        ));
    }

    #[test]
    fn every_theorem_passes_at_small_order() {
        for th in Theorem::ALL {
            let v = verify(th, 10, 8).unwrap();
            assert!(v.pass, "theorem {th}: {v:?}");
        }
    }

    #[test]
    fn theorem_numbers_round_trip() {
        for th in Theorem::ALL {
            assert_eq!(Theorem::from_number(th.number()), Some(th));
        }
        assert_eq!(Theorem::from_number(7), None);
    }
}
