//! Generating functions and moment extraction against direct enumeration.

use jumpstat_core::genfunc::{
    solve_catalan, solve_depth, solve_jump_distance, solve_jumps, solve_trivariate,
};
use jumpstat_core::moments::{q_log_derivative_power, Statistic};
use jumpstat_core::trees::{
    brute_force_enumerator, catalan, compute_stats, enumerate_trees, weight_enumerator, TreeStats,
};
use jumpstat_core::{ExactRational, Series};
use num_bigint::{BigInt, BigUint};

const N: usize = 12;

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

#[test]
fn catalan_matches_factorial_formula() {
    for n in 0..=40 {
        assert_eq!(
            catalan(n),
            factorial(2 * n) / (factorial(n) * factorial(n + 1)),
            "n = {n}"
        );
    }
}

#[test]
fn catalan_series_counts_trees() {
    let f = solve_catalan(N);
    for n in 0..=N {
        let count = enumerate_trees(n).unwrap().count();
        assert_eq!(BigUint::from(count), catalan(n));
        assert_eq!(
            f.coeff(n).constant_value(),
            Some(ExactRational::from_integer(BigInt::from(catalan(n))))
        );
    }
}

fn oracle(weight: impl Fn(&TreeStats) -> (u32, u32)) -> Series {
    weight_enumerator(N, N, weight).unwrap()
}

#[test]
fn trivariate_matches_enumeration() {
    assert_eq!(
        solve_trivariate(N).unwrap(),
        brute_force_enumerator(N).unwrap()
    );
}

#[test]
fn specialisations_match_enumeration() {
    assert_eq!(solve_jumps(N).unwrap(), oracle(|s| (0, s.j as u32)), "H");
    assert_eq!(solve_depth(N).unwrap(), oracle(|s| (s.d as u32, 0)), "J");
    assert_eq!(
        solve_jump_distance(N).unwrap(),
        oracle(|s| (0, s.jd as u32)),
        "K"
    );
}

#[test]
fn power_sums_match_enumeration() {
    const R: u32 = 10;
    for stat in [Statistic::Jumps, Statistic::JumpDistance] {
        let series = stat.series(N).unwrap();
        let derived: Vec<Series> = (0..=R)
            .map(|r| q_log_derivative_power(&series, r).unwrap())
            .collect();
        for n in 0..=N {
            let mut sums = [0u128; R as usize + 1];
            for tree in enumerate_trees(n).unwrap() {
                let s = compute_stats(&tree);
                let value = match stat {
                    Statistic::Jumps => s.j,
                    Statistic::JumpDistance => s.jd,
                } as u128;
                for (r, sum) in sums.iter_mut().enumerate() {
                    *sum += value.pow(r as u32);
                }
            }
            for r in 0..=R as usize {
                let want = ExactRational::from_integer(BigInt::from(sums[r]));
                assert_eq!(
                    derived[r].coeff(n).constant_value(),
                    Some(want),
                    "{stat} n={n} r={r}"
                );
            }
        }
    }
}
