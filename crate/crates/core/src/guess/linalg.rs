//! Fraction-free nullspace of an integer matrix.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-echelon form by Bareiss elimination. Returns the pivot columns; rows
/// past `pivots.len()` are zero afterwards. Every division is exact.
pub(crate) fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        // Entries left of the pivot in the pivot row were already zero; scale
        // of earlier columns is irrelevant to the nullspace.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Integer basis of `{x : M x = 0}`, one primitive vector per free column.
pub fn nullspace(matrix: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let pivots = bareiss_echelon(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x: Vec<BigRational> = alloc::vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut s = BigRational::zero();
                for j in pc + 1..cols {
                    if !m[i][j].is_zero() && !x[j].is_zero() {
                        s += &x[j] * BigRational::from_integer(m[i][j].clone());
                    }
                }
                x[pc] = -s / BigRational::from_integer(m[i][pc].clone());
            }
            primitive(&x)
        })
        .collect()
}

/// Clears denominators and removes the common content; first nonzero entry
/// made positive.
pub(crate) fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    if ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        for v in &mut ints {
            *v = -core::mem::take(v);
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn times(m: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn one_dimensional_kernel() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], [1, -2, 1].map(BigInt::from));
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = mat(&[&[2, 0], &[0, 3], &[1, 1]]);
        assert!(nullspace(&m, 2).is_empty());
    }

    #[test]
    fn zero_column_is_free() {
        let m = mat(&[&[0, 1, 1], &[0, 2, 2]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(times(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_deficient_random_like() {
        // third row = first + second
        let m = mat(&[&[3, -7, 2, 5], &[1, 4, -6, 2], &[4, -3, -4, 7]]);
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(times(&m, v).iter().all(Zero::is_zero));
        }
    }
}
