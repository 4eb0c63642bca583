use super::Series;
use crate::error::Error;

/// Solves `S = phi(S)` modulo `x^(order + 1)` by iteration from `S = 1`.
///
/// `phi` must be contractive in the `x`-adic sense: if `a` and `b` agree below
/// `x^k` then `phi(a)` and `phi(b)` agree below `x^(k+1)`. Iteration `k`
/// feeds the previous iterate, padded to order `k`, into `phi`; only the new
/// coefficient `x^k` may change. Any change to a lower coefficient, or a final
/// iterate that is not reproduced by `phi`, is reported as
/// [`Error::NotContractive`].
///
/// The map is always handed a series of the order it is expected to return
/// and must not raise that order.
pub fn fixed_point_solve<F>(phi: F, order: usize) -> Result<Series, Error>
where
    F: Fn(&Series) -> Series,
{
    let mut current = Series::one(0);
    for k in 0..=order {
        let next = phi(&current.with_order(k));
        if next.order() < k {
            return Err(Error::InvalidArgument(
                "fixed-point map lowered the series order",
            ));
        }
        let next = next.with_order(k);
        if k > 0 {
            if let Some(index) = next.first_difference(&current) {
                return Err(Error::NotContractive {
                    iteration: k,
                    index,
                });
            }
        }
        current = next;
    }
    let check = phi(&current).with_order(order);
    if let Some(index) = check.first_difference(&current) {
        return Err(Error::NotContractive {
            iteration: order + 1,
            index,
        });
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly2;

    #[test]
    fn catalan_equation() {
        let s = fixed_point_solve(|f| &Series::one(f.order()) + &(f * f).shift_x(1), 5).unwrap();
        let got: alloc::vec::Vec<_> = s
            .coeffs()
            .iter()
            .map(|c| c.constant_value().unwrap())
            .collect();
        let want: alloc::vec::Vec<_> = [1, 1, 2, 5, 14, 42]
            .iter()
            .map(|&v| crate::algebra::rat(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn constant_map() {
        assert_eq!(
            fixed_point_solve(|f| Series::one(f.order()), 7).unwrap(),
            Series::one(7)
        );
    }

    #[test]
    fn non_contractive_map_is_detected() {
        // 1 + x + 2(S - 1): the x^1 coefficient keeps moving.
        let phi = |s: &Series| {
            let n = s.order();
            let base = Series::from_int_terms(&[(0, 0, 0, 1), (1, 0, 0, 1)], n);
            let dev = (s - &Series::one(n)).scale(&Poly2::from_int(2));
            &base + &dev
        };
        assert!(matches!(
            fixed_point_solve(phi, 4),
            Err(Error::NotContractive { index: 1, .. })
        ));
    }
}
