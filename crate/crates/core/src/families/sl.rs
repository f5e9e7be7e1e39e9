use crate::betti::{BettiTable, Source};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{BiDegree, Polynomial};
use crate::series::TruncatedSeries;

use super::gl::pure_parts;
use super::{bilinear, FamilyKind, MomentFamily};

/// Off-diagonal products plus consecutive differences of diagonal products.
/// Requires `n >= 2`: for `n = 1` the Lie algebra is zero.
pub struct Sl;

impl MomentFamily for Sl {
    fn kind(&self) -> FamilyKind {
        FamilyKind::Sl
    }

    fn min_n(&self) -> usize {
        2
    }

    fn generator_count(&self, n: usize) -> usize {
        n * n - 1
    }

    fn generators(&self, n: usize) -> Vec<Polynomial> {
        let mut out = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(bilinear(n, &[(1, i, j)]));
                }
            }
        }
        for i in 0..n - 1 {
            out.push(bilinear(n, &[(1, i, i), (-1, i + 1, i + 1)]));
        }
        out
    }

    fn field_guard(&self, n: usize, field: FieldSpec) -> Result<()> {
        match field {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) if 2 * p > n as u64 + 1 => Ok(()),
            FieldSpec::Prime(_) => Err(Error::FieldGuard {
                family: format!("sl{n}"),
                field: field.to_string(),
                requirement: "characteristic 0 or greater than (n+1)/2".into(),
            }),
        }
    }

    fn hilbert_closed(&self, n: usize, order: u32) -> TruncatedSeries {
        pure_parts(n as u32, order).add(&TruncatedSeries::monomial(1, [1, 1, 0], order))
    }

    fn betti_closed(&self, n: usize) -> BettiTable {
        let series = poincare(n).expect("closed form is divisible by u^2");
        let mut t = BettiTable::new("sl", n, None, Source::Closed);
        for (e, c) in series.terms() {
            assert!(c > 0, "negative coefficient {c} in the Poincare series");
            t.set(e[2] as usize, BiDegree::new(e[0] as usize, e[1] as usize), c as u64);
        }
        t
    }

    fn poincare_over_s(&self, n: usize, order: u32) -> Result<TruncatedSeries> {
        Ok(poincare(n)?.truncate(order))
    }
}

/// The full trigraded Poincare series, with `X = (1+su)^n (1+tu)^n`:
///
/// ```text
/// 1 + u^-1 ([(1 - st u^2) X]_+ + 1 - (1+su)^n - (1+tu)^n) + u^-2 [(st u^2 - 1) X]_+
/// ```
///
/// Every term of `X` has `u`-degree equal to its `(s,t)`-degree, so the two
/// shifts place the linear strand at `i = |v| - 1` and the second strand at
/// `i = |v| - 2`. The pure powers of `s` and `t` in the first positive part
/// are exactly `(1+su)^n + (1+tu)^n - 1` and cancel.
fn poincare(n: usize) -> Result<TruncatedSeries> {
    let o = 4 * n as u32 + 4;
    let n = n as u32;
    let one = TruncatedSeries::one(o);
    let ps = TruncatedSeries::one_plus(1, [1, 0, 1], o).pow(n);
    let qs = TruncatedSeries::one_plus(1, [0, 1, 1], o).pow(n);
    let x = ps.mul(&qs);
    let stu2 = TruncatedSeries::monomial(1, [1, 1, 2], o);
    let linear = one.sub(&stu2).mul(&x).positive_part().add(&one).sub(&ps).sub(&qs).shift_u_down(1)?;
    let second = stu2.sub(&one).mul(&x).positive_part().shift_u_down(2)?;
    Ok(TruncatedSeries::one(o).add(&linear).add(&second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_table() {
        let t = Sl.betti_closed(2);
        assert_eq!(t.totals(), vec![1, 3, 5, 4, 1]);
        assert_eq!(t.top(1), Some(2));
        assert_eq!(t.top(2), Some(4));
        assert_eq!(t.total_at_degree(2, 3) + t.total_at_degree(2, 4), 5);
    }

    #[test]
    fn printed_totals() {
        use crate::combinatorics::binomial;
        for n in 2..=8usize {
            let t = Sl.betti_closed(n);
            let n = n as i64;
            for i in 1..=2 * n {
                let expected = if i < n {
                    binomial(2 * n, i + 1) - binomial(2 * n, i - 1) - 2 * binomial(n, i + 1)
                } else {
                    binomial(2 * n, i) - binomial(2 * n, i + 2)
                };
                assert_eq!(t.total(i as usize) as i128, expected, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn guard() {
        assert!(Sl.field_guard(4, FieldSpec::Prime(3)).is_ok());
        assert!(Sl.field_guard(5, FieldSpec::Prime(3)).is_err());
        assert!(Sl.field_guard(100, FieldSpec::Rationals).is_ok());
    }
}
