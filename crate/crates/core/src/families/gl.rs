use crate::betti::{BettiTable, Source};
use crate::combinatorics::binomial;
use crate::error::Result;
use crate::poly::{BiDegree, Polynomial};
use crate::series::{TruncatedSeries, S, T};

use super::{bilinear, FamilyKind, MomentFamily};

/// All products `p_i q_j`.
pub struct Gl;

impl MomentFamily for Gl {
    fn kind(&self) -> FamilyKind {
        FamilyKind::Gl
    }

    fn generator_count(&self, n: usize) -> usize {
        n * n
    }

    fn generators(&self, n: usize) -> Vec<Polynomial> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(bilinear(n, &[(1, i, j)]));
            }
        }
        out
    }

    fn hilbert_closed(&self, n: usize, order: u32) -> TruncatedSeries {
        pure_parts(n as u32, order)
    }

    fn betti_closed(&self, n: usize) -> BettiTable {
        let mut t = BettiTable::new("gl", n, None, Source::Closed);
        t.set(0, BiDegree::ZERO, 1);
        let n = n as i64;
        for i in 1..2 * n as usize {
            for a in 1..=i {
                let b = i + 1 - a;
                let beta = binomial(n, a as i64) * binomial(n, b as i64);
                t.set(i, BiDegree::new(a, b), beta as u64);
            }
        }
        t
    }

    fn poincare_over_s(&self, n: usize, order: u32) -> Result<TruncatedSeries> {
        let o = order + 1;
        let n = n as u32;
        let ps = TruncatedSeries::one_plus(1, [1, 0, 1], o).pow(n).sub(&TruncatedSeries::one(o));
        let qs = TruncatedSeries::one_plus(1, [0, 1, 1], o).pow(n).sub(&TruncatedSeries::one(o));
        let tail = ps.mul(&qs).shift_u_down(1)?;
        Ok(TruncatedSeries::one(order).add(&tail))
    }
}

/// `1/(1-s)^m + 1/(1-t)^m - 1`
pub(super) fn pure_parts(m: u32, order: u32) -> TruncatedSeries {
    let mut es = [0; 3];
    es[S] = 1;
    let mut et = [0; 3];
    et[T] = 1;
    TruncatedSeries::geometric_power(es, m, order)
        .add(&TruncatedSeries::geometric_power(et, m, order))
        .sub(&TruncatedSeries::one(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurface_case() {
        let h = Gl.hilbert_closed(1, 6);
        assert_eq!(h.coeff([1, 1, 0]), 0);
        assert_eq!(h.coeff([2, 0, 0]), 1);
        let t = Gl.betti_closed(1);
        assert_eq!(t.totals(), vec![1, 1]);
        assert_eq!(t.get(1, BiDegree::new(1, 1)), 1);
        let p = Gl.poincare_over_s(1, 4).unwrap();
        assert_eq!(p, TruncatedSeries::from_terms(4, [([0, 0, 0], 1), ([1, 1, 1], 1)]));
    }

    #[test]
    fn poincare_matches_table() {
        for n in 1..=5 {
            let closed = Gl.poincare_over_s(n, 30).unwrap();
            assert_eq!(closed, Gl.betti_closed(n).poincare_series(30), "n={n}");
        }
        let p = Gl.poincare_over_s(2, 10).unwrap();
        assert_eq!(p.coeff([1, 1, 1]), 4);
    }
}
