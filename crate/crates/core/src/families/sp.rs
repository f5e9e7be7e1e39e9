use crate::betti::{BettiTable, Source};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{BiDegree, Polynomial};
use crate::series::TruncatedSeries;

use super::gl::pure_parts;
use super::{bilinear, FamilyKind, MomentFamily};

/// Variables come in two rows: `p1i, p2i` and `q1i, q2i` for `i = 1..n`.
pub struct Sp;

/// Index of `p_{row,i}` (or `q_{row,i}`) among the variables of one side.
fn idx(n: usize, row: usize, i: usize) -> usize {
    row * n + i
}

impl MomentFamily for Sp {
    fn kind(&self) -> FamilyKind {
        FamilyKind::Sp
    }

    fn vars_per_side(&self, n: usize) -> usize {
        2 * n
    }

    fn generator_count(&self, n: usize) -> usize {
        2 * n * n + n
    }

    fn generators(&self, n: usize) -> Vec<Polynomial> {
        let m = 2 * n;
        let (r1, r2) = (0, 1);
        let mut out = Vec::with_capacity(2 * n * n + n);
        for i in 0..n {
            for j in 0..n {
                out.push(bilinear(m, &[(1, idx(n, r1, i), idx(n, r1, j)), (-1, idx(n, r2, i), idx(n, r2, j))]));
            }
        }
        for i in 0..n {
            out.push(bilinear(m, &[(1, idx(n, r1, i), idx(n, r2, i))]));
            out.push(bilinear(m, &[(1, idx(n, r2, i), idx(n, r1, i))]));
        }
        for i in 0..n {
            for j in i + 1..n {
                out.push(bilinear(m, &[(1, idx(n, r1, i), idx(n, r2, j)), (1, idx(n, r1, j), idx(n, r2, i))]));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                out.push(bilinear(m, &[(1, idx(n, r2, i), idx(n, r1, j)), (1, idx(n, r2, j), idx(n, r1, i))]));
            }
        }
        out
    }

    fn variable_names(&self, n: usize) -> Vec<String> {
        let side = |c: char| (1..=2).flat_map(move |r| (1..=n).map(move |i| format!("{c}{r}{i}")));
        side('p').chain(side('q')).collect()
    }

    fn field_guard(&self, n: usize, field: FieldSpec) -> Result<()> {
        if field.characteristic() == 2 {
            return Err(Error::FieldGuard {
                family: format!("sp{n}"),
                field: field.to_string(),
                requirement: "characteristic different from 2".into(),
            });
        }
        Ok(())
    }

    fn hilbert_closed(&self, n: usize, order: u32) -> TruncatedSeries {
        let socle = (2 * n * n - n) as i128;
        pure_parts(2 * n as u32, order).add(&TruncatedSeries::monomial(socle, [1, 1, 0], order))
    }

    fn betti_closed(&self, n: usize) -> BettiTable {
        let mut t = BettiTable::new("sp", n, None, Source::Closed);
        t.set(0, BiDegree::ZERO, 1);
        t.set(1, BiDegree::new(1, 1), (2 * n * n + n) as u64);
        let m = 2 * n as i64;
        let socle = (2 * n * n - n) as i128;
        for i in 2..=4 * n {
            for a in 1..=i + 1 {
                let b = i + 2 - a;
                let (a6, b6) = (a as i64, b as i64);
                let beta = socle * binomial(m, a6 - 1) * binomial(m, b6 - 1) - binomial(m, a6) * binomial(m, b6);
                assert!(beta >= 0, "negative Betti number at i={i}, v=({a},{b})");
                t.set(i, BiDegree::new(a, b), beta as u64);
            }
        }
        t
    }

    fn oracle_limit(&self) -> usize {
        2
    }
}

/// The generating set obtained by renaming `a = p1, b = q1, c = p2, d = q2`:
/// `a_i b_j - c_i d_j`, `a_i d_j + a_j d_i` and `c_i b_j + c_j b_i` for all `i, j`.
/// It spans the same ideal away from characteristic 2.
pub fn sp_relabeled_generators(n: usize, field: FieldSpec) -> Result<Vec<Polynomial>> {
    Sp.field_guard(n, field)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let m = 2 * n;
    let (a, b) = (|i: usize| idx(n, 0, i), |i: usize| idx(n, 0, i));
    let (c, d) = (|i: usize| idx(n, 1, i), |i: usize| idx(n, 1, i));
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(bilinear(m, &[(1, a(i), b(j)), (-1, c(i), d(j))]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(bilinear(m, &[(1, a(i), d(j)), (1, a(j), d(i))]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(bilinear(m, &[(1, c(i), b(j)), (1, c(j), b(i))]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp1_matches_sl2() {
        assert_eq!(Sp.betti_closed(1).totals(), vec![1, 3, 5, 4, 1]);
    }

    #[test]
    fn sp2_totals() {
        assert_eq!(Sp.betti_closed(2).totals(), vec![1, 10, 100, 280, 392, 328, 167, 48, 6]);
        let h = Sp.hilbert_closed(2, 6);
        assert_eq!(h.coeff([1, 1, 0]), 6);
    }

    #[test]
    fn relabeled_set_for_one() {
        let gens = sp_relabeled_generators(1, FieldSpec::Rationals).unwrap();
        let names = Sp.variable_names(1);
        let shown: Vec<String> = gens.iter().map(|g| g.render(&names)).collect();
        assert_eq!(shown, ["p11*q11 - p21*q21", "2*p11*q21", "2*p21*q11"]);
        assert!(sp_relabeled_generators(1, FieldSpec::Prime(2)).is_err());
    }
}
