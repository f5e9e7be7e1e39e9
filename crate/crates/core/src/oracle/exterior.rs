//! Exterior algebra on `e_1..e_n, f_1..f_n`: multiplication by
//! `w = sum e_j f_j`, and Hilbert series of ideals generated by products `e f`.

use crate::combinatorics::{binomial, subsets_of_size};
use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::linalg::{Matrix, Rref};
use crate::series::TruncatedSeries;

/// Sign of `a ^ b` relative to the sorted monomial `a | b`, or `None` if they overlap.
pub fn wedge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        inversions += (a >> y >> 1).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Matrix of `w ^ - : Lambda^i -> Lambda^(i+2)` over `2n` generators.
pub fn exterior_mult_matrix<F: Field>(field: &F, n: usize, i: usize) -> Matrix<F::Elem> {
    let src = subsets_of_size(2 * n, i);
    let dst = subsets_of_size(2 * n, i + 2);
    let row_of: std::collections::HashMap<u64, usize> = dst.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut m = Matrix::zero(field, dst.len(), src.len());
    for (c, &e) in src.iter().enumerate() {
        for j in 0..n {
            let pair = (1u64 << j) | (1u64 << (n + j));
            if let Some(sign) = wedge_sign(pair, e) {
                let r = row_of[&(pair | e)];
                m.set(r, c, field.from_i64(sign));
            }
        }
    }
    m
}

/// Rank of multiplication by `w` on `Lambda^i`, and whether it is maximal.
pub fn exterior_mult_rank(n: usize, i: usize, field: FieldSpec) -> Result<(usize, bool)> {
    crate::with_field!(field, |k| {
        let m = exterior_mult_matrix(&k, n, i);
        let rank = k.rank(&m);
        Ok((rank, rank == m.rows().min(m.cols())))
    })
}

/// Rank and maximality for every `0 <= i <= 2n - 2`.
pub fn exterior_mult_ranks(n: usize, field: FieldSpec) -> Result<Vec<(usize, usize, bool)>> {
    (0..=2 * n.max(1) - 2).map(|i| exterior_mult_rank(n, i, field).map(|(r, m)| (i, r, m))).collect()
}

/// Which products `e_i f_j` generate the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductIdeal {
    /// `e_j f_j` only
    Diagonal,
    /// all `e_i f_j`
    Full,
}

/// `sum_{a,b} dim I_{a,b} s^a t^b u^(a+b-1)` where `I_{a,b}` is spanned by
/// monomials with `a` factors `e` and `b` factors `f`.
pub fn exterior_ideal_series(n: usize, which: ProductIdeal, field: FieldSpec, order: u32) -> Result<TruncatedSeries> {
    crate::with_field!(field, |k| {
        let e_mask = (1u64 << n) - 1;
        let gens: Vec<u64> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| which == ProductIdeal::Full || i == j)
            .map(|(i, j)| (1u64 << i) | (1u64 << (n + j)))
            .collect();
        let mut out = TruncatedSeries::zero(order);
        for a in 1..=n {
            for b in 1..=n {
                let basis: Vec<u64> = subsets_of_size(2 * n, a + b)
                    .into_iter()
                    .filter(|m| (m & e_mask).count_ones() as usize == a)
                    .collect();
                let col_of: std::collections::HashMap<u64, usize> =
                    basis.iter().enumerate().map(|(c, m)| (*m, c)).collect();
                let mut rows = Vec::new();
                for &g in &gens {
                    for m in subsets_of_size(2 * n, a + b - 2) {
                        if (m & e_mask).count_ones() as usize != a - 1 {
                            continue;
                        }
                        if let Some(sign) = wedge_sign(g, m) {
                            let mut row = vec![k.zero(); basis.len()];
                            row[col_of[&(g | m)]] = k.from_i64(sign);
                            rows.push(row);
                        }
                    }
                }
                let dim = Rref::of_rows(k, basis.len(), rows).rank();
                out.add_term([a as u32, b as u32, (a + b - 1) as u32], dim as i128);
            }
        }
        Ok(out)
    })
}

/// `u^-1 ((1+su)^n - 1)((1+tu)^n - 1)`, the part of positive homological
/// degree in the Poincare series of the gl quotient.
pub fn gl_positive_part(n: usize, order: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for a in 1..=n {
        for b in 1..=n {
            let c = binomial(n as i64, a as i64) * binomial(n as i64, b as i64);
            out.add_term([a as u32, b as u32, (a + b - 1) as u32], c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
    }

    #[test]
    fn examples() {
        assert_eq!(exterior_mult_rank(1, 0, FieldSpec::Rationals).unwrap(), (1, true));
        assert_eq!(exterior_mult_rank(2, 1, FieldSpec::Rationals).unwrap(), (4, true));
        assert_eq!(exterior_mult_rank(3, 2, FieldSpec::Rationals).unwrap(), (15, true));
    }

    #[test]
    fn maximal_rank_fails_in_small_characteristic() {
        // n = 4, i = 3: C(8,3) = 56 -> C(8,5) = 56, bijective only when char > 2
        let (_, maximal) = exterior_mult_rank(4, 3, FieldSpec::Prime(3)).unwrap();
        assert!(maximal);
        let (r, _) = exterior_mult_rank(4, 3, FieldSpec::Rationals).unwrap();
        assert_eq!(r, 56);
    }

    #[test]
    fn full_product_ideal_matches_gl() {
        for n in 1..=3 {
            let full = exterior_ideal_series(n, ProductIdeal::Full, FieldSpec::Rationals, 20).unwrap();
            assert_eq!(full, gl_positive_part(n, 20), "n={n}");
        }
        let diag = exterior_ideal_series(2, ProductIdeal::Diagonal, FieldSpec::Rationals, 20).unwrap();
        assert_ne!(diag, gl_positive_part(2, 20));
    }
}
