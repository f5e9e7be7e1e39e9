//! Dense exact linear algebra over a [`Field`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::{Field, Rational};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if field.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, field.add(&cur, &field.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn is_zero_matrix<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|e| field.is_zero(e))
    }
}

/// Exact rank of `m`, using the field's preferred elimination.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    field.rank(m)
}

/// Rank by ordinary Gaussian elimination over the field.
pub fn gauss_rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // eliminate along the shorter side
    let m = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    let mut ech = Echelon::new(field.clone(), m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r).to_vec());
    }
    ech.rank()
}

/// Rank over the rationals by fraction-free elimination: rows are scaled to
/// primitive integer vectors and combined with integer multipliers only.
pub fn fraction_free_rank(m: &Matrix<Rational>) -> usize {
    let m = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    let int_rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| integer_row(m.row(r))).collect();
    let small: Option<Vec<Vec<i128>>> =
        int_rows.iter().map(|row| row.iter().map(|x| i128::try_from(x).ok()).collect()).collect();
    if let Some(rows) = small {
        if let Some(r) = ff_rank(rows, m.cols()) {
            return r;
        }
    }
    ff_rank(int_rows, m.cols()).expect("bigint elimination cannot overflow")
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().filter(|x| !x.is_zero()).fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom()));
    row.iter().map(|x| if x.is_zero() { BigInt::zero() } else { x.numer() * (&lcm / x.denom()) }).collect()
}

/// Integer arithmetic needed by fraction-free elimination. `None` signals
/// overflow of a fixed-width representation.
trait ExactInt: Clone {
    fn is_zero(&self) -> bool;
    fn abs_le(&self, other: &Self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self>; // self*a - b*c
    fn is_unit_abs(&self) -> bool;
}

impl ExactInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.unsigned_abs() <= other.unsigned_abs()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self> {
        self.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)
    }
    fn is_unit_abs(&self) -> bool {
        self.unsigned_abs() == 1
    }
}

impl ExactInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.abs() <= other.abs()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn mul_sub(&self, a: &Self, b: &Self, c: &Self) -> Option<Self> {
        Some(self * a - b * c)
    }
    fn is_unit_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn ff_rank<I: ExactInt>(mut rows: Vec<Vec<I>>, cols: usize) -> Option<usize> {
    let n = rows.len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n {
            break;
        }
        // smallest nonzero entry as pivot keeps growth down
        let mut best: Option<usize> = None;
        for r in rank..n {
            if rows[r][col].is_zero() {
                continue;
            }
            best = match best {
                Some(b) if rows[b][col].abs_le(&rows[r][col]) => Some(b),
                _ => Some(r),
            };
            if rows[r][col].is_unit_abs() {
                break;
            }
        }
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[col]);
            let row_mul = pivot.div_exact(&g);
            let piv_mul = row[col].div_exact(&g);
            let mut content: Option<I> = None;
            for c in col..cols {
                let v = row[c].mul_sub(&row_mul, &piv_mul, &pivot_row[c])?;
                if !v.is_zero() {
                    content = Some(match content {
                        None => v.clone(),
                        Some(g) => g.gcd(&v),
                    });
                }
                row[c] = v;
            }
            if let Some(g) = content {
                if !g.is_unit_abs() {
                    for c in col..cols {
                        if !row[c].is_zero() {
                            row[c] = row[c].div_exact(&g);
                        }
                    }
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Incrementally built row-echelon basis of a subspace of `F^cols`.
///
/// Rows are kept normalised (leading entry one) in semi-echelon form: every
/// stored row is zero left of its pivot and no two rows share a pivot. Call
/// [`Echelon::into_rref`] for the fully reduced canonical form.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), pivots: Vec::new(), row_of_pivot: vec![None; cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. The result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        for c in 0..self.cols {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = self.row_of_pivot[c] {
                let coeff = v[c].clone();
                let row = &self.rows[r];
                for k in c..self.cols {
                    if !f.is_zero(&row[k]) {
                        f.sub_mul_assign(&mut v[k], &coeff, &row[k]);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> Option<usize> {
        self.reduce(&mut v);
        let f = &self.field;
        let lead = v.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&v[lead]);
        for x in v.iter_mut().skip(lead) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        self.row_of_pivot[lead] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(lead);
        Some(lead)
    }

    pub fn into_rref(self) -> Rref<F> {
        let Echelon { field, cols, mut rows, pivots, .. } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| pivots[r]);
        // back substitution, rightmost pivot first
        for &r in order.iter().rev() {
            let pc = pivots[r];
            let pivot_row = rows[r].clone();
            for (s, row) in rows.iter_mut().enumerate() {
                if s == r || field.is_zero(&row[pc]) {
                    continue;
                }
                let coeff = row[pc].clone();
                for k in pc..cols {
                    if !field.is_zero(&pivot_row[k]) {
                        field.sub_mul_assign(&mut row[k], &coeff, &pivot_row[k]);
                    }
                }
            }
        }
        let mut sorted_rows = Vec::with_capacity(rows.len());
        let mut sorted_pivots = Vec::with_capacity(rows.len());
        let mut taken: Vec<Option<Vec<F::Elem>>> = rows.into_iter().map(Some).collect();
        for r in order {
            sorted_pivots.push(pivots[r]);
            sorted_rows.push(taken[r].take().expect("row taken twice"));
        }
        Rref::from_parts(field, cols, sorted_rows, sorted_pivots)
    }
}

/// Reduced row-echelon form: the canonical basis of a subspace.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<F: Field> PartialEq for Rref<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<F: Field> Rref<F> {
    fn from_parts(field: F, cols: usize, rows: Vec<Vec<F::Elem>>, pivots: Vec<usize>) -> Self {
        let mut row_of_pivot = vec![None; cols];
        for (r, &p) in pivots.iter().enumerate() {
            row_of_pivot[p] = Some(r);
        }
        Rref { field, cols, rows, pivots, row_of_pivot }
    }

    /// Row-reduces the span of `rows`.
    pub fn of_rows(field: F, cols: usize, rows: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut ech = Echelon::new(field, cols);
        for r in rows {
            ech.insert(r);
        }
        ech.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_row(&self, col: usize) -> Option<&[F::Elem]> {
        self.row_of_pivot[col].map(|r| self.rows[r].as_slice())
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col].is_some()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.row_of_pivot[c].is_none()).collect()
    }

    /// Basis of `{ x : A x = 0 }` where `A` is the matrix whose rows span this
    /// space. One vector per free column, with a one in that column.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        self.free_columns()
            .into_iter()
            .map(|fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in self.pivots.iter().enumerate() {
                    let a = &self.rows[r][fc];
                    if !f.is_zero(a) {
                        v[pc] = f.neg(a);
                    }
                }
                v
            })
            .collect()
    }
}

/// Kernel of the linear map with the given matrix, acting on column vectors.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    Rref::of_rows(field.clone(), m.cols(), m.row_vecs()).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use proptest::prelude::*;

    fn q_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    #[test]
    fn rank_trivial_cases() {
        let q = RationalField;
        assert_eq!(rank(&q, &Matrix::zero(&q, 3, 5)), 0);
        assert_eq!(rank(&q, &Matrix::identity(&q, 4)), 4);
        let m = q_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&q, &m), 2);
        assert_eq!(gauss_rank(&q, &m), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 3
        let rows: [&[i64]; 2] = [&[1, 1], &[1, -2]];
        assert_eq!(rank(&RationalField, &q_matrix(&rows)), 2);
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(2, rows.iter().map(|r| r.iter().map(|&x| f3.from_i64(x)).collect()).collect());
        assert_eq!(rank(&f3, &m), 1);
    }

    #[test]
    fn nullspace_is_kernel() {
        let q = RationalField;
        let m = q_matrix(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ker = kernel(&q, &m);
        assert_eq!(ker.len(), 2);
        for v in ker {
            for r in 0..m.rows() {
                let dot = (0..m.cols()).fold(q.zero(), |acc, c| q.add(&acc, &q.mul(m.get(r, c), &v[c])));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rref_is_order_independent() {
        let q = RationalField;
        let a = vec![Rational::from_int(1), Rational::from_int(2), Rational::from_int(0)];
        let b = vec![Rational::from_int(0), Rational::from_int(3), Rational::from_int(1)];
        let c = vec![Rational::from_int(1), Rational::from_int(5), Rational::from_int(1)];
        let r1 = Rref::of_rows(q, 3, vec![a.clone(), b.clone(), c.clone()]);
        let r2 = Rref::of_rows(q, 3, vec![c, b, a]);
        assert_eq!(r1, r2);
        assert_eq!(r1.rank(), 2);
    }

    fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
    }

    proptest! {
        #[test]
        fn fraction_free_agrees_with_field_elimination(rows in int_matrix()) {
            let q = RationalField;
            let cols = rows[0].len();
            let m = Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect());
            prop_assert_eq!(fraction_free_rank(&m), gauss_rank(&q, &m));
            prop_assert_eq!(fraction_free_rank(&m), fraction_free_rank(&m.transpose()));
        }

        #[test]
        fn big_prime_rank_matches_rationals(rows in int_matrix()) {
            // reduction mod p can only lower the rank
            let f = PrimeField::new(32003).unwrap();
            let cols = rows[0].len();
            let mq = Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect());
            let mp = Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect());
            let (rq, rp) = (rank(&RationalField, &mq), rank(&f, &mp));
            prop_assert!(rp <= rq);
        }
    }
}
