//! Bigraded pieces of a quotient ring S/I with explicit multiplication maps.
//!
//! Each piece `Q_u` is built from the pieces one degree lower: it is the
//! cokernel of
//!
//! ```text
//!   Koszul relations + generators of degree u  -->  (+)_x Q_{u - e_x}  -->  Q_u
//! ```
//!
//! where the second map is multiplication by the variable `x` on block `x`.
//! Free columns of the reduced relation matrix give a monomial basis of
//! `Q_u`, and every pivot column expresses a product `x * b` in that basis.
//! No enumeration of the full monomial basis of `S_u` is needed, which keeps
//! the pieces cheap even when `S_u` is large.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::poly::{monomial_basis, Ambient, BiDegree, Monomial, Polynomial};

/// Sparse vector as (index, nonzero coefficient) pairs, sorted by index.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A linear map stored column by column.
pub type SparseMap<E> = Vec<SparseVec<E>>;

#[derive(Clone, Debug)]
pub struct QuotientPiece<F: Field> {
    bidegree: BiDegree,
    basis: Vec<Monomial>,
    /// The basis element `basis[k]` equals `x * lower[j]` for `parent[k] = (x, j)`.
    parent: Vec<Option<(usize, usize)>>,
    /// `mult[x]`: multiplication by variable `x` from `Q_{u - e_x}` into this piece.
    mult: Vec<Option<SparseMap<F::Elem>>>,
}

impl<F: Field> QuotientPiece<F> {
    pub fn bidegree(&self) -> BiDegree {
        self.bidegree
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Monomial representatives of the basis.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn parent(&self, k: usize) -> Option<(usize, usize)> {
        self.parent[k]
    }

    /// Multiplication by variable `x` into this piece, if `x` has a degree below it.
    pub fn mult(&self, x: usize) -> Option<&SparseMap<F::Elem>> {
        self.mult[x].as_ref()
    }
}

/// The quotient ring S/I truncated at a total degree.
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    field: F,
    ambient: Ambient,
    generators: Vec<Polynomial>,
    max_total: usize,
    pieces: HashMap<BiDegree, QuotientPiece<F>>,
}

impl<F: Field> QuotientRing<F> {
    /// Builds every piece of total degree at most `max_total`.
    pub fn new(field: F, ambient: Ambient, generators: Vec<Polynomial>, max_total: usize) -> Result<Self> {
        for g in &generators {
            if g.ambient() != ambient {
                return Err(Error::InvalidInput("generator outside the ambient ring".into()));
            }
            match g.bidegree() {
                Some(w) if w.total() > 0 => {}
                None if g.is_zero() => {}
                _ => return Err(Error::InvalidInput("generators must be bihomogeneous of positive degree".into())),
            }
        }
        let mut ring = QuotientRing { field, ambient, generators, max_total: 0, pieces: HashMap::new() };
        ring.pieces.insert(BiDegree::ZERO, ring.unit_piece());
        ring.extend_to(max_total)?;
        Ok(ring)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    /// Builds the missing pieces up to the new bound.
    pub fn extend_to(&mut self, max_total: usize) -> Result<()> {
        for total in self.max_total + 1..=max_total {
            let built: Vec<Result<QuotientPiece<F>>> =
                BiDegree::of_total(total).collect::<Vec<_>>().into_par_iter().map(|u| self.build_piece(u)).collect();
            for piece in built {
                let piece = piece?;
                self.pieces.insert(piece.bidegree, piece);
            }
            self.max_total = total;
        }
        Ok(())
    }

    pub fn piece(&self, u: BiDegree) -> Option<&QuotientPiece<F>> {
        self.pieces.get(&u)
    }

    /// Like [`QuotientRing::piece`] but fails if `u` is beyond the truncation.
    pub fn expect_piece(&self, u: BiDegree) -> Result<&QuotientPiece<F>> {
        self.pieces.get(&u).ok_or_else(|| Error::DegreeBound {
            bound: self.max_total,
            detail: format!("quotient piece {u} was not built"),
        })
    }

    pub fn dimension(&self, u: BiDegree) -> Result<usize> {
        Ok(self.expect_piece(u)?.dimension())
    }

    fn unit_piece(&self) -> QuotientPiece<F> {
        QuotientPiece {
            bidegree: BiDegree::ZERO,
            basis: vec![Monomial::one(self.ambient.num_vars())],
            parent: vec![None],
            mult: vec![None; self.ambient.num_vars()],
        }
    }

    fn lower_vars(&self, u: BiDegree) -> Vec<(usize, BiDegree)> {
        (0..self.ambient.num_vars()).filter_map(|x| u.checked_sub(self.ambient.var_degree(x)).map(|w| (x, w))).collect()
    }

    fn build_piece(&self, u: BiDegree) -> Result<QuotientPiece<F>> {
        let touches_ideal = self.generators.iter().any(|g| g.bidegree().is_some_and(|w| u.checked_sub(w).is_some()));
        if touches_ideal {
            self.build_cokernel(u)
        } else {
            Ok(self.build_free(u))
        }
    }

    /// A piece untouched by the ideal: all monomials.
    fn build_free(&self, u: BiDegree) -> QuotientPiece<F> {
        let basis = monomial_basis(self.ambient.num_p, self.ambient.num_q, u);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let one = self.field.one();
        let mut mult = vec![None; self.ambient.num_vars()];
        for (x, w) in self.lower_vars(u) {
            let lower = &self.pieces[&w];
            let cols = lower.basis.iter().map(|b| vec![(index[&b.times_var(x)], one.clone())]).collect();
            mult[x] = Some(cols);
        }
        let parent = basis
            .iter()
            .map(|m| {
                let x = m.first_var().expect("positive degree");
                let w = u - self.ambient.var_degree(x);
                let lower = &self.pieces[&w];
                let m2 = m.div_var(x).expect("divides");
                let j = lower.basis.iter().position(|b| *b == m2).expect("lower piece is free too");
                Some((x, j))
            })
            .collect();
        QuotientPiece { bidegree: u, basis, parent, mult }
    }

    fn build_cokernel(&self, u: BiDegree) -> Result<QuotientPiece<F>> {
        let f = &self.field;
        let lowers = self.lower_vars(u);

        // columns (x, j) ordered by the monomial x * b_j, then by x
        let mut columns: Vec<(Monomial, usize, usize)> = Vec::new();
        for &(x, w) in &lowers {
            for (j, b) in self.pieces[&w].basis.iter().enumerate() {
                columns.push((b.times_var(x), x, j));
            }
        }
        columns.sort();
        let ncols = columns.len();
        let col_of: HashMap<(usize, usize), usize> =
            columns.iter().enumerate().map(|(c, (_, x, j))| ((*x, *j), c)).collect();

        let mut ech = Echelon::new(f.clone(), ncols);

        // Koszul relations y*(x*c) = x*(y*c)
        for (a, &(x, wx)) in lowers.iter().enumerate() {
            for &(y, wy) in &lowers[a + 1..] {
                let Some(w) = wx.checked_sub(self.ambient.var_degree(y)) else { continue };
                let low = &self.pieces[&w];
                let into_x = self.pieces[&wx].mult[y].as_ref().expect("mult map present");
                let into_y = self.pieces[&wy].mult[x].as_ref().expect("mult map present");
                for c in 0..low.dimension() {
                    let mut row = vec![f.zero(); ncols];
                    for (j, e) in &into_x[c] {
                        let k = col_of[&(x, *j)];
                        row[k] = f.add(&row[k], e);
                    }
                    for (j, e) in &into_y[c] {
                        let k = col_of[&(y, *j)];
                        row[k] = f.sub(&row[k], e);
                    }
                    ech.insert(row);
                }
            }
        }

        // generators living exactly in this bidegree
        for g in &self.generators {
            if g.bidegree() != Some(u) {
                continue;
            }
            let mut row = vec![f.zero(); ncols];
            for (m, c) in g.terms() {
                let x = m.first_var().expect("positive degree");
                let rest = m.div_var(x).expect("divides");
                let coeff = f.from_i64(c);
                for (j, e) in self.normal_form(&rest)? {
                    let k = col_of[&(x, j)];
                    row[k] = f.add(&row[k], &f.mul(&coeff, &e));
                }
            }
            ech.insert(row);
        }

        let rref = ech.into_rref();
        let free = rref.free_columns();
        let mut basis_pos = vec![usize::MAX; ncols];
        let mut basis = Vec::with_capacity(free.len());
        let mut parent = Vec::with_capacity(free.len());
        for (pos, &c) in free.iter().enumerate() {
            basis_pos[c] = pos;
            let (m, x, j) = &columns[c];
            basis.push(m.clone());
            parent.push(Some((*x, *j)));
        }
        debug_assert!(basis.windows(2).all(|w| w[0] < w[1]), "basis monomials are distinct");

        let mut mult = vec![None; self.ambient.num_vars()];
        for &(x, w) in &lowers {
            let dim = self.pieces[&w].dimension();
            let cols: SparseMap<F::Elem> = (0..dim)
                .map(|j| {
                    let c = col_of[&(x, j)];
                    match rref.pivot_row(c) {
                        None => vec![(basis_pos[c], f.one())],
                        Some(row) => free
                            .iter()
                            .filter(|&&fc| !f.is_zero(&row[fc]))
                            .map(|&fc| (basis_pos[fc], f.neg(&row[fc])))
                            .collect(),
                    }
                })
                .collect();
            mult[x] = Some(cols);
        }
        Ok(QuotientPiece { bidegree: u, basis, parent, mult })
    }

    /// Coordinates of the class of a monomial in the basis of its piece.
    pub fn normal_form(&self, m: &Monomial) -> Result<SparseVec<F::Elem>> {
        let Some(x) = m.first_var() else {
            return Ok(vec![(0, self.field.one())]);
        };
        let rest = m.div_var(x).expect("divides");
        let below = self.normal_form(&rest)?;
        let target = self.expect_piece(m.bidegree(self.ambient.num_p))?;
        Ok(self.apply(target.mult[x].as_ref().expect("mult map present"), &below, target.dimension()))
    }

    /// Image of a polynomial in the quotient, in the basis of its piece.
    pub fn reduce(&self, p: &Polynomial) -> Result<SparseVec<F::Elem>> {
        let Some(u) = p.bidegree() else {
            return if p.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::InvalidInput("polynomial is not bihomogeneous".into()))
            };
        };
        let dim = self.dimension(u)?;
        let mut acc = vec![self.field.zero(); dim];
        for (m, c) in p.terms() {
            let coeff = self.field.from_i64(c);
            for (k, e) in self.normal_form(m)? {
                acc[k] = self.field.add(&acc[k], &self.field.mul(&coeff, &e));
            }
        }
        Ok(to_sparse(&self.field, acc))
    }

    /// Applies a column-stored map to a sparse vector.
    pub fn apply(&self, map: &SparseMap<F::Elem>, v: &SparseVec<F::Elem>, target_dim: usize) -> SparseVec<F::Elem> {
        apply_sparse(&self.field, map, v, target_dim)
    }

    /// Multiplies an element of `Q_u` by variable `x`.
    pub fn mul_var(&self, x: usize, u: BiDegree, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let target = self.expect_piece(u + self.ambient.var_degree(x))?;
        Ok(self.apply(target.mult[x].as_ref().expect("mult map present"), v, target.dimension()))
    }
}

pub(crate) fn to_sparse<F: Field>(field: &F, dense: Vec<F::Elem>) -> SparseVec<F::Elem> {
    dense.into_iter().enumerate().filter(|(_, e)| !field.is_zero(e)).collect()
}

pub(crate) fn apply_sparse<F: Field>(
    field: &F,
    map: &SparseMap<F::Elem>,
    v: &SparseVec<F::Elem>,
    target_dim: usize,
) -> SparseVec<F::Elem> {
    let mut acc = vec![field.zero(); target_dim];
    for (j, c) in v {
        for (k, e) in &map[*j] {
            acc[*k] = field.add(&acc[*k], &field.mul(c, e));
        }
    }
    to_sparse(field, acc)
}
