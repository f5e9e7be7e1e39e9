//! Tor over the polynomial ring from the Koszul complex on the variables
//! tensored with the quotient.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::betti::{BettiTable, Source};
use crate::combinatorics::{mask_elements, subsets_of_size};
use crate::error::{Error, Result};
use crate::families::RepFamily;
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::{Ambient, BiDegree};
use crate::quotient::{apply_sparse, QuotientRing, SparseMap};

/// Which bidegrees to examine at each homological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportBound {
    /// `total(v) <= i + k`. Nonzero homology at the edge is an error.
    Strand(usize),
    /// `total(v) <= d` for every `i`.
    Total(usize),
}

impl Default for SupportBound {
    fn default() -> Self {
        SupportBound::Strand(3)
    }
}

impl SupportBound {
    fn max_total(&self, i: usize) -> usize {
        match *self {
            SupportBound::Strand(k) => i + k,
            SupportBound::Total(d) => d,
        }
    }

    /// Highest quotient degree touched by the differentials.
    fn quotient_degree(&self) -> usize {
        match *self {
            SupportBound::Strand(k) => k + 1,
            SupportBound::Total(d) => d,
        }
    }
}

/// One piece `(Lambda^i V (x) S/I)_v` of the Koszul complex and its differential.
#[derive(Clone, Debug)]
pub struct KoszulPiece<F: Field> {
    pub i: usize,
    pub v: BiDegree,
    /// Basis elements `(exterior monomial as a bitmask, quotient basis index)`.
    pub basis: Vec<(u64, usize)>,
    /// Columns of the differential into the piece at `(i - 1, v)`.
    pub differential: SparseMap<F::Elem>,
    pub target_dim: usize,
}

struct Layout {
    /// `mask -> (offset, quotient degree)`
    blocks: HashMap<u64, (usize, BiDegree)>,
    basis: Vec<(u64, usize)>,
}

fn mask_degree(amb: Ambient, mask: u64) -> BiDegree {
    let p = (mask & ((1u64 << amb.num_p) - 1)).count_ones() as usize;
    BiDegree::new(p, mask.count_ones() as usize - p)
}

fn layout<F: Field>(q: &QuotientRing<F>, i: usize, v: BiDegree) -> Result<Layout> {
    let amb = q.ambient();
    let mut blocks = HashMap::new();
    let mut basis = Vec::new();
    if i > amb.num_vars() {
        return Ok(Layout { blocks, basis });
    }
    for mask in subsets_of_size(amb.num_vars(), i) {
        let Some(w) = v.checked_sub(mask_degree(amb, mask)) else { continue };
        let dim = q.dimension(w)?;
        blocks.insert(mask, (basis.len(), w));
        basis.extend((0..dim).map(|b| (mask, b)));
    }
    Ok(Layout { blocks, basis })
}

/// Assembles the Koszul differential `d_i` at bidegree `v`.
pub fn koszul_piece<F: Field>(q: &QuotientRing<F>, i: usize, v: BiDegree) -> Result<KoszulPiece<F>> {
    let field = q.field();
    let source = layout(q, i, v)?;
    if i == 0 {
        let n = source.basis.len();
        return Ok(KoszulPiece { i, v, basis: source.basis, differential: vec![Vec::new(); n], target_dim: 0 });
    }
    let target = layout(q, i - 1, v)?;
    let mut differential = Vec::with_capacity(source.basis.len());
    for &(mask, b) in &source.basis {
        let mut col: Vec<(usize, F::Elem)> = Vec::new();
        for (pos, k) in mask_elements(mask).enumerate() {
            let rest = mask & !(1u64 << k);
            let (offset, wt) = target.blocks[&rest];
            let piece = q.expect_piece(wt)?;
            let image = &piece.mult(k).expect("variable divides the degree")[b];
            for (idx, c) in image {
                let c = if pos % 2 == 0 { c.clone() } else { field.neg(c) };
                col.push((offset + idx, c));
            }
        }
        col.sort_by_key(|(r, _)| *r);
        differential.push(col);
    }
    Ok(KoszulPiece { i, v, basis: source.basis, differential, target_dim: target.basis.len() })
}

impl<F: Field> KoszulPiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, field: &F) -> Matrix<F::Elem> {
        let mut m = Matrix::zero(field, self.target_dim, self.basis.len());
        for (c, col) in self.differential.iter().enumerate() {
            for (r, e) in col {
                m.set(*r, c, e.clone());
            }
        }
        m
    }

    pub fn rank(&self, field: &F) -> usize {
        if self.target_dim == 0 || self.basis.is_empty() {
            return 0;
        }
        field.rank(&self.matrix(field))
    }

    /// True iff `lower . self == 0`, where `lower` is the differential out of the target.
    pub fn composes_to_zero(&self, field: &F, lower: &KoszulPiece<F>) -> bool {
        assert_eq!(lower.dim(), self.target_dim);
        self.differential.iter().all(|col| apply_sparse(field, &lower.differential, col, lower.target_dim).is_empty())
    }
}

/// Graded Betti numbers of `S/I` over `S` for `i <= max_i`.
pub fn koszul_betti<F: Field>(
    q: &QuotientRing<F>,
    max_i: usize,
    bound: SupportBound,
) -> Result<BTreeMap<(usize, BiDegree), u64>> {
    if let SupportBound::Total(d) = bound {
        if max_i >= 1 && d < max_i + 1 {
            return Err(Error::DegreeBound {
                bound: d,
                detail: format!("homological degree {max_i} needs total degree at least {}", max_i + 1),
            });
        }
    }
    if q.max_total() < bound.quotient_degree() {
        return Err(Error::DegreeBound {
            bound: q.max_total(),
            detail: format!("the quotient must be built to degree {}", bound.quotient_degree()),
        });
    }
    let field = q.field();
    let top_i = (max_i + 1).min(q.ambient().num_vars());

    // every differential d_i at every v used by beta_{i-1} or beta_i
    let mut jobs = Vec::new();
    for i in 0..=top_i {
        let reach = bound.max_total(i.min(max_i));
        for v in BiDegree::up_to_total(reach) {
            if v.total() >= i {
                jobs.push((i, v));
            }
        }
    }
    let pieces: Vec<KoszulPiece<F>> = jobs.par_iter().map(|&(i, v)| koszul_piece(q, i, v)).collect::<Result<_>>()?;
    let index: HashMap<(usize, BiDegree), usize> = jobs.iter().enumerate().map(|(k, job)| (*job, k)).collect();

    let ranks: Vec<usize> = pieces
        .par_iter()
        .map(|p| {
            if p.i >= 2 {
                if let Some(&k) = index.get(&(p.i - 1, p.v)) {
                    if !p.composes_to_zero(field, &pieces[k]) {
                        return Err(Error::Internal(format!("d o d != 0 at i={}, v={}", p.i, p.v)));
                    }
                }
            }
            Ok(p.rank(field))
        })
        .collect::<Result<_>>()?;

    let mut out = BTreeMap::new();
    for i in 0..=max_i.min(q.ambient().num_vars()) {
        for v in BiDegree::up_to_total(bound.max_total(i)) {
            let Some(&k) = index.get(&(i, v)) else { continue };
            let next = index.get(&(i + 1, v)).map_or(0, |&k2| ranks[k2]);
            let beta = pieces[k].dim() - ranks[k] - next;
            if beta > 0 {
                if let SupportBound::Strand(s) = bound {
                    if v.total() == i + s && i > 0 {
                        return Err(Error::DegreeBound {
                            bound: s,
                            detail: format!("nonzero homology at the edge: beta_{{{i},{v}}} = {beta}"),
                        });
                    }
                }
                out.insert((i, v), beta as u64);
            }
        }
    }
    Ok(out)
}

/// Graded Betti numbers of the quotient by the family's ideal.
pub fn tor_over_s(f: &RepFamily, max_i: usize, bound: SupportBound, field: FieldSpec) -> Result<BettiTable> {
    f.field_guard(field)?;
    crate::with_field!(field, |k| {
        let q = QuotientRing::new(k, f.ambient(), f.generators(), bound.quotient_degree())?;
        let entries = koszul_betti(&q, max_i, bound)?;
        let mut t = BettiTable::new(f.name(), f.n(), Some(field), Source::Oracle);
        for ((i, v), b) in entries {
            t.set(i, v, b);
        }
        Ok(t)
    })
}

/// Every homological degree that can be nonzero: `i <= number of variables`.
pub fn tor_full(f: &RepFamily, field: FieldSpec) -> Result<BettiTable> {
    tor_over_s(f, f.ambient().num_vars(), SupportBound::default(), field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalField;

    #[test]
    fn hypersurface() {
        let f = RepFamily::parse("gl", 1).unwrap();
        let t = tor_full(&f, FieldSpec::Rationals).unwrap();
        let entries: Vec<_> = t.entries().collect();
        assert_eq!(entries, vec![(0, BiDegree::ZERO, 1), (1, BiDegree::new(1, 1), 1)]);
    }

    #[test]
    fn sl2_graded() {
        let f = RepFamily::parse("sl", 2).unwrap();
        let t = tor_full(&f, FieldSpec::Rationals).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 5, 4, 1]);
        assert_eq!(t.diff(&f.betti_closed()), vec![]);
    }

    #[test]
    fn differentials_square_to_zero() {
        let f = RepFamily::parse("so", 3).unwrap();
        let q = QuotientRing::new(RationalField, f.ambient(), f.generators(), 5).unwrap();
        for i in 2..=4 {
            for v in BiDegree::of_total(i + 1) {
                let upper = koszul_piece(&q, i, v).unwrap();
                let lower = koszul_piece(&q, i - 1, v).unwrap();
                assert!(upper.composes_to_zero(&RationalField, &lower));
            }
        }
    }

    #[test]
    fn boundary_is_reported() {
        let f = RepFamily::parse("sl", 2).unwrap();
        // the second strand sits at i + 2, so a strand bound of 2 is too tight
        let err = tor_over_s(&f, 4, SupportBound::Strand(2), FieldSpec::Rationals).unwrap_err();
        assert!(matches!(err, Error::DegreeBound { .. }));
        assert!(tor_over_s(&f, 4, SupportBound::Total(3), FieldSpec::Rationals).is_err());
    }
}
