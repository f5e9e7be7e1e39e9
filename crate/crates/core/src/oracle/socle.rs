//! Socle of the quotient ring: elements killed by every variable.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::families::RepFamily;
use crate::field::{Field, FieldSpec};
use crate::linalg::Rref;
use crate::poly::BiDegree;
use crate::quotient::QuotientRing;
#[cfg(test)]
use crate::quotient::SparseVec;

/// Basis of the socle in bidegree `v`, as coordinate vectors in `Q_v`.
pub fn socle_basis<F: Field>(q: &QuotientRing<F>, v: BiDegree) -> Result<Vec<Vec<F::Elem>>> {
    let field = q.field();
    let amb = q.ambient();
    let dim = q.dimension(v)?;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for x in 0..amb.num_vars() {
        let target = q.expect_piece(v + amb.var_degree(x))?;
        let map = target.mult(x).expect("variable degree divides");
        let mut block = vec![vec![field.zero(); dim]; target.dimension()];
        for (b, col) in map.iter().enumerate() {
            for (r, e) in col {
                block[*r][b] = e.clone();
            }
        }
        rows.extend(block);
    }
    Ok(Rref::of_rows(field.clone(), dim, rows).nullspace())
}

/// `v -> dim socle_v` for all `total(v) <= max_total`.
pub fn socle_dimensions<F: Field>(q: &QuotientRing<F>, max_total: usize) -> Result<BTreeMap<BiDegree, usize>> {
    let mut out = BTreeMap::new();
    for v in BiDegree::up_to_total(max_total) {
        out.insert(v, socle_basis(q, v)?.len());
    }
    Ok(out)
}

pub fn socle(f: &RepFamily, max_total: usize, field: FieldSpec) -> Result<BTreeMap<BiDegree, usize>> {
    f.field_guard(field)?;
    crate::with_field!(field, |k| {
        let q = QuotientRing::new(k, f.ambient(), f.generators(), max_total + 1)?;
        socle_dimensions(&q, max_total)
    })
}

/// Maximal total degree searched for a socle element.
pub const WITNESS_DEGREE: usize = 4;

/// A nonzero socle element of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleWitness {
    pub bidegree: BiDegree,
    /// The element written in the monomial basis of its piece.
    pub element: String,
}

fn render<F: Field>(q: &QuotientRing<F>, v: BiDegree, coords: &[F::Elem], names: &[String]) -> Result<String> {
    let field = q.field();
    let piece = q.expect_piece(v)?;
    let mut parts = Vec::new();
    for (k, c) in coords.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let mono = piece.basis()[k].render(names);
        let coeff = field.render(c);
        let term = match coeff.as_str() {
            "1" => mono,
            "-1" => format!("-{mono}"),
            _ => format!("{coeff}*{mono}"),
        };
        parts.push(term);
    }
    Ok(parts.join(" + ").replace("+ -", "- "))
}

/// First socle element found in total degree `1..=WITNESS_DEGREE`, if any.
/// Its existence shows that the ring has depth zero.
pub fn depth_zero_witness(f: &RepFamily, field: FieldSpec) -> Result<Option<SocleWitness>> {
    f.field_guard(field)?;
    crate::with_field!(field, |k| {
        let q = QuotientRing::new(k, f.ambient(), f.generators(), WITNESS_DEGREE + 1)?;
        let names = f.variable_names();
        for v in BiDegree::up_to_total(WITNESS_DEGREE).filter(|v| v.total() > 0) {
            if let Some(z) = socle_basis(&q, v)?.into_iter().next() {
                return Ok(Some(SocleWitness { bidegree: v, element: render(&q, v, &z, &names)? }));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
/// Dense coordinates of a sparse vector.
pub(crate) fn densify<F: Field>(field: &F, v: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (k, e) in v {
        out[*k] = e.clone();
    }
    out
}
