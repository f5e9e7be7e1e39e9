//! Graded pieces of an ideal by direct row reduction over the monomial basis.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Rref;
use crate::poly::{monomial_basis, Ambient, BiDegree, Monomial, Polynomial};

/// A subspace of one bigraded piece of the polynomial ring, given by the
/// reduced row-echelon form of its spanning set over `basis`.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub bidegree: BiDegree,
    pub basis: Vec<Monomial>,
    pub span: Rref<F>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dimension(&self) -> usize {
        self.span.rank()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.basis.len()
    }
}

impl<F: Field> PartialEq for GradedPiece<F> {
    fn eq(&self, other: &Self) -> bool {
        self.bidegree == other.bidegree && self.basis == other.basis && self.span == other.span
    }
}

fn check_generators(ambient: Ambient, generators: &[Polynomial]) -> Result<()> {
    for g in generators {
        if g.ambient() != ambient {
            return Err(Error::InvalidInput(format!(
                "generator in ring with {}+{} variables, expected {}+{}",
                g.ambient().num_p,
                g.ambient().num_q,
                ambient.num_p,
                ambient.num_q
            )));
        }
        if !g.is_zero() && g.bidegree().is_none() {
            return Err(Error::InvalidInput("generator is not bihomogeneous".into()));
        }
    }
    Ok(())
}

/// The degree-`v` piece of the ideal generated by `generators`: the span of
/// all products `g * m` with `m` a monomial of complementary bidegree.
pub fn ideal_piece<F: Field>(
    field: &F,
    ambient: Ambient,
    generators: &[Polynomial],
    v: BiDegree,
) -> Result<GradedPiece<F>> {
    check_generators(ambient, generators)?;
    let basis = monomial_basis(ambient.num_p, ambient.num_q, v);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in generators {
        let Some(w) = g.bidegree() else { continue };
        let Some(rest) = v.checked_sub(w) else { continue };
        for m in monomial_basis(ambient.num_p, ambient.num_q, rest) {
            let mut row = vec![field.zero(); basis.len()];
            for (t, c) in g.terms() {
                let col = index[&t.mul(&m)];
                row[col] = field.add(&row[col], &field.from_i64(c));
            }
            rows.push(row);
        }
    }
    let span = Rref::of_rows(field.clone(), basis.len(), rows);
    Ok(GradedPiece { bidegree: v, basis, span })
}

/// dim (S/I)_v
pub fn quotient_dimension<F: Field>(
    field: &F,
    ambient: Ambient,
    generators: &[Polynomial],
    v: BiDegree,
) -> Result<usize> {
    let piece = ideal_piece(field, ambient, generators, v)?;
    Ok(piece.ambient_dimension() - piece.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn sl2() -> (Ambient, Vec<Polynomial>) {
        let amb = Ambient::new(2, 2);
        let gens = vec![
            Polynomial::from_terms(amb, [(1, mono(&[1, 0, 0, 1]))]),
            Polynomial::from_terms(amb, [(1, mono(&[0, 1, 1, 0]))]),
            Polynomial::from_terms(amb, [(1, mono(&[1, 0, 1, 0])), (-1, mono(&[0, 1, 0, 1]))]),
        ];
        (amb, gens)
    }

    #[test]
    fn hypersurface_pieces() {
        let amb = Ambient::new(1, 1);
        let gens = vec![Polynomial::from_terms(amb, [(1, mono(&[1, 1]))])];
        let f = RationalField;
        assert_eq!(ideal_piece(&f, amb, &gens, BiDegree::new(1, 1)).unwrap().dimension(), 1);
        assert_eq!(ideal_piece(&f, amb, &gens, BiDegree::new(2, 0)).unwrap().dimension(), 0);
        assert_eq!(quotient_dimension(&f, amb, &gens, BiDegree::new(1, 1)).unwrap(), 0);
    }

    #[test]
    fn sl2_low_degrees() {
        let (amb, gens) = sl2();
        let f = RationalField;
        assert_eq!(ideal_piece(&f, amb, &gens, BiDegree::new(1, 1)).unwrap().dimension(), 3);
        assert_eq!(quotient_dimension(&f, amb, &gens, BiDegree::new(1, 1)).unwrap(), 1);
        // every mixed monomial of degree 3 lies in the ideal
        assert_eq!(quotient_dimension(&f, amb, &gens, BiDegree::new(2, 1)).unwrap(), 0);
    }

    #[test]
    fn order_independent() {
        let (amb, mut gens) = sl2();
        let f = PrimeField::new(32003).unwrap();
        let v = BiDegree::new(2, 2);
        let a = ideal_piece(&f, amb, &gens, v).unwrap();
        gens.reverse();
        let b = ideal_piece(&f, amb, &gens, v).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_mixed_rings() {
        let (amb, mut gens) = sl2();
        gens.push(Polynomial::from_terms(Ambient::new(1, 1), [(1, mono(&[1, 1]))]));
        assert!(ideal_piece(&RationalField, amb, &gens, BiDegree::new(1, 1)).is_err());
    }
}
