//! Hilbert series of the quotient, by counting basis monomials piece by piece.

use crate::error::Result;
use crate::families::RepFamily;
use crate::field::FieldSpec;
use crate::poly::BiDegree;
use crate::quotient::QuotientRing;
use crate::series::TruncatedSeries;

/// `sum dim Q_{(a,b)} s^a t^b` for `a + b <= order`.
pub fn hilbert_oracle(f: &RepFamily, order: u32, field: FieldSpec) -> Result<TruncatedSeries> {
    f.field_guard(field)?;
    crate::with_field!(field, |k| {
        let q = QuotientRing::new(k, f.ambient(), f.generators(), order as usize)?;
        let mut out = TruncatedSeries::zero(order);
        for v in BiDegree::up_to_total(order as usize) {
            out.add_term([v.a as u32, v.b as u32, 0], q.dimension(v)? as i128);
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::S;

    #[test]
    fn examples() {
        let gl2 = RepFamily::parse("gl", 2).unwrap();
        assert_eq!(hilbert_oracle(&gl2, 6, FieldSpec::Rationals).unwrap(), gl2.hilbert_closed(6));

        let sp1 = RepFamily::parse("sp", 1).unwrap();
        let h = hilbert_oracle(&sp1, 4, FieldSpec::Rationals).unwrap();
        assert_eq!(h.coeff([2, 1, 0]), 0);
        assert_eq!(h.coeff([1, 2, 0]), 0);

        // (1 + 2s) / (1 - s)^4
        let so3 = RepFamily::parse("so", 3).unwrap();
        let collapsed = hilbert_oracle(&so3, 7, FieldSpec::Rationals).unwrap().collapse_st(S);
        let expected =
            TruncatedSeries::one_plus(2, [1, 0, 0], 7).mul(&TruncatedSeries::geometric_power([1, 0, 0], 4, 7));
        assert_eq!(collapsed, expected);
    }
}
