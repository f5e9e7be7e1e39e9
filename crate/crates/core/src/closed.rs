//! Closed-form series and the identities that tie them together.

use std::str::FromStr;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::families::RepFamily;
use crate::poly::BiDegree;
use crate::series::{TruncatedSeries, U};

pub const DEFAULT_ORDER: u32 = 12;

pub fn hilbert_closed(f: &RepFamily, order: u32) -> TruncatedSeries {
    f.hilbert_closed(order)
}

pub fn betti_closed(f: &RepFamily) -> BettiTable {
    f.betti_closed()
}

pub fn poincare_over_s(f: &RepFamily, order: u32) -> Result<TruncatedSeries> {
    f.poincare_over_s(order)
}

/// Order at which the trigraded series of `f` is a polynomial with nothing truncated.
fn exact_order(f: &RepFamily) -> u32 {
    4 * f.ambient().num_p as u32 + 4
}

/// `sum_i beta_i u^i`: the trigraded series at `s = t = 1`.
pub fn total_poincare(f: &RepFamily) -> Result<Vec<i128>> {
    let full = f.poincare_over_s(exact_order(f))?;
    let collapsed = full.specialize_st_to_one();
    let top = collapsed.terms().map(|(e, _)| e[U]).max().unwrap_or(0);
    Ok(collapsed.univariate(U).into_iter().take(top as usize + 1).collect())
}

/// The total Betti series of the sl family in closed form:
/// `1 - 2u^-1[(1+u)^n - 1] + u^-1[(1-u^2)(1+u)^2n - 1]_+ + u^-2[(u^2-1)(1+u)^2n]_+`.
pub fn sl_total_series(n: usize) -> Result<Vec<i128>> {
    let o = 2 * n as u32 + 4;
    let n = n as u32;
    let one = TruncatedSeries::one(o);
    let onepu = TruncatedSeries::one_plus(1, [0, 0, 1], o);
    let u2 = TruncatedSeries::monomial(1, [0, 0, 2], o);
    let big = onepu.pow(2 * n);
    let a = onepu.pow(n).sub(&one).shift_u_down(1)?.scale(-2);
    let b = one.sub(&u2).mul(&big).sub(&one).positive_part().shift_u_down(1)?;
    let c = u2.sub(&one).mul(&big).positive_part().shift_u_down(2)?;
    let series = TruncatedSeries::one(o).add(&a).add(&b).add(&c);
    Ok(series.univariate(U).into_iter().take(2 * n as usize + 1).collect())
}

/// Outcome of comparing the Hilbert series numerator with the alternating Betti sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub holds: bool,
    /// `(v, numerator coefficient, alternating Betti sum)` at the first disagreement.
    pub first_mismatch: Option<(BiDegree, i128, i128)>,
}

/// `H(s,t) (1-s)^N (1-t)^N == sum (-1)^i beta_{i,v} s^v1 t^v2` up to `order`.
pub fn euler_check_table(f: &RepFamily, table: &BettiTable, order: u32) -> EulerReport {
    let m = f.ambient().num_p as u32;
    let one_minus = |e| TruncatedSeries::one_plus(-1, e, order).pow(m);
    let lhs = f.hilbert_closed(order).mul(&one_minus([1, 0, 0])).mul(&one_minus([0, 1, 0]));
    let rhs = table.euler_numerator(order);
    match lhs.first_difference(&rhs) {
        None => EulerReport { holds: true, first_mismatch: None },
        Some((e, a, b)) => {
            EulerReport { holds: false, first_mismatch: Some((BiDegree::new(e[0] as usize, e[1] as usize), a, b)) }
        }
    }
}

pub fn euler_check(f: &RepFamily, order: u32) -> EulerReport {
    euler_check_table(f, &f.betti_closed(), order)
}

/// `(1+u)^(n+1) / (1 - (n-1) u)`
pub fn poincare_k_over_so(n: usize, order: u32) -> TruncatedSeries {
    let num = TruncatedSeries::one_plus(1, [0, 0, 1], order).pow(n as u32 + 1);
    let mut inv = TruncatedSeries::zero(order);
    for k in 0..=order {
        inv.add_term([0, 0, k], (n as i128 - 1).pow(k));
    }
    num.mul(&inv)
}

/// The Hilbert series with `s, t -> u`.
pub fn hilbert_collapsed(f: &RepFamily, order: u32) -> TruncatedSeries {
    f.hilbert_closed(order).collapse_st(U)
}

/// `P(-u) H(u)`, which is 1 for a Koszul algebra.
pub fn froberg_product(p: &TruncatedSeries, h: &TruncatedSeries, order: u32) -> TruncatedSeries {
    p.truncate(order).negate_u().mul(&h.truncate(order))
}

/// The two conjectured Poincare series of the residue field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoosCase {
    Sl2,
    Sl3,
}

impl FromStr for RoosCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2" => Ok(RoosCase::Sl2),
            "sl3" => Ok(RoosCase::Sl3),
            _ => Err(Error::InvalidInput(format!("no conjectured series for '{s}'"))),
        }
    }
}

/// Series in `s` (internal degree) and `u` (homological degree):
///
/// ```text
/// sl2: (1+us)^2 / ((1-us)^3 (1+us) - 2 u^3 s^4)
/// sl3: (1+us)^3 / ((1-us)(1 - 2us - 4u^2s^2 - 2u^3s^3 + u^4s^4) - 2 u^4 s^5)
/// ```
pub fn roos_series(which: RoosCase, order: u32) -> Result<TruncatedSeries> {
    let us = |c: i128, k: u32| TruncatedSeries::monomial(c, [k, 0, k], order);
    let one = TruncatedSeries::one(order);
    let one_plus = one.add(&us(1, 1));
    let one_minus = one.sub(&us(1, 1));
    let (num, den) = match which {
        RoosCase::Sl2 => {
            let den = one_minus.pow(3).mul(&one_plus).sub(&TruncatedSeries::monomial(2, [4, 0, 3], order));
            (one_plus.pow(2), den)
        }
        RoosCase::Sl3 => {
            let quartic = one.sub(&us(2, 1)).sub(&us(4, 2)).sub(&us(2, 3)).add(&us(1, 4));
            let den = one_minus.mul(&quartic).sub(&TruncatedSeries::monomial(2, [5, 0, 4], order));
            (one_plus.pow(3), den)
        }
    };
    Ok(num.mul(&den.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::families::registry;

    fn fam(name: &str, n: usize) -> RepFamily {
        RepFamily::parse(name, n).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_closed(&fam("gl", 1), 6).coeff([1, 1, 0]), 0);
        assert_eq!(hilbert_closed(&fam("sl", 2), 6).coeff([1, 1, 0]), 1);
        assert_eq!(hilbert_closed(&fam("sp", 2), 6).coeff([1, 1, 0]), 6);
    }

    #[test]
    fn euler_holds_for_all_closed_tables() {
        for f in registry() {
            for n in f.min_n()..=4 {
                let r = euler_check(&RepFamily::new(*f, n).unwrap(), 10);
                assert!(r.holds, "{} n={n}: {:?}", f.name(), r.first_mismatch);
            }
        }
    }

    #[test]
    fn euler_reports_mismatch() {
        let f = fam("sl", 2);
        let mut t = f.betti_closed();
        t.set(2, BiDegree::new(2, 2), 7);
        let r = euler_check_table(&f, &t, 8);
        assert!(!r.holds);
        assert_eq!(r.first_mismatch.unwrap().0, BiDegree::new(2, 2));
    }

    #[test]
    fn total_series_agree() {
        for n in 2..=7 {
            assert_eq!(total_poincare(&fam("sl", n)).unwrap(), sl_total_series(n).unwrap(), "n={n}");
        }
        // GL: 1 + u^-1 ((1+u)^n - 1)^2
        let gl3 = total_poincare(&fam("gl", 3)).unwrap();
        let expected: Vec<i128> =
            (0..=5).map(|i| if i == 0 { 1 } else { binomial(6, i + 1) - 2 * binomial(3, i + 1) }).collect();
        assert_eq!(gl3, expected);
    }

    #[test]
    fn so_poincare_examples() {
        assert_eq!(poincare_k_over_so(1, 3).univariate(U), vec![1, 2, 1, 0]);
        assert_eq!(poincare_k_over_so(2, 2).coeff([0, 0, 1]), 4);
        assert_eq!(poincare_k_over_so(3, 1).coeff([0, 0, 1]), 6);
    }

    #[test]
    fn froberg_for_so_and_regular_rings() {
        for n in 2..=3 {
            let p = poincare_k_over_so(n, 8);
            let h = hilbert_collapsed(&fam("so", n), 8);
            assert_eq!(froberg_product(&p, &h, 7), TruncatedSeries::one(7), "n={n}");
        }
        for m in 1..=4u32 {
            let p = TruncatedSeries::one_plus(1, [0, 0, 1], 8).pow(2 * m);
            let h = TruncatedSeries::geometric_power([0, 0, 1], 2 * m, 8);
            assert_eq!(froberg_product(&p, &h, 8), TruncatedSeries::one(8));
        }
    }

    #[test]
    fn roos_low_terms() {
        let r = roos_series(RoosCase::Sl2, 12).unwrap();
        assert_eq!(r.coeff([0, 0, 0]), 1);
        assert_eq!(r.coeff([1, 0, 1]), 4);
        assert_eq!(r.coeff([4, 0, 3]), 2);
        let r3 = roos_series(RoosCase::Sl3, 8).unwrap();
        assert_eq!(r3.coeff([1, 0, 1]), 6);
    }
}
