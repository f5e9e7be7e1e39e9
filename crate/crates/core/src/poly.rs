//! Bigraded monomials and sparse polynomials.
//!
//! The ambient ring has `num_p` variables of bidegree (1,0) followed by
//! `num_q` variables of bidegree (0,1). Exponent vectors list the p-variables
//! first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::Serialize;

/// A pair (p-degree, q-degree).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BiDegree {
    pub a: usize,
    pub b: usize,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { a: 0, b: 0 };
    pub const P: BiDegree = BiDegree { a: 1, b: 0 };
    pub const Q: BiDegree = BiDegree { a: 0, b: 1 };

    pub const fn new(a: usize, b: usize) -> Self {
        BiDegree { a, b }
    }

    pub fn total(&self) -> usize {
        self.a + self.b
    }

    /// Componentwise difference, if it stays nonnegative.
    pub fn checked_sub(&self, other: BiDegree) -> Option<BiDegree> {
        Some(BiDegree { a: self.a.checked_sub(other.a)?, b: self.b.checked_sub(other.b)? })
    }

    pub fn swapped(&self) -> BiDegree {
        BiDegree { a: self.b, b: self.a }
    }

    /// All bidegrees of the given total degree, p-degree descending.
    pub fn of_total(total: usize) -> impl Iterator<Item = BiDegree> {
        (0..=total).rev().map(move |a| BiDegree::new(a, total - a))
    }

    /// All bidegrees with total degree at most `max_total`, by total then p-degree descending.
    pub fn up_to_total(max_total: usize) -> impl Iterator<Item = BiDegree> {
        (0..=max_total).flat_map(BiDegree::of_total)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, rhs: BiDegree) -> BiDegree {
        self.checked_sub(rhs).expect("bidegree subtraction underflow")
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Variable counts of a bigraded polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub num_p: usize,
    pub num_q: usize,
}

impl Ambient {
    pub fn new(num_p: usize, num_q: usize) -> Self {
        Ambient { num_p, num_q }
    }

    pub fn num_vars(&self) -> usize {
        self.num_p + self.num_q
    }

    pub fn var_degree(&self, var: usize) -> BiDegree {
        if var < self.num_p {
            BiDegree::P
        } else {
            BiDegree::Q
        }
    }

    /// dim S_v = C(N+a-1, a) * C(M+b-1, b)
    pub fn piece_dimension(&self, v: BiDegree) -> u64 {
        crate::combinatorics::multichoose(self.num_p as u64, v.a as u64)
            * crate::combinatorics::multichoose(self.num_q as u64, v.b as u64)
    }
}

/// An exponent vector. `Ord` is the canonical enumeration order:
/// lexicographically *descending* exponent vectors, so `p1^2 < p1*p2 < p2^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars].into_boxed_slice() }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn bidegree(&self, num_p: usize) -> BiDegree {
        let a = self.exps[..num_p].iter().map(|&e| e as usize).sum();
        let b = self.exps[num_p..].iter().map(|&e| e as usize).sum();
        BiDegree { a, b }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect() }
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m
    }

    /// `self / x_i`, if `x_i` divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        Some(m)
    }

    /// Index of the first variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exps.cmp(&self.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

/// Compositions of `total` into `parts` nonnegative parts, lex-descending.
fn compositions(parts: usize, total: usize) -> Vec<Vec<u16>> {
    fn rec(parts: usize, total: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if parts == 1 {
            prefix.push(total as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first as u16);
            rec(parts - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}

/// Every monomial of bidegree `v`, in canonical order.
pub fn monomial_basis(num_p: usize, num_q: usize, v: BiDegree) -> Vec<Monomial> {
    let ps = compositions(num_p, v.a);
    let qs = compositions(num_q, v.b);
    let mut out = Vec::with_capacity(ps.len() * qs.len());
    for p in &ps {
        for q in &qs {
            let mut e = p.clone();
            e.extend_from_slice(q);
            out.push(Monomial::from_exponents(e));
        }
    }
    out
}

/// A sparse polynomial with integer coefficients in the bigraded ring.
///
/// All moment-map generators have integral coefficients; they are mapped into
/// the working field only when matrices are assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero(ambient: Ambient) -> Self {
        Polynomial { ambient, terms: BTreeMap::new() }
    }

    pub fn from_terms(ambient: Ambient, terms: impl IntoIterator<Item = (i64, Monomial)>) -> Self {
        let mut p = Self::zero(ambient);
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, m: Monomial) {
        assert_eq!(m.num_vars(), self.ambient.num_vars(), "monomial outside ambient ring");
        let entry = self.terms.entry(m).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The common bidegree of all terms, or `None` if not bihomogeneous (or zero).
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(|m| m.bidegree(self.ambient.num_p));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { ambient: self.ambient, terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect() }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mono = m.render(names);
            if mag != 1 {
                out.push_str(&mag.to_string());
                if mono != "1" {
                    out.push('*');
                    out.push_str(&mono);
                }
            } else {
                out.push_str(&mono);
            }
        }
        out
    }
}
