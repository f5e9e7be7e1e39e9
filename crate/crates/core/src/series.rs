//! Integer power series in s, t, u truncated by total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub const S: usize = 0;
pub const T: usize = 1;
pub const U: usize = 2;

const NAMES: [&str; 3] = ["s", "t", "u"];

pub type Exps = [u32; 3];

fn total(e: &Exps) -> u32 {
    e[0] + e[1] + e[2]
}

/// A power series in `s, t, u` with integer coefficients, exact in every
/// term of total degree at most `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: u32,
    coeffs: BTreeMap<Exps, i128>,
}

impl TruncatedSeries {
    pub fn zero(order: u32) -> Self {
        TruncatedSeries { order, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: i128, order: u32) -> Self {
        Self::monomial(c, [0, 0, 0], order)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(1, order)
    }

    pub fn monomial(c: i128, e: Exps, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(e, c);
        s
    }

    /// The variable with index `S`, `T` or `U`.
    pub fn var(idx: usize, order: u32) -> Self {
        let mut e = [0; 3];
        e[idx] = 1;
        Self::monomial(1, e, order)
    }

    /// `1 + c * m`, a convenient building block.
    pub fn one_plus(c: i128, e: Exps, order: u32) -> Self {
        Self::one(order).add(&Self::monomial(c, e, order))
    }

    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (Exps, i128)>) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn add_term(&mut self, e: Exps, c: i128) {
        if c == 0 || total(&e) > self.order {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: Exps) -> i128 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exps, i128)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops terms above a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self::from_terms(order, self.terms())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.order.min(other.order));
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i128) -> Self {
        Self::from_terms(self.order, self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (e1, c1) in self.terms() {
            let d1 = total(&e1);
            if d1 > order {
                continue;
            }
            for (e2, c2) in other.terms() {
                if d1 + total(&e2) > order {
                    continue;
                }
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be 1 or -1.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff([0, 0, 0]);
        if c0 != 1 && c0 != -1 {
            return Err(Error::InvalidInput(format!("series with constant term {c0} has no integral inverse")));
        }
        // 1/(c0 + g) = c0 * sum_k (-c0 g)^k since c0^2 = 1
        let mut g = self.clone();
        g.add_term([0, 0, 0], -c0);
        let step = g.scale(-c0);
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        for _ in 0..self.order {
            power = power.mul(&step);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(c0))
    }

    /// `1/(1-m)^k` for a monomial `m` of positive degree, by binomial expansion.
    pub fn geometric_power(e: Exps, k: u32, order: u32) -> Self {
        let d = total(&e);
        assert!(d > 0, "geometric series needs a monomial of positive degree");
        let mut out = Self::zero(order);
        let mut j = 0u32;
        while j * d <= order {
            let c = crate::combinatorics::binomial(i64::from(k + j) - 1, i64::from(j));
            let c = if k == 0 { i128::from(j == 0) } else { c };
            out.add_term([e[0] * j, e[1] * j, e[2] * j], c);
            j += 1;
        }
        out
    }

    /// Rewrites every term through `f`, which maps exponents and coefficients.
    /// The truncation order is preserved; callers keep it meaningful.
    pub fn map_terms(&self, order: u32, f: impl Fn(Exps, i128) -> (Exps, i128)) -> Self {
        Self::from_terms(order, self.terms().map(|(e, c)| f(e, c)))
    }

    /// `u -> -u`
    pub fn negate_u(&self) -> Self {
        self.map_terms(self.order, |e, c| (e, if e[U] % 2 == 1 { -c } else { c }))
    }

    /// `s, t -> x`, collapsing the bigrading to a single grading in `x`.
    pub fn collapse_st(&self, into: usize) -> Self {
        self.map_terms(self.order, |e, c| {
            let mut out = [0, 0, e[U]];
            out[into] += e[S] + e[T];
            (out, c)
        })
    }

    /// `s = t = 1`, keeping the `u`-grading. Only meaningful when the
    /// series is a polynomial in `s, t` for every power of `u` within the order.
    pub fn specialize_st_to_one(&self) -> Self {
        self.map_terms(self.order, |e, c| ([0, 0, e[U]], c))
    }

    /// Divides by `u^k`. Fails if some term has `u`-degree below `k`.
    pub fn shift_u_down(&self, k: u32) -> Result<Self> {
        if let Some((e, c)) = self.terms().find(|(e, _)| e[U] < k) {
            return Err(Error::Internal(format!("division by u^{k} is not exact: term {c}*{}", render_monomial(&e))));
        }
        let order = self.order.saturating_sub(k);
        Ok(self.map_terms(order, |e, c| ([e[S], e[T], e[U] - k], c)))
    }

    /// Multiplies by `u^k`; the order grows with it.
    pub fn shift_u_up(&self, k: u32) -> Self {
        self.map_terms(self.order + k, |e, c| ([e[S], e[T], e[U] + k], c))
    }

    /// Keeps exactly the terms with positive coefficient.
    pub fn positive_part(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().filter(|(_, c)| **c > 0).map(|(e, c)| (*e, *c)).collect(),
        }
    }

    /// Variables that occur with positive exponent somewhere.
    pub fn variables(&self) -> Vec<char> {
        (0..3).filter(|&i| self.coeffs.keys().any(|e| e[i] > 0)).map(|i| NAMES[i].chars().next().unwrap()).collect()
    }

    /// Coefficients of `x^0 .. x^order` for a series in the single variable `x`.
    pub fn univariate(&self, idx: usize) -> Vec<i128> {
        (0..=self.order)
            .map(|d| {
                let mut e = [0; 3];
                e[idx] = d;
                self.coeff(e)
            })
            .collect()
    }

    /// First exponent, in increasing order, where the two series differ
    /// within their common truncation.
    pub fn first_difference(&self, other: &Self) -> Option<(Exps, i128, i128)> {
        let order = self.order.min(other.order);
        let mut keys: Vec<Exps> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort_by_key(|e| (total(e), std::cmp::Reverse(*e)));
        keys.dedup();
        keys.into_iter()
            .filter(|e| total(e) <= order)
            .find(|e| self.coeff(*e) != other.coeff(*e))
            .map(|e| (e, self.coeff(e), other.coeff(e)))
    }
}

pub fn render_monomial(e: &Exps) -> String {
    let parts: Vec<String> = (0..3)
        .filter(|&i| e[i] > 0)
        .map(|i| if e[i] == 1 { NAMES[i].to_string() } else { format!("{}^{}", NAMES[i], e[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Terms by increasing total degree; within a degree, higher powers of `s` first.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Exps, i128)> = self.terms().collect();
        terms.sort_by_key(|(e, _)| (total(e), std::cmp::Reverse(*e)));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = render_monomial(e);
            match (c.unsigned_abs(), mono.as_str()) {
                (m, "1") => write!(f, "{m}")?,
                (1, _) => write!(f, "{mono}")?,
                (m, _) => write!(f, "{m}*{mono}")?,
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}
