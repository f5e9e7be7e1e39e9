//! A symmetric-function identity in square-zero variables:
//!
//! ```text
//! (s1(x) + s1(y)) * sum_k (-1)^k k! (d-k)! s_k(x) s_{d-k}(y)
//!     = (d+1)! (s_{d+1}(y) + (-1)^d s_{d+1}(x))
//! ```
//!
//! where `s_k` is the k-th elementary symmetric polynomial and every
//! variable squares to zero.

use std::collections::BTreeMap;

use crate::combinatorics::subsets_of_size;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

/// Multilinear polynomial: squarefree monomial (as a bitmask) to coefficient.
type Multilinear<E> = BTreeMap<u64, E>;

fn elementary<F: Field>(field: &F, vars: &[u32], k: usize) -> Multilinear<F::Elem> {
    subsets_of_size(vars.len(), k)
        .into_iter()
        .map(|sub| {
            let mask = crate::combinatorics::mask_elements(sub).fold(0u64, |m, j| m | (1 << vars[j]));
            (mask, field.one())
        })
        .collect()
}

fn mul<F: Field>(field: &F, a: &Multilinear<F::Elem>, b: &Multilinear<F::Elem>) -> Multilinear<F::Elem> {
    let mut out: Multilinear<F::Elem> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if ma & mb != 0 {
                continue;
            }
            let e = out.entry(ma | mb).or_insert_with(|| field.zero());
            *e = field.add(e, &field.mul(ca, cb));
        }
    }
    out.retain(|_, c| !field.is_zero(c));
    out
}

fn add_scaled<F: Field>(field: &F, acc: &mut Multilinear<F::Elem>, c: &F::Elem, p: &Multilinear<F::Elem>) {
    for (m, e) in p {
        let slot = acc.entry(*m).or_insert_with(|| field.zero());
        *slot = field.add(slot, &field.mul(c, e));
    }
    acc.retain(|_, c| !field.is_zero(c));
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Expands both sides over `u_count` variables `x` and `v_count` variables `y`.
pub fn symmetric_identity_check(u_count: usize, v_count: usize, d: usize, field: FieldSpec) -> Result<bool> {
    if u_count + v_count > 63 || d > 19 {
        return Err(Error::InvalidInput("too many variables or too large a degree".into()));
    }
    if let FieldSpec::Prime(p) = field {
        if p <= d as u64 + 1 {
            return Err(Error::FieldGuard {
                family: "symmetric identity".into(),
                field: field.to_string(),
                requirement: format!("characteristic 0 or > {}", d + 1),
            });
        }
    }
    crate::with_field!(field, |k| {
        let xs: Vec<u32> = (0..u_count as u32).collect();
        let ys: Vec<u32> = (u_count as u32..(u_count + v_count) as u32).collect();

        let mut sum = BTreeMap::new();
        for j in 0..=d {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = k.from_i64(sign * factorial(j) * factorial(d - j));
            add_scaled(&k, &mut sum, &c, &mul(&k, &elementary(&k, &xs, j), &elementary(&k, &ys, d - j)));
        }
        let mut linear = elementary(&k, &xs, 1);
        add_scaled(&k, &mut linear, &k.one(), &elementary(&k, &ys, 1));
        let lhs = mul(&k, &linear, &sum);

        let mut rhs = BTreeMap::new();
        let top = k.from_i64(factorial(d + 1));
        add_scaled(&k, &mut rhs, &top, &elementary(&k, &ys, d + 1));
        let signed = if d.is_multiple_of(2) { top } else { k.neg(&top) };
        add_scaled(&k, &mut rhs, &signed, &elementary(&k, &xs, d + 1));
        Ok(lhs == rhs)
    })
}
