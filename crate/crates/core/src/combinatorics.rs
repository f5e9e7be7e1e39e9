//! Binomial coefficients and subset enumeration.

/// C(n, k) with the convention C(n, k) = 0 for k < 0, k > n or n < 0.
pub fn binomial(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc
}

/// C(n, k) saturating at `u128::MAX`; used where only comparisons matter.
pub fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) / (j + 1) is exact; divide the gcd out first to delay overflow
        let num = (n - j) as u128;
        let den = (j + 1) as u128;
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        let num = num / d;
        acc = match a.checked_mul(num) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of monomials of degree k in n variables.
pub fn multichoose(n: u64, k: u64) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    binomial((n + k - 1) as i64, k as i64) as u64
}

/// All k-element subsets of {0..n} as bitmasks, in lexicographic order of
/// their sorted element lists.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "at most 64 elements");
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<u64>) {
        if chosen.len() == k {
            out.push(chosen.iter().fold(0u64, |m, &i| m | (1 << i)));
            return;
        }
        for i in start..n {
            if n - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            rec(i + 1, n, k, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, k, &mut chosen, &mut out);
    out
}

/// Elements of a bitmask in increasing order.
pub fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-3, 1), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn saturating_matches_exact() {
        for n in 0..60u64 {
            for k in 0..=n {
                assert_eq!(binomial_saturating(n, k), binomial(n as i64, k as i64) as u128);
            }
        }
        assert_eq!(binomial_saturating(1000, 500), u128::MAX);
    }

    #[test]
    fn subsets() {
        let s = subsets_of_size(4, 2);
        assert_eq!(s, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(5, 0), vec![0]);
        assert!(subsets_of_size(2, 3).is_empty());
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(subsets_of_size(n, k).len() as i128, binomial(n as i64, k as i64));
            }
        }
        assert_eq!(mask_elements(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
