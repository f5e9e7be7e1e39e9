//! Catalan numbers and the Catalan triangle.

use crate::combinatorics::binomial;

/// `C_m = C(2m, m) / (m + 1)`
pub fn catalan(m: u32) -> i128 {
    binomial(2 * i64::from(m), i64::from(m)) / (i128::from(m) + 1)
}

/// `B(N, r) = r/N * C(2N, N - r)`, evaluated for any integer `r`.
pub fn catalan_triangle(big_n: u32, r: i64) -> i128 {
    assert!(big_n >= 1, "N must be positive");
    let n = i64::from(big_n);
    let num = i128::from(r) * binomial(2 * n, n - r);
    debug_assert_eq!(num % i128::from(n), 0);
    num / i128::from(n)
}

/// `C(2n, i) - C(2n, i+2) == B(n+1, i+1-n)` for `n <= i <= 2n`.
pub fn catalan_strand_identity(n: u32, i: u32) -> bool {
    let (n6, i6) = (i64::from(n), i64::from(i));
    binomial(2 * n6, i6) - binomial(2 * n6, i6 + 2) == catalan_triangle(n + 1, i6 + 1 - n6)
}

/// `C_{m+1} = sum_{i+j=m} C_i C_j`
pub fn segner_check(m: u32) -> bool {
    let sum: i128 = (0..=m).map(|i| catalan(i) * catalan(m - i)).sum();
    sum == catalan(m + 1)
}

/// Sum of `C_{i_1} ... C_{i_r}` over compositions `i_1 + ... + i_r = N`
/// with every part at least 1, by explicit enumeration.
pub fn composition_sum(big_n: u32, r: u32) -> i128 {
    fn rec(remaining: u32, parts: u32, acc: i128) -> i128 {
        if parts == 0 {
            return if remaining == 0 { acc } else { 0 };
        }
        (1..=remaining.saturating_sub(parts - 1))
            .map(|first| rec(remaining - first, parts - 1, acc * catalan(first)))
            .sum()
    }
    rec(big_n, r, 1)
}

/// `B(N, r)` agrees with the composition sum, for `N >= r >= 1`.
pub fn triangle_moment_check(big_n: u32, r: u32) -> bool {
    composition_sum(big_n, r) == catalan_triangle(big_n, i64::from(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let first: Vec<i128> = (0..8).map(catalan).collect();
        assert_eq!(first, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(catalan_triangle(3, 1), 5);
        assert_eq!(catalan_triangle(3, 2), 4);
        assert_eq!(catalan_triangle(3, 3), 1);
        assert_eq!(catalan_triangle(3, 4), 0);
        assert_eq!(catalan_triangle(3, 0), 0);
        // the closed formula is odd in r and does not vanish at r = -N
        assert_eq!(catalan_triangle(3, -2), -4);
        assert_eq!(catalan_triangle(3, -3), -1);
        assert_eq!(catalan_triangle(3, -4), 0);
    }

    #[test]
    fn identities() {
        assert!(catalan_strand_identity(2, 2));
        assert!(catalan_strand_identity(2, 4));
        for n in 1..=10 {
            for i in n..=2 * n {
                assert!(catalan_strand_identity(n, i), "n={n} i={i}");
            }
        }
        for m in 0..=12 {
            assert!(segner_check(m));
        }
        assert_eq!(composition_sum(3, 2), 4);
        for big_n in 1..=8 {
            for r in 1..=big_n {
                assert!(triangle_moment_check(big_n, r), "N={big_n} r={r}");
            }
            assert_eq!(composition_sum(big_n, 1), catalan(big_n));
        }
    }
}
