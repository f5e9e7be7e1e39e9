use moment_core::catalan::{catalan, catalan_triangle};
use moment_core::closed::{euler_check_table, total_poincare};
use moment_core::combinatorics::binomial;
use moment_core::families::sp_relabeled_generators;
use moment_core::field::Field;
use moment_core::ideal::ideal_piece;
use moment_core::linalg::Matrix;
use moment_core::oracle::exterior::{exterior_ideal_series, gl_positive_part};
use moment_core::oracle::{
    depth_zero_witness, exterior_mult_rank, hilbert_oracle, resolve_k_over_quotient, socle, symmetric_identity_check,
    tor_over_s, ProductIdeal, SupportBound,
};
use moment_core::poly::monomial_basis;
use moment_core::{registry, BiDegree, FieldSpec, PrimeField, RationalField, RepFamily};
use proptest::prelude::*;

fn fam(name: &str, n: usize) -> RepFamily {
    RepFamily::parse(name, n).unwrap()
}

/// Every family with `n` in the oracle range.
fn small_families() -> Vec<RepFamily> {
    registry().iter().flat_map(|f| (f.min_n()..=f.oracle_limit()).map(|n| RepFamily::new(*f, n).unwrap())).collect()
}

#[test]
fn hilbert_oracle_matches_closed_form() {
    for f in small_families() {
        let oracle = hilbert_oracle(&f, 10, FieldSpec::Rationals).unwrap();
        assert_eq!(oracle, f.hilbert_closed(10), "{f}");
    }
}

#[test]
fn generators_are_bilinear_and_counted() {
    for f in registry() {
        for n in f.min_n()..=10 {
            let rep = RepFamily::new(*f, n).unwrap();
            let gens = rep.generators();
            assert_eq!(gens.len(), f.generator_count(n), "{rep}");
            assert!(gens.iter().all(|g| g.bidegree() == Some(BiDegree::new(1, 1))), "{rep}");
        }
    }
}

#[test]
fn sp_relabeling_spans_the_same_ideal() {
    for n in 1..=3 {
        let f = fam("sp", n);
        let relabeled = sp_relabeled_generators(n, FieldSpec::Rationals).unwrap();
        let k = PrimeField::new(32003).unwrap();
        for v in BiDegree::up_to_total(if n == 3 { 4 } else { 6 }) {
            let a = ideal_piece(&k, f.ambient(), &f.generators(), v).unwrap();
            let b = ideal_piece(&k, f.ambient(), &relabeled, v).unwrap();
            assert!(a == b, "sp{n} at {v}");
        }
    }
    assert!(sp_relabeled_generators(1, FieldSpec::Prime(3)).is_ok());
}

#[test]
fn sp3_relabeling_in_degree_six_over_q() {
    let f = fam("sp", 3);
    let relabeled = sp_relabeled_generators(3, FieldSpec::Rationals).unwrap();
    for v in [BiDegree::new(3, 3), BiDegree::new(2, 4), BiDegree::new(5, 1), BiDegree::new(6, 0)] {
        let a = ideal_piece(&RationalField, f.ambient(), &f.generators(), v).unwrap();
        let b = ideal_piece(&RationalField, f.ambient(), &relabeled, v).unwrap();
        assert!(a == b, "sp3 at {v}");
    }
}

#[test]
fn sl_ideal_inside_gl_ideal() {
    for n in 2..=3 {
        let (sl, gl) = (fam("sl", n), fam("gl", n));
        for v in BiDegree::up_to_total(5) {
            let small = ideal_piece(&RationalField, sl.ambient(), &sl.generators(), v).unwrap();
            let big = ideal_piece(&RationalField, gl.ambient(), &gl.generators(), v).unwrap();
            let mut joint = moment_core::linalg::Echelon::new(RationalField, big.basis.len());
            for r in big.span.rows() {
                joint.insert(r.clone());
            }
            for r in small.span.rows() {
                assert!(joint.contains(r), "sl{n} at {v}");
            }
        }
    }
}

#[test]
fn euler_check_on_oracle_tables() {
    for f in small_families() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(32003)] {
            let t = tor_over_s(&f, f.ambient().num_vars(), SupportBound::default(), field).unwrap();
            let r = euler_check_table(&f, &t, 10);
            assert!(r.holds, "{f} over {field}: {:?}", r.first_mismatch);
        }
    }
}

#[test]
fn closed_tables_have_the_expected_shape() {
    for f in registry() {
        for n in f.min_n()..=6 {
            let rep = RepFamily::new(*f, n).unwrap();
            assert!(rep.betti_closed().is_symmetric(), "{rep}");
        }
    }
    for n in 1..=6 {
        let gl = fam("gl", n).betti_closed();
        for i in 1..2 * n {
            assert_eq!(gl.top(i), Some(i + 1), "gl{n} i={i}");
        }
        let sp = fam("sp", n).betti_closed();
        for i in 2..=sp.max_i().unwrap() {
            assert_eq!(sp.top(i), Some(i + 2), "sp{n} i={i}");
        }
    }
    for n in 2..=8 {
        let sl = fam("sl", n).betti_closed();
        for i in n..=2 * n {
            assert_eq!(sl.total(i) as i128, catalan_triangle(n as u32 + 1, (i + 1 - n) as i64), "sl{n} i={i}");
        }
        assert_eq!(sl.total(n) as i128, catalan(n as u32 + 1));
    }
}

#[test]
fn totals_match_printed_series() {
    // gl: 1 + u^-1 ((1+u)^n - 1)^2
    for n in 1..=6i64 {
        let got = total_poincare(&fam("gl", n as usize)).unwrap();
        for (i, b) in got.iter().enumerate().skip(1) {
            let i = i as i64;
            let want: i128 = (1..=i).map(|a| binomial(n, a) * binomial(n, i + 1 - a)).sum();
            assert_eq!(*b, want, "gl{n} i={i}");
        }
    }
}

#[test]
fn residue_field_tops() {
    for n in 1..=2 {
        let t = resolve_k_over_quotient(&fam("gl", n), 5, 7, FieldSpec::Rationals).unwrap();
        for i in 0..=5 {
            assert!(t.top(i).is_none_or(|top| top == i), "gl{n} i={i}");
        }
    }
    let sl2 = resolve_k_over_quotient(&fam("sl", 2), 3, 5, FieldSpec::Rationals).unwrap();
    assert_eq!((0..=3).map(|i| sl2.top(i)).collect::<Vec<_>>(), vec![Some(0), Some(1), Some(2), Some(4)]);
}

#[test]
fn socles() {
    for n in 2..=3 {
        assert!(depth_zero_witness(&fam("sl", n), FieldSpec::Rationals).unwrap().is_some(), "sl{n}");
    }
    for n in 1..=2 {
        let w = depth_zero_witness(&fam("sp", n), FieldSpec::Rationals).unwrap().unwrap();
        assert_eq!(w.bidegree, BiDegree::new(1, 1));
        let dims = socle(&fam("sp", n), 3, FieldSpec::Rationals).unwrap();
        assert_eq!(dims[&BiDegree::new(1, 1)], 2 * n * n - n, "sp{n}");
    }
    for n in 1..=3 {
        assert_eq!(depth_zero_witness(&fam("gl", n), FieldSpec::Rationals).unwrap(), None, "gl{n}");
        assert_eq!(depth_zero_witness(&fam("so", n), FieldSpec::Rationals).unwrap(), None, "so{n}");
    }
}

/// Smallest prime `p >= 3` with `p > (n+1)/2`.
fn small_prime_above(n: usize) -> u64 {
    (3u64..).find(|&p| 2 * p > n as u64 + 1 && (2..p).all(|d| p % d != 0)).unwrap()
}

#[test]
fn exterior_rank_is_maximal() {
    for n in 1..=4 {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(small_prime_above(n))] {
            for i in 0..=2 * n - 2 {
                let (_, maximal) = exterior_mult_rank(n, i, field).unwrap();
                assert!(maximal, "n={n} i={i} over {field}");
            }
        }
    }
}

#[test]
fn full_product_ideal_is_the_gl_ext_algebra() {
    for n in 1..=4 {
        let full = exterior_ideal_series(n, ProductIdeal::Full, FieldSpec::Rationals, 20).unwrap();
        assert_eq!(full, gl_positive_part(n, 20), "n={n}");
    }
    for n in 2..=4 {
        let diag = exterior_ideal_series(n, ProductIdeal::Diagonal, FieldSpec::Rationals, 20).unwrap();
        assert_ne!(diag, gl_positive_part(n, 20), "n={n}");
    }
}

#[test]
fn symmetric_identity_sweep() {
    for u in 0..=4 {
        for v in 0..=4 {
            for d in 0..=4 {
                assert!(symmetric_identity_check(u, v, d, FieldSpec::Rationals).unwrap(), "({u},{v},{d})");
                if d + 1 < 7 {
                    assert!(symmetric_identity_check(u, v, d, FieldSpec::Prime(7)).unwrap(), "({u},{v},{d}) mod 7");
                }
            }
        }
    }
}

fn family_and_degree() -> impl Strategy<Value = (RepFamily, BiDegree)> {
    (0usize..4, 1usize..=3, 0usize..=3, 0usize..=3).prop_filter_map("n out of range", |(k, n, a, b)| {
        let f = registry()[k];
        let n = n.max(f.min_n());
        (n <= f.oracle_limit()).then(|| (RepFamily::new(f, n).unwrap(), BiDegree::new(a, b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ideal_piece_ignores_generator_order((f, v) in family_and_degree(), seed in any::<u64>()) {
        let gens = f.generators();
        let mut shuffled = gens.clone();
        // Fisher-Yates driven by a simple LCG
        let mut x = seed;
        for i in (1..shuffled.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (x >> 33) as usize % (i + 1));
        }
        let a = ideal_piece(&RationalField, f.ambient(), &gens, v).unwrap();
        let b = ideal_piece(&RationalField, f.ambient(), &shuffled, v).unwrap();
        prop_assert!(a == b);
    }

    #[test]
    fn monomial_basis_has_binomial_size(np in 0usize..5, nq in 0usize..5, a in 0usize..5, b in 0usize..5) {
        let len = monomial_basis(np, nq, BiDegree::new(a, b)).len() as i128;
        let count = |n: usize, d: usize| if n == 0 { i128::from(d == 0) } else { binomial((n + d - 1) as i64, d as i64) };
        prop_assert_eq!(len, count(np, a) * count(nq, b));
    }

    #[test]
    fn rank_agrees_across_fields(entries in proptest::collection::vec(-3i64..=3, 25)) {
        // 5x5 minors are bounded by 5! 3^5 < 32003, so the ranks coincide
        let q = RationalField;
        let p = PrimeField::new(32003).unwrap();
        let mut mq = Matrix::zero(&q, 5, 5);
        let mut mp = Matrix::zero(&p, 5, 5);
        for (k, &e) in entries.iter().enumerate() {
            mq.set(k / 5, k % 5, q.from_i64(e));
            mp.set(k / 5, k % 5, p.from_i64(e));
        }
        prop_assert_eq!(q.rank(&mq), p.rank(&mp));
    }
}
