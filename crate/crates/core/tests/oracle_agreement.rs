use moment_core::oracle::tor::tor_full;
use moment_core::{FieldSpec, RepFamily};

fn agree(name: &str, n: usize, field: FieldSpec) {
    let f = RepFamily::parse(name, n).unwrap();
    let oracle = tor_full(&f, field).unwrap();
    let closed = f.betti_closed();
    assert_eq!(oracle.diff(&closed), vec![], "{name}{n} over {field}");
}

#[test]
fn gl_up_to_three() {
    for n in 1..=3 {
        agree("gl", n, FieldSpec::Rationals);
    }
}

#[test]
fn sl_up_to_three() {
    for n in 2..=3 {
        agree("sl", n, FieldSpec::Rationals);
    }
}

#[test]
fn so_up_to_three() {
    for n in 1..=3 {
        agree("so", n, FieldSpec::Rationals);
    }
}

#[test]
fn sp_up_to_two() {
    for n in 1..=2 {
        agree("sp", n, FieldSpec::Rationals);
    }
}

#[test]
fn prime_field_matches() {
    let p = FieldSpec::Prime(32003);
    for (name, n) in [("gl", 3), ("sl", 3), ("so", 3), ("sp", 2)] {
        agree(name, n, p);
    }
}
