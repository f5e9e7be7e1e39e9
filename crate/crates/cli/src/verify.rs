//! Cross-check suites run by `moment verify`.

use clap::ValueEnum;
use moment_core::catalan::{catalan, catalan_strand_identity, segner_check, triangle_moment_check};
use moment_core::closed::euler_check;
use moment_core::koszul::{verdict, Verdict};
use moment_core::oracle::{exterior_mult_rank, hilbert_oracle, symmetric_identity_check, tor_over_s, SupportBound};
use moment_core::{registry, FamilyKind, FieldSpec, RepFamily};

use crate::reference::REFERENCE_TABLES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Betti,
    Hilbert,
    Exterior,
    #[value(name = "appendixB", alias = "appendixb")]
    Reference,
}

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{tag} {}", self.name)
        } else {
            format!("{tag} {}: {}", self.name, self.detail)
        }
    }
}

fn oracle_range() -> Vec<RepFamily> {
    registry()
        .iter()
        .flat_map(|f| (f.min_n()..=f.oracle_limit()).map(|n| RepFamily::new(*f, n).expect("n in range")))
        .collect()
}

fn from_result<T>(name: String, r: moment_core::Result<T>, ok: impl FnOnce(T) -> Check) -> Check {
    match r {
        Ok(v) => ok(v),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

pub fn betti(field: FieldSpec) -> Vec<Check> {
    oracle_range()
        .into_iter()
        .map(|f| {
            let name = format!("betti {f} over {field}");
            let r = tor_over_s(&f, f.ambient().num_vars(), SupportBound::default(), field);
            from_result(name.clone(), r, |oracle| {
                let diff = f.betti_closed().diff(&oracle);
                match diff.first() {
                    None => Check::new(name, true, format!("{} entries agree", oracle.entries().count())),
                    Some((i, v, a, b)) => Check::new(
                        name,
                        false,
                        format!("{} disagreements, first at i={i} v={v}: closed {a}, oracle {b}", diff.len()),
                    ),
                }
            })
        })
        .collect()
}

pub fn hilbert(field: FieldSpec) -> Vec<Check> {
    oracle_range()
        .into_iter()
        .map(|f| {
            let name = format!("hilbert {f} to order 10");
            from_result(name.clone(), hilbert_oracle(&f, 10, field), |h| {
                match h.first_difference(&f.hilbert_closed(10)) {
                    None => Check::new(name, true, ""),
                    Some((e, a, b)) => {
                        Check::new(name, false, format!("s^{} t^{}: oracle {a}, closed {b}", e[0], e[1]))
                    }
                }
            })
        })
        .collect()
}

/// Smallest prime `p >= 3` with `2p > n + 1`.
fn small_prime_above(n: usize) -> u64 {
    (3u64..).find(|&p| 2 * p > n as u64 + 1 && (2..p).all(|d| p % d != 0)).expect("primes are unbounded")
}

pub fn exterior() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(small_prime_above(n))] {
            let name = format!("exterior n={n} over {field}");
            let bad: Vec<usize> =
                (0..=2 * n - 2).filter(|&i| !matches!(exterior_mult_rank(n, i, field), Ok((_, true)))).collect();
            out.push(if bad.is_empty() {
                Check::new(name, true, "maximal rank at every i")
            } else {
                Check::new(name, false, format!("rank not maximal at i = {bad:?}"))
            });
        }
    }
    for field in [FieldSpec::Rationals, FieldSpec::Prime(7)] {
        let mut failures = Vec::new();
        let mut run = 0;
        for u in 0..=4 {
            for v in 0..=4 {
                for d in 0..=4 {
                    match symmetric_identity_check(u, v, d, field) {
                        Ok(true) => run += 1,
                        Ok(false) => failures.push((u, v, d)),
                        Err(_) => {}
                    }
                }
            }
        }
        let name = format!("symmetric identity over {field}");
        out.push(if failures.is_empty() {
            Check::new(name, true, format!("{run} cases"))
        } else {
            Check::new(name, false, format!("fails at (u, v, d) = {:?}", failures[0]))
        });
    }
    out
}

pub fn reference_tables() -> Vec<Check> {
    REFERENCE_TABLES
        .iter()
        .map(|r| {
            let f = RepFamily::parse(r.family, r.n).expect("reference family");
            let name = format!("reference table {f}");
            let got = f.betti_closed().strand_totals();
            if got == r.as_strand_map() {
                Check::new(name, true, "")
            } else {
                Check::new(name, false, "totals differ")
            }
        })
        .collect()
}

fn closed_identities() -> Vec<Check> {
    let mut out = Vec::new();
    for f in registry() {
        for n in f.min_n()..=4 {
            let rep = RepFamily::new(*f, n).expect("n in range");
            let r = euler_check(&rep, 10);
            let detail = r.first_mismatch.map(|(v, a, b)| format!("at {v}: {a} vs {b}")).unwrap_or_default();
            out.push(Check::new(format!("euler {rep}"), r.holds, detail));
        }
    }
    let catalan_ok = (1..=10).all(|n| (n..=2 * n).all(|i| catalan_strand_identity(n, i)))
        && (0..=8).all(segner_check)
        && (1..=8).all(|big| (1..=big).all(|r| triangle_moment_check(big, r)))
        && (2..=6u32).all(|n| {
            RepFamily::parse("sl", n as usize).expect("sl").betti_closed().total(n as usize) as i128 == catalan(n + 1)
        });
    out.push(Check::new("catalan identities", catalan_ok, ""));
    out
}

fn verdicts(field: FieldSpec) -> Vec<Check> {
    let mut out = Vec::new();
    for f in registry() {
        for n in f.min_n()..=4 {
            let rep = RepFamily::new(*f, n).expect("n in range");
            let expected = match f.kind() {
                FamilyKind::Gl | FamilyKind::So => Verdict::Koszul,
                FamilyKind::Sl | FamilyKind::Sp => Verdict::NotKoszul,
            };
            let name = format!("koszul verdict {rep}");
            out.push(from_result(name.clone(), verdict(&rep, field), |v| {
                Check::new(name, v.verdict == expected, v.summary())
            }));
        }
    }
    out
}

pub fn run(suite: Suite, field: FieldSpec) -> Vec<Check> {
    match suite {
        Suite::Betti => betti(field),
        Suite::Hilbert => hilbert(field),
        Suite::Exterior => exterior(),
        Suite::Reference => reference_tables(),
        Suite::All => {
            let mut all = reference_tables();
            all.extend(betti(field));
            all.extend(hilbert(field));
            all.extend(exterior());
            all.extend(closed_identities());
            all.extend(verdicts(field));
            all
        }
    }
}
