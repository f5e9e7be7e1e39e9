//! Koszulness certificates, obstructions, and a per-family verdict.

use std::fmt;

use serde::Serialize;

use crate::betti::BettiTable;
use crate::combinatorics::binomial_saturating;
use crate::error::{Error, Result};
use crate::families::{FamilyKind, RepFamily};
use crate::field::FieldSpec;
use crate::oracle::resolution::{resolve_k, DEFAULT_CELL_LIMIT};
use crate::poly::Polynomial;

/// True iff every generator is a single monomial of degree two.
pub fn quadratic_monomial_certificate(generators: &[Polynomial]) -> bool {
    generators.iter().all(|g| g.num_terms() == 1 && g.bidegree().is_some_and(|v| v.total() == 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AciReport {
    /// `beta_1` sits entirely in total degree 2, so the inequality applies.
    pub applicable: bool,
    pub violated: bool,
    /// `(i, beta_{i,2i}, C(beta_1, i))` for the first `i` where the inequality fails.
    pub first_violation: Option<(usize, u128, u128)>,
}

/// Tests `beta_{i,2i} <= C(beta_1, i)`, which holds whenever the quotient is Koszul.
pub fn aci_obstruction(table: &BettiTable) -> AciReport {
    let beta1 = table.total(1);
    let applicable = table.total_at_degree(1, 2) == beta1;
    let mut first_violation = None;
    if applicable {
        for i in 2..=table.max_i().unwrap_or(0) {
            let lhs = u128::from(table.total_at_degree(i, 2 * i));
            let rhs = binomial_saturating(beta1, i as u64);
            if lhs > rhs {
                first_violation = Some((i, lhs, rhs));
                break;
            }
        }
    }
    AciReport { applicable, violated: first_violation.is_some(), first_violation }
}

/// Largest `s` with `top(i) <= i + 1` for all `i <= s`, and whether `s`
/// reaches the last homological degree of the table.
pub fn serre_linear_strand_certificate(table: &BettiTable) -> (usize, bool) {
    let pd = table.max_i().unwrap_or(0);
    let mut s = 0;
    for i in 1..=pd {
        match table.top(i) {
            Some(t) if t > i + 1 => break,
            _ => s = i,
        }
    }
    (s, s == pd)
}

/// Resolves the residue field up to `max_i` and `max_total`, and returns the
/// first `i` with `top_i > i`. Hitting the resource limit is an error,
/// never a clean result.
pub fn top_degree_obstruction_to(
    f: &RepFamily,
    max_i: usize,
    max_total: usize,
    field: FieldSpec,
) -> Result<Option<(usize, usize)>> {
    let res = resolve_k(f, max_i, max_total, field, DEFAULT_CELL_LIMIT)?;
    Ok((0..=max_i).find_map(|i| res.top(i).filter(|&t| t > i).map(|t| (i, t))))
}

/// Default bounds: homological degree `n + 1`, total degree `n + 3`.
pub fn top_degree_obstruction(f: &RepFamily, field: FieldSpec) -> Result<Option<(usize, usize)>> {
    top_degree_obstruction_to(f, f.n() + 1, f.n() + 3, field)
}

/// Largest `n` for which the sl verdict resolves the residue field.
pub const SL_RESOLUTION_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Koszul,
    NotKoszul,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Koszul => "koszul",
            Verdict::NotKoszul => "not-koszul",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    Certificate,
    Obstruction,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub test: String,
    pub kind: EvidenceKind,
    pub fired: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulVerdict {
    pub family: String,
    pub n: usize,
    pub verdict: Verdict,
    /// The verdict is the known answer, not something computed here.
    pub trusted: bool,
    pub evidence: Vec<Evidence>,
}

impl KoszulVerdict {
    /// One line: the verdict and the evidence that decided it.
    pub fn summary(&self) -> String {
        let decisive = self.evidence.iter().find(|e| e.fired && e.kind != EvidenceKind::Info);
        match (decisive, self.trusted) {
            (Some(e), _) => format!("{}; {}", self.verdict, e.detail),
            (None, true) => format!("{} (trusted, not computed)", self.verdict),
            (None, false) => self.verdict.to_string(),
        }
    }
}

fn evidence(test: &str, kind: EvidenceKind, fired: bool, detail: String) -> Evidence {
    Evidence { test: test.into(), kind, fired, detail }
}

pub fn verdict(f: &RepFamily, field: FieldSpec) -> Result<KoszulVerdict> {
    f.field_guard(field)?;
    let closed = f.betti_closed();
    let mut ev = Vec::new();

    let quadratic = quadratic_monomial_certificate(&f.generators());
    ev.push(evidence(
        "quadratic-monomial",
        EvidenceKind::Certificate,
        quadratic,
        if quadratic { "generated by quadratic monomials".into() } else { "some generator is not a monomial".into() },
    ));

    let (s, full) = serre_linear_strand_certificate(&closed);
    ev.push(evidence(
        "linear-strand",
        EvidenceKind::Certificate,
        full,
        if full {
            format!("linear resolution over S up to its length {s}")
        } else {
            format!("top(i) <= i+1 only for i <= {s}")
        },
    ));

    let aci = aci_obstruction(&closed);
    let detail = match aci.first_violation {
        Some((i, lhs, rhs)) => format!("ACI violated at i={i}: {lhs} > {rhs}"),
        None if aci.applicable => "ACI inequality holds".into(),
        None => "ACI inequality not applicable".into(),
    };
    ev.push(evidence("aci", EvidenceKind::Obstruction, aci.violated, detail));

    let mut trusted = false;
    if f.kind() == FamilyKind::Sl {
        if f.n() <= SL_RESOLUTION_LIMIT {
            let (max_i, max_total) = (f.n() + 1, f.n() + 3);
            match top_degree_obstruction(f, field) {
                Ok(Some((i, t))) => ev.push(evidence(
                    "top-degree",
                    EvidenceKind::Obstruction,
                    true,
                    format!("top degree of Tor_{i}(k, k) is {t} > {i}"),
                )),
                Ok(None) => ev.push(evidence(
                    "top-degree",
                    EvidenceKind::Obstruction,
                    false,
                    format!("no violation up to i={max_i}, total degree {max_total}"),
                )),
                Err(Error::ResourceLimit(msg)) => {
                    ev.push(evidence("top-degree", EvidenceKind::Obstruction, false, format!("undetermined: {msg}")));
                    trusted = true;
                }
                Err(e) => return Err(e),
            }
        } else {
            ev.push(evidence(
                "top-degree",
                EvidenceKind::Obstruction,
                false,
                format!("not run for n > {SL_RESOLUTION_LIMIT}"),
            ));
            trusted = true;
        }
    }

    let certified = ev.iter().any(|e| e.fired && e.kind == EvidenceKind::Certificate);
    let obstructed = ev.iter().any(|e| e.fired && e.kind == EvidenceKind::Obstruction);
    let verdict = match (certified, obstructed) {
        (true, true) => {
            return Err(Error::Internal(format!("{f}: a certificate and an obstruction both fired")));
        }
        (true, false) => Verdict::Koszul,
        (false, true) => Verdict::NotKoszul,
        (false, false) if trusted => Verdict::NotKoszul,
        (false, false) => Verdict::Undetermined,
    };
    Ok(KoszulVerdict { family: f.name().into(), n: f.n(), verdict, trusted, evidence: ev })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(name: &str, n: usize) -> RepFamily {
        RepFamily::parse(name, n).unwrap()
    }

    #[test]
    fn quadratic_monomials() {
        assert!(quadratic_monomial_certificate(&fam("gl", 3).generators()));
        assert!(!quadratic_monomial_certificate(&fam("sl", 2).generators()));
        assert!(!quadratic_monomial_certificate(&fam("sp", 1).generators()));
        for n in 1..=10 {
            assert!(quadratic_monomial_certificate(&fam("gl", n).generators()));
        }
    }

    #[test]
    fn aci_on_sp() {
        for n in 1..=10u128 {
            let r = aci_obstruction(&fam("sp", n as usize).betti_closed());
            let beta1 = 2 * n * n + n;
            let lhs = 5 * n * n * (4 * n * n - 1) / 3;
            assert_eq!(r.first_violation, Some((2, lhs, beta1 * (beta1 - 1) / 2)), "n={n}");
        }
        let r = aci_obstruction(&fam("sp", 3).betti_closed());
        assert_eq!(r.first_violation, Some((2, 525, 210)));
        assert!(!aci_obstruction(&fam("gl", 3).betti_closed()).violated);
    }

    #[test]
    fn serre_strands() {
        for n in 2..=10 {
            assert_eq!(serre_linear_strand_certificate(&fam("sl", n).betti_closed()), (n - 1, false), "n={n}");
        }
        assert!(serre_linear_strand_certificate(&fam("so", 3).betti_closed()).1);
        assert_eq!(serre_linear_strand_certificate(&fam("sp", 2).betti_closed()), (1, false));
    }

    #[test]
    fn top_degree() {
        let q = FieldSpec::Rationals;
        assert_eq!(top_degree_obstruction(&fam("sl", 2), q).unwrap(), Some((3, 4)));
        assert_eq!(top_degree_obstruction_to(&fam("gl", 2), 5, 7, q).unwrap(), None);
        assert_eq!(top_degree_obstruction_to(&fam("so", 2), 5, 7, q).unwrap(), None);
    }

    #[test]
    fn verdicts() {
        let q = FieldSpec::Rationals;
        let gl = verdict(&fam("gl", 5), q).unwrap();
        assert_eq!(gl.verdict, Verdict::Koszul);
        let sp = verdict(&fam("sp", 4), q).unwrap();
        assert_eq!(sp.verdict, Verdict::NotKoszul);
        assert!(!sp.trusted);
        let sl = verdict(&fam("sl", 2), q).unwrap();
        assert_eq!(sl.verdict, Verdict::NotKoszul);
        assert!(!sl.trusted);
        assert_eq!(verdict(&fam("so", 4), q).unwrap().verdict, Verdict::Koszul);
        let sl5 = verdict(&fam("sl", 5), q).unwrap();
        assert!(sl5.trusted);
        assert_eq!(sl5.verdict, Verdict::NotKoszul);
        assert_eq!(verdict(&fam("sp", 3), q).unwrap().summary(), "not-koszul; ACI violated at i=2: 525 > 210");
    }
}
