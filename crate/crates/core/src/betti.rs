//! Graded Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::field::FieldSpec;
use crate::poly::BiDegree;
use crate::series::TruncatedSeries;

/// Where the numbers in a table came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Closed,
    Oracle,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Closed => "closed",
            Source::Oracle => "oracle",
        })
    }
}

/// `(i, v) -> beta_{i,v}`, storing only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub family: String,
    pub n: usize,
    pub field: Option<FieldSpec>,
    pub source: Source,
    entries: BTreeMap<(usize, BiDegree), u64>,
}

impl BettiTable {
    pub fn new(family: impl Into<String>, n: usize, field: Option<FieldSpec>, source: Source) -> Self {
        BettiTable { family: family.into(), n, field, source, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, i: usize, v: BiDegree, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(i, v));
        } else {
            self.entries.insert((i, v), beta);
        }
    }

    pub fn get(&self, i: usize, v: BiDegree) -> u64 {
        self.entries.get(&(i, v)).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(i, v1, v2)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, BiDegree, u64)> + '_ {
        self.entries.iter().map(|(&(i, v), &b)| (i, v, b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn max_i(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, BiDegree::ZERO)..).take_while(|((j, _), _)| *j == i).map(|(_, b)| b).sum()
    }

    /// Totals for `i = 0 ..= max_i`.
    pub fn totals(&self) -> Vec<u64> {
        match self.max_i() {
            Some(m) => (0..=m).map(|i| self.total(i)).collect(),
            None => Vec::new(),
        }
    }

    /// Sum of the entries at homological degree `i` and total internal degree `d`.
    pub fn total_at_degree(&self, i: usize, d: usize) -> u64 {
        self.entries().filter(|(j, v, _)| *j == i && v.total() == d).map(|(_, _, b)| b).sum()
    }

    /// Highest total internal degree carrying a nonzero entry at `i`.
    pub fn top(&self, i: usize) -> Option<usize> {
        self.entries().filter(|(j, _, _)| *j == i).map(|(_, v, _)| v.total()).max()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(i, v, b)| self.get(i, v.swapped()) == b)
    }

    /// Keeps only homological degrees up to `max_i`.
    pub fn restricted(&self, max_i: usize) -> Self {
        let mut out = BettiTable { entries: BTreeMap::new(), ..self.clone() };
        for (i, v, b) in self.entries() {
            if i <= max_i {
                out.set(i, v, b);
            }
        }
        out
    }

    /// Entries where the two tables disagree: `(i, v, self, other)`.
    pub fn diff(&self, other: &BettiTable) -> Vec<(usize, BiDegree, u64, u64)> {
        let mut keys: Vec<(usize, BiDegree)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(i, v)| {
                let (a, b) = (self.get(i, v), other.get(i, v));
                (a != b).then_some((i, v, a, b))
            })
            .collect()
    }

    /// `sum beta_{i,v} s^{v1} t^{v2} u^i`
    pub fn poincare_series(&self, order: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            order,
            self.entries().map(|(i, v, b)| ([v.a as u32, v.b as u32, i as u32], i128::from(b))),
        )
    }

    /// `sum (-1)^i beta_{i,v} s^{v1} t^{v2}`
    pub fn euler_numerator(&self, order: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            order,
            self.entries().map(|(i, v, b)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                ([v.a as u32, v.b as u32, 0], sign * i128::from(b))
            }),
        )
    }

    /// Rows of the table by strand `total(v) - i`, columns by `i`: the
    /// totals laid out like a printed Betti diagram.
    pub fn strand_totals(&self) -> BTreeMap<usize, BTreeMap<usize, u64>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
        for (i, v, b) in self.entries() {
            let strand = v.total().saturating_sub(i);
            *out.entry(strand).or_default().entry(i).or_default() += b;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BettiTable {
        let mut t = BettiTable::new("x", 1, None, Source::Closed);
        t.set(0, BiDegree::ZERO, 1);
        t.set(1, BiDegree::new(1, 1), 3);
        t.set(2, BiDegree::new(1, 2), 2);
        t.set(2, BiDegree::new(2, 1), 2);
        t.set(2, BiDegree::new(2, 2), 1);
        t
    }

    #[test]
    fn totals_and_tops() {
        let t = sample();
        assert_eq!(t.totals(), vec![1, 3, 5]);
        assert_eq!(t.top(1), Some(2));
        assert_eq!(t.top(2), Some(4));
        assert_eq!(t.top(3), None);
        assert_eq!(t.total_at_degree(2, 3), 4);
        assert!(t.is_symmetric());
        let strands = t.strand_totals();
        assert_eq!(strands[&1][&1], 3);
        assert_eq!(strands[&1][&2], 4);
        assert_eq!(strands[&2][&2], 1);
    }

    #[test]
    fn diff_lists_disagreements() {
        let a = sample();
        let mut b = sample();
        b.set(2, BiDegree::new(2, 2), 0);
        assert_eq!(a.diff(&b), vec![(2, BiDegree::new(2, 2), 1, 0)]);
        assert!(a.diff(&a).is_empty());
    }
}
