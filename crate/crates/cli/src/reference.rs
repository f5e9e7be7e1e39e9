//! Total Betti tables as printed for the sl and sp families, one row per strand.

pub struct ReferenceTable {
    pub family: &'static str,
    pub n: usize,
    /// `(strand, first i, totals)`
    pub strands: &'static [(usize, usize, &'static [u64])],
}

pub const REFERENCE_TABLES: &[ReferenceTable] = &[
    ReferenceTable { family: "sl", n: 2, strands: &[(0, 0, &[1]), (1, 1, &[3]), (2, 2, &[5, 4, 1])] },
    ReferenceTable { family: "sl", n: 3, strands: &[(0, 0, &[1]), (1, 1, &[8, 12]), (2, 3, &[14, 14, 6, 1])] },
    ReferenceTable { family: "sl", n: 4, strands: &[(0, 0, &[1]), (1, 1, &[15, 40, 40]), (2, 4, &[42, 48, 27, 8, 1])] },
    ReferenceTable {
        family: "sl",
        n: 5,
        strands: &[(0, 0, &[1]), (1, 1, &[24, 90, 155, 130]), (2, 5, &[132, 165, 110, 44, 10, 1])],
    },
    ReferenceTable {
        family: "sl",
        n: 6,
        strands: &[(0, 0, &[1]), (1, 1, &[35, 168, 399, 560, 427]), (2, 6, &[429, 572, 429, 208, 65, 12, 1])],
    },
    ReferenceTable {
        family: "sp",
        n: 2,
        strands: &[(0, 0, &[1]), (1, 1, &[10]), (2, 2, &[100, 280, 392, 328, 167, 48, 6])],
    },
    ReferenceTable {
        family: "sp",
        n: 3,
        strands: &[
            (0, 0, &[1]),
            (1, 1, &[21]),
            (2, 2, &[525, 2520, 6503, 11088, 13365, 11660, 7359, 3288, 989, 180, 15]),
        ],
    },
];

impl ReferenceTable {
    /// `strand -> i -> total`, in the shape of `BettiTable::strand_totals`.
    pub fn as_strand_map(&self) -> std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, u64>> {
        self.strands
            .iter()
            .map(|(s, first, row)| (*s, row.iter().enumerate().map(|(k, b)| (first + k, *b)).collect()))
            .collect()
    }
}
