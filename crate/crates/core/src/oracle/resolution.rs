//! Minimal graded free resolution of the residue field over a quotient ring,
//! built degree by degree.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::betti::{BettiTable, Source};
use crate::error::{Error, Result};
use crate::families::RepFamily;
use crate::field::{Field, FieldSpec};
use crate::linalg::{Echelon, Rref};
use crate::poly::BiDegree;
use crate::quotient::QuotientRing;

/// Upper bound on matrix entries (rows x columns) assembled in one bidegree.
pub const DEFAULT_CELL_LIMIT: usize = 40_000_000;

/// A graded free module over the quotient, by generator degrees.
#[derive(Clone, Debug, Default)]
struct FreeModule {
    gens: Vec<BiDegree>,
}

/// Blocks `(generator, offset, quotient degree)` of a free module in one bidegree.
struct Blocks {
    blocks: Vec<(usize, usize, BiDegree)>,
    dim: usize,
}

impl FreeModule {
    fn blocks<F: Field>(&self, q: &QuotientRing<F>, v: BiDegree) -> Result<Blocks> {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for (j, g) in self.gens.iter().enumerate() {
            if let Some(w) = v.checked_sub(*g) {
                let d = q.dimension(w)?;
                if d > 0 {
                    blocks.push((j, dim, w));
                    dim += d;
                }
            }
        }
        Ok(Blocks { blocks, dim })
    }
}

/// One step `d: F_i -> F_{i-1}` together with the images `b * d(g)` for
/// every generator `g` and quotient basis element `b` within the bound.
struct Step<E> {
    module: FreeModule,
    /// `images[j][w]`: for each basis element of `Q_w`, the dense vector of
    /// `b * d(g_j)` in the previous module at degree `deg g_j + w`.
    images: Vec<HashMap<BiDegree, Vec<Vec<E>>>>,
}

/// Betti numbers of the residue field over `S/I`, with bookkeeping about
/// what was actually computed.
#[derive(Clone, Debug)]
pub struct ResidueResolution {
    pub betti: BTreeMap<(usize, BiDegree), u64>,
    pub max_i: usize,
    pub max_total: usize,
}

impl ResidueResolution {
    /// Highest total degree of a generator at step `i`, within the bound.
    pub fn top(&self, i: usize) -> Option<usize> {
        self.betti.iter().filter(|((j, _), _)| *j == i).map(|((_, v), _)| v.total()).max()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.betti.iter().filter(|((j, _), _)| *j == i).map(|(_, b)| *b).sum()
    }
}

/// Multiplies a vector of `F` at degree `u` by variable `x`.
fn mul_var_module<F: Field>(
    q: &QuotientRing<F>,
    module: &FreeModule,
    x: usize,
    u: BiDegree,
    vec: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    let field = q.field();
    let xd = q.ambient().var_degree(x);
    let src = module.blocks(q, u)?;
    let dst = module.blocks(q, u + xd)?;
    let dst_off: HashMap<usize, usize> = dst.blocks.iter().map(|&(j, off, _)| (j, off)).collect();
    let mut out = vec![field.zero(); dst.dim];
    for &(j, off, w) in &src.blocks {
        let dim = q.dimension(w)?;
        let target = q.expect_piece(w + xd)?;
        let map = target.mult(x).expect("variable degree divides");
        let Some(&toff) = dst_off.get(&j) else { continue };
        for b in 0..dim {
            let c = &vec[off + b];
            if field.is_zero(c) {
                continue;
            }
            for (k, e) in &map[b] {
                out[toff + k] = field.add(&out[toff + k], &field.mul(c, e));
            }
        }
    }
    Ok(out)
}

/// Images `b * image` for all basis elements `b` of `Q_w`, `|w| <= budget`,
/// built along the parent chain `b = x * b'`.
fn all_multiples<F: Field>(
    q: &QuotientRing<F>,
    prev: &FreeModule,
    deg: BiDegree,
    image: Vec<F::Elem>,
    budget: usize,
) -> Result<HashMap<BiDegree, Vec<Vec<F::Elem>>>> {
    let mut out: HashMap<BiDegree, Vec<Vec<F::Elem>>> = HashMap::new();
    out.insert(BiDegree::ZERO, vec![image]);
    for total in 1..=budget {
        for w in BiDegree::of_total(total) {
            let piece = q.expect_piece(w)?;
            let mut vecs = Vec::with_capacity(piece.dimension());
            for k in 0..piece.dimension() {
                let (x, j) = piece.parent(k).expect("positive degree has parents");
                let lower_deg = w - q.ambient().var_degree(x);
                let lower = &out[&lower_deg][j];
                vecs.push(mul_var_module(q, prev, x, deg + lower_deg, lower)?);
            }
            out.insert(w, vecs);
        }
    }
    Ok(out)
}

impl<E: Clone> Step<E> {
    /// Columns of `d` at bidegree `v`, in the block order of `module.blocks(v)`.
    fn columns<F: Field<Elem = E>>(&self, q: &QuotientRing<F>, v: BiDegree) -> Result<Vec<Vec<E>>> {
        let blocks = self.module.blocks(q, v)?;
        let mut cols = Vec::with_capacity(blocks.dim);
        for &(j, _, w) in &blocks.blocks {
            cols.extend(self.images[j][&w].iter().cloned());
        }
        Ok(cols)
    }
}

/// Resolves `k` over `S/I` up to step `max_i` and total degree `max_total`.
pub fn resolve_residue_field<F: Field>(
    q: &QuotientRing<F>,
    max_i: usize,
    max_total: usize,
    cell_limit: usize,
) -> Result<ResidueResolution> {
    if max_total < max_i {
        return Err(Error::DegreeBound {
            bound: max_total,
            detail: format!("step {max_i} starts in total degree {max_i}"),
        });
    }
    if q.max_total() < max_total {
        return Err(Error::DegreeBound { bound: q.max_total(), detail: "quotient truncated too early".into() });
    }
    let mut betti = BTreeMap::new();
    betti.insert((0, BiDegree::ZERO), 1);

    // F_0 = R with the augmentation; its kernel in degree v != 0 is all of Q_v.
    let f0 = FreeModule { gens: vec![BiDegree::ZERO] };
    let mut prev_step: Option<Step<F::Elem>> = None;
    let mut prev_module = f0;

    for i in 1..=max_i {
        let mut step = Step { module: FreeModule::default(), images: Vec::new() };
        for total in i..=max_total {
            let degrees: Vec<BiDegree> = BiDegree::of_total(total).collect();
            let found: Vec<Vec<Vec<F::Elem>>> = degrees
                .par_iter()
                .map(|&v| new_generators(q, &prev_module, prev_step.as_ref(), &step, v, cell_limit))
                .collect::<Result<_>>()?;
            for (v, gens) in degrees.into_iter().zip(found) {
                if gens.is_empty() {
                    continue;
                }
                betti.insert((i, v), gens.len() as u64);
                let budget = max_total - v.total();
                let images: Vec<HashMap<BiDegree, Vec<Vec<F::Elem>>>> = gens
                    .into_par_iter()
                    .map(|g| all_multiples(q, &prev_module, v, g, budget))
                    .collect::<Result<_>>()?;
                for im in images {
                    step.module.gens.push(v);
                    step.images.push(im);
                }
            }
        }
        prev_module = step.module.clone();
        prev_step = Some(step);
    }
    Ok(ResidueResolution { betti, max_i, max_total })
}

/// Minimal generators of `ker(F_{i-1} -> F_{i-2})` at `v` modulo the image of
/// the generators of `F_i` already found in lower degrees.
fn new_generators<F: Field>(
    q: &QuotientRing<F>,
    prev_module: &FreeModule,
    prev_step: Option<&Step<F::Elem>>,
    step: &Step<F::Elem>,
    v: BiDegree,
    cell_limit: usize,
) -> Result<Vec<Vec<F::Elem>>> {
    let field = q.field();
    let prev_blocks = prev_module.blocks(q, v)?;
    let n = prev_blocks.dim;
    if n == 0 {
        return Ok(Vec::new());
    }

    let kernel: Vec<Vec<F::Elem>> = match prev_step {
        None => {
            // augmentation
            if v == BiDegree::ZERO {
                return Ok(Vec::new());
            }
            (0..n)
                .map(|k| {
                    let mut e = vec![field.zero(); n];
                    e[k] = field.one();
                    e
                })
                .collect()
        }
        Some(ps) => {
            let cols = ps.columns(q, v)?;
            let rows = cols.first().map_or(0, |c| c.len());
            if rows.saturating_mul(n) > cell_limit {
                return Err(Error::ResourceLimit(format!("{rows} x {n} matrix at bidegree {v}")));
            }
            // rows of the matrix whose columns are `cols`
            let row_vecs = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
            Rref::of_rows(field.clone(), n, row_vecs).nullspace()
        }
    };
    if kernel.is_empty() {
        return Ok(Vec::new());
    }

    let mut span = Echelon::new(field.clone(), n);
    for (j, g) in step.module.gens.iter().enumerate() {
        if *g == v {
            continue;
        }
        if let Some(w) = v.checked_sub(*g) {
            if let Some(vecs) = step.images[j].get(&w) {
                for vec in vecs {
                    span.insert(vec.clone());
                    if span.rank() == kernel.len() {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }
    let mut chosen = Vec::new();
    for k in kernel {
        if span.insert(k.clone()).is_some() {
            chosen.push(k);
        }
    }
    // minimality: no generator may have a unit coefficient
    for g in &chosen {
        for &(j, off, w) in &prev_blocks.blocks {
            if w == BiDegree::ZERO && !field.is_zero(&g[off]) {
                return Err(Error::Internal(format!("non-minimal syzygy at {v} on generator {j}")));
            }
        }
    }
    Ok(chosen)
}

/// Betti numbers of `k` over the family's quotient ring.
pub fn resolve_k_over_quotient(f: &RepFamily, max_i: usize, max_total: usize, field: FieldSpec) -> Result<BettiTable> {
    let res = resolve_k(f, max_i, max_total, field, DEFAULT_CELL_LIMIT)?;
    let mut t = BettiTable::new(f.name(), f.n(), Some(field), Source::Oracle);
    for ((i, v), b) in res.betti {
        t.set(i, v, b);
    }
    Ok(t)
}

pub fn resolve_k(
    f: &RepFamily,
    max_i: usize,
    max_total: usize,
    field: FieldSpec,
    cell_limit: usize,
) -> Result<ResidueResolution> {
    f.field_guard(field)?;
    crate::with_field!(field, |k| {
        let q = QuotientRing::new(k, f.ambient(), f.generators(), max_total)?;
        resolve_residue_field(&q, max_i, max_total, cell_limit)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurface_is_linear() {
        let f = RepFamily::parse("gl", 1).unwrap();
        let r = resolve_k(&f, 5, 6, FieldSpec::Rationals, DEFAULT_CELL_LIMIT).unwrap();
        for i in 0..=5 {
            assert_eq!(r.total(i), if i == 0 { 1 } else { 2 }, "i={i}");
            assert_eq!(r.top(i), Some(i));
        }
    }

    #[test]
    fn polynomial_ring_gives_koszul_complex() {
        // so_1 has no equations: the resolution of k is the Koszul complex on two variables
        let f = RepFamily::parse("so", 1).unwrap();
        let r = resolve_k(&f, 3, 4, FieldSpec::Rationals, DEFAULT_CELL_LIMIT).unwrap();
        assert_eq!((0..=3).map(|i| r.total(i)).collect::<Vec<_>>(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn sl2_tops() {
        let f = RepFamily::parse("sl", 2).unwrap();
        let r = resolve_k(&f, 3, 5, FieldSpec::Rationals, DEFAULT_CELL_LIMIT).unwrap();
        assert_eq!(r.top(1), Some(1));
        assert_eq!(r.top(2), Some(2));
        assert_eq!(r.top(3), Some(4));
    }

    #[test]
    fn bound_must_cover_steps() {
        let f = RepFamily::parse("gl", 1).unwrap();
        assert!(resolve_k(&f, 4, 3, FieldSpec::Rationals, DEFAULT_CELL_LIMIT).is_err());
    }
}
