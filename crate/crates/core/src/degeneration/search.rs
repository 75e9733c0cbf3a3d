//! Small deterministic search for degeneration witnesses.
//!
//! Candidates are graded basis changes whose blocks are monomial matrices
//! (a permutation pattern with entries `c t^k`), optionally with one extra
//! monomial at a zero position of one block. Such a matrix `M + N` has
//! `(M^-1 N)^2 = 0`, so its inverse `M^-1 - M^-1 N M^-1` is again Laurent
//! and every candidate can be screened with machine-size rationals before
//! the exact check.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::algebra::{GradedBasisChange, Parity, SuperAlgebra};
use crate::arith::{LaurentPoly, Scalar};

use super::{verify_degeneration, DegenerationWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchShape {
    /// Monomial matrices only.
    Diagonal,
    /// Monomial matrices plus one monomial perturbation.
    Triangular,
}

type Q = Rational64;

const COEFFS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

/// `(row, col, coefficient, exponent)` inside one block.
type Entry = (usize, usize, Q, i32);

#[derive(Debug, Clone)]
struct BlockCandidate {
    base: Vec<Entry>,
    extra: Option<Entry>,
}

fn monomials(bound: i32) -> Vec<(Q, i32)> {
    let mut exps = vec![0];
    for k in 1..=bound {
        exps.push(k);
        exps.push(-k);
    }
    exps.into_iter()
        .flat_map(|k| COEFFS.iter().map(move |&(p, q)| (Q::new(p, q), k)))
        .collect()
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

fn block_candidates(size: usize, bound: i32, shape: SearchShape) -> Vec<BlockCandidate> {
    let values = monomials(bound);
    let mut bases = Vec::new();
    for perm in permutations(size) {
        // column 0 most significant
        let total = values.len().pow(size as u32);
        for code in 0..total {
            let mut rest = code;
            let mut entries: Vec<Entry> = Vec::with_capacity(size);
            for col in (0..size).rev() {
                let (v, k) = values[rest % values.len()];
                rest /= values.len();
                entries.push((perm[col], col, v, k));
            }
            entries.reverse();
            bases.push(entries);
        }
    }
    let mut out: Vec<BlockCandidate> = bases
        .iter()
        .map(|b| BlockCandidate { base: b.clone(), extra: None })
        .collect();
    if shape == SearchShape::Triangular {
        for base in &bases {
            for r in 0..size {
                for c in 0..size {
                    if base.iter().any(|e| e.0 == r && e.1 == c) {
                        continue;
                    }
                    for &(v, k) in &values {
                        out.push(BlockCandidate { base: base.clone(), extra: Some((r, c, v, k)) });
                    }
                }
            }
        }
    }
    out
}

/// Sparse Laurent entry: list of `(exponent, coefficient)`.
type Terms = Vec<(i32, Q)>;

struct Candidate {
    h: Vec<Vec<Terms>>,
    hinv: Vec<Vec<Terms>>,
}

fn push_term(t: &mut Terms, k: i32, c: Q) {
    if let Some(slot) = t.iter_mut().find(|(e, _)| *e == k) {
        slot.1 += c;
    } else {
        t.push((k, c));
    }
    t.retain(|(_, c)| *c != Q::from_integer(0));
}

impl Candidate {
    fn new(d: usize) -> Self {
        Candidate { h: vec![vec![Terms::new(); d]; d], hinv: vec![vec![Terms::new(); d]; d] }
    }

    /// Refills `self` with the block-diagonal matrix and its inverse.
    fn fill(&mut self, blocks: [(usize, &BlockCandidate); 2]) {
        for row in self.h.iter_mut().chain(self.hinv.iter_mut()) {
            row.iter_mut().for_each(Vec::clear);
        }
        let (h, hinv) = (&mut self.h, &mut self.hinv);
        for (offset, block) in blocks {
            for &(r, c, v, k) in &block.base {
                push_term(&mut h[offset + r][offset + c], k, v);
                push_term(&mut hinv[offset + c][offset + r], -k, v.recip());
            }
            if let Some((r, c, p, e)) = block.extra {
                push_term(&mut h[offset + r][offset + c], e, p);
                // M^-1 N M^-1 has the single entry (x0, y0)
                let (x0, mr, kr) = block
                    .base
                    .iter()
                    .find(|b| b.0 == r)
                    .map(|b| (b.1, b.2, b.3))
                    .expect("monomial row");
                let (y0, mc, kc) = block
                    .base
                    .iter()
                    .find(|b| b.1 == c)
                    .map(|b| (b.0, b.2, b.3))
                    .expect("monomial column");
                let coeff = -(p / (mr * mc));
                push_term(&mut hinv[offset + x0][offset + y0], e - kr - kc, coeff);
            }
        }
    }
}

#[cfg(test)]
fn assemble(d: usize, blocks: [(usize, &BlockCandidate); 2]) -> Candidate {
    let mut c = Candidate::new(d);
    c.fill(blocks);
    c
}

struct Scratch {
    acc: Vec<Q>,
    touched: Vec<usize>,
}

struct Problem {
    /// Nonzero source constants `(i, j, k, value)`.
    source: Vec<(usize, usize, usize, Q)>,
    /// Parity-admissible target entries, nonzero ones first.
    entries: Vec<(usize, usize, usize, Q)>,
    offset: i32,
}

fn to_q(s: &Scalar) -> Option<Q> {
    s.to_i64_pair().map(|(p, q)| Q::new(p, q))
}

impl Problem {
    fn scratch(&self) -> Scratch {
        Scratch { acc: vec![Q::from_integer(0); (2 * self.offset + 1) as usize], touched: Vec::new() }
    }

    fn new(a: &SuperAlgebra, b: &SuperAlgebra, bound: i32) -> Option<Self> {
        let d = a.dim();
        let mut source = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = a.coeff(i, j, k);
                    if !v.is_zero() {
                        source.push((i, j, k, to_q(&v)?));
                    }
                }
            }
        }
        let mut nonzero = Vec::new();
        let mut zero = Vec::new();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let odd = |i| usize::from(a.parity(i) == Parity::Odd);
                    if (odd(x) + odd(y)) % 2 != odd(z) {
                        continue;
                    }
                    let v = to_q(&b.coeff(x, y, z))?;
                    if v == Q::from_integer(0) {
                        zero.push((x, y, z, v));
                    } else {
                        nonzero.push((x, y, z, v));
                    }
                }
            }
        }
        nonzero.extend(zero);
        Some(Problem { source, entries: nonzero, offset: 5 * bound + 2 })
    }

    /// Screens the entries accepted by `keep`; early exit on the first
    /// pole or wrong constant term.
    fn passes(
        &self,
        cand: &Candidate,
        keep: impl Fn(usize, usize, usize) -> bool,
        scratch: &mut Scratch,
    ) -> bool {
        let Scratch { acc, touched } = scratch;
        for &(a, b, c, target) in &self.entries {
            if !keep(a, b, c) {
                continue;
            }
            for &(i, j, k, v) in &self.source {
                let (ha, hb, hc) = (&cand.h[i][a], &cand.h[j][b], &cand.hinv[c][k]);
                if ha.is_empty() || hb.is_empty() || hc.is_empty() {
                    continue;
                }
                for &(e1, c1) in ha {
                    for &(e2, c2) in hb {
                        for &(e3, c3) in hc {
                            let slot = (e1 + e2 + e3 + self.offset) as usize;
                            acc[slot] += c1 * c2 * c3 * v;
                            touched.push(slot);
                        }
                    }
                }
            }
            let zero_slot = self.offset as usize;
            let mut ok = true;
            for &s in touched.iter() {
                if s < zero_slot && acc[s] != Q::from_integer(0) {
                    ok = false;
                }
            }
            if acc[zero_slot] != target {
                ok = false;
            }
            for &s in touched.iter() {
                acc[s] = Q::from_integer(0);
            }
            touched.clear();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn to_laurent_block(size: usize, block: &BlockCandidate) -> Vec<Vec<LaurentPoly>> {
    let mut m = vec![vec![LaurentPoly::zero(); size]; size];
    for &(r, c, v, k) in block.base.iter().chain(block.extra.iter()) {
        let coeff = Scalar::new(*v.numer(), *v.denom());
        m[r][c] = m[r][c].clone() + LaurentPoly::monomial(coeff, k);
    }
    m
}

/// First verified witness for `a -> b` in a fixed enumeration order, or
/// `None`. Finding nothing says nothing about non-degeneration.
pub fn search_witness(
    a: &SuperAlgebra,
    b: &SuperAlgebra,
    degree_bound: u32,
    shape: SearchShape,
) -> Option<DegenerationWitness> {
    assert!(degree_bound >= 1, "degree bound must be at least 1");
    if a.dims() != b.dims() {
        return None;
    }
    let bound = degree_bound as i32;
    let (m, n) = a.dims();
    let problem = Problem::new(a, b, bound)?;
    let evens = block_candidates(m, bound, shape);
    let odds = block_candidates(n, bound, shape);
    let identity_odd = BlockCandidate {
        base: (0..n).map(|i| (i, i, Q::from_integer(1), 0)).collect(),
        extra: None,
    };
    let all_even = |x: usize, y: usize, z: usize| x < m && y < m && z < m;
    evens.par_iter().find_map_first(|even| {
        let mut scratch = problem.scratch();
        let mut cand = Candidate::new(m + n);
        cand.fill([(0, even), (m, &identity_odd)]);
        if !problem.passes(&cand, all_even, &mut scratch) {
            return None;
        }
        odds.iter().find_map(|odd| {
            if even.extra.is_some() && odd.extra.is_some() {
                return None;
            }
            cand.fill([(0, even), (m, odd)]);
            if !problem.passes(&cand, |x, y, z| !all_even(x, y, z), &mut scratch) {
                return None;
            }
            let change = GradedBasisChange::new(
                to_laurent_block(m, even),
                to_laurent_block(n, odd),
            )
            .ok()?;
            let w = DegenerationWitness::new(
                a.name().unwrap_or("source"),
                b.name().unwrap_or("target"),
                change,
                "search",
            );
            verify_degeneration(a, b, &w).ok()?.is_verified().then_some(w)
        })
    })
}
