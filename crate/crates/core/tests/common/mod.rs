//! Property checks shared by the property and acceptance targets. Each
//! returns a short summary or the first counterexample.

#![allow(dead_code)]

use degenlab::algebra::{GradedBasisChange, Parity, SuperAlgebra};
use degenlab::arith::{determinant, Scalar};
use degenlab::catalog::{Catalog, VARIETIES};
use degenlab::certificates::MAX_POWER;
use degenlab::degeneration::verify_degeneration;
use degenlab::identities::{check_associative, check_jordan_super, IdentityWitness};
use degenlab::invariants::{burde_invariant, derivation_dimension};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const CONJUGATIONS: usize = 50;
pub const GROUP_PAIRS: usize = 100;
pub const MUTATIONS: usize = 5;
const BURDE_CHECKED: [(u32, u32); 3] = [(1, 1), (1, 2), (2, 2)];

fn random_block(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Scalar>> {
    loop {
        let b: Vec<Vec<Scalar>> = (0..k)
            .map(|_| (0..k).map(|_| Scalar::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect())
            .collect();
        if !determinant(&b).is_zero() {
            return b;
        }
    }
}

pub fn random_change(rng: &mut ChaCha8Rng, m: usize, n: usize) -> GradedBasisChange<Scalar> {
    GradedBasisChange::new(random_block(rng, m), random_block(rng, n)).unwrap()
}

pub fn seed(tag: &str, k: usize) -> u64 {
    tag.bytes().fold(k as u64 * 0x9e37_79b9, |h, b| h.rotate_left(5) ^ u64::from(b))
}

pub fn catalog() -> &'static Catalog {
    Catalog::embedded()
}

pub fn conjugation_invariance() -> Result<String, String> {
    let entries = catalog().entries();
    entries.par_iter().try_for_each(|e| {
        let a = &e.algebra;
        let (m, n) = a.dims();
        let jordan = check_jordan_super(a).passed();
        let der = derivation_dimension(a);
        let powers = a.power_profile(MAX_POWER);
        let burde: Vec<_> = BURDE_CHECKED.iter().map(|&(i, j)| burde_invariant(a, i, j)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed(&e.qualified_name(), 1));
        for k in 0..CONJUGATIONS {
            let g = random_change(&mut rng, m, n);
            let b = a.change_basis(&g).map_err(|err| err.to_string())?;
            let ctx = format!("{} conjugation {k}", e.qualified_name());
            if check_jordan_super(&b).passed() != jordan {
                return Err(format!("{ctx}: Jordan verdict"));
            }
            if derivation_dimension(&b) != der {
                return Err(format!("{ctx}: derivation dimension"));
            }
            if b.power_profile(MAX_POWER) != powers {
                return Err(format!("{ctx}: power profile"));
            }
            for (r, &(i, j)) in burde.iter().zip(&BURDE_CHECKED) {
                if &burde_invariant(&b, i, j) != r {
                    return Err(format!("{ctx}: c({i},{j})"));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{} algebras x {CONJUGATIONS} conjugations", entries.len()))
}

pub fn group_action() -> Result<String, String> {
    let entries: Vec<_> = catalog().entries().iter().filter(|e| !e.is_zero()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed("group", 0));
    for k in 0..GROUP_PAIRS {
        let a = &entries[k % entries.len()].algebra;
        let (m, n) = a.dims();
        let g = random_change(&mut rng, m, n);
        let h = random_change(&mut rng, m, n);
        let lhs = a.change_basis(&h).unwrap().change_basis(&g).unwrap();
        let rhs = a.change_basis(&g.compose(&h)).unwrap();
        if lhs != rhs {
            return Err(format!("pair {k}: g.(h.A) != (gh).A"));
        }
        let back = a.change_basis(&g).unwrap().change_basis(&g.inverse().unwrap()).unwrap();
        if &back != a {
            return Err(format!("pair {k}: inverse does not undo"));
        }
    }
    Ok(format!("{GROUP_PAIRS} pairs"))
}

/// Necessary conditions for `a -> b`: powers do not grow, derivations
/// grow (strictly for non-isomorphic catalog entries), associativity passes
/// down, defined Burde values agree.
fn necessary_conditions(a: &SuperAlgebra, b: &SuperAlgebra, strict_der: bool) -> Result<(), String> {
    let (pa, pb) = (a.power_profile(MAX_POWER), b.power_profile(MAX_POWER));
    for r in 1..=MAX_POWER {
        for p in [Parity::Even, Parity::Odd] {
            if pa.get(r, p) < pb.get(r, p) {
                return Err(format!("power r={r} {p:?}"));
            }
        }
    }
    let (da, db) = (derivation_dimension(a), derivation_dimension(b));
    if da > db || (strict_der && da == db) {
        return Err(format!("derivations {da} vs {db}"));
    }
    if check_associative(a).0 && !check_associative(b).0 {
        return Err("associativity".into());
    }
    for (i, j) in [(1, 1), (1, 2), (2, 1)] {
        let (x, y) = (burde_invariant(a, i, j), burde_invariant(b, i, j));
        if let (Some(u), Some(v)) = (x.value(), y.value()) {
            if u != v {
                return Err(format!("c({i},{j}) {u} vs {v}"));
            }
        }
    }
    Ok(())
}

/// Runs the conditions on every verified shipped witness, on the pair
/// itself, its even parts and its annexes. Returns the number checked.
pub fn conditions_along_degenerations() -> Result<usize, String> {
    let mut checked = 0;
    for v in VARIETIES {
        for w in catalog().witnesses(v) {
            let (a, b) = catalog().resolve_witness(w).map_err(|e| e.to_string())?;
            if !verify_degeneration(&a.algebra, &b.algebra, w).map_err(|e| e.to_string())?.is_verified() {
                continue;
            }
            let ctx = format!("{} -> {}", w.source, w.target);
            necessary_conditions(&a.algebra, &b.algebra, true).map_err(|e| format!("{ctx}: {e}"))?;
            necessary_conditions(&a.algebra.even_part(), &b.algebra.even_part(), false)
                .map_err(|e| format!("{ctx} even part: {e}"))?;
            necessary_conditions(&a.algebra.annex(), &b.algebra.annex(), false)
                .map_err(|e| format!("{ctx} annex: {e}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Breaks supercommutativity by changing one constant without its mirror.
/// `None` when no graded constant exists to perturb.
pub fn break_supercommutativity(a: &SuperAlgebra, rng: &mut ChaCha8Rng) -> Option<SuperAlgebra> {
    let d = a.dim();
    let mut slots = Vec::new();
    for x in 0..d {
        for y in x..d {
            if x == y && a.parity(x) == Parity::Even {
                continue;
            }
            for z in 0..d {
                if a.clone().set_coeff(x, y, z, Scalar::one()).is_ok() {
                    slots.push((x, y, z));
                }
            }
        }
    }
    if slots.is_empty() {
        return None;
    }
    let (x, y, z) = slots[rng.gen_range(0..slots.len())];
    let delta = Scalar::new(rng.gen_range(1..=3), rng.gen_range(1..=3));
    let mut out = a.clone();
    out.set_coeff(x, y, z, a.coeff(x, y, z) + delta).unwrap();
    Some(out)
}

/// Makes `e1` idempotent with a Peirce value outside `{0, 1/2, 1}` on one
/// basis vector, keeping supercommutativity.
pub fn break_peirce(a: &SuperAlgebra, rng: &mut ChaCha8Rng) -> SuperAlgebra {
    const BAD: [(i64, i64); 5] = [(1, 3), (2, 1), (-1, 1), (3, 4), (2, 3)];
    let d = a.dim();
    let mut out = a.clone();
    for c in 0..d {
        out.set_coeff(0, 0, c, if c == 0 { Scalar::one() } else { Scalar::zero() }).unwrap();
    }
    let v = rng.gen_range(1..d);
    let (p, q) = BAD[rng.gen_range(0..BAD.len())];
    for c in 0..d {
        let value = if c == v { Scalar::new(p, q) } else { Scalar::zero() };
        out.set_supercommutative(0, v, c, value).unwrap();
    }
    out
}

pub struct MutationSummary {
    pub rejected: usize,
    /// Entries with no graded constant to perturb.
    pub skipped: Vec<String>,
}

/// Five seeded single-coefficient mutations per entry, alternating between
/// supercommutativity and Peirce breaks. Each must fail the Jordan check with
/// a witness that reproduces on the mutant.
pub fn mutation_suite() -> Result<MutationSummary, String> {
    let mut summary = MutationSummary { rejected: 0, skipped: Vec::new() };
    for e in catalog().entries() {
        let a = &e.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed(&e.qualified_name(), 2));
        for k in 0..MUTATIONS {
            let peirce = k % 2 == 1 && a.dims().0 > 0;
            let mutated = if peirce {
                break_peirce(a, &mut rng)
            } else {
                match break_supercommutativity(a, &mut rng) {
                    Some(m) => m,
                    None => {
                        if !summary.skipped.contains(&e.qualified_name()) {
                            summary.skipped.push(e.qualified_name());
                        }
                        continue;
                    }
                }
            };
            let ctx = format!("{} mutation {k}", e.qualified_name());
            let report = check_jordan_super(&mutated);
            if report.passed() {
                return Err(format!("{ctx} accepted"));
            }
            let w = report.witness.ok_or_else(|| format!("{ctx}: no witness"))?;
            match (&w, peirce) {
                (IdentityWitness::Jordan { .. }, true) | (IdentityWitness::Supercommutativity { .. }, false) => {}
                _ => return Err(format!("{ctx}: unexpected witness {w:?}")),
            }
            if !w.reevaluate(&mutated) {
                return Err(format!("{ctx}: witness does not reproduce"));
            }
            if w.reevaluate(a) {
                return Err(format!("{ctx}: witness also fires on the original"));
            }
            summary.rejected += 1;
        }
    }
    Ok(summary)
}
