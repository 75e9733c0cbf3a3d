//! Invariants that must be monotone or preserved along a degeneration:
//! graded power dimensions, the dimension of the even derivation algebra
//! (the tangent space of the graded automorphism group) and Burde's
//! trace ratios `c_{i,j}`.

use serde::Serialize;

use crate::algebra::{PowerProfile, SuperAlgebra, DEFAULT_POWER_DEPTH};
use crate::arith::{constant_ratio, rank, MultiPoly, Scalar};
use crate::identities::associativity_failure;

/// Index pairs tabulated in every profile.
pub const BURDE_INDICES: [(u32, u32); 3] = [(1, 1), (1, 2), (2, 2)];
pub const MAX_BURDE_INDEX: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UndefinedReason {
    /// `tr(L(x)^i L(y)^j)` vanishes identically.
    DenominatorZero,
    /// `tr(L(x)^i) tr(L(y)^j)` vanishes identically while the denominator
    /// does not, so there is no nonzero ratio.
    NumeratorZero,
    /// The ratio depends on `x, y`.
    NotConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BurdeStatus {
    Defined { value: Scalar },
    Undefined { reason: UndefinedReason },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurdeResult {
    #[serde(flatten)]
    pub status: BurdeStatus,
    pub i: u32,
    pub j: u32,
}

impl BurdeResult {
    pub fn value(&self) -> Option<&Scalar> {
        match &self.status {
            BurdeStatus::Defined { value } => Some(value),
            BurdeStatus::Undefined { .. } => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.value().is_some()
    }
}

impl std::fmt::Display for BurdeResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.status {
            BurdeStatus::Defined { value } => write!(f, "c_{},{} = {value}", self.i, self.j),
            BurdeStatus::Undefined { reason } => {
                write!(f, "c_{},{} undefined ({reason:?})", self.i, self.j)
            }
        }
    }
}

/// Dimension of the space of grading-preserving derivations.
pub fn derivation_dimension(a: &SuperAlgebra) -> usize {
    let (m, n) = a.dims();
    let d = m + n;
    // Unknown D[r][c] (image of basis c, coordinate r) for r, c in one block.
    let var = |r: usize, c: usize| -> Option<usize> {
        if r < m && c < m {
            Some(r * m + c)
        } else if r >= m && c >= m {
            Some(m * m + (r - m) * n + (c - m))
        } else {
            None
        }
    };
    let unknowns = m * m + n * n;
    let mut rows = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for out in 0..d {
                let mut row = vec![Scalar::zero(); unknowns];
                let mut touched = false;
                let mut add = |idx: Option<usize>, c: Scalar| {
                    if let Some(i) = idx {
                        if !c.is_zero() {
                            row[i] = &row[i] + &c;
                            touched = true;
                        }
                    }
                };
                // D(xy)
                for k in 0..d {
                    add(var(out, k), a.coeff(x, y, k));
                }
                // - D(x) y - x D(y)
                for j in 0..d {
                    add(var(j, x), -a.coeff(j, y, out));
                    add(var(j, y), -a.coeff(x, j, out));
                }
                if touched && row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns - rank(&rows).expect("rectangular")
}

type PolyMatrix = Vec<Vec<MultiPoly>>;

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix, vars: &[String]) -> PolyMatrix {
    let d = a.len();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    (0..d).fold(MultiPoly::zero(vars), |acc, k| acc + &a[r][k] * &b[k][c])
                })
                .collect()
        })
        .collect()
}

fn poly_mat_pow(a: &PolyMatrix, e: u32, vars: &[String]) -> PolyMatrix {
    let mut out = a.clone();
    for _ in 1..e {
        out = poly_mat_mul(&out, a, vars);
    }
    out
}

fn trace(a: &PolyMatrix, vars: &[String]) -> MultiPoly {
    (0..a.len()).fold(MultiPoly::zero(vars), |acc, i| acc + a[i][i].clone())
}

/// Left multiplication by the generic element whose coordinates are the
/// variables `offset..offset+d`: column `b` holds `x e_b`.
fn generic_left_mult(a: &SuperAlgebra, vars: &[String], offset: usize) -> PolyMatrix {
    let d = a.dim();
    (0..d)
        .map(|k| {
            (0..d)
                .map(|b| {
                    (0..d).fold(MultiPoly::zero(vars), |acc, s| {
                        let mu = a.coeff(s, b, k);
                        if mu.is_zero() {
                            acc
                        } else {
                            acc + MultiPoly::variable(vars, offset + s).scale(&mu)
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Numerator and denominator of `c_{i,j}` as polynomials in the
/// coordinates `x1..xd, y1..yd` of two generic elements.
pub fn burde_polynomials(a: &SuperAlgebra, i: u32, j: u32) -> (MultiPoly, MultiPoly) {
    let d = a.dim();
    let vars: Vec<String> = (1..=d)
        .map(|k| format!("x{k}"))
        .chain((1..=d).map(|k| format!("y{k}")))
        .collect();
    let lx = poly_mat_pow(&generic_left_mult(a, &vars, 0), i, &vars);
    let ly = poly_mat_pow(&generic_left_mult(a, &vars, d), j, &vars);
    let num = trace(&lx, &vars) * trace(&ly, &vars);
    let den = trace(&poly_mat_mul(&lx, &ly, &vars), &vars);
    (num, den)
}

/// Burde's invariant `c_{i,j}`, decided by exact polynomial proportionality.
pub fn burde_invariant(a: &SuperAlgebra, i: u32, j: u32) -> BurdeResult {
    assert!(
        (1..=MAX_BURDE_INDEX).contains(&i) && (1..=MAX_BURDE_INDEX).contains(&j),
        "Burde indices must lie in 1..=4"
    );
    let (num, den) = burde_polynomials(a, i, j);
    let status = if den.is_zero() {
        BurdeStatus::Undefined { reason: UndefinedReason::DenominatorZero }
    } else if num.is_zero() {
        BurdeStatus::Undefined { reason: UndefinedReason::NumeratorZero }
    } else {
        match constant_ratio(&num, &den).expect("denominator nonzero") {
            Some(value) => BurdeStatus::Defined { value },
            None => BurdeStatus::Undefined { reason: UndefinedReason::NotConstant },
        }
    };
    BurdeResult { status, i, j }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantProfile {
    pub dims: (usize, usize),
    pub power_profile: PowerProfile,
    pub derivation_dim: usize,
    pub associative: bool,
    pub burde_11: BurdeResult,
    pub burde_12: BurdeResult,
    pub burde_22: BurdeResult,
    pub annex_power_profile: PowerProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_part_profile: Option<Box<InvariantProfile>>,
}

impl InvariantProfile {
    pub fn burde(&self, i: u32, j: u32) -> Option<&BurdeResult> {
        match (i, j) {
            (1, 1) => Some(&self.burde_11),
            (1, 2) => Some(&self.burde_12),
            (2, 2) => Some(&self.burde_22),
            _ => None,
        }
    }
}

fn profile_at(a: &SuperAlgebra, with_even_part: bool) -> InvariantProfile {
    InvariantProfile {
        dims: a.dims(),
        power_profile: a.power_profile(DEFAULT_POWER_DEPTH),
        derivation_dim: derivation_dimension(a),
        associative: associativity_failure(a).is_none(),
        burde_11: burde_invariant(a, 1, 1),
        burde_12: burde_invariant(a, 1, 2),
        burde_22: burde_invariant(a, 2, 2),
        annex_power_profile: a.annex().power_profile(DEFAULT_POWER_DEPTH),
        even_part_profile: with_even_part.then(|| Box::new(profile_at(&a.even_part(), false))),
    }
}

/// All invariants used by the necessary conditions, for `a` and its even part.
pub fn invariant_profile(a: &SuperAlgebra) -> InvariantProfile {
    profile_at(a, true)
}
