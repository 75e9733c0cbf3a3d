//! Jordan superalgebra membership through a truncated Grassmann envelope,
//! and plain associativity.
//!
//! The envelope uses 8 anticommuting generators, two per argument slot, so
//! a degree-4 identity never loses a coefficient to `ξ_i^2 = 0` across
//! slots. The three `x` arguments of `((x x) y) x - (x x)(y x)` carry formal
//! commuting coefficients `c1, c2, c4`; all Koszul signs come out of the
//! Grassmann arithmetic.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Parity, SuperAlgebra};
use crate::arith::Scalar;

pub const GENERATORS: usize = 8;
pub const SLOTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("slot {0} out of range 1..=4")]
    SlotOutOfRange(usize),
}

/// Element of the Grassmann algebra on `ξ_1..ξ_8`. Monomials are stored
/// as bitmasks (bit `i-1` set iff `ξ_i` occurs), i.e. as sorted index sets.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GrassmannElement {
    terms: BTreeMap<u8, Scalar>,
}

/// Sign of `ξ_A ξ_B` reordered into ascending order; zero when the sets
/// intersect.
fn merge_sign(a: u8, b: u8) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0;
    for j in 0..GENERATORS {
        if b & (1 << j) != 0 {
            swaps += (u32::from(a) >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GrassmannElement {
    pub fn zero() -> Self {
        GrassmannElement::default()
    }

    pub fn one() -> Self {
        GrassmannElement::monomial(&[], Scalar::one())
    }

    /// The signed monomial `c ξ_{i1} ξ_{i2} ...` (1-based indices in the
    /// given order).
    pub fn monomial(generators: &[usize], c: Scalar) -> Self {
        let mut mask = 0u8;
        let mut sign = 1i8;
        for &g in generators {
            assert!((1..=GENERATORS).contains(&g), "generator ξ_{g} out of range");
            let bit = 1u8 << (g - 1);
            sign *= merge_sign(mask, bit);
            mask |= bit;
        }
        let mut out = GrassmannElement::zero();
        let c = if sign < 0 { -c } else { c };
        if sign != 0 && !c.is_zero() {
            out.terms.insert(mask, c);
        }
        out
    }

    pub fn generator(i: usize) -> Self {
        GrassmannElement::monomial(&[i], Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (ascending 1-based generator list, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.terms
            .iter()
            .map(|(mask, c)| (mask_to_indices(*mask), c.clone()))
            .collect()
    }

    /// Even iff every monomial has even length.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|m| m.count_ones() % 2);
        let first = parities.next()?;
        parities
            .all(|p| p == first)
            .then_some(if first == 0 { Parity::Even } else { Parity::Odd })
    }

    fn add_term(&mut self, mask: u8, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn scale(&self, c: &Scalar) -> Self {
        let mut out = GrassmannElement::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }
}

fn mask_to_indices(mask: u8) -> Vec<usize> {
    (0..GENERATORS).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

impl<'a> Mul<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                match merge_sign(*a, *b) {
                    0 => {}
                    1 => out.add_term(a | b, ca * cb),
                    _ => out.add_term(a | b, -(ca * cb)),
                }
            }
        }
        out
    }
}

impl Add for GrassmannElement {
    type Output = GrassmannElement;
    fn add(mut self, rhs: GrassmannElement) -> GrassmannElement {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(&-Scalar::one())
    }
}

impl Sub for GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: GrassmannElement) -> GrassmannElement {
        self + (-rhs)
    }
}

impl std::fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(idx, c)| {
                let word: String = idx.iter().map(|i| format!("ξ{i}")).collect();
                if word.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}·{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponents of the formal coefficients `(c1, c2, c4)`.
pub type Multidegree = [u32; 3];

/// Element of `G(A)` with coefficients polynomial in `c1, c2, c4`:
/// `sum c^deg · g ⊗ v_basis`, where `g` has the parity of `v_basis`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnvelopeElement {
    parts: BTreeMap<(Multidegree, usize), GrassmannElement>,
}

impl EnvelopeElement {
    pub fn zero() -> Self {
        EnvelopeElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn add_part(&mut self, deg: Multidegree, basis: usize, g: GrassmannElement) {
        if g.is_zero() {
            return;
        }
        let slot = self.parts.entry((deg, basis)).or_default();
        *slot = std::mem::take(slot) + g;
        if slot.is_zero() {
            self.parts.remove(&(deg, basis));
        }
    }

    /// Multiplies by the formal coefficient `c^deg`.
    pub fn with_degree(&self, deg: Multidegree) -> Self {
        let mut out = EnvelopeElement::zero();
        for ((d, b), g) in &self.parts {
            let nd = [d[0] + deg[0], d[1] + deg[1], d[2] + deg[2]];
            out.add_part(nd, *b, g.clone());
        }
        out
    }

    /// `(pairs)` view: Grassmann coefficient per (multidegree, basis index).
    pub fn parts(&self) -> impl Iterator<Item = (&Multidegree, usize, &GrassmannElement)> {
        self.parts.iter().map(|((d, b), g)| (d, *b, g))
    }

    /// Checks `G(A) = G_0 ⊗ A_0 + G_1 ⊗ A_1`.
    pub fn parity_matched(&self, algebra: &SuperAlgebra) -> bool {
        self.parts
            .iter()
            .all(|((_, b), g)| g.parity() == Some(algebra.parity(*b)))
    }

    pub fn add(self, rhs: EnvelopeElement) -> EnvelopeElement {
        let mut out = self;
        for ((d, b), g) in rhs.parts {
            out.add_part(d, b, g);
        }
        out
    }

    pub fn sub(self, rhs: EnvelopeElement) -> EnvelopeElement {
        let mut neg = EnvelopeElement::zero();
        for ((d, b), g) in rhs.parts {
            neg.add_part(d, b, -g);
        }
        self.add(neg)
    }

    /// Product in `G ⊗ A`: `(g ⊗ a)(h ⊗ b) = gh ⊗ ab`.
    pub fn mul(&self, rhs: &EnvelopeElement, algebra: &SuperAlgebra) -> EnvelopeElement {
        let d = algebra.dim();
        let mut out = EnvelopeElement::zero();
        for ((da, a), ga) in &self.parts {
            for ((db, b), gb) in &rhs.parts {
                let g = ga * gb;
                if g.is_zero() {
                    continue;
                }
                let deg = [da[0] + db[0], da[1] + db[1], da[2] + db[2]];
                for c in 0..d {
                    let mu = algebra.coeff(*a, *b, c);
                    if !mu.is_zero() {
                        out.add_part(deg, c, g.scale(&mu));
                    }
                }
            }
        }
        out
    }
}

/// `ξ_{2s-1} ξ_{2s} ⊗ v` for even `v`, `ξ_{2s-1} ⊗ v` for odd `v`.
pub fn tagged_embed(
    algebra: &SuperAlgebra,
    basis_index: usize,
    slot: usize,
) -> Result<EnvelopeElement, IdentityError> {
    if basis_index >= algebra.dim() {
        return Err(IdentityError::IndexOutOfRange(basis_index));
    }
    if !(1..=SLOTS).contains(&slot) {
        return Err(IdentityError::SlotOutOfRange(slot));
    }
    let g = match algebra.parity(basis_index) {
        Parity::Even => GrassmannElement::monomial(&[2 * slot - 1, 2 * slot], Scalar::one()),
        Parity::Odd => GrassmannElement::generator(2 * slot - 1),
    };
    let mut out = EnvelopeElement::zero();
    out.add_part([0, 0, 0], basis_index, g);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Why a superalgebra is not Jordan.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityWitness {
    /// `ab != (-1)^{|a||b|} ba` for these basis vectors.
    Supercommutativity { left: String, right: String },
    /// Nonzero coefficient of the Jordan polynomial for the slot assignment
    /// `basis` (x-slots 1, 2, 4 and y-slot 3).
    Jordan {
        basis: [usize; 4],
        labels: [String; 4],
        multidegree: Multidegree,
        grassmann_monomial: Vec<usize>,
        residual: Vec<Scalar>,
    },
}

impl IdentityWitness {
    /// Recomputes the stored evidence on `algebra`; true iff it still shows
    /// a violation with the same residual.
    pub fn reevaluate(&self, algebra: &SuperAlgebra) -> bool {
        match self {
            IdentityWitness::Supercommutativity { left, right } => {
                let (Ok(a), Ok(b)) = (algebra.parse_label(left), algebra.parse_label(right)) else {
                    return false;
                };
                let odd = algebra.parity(a) == Parity::Odd && algebra.parity(b) == Parity::Odd;
                (0..algebra.dim()).any(|c| {
                    let (ab, ba) = (algebra.coeff(a, b, c), algebra.coeff(b, a, c));
                    if odd {
                        ab != -ba
                    } else {
                        ab != ba
                    }
                })
            }
            IdentityWitness::Jordan {
                basis,
                multidegree,
                grassmann_monomial,
                residual,
                ..
            } => {
                let p = jordan_polynomial(algebra, *basis);
                let again = residual_at(algebra, &p, multidegree, grassmann_monomial);
                again == *residual && again.iter().any(|c| !c.is_zero())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub verdict: Verdict,
    pub witness: Option<IdentityWitness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `((x x) y) x - (x x)(y x)` with `x = c1 u1 + c2 u2 + c4 u4`, `y = u3`.
fn jordan_polynomial(algebra: &SuperAlgebra, basis: [usize; 4]) -> EnvelopeElement {
    let u: Vec<EnvelopeElement> = basis
        .iter()
        .enumerate()
        .map(|(s, &b)| tagged_embed(algebra, b, s + 1).expect("in range"))
        .collect();
    let x = u[0]
        .with_degree([1, 0, 0])
        .add(u[1].with_degree([0, 1, 0]))
        .add(u[3].with_degree([0, 0, 1]));
    let y = &u[2];
    let xx = x.mul(&x, algebra);
    let lhs = xx.mul(y, algebra).mul(&x, algebra);
    let rhs = xx.mul(&y.mul(&x, algebra), algebra);
    lhs.sub(rhs)
}

fn residual_at(
    algebra: &SuperAlgebra,
    p: &EnvelopeElement,
    deg: &Multidegree,
    monomial: &[usize],
) -> Vec<Scalar> {
    let target = GrassmannElement::monomial(monomial, Scalar::one());
    let mask = *target.terms.keys().next().unwrap_or(&0);
    (0..algebra.dim())
        .map(|c| {
            p.parts
                .get(&(*deg, c))
                .and_then(|g| g.terms.get(&mask).cloned())
                .unwrap_or_else(Scalar::zero)
        })
        .collect()
}

fn jordan_failure(algebra: &SuperAlgebra, basis: [usize; 4]) -> Option<IdentityWitness> {
    let p = jordan_polynomial(algebra, basis);
    let ((deg, _), g) = p.parts.iter().next()?;
    let mask = *g.terms.keys().next()?;
    let monomial = mask_to_indices(mask);
    let residual = residual_at(algebra, &p, deg, &monomial);
    Some(IdentityWitness::Jordan {
        basis,
        labels: basis.map(|b| algebra.label(b)),
        multidegree: *deg,
        grassmann_monomial: monomial,
        residual,
    })
}

/// Decides whether `algebra` is a Jordan superalgebra: supercommutative and
/// with a Grassmann envelope satisfying `(x^2 y) x = x^2 (y x)`.
pub fn check_jordan_super(algebra: &SuperAlgebra) -> IdentityReport {
    if let Some((a, b)) = algebra.first_supercommutativity_failure() {
        return IdentityReport {
            verdict: Verdict::Fail,
            witness: Some(IdentityWitness::Supercommutativity {
                left: algebra.label(a),
                right: algebra.label(b),
            }),
        };
    }
    let d = algebra.dim();
    let tuples: Vec<[usize; 4]> = (0..d.pow(4))
        .map(|i| [i / (d * d * d), (i / (d * d)) % d, (i / d) % d, i % d])
        .collect();
    let witness = tuples
        .par_iter()
        .find_map_first(|&basis| jordan_failure(algebra, basis));
    IdentityReport {
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
    }
}

/// First basis triple `(a, b, c)` with `(ab)c != a(bc)`, if any.
pub fn associativity_failure(algebra: &SuperAlgebra) -> Option<[usize; 3]> {
    let d = algebra.dim();
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        v
    };
    for a in 0..d {
        for b in 0..d {
            let ab = algebra.basis_product(a, b);
            for c in 0..d {
                let left = algebra.product(&ab, &unit(c)).expect("dims");
                let bc = algebra.basis_product(b, c);
                let right = algebra.product(&unit(a), &bc).expect("dims");
                if left != right {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Ungraded associativity `(xy)z = x(yz)` on basis triples.
pub fn check_associative(algebra: &SuperAlgebra) -> (bool, Option<[usize; 3]>) {
    let w = associativity_failure(algebra);
    (w.is_none(), w)
}
