//! Superalgebras given by structure constants on a graded basis
//! `e_1..e_m` (even) and `f_1..f_n` (odd).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::linalg::{self, Matrix};
use crate::arith::{ArithError, Field, Ring, Scalar};

mod json;

pub use json::AlgebraJson;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("graded basis change is singular")]
    SingularMatrix,
    #[error("odd-odd products are nonzero; the ungraded product would not be commutative")]
    NonzeroOddOddProducts,
    #[error("structure constant {0} violates the grading")]
    ParityViolation(String),
    #[error("unknown basis label {0:?}")]
    BadLabel(String),
    #[error("inconsistent products: {0}")]
    InconsistentProducts(String),
    #[error("invalid algebra JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Parity of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn index(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Parity> {
        match i {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }
}

/// Dense `d x d x d` tensor of structure constants over an arbitrary
/// coefficient field, indexed on the full graded basis (even vectors first).
/// Used for transport of constants under parametrized bases.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor<F> {
    pub m: usize,
    pub n: usize,
    data: Vec<F>,
}

impl<F: Ring> StructureTensor<F> {
    pub fn zero(m: usize, n: usize) -> Self {
        let d = m + n;
        StructureTensor {
            m,
            n,
            data: vec![F::zero(); d * d * d],
        }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        let d = self.dim();
        (a * d + b) * d + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &F {
        &self.data[self.idx(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: F) {
        let i = self.idx(a, b, c);
        self.data[i] = v;
    }

    /// Entries in `(a, b, c)` lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &F)> {
        let d = self.dim();
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| ((i / (d * d), (i / d) % d, i % d), v))
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> StructureTensor<G> {
        StructureTensor {
            m: self.m,
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<F: Ring> StructureTensor<F> {
    /// Structure constants in the basis formed by the columns of `h`:
    /// `mu'(a,b)^c = sum h[i][a] h[j][b] mu(i,j)^k hinv[c][k]`.
    pub fn transform(&self, h: &Matrix<F>, hinv: &Matrix<F>) -> Self {
        let d = self.dim();
        let mut half = vec![F::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mu = self.get(i, j, k);
                    if mu.is_zero() {
                        continue;
                    }
                    for a in 0..d {
                        if h[i][a].is_zero() {
                            continue;
                        }
                        let ha = h[i][a].clone() * mu.clone();
                        for b in 0..d {
                            if h[j][b].is_zero() {
                                continue;
                            }
                            let slot = &mut half[(a * d + b) * d + k];
                            *slot = slot.clone() + ha.clone() * h[j][b].clone();
                        }
                    }
                }
            }
        }
        let mut out = StructureTensor::zero(self.m, self.n);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut acc = F::zero();
                    for k in 0..d {
                        let x = &half[(a * d + b) * d + k];
                        if !x.is_zero() && !hinv[c][k].is_zero() {
                            acc = acc + hinv[c][k].clone() * x.clone();
                        }
                    }
                    out.set(a, b, c, acc);
                }
            }
        }
        out
    }
}

/// A grading-preserving linear map `g = diag(even_block, odd_block)` on the
/// superspace, in column convention: column `j` holds the coordinates of
/// `g(basis_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasisChange<R> {
    pub even_block: Matrix<R>,
    pub odd_block: Matrix<R>,
}

impl<R: Ring> GradedBasisChange<R> {
    pub fn new(even_block: Matrix<R>, odd_block: Matrix<R>) -> Result<Self, AlgebraError> {
        for (name, block) in [("even", &even_block), ("odd", &odd_block)] {
            if block.iter().any(|row| row.len() != block.len()) {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "{name} block is not square"
                )));
            }
        }
        Ok(GradedBasisChange {
            even_block,
            odd_block,
        })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        GradedBasisChange {
            even_block: linalg::identity(m),
            odd_block: linalg::identity(n),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even_block.len(), self.odd_block.len())
    }

    /// Block-diagonal matrix on the full basis.
    pub fn full(&self) -> Matrix<R> {
        let (m, n) = self.dims();
        let mut out = vec![vec![R::zero(); m + n]; m + n];
        for i in 0..m {
            for j in 0..m {
                out[i][j] = self.even_block[i][j].clone();
            }
        }
        for p in 0..n {
            for q in 0..n {
                out[m + p][m + q] = self.odd_block[p][q].clone();
            }
        }
        out
    }

    /// The composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        GradedBasisChange {
            even_block: linalg::mat_mul(&self.even_block, &other.even_block),
            odd_block: linalg::mat_mul(&self.odd_block, &other.odd_block),
        }
    }

    pub fn determinants(&self) -> (R, R) {
        (
            linalg::determinant(&self.even_block),
            linalg::determinant(&self.odd_block),
        )
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedBasisChange<S> {
        let conv = |b: &Matrix<R>| b.iter().map(|r| r.iter().map(&f).collect()).collect();
        GradedBasisChange {
            even_block: conv(&self.even_block),
            odd_block: conv(&self.odd_block),
        }
    }
}

impl<F: Field> GradedBasisChange<F> {
    pub fn inverse(&self) -> Option<Self> {
        Some(GradedBasisChange {
            even_block: linalg::invert(&self.even_block)?,
            odd_block: linalg::invert(&self.odd_block)?,
        })
    }
}

/// `(dim (J^r)_0, dim (J^r)_1)` for `r = 1..=r_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerProfile(pub Vec<(usize, usize)>);

impl PowerProfile {
    pub fn get(&self, r: usize, parity: Parity) -> Option<usize> {
        let (e, o) = *self.0.get(r.checked_sub(1)?)?;
        Some(match parity {
            Parity::Even => e,
            Parity::Odd => o,
        })
    }

    /// Entrywise `self >= other` over the common range.
    pub fn dominates(&self, other: &PowerProfile) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.0 >= b.0 && a.1 >= b.1)
    }
}

/// Default depth for power profiles: the degree of the Jordan identity.
pub const DEFAULT_POWER_DEPTH: usize = 4;

/// A finite-dimensional superalgebra given by its `m^3 + 3mn^2` structure
/// constants:
///
/// * `alpha[i][j][k]`: `e_i e_j -> e_k`
/// * `beta[i][p][q]`:  `e_i f_p -> f_q`
/// * `gamma[p][i][q]`: `f_p e_i -> f_q`
/// * `delta[p][q][k]`: `f_p f_q -> e_k`
///
/// Equality is structural and ignores the name.
#[derive(Clone)]
pub struct SuperAlgebra {
    name: Option<String>,
    m: usize,
    n: usize,
    alpha: Vec<Scalar>,
    beta: Vec<Scalar>,
    gamma: Vec<Scalar>,
    delta: Vec<Scalar>,
}

impl PartialEq for SuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.gamma == other.gamma
            && self.delta == other.delta
    }
}

impl Eq for SuperAlgebra {}

impl SuperAlgebra {
    /// The algebra with zero multiplication on an `(m, n)` superspace.
    pub fn zero(m: usize, n: usize) -> Self {
        SuperAlgebra {
            name: None,
            m,
            n,
            alpha: vec![Scalar::zero(); m * m * m],
            beta: vec![Scalar::zero(); m * n * n],
            gamma: vec![Scalar::zero(); n * m * n],
            delta: vec![Scalar::zero(); n * n * m],
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn constant_count(&self) -> usize {
        self.alpha.len() + self.beta.len() + self.gamma.len() + self.delta.len()
    }

    pub fn parity(&self, basis: usize) -> Parity {
        if basis < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Human label of a basis index: `e1..em`, `f1..fn`.
    pub fn label(&self, basis: usize) -> String {
        if basis < self.m {
            format!("e{}", basis + 1)
        } else {
            format!("f{}", basis - self.m + 1)
        }
    }

    pub fn parse_label(&self, label: &str) -> Result<usize, AlgebraError> {
        let bad = || AlgebraError::BadLabel(label.to_string());
        let label = label.trim();
        let (kind, num) = label.split_at(label.len().min(1));
        let k: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "e" if (1..=self.m).contains(&k) => Ok(k - 1),
            "f" if (1..=self.n).contains(&k) => Ok(self.m + k - 1),
            _ => Err(bad()),
        }
    }

    fn slot(&self, a: usize, b: usize, c: usize) -> Option<(u8, usize)> {
        let (m, n) = (self.m, self.n);
        let d = m + n;
        if a >= d || b >= d || c >= d {
            return None;
        }
        match (a < m, b < m, c < m) {
            (true, true, true) => Some((0, (a * m + b) * m + c)),
            (true, false, false) => Some((1, (a * n + (b - m)) * n + (c - m))),
            (false, true, false) => Some((2, ((a - m) * m + b) * n + (c - m))),
            (false, false, true) => Some((3, ((a - m) * n + (b - m)) * m + c)),
            _ => None,
        }
    }

    /// Coefficient of basis vector `c` in the product of basis vectors `a·b`
    /// (zero for parity-violating triples).
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> Scalar {
        match self.slot(a, b, c) {
            Some((0, i)) => self.alpha[i].clone(),
            Some((1, i)) => self.beta[i].clone(),
            Some((2, i)) => self.gamma[i].clone(),
            Some((3, i)) => self.delta[i].clone(),
            _ => Scalar::zero(),
        }
    }

    fn coeff_ref(&self, a: usize, b: usize, c: usize) -> Option<&Scalar> {
        match self.slot(a, b, c) {
            Some((0, i)) => Some(&self.alpha[i]),
            Some((1, i)) => Some(&self.beta[i]),
            Some((2, i)) => Some(&self.gamma[i]),
            Some((3, i)) => Some(&self.delta[i]),
            _ => None,
        }
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, c: usize, v: Scalar) -> Result<(), AlgebraError> {
        let slot = self.slot(a, b, c);
        let target = match slot {
            Some((0, i)) => &mut self.alpha[i],
            Some((1, i)) => &mut self.beta[i],
            Some((2, i)) => &mut self.gamma[i],
            Some((3, i)) => &mut self.delta[i],
            _ => {
                if v.is_zero() && a < self.dim() && b < self.dim() && c < self.dim() {
                    return Ok(());
                }
                return Err(AlgebraError::ParityViolation(format!("({a},{b},{c})")));
            }
        };
        *target = v;
        Ok(())
    }

    /// Sets `a·b = v·c` and the mirror product `b·a` required by
    /// supercommutativity.
    pub fn set_supercommutative(
        &mut self,
        a: usize,
        b: usize,
        c: usize,
        v: Scalar,
    ) -> Result<(), AlgebraError> {
        let sign_flip = self.parity(a) == Parity::Odd && self.parity(b) == Parity::Odd;
        let mirror = if sign_flip { -v.clone() } else { v.clone() };
        if a == b && sign_flip && !v.is_zero() {
            return Err(AlgebraError::InconsistentProducts(format!(
                "{l}{l} must vanish in a supercommutative algebra",
                l = self.label(a)
            )));
        }
        self.set_coeff(a, b, c, v)?;
        self.set_coeff(b, a, c, mirror)
    }

    /// Product vector of two basis elements.
    pub fn basis_product(&self, a: usize, b: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|c| self.coeff(a, b, c)).collect()
    }

    /// Bilinear product of two coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(AlgebraError::DimensionMismatch(format!(
                "expected vectors of length {d}, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![Scalar::zero(); d];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xa * yb;
                for (c, slot) in out.iter_mut().enumerate() {
                    if let Some(mu) = self.coeff_ref(a, b, c) {
                        if !mu.is_zero() {
                            *slot = &*slot + &(mu * &w);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn tensor(&self) -> StructureTensor<Scalar> {
        let mut t = StructureTensor::zero(self.m, self.n);
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    t.set(a, b, c, self.coeff(a, b, c));
                }
            }
        }
        t
    }

    /// Rebuilds an algebra from a full tensor; parity-violating entries must
    /// vanish.
    pub fn from_tensor(t: &StructureTensor<Scalar>) -> Result<Self, AlgebraError> {
        let mut out = SuperAlgebra::zero(t.m, t.n);
        for ((a, b, c), v) in t.entries() {
            if !v.is_zero() {
                out.set_coeff(a, b, c, v.clone())?;
            }
        }
        Ok(out)
    }

    /// The action `(g * mu)(x, y) = g mu(g^-1 x, g^-1 y)`.
    pub fn change_basis(&self, g: &GradedBasisChange<Scalar>) -> Result<Self, AlgebraError> {
        if g.dims() != self.dims() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "basis change of type {:?} on algebra of type {:?}",
                g.dims(),
                self.dims()
            )));
        }
        let ginv = g.inverse().ok_or(AlgebraError::SingularMatrix)?;
        let t = self.tensor().transform(&ginv.full(), &g.full());
        let mut out = SuperAlgebra::from_tensor(&t)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Dimensions of the graded components of `J^r`, where `J^1 = J` and
    /// `J^r = sum_{s=1}^{r-1} J^s J^{r-s}`.
    pub fn power_profile(&self, r_max: usize) -> PowerProfile {
        let d = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[i] = Scalar::one();
            v
        };
        // spanning sets of homogeneous vectors, one entry per power
        let mut powers: Vec<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> = Vec::new();
        powers.push(((0..self.m).map(unit).collect(), (self.m..d).map(unit).collect()));
        for r in 2..=r_max.max(1) {
            let mut even = Vec::new();
            let mut odd = Vec::new();
            for s in 1..r {
                let (left, right) = (&powers[s - 1], &powers[r - s - 1]);
                for x in left.0.iter().chain(&left.1) {
                    for y in right.0.iter().chain(&right.1) {
                        let p = self.product(x, y).expect("dimensions agree");
                        let (pe, po) = p.split_at(self.m);
                        if pe.iter().any(|c| !c.is_zero()) {
                            even.push(p.clone());
                        }
                        if po.iter().any(|c| !c.is_zero()) {
                            odd.push(p);
                        }
                    }
                }
            }
            let even = linalg::row_space_basis(&even).expect("rectangular");
            let odd = linalg::row_space_basis(&odd).expect("rectangular");
            powers.push((even, odd));
        }
        PowerProfile(
            powers
                .iter()
                .take(r_max.max(1))
                .map(|(e, o)| (e.len(), o.len()))
                .collect(),
        )
    }

    /// The even part `(J)_0`: the restriction to `e_1..e_m`.
    pub fn even_part(&self) -> Self {
        SuperAlgebra {
            name: self.name.as_ref().map(|s| format!("({s})_0")),
            m: self.m,
            n: 0,
            alpha: self.alpha.clone(),
            beta: Vec::new(),
            gamma: Vec::new(),
            delta: Vec::new(),
        }
    }

    /// `a(J)`: same superspace, only the odd·odd -> even products kept.
    pub fn annex(&self) -> Self {
        let mut out = SuperAlgebra::zero(self.m, self.n);
        out.delta = self.delta.clone();
        out.name = self.name.as_ref().map(|s| format!("a({s})"));
        out
    }

    /// Block-diagonal sum; the basis is `e(A), e(B), f(A), f(B)`.
    pub fn direct_sum(&self, other: &SuperAlgebra) -> Self {
        let (m1, n1) = self.dims();
        let (m2, n2) = other.dims();
        let mut out = SuperAlgebra::zero(m1 + m2, n1 + n2);
        let m = m1 + m2;
        let place_a = |i: usize| if i < m1 { i } else { m + (i - m1) };
        let place_b = |i: usize| if i < m2 { m1 + i } else { m + n1 + (i - m2) };
        for (src, place) in [
            (self, &place_a as &dyn Fn(usize) -> usize),
            (other, &place_b as &dyn Fn(usize) -> usize),
        ] {
            for ((a, b, c), v) in src.tensor().entries() {
                if !v.is_zero() {
                    out.set_coeff(place(a), place(b), place(c), v.clone())
                        .expect("direct sum respects parity");
                }
            }
        }
        out.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        out
    }

    /// The ungraded algebra on `m + n` basis vectors with the same products.
    pub fn forget_grading(&self) -> Result<Self, AlgebraError> {
        if self.delta.iter().any(|v| !v.is_zero()) {
            return Err(AlgebraError::NonzeroOddOddProducts);
        }
        let d = self.dim();
        let mut out = SuperAlgebra::zero(d, 0);
        for ((a, b, c), v) in self.tensor().entries() {
            if !v.is_zero() {
                out.set_coeff(a, b, c, v.clone())?;
            }
        }
        out.name = self.name.as_ref().map(|s| format!("|{s}|"));
        Ok(out)
    }

    /// `alpha` symmetric, `beta_{i,p}^q = gamma_{p,i}^q`, `delta`
    /// antisymmetric.
    pub fn is_supercommutative(&self) -> bool {
        self.first_supercommutativity_failure().is_none()
    }

    /// First basis pair `(a, b)` (lexicographic) whose products violate
    /// `ab = (-1)^{|a||b|} ba`.
    pub fn first_supercommutativity_failure(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a..d {
                let both_odd = self.parity(a) == Parity::Odd && self.parity(b) == Parity::Odd;
                for c in 0..d {
                    let ab = self.coeff(a, b, c);
                    let ba = self.coeff(b, a, c);
                    let ok = if both_odd { ab == -ba } else { ab == ba };
                    if !ok {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.gamma)
            .chain(&self.delta)
            .all(Scalar::is_zero)
    }

    /// Nonzero products as `(a, b, [(c, coeff)])`, in basis order.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, Vec<(usize, Scalar)>)> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let terms: Vec<_> = (0..d)
                    .map(|c| (c, self.coeff(a, b, c)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                if !terms.is_empty() {
                    out.push((a, b, terms));
                }
            }
        }
        out
    }
}

impl fmt::Display for SuperAlgebra {
    /// Multiplication table in the style `e1e1=e1, e1f1=1/2 f1`, listing each
    /// supercommutative pair once.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name} ")?;
        }
        write!(f, "({},{}): ", self.m, self.n)?;
        let sc = self.is_supercommutative();
        let mut first = true;
        for (a, b, terms) in self.nonzero_products() {
            if sc && a > b {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}{}=", self.label(a), self.label(b))?;
            for (i, (c, v)) in terms.iter().enumerate() {
                if i > 0 {
                    write!(f, "+")?;
                }
                if v.is_one() {
                    write!(f, "{}", self.label(*c))?;
                } else {
                    write!(f, "{v} {}", self.label(*c))?;
                }
            }
        }
        if first {
            write!(f, "zero product")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience constructor used by tests and the built-in tables: products
/// are given as `(left, right, [(target, coeff)])` with labels, completed
/// supercommutatively.
pub fn algebra_from_table(
    name: &str,
    m: usize,
    n: usize,
    products: &[(&str, &str, &[(&str, Scalar)])],
) -> Result<SuperAlgebra, AlgebraError> {
    let mut out = SuperAlgebra::zero(m, n).with_name(name);
    for (l, r, terms) in products {
        let a = out.parse_label(l)?;
        let b = out.parse_label(r)?;
        for (t, v) in terms.iter() {
            let c = out.parse_label(t)?;
            out.set_supercommutative(a, b, c, v.clone())?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
