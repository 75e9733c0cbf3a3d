//! One-parameter degenerations: a parametrized graded basis `E_i^t, F_p^t`
//! is applied to a source algebra and the transported structure constants
//! are sent to `t = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedBasisChange, StructureTensor, SuperAlgebra};
use crate::arith::linalg::{self, transpose, Matrix};
use crate::arith::{LaurentPoly, RationalFunction, Scalar};

mod search;

pub use search::{search_witness, SearchShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("witness basis change is singular")]
    SingularWitness,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}

/// A parametrized basis. `change` is in column convention: column `a` of
/// each block lists the old coordinates of the new basis vector `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationWitness {
    pub source: String,
    pub target: String,
    pub change: GradedBasisChange<LaurentPoly>,
    pub provenance: String,
    /// Set when the row is known not to verify as printed.
    pub erratum: Option<String>,
}

/// On-disk witness: `even`/`odd` rows are the new basis vectors written in
/// old coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub source: String,
    pub target: String,
    pub even: Vec<Vec<LaurentPoly>>,
    pub odd: Vec<Vec<LaurentPoly>>,
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

impl DegenerationWitness {
    pub fn new(
        source: impl Into<String>,
        target: impl Into<String>,
        change: GradedBasisChange<LaurentPoly>,
        provenance: impl Into<String>,
    ) -> Self {
        DegenerationWitness {
            source: source.into(),
            target: target.into(),
            change,
            provenance: provenance.into(),
            erratum: None,
        }
    }

    /// Builds a witness from rows of new basis vectors.
    pub fn from_rows(
        source: impl Into<String>,
        target: impl Into<String>,
        even: Matrix<LaurentPoly>,
        odd: Matrix<LaurentPoly>,
        provenance: impl Into<String>,
    ) -> Result<Self, DegenerationError> {
        let change = GradedBasisChange::new(transpose(&even), transpose(&odd))
            .map_err(|e| DegenerationError::MalformedWitness(e.to_string()))?;
        Ok(DegenerationWitness::new(source, target, change, provenance))
    }

    pub fn identity(name: &str, m: usize, n: usize) -> Self {
        DegenerationWitness::new(name, name, GradedBasisChange::identity(m, n), "identity")
    }

    pub fn with_erratum(mut self, note: impl Into<String>) -> Self {
        self.erratum = Some(note.into());
        self
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            source: self.source.clone(),
            target: self.target.clone(),
            even: transpose(&self.change.even_block),
            odd: transpose(&self.change.odd_block),
            provenance: self.provenance.clone(),
            erratum: self.erratum.clone(),
        }
    }

    pub fn from_json(doc: &WitnessJson) -> Result<Self, DegenerationError> {
        for (name, rows) in [("even", &doc.even), ("odd", &doc.odd)] {
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(DegenerationError::MalformedWitness(format!(
                    "{name} block is not square"
                )));
            }
        }
        let mut w = DegenerationWitness::from_rows(
            doc.source.clone(),
            doc.target.clone(),
            doc.even.clone(),
            doc.odd.clone(),
            doc.provenance.clone(),
        )?;
        w.erratum = doc.erratum.clone();
        Ok(w)
    }

    pub fn from_json_str(text: &str) -> Result<Self, DegenerationError> {
        let doc: WitnessJson = serde_json::from_str(text)
            .map_err(|e| DegenerationError::MalformedWitness(e.to_string()))?;
        DegenerationWitness::from_json(&doc)
    }

    /// The constant basis change at `t = t0`, if every entry is defined.
    pub fn evaluate(&self, t0: &Scalar) -> Option<GradedBasisChange<Scalar>> {
        let eval = |b: &Matrix<LaurentPoly>| -> Option<Matrix<Scalar>> {
            b.iter()
                .map(|r| r.iter().map(|x| x.evaluate(t0)).collect::<Option<Vec<_>>>())
                .collect()
        };
        GradedBasisChange::new(eval(&self.change.even_block)?, eval(&self.change.odd_block)?).ok()
    }

    /// The witness whose basis is `E^t k`, i.e. followed by the constant
    /// change `k` of the new basis.
    pub fn then_constant(&self, k: &GradedBasisChange<Scalar>) -> Self {
        let lift = k.map(|c| LaurentPoly::constant(c.clone()));
        let mut out = self.clone();
        out.change = self.change.compose(&lift);
        out
    }
}

/// Outcome of sending `t` to zero.
#[derive(Debug, Clone, PartialEq)]
pub enum Limit {
    Exists(SuperAlgebra),
    /// First entry `(a, b, c)` with a pole at `t = 0`.
    DoesNotExist { entry: (usize, usize, usize) },
}

#[derive(Debug, Clone)]
pub struct TransportResult {
    pub constants: StructureTensor<RationalFunction>,
    pub limit: Limit,
}

impl TransportResult {
    /// Transported constants at `t = t0`; `None` at a pole.
    pub fn evaluate(&self, t0: &Scalar) -> Option<StructureTensor<Scalar>> {
        let mut out = StructureTensor::zero(self.constants.m, self.constants.n);
        for ((a, b, c), f) in self.constants.entries() {
            out.set(a, b, c, f.evaluate(t0)?);
        }
        Some(out)
    }

    /// Nonzero transported products, e.g. `E1F1 = (1/2 t) F1 + F2`.
    pub fn describe(&self, algebra_dims: (usize, usize)) -> Vec<String> {
        let (m, _) = algebra_dims;
        let label = |i: usize| {
            if i < m {
                format!("E{}", i + 1)
            } else {
                format!("F{}", i - m + 1)
            }
        };
        let d = self.constants.dim();
        let mut lines = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let terms: Vec<String> = (0..d)
                    .filter(|&c| !self.constants.get(a, b, c).is_zero())
                    .map(|c| format!("({}) {}", self.constants.get(a, b, c), label(c)))
                    .collect();
                if !terms.is_empty() {
                    lines.push(format!("{}{} = {}", label(a), label(b), terms.join(" + ")));
                }
            }
        }
        lines
    }
}

/// Structure constants of `algebra` in the parametrized basis of `w`.
pub fn transport(
    algebra: &SuperAlgebra,
    w: &DegenerationWitness,
) -> Result<TransportResult, DegenerationError> {
    if w.change.dims() != algebra.dims() {
        return Err(DegenerationError::DimensionMismatch(format!(
            "witness of type {:?} on algebra of type {:?}",
            w.change.dims(),
            algebra.dims()
        )));
    }
    let (de, dodd) = w.change.determinants();
    if de.is_zero() || dodd.is_zero() {
        return Err(DegenerationError::SingularWitness);
    }
    let h: Matrix<RationalFunction> = w
        .change
        .full()
        .iter()
        .map(|r| r.iter().map(RationalFunction::from_laurent).collect())
        .collect();
    let hinv = linalg::invert(&h).ok_or(DegenerationError::SingularWitness)?;
    let constants = algebra
        .tensor()
        .map(|c| RationalFunction::constant(c.clone()))
        .transform(&h, &hinv);
    let mut limit_tensor = StructureTensor::zero(algebra.dims().0, algebra.dims().1);
    let mut missing = None;
    for ((a, b, c), f) in constants.entries() {
        match f.limit_at_zero() {
            Some(v) => limit_tensor.set(a, b, c, v),
            None => {
                missing = Some((a, b, c));
                break;
            }
        }
    }
    let limit = match missing {
        Some(entry) => Limit::DoesNotExist { entry },
        None => Limit::Exists(
            SuperAlgebra::from_tensor(&limit_tensor).map_err(|e: AlgebraError| {
                DegenerationError::MalformedWitness(e.to_string())
            })?,
        ),
    };
    Ok(TransportResult { constants, limit })
}

/// One differing structure constant between a computed limit and the target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantDiff {
    pub product: String,
    pub basis: String,
    pub limit: Scalar,
    pub target: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DegenerationVerdict {
    Verified,
    LimitMissing { entry: (usize, usize, usize) },
    WrongLimit { limit: SuperAlgebra, diff: Vec<ConstantDiff> },
}

impl DegenerationVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, DegenerationVerdict::Verified)
    }

    pub fn status(&self) -> &'static str {
        match self {
            DegenerationVerdict::Verified => "Verified",
            DegenerationVerdict::LimitMissing { .. } => "LimitMissing",
            DegenerationVerdict::WrongLimit { .. } => "WrongLimit",
        }
    }
}

/// Structural differences `limit - target`, listed by product.
pub fn constant_diff(limit: &SuperAlgebra, target: &SuperAlgebra) -> Vec<ConstantDiff> {
    let d = limit.dim();
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let (x, y) = (limit.coeff(a, b, c), target.coeff(a, b, c));
                if x != y {
                    out.push(ConstantDiff {
                        product: format!("{}{}", limit.label(a), limit.label(b)),
                        basis: limit.label(c),
                        limit: x,
                        target: y,
                    });
                }
            }
        }
    }
    out
}

/// Checks that `w` carries `source` to exactly the published constants of
/// `target`.
pub fn verify_degeneration(
    source: &SuperAlgebra,
    target: &SuperAlgebra,
    w: &DegenerationWitness,
) -> Result<DegenerationVerdict, DegenerationError> {
    if source.dims() != target.dims() {
        return Err(DegenerationError::DimensionMismatch(format!(
            "source {:?} and target {:?}",
            source.dims(),
            target.dims()
        )));
    }
    let result = transport(source, w)?;
    Ok(match result.limit {
        Limit::DoesNotExist { entry } => DegenerationVerdict::LimitMissing { entry },
        Limit::Exists(limit) if limit == *target => DegenerationVerdict::Verified,
        Limit::Exists(limit) => {
            let diff = constant_diff(&limit, target);
            DegenerationVerdict::WrongLimit { limit, diff }
        }
    })
}

#[cfg(test)]
mod tests;
