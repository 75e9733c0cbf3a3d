//! Checkable obstructions to degeneration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Parity, SuperAlgebra};
use crate::identities::associativity_failure;
use crate::invariants::{burde_invariant, derivation_dimension, BurdeResult, MAX_BURDE_INDEX};

/// Reductions may wrap one further certificate, never another reduction.
pub const MAX_DEPTH: usize = 2;
pub const MAX_POWER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NonDegenerationCertificate {
    /// `dim (A^r)_parity < dim (B^r)_parity`.
    PowerDim { r: usize, parity: u8 },
    EvenPartReduction { inner: Box<NonDegenerationCertificate> },
    AnnexReduction { inner: Box<NonDegenerationCertificate> },
    /// Both `c_{i,j}` defined and different.
    BurdeMismatch { i: u32, j: u32 },
    /// Source associative, target not.
    AssociativePI,
    /// `dim Der(A) >= dim Der(B)` for non-isomorphic `A`, `B`.
    AutDim,
    /// The pair viewed as ordinary algebras (odd-odd products vanish).
    UngradedReduction { inner: Box<NonDegenerationCertificate> },
    ExternalFact { citation: String },
}

impl NonDegenerationCertificate {
    pub fn even_part(inner: NonDegenerationCertificate) -> Self {
        NonDegenerationCertificate::EvenPartReduction { inner: Box::new(inner) }
    }

    pub fn annex(inner: NonDegenerationCertificate) -> Self {
        NonDegenerationCertificate::AnnexReduction { inner: Box::new(inner) }
    }

    pub fn ungraded(inner: NonDegenerationCertificate) -> Self {
        NonDegenerationCertificate::UngradedReduction { inner: Box::new(inner) }
    }

    pub fn depth(&self) -> usize {
        match self {
            NonDegenerationCertificate::EvenPartReduction { inner }
            | NonDegenerationCertificate::AnnexReduction { inner }
            | NonDegenerationCertificate::UngradedReduction { inner } => 1 + inner.depth(),
            _ => 1,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            NonDegenerationCertificate::PowerDim { .. } => "PowerDim",
            NonDegenerationCertificate::EvenPartReduction { .. } => "EvenPartReduction",
            NonDegenerationCertificate::AnnexReduction { .. } => "AnnexReduction",
            NonDegenerationCertificate::BurdeMismatch { .. } => "BurdeMismatch",
            NonDegenerationCertificate::AssociativePI => "AssociativePI",
            NonDegenerationCertificate::AutDim => "AutDim",
            NonDegenerationCertificate::UngradedReduction { .. } => "UngradedReduction",
            NonDegenerationCertificate::ExternalFact { .. } => "ExternalFact",
        }
    }

    pub fn is_external(&self) -> bool {
        matches!(self, NonDegenerationCertificate::ExternalFact { .. })
    }
}

impl std::fmt::Display for NonDegenerationCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use NonDegenerationCertificate::*;
        match self {
            PowerDim { r, parity } => write!(f, "PowerDim(r={r}, parity={parity})"),
            EvenPartReduction { inner } => write!(f, "EvenPart[{inner}]"),
            AnnexReduction { inner } => write!(f, "Annex[{inner}]"),
            UngradedReduction { inner } => write!(f, "Ungraded[{inner}]"),
            BurdeMismatch { i, j } => write!(f, "BurdeMismatch({i},{j})"),
            AssociativePI => write!(f, "AssociativePI"),
            AutDim => write!(f, "AutDim"),
            ExternalFact { citation } => write!(f, "ExternalFact({citation})"),
        }
    }
}

/// A certificate file: `{"source", "target", "kind", ..., "provenance"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub certificate: NonDegenerationCertificate,
    #[serde(default)]
    pub provenance: String,
    /// Disambiguates names shared by several varieties, e.g. `[2, 1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("reduction undefined: {0}")]
    ReductionUndefined(String),
}

/// Quantities computed while checking a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "evidence", rename_all = "snake_case")]
pub enum Evidence {
    PowerDim { r: usize, parity: u8, source: usize, target: usize },
    Burde { source: BurdeResult, target: BurdeResult },
    Associativity {
        source_associative: bool,
        target_associative: bool,
        /// Basis triple where the target fails `(xy)z = x(yz)`.
        #[serde(skip_serializing_if = "Option::is_none")]
        target_failure: Option<[usize; 3]>,
    },
    AutDim { source: usize, target: usize, distinct_entries: bool },
    Reduced { reduction: String, inner: Box<CertificateVerdict> },
    External { citation: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason")]
pub enum VerdictStatus {
    Valid,
    Invalid(String),
    AssertedOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateVerdict {
    pub status: VerdictStatus,
    pub evidence: Evidence,
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        self.status == VerdictStatus::Valid
    }

    /// Re-runs the invariant computations behind the evidence on the same
    /// pair and confirms the stated strict inequality or mismatch.
    pub fn reevaluate(&self, a: &SuperAlgebra, b: &SuperAlgebra) -> bool {
        match &self.evidence {
            Evidence::PowerDim { r, parity, source, target } => {
                let p = Parity::from_index(*parity as usize).expect("checked parity");
                let s = a.power_profile(*r).get(*r, p);
                let t = b.power_profile(*r).get(*r, p);
                s == Some(*source) && t == Some(*target) && source < target
            }
            Evidence::Burde { source, target } => {
                let s = burde_invariant(a, source.i, source.j);
                let t = burde_invariant(b, target.i, target.j);
                s == *source
                    && t == *target
                    && matches!((s.value(), t.value()), (Some(x), Some(y)) if x != y)
            }
            Evidence::Associativity { source_associative, target_associative, target_failure } => {
                associativity_failure(a).is_none() == *source_associative
                    && associativity_failure(b) == *target_failure
                    && *source_associative
                    && !*target_associative
            }
            Evidence::AutDim { source, target, distinct_entries } => {
                let (s, t) = (derivation_dimension(a), derivation_dimension(b));
                s == *source && t == *target && (s > t || (*distinct_entries && s >= t))
            }
            Evidence::Reduced { reduction, inner } => match reduce(a, b, reduction) {
                Ok((ra, rb)) => inner.reevaluate(&ra, &rb),
                Err(_) => false,
            },
            Evidence::External { .. } => self.status == VerdictStatus::AssertedOnly,
        }
    }
}

fn reduce(
    a: &SuperAlgebra,
    b: &SuperAlgebra,
    reduction: &str,
) -> Result<(SuperAlgebra, SuperAlgebra), CertificateError> {
    match reduction {
        "even_part" => Ok((a.even_part(), b.even_part())),
        "annex" => Ok((a.annex(), b.annex())),
        "ungraded" => {
            let lift = |x: &SuperAlgebra| {
                x.forget_grading().map_err(|_| {
                    CertificateError::ReductionUndefined(format!(
                        "{} has nonzero odd-odd products",
                        x.name().unwrap_or("algebra")
                    ))
                })
            };
            Ok((lift(a)?, lift(b)?))
        }
        other => Err(CertificateError::MalformedCertificate(format!("unknown reduction {other}"))),
    }
}

fn verdict(ok: bool, why_not: impl FnOnce() -> String, evidence: Evidence) -> CertificateVerdict {
    CertificateVerdict {
        status: if ok { VerdictStatus::Valid } else { VerdictStatus::Invalid(why_not()) },
        evidence,
    }
}

/// Distinct catalog entries are non-isomorphic; auxiliary algebras built by
/// a reduction carry no such guarantee.
fn distinct_entries(a: &SuperAlgebra, b: &SuperAlgebra) -> bool {
    matches!((a.name(), b.name()), (Some(x), Some(y)) if x != y)
}

fn check_at(
    a: &SuperAlgebra,
    b: &SuperAlgebra,
    c: &NonDegenerationCertificate,
    top_level: bool,
) -> Result<CertificateVerdict, CertificateError> {
    use NonDegenerationCertificate::*;
    if a.dims() != b.dims() {
        return Err(CertificateError::MalformedCertificate(format!(
            "algebras of types {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(match c {
        PowerDim { r, parity } => {
            if !(1..=MAX_POWER).contains(r) || *parity > 1 {
                return Err(CertificateError::MalformedCertificate(format!(
                    "PowerDim needs 1 <= r <= {MAX_POWER} and parity 0 or 1"
                )));
            }
            let p = Parity::from_index(*parity as usize).expect("checked");
            let s = a.power_profile(*r).get(*r, p).expect("depth r");
            let t = b.power_profile(*r).get(*r, p).expect("depth r");
            verdict(
                s < t,
                || format!("dim (J^{r})_{parity} = {s} is not below {t}"),
                Evidence::PowerDim { r: *r, parity: *parity, source: s, target: t },
            )
        }
        BurdeMismatch { i, j } => {
            if !(1..=MAX_BURDE_INDEX).contains(i) || !(1..=MAX_BURDE_INDEX).contains(j) {
                return Err(CertificateError::MalformedCertificate(format!(
                    "Burde indices must lie in 1..={MAX_BURDE_INDEX}"
                )));
            }
            let (s, t) = (burde_invariant(a, *i, *j), burde_invariant(b, *i, *j));
            let ok = matches!((s.value(), t.value()), (Some(x), Some(y)) if x != y);
            let reason = format!("source {s}, target {t}");
            verdict(ok, || reason, Evidence::Burde { source: s, target: t })
        }
        AssociativePI => {
            let sa = associativity_failure(a).is_none();
            let tf = associativity_failure(b);
            verdict(
                sa && tf.is_some(),
                || {
                    format!(
                        "source {}associative, target {}associative",
                        if sa { "" } else { "non-" },
                        if tf.is_none() { "" } else { "non-" }
                    )
                },
                Evidence::Associativity {
                    source_associative: sa,
                    target_associative: tf.is_none(),
                    target_failure: tf,
                },
            )
        }
        AutDim => {
            let (s, t) = (derivation_dimension(a), derivation_dimension(b));
            let distinct = top_level && distinct_entries(a, b);
            verdict(
                s > t || (distinct && s >= t),
                || {
                    if distinct {
                        format!("dim Der {s} < {t}")
                    } else {
                        format!("dim Der {s} vs {t}: needs a strict drop for unnamed algebras")
                    }
                },
                Evidence::AutDim { source: s, target: t, distinct_entries: distinct },
            )
        }
        EvenPartReduction { inner } | AnnexReduction { inner } | UngradedReduction { inner } => {
            if !top_level || inner.depth() > 1 {
                return Err(CertificateError::MalformedCertificate(
                    "reductions may not be nested".into(),
                ));
            }
            let name = match c {
                EvenPartReduction { .. } => "even_part",
                AnnexReduction { .. } => "annex",
                _ => "ungraded",
            };
            let (ra, rb) = reduce(a, b, name)?;
            let inner_verdict = check_at(&ra, &rb, inner, false)?;
            let status = match &inner_verdict.status {
                VerdictStatus::Valid => VerdictStatus::Valid,
                VerdictStatus::Invalid(why) => VerdictStatus::Invalid(format!("{name}: {why}")),
                VerdictStatus::AssertedOnly => VerdictStatus::AssertedOnly,
            };
            CertificateVerdict {
                status,
                evidence: Evidence::Reduced { reduction: name.into(), inner: Box::new(inner_verdict) },
            }
        }
        ExternalFact { citation } => CertificateVerdict {
            status: VerdictStatus::AssertedOnly,
            evidence: Evidence::External { citation: citation.clone() },
        },
    })
}

/// Checks that `c` proves `a` does not degenerate to `b`.
pub fn check_certificate(
    a: &SuperAlgebra,
    b: &SuperAlgebra,
    c: &NonDegenerationCertificate,
) -> Result<CertificateVerdict, CertificateError> {
    if c.depth() > MAX_DEPTH {
        return Err(CertificateError::MalformedCertificate(format!(
            "nesting depth {} exceeds {MAX_DEPTH}",
            c.depth()
        )));
    }
    check_at(a, b, c, true)
}

fn toolkit() -> Vec<NonDegenerationCertificate> {
    use NonDegenerationCertificate::*;
    let mut out = Vec::new();
    for r in 1..=MAX_POWER {
        for parity in 0..=1 {
            out.push(PowerDim { r, parity });
        }
    }
    out.push(AutDim);
    out.push(AssociativePI);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        out.push(BurdeMismatch { i, j });
    }
    out
}

/// First valid certificate from the direct toolkit, then from the even
/// part, annex and ungraded reductions of the pair.
pub fn auto_certify(a: &SuperAlgebra, b: &SuperAlgebra) -> Option<NonDegenerationCertificate> {
    let direct = toolkit();
    let wrappers: [fn(NonDegenerationCertificate) -> NonDegenerationCertificate; 3] = [
        NonDegenerationCertificate::even_part,
        NonDegenerationCertificate::annex,
        NonDegenerationCertificate::ungraded,
    ];
    let candidates = direct
        .iter()
        .cloned()
        .chain(wrappers.iter().flat_map(|w| direct.iter().cloned().map(w)));
    for c in candidates {
        if let Ok(v) = check_certificate(a, b, &c) {
            if v.is_valid() {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_from_table;
    use crate::arith::Scalar;
    use NonDegenerationCertificate::*;

    fn one() -> Scalar {
        Scalar::one()
    }

    fn half() -> Scalar {
        Scalar::new(1, 2)
    }

    fn s3_2() -> SuperAlgebra {
        algebra_from_table("S_2^3", 1, 2, &[("f1", "f2", &[("e1", one())])]).unwrap()
    }

    fn s3_3() -> SuperAlgebra {
        algebra_from_table("S_3^3", 1, 2, &[("e1", "f1", &[("f2", one())])]).unwrap()
    }

    fn s2_2() -> SuperAlgebra {
        algebra_from_table(
            "S_2^2",
            1,
            2,
            &[("e1", "e1", &[("e1", one())]), ("e1", "f1", &[("f1", one())])],
        )
        .unwrap()
    }

    fn s3_5() -> SuperAlgebra {
        algebra_from_table(
            "S_5^3",
            1,
            2,
            &[
                ("e1", "e1", &[("e1", one())]),
                ("e1", "f1", &[("f1", half())]),
                ("e1", "f2", &[("f2", half())]),
            ],
        )
        .unwrap()
    }

    fn s3_6() -> SuperAlgebra {
        algebra_from_table(
            "S_6^3",
            1,
            2,
            &[
                ("e1", "e1", &[("e1", one())]),
                ("e1", "f1", &[("f1", one())]),
                ("e1", "f2", &[("f2", one())]),
            ],
        )
        .unwrap()
    }

    fn s3_7() -> SuperAlgebra {
        algebra_from_table(
            "S_7^3",
            1,
            2,
            &[
                ("e1", "e1", &[("e1", one())]),
                ("e1", "f1", &[("f1", half())]),
                ("e1", "f2", &[("f2", half())]),
                ("f1", "f2", &[("e1", one())]),
            ],
        )
        .unwrap()
    }

    fn two_u() -> SuperAlgebra {
        algebra_from_table(
            "2U_1^s",
            2,
            1,
            &[("e1", "e1", &[("e1", one())]), ("e2", "e2", &[("e2", one())])],
        )
        .unwrap()
    }

    fn s2_1_21() -> SuperAlgebra {
        algebra_from_table(
            "S_1^2",
            2,
            1,
            &[("e1", "e1", &[("e1", one())]), ("e1", "f1", &[("f1", half())])],
        )
        .unwrap()
    }

    fn b2() -> SuperAlgebra {
        algebra_from_table(
            "B_2^s",
            2,
            1,
            &[("e1", "e1", &[("e1", one())]), ("e1", "e2", &[("e2", half())])],
        )
        .unwrap()
    }

    fn check(a: &SuperAlgebra, b: &SuperAlgebra, c: NonDegenerationCertificate) -> CertificateVerdict {
        let v = check_certificate(a, b, &c).unwrap();
        if v.is_valid() {
            assert!(v.reevaluate(a, b), "{c} evidence does not re-evaluate");
        }
        v
    }

    #[test]
    fn power_dimension_examples() {
        let v = check(&s3_3(), &s3_2(), PowerDim { r: 2, parity: 0 });
        assert!(v.is_valid());
        assert_eq!(v.evidence, Evidence::PowerDim { r: 2, parity: 0, source: 0, target: 1 });
        assert!(check(&two_u(), &s2_1_21(), PowerDim { r: 2, parity: 1 }).is_valid());
        assert!(matches!(
            check(&s3_7(), &s3_5(), PowerDim { r: 2, parity: 1 }).status,
            VerdictStatus::Invalid(_)
        ));
    }

    #[test]
    fn reduction_examples() {
        assert!(check(&s2_2(), &s3_2(), NonDegenerationCertificate::annex(PowerDim { r: 2, parity: 0 }))
            .is_valid());
        assert!(check(
            &s2_1_21(),
            &b2(),
            NonDegenerationCertificate::even_part(BurdeMismatch { i: 1, j: 1 })
        )
        .is_valid());
        assert_eq!(
            check_certificate(&s3_7(), &s3_5(), &NonDegenerationCertificate::ungraded(AutDim)),
            Err(CertificateError::ReductionUndefined("S_7^3 has nonzero odd-odd products".into()))
        );
    }

    #[test]
    fn burde_and_associativity() {
        assert!(check(&s2_2(), &s3_6(), BurdeMismatch { i: 1, j: 1 }).is_valid());
        assert!(!check(&s3_5(), &s3_7(), BurdeMismatch { i: 1, j: 1 }).is_valid());
        assert!(check(&two_u(), &b2(), AssociativePI).is_valid());
        assert!(!check(&b2(), &two_u(), AssociativePI).is_valid());
    }

    #[test]
    fn aut_dim_needs_distinct_entries_or_strict_drop() {
        // dim Der: S_2^2 = 2, S_3^3 = 3
        assert!(!check(&s2_2(), &s3_3(), AutDim).is_valid());
        assert!(check(&s3_3(), &s2_2(), AutDim).is_valid());
        let unnamed = s2_2().even_part();
        assert!(!check(&unnamed, &unnamed.clone(), AutDim).is_valid());
    }

    #[test]
    fn external_facts_are_asserted_only() {
        let v = check(&s2_2(), &s3_3(), ExternalFact { citation: "in-text argument".into() });
        assert_eq!(v.status, VerdictStatus::AssertedOnly);
        assert!(v.reevaluate(&s2_2(), &s3_3()));
    }

    #[test]
    fn malformed_certificates() {
        let deep = NonDegenerationCertificate::even_part(NonDegenerationCertificate::annex(AutDim));
        assert!(matches!(
            check_certificate(&s2_2(), &s3_3(), &deep),
            Err(CertificateError::MalformedCertificate(_))
        ));
        assert!(check_certificate(&s2_2(), &s3_3(), &PowerDim { r: 0, parity: 0 }).is_err());
        assert!(check_certificate(&s2_2(), &s3_3(), &PowerDim { r: 2, parity: 2 }).is_err());
        assert!(check_certificate(&s2_2(), &s3_3(), &BurdeMismatch { i: 5, j: 1 }).is_err());
        assert!(check_certificate(&s2_2(), &b2(), &AutDim).is_err());
    }

    #[test]
    fn json_shape() {
        let text = r#"{"source": "S_3^3", "target": "S_2^3", "kind": "PowerDim", "r": 2, "parity": 0, "provenance": "Table 3"}"#;
        let rec: CertificateRecord = serde_json::from_str(text).unwrap();
        assert_eq!(rec.certificate, PowerDim { r: 2, parity: 0 });
        let nested = r#"{"source": "a", "target": "b", "kind": "AnnexReduction",
            "inner": {"kind": "PowerDim", "r": 2, "parity": 0}}"#;
        let rec: CertificateRecord = serde_json::from_str(nested).unwrap();
        assert_eq!(rec.certificate, NonDegenerationCertificate::annex(PowerDim { r: 2, parity: 0 }));
        let back: CertificateRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn auto_certify_order() {
        assert_eq!(auto_certify(&s3_3(), &s3_2()), Some(PowerDim { r: 2, parity: 0 }));
        // the direct power count already separates this pair
        assert_eq!(auto_certify(&s2_1_21(), &b2()), Some(PowerDim { r: 2, parity: 0 }));
        assert_eq!(auto_certify(&s3_7(), &s3_5()), None);
    }
}
