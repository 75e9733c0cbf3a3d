//! The degeneration order on a variety: verified edges, certified
//! non-edges, closure, primary (Hasse) edges and irreducible components.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{GradedBasisChange, SuperAlgebra};
use crate::arith::LaurentPoly;
use crate::catalog::{Catalog, CatalogError, Variety};
use crate::certificates::{check_certificate, CertificateRecord, NonDegenerationCertificate, VerdictStatus};
use crate::degeneration::{verify_degeneration, DegenerationWitness};
use crate::invariants::derivation_dimension;

pub const ZERO_PROVENANCE: &str = "zero multiplication";
pub const TRANSITIVE_PROVENANCE: &str = "transitive";
pub const IMPLICIT_PROVENANCE: &str = "implicit";

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("inconsistent pair {from} -> {to}: edge ({edge}) and non-edge ({non_edge})")]
    Inconsistent {
        from: String,
        to: String,
        edge: String,
        non_edge: String,
    },
    #[error("undecided pair {from} -> {to}")]
    Undecided { from: String, to: String },
    #[error("witness {from} -> {to} ({provenance}) does not verify: {status}")]
    InvalidWitness {
        from: String,
        to: String,
        provenance: String,
        status: String,
    },
    #[error("certificate {from} -/-> {to} ({kind}) is invalid: {reason}")]
    InvalidCertificate {
        from: String,
        to: String,
        kind: String,
        reason: String,
    },
    #[error("node {0} lies in no component")]
    CoverFailure(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl GraphError {
    /// The offending ordered pair, when there is one.
    pub fn pair(&self) -> Option<(&str, &str)> {
        match self {
            GraphError::Inconsistent { from, to, .. }
            | GraphError::Undecided { from, to }
            | GraphError::InvalidWitness { from, to, .. }
            | GraphError::InvalidCertificate { from, to, .. } => Some((from, to)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonEdge {
    pub source: String,
    pub target: String,
    pub kind: String,
    pub provenance: String,
    /// The certified pair this one was propagated from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<(String, String)>,
}

/// A shipped witness that fails and was flagged as such in the data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessErratum {
    pub source: String,
    pub target: String,
    pub provenance: String,
    pub status: String,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotMode {
    Primary,
    Closure,
}

#[derive(Debug, Clone)]
struct NonEdgeInfo {
    kind: String,
    provenance: String,
    derived_from: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct DegenerationGraph {
    pub variety: Variety,
    pub nodes: Vec<String>,
    pub derivation_dims: Vec<usize>,
    /// Reflexive-transitive closure of the verified edges.
    reach: Vec<Vec<bool>>,
    edge_provenance: BTreeMap<(usize, usize), String>,
    non_edges: BTreeMap<(usize, usize), NonEdgeInfo>,
    pub witness_errata: Vec<WitnessErratum>,
}

/// Witness `E = tI` sending any algebra to the zero algebra.
pub fn scaling_witness(source: &str, target: &str, m: usize, n: usize) -> DegenerationWitness {
    let t = LaurentPoly::t();
    let block = |k: usize| -> Vec<Vec<LaurentPoly>> {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { t.clone() } else { LaurentPoly::zero() }).collect())
            .collect()
    };
    let change = GradedBasisChange::new(block(m), block(n)).expect("square blocks");
    DegenerationWitness::new(source, target, change, ZERO_PROVENANCE)
}

fn closure(reach: &mut [Vec<bool>]) {
    let n = reach.len();
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
}

impl DegenerationGraph {
    /// A graph from explicit edges only, with no certificates. Derivation
    /// dimensions are used for ranking in DOT output.
    pub fn from_edges(
        variety: Variety,
        nodes: Vec<String>,
        derivation_dims: Vec<usize>,
        edges: &[(usize, usize)],
    ) -> Self {
        let n = nodes.len();
        let mut reach = vec![vec![false; n]; n];
        let mut edge_provenance = BTreeMap::new();
        for &(a, b) in edges {
            reach[a][b] = true;
            edge_provenance.insert((a, b), "given".to_string());
        }
        closure(&mut reach);
        DegenerationGraph {
            variety,
            nodes,
            derivation_dims,
            reach,
            edge_provenance,
            non_edges: BTreeMap::new(),
            witness_errata: Vec::new(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// `a` degenerates to `b` (reflexive).
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    pub fn has_edge(&self, source: &str, target: &str) -> bool {
        match (self.index(source), self.index(target)) {
            (Some(a), Some(b)) => a != b && self.reach[a][b],
            _ => false,
        }
    }

    pub fn has_non_edge(&self, source: &str, target: &str) -> bool {
        match (self.index(source), self.index(target)) {
            (Some(a), Some(b)) => self.non_edges.contains_key(&(a, b)),
            _ => false,
        }
    }

    /// Proper edges of the closed relation.
    pub fn closure_edges(&self) -> Vec<Edge> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.reach[a][b] {
                    out.push(self.edge(a, b));
                }
            }
        }
        out
    }

    fn edge(&self, a: usize, b: usize) -> Edge {
        Edge {
            source: self.nodes[a].clone(),
            target: self.nodes[b].clone(),
            provenance: self
                .edge_provenance
                .get(&(a, b))
                .cloned()
                .unwrap_or_else(|| TRANSITIVE_PROVENANCE.to_string()),
        }
    }

    pub fn non_edges(&self) -> Vec<NonEdge> {
        self.non_edges
            .iter()
            .map(|(&(a, b), info)| NonEdge {
                source: self.nodes[a].clone(),
                target: self.nodes[b].clone(),
                kind: info.kind.clone(),
                provenance: info.provenance.clone(),
                derived_from: info
                    .derived_from
                    .map(|(x, y)| (self.nodes[x].clone(), self.nodes[y].clone())),
            })
            .collect()
    }

    /// First pair (in node order) carrying both an edge and a non-edge.
    pub fn check_consistency(&self) -> Result<(), GraphError> {
        for (&(a, b), info) in &self.non_edges {
            if self.reach[a][b] {
                return Err(GraphError::Inconsistent {
                    from: self.nodes[a].clone(),
                    to: self.nodes[b].clone(),
                    edge: self.edge(a, b).provenance,
                    non_edge: format!("{} ({})", info.kind, info.provenance),
                });
            }
        }
        Ok(())
    }

    /// First ordered pair (in node order) with neither an edge nor a
    /// non-edge.
    pub fn check_completeness(&self) -> Result<(), GraphError> {
        let n = self.nodes.len();
        for a in 0..n {
            for b in 0..n {
                if !self.reach[a][b] && !self.non_edges.contains_key(&(a, b)) {
                    return Err(GraphError::Undecided {
                        from: self.nodes[a].clone(),
                        to: self.nodes[b].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// First proper edge that does not raise the derivation dimension.
    pub fn rank_violation(&self) -> Option<(String, String)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && self.reach[a][b] && self.derivation_dims[a] >= self.derivation_dims[b])
            .map(|(a, b)| (self.nodes[a].clone(), self.nodes[b].clone()))
    }

    fn add_non_edge(&mut self, a: usize, b: usize, info: NonEdgeInfo) {
        self.non_edges.entry((a, b)).or_insert(info);
    }

    /// If `A -/-> C`, `A -> B` and `D -> C`, then `B -/-> D`.
    fn propagate_non_edges(&mut self) {
        let n = self.nodes.len();
        let base: Vec<((usize, usize), NonEdgeInfo)> =
            self.non_edges.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((a, c), info) in base {
            let origin = info.derived_from.unwrap_or((a, c));
            let above: Vec<usize> = (0..n).filter(|&b| self.reach[a][b]).collect();
            let below: Vec<usize> = (0..n).filter(|&d| self.reach[d][c]).collect();
            for &b in &above {
                for &d in &below {
                    if (b, d) != (a, c) {
                        self.add_non_edge(
                            b,
                            d,
                            NonEdgeInfo {
                                kind: info.kind.clone(),
                                provenance: "derived".to_string(),
                                derived_from: Some(origin),
                            },
                        );
                    }
                }
            }
        }
    }
}

/// Builds the decided order on `variety` from witnesses and certificates.
///
/// Witnesses must verify unless they carry an erratum flag, in which case
/// they are recorded and skipped. Certificates must check Valid or
/// AssertedOnly. Edges to the zero algebra are verified with a scaling
/// witness; AutDim and AssociativePI non-edges are added for every pair.
pub fn assemble(
    catalog: &Catalog,
    variety: Variety,
    witnesses: &[DegenerationWitness],
    certificates: &[CertificateRecord],
) -> Result<DegenerationGraph, GraphError> {
    let entries = catalog.list(variety);
    let nodes: Vec<String> = entries.iter().map(|e| e.name.clone()).collect();
    let algebras: Vec<&SuperAlgebra> = entries.iter().map(|e| &e.algebra).collect();
    let derivation_dims = algebras.iter().map(|a| derivation_dimension(a)).collect();
    let mut g = DegenerationGraph::from_edges(variety, nodes, derivation_dims, &[]);
    let n = g.nodes.len();
    let idx = |name: &str| -> Result<usize, GraphError> {
        let e = catalog.get_in(variety, name)?;
        Ok(entries.iter().position(|x| x.name == e.name).expect("listed"))
    };

    let mut direct = Vec::new();
    for w in witnesses {
        let (a, b) = (idx(&w.source)?, idx(&w.target)?);
        let verdict = verify_degeneration(algebras[a], algebras[b], w).map_err(|e| GraphError::InvalidWitness {
            from: w.source.clone(),
            to: w.target.clone(),
            provenance: w.provenance.clone(),
            status: e.to_string(),
        })?;
        if verdict.is_verified() {
            direct.push((a, b));
            g.edge_provenance.entry((a, b)).or_insert_with(|| w.provenance.clone());
        } else if let Some(note) = &w.erratum {
            g.witness_errata.push(WitnessErratum {
                source: w.source.clone(),
                target: w.target.clone(),
                provenance: w.provenance.clone(),
                status: verdict.status().to_string(),
                note: note.clone(),
            });
        } else {
            return Err(GraphError::InvalidWitness {
                from: w.source.clone(),
                to: w.target.clone(),
                provenance: w.provenance.clone(),
                status: verdict.status().to_string(),
            });
        }
    }

    if let Some(z) = catalog.zero_entry(variety) {
        let zi = idx(&z.name)?;
        for a in (0..n).filter(|&a| a != zi) {
            let w = scaling_witness(&g.nodes[a], &z.name, variety.0, variety.1);
            let verdict = verify_degeneration(algebras[a], algebras[zi], &w).map_err(|e| GraphError::InvalidWitness {
                from: g.nodes[a].clone(),
                to: z.name.clone(),
                provenance: ZERO_PROVENANCE.to_string(),
                status: e.to_string(),
            })?;
            assert!(verdict.is_verified(), "scaling always reaches the zero algebra");
            direct.push((a, zi));
            g.edge_provenance.entry((a, zi)).or_insert_with(|| ZERO_PROVENANCE.to_string());
        }
    }
    for (a, b) in direct {
        g.reach[a][b] = true;
    }
    closure(&mut g.reach);

    for c in certificates {
        let (a, b) = (idx(&c.source)?, idx(&c.target)?);
        let invalid = |reason: String| GraphError::InvalidCertificate {
            from: c.source.clone(),
            to: c.target.clone(),
            kind: c.certificate.to_string(),
            reason,
        };
        let verdict = check_certificate(algebras[a], algebras[b], &c.certificate).map_err(|e| invalid(e.to_string()))?;
        match verdict.status {
            VerdictStatus::Valid | VerdictStatus::AssertedOnly => g.add_non_edge(
                a,
                b,
                NonEdgeInfo {
                    kind: c.certificate.kind_name().to_string(),
                    provenance: c.provenance.clone(),
                    derived_from: None,
                },
            ),
            VerdictStatus::Invalid(reason) => return Err(invalid(reason)),
        }
    }

    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            for c in [NonDegenerationCertificate::AutDim, NonDegenerationCertificate::AssociativePI] {
                if check_certificate(algebras[a], algebras[b], &c).is_ok_and(|v| v.is_valid()) {
                    g.add_non_edge(
                        a,
                        b,
                        NonEdgeInfo {
                            kind: c.kind_name().to_string(),
                            provenance: IMPLICIT_PROVENANCE.to_string(),
                            derived_from: None,
                        },
                    );
                    break;
                }
            }
        }
    }

    g.check_consistency()?;
    g.propagate_non_edges();
    g.check_consistency()?;
    g.check_completeness()?;
    Ok(g)
}

/// Assembles a variety from the catalog's own fixtures.
pub fn assemble_catalog(catalog: &Catalog, variety: Variety) -> Result<DegenerationGraph, GraphError> {
    let witnesses: Vec<DegenerationWitness> = catalog.witnesses(variety).into_iter().cloned().collect();
    let certificates: Vec<CertificateRecord> = catalog.certificates(variety).into_iter().cloned().collect();
    assemble(catalog, variety, &witnesses, &certificates)
}

/// Transitive reduction of the proper-edge relation.
pub fn primary_edges(g: &DegenerationGraph) -> Vec<Edge> {
    let n = g.nodes.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !g.reach[a][b] {
                continue;
            }
            let factors = (0..n).any(|c| c != a && c != b && g.reach[a][c] && g.reach[c][b]);
            if !factors {
                out.push(g.edge(a, b));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub rigid: String,
    /// Closure of the rigid node's orbit, in node order.
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub variety: Variety,
    pub components: Vec<Component>,
    pub rigid_set: Vec<String>,
}

impl ComponentReport {
    pub fn component(&self, rigid: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.rigid == rigid)
    }
}

/// Rigid nodes (no incoming proper edge) and their closures.
pub fn components(g: &DegenerationGraph) -> Result<ComponentReport, GraphError> {
    let n = g.nodes.len();
    let rigid: Vec<usize> = (0..n).filter(|&b| !(0..n).any(|a| a != b && g.reach[a][b])).collect();
    let components: Vec<Component> = rigid
        .iter()
        .map(|&r| Component {
            rigid: g.nodes[r].clone(),
            members: (0..n).filter(|&b| g.reach[r][b]).map(|b| g.nodes[b].clone()).collect(),
        })
        .collect();
    if let Some(b) = (0..n).find(|&b| !rigid.iter().any(|&r| g.reach[r][b])) {
        return Err(GraphError::CoverFailure(g.nodes[b].clone()));
    }
    Ok(ComponentReport {
        variety: g.variety,
        rigid_set: rigid.iter().map(|&r| g.nodes[r].clone()).collect(),
        components,
    })
}

/// A component list as printed in the source tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedComponent {
    pub label: &'static str,
    pub rigid: &'static str,
    pub members: &'static [&'static str],
}

const PRINTED_12: &[PrintedComponent] = &[
    PrintedComponent { label: "C1", rigid: "U_1^s", members: &["U_1^s", "C^{1,2}"] },
    PrintedComponent { label: "C2", rigid: "S_1^2", members: &["S_1^2", "S_3^3", "C^{1,2}"] },
    PrintedComponent { label: "C3", rigid: "S_1^3", members: &["S_1^3", "S_3^3", "C^{1,2}"] },
    PrintedComponent { label: "C4", rigid: "S_2^2", members: &["S_2^2", "S_3^3", "S_2^3", "C^{1,2}"] },
    PrintedComponent { label: "C5", rigid: "S_4^3", members: &["S_4^3", "S_3^3", "C^{1,2}"] },
    PrintedComponent { label: "C6", rigid: "S_7^3", members: &["S_5^3", "S_2^3", "C^{1,2}"] },
    PrintedComponent { label: "C7", rigid: "S_8^3", members: &["S_8^3", "S_2^3", "S_6^3", "C^{1,2}"] },
];

const PRINTED_21: &[PrintedComponent] = &[
    PrintedComponent { label: "C1", rigid: "2U_1^s", members: &["2U_1^s", "U_1^s", "B_1^s", "B_3^s", "C^{2,1}"] },
    PrintedComponent { label: "C2", rigid: "B_2^s", members: &["B_2^s", "C^{2,1}"] },
    PrintedComponent {
        label: "C3",
        rigid: "S_1^2+U_1^s",
        members: &["U_1^s", "B_3^s", "S_1^2+U_1^s", "S_1^2", "S_9^3", "C^{2,1}"],
    },
    PrintedComponent {
        label: "C4",
        rigid: "S_2^2+U_1^s",
        members: &["U_1^s", "B_3^s", "S_2^2+U_1^s", "S_2^2", "S_10^3", "C^{2,1}"],
    },
    PrintedComponent { label: "C5", rigid: "S_11^3", members: &["S_11^3", "C^{2,1}"] },
    PrintedComponent { label: "C6", rigid: "S_12^3", members: &["S_12^3", "C^{2,1}"] },
    PrintedComponent { label: "C7", rigid: "S_13^3", members: &["B_3^s", "S_1^2", "S_10^3", "S_13^3", "C^{2,1}"] },
];

/// The published component lists for a variety (empty when none exist).
pub fn printed_components(variety: Variety) -> &'static [PrintedComponent] {
    match variety {
        (1, 2) => PRINTED_12,
        (2, 1) => PRINTED_21,
        _ => &[],
    }
}

const PRINTED_EDGES_12: &[(&str, &str)] = &[
    ("S_1^3", "S_3^3"),
    ("S_1^3", "S_2^3"),
    ("S_1^2", "S_3^3"),
    ("S_4^3", "S_3^3"),
    ("S_2^2", "S_3^3"),
    ("S_7^3", "S_2^3"),
    ("S_7^3", "S_5^3"),
    ("S_8^3", "S_2^3"),
    ("S_8^3", "S_6^3"),
    ("S_2^3", "C^{1,2}"),
    ("U_1^s", "C^{1,2}"),
    ("S_5^3", "C^{1,2}"),
    ("S_6^3", "C^{1,2}"),
    ("S_3^3", "C^{1,2}"),
];

const PRINTED_EDGES_21: &[(&str, &str)] = &[
    ("S_13^3", "S_1^2"),
    ("S_13^3", "S_10^3"),
    ("S_1^2+U_1^s", "S_1^2"),
    ("S_1^2+U_1^s", "S_9^3"),
    ("S_1^2+U_1^s", "U_1^s"),
    ("S_1^2", "B_3^s"),
    ("S_9^3", "B_3^s"),
    ("B_2^s", "C^{2,1}"),
    ("S_11^3", "C^{2,1}"),
    ("S_12^3", "C^{2,1}"),
    ("2U_1^s", "B_1^s"),
    ("2U_1^s", "U_1^s"),
    ("S_2^2+U_1^s", "U_1^s"),
    ("S_2^2+U_1^s", "S_2^2"),
    ("S_2^2+U_1^s", "S_10^3"),
    ("B_1^s", "B_3^s"),
    ("U_1^s", "B_3^s"),
    ("S_2^2", "B_3^s"),
    ("S_10^3", "B_3^s"),
    ("B_3^s", "C^{2,1}"),
];

/// Arrows of the published primary-degeneration pictures.
pub fn printed_primary_edges(variety: Variety) -> &'static [(&'static str, &'static str)] {
    match variety {
        (1, 2) => PRINTED_EDGES_12,
        (2, 1) => PRINTED_EDGES_21,
        _ => &[],
    }
}

/// Printed components known to disagree with the verified order.
pub const KNOWN_COMPONENT_ERRATA: &[(Variety, &str)] = &[((1, 2), "C3"), ((1, 2), "C4"), ((1, 2), "C6")];

/// A published component whose member list differs from recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDiscrepancy {
    pub label: String,
    pub rigid: String,
    /// Recomputed members absent from the printed list.
    pub missing_from_printed: Vec<String>,
    /// Printed members absent from the recomputed closure.
    pub not_in_closure: Vec<String>,
}

/// Compares recomputed closures with the printed lists; any difference
/// is returned as a flagged erratum.
pub fn component_errata(report: &ComponentReport) -> Vec<ComponentDiscrepancy> {
    let mut out = Vec::new();
    for p in printed_components(report.variety) {
        let computed: Vec<String> = report.component(p.rigid).map(|c| c.members.clone()).unwrap_or_default();
        let missing: Vec<String> = computed.iter().filter(|m| !p.members.contains(&m.as_str())).cloned().collect();
        let extra: Vec<String> = p
            .members
            .iter()
            .filter(|m| !computed.iter().any(|c| c == *m))
            .map(|m| m.to_string())
            .collect();
        if !missing.is_empty() || !extra.is_empty() {
            out.push(ComponentDiscrepancy {
                label: p.label.to_string(),
                rigid: p.rigid.to_string(),
                missing_from_printed: missing,
                not_in_closure: extra,
            });
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT text; nodes sharing a derivation dimension share a rank.
pub fn emit_dot(g: &DegenerationGraph, mode: DotMode) -> String {
    let mut out = String::new();
    let title = format!("JS^{{{},{}}}", g.variety.0, g.variety.1);
    writeln!(out, "digraph {} {{", dot_quote(&title)).unwrap();
    if g.nodes.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=TB;\n  node [shape=box, style=rounded];\n");
    let mut ranks: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (name, d) in g.nodes.iter().zip(&g.derivation_dims) {
        ranks.entry(*d).or_default().push(name);
    }
    for (d, names) in &ranks {
        let list: Vec<String> = names.iter().map(|n| dot_quote(n)).collect();
        writeln!(out, "  {{ rank=same; /* der {d} */ {}; }}", list.join("; ")).unwrap();
    }
    let edges = match mode {
        DotMode::Primary => primary_edges(g),
        DotMode::Closure => g.closure_edges(),
    };
    for e in edges {
        writeln!(out, "  {} -> {};", dot_quote(&e.source), dot_quote(&e.target)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeJson {
    pub name: String,
    pub derivation_dim: usize,
    pub rigid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphJson {
    pub variety: Variety,
    pub mode: &'static str,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<Edge>,
    pub non_edges: Vec<NonEdge>,
    pub witness_errata: Vec<WitnessErratum>,
}

/// Machine-readable form; every list is sorted lexicographically.
pub fn to_json(g: &DegenerationGraph, mode: DotMode) -> GraphJson {
    let n = g.nodes.len();
    let mut nodes: Vec<NodeJson> = (0..n)
        .map(|b| NodeJson {
            name: g.nodes[b].clone(),
            derivation_dim: g.derivation_dims[b],
            rigid: !(0..n).any(|a| a != b && g.reach[a][b]),
        })
        .collect();
    nodes.sort_by(|x, y| x.name.cmp(&y.name));
    let mut edges = match mode {
        DotMode::Primary => primary_edges(g),
        DotMode::Closure => g.closure_edges(),
    };
    edges.sort_by(|x, y| (&x.source, &x.target).cmp(&(&y.source, &y.target)));
    let mut non_edges = g.non_edges();
    non_edges.sort_by(|x, y| (&x.source, &x.target).cmp(&(&y.source, &y.target)));
    let mut witness_errata = g.witness_errata.clone();
    witness_errata.sort_by(|x, y| (&x.source, &x.target).cmp(&(&y.source, &y.target)));
    GraphJson {
        variety: g.variety,
        mode: match mode {
            DotMode::Primary => "primary",
            DotMode::Closure => "closure",
        },
        nodes,
        edges,
        non_edges,
        witness_errata,
    }
}
