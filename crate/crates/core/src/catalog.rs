//! Embedded classification data: algebras, degeneration witnesses and
//! non-degeneration certificates for the (1,2), (2,1) and (0,3) varieties.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraJson;
use crate::algebra::SuperAlgebra;
use crate::certificates::CertificateRecord;
use crate::degeneration::{DegenerationWitness, WitnessJson};

pub const ENV_VAR: &str = "DEGENLAB_CATALOG";
pub const ALGEBRAS_FILE: &str = "algebras.json";
pub const WITNESSES_FILE: &str = "witnesses.json";
pub const CERTIFICATES_FILE: &str = "certificates.json";

const EMBEDDED_ALGEBRAS: &str = include_str!("../data/algebras.json");
const EMBEDDED_WITNESSES: &str = include_str!("../data/witnesses.json");
const EMBEDDED_CERTIFICATES: &str = include_str!("../data/certificates.json");

pub type Variety = (usize, usize);

/// The varieties with shipped data.
pub const VARIETIES: [Variety; 3] = [(1, 2), (2, 1), (0, 3)];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown algebra name {0:?}")]
    UnknownName(String),
    #[error("name {0:?} occurs in several varieties; qualify it as NAME@m,n")]
    AmbiguousName(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid catalog data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraType {
    #[serde(rename = "associative")]
    Associative,
    #[serde(rename = "non-associative")]
    NonAssociative,
}

impl AlgebraType {
    pub fn is_associative(self) -> bool {
        self == AlgebraType::Associative
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntryJson {
    #[serde(flatten)]
    algebra: AlgebraJson,
    expected_aut_dim: usize,
    expected_type: AlgebraType,
    #[serde(default)]
    table: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected_burde: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    burde_erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub variety: Variety,
    pub algebra: SuperAlgebra,
    pub expected_aut_dim: usize,
    pub expected_type: AlgebraType,
    /// Printed `c_{i,j}` column, verbatim.
    pub expected_burde: Option<String>,
    /// Set when the printed Burde column disagrees with recomputation.
    pub burde_erratum: Option<String>,
    pub table: String,
}

impl CatalogEntry {
    pub fn is_zero(&self) -> bool {
        self.algebra.is_zero_algebra()
    }

    /// Name qualified by its variety, e.g. `S_1^2@2,1`.
    pub fn qualified_name(&self) -> String {
        format!("{}@{},{}", self.name, self.variety.0, self.variety.1)
    }

    fn to_json(&self) -> EntryJson {
        let mut algebra = AlgebraJson::from_algebra(&self.algebra);
        algebra.name = Some(self.name.clone());
        EntryJson {
            algebra,
            expected_aut_dim: self.expected_aut_dim,
            expected_type: self.expected_type,
            table: self.table.clone(),
            expected_burde: self.expected_burde.clone(),
            burde_erratum: self.burde_erratum.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Witnesses,
    Certificates,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fixtures {
    Witnesses(Vec<DegenerationWitness>),
    Certificates(Vec<CertificateRecord>),
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    witnesses: Vec<(Variety, DegenerationWitness)>,
    certificates: Vec<(Variety, CertificateRecord)>,
}

/// Normalizes printed notation: `S^3_7`, `S_{7}^{3}` and `S_7^3` all become
/// `S_7^3`; `\oplus` becomes `+`.
pub fn normalize_name(raw: &str) -> String {
    let cleaned: String = raw
        .replace("\\oplus", "+")
        .replace('⊕', "+")
        .replace("\\mathbb{C}", "C")
        .replace('ℂ', "C")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '$')
        .collect();
    cleaned
        .split('+')
        .map(normalize_part)
        .collect::<Vec<_>>()
        .join("+")
}

fn normalize_part(part: &str) -> String {
    let chars: Vec<char> = part.chars().collect();
    let mut i = 0;
    let mut head = String::new();
    while i < chars.len() && chars[i] != '_' && chars[i] != '^' {
        head.push(chars[i]);
        i += 1;
    }
    let (mut sub, mut sup) = (None, None);
    while i < chars.len() {
        let marker = chars[i];
        i += 1;
        let mut value = String::new();
        if i < chars.len() && chars[i] == '{' {
            i += 1;
            while i < chars.len() && chars[i] != '}' {
                value.push(chars[i]);
                i += 1;
            }
            i += 1;
        } else {
            while i < chars.len() && chars[i] != '_' && chars[i] != '^' {
                value.push(chars[i]);
                i += 1;
            }
        }
        if marker == '_' {
            sub = Some(value);
        } else {
            sup = Some(value);
        }
    }
    let mut out = head;
    if let Some(s) = sub {
        out.push('_');
        out.push_str(&s);
    }
    if let Some(s) = sup {
        out.push('^');
        if s.contains(',') {
            out.push_str(&format!("{{{s}}}"));
        } else {
            out.push_str(&s);
        }
    }
    out
}

/// Splits `NAME@m,n` into a name and a variety.
pub fn split_qualified(name: &str) -> (String, Option<Variety>) {
    if let Some((n, v)) = name.rsplit_once('@') {
        if let Some(var) = parse_variety(v) {
            return (normalize_name(n), Some(var));
        }
    }
    (normalize_name(name), None)
}

/// Parses `m,n` (also `(m,n)`).
pub fn parse_variety(text: &str) -> Option<Variety> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = t.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn variety_key(v: Variety) -> [usize; 2] {
    [v.0, v.1]
}

impl Catalog {
    /// The data compiled into the binary.
    pub fn embedded() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| {
            Catalog::from_strs(EMBEDDED_ALGEBRAS, EMBEDDED_WITNESSES, EMBEDDED_CERTIFICATES)
                .expect("embedded catalog is well formed")
        })
    }

    /// The directory named by `DEGENLAB_CATALOG`, or the embedded data.
    pub fn load() -> Result<Catalog, CatalogError> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Catalog::from_dir(Path::new(&dir)),
            _ => Ok(Catalog::embedded().clone()),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Catalog, CatalogError> {
        let read = |f: &str| {
            let path = dir.join(f);
            fs::read_to_string(&path).map_err(|source| CatalogError::Io { path, source })
        };
        Catalog::from_strs(
            &read(ALGEBRAS_FILE)?,
            &read(WITNESSES_FILE)?,
            &read(CERTIFICATES_FILE)?,
        )
    }

    pub fn from_strs(algebras: &str, witnesses: &str, certificates: &str) -> Result<Catalog, CatalogError> {
        let invalid = |what: &str, e: &dyn std::fmt::Display| CatalogError::Invalid(format!("{what}: {e}"));
        let docs: Vec<EntryJson> = serde_json::from_str(algebras).map_err(|e| invalid(ALGEBRAS_FILE, &e))?;
        let mut entries = Vec::with_capacity(docs.len());
        for doc in docs {
            let name = normalize_name(
                doc.algebra
                    .name
                    .as_deref()
                    .ok_or_else(|| CatalogError::Invalid("algebra without a name".into()))?,
            );
            let algebra = doc
                .algebra
                .to_algebra(true)
                .map_err(|e| invalid(&name, &e))?
                .with_name(name.clone());
            let [m, n] = doc.algebra.dims;
            entries.push(CatalogEntry {
                name,
                variety: (m, n),
                algebra,
                expected_aut_dim: doc.expected_aut_dim,
                expected_type: doc.expected_type,
                expected_burde: doc.expected_burde,
                burde_erratum: doc.burde_erratum,
                table: doc.table,
            });
        }
        let mut catalog = Catalog {
            entries,
            witnesses: Vec::new(),
            certificates: Vec::new(),
        };
        for (i, e) in catalog.entries.iter().enumerate() {
            if catalog.entries[..i].iter().any(|p| p.variety == e.variety && p.name == e.name) {
                return Err(CatalogError::Invalid(format!("duplicate entry {}", e.qualified_name())));
            }
        }

        let docs: Vec<WitnessJson> = serde_json::from_str(witnesses).map_err(|e| invalid(WITNESSES_FILE, &e))?;
        for mut doc in docs {
            doc.source = normalize_name(&doc.source);
            doc.target = normalize_name(&doc.target);
            let w = DegenerationWitness::from_json(&doc)
                .map_err(|e| invalid(&format!("witness {} -> {}", doc.source, doc.target), &e))?;
            let var = w.change.dims();
            catalog.get_in(var, &w.source)?;
            catalog.get_in(var, &w.target)?;
            catalog.witnesses.push((var, w));
        }

        let docs: Vec<CertificateRecord> =
            serde_json::from_str(certificates).map_err(|e| invalid(CERTIFICATES_FILE, &e))?;
        for mut rec in docs {
            rec.source = normalize_name(&rec.source);
            rec.target = normalize_name(&rec.target);
            let (a, b) = catalog.resolve_pair(&rec.source, &rec.target, rec.variety.map(|[m, n]| (m, n)))?;
            if a.variety != b.variety {
                return Err(CatalogError::Invalid(format!(
                    "certificate {} -> {} spans two varieties",
                    rec.source, rec.target
                )));
            }
            let var = a.variety;
            catalog.certificates.push((var, rec));
        }
        Ok(catalog)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Looks up a name, optionally qualified as `NAME@m,n`.
    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        let (base, var) = split_qualified(name);
        if let Some(v) = var {
            return self.get_in(v, &base);
        }
        let mut hits = self.entries.iter().filter(|e| e.name == base);
        match (hits.next(), hits.next()) {
            (Some(e), None) => Ok(e),
            (Some(_), Some(_)) => Err(CatalogError::AmbiguousName(base)),
            _ => Err(CatalogError::UnknownName(name.to_string())),
        }
    }

    pub fn get_in(&self, variety: Variety, name: &str) -> Result<&CatalogEntry, CatalogError> {
        let (base, _) = split_qualified(name);
        self.entries
            .iter()
            .find(|e| e.variety == variety && e.name == base)
            .ok_or_else(|| CatalogError::UnknownName(format!("{base}@{},{}", variety.0, variety.1)))
    }

    /// Resolves both ends of a pair, using the shared variety to settle
    /// names that occur more than once.
    pub fn resolve_pair(
        &self,
        source: &str,
        target: &str,
        variety: Option<Variety>,
    ) -> Result<(&CatalogEntry, &CatalogEntry), CatalogError> {
        if let Some(v) = variety {
            return Ok((self.get_in(v, source)?, self.get_in(v, target)?));
        }
        match (self.get(source), self.get(target)) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            (Ok(a), Err(CatalogError::AmbiguousName(_))) => Ok((a, self.get_in(a.variety, target)?)),
            (Err(CatalogError::AmbiguousName(_)), Ok(b)) => Ok((self.get_in(b.variety, source)?, b)),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    /// All entries of a variety, zero algebra included, in table order.
    pub fn list(&self, variety: Variety) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.variety == variety).collect()
    }

    pub fn zero_entry(&self, variety: Variety) -> Option<&CatalogEntry> {
        self.list(variety).into_iter().find(|e| e.is_zero())
    }

    pub fn witnesses(&self, variety: Variety) -> Vec<&DegenerationWitness> {
        self.witnesses.iter().filter(|(v, _)| *v == variety).map(|(_, w)| w).collect()
    }

    pub fn certificates(&self, variety: Variety) -> Vec<&CertificateRecord> {
        self.certificates.iter().filter(|(v, _)| *v == variety).map(|(_, c)| c).collect()
    }

    pub fn fixtures(&self, kind: FixtureKind, variety: Variety) -> Fixtures {
        match kind {
            FixtureKind::Witnesses => Fixtures::Witnesses(self.witnesses(variety).into_iter().cloned().collect()),
            FixtureKind::Certificates => {
                Fixtures::Certificates(self.certificates(variety).into_iter().cloned().collect())
            }
        }
    }

    /// Source and target entries of a witness; the variety is read off the
    /// block sizes.
    pub fn resolve_witness(&self, w: &DegenerationWitness) -> Result<(&CatalogEntry, &CatalogEntry), CatalogError> {
        self.resolve_pair(&w.source, &w.target, Some(w.change.dims()))
    }

    pub fn resolve_certificate(&self, c: &CertificateRecord) -> Result<(&CatalogEntry, &CatalogEntry), CatalogError> {
        self.resolve_pair(&c.source, &c.target, c.variety.map(|[m, n]| (m, n)))
    }

    /// Writes the three aggregate files (loadable by `from_dir`) and one
    /// file per fixture under `algebras/`, `witnesses/`, `certificates/`.
    pub fn export(&self, dir: &Path) -> Result<Vec<PathBuf>, CatalogError> {
        let mut written = Vec::new();
        let mut write = |path: PathBuf, value: &serde_json::Value| -> Result<(), CatalogError> {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(|source| CatalogError::Io { path: parent.to_path_buf(), source })?;
            }
            let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
            fs::write(&path, text).map_err(|source| CatalogError::Io { path: path.clone(), source })?;
            written.push(path);
            Ok(())
        };

        let algebras: Vec<serde_json::Value> = self.entries.iter().map(|e| to_value(&e.to_json())).collect();
        let witnesses: Vec<serde_json::Value> = self.witnesses.iter().map(|(_, w)| to_value(&w.to_json())).collect();
        let certificates: Vec<serde_json::Value> = self
            .certificates
            .iter()
            .map(|(v, c)| {
                let mut c = c.clone();
                c.variety = Some(variety_key(*v));
                to_value(&c)
            })
            .collect();
        write(dir.join(ALGEBRAS_FILE), &serde_json::Value::Array(algebras.clone()))?;
        write(dir.join(WITNESSES_FILE), &serde_json::Value::Array(witnesses.clone()))?;
        write(dir.join(CERTIFICATES_FILE), &serde_json::Value::Array(certificates.clone()))?;

        for (e, v) in self.entries.iter().zip(&algebras) {
            let file = format!("{}_{}.json", file_stem(&e.name), variety_tag(e.variety));
            write(dir.join("algebras").join(file), v)?;
        }
        let mut counters: BTreeMap<Variety, usize> = BTreeMap::new();
        for ((var, w), v) in self.witnesses.iter().zip(&witnesses) {
            let k = counters.entry(*var).or_default();
            *k += 1;
            let file = format!(
                "{}_{:02}_{}_to_{}.json",
                variety_tag(*var),
                k,
                file_stem(&w.source),
                file_stem(&w.target)
            );
            write(dir.join("witnesses").join(file), v)?;
        }
        counters.clear();
        for ((var, c), v) in self.certificates.iter().zip(&certificates) {
            let k = counters.entry(*var).or_default();
            *k += 1;
            let file = format!(
                "{}_{:02}_{}_not_{}.json",
                variety_tag(*var),
                k,
                file_stem(&c.source),
                file_stem(&c.target)
            );
            write(dir.join("certificates").join(file), v)?;
        }
        Ok(written)
    }
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn variety_tag(v: Variety) -> String {
    format!("{}{}", v.0, v.1)
}

/// File-system friendly form of a name: `S_1^2+U_1^s` becomes `S_1_2-U_1_s`.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '^' | ',' => Some('_'),
            '+' => Some('-'),
            '{' | '}' => None,
            c => Some(c),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Scalar;

    fn cat() -> &'static Catalog {
        Catalog::embedded()
    }

    #[test]
    fn names_are_normalized() {
        assert_eq!(normalize_name("S^3_7"), "S_7^3");
        assert_eq!(normalize_name("S_{13}^{3}"), "S_13^3");
        assert_eq!(normalize_name("S_1^2 \\oplus U_1^s"), "S_1^2+U_1^s");
        assert_eq!(normalize_name("\\mathbb{C}^{1,2}"), "C^{1,2}");
        assert_eq!(normalize_name("2U^s_1"), "2U_1^s");
        assert_eq!(split_qualified("S_1^2@2,1"), ("S_1^2".to_string(), Some((2, 1))));
    }

    #[test]
    fn lookups() {
        let s7 = cat().get("S^3_7").unwrap();
        let a = &s7.algebra;
        let (e1, f1, f2) = (0, 1, 2);
        assert_eq!(a.coeff(e1, e1, e1), Scalar::one());
        assert_eq!(a.coeff(e1, f1, f1), Scalar::new(1, 2));
        assert_eq!(a.coeff(e1, f2, f2), Scalar::new(1, 2));
        assert_eq!(a.coeff(f1, f2, e1), Scalar::one());
        assert_eq!(a.coeff(f2, f1, e1), -Scalar::one());
        assert_eq!(a.nonzero_products().len(), 7);

        let b3 = cat().get("B_3^s").unwrap();
        assert_eq!(b3.algebra.nonzero_products().len(), 1);
        assert_eq!(b3.algebra.coeff(0, 0, 1), Scalar::one());

        assert!(matches!(cat().get("nope"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(cat().get("S_1^2"), Err(CatalogError::AmbiguousName(_))));
        assert_eq!(cat().get("S_1^2@2,1").unwrap().variety, (2, 1));
    }

    #[test]
    fn list_sizes() {
        assert_eq!(cat().list((1, 2)).len(), 12);
        assert_eq!(cat().list((2, 1)).len(), 15);
        assert_eq!(cat().list((0, 3)).len(), 1);
        assert!(cat().list((0, 3))[0].is_zero());
        assert_eq!(cat().list((1, 2))[0].name, "U_1^s");
    }

    #[test]
    fn fixture_counts() {
        assert_eq!(cat().witnesses((1, 2)).len(), 10);
        assert_eq!(cat().witnesses((1, 2)).iter().filter(|w| w.erratum.is_some()).count(), 1);
        assert_eq!(cat().witnesses((2, 1)).len(), 18);
        assert_eq!(cat().witnesses((2, 1)).iter().filter(|w| w.erratum.is_some()).count(), 2);
        assert_eq!(cat().certificates((1, 2)).len(), 27);
        assert_eq!(cat().certificates((2, 1)).len(), 29);
        let external = cat().certificates((2, 1)).iter().filter(|c| c.certificate.is_external()).count();
        assert_eq!(external, 8);
    }

    #[test]
    fn export_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let files = cat().export(dir.path()).unwrap();
        assert_eq!(files.len(), 3 + 28 + 28 + 56);
        let back = Catalog::from_dir(dir.path()).unwrap();
        assert_eq!(back.entries, cat().entries);
        assert_eq!(back.witnesses, cat().witnesses);
        let strip = |c: &Catalog| -> Vec<_> {
            c.certificates
                .iter()
                .map(|(v, r)| (*v, r.source.clone(), r.target.clone(), r.certificate.clone()))
                .collect()
        };
        assert_eq!(strip(&back), strip(cat()));
    }
}
