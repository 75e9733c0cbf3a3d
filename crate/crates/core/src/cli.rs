//! Command-line front end. `run` parses arguments, dispatches and returns
//! a report carrying the rendered output and the process exit code.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraJson, SuperAlgebra};
use crate::catalog::{parse_variety, Catalog, Variety};
use crate::certificates::{check_certificate, CertificateRecord, VerdictStatus};
use crate::degeneration::{transport, verify_degeneration, DegenerationVerdict, DegenerationWitness, WitnessJson};
use crate::graph::{assemble_catalog, component_errata, components, emit_dot, to_json, DotMode, GraphError};
use crate::identities::check_jordan_super;
use crate::invariants::invariant_profile;
use crate::reproduce::{reproduce, ReproduceOptions, DEFAULT_SEARCH_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ASSERTED: i32 = 2;
pub const EXIT_GRAPH: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, Serialize)]
pub struct VerdictLine {
    pub subject: String,
    pub status: String,
    pub evidence: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdicts: Vec<VerdictLine>,
    pub exit_code: i32,
    /// Rendered stdout.
    #[serde(skip)]
    pub output: String,
    /// Rendered stderr.
    #[serde(skip)]
    pub errors: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Primary,
    Closure,
}

#[derive(Debug, Parser)]
#[command(name = "degenlab", version, about = "Exact checks for degenerations of Jordan superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the super Jordan identity (catalog name or algebra JSON file).
    CheckJordan {
        algebra: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Print power profile, derivation dimension, associativity and Burde values.
    Invariants {
        algebra: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Verify a degeneration witness file against the catalog.
    VerifyDeg {
        witness: PathBuf,
        /// Source algebra JSON instead of the catalog entry.
        #[arg(long)]
        source_file: Option<PathBuf>,
        /// Target algebra JSON instead of the catalog entry.
        #[arg(long)]
        target_file: Option<PathBuf>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Check a non-degeneration certificate file.
    VerifyNondeg {
        certificate: PathBuf,
        /// Accept ExternalFact certificates (exit 0 instead of 2).
        #[arg(long)]
        allow_external: bool,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Assemble the degeneration graph of a variety.
    Graph {
        #[arg(long, value_parser = variety_arg)]
        variety: Variety,
        #[arg(long, value_enum, default_value_t = Mode::Primary)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Rigid algebras and irreducible components of a variety.
    Components {
        #[arg(long, value_parser = variety_arg)]
        variety: Variety,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Inspect or export the shipped data.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Re-run every check on the shipped data.
    ReproducePaper {
        /// Restrict to one variety.
        #[arg(long, value_parser = variety_arg)]
        variety: Option<Variety>,
        /// Treat documented errata as failures.
        #[arg(long)]
        no_expect_errata: bool,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u32,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_parser = variety_arg)]
        variety: Option<Variety>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
    Export {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn variety_arg(s: &str) -> Result<Variety, String> {
    parse_variety(s).ok_or_else(|| format!("expected m,n, got {s:?}"))
}

/// Input or data problem; maps to exit 65.
struct DataError(String);

impl<E: std::fmt::Display> From<E> for DataError {
    fn from(e: E) -> Self {
        DataError(e.to_string())
    }
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            verdicts: Vec::new(),
            exit_code: EXIT_OK,
            output: String::new(),
            errors: String::new(),
        }
    }

    fn push(&mut self, subject: impl Into<String>, status: impl Into<String>, evidence: Value) {
        self.verdicts.push(VerdictLine {
            subject: subject.into(),
            status: status.into(),
            evidence,
        });
    }

    /// Renders verdicts: JSON with lists sorted, or one line each.
    fn render(&mut self, format: Format) {
        if format == Format::Json {
            self.verdicts.sort_by(|a, b| a.subject.cmp(&b.subject));
            self.output = serde_json::to_string_pretty(self).expect("serializable") + "\n";
        } else {
            for v in &self.verdicts {
                let ev = match &v.evidence {
                    Value::Null => String::new(),
                    Value::String(s) => format!(": {s}"),
                    other => format!(": {other}"),
                };
                self.output.push_str(&format!("{} {}{}\n", v.subject, v.status, ev));
            }
        }
    }
}

fn read(path: &Path) -> Result<String, DataError> {
    std::fs::read_to_string(path).map_err(|e| DataError(format!("{}: {e}", path.display())))
}

fn load_algebra_file(path: &Path) -> Result<SuperAlgebra, DataError> {
    let doc: AlgebraJson = serde_json::from_str(&read(path)?).map_err(|e| DataError(format!("{}: {e}", path.display())))?;
    Ok(doc.to_algebra(true)?)
}

/// A catalog name, or a path to an algebra JSON file.
fn load_algebra(catalog: &Catalog, spec: &str) -> Result<(String, SuperAlgebra), DataError> {
    let path = Path::new(spec);
    if path.is_file() {
        let a = load_algebra_file(path)?;
        let name = a.name().map(str::to_string).unwrap_or_else(|| spec.to_string());
        return Ok((name, a));
    }
    let e = catalog.get(spec)?;
    Ok((e.name.clone(), e.algebra.clone()))
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let mut r = RunReport::new("usage");
            let text = e.render().to_string();
            if e.use_stderr() {
                r.errors = text;
                r.exit_code = EXIT_USAGE;
            } else {
                r.output = text;
            }
            return r;
        }
    };
    let name = command_name(&cli.command);
    let catalog = match Catalog::load() {
        Ok(c) => c,
        Err(e) => return data_failure(name, DataError(e.to_string())),
    };
    match dispatch(&catalog, cli.command) {
        Ok(r) => r,
        Err(e) => data_failure(name, e),
    }
}

fn data_failure(command: &str, e: DataError) -> RunReport {
    let mut r = RunReport::new(command);
    r.exit_code = EXIT_DATA;
    r.errors = format!("error: {}\n", e.0);
    r
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckJordan { .. } => "check-jordan",
        Command::Invariants { .. } => "invariants",
        Command::VerifyDeg { .. } => "verify-deg",
        Command::VerifyNondeg { .. } => "verify-nondeg",
        Command::Graph { .. } => "graph",
        Command::Components { .. } => "components",
        Command::Catalog { .. } => "catalog",
        Command::ReproducePaper { .. } => "reproduce-paper",
    }
}

fn dispatch(catalog: &Catalog, command: Command) -> Result<RunReport, DataError> {
    let name = command_name(&command);
    let mut r = RunReport::new(name);
    match command {
        Command::CheckJordan { algebra, fmt } => {
            let (subject, a) = load_algebra(catalog, &algebra)?;
            let report = check_jordan_super(&a);
            r.exit_code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
            let status = if report.passed() { "Pass" } else { "Fail" };
            r.push(subject, status, serde_json::to_value(&report.witness)?);
            r.render(fmt.format);
        }
        Command::Invariants { algebra, fmt } => {
            let (subject, a) = load_algebra(catalog, &algebra)?;
            let profile = invariant_profile(&a);
            if fmt.format == Format::Json {
                r.push(subject, "ok", serde_json::to_value(&profile)?);
                r.render(fmt.format);
            } else {
                r.output = format!(
                    "{subject}\n  type ({},{})\n  powers {:?}\n  derivations {}\n  associative {}\n  {}\n  {}\n  {}\n",
                    profile.dims.0,
                    profile.dims.1,
                    profile.power_profile.0,
                    profile.derivation_dim,
                    profile.associative,
                    profile.burde_11,
                    profile.burde_12,
                    profile.burde_22
                );
                r.push(subject, "ok", Value::Null);
            }
        }
        Command::VerifyDeg { witness, source_file, target_file, fmt } => {
            let doc: WitnessJson = serde_json::from_str(&read(&witness)?)?;
            let mut doc = doc;
            doc.source = crate::catalog::normalize_name(&doc.source);
            doc.target = crate::catalog::normalize_name(&doc.target);
            let w = DegenerationWitness::from_json(&doc)?;
            let var = w.change.dims();
            let source = match &source_file {
                Some(p) => load_algebra_file(p)?,
                None => catalog.get_in(var, &w.source)?.algebra.clone(),
            };
            let target = match &target_file {
                Some(p) => load_algebra_file(p)?,
                None => catalog.get_in(var, &w.target)?.algebra.clone(),
            };
            let verdict = verify_degeneration(&source, &target, &w)?;
            let subject = format!("{} -> {}", w.source, w.target);
            let evidence = match &verdict {
                DegenerationVerdict::Verified => {
                    let t = transport(&source, &w)?;
                    json!({ "transported": t.describe(var) })
                }
                DegenerationVerdict::LimitMissing { entry } => json!({ "pole_at": entry }),
                DegenerationVerdict::WrongLimit { limit, diff } => {
                    json!({ "limit": limit.to_json_value(), "diff": diff })
                }
            };
            r.exit_code = if verdict.is_verified() { EXIT_OK } else { EXIT_FAIL };
            r.push(subject, verdict.status(), evidence);
            r.render(fmt.format);
        }
        Command::VerifyNondeg { certificate, allow_external, fmt } => {
            let mut rec: CertificateRecord = serde_json::from_str(&read(&certificate)?)?;
            rec.source = crate::catalog::normalize_name(&rec.source);
            rec.target = crate::catalog::normalize_name(&rec.target);
            let (a, b) = catalog.resolve_certificate(&rec)?;
            let verdict = check_certificate(&a.algebra, &b.algebra, &rec.certificate)?;
            let (status, code) = match &verdict.status {
                VerdictStatus::Valid => ("Valid".to_string(), EXIT_OK),
                VerdictStatus::AssertedOnly => {
                    ("AssertedOnly".to_string(), if allow_external { EXIT_OK } else { EXIT_ASSERTED })
                }
                VerdictStatus::Invalid(reason) => (format!("Invalid ({reason})"), EXIT_FAIL),
            };
            r.exit_code = code;
            r.push(format!("{} -/-> {}", rec.source, rec.target), status, serde_json::to_value(&verdict.evidence)?);
            r.render(fmt.format);
        }
        Command::Graph { variety, mode, format } => match assemble_catalog(catalog, variety) {
            Ok(g) => {
                let mode = match mode {
                    Mode::Primary => DotMode::Primary,
                    Mode::Closure => DotMode::Closure,
                };
                r.output = match format {
                    Format::Json => serde_json::to_string_pretty(&to_json(&g, mode))? + "\n",
                    Format::Dot | Format::Text => emit_dot(&g, mode),
                };
                r.push(format!("{},{}", variety.0, variety.1), "Consistent", Value::Null);
            }
            Err(e) => graph_failure(&mut r, variety, e)?,
        },
        Command::Components { variety, format } => match assemble_catalog(catalog, variety) {
            Ok(g) => match components(&g) {
                Ok(report) => {
                    let errata = component_errata(&report);
                    if format == Format::Json {
                        let doc = json!({ "variety": variety, "rigid_set": report.rigid_set,
                            "components": report.components, "errata": errata });
                        r.output = serde_json::to_string_pretty(&doc)? + "\n";
                    } else {
                        r.output.push_str(&format!("rigid: {}\n", report.rigid_set.join(", ")));
                        for c in &report.components {
                            r.output.push_str(&format!("closure({}) = {{{}}}\n", c.rigid, c.members.join(", ")));
                        }
                        for d in &errata {
                            r.output.push_str(&format!(
                                "erratum {} ({}): printed list lacks {:?}, has extra {:?}\n",
                                d.label, d.rigid, d.missing_from_printed, d.not_in_closure
                            ));
                        }
                    }
                    r.push(format!("{},{}", variety.0, variety.1), "ok", Value::Null);
                }
                Err(e) => graph_failure(&mut r, variety, e)?,
            },
            Err(e) => graph_failure(&mut r, variety, e)?,
        },
        Command::Catalog { action } => match action {
            CatalogAction::List { variety, fmt } => {
                let entries: Vec<_> = match variety {
                    Some(v) => catalog.list(v),
                    None => catalog.entries().iter().collect(),
                };
                for e in entries {
                    let ev = json!({ "variety": e.variety, "aut_dim": e.expected_aut_dim, "type": e.expected_type });
                    r.push(e.qualified_name(), e.table.clone(), ev);
                }
                r.render(fmt.format);
            }
            CatalogAction::Show { name, json } => {
                let e = catalog.get(&name)?;
                if json {
                    let mut v = e.algebra.to_json_value();
                    v["name"] = Value::String(e.name.clone());
                    r.output = serde_json::to_string_pretty(&v)? + "\n";
                } else {
                    r.output.push_str(&format!("{} ({}), type ({},{})\n", e.name, e.table, e.variety.0, e.variety.1));
                    for (a, b, terms) in e.algebra.nonzero_products() {
                        let rhs: Vec<String> = terms.iter().map(|(c, v)| format!("({v}) {}", e.algebra.label(*c))).collect();
                        r.output.push_str(&format!("  {}{} = {}\n", e.algebra.label(a), e.algebra.label(b), rhs.join(" + ")));
                    }
                }
                r.push(e.qualified_name(), "ok", Value::Null);
            }
            CatalogAction::Export { dir } => {
                let files = catalog.export(&dir)?;
                r.output = format!("wrote {} files to {}\n", files.len(), dir.display());
                r.push(dir.display().to_string(), "ok", json!(files.len()));
            }
        },
        Command::ReproducePaper { variety, no_expect_errata, search_bound, fmt } => {
            let opts = ReproduceOptions {
                varieties: variety.map(|v| vec![v]).unwrap_or_else(|| ReproduceOptions::default().varieties),
                expect_errata: !no_expect_errata,
                search_bound,
            };
            let suites = reproduce(catalog, &opts);
            r.exit_code = if suites.iter().all(|s| s.passed) { EXIT_OK } else { EXIT_FAIL };
            if fmt.format == Format::Json {
                for s in &suites {
                    r.push(s.suite.clone(), if s.passed { "pass" } else { "fail" }, serde_json::to_value(s)?);
                }
                r.render(Format::Json);
            } else {
                for s in &suites {
                    r.output.push_str(&format!("{} {}: {}\n", if s.passed { "PASS" } else { "FAIL" }, s.suite, s.summary));
                    for f in &s.failures {
                        r.output.push_str(&format!("    failure: {f}\n"));
                    }
                    for e in &s.errata {
                        r.output.push_str(&format!("    erratum: {e}\n"));
                    }
                    r.push(s.suite.clone(), if s.passed { "pass" } else { "fail" }, Value::Null);
                }
                let summary: Vec<&str> = suites.iter().map(|s| s.summary.as_str()).collect();
                r.output.push_str(&format!("summary: {}\n", summary.join("; ")));
            }
        }
    }
    Ok(r)
}

fn graph_failure(r: &mut RunReport, variety: Variety, e: GraphError) -> Result<(), DataError> {
    match e {
        GraphError::Catalog(c) => Err(DataError(c.to_string())),
        e => {
            r.exit_code = EXIT_GRAPH;
            let status = match &e {
                GraphError::Inconsistent { .. } => "Inconsistent",
                GraphError::Undecided { .. } => "Undecided",
                GraphError::CoverFailure(_) => "CoverFailure",
                GraphError::InvalidWitness { .. } => "InvalidWitness",
                GraphError::InvalidCertificate { .. } => "InvalidCertificate",
                GraphError::Catalog(_) => unreachable!(),
            };
            r.errors = format!("error: {e}\n");
            r.push(format!("{},{}", variety.0, variety.1), status, Value::String(e.to_string()));
            Ok(())
        }
    }
}
