//! Batch front end: load JSON descriptions, run computations and
//! verification suites, emit deterministic reports.
//!
//! Exit codes: 0 on success, 2 on validation errors (malformed input,
//! unknown names, budget overruns), 3 on verification failures (a route
//! mismatch or a failing suite). Output is byte-identical across runs
//! for identical inputs and seed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use stonework::budget::Budget;
use stonework::doc::SCHEMA_VERSION;
use stonework::ktheory::{coherent_vs_constructible, k_of_locally_coherent, CoeffProfile};
use stonework::lattice::{FinDistLattice, LatticeDoc};
use stonework::motives::{
    booleanization_iso, factor_valuation, MotiveModule, MotiveReportDoc, ValuationData,
};
use stonework::order::PosetDoc;
use stonework::profinite::{motives_vs_continuous, SystemDoc};
use stonework::scissors::{generated_sublattice, grid_lattice, polytope_module, GeometryDoc};
use stonework::sites::{fin_coverage, DownSetDoc, SiteDoc};
use stonework::verify::{run_suite, VerifyConfig, DEFAULT_SEED};
use stonework::Int;

#[derive(Parser)]
#[command(name = "stonework", version, about = "finite Stone duality workbench")]
struct Cli {
    /// Emit aligned plain text instead of pretty JSON.
    #[arg(long, global = true)]
    plain: bool,
    /// Override the enumeration budget (maximum candidate subsets);
    /// the STONEWORK_MAX_SUBSETS environment variable does the same.
    #[arg(long, global = true)]
    max_subsets: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poset of join-irreducibles of a lattice.
    Points { lattice: PathBuf },
    /// Downset lattice of a poset.
    Opens { poset: PathBuf },
    /// All propositional sheaves of a site.
    Sheaves { site: PathBuf },
    /// Smallest propositional sheaf containing a downset.
    Sheafify { site: PathBuf, downset: PathBuf },
    /// Motive module report: rank, basis, universal valuation, ring table.
    Motives { lattice: PathBuf },
    /// Sheaf count of the fin coverage and the principal bijection.
    Basis { lattice: PathBuf },
    /// Booleanization with the induced motive matrix.
    Booleanize { lattice: PathBuf },
    /// Factor a valuation through the universal valuation.
    ValuationFactor {
        lattice: PathBuf,
        valuation: PathBuf,
    },
    /// Per-degree invariant groups, cross-checked along all routes when
    /// the lattice is bounded.
    Ktheory { lattice: PathBuf, profile: PathBuf },
    /// Run a verification suite: one of birkhoff, freeness, sheaf,
    /// valuation, profinite, ktheory-routes, scissors, all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random corpus size (posets, and random lattices derived from
        /// them).
        #[arg(long)]
        random: Option<usize>,
        /// Exhaustive poset size cap.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Polytope module of a grid geometry (full cell lattice, or the
    /// sublattice generated by the listed polytopes).
    Scissors { geometry: PathBuf },
    /// Stage and function-group checks of an inverse system.
    Profinite { system: PathBuf },
}

enum Failure {
    /// Bad input: exit 2.
    Validation(String),
    /// A check that should hold does not: exit 3.
    Verification(String),
}

impl Failure {
    fn validation<E: std::fmt::Display>(e: E) -> Failure {
        Failure::Validation(e.to_string())
    }

    fn emit(&self) -> ExitCode {
        let (kind, message, code) = match self {
            Failure::Validation(m) => ("validation", m, 2),
            Failure::Verification(m) => ("verification", m, 3),
        };
        let doc = json!({
            "schemaVersion": SCHEMA_VERSION,
            "error": { "kind": kind, "message": message },
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("error doc serializes")
        );
        ExitCode::from(code)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.max_subsets {
        Some(n) => Budget::with_candidates(n),
        None => Budget::from_env(),
    };
    match run(&cli.command, &budget) {
        Ok(value) => {
            if cli.plain {
                print!("{}", render_plain(&value));
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("reports serialize")
                );
            }
            ExitCode::SUCCESS
        }
        Err(failure) => failure.emit(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<FinDistLattice, Failure> {
    let doc: LatticeDoc = read_json(path)?;
    doc.into_lattice().map_err(Failure::validation)
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("output serializes")
}

fn small(x: &Int) -> i64 {
    i64::try_from(x).expect("report coordinate fits in i64")
}

fn run(command: &Command, budget: &Budget) -> Result<Value, Failure> {
    match command {
        Command::Points { lattice } => {
            let lattice = load_lattice(lattice)?;
            let points = lattice.birkhoff_points();
            Ok(to_value(&PosetDoc::from_poset(&points)))
        }
        Command::Opens { poset } => {
            let doc: PosetDoc = read_json(poset)?;
            let poset = doc.into_poset().map_err(Failure::validation)?;
            let opens =
                FinDistLattice::birkhoff_opens(&poset, budget).map_err(Failure::validation)?;
            Ok(to_value(&LatticeDoc::from_lattice(&opens)))
        }
        Command::Sheaves { site } => {
            let doc: SiteDoc = read_json(site)?;
            let site = doc.into_site().map_err(Failure::validation)?;
            site.validate().map_err(Failure::validation)?;
            let en = site
                .enumerate_sheaves(budget)
                .map_err(Failure::validation)?;
            let sheaves: Vec<Vec<String>> = en
                .sheaves
                .iter()
                .map(|s| {
                    s.bits()
                        .iter()
                        .map(|e| site.carrier().name(e).to_string())
                        .collect()
                })
                .collect();
            let basis: Option<BTreeMap<String, usize>> = en.basis.map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(e, &i)| (site.carrier().name(e).to_string(), i))
                    .collect()
            });
            Ok(json!({
                "schemaVersion": SCHEMA_VERSION,
                "count": sheaves.len(),
                "sheaves": sheaves,
                "principalBijection": basis,
            }))
        }
        Command::Sheafify { site, downset } => {
            let site_doc: SiteDoc = read_json(site)?;
            let site = site_doc.into_site().map_err(Failure::validation)?;
            site.validate().map_err(Failure::validation)?;
            let downset_doc: DownSetDoc = read_json(downset)?;
            let downset = downset_doc
                .resolve(site.carrier())
                .map_err(Failure::validation)?;
            let sheaf = site.sheafify(&downset);
            let members: Vec<String> = sheaf
                .bits()
                .iter()
                .map(|e| site.carrier().name(e).to_string())
                .collect();
            Ok(json!({ "schemaVersion": SCHEMA_VERSION, "members": members }))
        }
        Command::Motives { lattice } => {
            let lattice = load_lattice(lattice)?;
            let module =
                MotiveModule::new(&lattice).map_err(|e| Failure::Verification(e.to_string()))?;
            module
                .ring_report()
                .map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(to_value(&MotiveReportDoc::from_module(&module)))
        }
        Command::Basis { lattice } => {
            let lattice = load_lattice(lattice)?;
            if lattice.len() > stonework::bits::MAX_UNIVERSE {
                return Err(Failure::Validation(format!(
                    "lattice has {} elements; site carriers support at most {}",
                    lattice.len(),
                    stonework::bits::MAX_UNIVERSE
                )));
            }
            let site = fin_coverage(&lattice);
            let en = site
                .enumerate_sheaves(budget)
                .map_err(Failure::validation)?;
            let ok = en.basis.is_some() && en.sheaves.len() == lattice.len();
            let bijection: Option<BTreeMap<String, usize>> = en.basis.map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(e, &i)| (lattice.label(e).to_string(), i))
                    .collect()
            });
            let value = json!({
                "schemaVersion": SCHEMA_VERSION,
                "latticeSize": lattice.len(),
                "sheafCount": en.sheaves.len(),
                "allPrincipal": bijection.is_some(),
                "principalBijection": bijection,
            });
            if ok {
                Ok(value)
            } else {
                Err(Failure::Verification(format!(
                    "{} sheaves for {} elements",
                    en.sheaves.len(),
                    lattice.len()
                )))
            }
        }
        Command::Booleanize { lattice } => {
            let lattice = load_lattice(lattice)?;
            let (algebra, hom) = lattice.booleanize().map_err(Failure::validation)?;
            let report =
                booleanization_iso(&lattice).map_err(|e| Failure::Verification(e.to_string()))?;
            let map: BTreeMap<String, String> = (0..lattice.len())
                .map(|e| {
                    (
                        lattice.label(e).to_string(),
                        algebra.lattice().label(hom.apply(e)).to_string(),
                    )
                })
                .collect();
            let matrix: Vec<Vec<i64>> = (0..report.matrix.nrows())
                .map(|i| report.matrix.row(i).iter().map(small).collect())
                .collect();
            Ok(json!({
                "schemaVersion": SCHEMA_VERSION,
                "algebra": to_value(&LatticeDoc::from_lattice(algebra.lattice())),
                "map": map,
                "motiveMatrix": matrix,
                "determinant": small(&report.det),
            }))
        }
        Command::ValuationFactor { lattice, valuation } => {
            let lattice = load_lattice(lattice)?;
            let doc: ValuationDoc = read_json(valuation)?;
            let module =
                MotiveModule::new(&lattice).map_err(|e| Failure::Verification(e.to_string()))?;
            let data = doc.resolve(&lattice)?;
            let columns = factor_valuation(&module, &data).map_err(Failure::validation)?;
            let by_point: BTreeMap<String, Vec<i64>> = columns
                .iter()
                .enumerate()
                .map(|(p, col)| {
                    let label = lattice.label(module.point_elements()[p]).to_string();
                    (label, col.iter().map(small).collect())
                })
                .collect();
            Ok(json!({
                "schemaVersion": SCHEMA_VERSION,
                "target": to_value(&data.target),
                "homOnPointBasis": by_point,
            }))
        }
        Command::Ktheory { lattice, profile } => {
            let lattice = load_lattice(lattice)?;
            let profile: CoeffProfile = read_json(profile)?;
            profile.validate().map_err(Failure::validation)?;
            let result = if lattice.has_top() {
                coherent_vs_constructible(&lattice, &profile)
                    .map_err(|e| Failure::Verification(e.to_string()))?
            } else {
                let module = MotiveModule::new(&lattice)
                    .map_err(|e| Failure::Verification(e.to_string()))?;
                k_of_locally_coherent(&module, &profile)
            };
            Ok(to_value(&result))
        }
        Command::Verify {
            suite,
            seed,
            random,
            max,
        } => {
            let mut config = VerifyConfig {
                seed: *seed,
                ..VerifyConfig::default()
            };
            if let Some(random) = random {
                config.random = *random;
            }
            if let Some(max) = max {
                config.max_exhaustive = *max;
            }
            let reports = run_suite(suite, &config).map_err(Failure::Validation)?;
            let passed = reports.iter().all(|r| r.passed());
            let value = json!({
                "schemaVersion": SCHEMA_VERSION,
                "suite": suite,
                "seed": seed,
                "passed": passed,
                "reports": to_value(&reports),
            });
            if passed {
                Ok(value)
            } else {
                let summary: Vec<String> = reports
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| format!("{}: {} of {} failed", r.name, r.failures.len(), r.checked))
                    .collect();
                Err(Failure::Verification(summary.join("; ")))
            }
        }
        Command::Scissors { geometry } => {
            let doc: GeometryDoc = read_json(geometry)?;
            let (geometry, generators) = doc.into_geometry().map_err(Failure::validation)?;
            let lattice = if generators.is_empty() {
                grid_lattice(&geometry).map_err(Failure::validation)?
            } else {
                generated_sublattice(&geometry, &generators).map_err(Failure::validation)?
            };
            let (_, report) =
                polytope_module(&lattice).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok(json!({
                "schemaVersion": SCHEMA_VERSION,
                "cells": geometry.cell_count(),
                "latticeSize": lattice.len(),
                "rank": report.rank,
                "basis": report.basis,
            }))
        }
        Command::Profinite { system } => {
            let doc: SystemDoc = read_json(system)?;
            let system = doc.into_system().map_err(Failure::validation)?;
            let report =
                motives_vs_continuous(&system).map_err(|e| Failure::Verification(e.to_string()))?;
            let value = json!({
                "schemaVersion": SCHEMA_VERSION,
                "stageRanks": report.stage_ranks,
                "motiveRank": report.motive_rank,
                "indicatorUnimodular": report.indicator_unimodular,
                "transitionInjective": report.transition_injective,
                "transitionCompatible": report.transition_compatible,
                "ok": report.ok(),
            });
            if report.ok() {
                Ok(value)
            } else {
                Err(Failure::Verification(format!(
                    "stage checks failed: {report:?}"
                )))
            }
        }
    }
}

/// JSON document for a valuation: target group and per-element values.
#[derive(serde::Deserialize)]
struct ValuationDoc {
    #[serde(
        rename = "schemaVersion",
        default = "stonework::doc::default_schema_version"
    )]
    schema_version: u32,
    target: stonework::abelian::FgAbGroup,
    values: BTreeMap<String, Vec<i64>>,
}

impl ValuationDoc {
    fn resolve(&self, lattice: &FinDistLattice) -> Result<ValuationData, Failure> {
        stonework::doc::validate_schema_version(self.schema_version)
            .map_err(Failure::validation)?;
        let mut values = Vec::with_capacity(lattice.len());
        for e in 0..lattice.len() {
            let label = lattice.label(e);
            let coords = self.values.get(label).ok_or_else(|| {
                Failure::Validation(format!("valuation misses element {label:?}"))
            })?;
            if coords.len() != self.target.dims() {
                return Err(Failure::Validation(format!(
                    "element {label:?} has {} coordinates, the target needs {}",
                    coords.len(),
                    self.target.dims()
                )));
            }
            values.push(
                self.target
                    .reduce(coords.iter().map(|&x| Int::from(x)).collect()),
            );
        }
        Ok(ValuationData {
            target: self.target.clone(),
            values,
        })
    }
}

/// Aligned plain-text rendering of a JSON value: nested keys indent, key
/// columns align per object, leaf lists print inline.
fn render_plain(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (key, inner) in map {
                match inner {
                    Value::Object(_) | Value::Array(_) if !is_scalar_array(inner) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(inner, indent + 1, out);
                    }
                    _ => {
                        out.push_str(&format!("{pad}{key:<width$}  {}\n", scalar_text(inner)));
                    }
                }
            }
        }
        Value::Array(items) => {
            if is_scalar_array(value) {
                out.push_str(&format!("{pad}{}\n", scalar_text(value)));
            } else {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_into(item, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(value))),
    }
}

fn is_scalar_array(value: &Value) -> bool {
    matches!(value, Value::Array(items)
        if items.iter().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))))
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
