//! Command-line front end.
//!
//! Subcommands: `classify` (dataset verdicts with certificates),
//! `witness` (single triple of weights), `facets` (boundary inequalities
//! of `c(n, S)`), and `plotdata` (vertices, edges and flagged item points
//! for one concept pair).
//!
//! Exit codes: 0 success (and no expected-label mismatch), 1 input error,
//! 2 size-cap error, 3 expected-label mismatch.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dataset::Dataset;
use crate::measure::build_measure_space;
use crate::polytope::{
    self, ConceptSystem, CorrelationVector, MembershipVerdict, PolytopeError,
};
use crate::facets;
use crate::rational::{format_fraction, format_significant, parse_decimal, to_f64, Rational};
use crate::report::{self, witness_label, ReportError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SIZE_CAP: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "corrpoly",
    version,
    about = "Decide whether measured concept-membership weights admit a classical \
             probability representation, with constructive certificates either way"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable table (decimals at six significant digits)
    Table,
    /// Stable JSON document with exact fractions as strings
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every item of a dataset against the correlation polytope
    Classify {
        /// Items CSV (`pair_id,item_name,mu_a1,mu_a2,mu_and,expected_label`)
        items: Option<PathBuf>,
        /// Pairs CSV (`pair_id,name_a1,name_a2,name_conjunction`); when
        /// given, item pair ids are validated against it
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Use the bundled 96-item reference dataset
        #[arg(long, conflicts_with_all = ["items", "pairs"])]
        bundled: bool,
        /// Restrict the report to one pair id
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test one triple of weights `mu(A1) mu(A2) mu(A1 and A2)` and print
    /// its certificate: a convex decomposition and measure space when
    /// inside, the violated inequality when outside
    Witness {
        p1: String,
        p2: String,
        p12: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the boundary inequalities of the polytope c(n, S)
    Facets {
        /// Number of concepts
        #[arg(long)]
        n: usize,
        /// Measured pairs as `i,j` groups separated by `;`, e.g. `1,2` or
        /// `1,2;1,3;2,3`; omit for no measured conjunctions
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a plot-data document (polytope vertices, edges, flagged item
    /// points) for one concept pair
    Plotdata {
        /// Items CSV; omit with --bundled
        items: Option<PathBuf>,
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["items", "pairs"])]
        bundled: bool,
        /// Pair id to plot
        #[arg(long)]
        pair: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    message: String,
    exit: i32,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit: EXIT_INPUT,
        }
    }
}

impl From<PolytopeError> for Failure {
    fn from(err: PolytopeError) -> Self {
        let exit = match err {
            PolytopeError::TooManyConcepts { .. } | PolytopeError::FacetCapExceeded { .. } => {
                EXIT_SIZE_CAP
            }
            _ => EXIT_INPUT,
        };
        Failure {
            message: err.to_string(),
            exit,
        }
    }
}

impl From<ReportError> for Failure {
    fn from(err: ReportError) -> Self {
        match err {
            ReportError::UnknownPair(_) => Failure::input(err.to_string()),
            ReportError::Polytope(inner) => inner.into(),
        }
    }
}

impl From<crate::dataset::DatasetError> for Failure {
    fn from(err: crate::dataset::DatasetError) -> Self {
        Failure::input(err.to_string())
    }
}

/// Runs a parsed invocation, printing output and diagnostics; returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Classify {
            items,
            pairs,
            bundled,
            pair,
            format,
            out,
        } => cmd_classify(items, pairs, bundled, pair.as_deref(), format)
            .and_then(|(text, exit)| write_output(out.as_deref(), &text).map(|()| exit)),
        Command::Witness {
            p1,
            p2,
            p12,
            format,
            out,
        } => cmd_witness(&p1, &p2, &p12, format)
            .and_then(|text| write_output(out.as_deref(), &text).map(|()| EXIT_OK)),
        Command::Facets {
            n,
            pairs,
            format,
            out,
        } => cmd_facets(n, pairs.as_deref(), format)
            .and_then(|text| write_output(out.as_deref(), &text).map(|()| EXIT_OK)),
        Command::Plotdata {
            items,
            pairs,
            bundled,
            pair,
            out,
        } => cmd_plotdata(items, pairs, bundled, &pair)
            .and_then(|text| write_output(out.as_deref(), &text).map(|()| EXIT_OK)),
    };
    match result {
        Ok(exit) => exit,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.exit
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
    }
}

fn load_dataset(
    items: Option<PathBuf>,
    pairs: Option<PathBuf>,
    bundled: bool,
) -> Result<Dataset, Failure> {
    if bundled {
        return Ok(Dataset::bundled().clone());
    }
    let Some(items_path) = items else {
        return Err(Failure::input(
            "no dataset given: pass an items CSV path or --bundled",
        ));
    };
    let items_text = fs::read_to_string(&items_path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", items_path.display())))?;
    match pairs {
        Some(pairs_path) => {
            let pairs_text = fs::read_to_string(&pairs_path).map_err(|e| {
                Failure::input(format!("cannot read {}: {e}", pairs_path.display()))
            })?;
            Ok(Dataset::parse(&pairs_text, &items_text)?)
        }
        None => Ok(Dataset::parse_items_only(&items_text)?),
    }
}

fn cmd_classify(
    items: Option<PathBuf>,
    pairs: Option<PathBuf>,
    bundled: bool,
    pair: Option<&str>,
    format: Format,
) -> Result<(String, i32), Failure> {
    let dataset = load_dataset(items, pairs, bundled)?;
    let report = report::classify_dataset(&dataset, pair)?;
    let text = match format {
        Format::Table => report.to_table(),
        Format::Structured => pretty_json(&report.to_json()),
    };
    let exit = if report.summary.mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((text, exit))
}

fn parse_weight_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_decimal(text).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn cmd_witness(p1: &str, p2: &str, p12: &str, format: Format) -> Result<String, Failure> {
    let point = CorrelationVector::concept_pair(
        parse_weight_arg("p1", p1)?,
        parse_weight_arg("p2", p2)?,
        parse_weight_arg("p12", p12)?,
    );
    let system = ConceptSystem::concept_pair();
    let verdict = polytope::membership(&point, &system)?;

    match format {
        Format::Structured => {
            let doc = witness_document(&point, &system, &verdict)?;
            Ok(pretty_json(&doc))
        }
        Format::Table => witness_text(&point, &system, &verdict),
    }
}

fn describe(value: &Rational) -> String {
    format!("{} ({})", format_fraction(value), format_significant(value, 6))
}

fn assignment_bits(mask: u32, n: usize) -> String {
    (0..n).map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn witness_text(
    point: &CorrelationVector,
    system: &ConceptSystem,
    verdict: &MembershipVerdict,
) -> Result<String, Failure> {
    let mut out = String::new();
    let coords = point.coords();
    let names = system.coordinate_names();
    out.push_str("point:");
    for (name, value) in names.iter().zip(&coords) {
        out.push_str(&format!(" {name} = {}", describe(value)));
    }
    out.push('\n');
    match verdict {
        MembershipVerdict::Inside {
            on_boundary,
            decomposition,
        } => {
            let boundary = match on_boundary {
                Some(true) => " (on boundary)",
                _ => "",
            };
            out.push_str(&format!("verdict: inside{boundary}\n"));
            out.push_str("decomposition:\n");
            for mask in 0..(1u32 << system.num_concepts()) {
                let weight = decomposition.weight_of(mask);
                out.push_str(&format!(
                    "  lambda({}) = {}\n",
                    assignment_bits(mask, system.num_concepts()),
                    describe(&weight)
                ));
            }
            let space = build_measure_space(decomposition, system)?;
            out.push_str("measure space over {0,1}^2:\n");
            out.push_str(&format!("  P(E1)        = {}\n", describe(&space.concept_measure(1))));
            out.push_str(&format!("  P(E2)        = {}\n", describe(&space.concept_measure(2))));
            out.push_str(&format!(
                "  P(E1 and E2) = {}\n",
                describe(&space.conjunction_measure(1, 2))
            ));
        }
        MembershipVerdict::Outside { witness } => {
            out.push_str("verdict: outside\n");
            out.push_str(&format!("violated: {}\n", witness_label(witness)));
            out.push_str(&format!("amount: {}\n", describe(&witness.violation)));
            let coefficients: Vec<String> =
                witness.coefficients.iter().map(format_fraction).collect();
            out.push_str(&format!(
                "inequality: [{}] . ({}) <= {}\n",
                coefficients.join(", "),
                names.join(", "),
                format_fraction(&witness.bound)
            ));
        }
    }
    Ok(out)
}

fn witness_document(
    point: &CorrelationVector,
    system: &ConceptSystem,
    verdict: &MembershipVerdict,
) -> Result<Value, Failure> {
    let coords = point.coords();
    let point_json: Value = system
        .coordinate_names()
        .iter()
        .zip(&coords)
        .map(|(name, value)| {
            (
                name.clone(),
                json!({"fraction": format_fraction(value), "decimal": to_f64(value)}),
            )
        })
        .collect::<serde_json::Map<String, Value>>()
        .into();
    let mut doc = json!({
        "schema": "corrpoly.witness/1",
        "point": point_json,
        "verdict": if verdict.is_inside() { "inside" } else { "outside" },
        "on_boundary": verdict.on_boundary(),
    });
    match verdict {
        MembershipVerdict::Inside { decomposition, .. } => {
            let lambdas: serde_json::Map<String, Value> = (0..(1u32 << system.num_concepts()))
                .map(|mask| {
                    let weight = decomposition.weight_of(mask);
                    (
                        assignment_bits(mask, system.num_concepts()),
                        json!({"fraction": format_fraction(&weight), "decimal": to_f64(&weight)}),
                    )
                })
                .collect();
            let space = build_measure_space(decomposition, system)?;
            doc["decomposition"] = Value::Object(lambdas);
            doc["measure_space"] = json!({
                "P_E1": format_fraction(&space.concept_measure(1)),
                "P_E2": format_fraction(&space.concept_measure(2)),
                "P_E1_and_E2": format_fraction(&space.conjunction_measure(1, 2)),
            });
        }
        MembershipVerdict::Outside { witness } => {
            doc["witness"] = json!({
                "coefficients": witness.coefficients.iter().map(format_fraction).collect::<Vec<_>>(),
                "bound": format_fraction(&witness.bound),
                "violation": format_fraction(&witness.violation),
                "inequality": witness_label(witness),
            });
        }
    }
    Ok(doc)
}

fn parse_pairs_spec(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let mut pairs = Vec::new();
    for group in text.split(';') {
        let group = group.trim();
        if group.is_empty() {
            continue;
        }
        let parts: Vec<&str> = group.split(',').map(str::trim).collect();
        let [i, j] = parts.as_slice() else {
            return Err(Failure::input(format!(
                "bad pair `{group}`: expected `i,j` with 1-based indices"
            )));
        };
        let parse_index = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Failure::input(format!("bad pair index `{s}`")))
        };
        pairs.push((parse_index(i)?, parse_index(j)?));
    }
    Ok(pairs)
}

fn cmd_facets(n: usize, pairs: Option<&str>, format: Format) -> Result<String, Failure> {
    let pairs = match pairs {
        Some(spec) => parse_pairs_spec(spec)?,
        None => Vec::new(),
    };
    let system = ConceptSystem::new(n, pairs)?;
    let facet_set = facets::enumerate_facets(&system)?;
    match format {
        Format::Table => {
            let mut out = String::new();
            for facet in &facet_set {
                out.push_str(&facet.render(&system));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Structured => {
            let facet_json: Vec<Value> = facet_set
                .iter()
                .map(|facet| {
                    json!({
                        "coefficients": facet.coefficients.iter().map(format_fraction).collect::<Vec<_>>(),
                        "bound": format_fraction(&facet.bound),
                        "rendered": facet.render(&system),
                    })
                })
                .collect();
            let doc = json!({
                "schema": "corrpoly.facets/1",
                "n": n,
                "pairs": system.pairs(),
                "coordinates": system.coordinate_names(),
                "facets": facet_json,
            });
            Ok(pretty_json(&doc))
        }
    }
}

fn cmd_plotdata(
    items: Option<PathBuf>,
    pairs: Option<PathBuf>,
    bundled: bool,
    pair: &str,
) -> Result<String, Failure> {
    let dataset = load_dataset(items, pairs, bundled)?;
    let doc = report::plot_data(&dataset, pair)?;
    Ok(pretty_json(&doc))
}

fn pretty_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (String, i32) {
        // Route output through --out into a temp file to capture it.
        let dir = std::env::temp_dir().join(format!(
            "corrpoly-cli-test-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        let out_path = dir.join("out.txt");
        let mut full: Vec<String> = vec!["corrpoly".into()];
        full.extend(args.iter().map(|s| s.to_string()));
        full.push("--out".into());
        full.push(out_path.to_string_lossy().into_owned());
        let cli = Cli::try_parse_from(&full).unwrap();
        let exit = run(cli);
        let text = std::fs::read_to_string(&out_path).unwrap_or_default();
        let _ = std::fs::remove_dir_all(&dir);
        (text, exit)
    }

    #[test]
    fn witness_outside_names_the_violated_inequality() {
        let (text, exit) = run_to_string(&["witness", "1", "0.575", "0.8421"]);
        assert_eq!(exit, EXIT_OK);
        assert!(text.contains("verdict: outside"));
        assert!(text.contains("violated: p12 <= p2"));
        assert!(text.contains("amount: 2671/10000 (0.2671)"));
    }

    #[test]
    fn witness_inside_prints_decomposition_and_measure() {
        let (text, exit) = run_to_string(&["witness", "0.5", "0.5", "0.25"]);
        assert_eq!(exit, EXIT_OK);
        assert!(text.contains("verdict: inside"));
        assert!(text.contains("lambda(00) = 1/4 (0.25)"));
        assert!(text.contains("lambda(11) = 1/4 (0.25)"));
        assert!(text.contains("P(E1 and E2) = 1/4 (0.25)"));
    }

    #[test]
    fn witness_vertex_is_on_boundary() {
        let (text, exit) = run_to_string(&["witness", "1", "1", "1"]);
        assert_eq!(exit, EXIT_OK);
        assert!(text.contains("verdict: inside (on boundary)"));
        assert!(text.contains("lambda(11) = 1 (1)"));
    }

    #[test]
    fn facets_for_the_concept_pair() {
        let (text, exit) = run_to_string(&["facets", "--n", "2", "--pairs", "1,2"]);
        assert_eq!(exit, EXIT_OK);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().any(|l| l.contains("p1 + p2 - p12 <= 1")));
    }

    #[test]
    fn facet_cap_exit_code() {
        let (_, exit) = run_to_string(&["facets", "--n", "9"]);
        assert_eq!(exit, EXIT_SIZE_CAP);
    }

    #[test]
    fn classify_bundled_has_no_mismatches() {
        let (text, exit) = run_to_string(&["classify", "--bundled"]);
        assert_eq!(exit, EXIT_OK);
        assert!(text.contains("total: 96  inside: 21  outside: 75  mismatches: 0"));
    }

    #[test]
    fn bad_weight_argument_is_an_input_error() {
        let (_, exit) = run_to_string(&["witness", "1", "abc", "0.5"]);
        assert_eq!(exit, EXIT_INPUT);
    }
}
