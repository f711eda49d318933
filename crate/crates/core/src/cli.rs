//! Command-line surface. Every subcommand writes one machine-readable
//! document (JSON by default) to stdout or `--output`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complex::order_complex;
use crate::error::Error;
use crate::homology::{local_betti_with, FieldSpec, HomologyOptions, LocalBettiVector};
use crate::interval::IntervalPoset;
use crate::monoid::{parse_coords, recognize_submonoid, Element, MonoidSpec};
use crate::poincare::{
    default_box, series_closed_form, series_computed, series_diff, BettiMode, MultigradedSeries,
};
use crate::transition::predict;
use crate::verify::{Suite, SuiteReport};

#[derive(Debug, Parser)]
#[command(
    name = "frobenius",
    version,
    about = "Frobenius complexes, their homology and Poincaré series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Monoid: `free:d`, `two:p,q`, `three:p,q,r` or `numsg:p,q`.
    #[arg(long)]
    pub monoid: String,

    /// Element, as comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The open interval (0, λ), or [μ, λ) with --mu.
    Interval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Faces of the order complex of (0, λ); `--format text` lists facets.
    Complex {
        #[command(flatten)]
        target: Target,
    },
    /// Local Betti numbers of λ computed from homology.
    Betti {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "gf2")]
        field: String,
        /// Only report β_i for i <= i_max.
        #[arg(long)]
        i_max: Option<usize>,
        /// Build chains on the whole interval instead of its core.
        #[arg(long)]
        no_core: bool,
        /// Recompute over gf:3 and rational and require agreement.
        #[arg(long)]
        cross_check_fields: bool,
    },
    /// Predicted homotopy type and local Betti numbers of λ.
    Predict {
        #[command(flatten)]
        target: Target,
    },
    /// Truncated multigraded Poincaré series, with the closed form and
    /// their difference for three-generator monoids.
    Poincare {
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 6)]
        i_max: usize,
        /// Inclusive coordinate bounds `m,n[,k]`.
        #[arg(long = "box")]
        bound: Option<String>,
        #[arg(long, default_value = "gf2")]
        field: String,
        /// Use predicted rather than computed Betti numbers.
        #[arg(long)]
        oracle: bool,
    },
    /// Identify the submonoid of N^2 spanned by three vectors `x,y`.
    Recognize {
        #[arg(num_args = 3, required = true)]
        generators: Vec<String>,
    },
    /// Run a verification suite by name or number, or `all`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or invalid request (exit 2).
    Request(Error),
    /// A check the command performs did not hold (exit 1).
    Check(String),
    Io(io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Request(_) => 2,
            Failure::Check(_) | Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Request(e) => write!(f, "error: {e}"),
            Failure::Check(msg) => write!(f, "check failed: {msg}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Request(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn element(t: &Target) -> Result<Element, Error> {
    let spec: MonoidSpec = t.monoid.parse()?;
    spec.element(&parse_coords(&t.lambda)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn coords_text(x: &Element) -> String {
    x.coords()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn betti_doc(b: &LocalBettiVector, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(b).expect("vector serializes")),
        Format::Csv => {
            let mut s = String::from("i,beta\n");
            for (i, v) in b.iter() {
                let _ = writeln!(s, "{i},{v}");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (i, v) in b.iter() {
                let _ = writeln!(s, "beta_{i} = {v}");
            }
            if b.is_zero() {
                s.push_str("all zero\n");
            }
            s
        }
    }
}

fn interval_doc(p: &IntervalPoset, format: Format) -> String {
    match format {
        Format::Json => pretty(&p.to_json()),
        Format::Csv => {
            let mut s = String::from("kind,a,b\n");
            for (i, x) in p.elements().iter().enumerate() {
                let _ = writeln!(s, "element,{i},{}", coords_text(x));
            }
            for [i, j] in p.relations() {
                let _ = writeln!(s, "lt,{i},{j}");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (i, x) in p.elements().iter().enumerate() {
                let _ = writeln!(s, "{i}: {x}");
            }
            for [i, j] in p.relations() {
                let _ = writeln!(s, "{i} < {j}");
            }
            s
        }
    }
}

fn series_csv(label: &str, s: &MultigradedSeries, out: &mut String) {
    for line in s.to_csv().lines().skip(1) {
        let _ = writeln!(out, "{label},{line}");
    }
}

fn poincare_doc(
    computed: &MultigradedSeries,
    closed: Option<&MultigradedSeries>,
    diff: &[crate::poincare::Discrepancy],
    format: Format,
) -> String {
    match format {
        Format::Json => pretty(&json!({
            "computed": computed.to_json(),
            "closed_form": closed.map(MultigradedSeries::to_json),
            "diff": diff,
        })),
        Format::Csv => {
            let mut s = String::from("series,i,lambda,coeff\n");
            series_csv("computed", computed, &mut s);
            if let Some(c) = closed {
                series_csv("closed_form", c, &mut s);
            }
            s
        }
        Format::Text => {
            let mut s = format!("computed: {computed}\n");
            if let Some(c) = closed {
                let _ = writeln!(s, "closed form: {c}");
                if diff.is_empty() {
                    s.push_str("diff: none\n");
                }
                for d in diff {
                    let _ = writeln!(s, "diff: {d}");
                }
            }
            s
        }
    }
}

fn reports_doc(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::Value::Array(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "number": r.suite.number(),
                        "passed": r.passed(),
                        "checks": r.checks,
                        "failures": r.failures,
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut s = String::from("number,suite,passed,checks,failures\n");
            for r in reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.suite.number(),
                    r.suite,
                    r.passed(),
                    r.checks,
                    r.failures.len()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{r}");
                for f in &r.failures {
                    let _ = writeln!(s, "    {f}");
                }
            }
            s
        }
    }
}

/// Runs one command, returning the document to print. A failed check
/// still produces its document; it is returned alongside the failure.
pub fn execute(cli: &Cli) -> Result<(String, Option<Failure>), Failure> {
    let format = cli.format;
    Ok(match &cli.command {
        Command::Interval { target, mu } => {
            let lambda = element(target)?;
            let p = match mu {
                None => IntervalPoset::open(&lambda)?,
                Some(mu) => {
                    IntervalPoset::half_open(&lambda.spec().element(&parse_coords(mu)?)?, &lambda)?
                }
            };
            (interval_doc(&p, format), None)
        }
        Command::Complex { target } => {
            let c = order_complex(&IntervalPoset::open(&element(target)?)?);
            let doc = match format {
                Format::Json => pretty(&c.to_json()),
                Format::Text => c.to_facet_text(),
                Format::Csv => {
                    let mut s = String::from("dim,face\n");
                    for (d, faces) in c.faces_by_dim().iter().enumerate() {
                        for f in faces {
                            let v: Vec<String> = f.iter().map(u32::to_string).collect();
                            let _ = writeln!(s, "{d},{}", v.join(" "));
                        }
                    }
                    s
                }
            };
            (doc, None)
        }
        Command::Betti {
            target,
            field,
            i_max,
            no_core,
            cross_check_fields,
        } => {
            let lambda = element(target)?;
            let field: FieldSpec = field.parse()?;
            let opts = |field| HomologyOptions {
                field,
                core: !no_core,
            };
            let b = local_betti_with(&lambda, &opts(field), *i_max)?;
            let mut failure = None;
            if *cross_check_fields {
                for other in [FieldSpec::Prime(3), FieldSpec::Rational] {
                    let c = local_betti_with(&lambda, &opts(other), *i_max)?;
                    if c != b {
                        failure = Some(Failure::Check(format!(
                            "Betti numbers over {other} ({}) differ from {field}",
                            serde_json::to_string(&c).expect("vector serializes")
                        )));
                    }
                }
            }
            (betti_doc(&b, format), failure)
        }
        Command::Predict { target } => {
            let p = predict(&element(target)?)?;
            let doc = match format {
                Format::Json => pretty(
                    &json!({ "homotopy": p.homotopy, "label": p.homotopy.to_string(), "betti": p.betti }),
                ),
                Format::Text => format!("{}\n{}", p.homotopy, betti_doc(&p.betti, Format::Text)),
                Format::Csv => format!("# {}\n{}", p.homotopy, betti_doc(&p.betti, Format::Csv)),
            };
            (doc, None)
        }
        Command::Poincare {
            monoid,
            i_max,
            bound,
            field,
            oracle,
        } => {
            let spec: MonoidSpec = monoid.parse()?;
            let bound = match bound {
                Some(b) => parse_coords(b)?,
                None => default_box(spec, *i_max),
            };
            let mode = if *oracle {
                BettiMode::Oracle
            } else {
                BettiMode::Homology(field.parse()?)
            };
            let computed = series_computed(spec, *i_max, &bound, mode)?;
            let closed = match spec {
                MonoidSpec::ThreeGen { .. } => Some(series_closed_form(spec, *i_max, &bound)?),
                _ => None,
            };
            let diff = match &closed {
                Some(c) => series_diff(&computed, c)?,
                None => Vec::new(),
            };
            let failure = (!diff.is_empty()).then(|| {
                Failure::Check(format!("{} terms differ from the closed form", diff.len()))
            });
            (
                poincare_doc(&computed, closed.as_ref(), &diff, format),
                failure,
            )
        }
        Command::Recognize { generators } => {
            let mut gens = [[0u64; 2]; 3];
            for (slot, g) in gens.iter_mut().zip(generators) {
                let c = parse_coords(g)?;
                if c.len() != 2 {
                    return Err(Error::Arity {
                        expected: 2,
                        got: c.len(),
                    }
                    .into());
                }
                *slot = [c[0], c[1]];
            }
            let r = recognize_submonoid(gens)?;
            let doc = match format {
                Format::Json => pretty(&serde_json::to_value(&r).expect("recognition serializes")),
                Format::Csv => format!("p,q,r,order\n{},{},{},{:?}\n", r.p, r.q, r.r, r.order),
                Format::Text => format!("({},{},{}) order {:?}\n", r.p, r.q, r.r, r.order),
            };
            (doc, None)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let reports = suites
                .iter()
                .map(|s| s.run())
                .collect::<Result<Vec<_>, _>>()?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.suite.to_string())
                .collect();
            let failure = (!failed.is_empty())
                .then(|| Failure::Check(format!("suites failed: {}", failed.join(", "))));
            (reports_doc(&reports, format), failure)
        }
    })
}

/// Runs `cli`, writes its document and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let result = execute(cli).and_then(|(doc, failure)| {
        match &cli.output {
            Some(path) => File::create(path)?.write_all(doc.as_bytes())?,
            None => io::stdout().lock().write_all(doc.as_bytes())?,
        }
        Ok(failure)
    });
    match result {
        Ok(None) => 0,
        Ok(Some(f)) | Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(args: &[&str]) -> Result<(String, Option<Failure>), Failure> {
        let cli =
            Cli::try_parse_from(std::iter::once("frobenius").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn betti_wedge() {
        let (out, fail) = doc(&["betti", "--monoid", "three:1,1,2", "--lambda", "0,0,4"]).unwrap();
        assert!(fail.is_none());
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({"4": 2}));
    }

    #[test]
    fn predict_generator() {
        let (out, _) = doc(&["predict", "--monoid", "two:2,2", "--lambda", "1,0"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["homotopy"], json!({"type": "sphere", "dim": -1}));
        assert_eq!(v["betti"], json!({"1": 1}));
    }

    #[test]
    fn recognize_text() {
        let (out, _) = doc(&["--format", "text", "recognize", "2,1", "1,2", "1,1"]).unwrap();
        assert!(out.starts_with("(1,1,3)"), "{out}");
    }

    #[test]
    fn malformed_spec_is_a_request_error() {
        let err = doc(&["betti", "--monoid", "three:1,x,2", "--lambda", "0,0,4"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = doc(&["betti", "--monoid", "two:2,2", "--lambda", "1,2,3"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn cross_checked_fields_agree() {
        let (_, fail) = doc(&[
            "betti",
            "--monoid",
            "two:2,2",
            "--lambda",
            "1,4",
            "--cross-check-fields",
        ])
        .unwrap();
        assert!(fail.is_none());
    }
}
