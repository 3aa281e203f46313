//! Command-line front end: every subcommand prints one JSON object on stdout and,
//! unless `--json` is given, a short human summary on stderr.
//!
//! Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mwlink::braid::{delta, delta_normal_form, is_permutation_braid, BraidWord};
use mwlink::checker::{check_a, check_b};
use mwlink::closure::{
    describe_closure, diagram_stats, invariant_signature, lift, rp3_doubled_linking_matrix,
};
use mwlink::lines::{format_lines, is_hopf_config, parse_lines, standardize, verify_script};
use mwlink::mw::{verify_model, ModelParams};
use mwlink::tangent::{self, mw_knot_sample, section, EmitMetadata, Pencil};
use mwlink::torus::{homology_data, torus_braid, TorusParams};
use mwlink::{acceptance, Error, Line};

#[derive(Parser)]
#[command(
    name = "mwlink",
    version,
    about = "Maximally writhed links in real projective space"
)]
struct Cli {
    /// Machine output only: suppress the human summary on stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exponent sum, permutation, flip, half twist and normal form of a braid word.
    Braid {
        /// Word in the form "B3: 1 -2 1".
        #[arg(long)]
        word: String,
        /// Include the normal form `Delta^k * P`.
        #[arg(long)]
        normal_form: bool,
    },
    /// Projective closure of a braid: components, linking and invariant signature.
    Closure {
        #[arg(long)]
        word: String,
    },
    /// Formulas and braid for the projective torus link T(p, q).
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Build and verify a model link from a composition such as 1,1,2.
    Mw {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Rigid isotopy of positively linked lines to the standard configuration.
    Lines {
        #[command(subcommand)]
        action: LinesAction,
    },
    /// Plane sections of the tangent surface of the symmetric knot, or the knot itself.
    Tangent(TangentArgs),
    /// Certify a permutation braid whose closure is a knot with the maximal exponent sum.
    CheckA(CheckArgs),
    /// Certify a positive braid that is a half twist times distinct generators.
    CheckB(CheckArgs),
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum LinesAction {
    /// Emit the isotopy script and its disjointness certificate.
    Standardize {
        /// Input file with one line per row: `P x y z D dx dy dz` or `INF a b c`.
        input: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check pairwise linking, build the script and certify it; prints only the verdict.
    Verify { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum PencilArg {
    /// Planes containing the line `{w = 0}` (d cusps).
    Lprime,
    /// Planes containing the line `{z = 0}` (d - 2 cusps).
    L,
}

impl From<PencilArg> for Pencil {
    fn from(p: PencilArg) -> Self {
        match p {
            PencilArg::Lprime => Pencil::ThroughZLine,
            PencilArg::L => Pencil::ThroughWLine,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Args)]
struct TangentArgs {
    #[arg(long)]
    degree: usize,
    /// Pencil of section planes; without it the knot itself is sampled.
    #[arg(long, value_enum)]
    pencil: Option<PencilArg>,
    /// Pencil angles in radians, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    phi: Vec<f64>,
    #[arg(long, default_value_t = 2048)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; without it the plot goes to stdout and the report to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// File holding one braid word such as "B4: 1 2 1 3 2".
    #[arg(long)]
    braid: PathBuf,
    #[arg(long)]
    degree: usize,
}

/// Failures reported with exit code 1.
#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
    Selftest(Vec<u8>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| Failure::Domain(Error::from(e)))
    };
}

/// A successful run: the JSON result, a human summary and an optional raw payload
/// for stdout that replaces the JSON.
struct Outcome {
    result: Value,
    summary: String,
    raw: Option<String>,
}

impl Outcome {
    fn new(result: Value, summary: impl Into<String>) -> Self {
        Outcome {
            result,
            summary: summary.into(),
            raw: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_value<S: serde::Serialize>(x: &S) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}

fn parse_word(text: &str) -> Result<BraidWord, Failure> {
    domain!(text.trim().parse::<BraidWord>())
}

fn run_braid(word: &str, normal_form: bool) -> Result<Outcome, Failure> {
    let w = parse_word(word)?;
    let half_twist = domain!(delta(w.strands()))?;
    let mut result = json!({
        "word": w.to_string(),
        "strands": w.strands(),
        "exponent_sum": w.exponent_sum(),
        "permutation": w.permutation().images(),
        "tau": w.tau().to_string(),
        "delta": half_twist.to_string(),
        "is_positive": w.is_positive(),
        "is_permutation_braid": is_permutation_braid(&w),
    });
    let mut summary = format!("{w}: e = {}, mu = {}", w.exponent_sum(), w.permutation());
    if normal_form {
        let form = delta_normal_form(&w);
        let factors: Vec<String> = form
            .rest
            .factors()
            .iter()
            .map(ToString::to_string)
            .collect();
        let text = match factors.is_empty() {
            true => format!("Delta^{}", form.power),
            false => format!("Delta^{} * {}", form.power, factors.join("|")),
        };
        summary.push_str(&format!(", normal form {text}"));
        result["normal_form"] = json!({
            "delta_power": form.power,
            "factors": factors,
            "rest": form.rest.to_word().to_string(),
            "text": text,
        });
    }
    Ok(Outcome::new(result, summary))
}

fn run_closure(word: &str) -> Result<Outcome, Failure> {
    let w = parse_word(word)?;
    let descriptor = describe_closure(&w);
    let signature = invariant_signature(&w);
    let result = json!({
        "descriptor": to_value(&descriptor),
        "dlk_rp3": rp3_doubled_linking_matrix(&w).rows(),
        "diagram": to_value(&diagram_stats(&w)),
        "lift": lift(&w).to_string(),
        "signature": to_value(&signature),
    });
    let summary = format!(
        "{w}: {} component(s) of lengths {:?}, lift has {} component(s)",
        descriptor.component_count(),
        descriptor.component_lengths,
        signature.lift_components
    );
    Ok(Outcome::new(result, summary))
}

fn run_torus(p: i64, q: i64) -> Result<Outcome, Failure> {
    let params = domain!(TorusParams::new(p, q))?;
    let summary = mwlink::torus::summarize(params);
    let mut result = to_value(&summary);
    result["homology"] = to_value(&homology_data(params));
    if q >= 1 {
        let w = domain!(torus_braid(q as usize, p))?;
        result["braid"] = json!(w.to_string());
    }
    let cr = summary
        .cr
        .map(|c| c.to_string())
        .unwrap_or_else(|| "n/a".into());
    let text = format!(
        "T({p},{q}): bidegree ({}, {}), {} component(s), cr = {cr}, ps = {}",
        summary.a, summary.b, summary.components, summary.ps
    );
    Ok(Outcome::new(result, text))
}

fn run_mw(parts: Vec<usize>) -> Result<Outcome, Failure> {
    let params = domain!(ModelParams::new(parts))?;
    let model = domain!(verify_model(&params))?;
    let summary = mwlink::mw::summarize(&model);
    let mut result = to_value(&summary);
    result["braid"] = json!(model.braid.to_string());
    let text = format!(
        "W{:?}: degree {}, {} component(s), {} crossings, verified",
        summary.parts, summary.d, summary.components, summary.total_cr
    );
    Ok(Outcome::new(result, text))
}

fn load_lines(path: &Path) -> Result<Vec<Line>, Failure> {
    domain!(parse_lines(&read(path)?))
}

fn run_lines(action: LinesAction) -> Result<Outcome, Failure> {
    match action {
        LinesAction::Standardize { input, out } => {
            let lines = load_lines(&input)?;
            let script = domain!(standardize(&lines))?;
            let cert = domain!(verify_script(&script))?;
            let report = json!({
                "input": format_lines(&lines),
                "script": to_value(&script),
                "certificate": to_value(&cert),
            });
            let summary = format!(
                "{} lines, {} stages, {} pair certificates with {} roots",
                lines.len(),
                script.stages.len(),
                cert.entries.len(),
                cert.total_roots()
            );
            match out {
                Some(path) => {
                    write_file(&path, &serde_json::to_string_pretty(&report).expect("json"))?;
                    Ok(Outcome::new(
                        json!({ "out": path, "stages": script.stages.len() }),
                        summary,
                    ))
                }
                None => Ok(Outcome::new(report, summary)),
            }
        }
        LinesAction::Verify { input } => {
            let lines = load_lines(&input)?;
            let hopf = domain!(is_hopf_config(&lines))?;
            let script = domain!(standardize(&lines))?;
            let cert = domain!(verify_script(&script))?;
            let result = json!({
                "lines": lines.len(),
                "positively_linked": hopf,
                "stages": script.stages.len(),
                "pairs_certified": cert.entries.len(),
                "total_roots": cert.total_roots(),
                "final_equations": script.satisfies_final_equations(),
                "slopes": script.slopes.iter().map(|s| s.as_ref().map(ToString::to_string)).collect::<Vec<_>>(),
            });
            let summary = format!(
                "{} lines certified through {} stages",
                lines.len(),
                script.stages.len()
            );
            Ok(Outcome::new(result, summary))
        }
    }
}

fn run_tangent(args: TangentArgs) -> Result<Outcome, Failure> {
    let pencil = args.pencil.map(Pencil::from);
    let meta = EmitMetadata::new(args.degree, pencil, args.phi.clone(), args.samples);
    let (plot, report) = match pencil {
        None => {
            let sample = domain!(mw_knot_sample::<f64>(args.degree, args.samples))?;
            let plot = match args.format {
                Format::Csv => tangent::sample_csv(&sample),
                Format::Svg => tangent::sample_svg(&sample),
            };
            (plot, json!({ "metadata": to_value(&meta) }))
        }
        Some(p) => {
            if matches!(args.format, Format::Csv) && args.phi.len() != 1 {
                return Err(Failure::Usage("csv output takes exactly one --phi".into()));
            }
            let curves = args
                .phi
                .iter()
                .map(|&phi| domain!(section(args.degree, p, phi, args.samples)))
                .collect::<Result<Vec<_>, _>>()?;
            let plot = match args.format {
                Format::Csv => tangent::section_csv(&curves[0]),
                Format::Svg => tangent::sections_svg(&curves),
            };
            let cusps: Vec<usize> = curves.iter().map(|c| c.cusps.len()).collect();
            (
                plot,
                json!({ "metadata": to_value(&meta), "cusps": cusps, "expected_cusps": p.symmetry_order(args.degree) }),
            )
        }
    };
    let summary = match &report.get("cusps") {
        Some(c) => format!("degree {} sections, cusp counts {c}", args.degree),
        None => format!("degree {} knot, {} samples", args.degree, args.samples),
    };
    match args.out {
        Some(path) => {
            write_file(&path, &plot)?;
            let mut result = report;
            result["out"] = json!(path);
            Ok(Outcome::new(result, summary))
        }
        None => Ok(Outcome {
            result: report,
            summary,
            raw: Some(plot),
        }),
    }
}

fn run_check(args: CheckArgs, second: bool) -> Result<Outcome, Failure> {
    let w = parse_word(&read(&args.braid)?)?;
    let cert = if second {
        domain!(check_b(&w, args.degree))?
    } else {
        domain!(check_a(&w, args.degree))?
    };
    let summary = format!(
        "{w}: certificate for degree {} verified = {}",
        args.degree, cert.verified
    );
    Ok(Outcome::new(to_value(&cert), summary))
}

fn run_selftest() -> Result<Outcome, Failure> {
    let reports = acceptance::run_all();
    let summary = reports
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n");
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let seeds = json!({
        "lift": acceptance::LIFT_SEED,
        "lines": acceptance::LINES_SEED,
        "mirror": acceptance::MIRROR_SEED,
    });
    let result =
        json!({ "passed": failed.is_empty(), "seeds": seeds, "criteria": to_value(&reports) });
    if failed.is_empty() {
        Ok(Outcome::new(result, summary))
    } else {
        println!("{result}");
        eprintln!("{summary}");
        Err(Failure::Selftest(failed))
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Braid { word, normal_form } => run_braid(&word, normal_form),
        Command::Closure { word } => run_closure(&word),
        Command::Torus { p, q } => run_torus(p, q),
        Command::Mw { parts } => run_mw(parts),
        Command::Lines { action } => run_lines(action),
        Command::Tangent(args) => run_tangent(args),
        Command::CheckA(args) => run_check(args, false),
        Command::CheckB(args) => run_check(args, true),
        Command::Selftest => run_selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(outcome) => {
            // a closed stdout (for example a pipe into `head`) is not an error
            let mut stdout = io::stdout().lock();
            let _ = match outcome.raw {
                Some(raw) => {
                    eprintln!("{}", outcome.result);
                    stdout.write_all(raw.as_bytes())
                }
                None => writeln!(stdout, "{}", outcome.result),
            };
            if !cli.json {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(failure) => {
            let (kind, message) = match failure {
                Failure::Domain(e) => (e.kind().to_string(), e.to_string()),
                Failure::Io(m) => ("io".into(), m),
                Failure::Selftest(ids) => ("selftest".into(), format!("failed criteria {ids:?}")),
                Failure::Usage(_) => unreachable!("handled above"),
            };
            eprintln!("{}", json!({ "error": kind, "message": message }));
            ExitCode::from(1)
        }
    }
}
