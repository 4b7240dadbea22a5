//! Command-line surface over the library: construction, tabulation,
//! B_F[g] verification, digit-basis generation, density diagnostics, and
//! augmentation-parameter explanations.
//!
//! stdout carries only the JSON (or CSV) payload; diagnostics go to stderr.
//! Exit codes are stable: 0 success / predicate true, 1 predicate false,
//! 2 invalid input, 3 search exhausted, 4 certificate violation (bug trap).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::augment;
use crate::builder::{self, CertificateReport, Construction, StepAction};
use crate::density;
use crate::error::{Error, Result};
use crate::forms::{IntSet, LinearForm, MaryForm, Multiplicity, TargetSpec, ZeroSetSpec};
use crate::gadic::{self, GadicParams};
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

/// Default enumeration cap for the brute-force verifier subcommand.
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "repbasis",
    version,
    about = "Integer sets with prescribed representation functions under binary linear forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a set realizing a target function and certify the result
    Construct(ConstructArgs),
    /// Tabulate the representation function of a set file over a window
    Repfn(RepfnArgs),
    /// Check the B_F[g] bound (g = 1: Sidon) for a set under a form
    Sidon(SidonArgs),
    /// Generate or decode the digit-restricted Sidon basis
    Gadic(GadicArgs),
    /// Profile a zero-set description at increasing radii
    Density(DensityArgs),
    /// Explain admissibility of augmentation parameters for one target
    #[command(name = "explain-t")]
    ExplainT(ExplainTArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Form coefficients "u1,u2"
    #[arg(long)]
    pub form: String,
    /// Target function: "const:<k>" / "const:inf", or "@path" to a JSON spec
    #[arg(long)]
    pub target: String,
    /// Target window radius N: every |n| <= N is served
    #[arg(long, allow_negative_numbers = true)]
    pub window: i64,
    /// Round cap K: multiplicities are served up to K representations
    #[arg(long, default_value_t = 1)]
    pub rounds: u64,
    /// Scan radius for the admissible-t search
    #[arg(long, default_value_t = augment::DEFAULT_SEARCH_RADIUS, allow_negative_numbers = true)]
    pub search_radius: i64,
    /// Write the construction JSON to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Dump each chosen step's admissibility report to stderr
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct RepfnArgs {
    /// Set file: JSON array or one integer per line
    #[arg(long)]
    pub set: PathBuf,
    /// Form coefficients "u1,u2"
    #[arg(long)]
    pub form: String,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: i64,
}

#[derive(Debug, Args)]
pub struct SidonArgs {
    /// Set file: JSON array or one integer per line
    #[arg(long)]
    pub set: PathBuf,
    /// Form coefficients "u1,u2[,u3,...]" (m-ary allowed)
    #[arg(long)]
    pub form: String,
    /// Representation bound g >= 1
    #[arg(long, default_value_t = 1)]
    pub g: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: i64,
    /// Enumeration cap on |A|^m
    #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct GadicArgs {
    /// Digit bound g >= 2
    #[arg(long)]
    pub g: i64,
    /// Arity m >= 2
    #[arg(long)]
    pub m: u32,
    /// Emit all members <= limit
    #[arg(long, allow_negative_numbers = true)]
    pub limit: Option<i64>,
    /// Decode a single value into its unique representing tuple
    #[arg(long, allow_negative_numbers = true)]
    pub decode: Option<i64>,
    /// Emit the decode table for every n in 0..=bound
    #[arg(long, allow_negative_numbers = true)]
    pub decode_upto: Option<i64>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Zero-set description: inline JSON or "@path"
    #[arg(long)]
    pub zero_set: String,
    /// Comma-separated strictly increasing positive radii
    #[arg(long)]
    pub radii: String,
    /// Output format: json or csv
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct ExplainTArgs {
    /// Form coefficients "u1,u2"
    #[arg(long)]
    pub form: String,
    /// Target value b
    #[arg(long, allow_negative_numbers = true)]
    pub b: i64,
    /// Check this specific t; without it, scan for the first admissible t
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,
    /// Base set file A' (defaults to the empty set)
    #[arg(long)]
    pub set: Option<PathBuf>,
    /// Zero-set description: inline JSON or "@path" (defaults to empty)
    #[arg(long)]
    pub zero_set: Option<String>,
    #[arg(long, default_value_t = augment::DEFAULT_SEARCH_RADIUS, allow_negative_numbers = true)]
    pub search_radius: i64,
}

struct CmdOutput {
    payload: String,
    exit: i32,
    output: Option<PathBuf>,
}

impl CmdOutput {
    fn stdout(payload: String, exit: i32) -> CmdOutput {
        CmdOutput {
            payload,
            exit,
            output: None,
        }
    }
}

/// Runs a parsed invocation, writing the payload to `out` (or the file given
/// by --output) and returning the process exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> i32 {
    match dispatch(cli.command) {
        Ok(cmd_out) => {
            let written = match &cmd_out.output {
                Some(path) => std::fs::write(path, &cmd_out.payload).map_err(Error::from),
                None => out
                    .write_all(cmd_out.payload.as_bytes())
                    .map_err(Error::from),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_INVALID;
            }
            cmd_out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command) -> Result<CmdOutput> {
    match command {
        Command::Construct(args) => cmd_construct(&args),
        Command::Repfn(args) => cmd_repfn(&args),
        Command::Sidon(args) => cmd_sidon(&args),
        Command::Gadic(args) => cmd_gadic(&args),
        Command::Density(args) => cmd_density(&args),
        Command::ExplainT(args) => cmd_explain_t(&args),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SearchExhausted { .. } => EXIT_EXHAUSTED,
        Error::StepFailed { source, .. } => match source.as_ref() {
            Error::SearchExhausted { .. } => EXIT_EXHAUSTED,
            // The build loop maintains the disjointness hypothesis itself;
            // seeing it broken mid-build means an internal invariant broke.
            Error::HypothesisViolated { .. } => EXIT_CERTIFICATE,
            other => exit_code(other),
        },
        _ => EXIT_INVALID,
    }
}

// ---- construct ----

#[derive(Serialize)]
struct ConstructionDump<'a> {
    form: [i64; 2],
    bezout: [i64; 2],
    steps: Vec<StepDump>,
    set: &'a [i64],
    certificate: &'a CertificateReport,
}

#[derive(Serialize)]
struct StepDump {
    i: usize,
    b: i64,
    t: StepT,
}

struct StepT(Option<i64>);

impl Serialize for StepT {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(t) => s.serialize_i64(t),
            None => s.serialize_str("skipped"),
        }
    }
}

fn construction_dump<'a>(
    c: &'a Construction,
    certificate: &'a CertificateReport,
) -> ConstructionDump<'a> {
    ConstructionDump {
        form: [c.form.u1(), c.form.u2()],
        bezout: [c.bezout.v1(), c.bezout.v2()],
        steps: c
            .chain
            .iter()
            .map(|s| StepDump {
                i: s.index,
                b: s.target,
                t: StepT(match s.action {
                    StepAction::Chosen { t } => Some(t),
                    StepAction::Skipped => None,
                }),
            })
            .collect(),
        set: c.final_set.as_slice(),
        certificate,
    }
}

fn cmd_construct(args: &ConstructArgs) -> Result<CmdOutput> {
    let form = parse_binary_form(&args.form)?;
    let spec = parse_target(&args.target)?;
    let construction = builder::build(&form, &spec, args.window, args.rounds, args.search_radius)?;
    let certificate = builder::certify_default(&construction)?;

    if args.explain {
        explain_steps(&construction)?;
    }

    let dump = construction_dump(&construction, &certificate);
    let mut payload = serde_json::to_string(&dump)?;
    payload.push('\n');
    let exit = if certificate.clean {
        EXIT_OK
    } else {
        eprintln!(
            "certificate violations: {}",
            serde_json::to_string(&certificate.violations)?
        );
        EXIT_CERTIFICATE
    };
    Ok(CmdOutput {
        payload,
        exit,
        output: args.output.clone(),
    })
}

// Re-derives each chosen step's admissibility report from the replayed
// chain and prints it to stderr.
fn explain_steps(c: &Construction) -> Result<()> {
    let sets = c.replay()?;
    let w = c.spec.effective_zero_set();
    for (step, prev) in c.chain.iter().zip(&sets) {
        if let StepAction::Chosen { t } = step.action {
            let aug = augment::make_augmentation(prev, step.target, t, &c.form, &c.bezout)?;
            let report = augment::check_admissible(prev, step.target, &w, &aug, &c.form)?;
            eprintln!(
                "step {} target {} t {}: {}",
                step.index,
                step.target,
                t,
                serde_json::to_string(&report)?
            );
        }
    }
    Ok(())
}

// ---- repfn ----

fn cmd_repfn(args: &RepfnArgs) -> Result<CmdOutput> {
    let set = read_set(&args.set)?;
    let form = parse_binary_form(&args.form)?;
    let table = oracle::rep_table(&set, &form, args.lo, args.hi)?;
    let mut payload = serde_json::to_string(&table)?;
    payload.push('\n');
    Ok(CmdOutput::stdout(payload, EXIT_OK))
}

// ---- sidon ----

fn cmd_sidon(args: &SidonArgs) -> Result<CmdOutput> {
    let set = read_set(&args.set)?;
    let form = parse_mary_form(&args.form)?;
    let verdict = oracle::is_b_f_g(&set, &form, args.g, args.lo, args.hi, args.bound)?;
    let mut payload = serde_json::to_string(&verdict)?;
    payload.push('\n');
    let exit = if verdict.holds { EXIT_OK } else { EXIT_FALSE };
    Ok(CmdOutput::stdout(payload, exit))
}

// ---- gadic ----

#[derive(Serialize)]
struct DecodeEntry {
    n: i64,
    tuple: Vec<i64>,
}

#[derive(Serialize)]
struct GadicDump {
    g: i64,
    m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    limit: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<IntSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decode: Option<DecodeEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decode_table: Option<Vec<DecodeEntry>>,
}

fn cmd_gadic(args: &GadicArgs) -> Result<CmdOutput> {
    let params = GadicParams::new(args.g, args.m)?;
    if args.limit.is_none() && args.decode.is_none() && args.decode_upto.is_none() {
        return Err(Error::InvalidParams(
            "nothing to do: pass --limit, --decode or --decode-upto".to_string(),
        ));
    }
    let set = args
        .limit
        .map(|limit| gadic::gadic_set(&params, limit))
        .transpose()?;
    let decode = args
        .decode
        .map(|n| -> Result<DecodeEntry> {
            Ok(DecodeEntry {
                n,
                tuple: gadic::gadic_decode(&params, n)?,
            })
        })
        .transpose()?;
    let decode_table = args
        .decode_upto
        .map(|bound| -> Result<Vec<DecodeEntry>> {
            if bound < 0 {
                return Err(Error::InvalidParams(format!(
                    "--decode-upto must be nonnegative, got {bound}"
                )));
            }
            (0..=bound)
                .map(|n| {
                    Ok(DecodeEntry {
                        n,
                        tuple: gadic::gadic_decode(&params, n)?,
                    })
                })
                .collect()
        })
        .transpose()?;
    let dump = GadicDump {
        g: args.g,
        m: args.m,
        limit: args.limit,
        set,
        decode,
        decode_table,
    };
    let mut payload = serde_json::to_string(&dump)?;
    payload.push('\n');
    Ok(CmdOutput::stdout(payload, EXIT_OK))
}

// ---- density ----

fn cmd_density(args: &DensityArgs) -> Result<CmdOutput> {
    let spec = parse_zero_set(&args.zero_set)?;
    let radii = parse_i64_list(&args.radii)?;
    let profile = density::density_profile(&spec, &radii)?;
    let payload = match args.format.as_str() {
        "json" => {
            let mut p = serde_json::to_string(&profile)?;
            p.push('\n');
            p
        }
        "csv" => profile.to_csv(),
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown format {other:?}; use json or csv"
            )))
        }
    };
    Ok(CmdOutput::stdout(payload, EXIT_OK))
}

// ---- explain-t ----

#[derive(Serialize)]
struct ExplainDump {
    b: i64,
    t: i64,
    pair: [i64; 2],
    set: IntSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejections_before: Option<BTreeMap<augment::RejectionCase, u64>>,
    report: augment::AdmissibilityReport,
}

fn cmd_explain_t(args: &ExplainTArgs) -> Result<CmdOutput> {
    let form = parse_binary_form(&args.form)?;
    let bez = crate::forms::BezoutPair::for_form(&form);
    let a_prime = match &args.set {
        Some(path) => read_set(path)?,
        None => IntSet::new(),
    };
    let w = match &args.zero_set {
        Some(text) => parse_zero_set(text)?,
        None => ZeroSetSpec::Empty,
    };

    let dump = match args.t {
        Some(t) => {
            let aug = augment::make_augmentation(&a_prime, args.b, t, &form, &bez)?;
            let report = augment::check_admissible(&a_prime, args.b, &w, &aug, &form)?;
            ExplainDump {
                b: args.b,
                t,
                pair: [aug.pair.0, aug.pair.1],
                set: aug.c_set,
                rejections_before: None,
                report,
            }
        }
        None => {
            let outcome =
                augment::scan_admissible_t(&a_prime, args.b, &w, &form, &bez, args.search_radius)?;
            ExplainDump {
                b: args.b,
                t: outcome.t,
                pair: [outcome.augmentation.pair.0, outcome.augmentation.pair.1],
                set: outcome.augmentation.c_set,
                rejections_before: Some(outcome.rejections),
                report: outcome.report,
            }
        }
    };

    let admissible = dump.report.is_admissible();
    let mut payload = serde_json::to_string(&dump)?;
    payload.push('\n');
    let exit = if admissible { EXIT_OK } else { EXIT_FALSE };
    Ok(CmdOutput::stdout(payload, exit))
}

// ---- parsing helpers ----

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| Error::InvalidParams(format!("bad integer {part:?}: {e}")))
        })
        .collect()
}

fn parse_binary_form(text: &str) -> Result<LinearForm> {
    let coeffs = parse_i64_list(text)?;
    let [u1, u2]: [i64; 2] = coeffs.try_into().map_err(|v: Vec<i64>| {
        Error::InvalidParams(format!("expected 2 coefficients, got {}", v.len()))
    })?;
    LinearForm::new(u1, u2)
}

fn parse_mary_form(text: &str) -> Result<MaryForm> {
    MaryForm::new(parse_i64_list(text)?)
}

fn parse_target(text: &str) -> Result<TargetSpec> {
    if let Some(path) = text.strip_prefix('@') {
        let contents = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&contents)?);
    }
    if let Some(value) = text.strip_prefix("const:") {
        let value = if value == "inf" {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(value.parse().map_err(|e| {
                Error::InvalidParams(format!("bad constant multiplicity {value:?}: {e}"))
            })?)
        };
        return TargetSpec::constant(value);
    }
    Err(Error::InvalidParams(format!(
        "target must be \"const:<k|inf>\" or \"@path\", got {text:?}"
    )))
}

fn parse_zero_set(text: &str) -> Result<ZeroSetSpec> {
    let contents;
    let json = if let Some(path) = text.strip_prefix('@') {
        contents = std::fs::read_to_string(path)?;
        contents.as_str()
    } else {
        text
    };
    let spec: ZeroSetSpec = serde_json::from_str(json)?;
    spec.validate()?;
    Ok(spec)
}

fn read_set(path: &PathBuf) -> Result<IntSet> {
    let contents = std::fs::read_to_string(path)?;
    IntSet::from_text(&contents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_i64_list("2, 3").unwrap(), vec![2, 3]);
        assert!(parse_i64_list("2;3").is_err());
        assert!(parse_binary_form("2,3").is_ok());
        assert!(parse_binary_form("2,3,5").is_err());
        assert!(parse_binary_form("1,1").is_err());
        assert!(parse_mary_form("1,1").is_ok());
        assert!(parse_target("const:1").is_ok());
        assert!(parse_target("const:inf").is_ok());
        assert!(parse_target("const:0").is_err());
        assert!(parse_target("ones").is_err());
        assert!(parse_zero_set(r#"{"kind":"perfect-squares"}"#).is_ok());
        assert!(parse_zero_set(r#"{"kind":"powers-of-base","base":1}"#).is_err());
    }

    #[test]
    fn construct_dump_shape_and_determinism() {
        let args = ConstructArgs {
            form: "2,3".to_string(),
            target: "const:1".to_string(),
            window: 2,
            rounds: 1,
            search_radius: 1_000,
            output: None,
            explain: false,
        };
        let first = cmd_construct(&args).unwrap();
        assert_eq!(first.exit, EXIT_OK);
        let second = cmd_construct(&args).unwrap();
        assert_eq!(first.payload, second.payload, "byte-identical reruns");

        let value: serde_json::Value = serde_json::from_str(&first.payload).unwrap();
        assert_eq!(value["form"], serde_json::json!([2, 3]));
        assert_eq!(value["bezout"], serde_json::json!([-1, 1]));
        assert_eq!(value["certificate"]["clean"], serde_json::json!(true));
        assert!(value["steps"].as_array().unwrap().len() >= 5);
        assert!(value["set"].as_array().is_some());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(exit_code(&Error::ExcludedProduct(1)), EXIT_INVALID);
        assert_eq!(
            exit_code(&Error::SearchExhausted {
                max_radius: 5,
                histogram: BTreeMap::new()
            }),
            EXIT_EXHAUSTED
        );
        let form = LinearForm::new(2, 3).unwrap();
        let nested = Error::StepFailed {
            step: 0,
            target: 0,
            source: Box::new(Error::SearchExhausted {
                max_radius: 5,
                histogram: BTreeMap::new(),
            }),
            partial: Box::new(Construction {
                form,
                bezout: crate::forms::BezoutPair::for_form(&form),
                spec: TargetSpec::constant(Multiplicity::ONE).unwrap(),
                radius: 0,
                round_cap: 1,
                chain: Vec::new(),
                final_set: IntSet::new(),
            }),
        };
        assert_eq!(exit_code(&nested), EXIT_EXHAUSTED);
        assert_eq!(
            exit_code(&Error::HypothesisViolated { witness: 3 }),
            EXIT_INVALID
        );
    }

    #[test]
    fn gadic_requires_some_work() {
        let args = GadicArgs {
            g: 2,
            m: 2,
            limit: None,
            decode: None,
            decode_upto: None,
        };
        assert!(matches!(cmd_gadic(&args), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn explain_t_reports_specific_candidate() {
        let args = ExplainTArgs {
            form: "2,3".to_string(),
            b: 0,
            t: Some(0),
            set: None,
            zero_set: None,
            search_radius: 100,
        };
        let out = cmd_explain_t(&args).unwrap();
        assert_eq!(out.exit, EXIT_FALSE);
        let value: serde_json::Value = serde_json::from_str(&out.payload).unwrap();
        assert_eq!(value["report"]["verdict"], "rejected");
        assert_eq!(value["report"]["case"], "degenerate-pair");

        let args = ExplainTArgs { t: None, ..args };
        let out = cmd_explain_t(&args).unwrap();
        assert_eq!(out.exit, EXIT_OK);
        let value: serde_json::Value = serde_json::from_str(&out.payload).unwrap();
        assert_eq!(value["t"], 1);
        assert_eq!(value["rejections_before"]["degenerate-pair"], 1);
    }
}
