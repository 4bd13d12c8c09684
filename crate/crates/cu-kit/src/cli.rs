//! The `cukit` command line: law suites, AF-limit queries over Bratteli
//! diagram files, and the oracle self-test. All reports are JSON on stdout
//! (duplicated to `--output` when given) and deterministic in the seed.
//!
//! Exit codes: `0` success, `1` check failures, `2` usage or parse errors,
//! `3` a three-valued query came back Unknown (widen the horizon and retry).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cu_kit_core::bratteli::{
    af_compare, compacts_below, find_compact_interpolant, perron_trace, TraceValue,
};
use cu_kit_core::controls;
use cu_kit_core::instance::{ExtNatCu, ExtRationalCu};
use cu_kit_core::laws::{check_laws, LawReport};
use cu_kit_core::limit::{thread_way_below, CuDiagram, Thread, Tri};
use cu_kit_core::samplers::{NatSampler, RationalSampler, VectorSampler};
use cu_kit_core::vector::VectorCu;

use crate::json::{law_reports_json, parse_bratteli, ElementPairJson};
use crate::oracle::{
    cuntz_subeq, falsification_probe, oracle_selftest, witness_construct, RANK_TOL, RESIDUAL_TOL,
};

#[derive(Parser)]
#[command(name = "cukit", version, about = "Order computations for AF invariants")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the six-law suite against a named instance.
    CheckLaws(CheckLawsArgs),
    /// Queries on the limit of a Bratteli diagram.
    Af(AfArgs),
    /// Run the finite-dimensional oracle invariants.
    OracleSelftest(SelftestArgs),
}

#[derive(Args)]
struct CheckLawsArgs {
    /// One of `extnat`, `extnat^K`, `extrational`, or the negative
    /// controls `control-wb-as-leq` and `control-skewed-add`.
    #[arg(long)]
    instance: String,
    #[arg(long, default_value_t = 1000)]
    cases: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AfArgs {
    #[command(subcommand)]
    sub: AfCommand,
}

#[derive(Args, Clone)]
struct AfCommon {
    /// Bratteli diagram JSON file.
    #[arg(long)]
    diagram: PathBuf,
    /// Probe horizon (stages and basis depth).
    #[arg(long, env = "CU_KIT_HORIZON", default_value_t = 40)]
    horizon: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AfCommand {
    /// Three-valued comparison of two classes.
    Compare {
        #[command(flatten)]
        common: AfCommon,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// An increasing family of compact classes below a class, with
    /// supremum certified equivalent to it.
    Compacts {
        #[command(flatten)]
        common: AfCommon,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Compact containment and the compact-interpolant search for a pair.
    Interpolate {
        #[command(flatten)]
        common: AfCommon,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Perron functional value of a class (stationary primitive diagrams).
    Trace {
        #[command(flatten)]
        common: AfCommon,
        #[arg(long)]
        a: String,
    },
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 500)]
    cases: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional JSON fixture with a pair of positive elements to include.
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Entry point used by the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: &serde_json::Value, output: Option<&Path>) -> Result<(), String> {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    print!("{text}");
    if let Some(path) = output {
        std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::CheckLaws(args) => run_check_laws(args),
        Command::Af(af) => run_af(af.sub),
        Command::OracleSelftest(args) => run_selftest(args),
    }
}

fn run_check_laws(args: CheckLawsArgs) -> Result<u8, String> {
    if args.cases == 0 {
        return Err(String::from("--cases must be at least 1"));
    }
    let reports: Vec<LawReport> = match args.instance.as_str() {
        "extnat" => check_laws(&ExtNatCu, &NatSampler, args.cases, args.seed),
        "extrational" => check_laws(&ExtRationalCu, &RationalSampler, args.cases, args.seed),
        "control-wb-as-leq" => {
            check_laws(&controls::WayBelowAsLeq, &NatSampler, args.cases, args.seed)
        }
        "control-skewed-add" => check_laws(
            &controls::SkewedAdd,
            &controls::SkewedAddSampler::default(),
            args.cases,
            args.seed,
        ),
        other => match other.strip_prefix("extnat^").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 1 && k <= 16 => {
                check_laws(&VectorCu::new(k), &VectorSampler::new(k), args.cases, args.seed)
            }
            _ => return Err(format!("unknown instance {other:?}")),
        },
    };
    let failures: u32 = reports.iter().map(|r| r.failures).sum();
    let value = json!({
        "instance": args.instance,
        "cases": args.cases,
        "seed": args.seed,
        "laws": law_reports_json(&reports),
        "failures": failures,
    });
    emit(&value, args.output.as_deref())?;
    Ok(if failures == 0 { 0 } else { 1 })
}

fn load_diagram(path: &Path) -> Result<CuDiagram, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    let b = parse_bratteli(&text).map_err(|e| e.to_string())?;
    Ok(b.to_cu_diagram())
}

fn parse_class(d: &CuDiagram, text: &str) -> Result<Thread, String> {
    Thread::parse(d, text).map_err(|e| e.to_string())
}

fn tri_json(tri: Tri, horizon: u32) -> (serde_json::Value, u8) {
    match tri {
        Tri::Le => (json!({"result": "LE"}), 0),
        Tri::NotLe(kind) => (json!({"result": "NotLE", "certificate": kind.as_str()}), 0),
        Tri::Unknown(_) => (json!({"result": "Unknown", "horizon": horizon}), 3),
    }
}

fn run_af(cmd: AfCommand) -> Result<u8, String> {
    match cmd {
        AfCommand::Compare { common, a, b } => {
            let d = load_diagram(&common.diagram)?;
            let ta = parse_class(&d, &a)?;
            let tb = parse_class(&d, &b)?;
            let (value, code) = tri_json(af_compare(&d, &ta, &tb, common.horizon), common.horizon);
            emit(&value, common.output.as_deref())?;
            Ok(code)
        }
        AfCommand::Compacts { common, a, count } => {
            if count == 0 {
                return Err(String::from("--count must be at least 1"));
            }
            let d = load_diagram(&common.diagram)?;
            let ta = parse_class(&d, &a)?;
            match compacts_below(&d, &ta, count, common.horizon) {
                Ok(classes) => {
                    let encoded: Vec<String> = classes.iter().map(|t| t.encode()).collect();
                    emit(&json!({"result": "ok", "classes": encoded}), common.output.as_deref())?;
                    Ok(0)
                }
                Err(e) => {
                    emit(
                        &json!({"result": "Unknown", "horizon": common.horizon, "detail": e.to_string()}),
                        common.output.as_deref(),
                    )?;
                    Ok(3)
                }
            }
        }
        AfCommand::Interpolate { common, a, b } => {
            let d = load_diagram(&common.diagram)?;
            let ta = parse_class(&d, &a)?;
            let tb = parse_class(&d, &b)?;
            let wb = thread_way_below(&d, &ta, &tb, common.horizon);
            let interpolant = find_compact_interpolant(&d, &ta, &tb, common.horizon);
            let (mut value, code) = tri_json(wb, common.horizon);
            value["way_below"] = value["result"].clone();
            value["interpolant"] = match &interpolant {
                Some(t) => json!(t.encode()),
                None => serde_json::Value::Null,
            };
            emit(&value, common.output.as_deref())?;
            Ok(code)
        }
        AfCommand::Trace { common, a } => {
            let d = load_diagram(&common.diagram)?;
            let ta = parse_class(&d, &a)?;
            let value = match perron_trace(&d, &ta).map_err(|e| e.to_string())? {
                TraceValue::Exact(q) => json!({"value": q.to_string()}),
                TraceValue::Infinite => json!({"value": "inf"}),
                TraceValue::Approx { value, error } => {
                    json!({"value": value.to_string(), "error": error.to_string()})
                }
            };
            emit(&value, common.output.as_deref())?;
            Ok(0)
        }
    }
}

fn run_selftest(args: SelftestArgs) -> Result<u8, String> {
    if args.cases == 0 {
        return Err(String::from("--cases must be at least 1"));
    }
    // Fixture parsing happens before any report so a corrupted file is a
    // plain usage error with no partial output.
    let fixture = match &args.fixture {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("reading {}: {e}", path.display()))?;
            let pair: ElementPairJson =
                serde_json::from_str(&text).map_err(|e| format!("fixture: {e}"))?;
            let (alg_a, a) = pair.a.decode().map_err(|e| format!("fixture element a: {e}"))?;
            let (alg_b, b) = pair.b.decode().map_err(|e| format!("fixture element b: {e}"))?;
            if alg_a.block_sizes() != alg_b.block_sizes() {
                return Err(String::from("fixture elements live over different algebras"));
            }
            Some((a, b))
        }
        None => None,
    };

    let mut report = oracle_selftest(args.cases, args.seed);

    if let Some((a, b)) = fixture {
        let mut fixture_check = LawReport::new("fixture-pair");
        let answer = cuntz_subeq(&a, &b, RANK_TOL).map_err(|e| e.to_string())?;
        let eps = a.min_positive_eigenvalue(RANK_TOL).map_or(0.5, |m| m / 2.0);
        if answer.holds {
            match witness_construct(&a, &b, eps, RANK_TOL) {
                Ok(w) if w.residual <= RESIDUAL_TOL => fixture_check.pass(),
                Ok(w) => fixture_check.fail(format!("fixture witness residual {}", w.residual)),
                Err(e) => fixture_check.fail(format!("fixture witness refused: {e}")),
            }
        } else {
            let best = falsification_probe(&a, &b, eps, 2000, args.seed);
            if best > crate::oracle::FALSIFICATION_TOL {
                fixture_check.pass();
            } else {
                fixture_check.fail(format!("fixture probe reached residual {best}"));
            }
        }
        report.checks.push(fixture_check);
    }

    let failures: u32 = report.checks.iter().map(|c| c.failures).sum();
    let value = json!({
        "cases": args.cases,
        "seed": args.seed,
        "instabilities": report.instabilities,
        "checks": law_reports_json(&report.checks),
        "failures": failures,
    });
    emit(&value, args.output.as_deref())?;
    Ok(if failures == 0 { 0 } else { 1 })
}
