//! `ghsd` command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 unreadable or malformed
//! input (including unknown example ids), 3 analysis or construction
//! error, 4 level cap exceeded, 5 smoothness iteration did not converge.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ghsd::analysis::classify;
use ghsd::construct::{
    bspline_mask, existence_pipeline, interpolant_to_mask, tensor_mask, tensor_type, vectorize_mask, vectorized_type,
};
use ghsd::io::{parse_data, parse_mask, serialize_mask};
use ghsd::polysub::{export_refinement, refine};
use ghsd::rational::{fmt_q, parse_q};
use ghsd::registry::{examples, find, parse_overrides};
use ghsd::smoothness::{convergence_verdict, sm2, SmoothnessOptions};
use ghsd::splines::example12_interpolant;
use ghsd::symmetry::{symmetry_complete, SymmetryDescriptor};
use ghsd::verify::{run_all, verify_example};
use ghsd::{Error, HermiteType, Mask, MatSeq, MultiIndex, QMatrix};

// Stdout writes that end the process quietly when the reader goes away,
// as in `ghsd analyze … | head`.
fn emit(text: &str) {
    let mut lock = std::io::stdout().lock();
    if let Err(e) = lock.write_all(text.as_bytes()).and_then(|_| lock.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("ghsd: stdout: {e}");
        std::process::exit(3);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! outln {
    () => { emit("\n") };
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

#[derive(Parser)]
#[command(name = "ghsd", version, about = "Generalized Hermite subdivision toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A mask file path, or a built-in example id such as `ex6.2a`.
#[derive(Args)]
struct MaskSource {
    mask: String,
    /// Family parameter override for built-in examples, e.g. `t1=91/1024`.
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Sum rules, type, linear-phase moments and interpolation verdicts.
    Analyze {
        #[command(flatten)]
        source: MaskSource,
        #[arg(long, default_value_t = 12)]
        max_order: u32,
        /// Print only the JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Refine data through the level-dependent scheme and write CSV.
    Refine {
        #[command(flatten)]
        source: MaskSource,
        /// Data file with the initial values.
        #[arg(long, conflicts_with = "delta")]
        data: Option<PathBuf>,
        /// Start from `δ·I_r`, giving basis samples.
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        levels: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sobolev smoothness estimate and convergence verdict.
    Smoothness {
        #[command(flatten)]
        source: MaskSource,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Build a mask file.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Check documented facts of one example, or run the acceptance battery.
    Verify {
        #[arg(required_unless_present = "all")]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        #[arg(long = "param")]
        params: Vec<String>,
        /// Print only the JSON summary.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Scalar B-spline mask of order n.
    Bspline {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor product of two masks.
    Tensor {
        first: String,
        second: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vectorize a scalar mask over the cosets of a dilation matrix.
    Vectorize {
        mask: String,
        /// Rows separated by `;`, entries by `,`, e.g. `2,0;0,2`.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolatory mask from the C^m spline interpolants with N nodes.
    FromSpline {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        nodes: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mask of a given generalized Hermite type from tensor B-splines.
    Existence {
        /// Entries separated by `;`, components by `,`, e.g. `0;2` or `0,0;1,0`.
        #[arg(long = "type")]
        htype: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

fn input_error(e: Error) -> Failure {
    Failure::new(2, e.to_string())
}

fn analysis_error(e: Error) -> Failure {
    Failure::new(3, e.to_string())
}

type CmdResult = Result<(), Failure>;

/// Loaded mask with its type.
struct Loaded {
    mask: Mask,
    htype: HermiteType,
}

fn load(source: &str, params: &[String]) -> Result<Loaded, Failure> {
    let overrides = parse_overrides(params).map_err(input_error)?;
    if Path::new(source).exists() {
        if !overrides.is_empty() {
            return Err(Failure::new(2, "--param applies to built-in examples only"));
        }
        let text = fs::read_to_string(source).map_err(|e| Failure::new(2, format!("{source}: {e}")))?;
        let file = parse_mask(&text).map_err(input_error)?;
        let mask = match &file.symmetry {
            Some(block) if block.representatives => {
                let sym = SymmetryDescriptor::from_block(block, &file.htype).map_err(input_error)?;
                symmetry_complete(file.mask.seq(), &sym).map_err(input_error)?
            }
            _ => file.mask,
        };
        return Ok(Loaded { mask, htype: file.htype });
    }
    match find(source) {
        Ok(rec) => {
            let inst = rec.instantiate(&overrides).map_err(input_error)?;
            Ok(Loaded { mask: inst.mask, htype: inst.htype })
        }
        Err(_) => Err(Failure::new(2, format!("{source}: no such file or example id"))),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(3, format!("{}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn analyze(source: &MaskSource, max_order: u32, json_only: bool) -> CmdResult {
    let l = load(&source.mask, &source.params)?;
    let rep = classify(&l.mask, &l.htype, max_order).map_err(analysis_error)?;
    let mut v = rep.to_json();
    v["dim"] = json!(l.mask.dim());
    v["multiplicity"] = json!(l.mask.r());
    v["support_size"] = json!(l.mask.len());
    if !json_only {
        let verdict = |b: bool| if b { "yes" } else { "no" };
        outln!("dimension            {}", l.mask.dim());
        outln!("multiplicity         {}", l.mask.r());
        outln!("coefficients         {}", l.mask.len());
        outln!("sum rule order       {}", rep.sr_order);
        outln!("type verdict         {}", verdict(rep.hermite_type_ok));
        outln!("linear-phase order   {}", rep.lpm_order);
        match rep.interpolatory_ok {
            Some(b) => outln!("interpolatory        {}", verdict(b)),
            None => outln!("interpolatory        not applicable"),
        }
        outln!("spectral condition   {}", verdict(rep.spectral_ok));
        if let Some(f) = &rep.matching_filter {
            outln!("matching filter jets (moments N_mu):");
            for mu in f.indices() {
                let row = f.get(mu);
                let vals: Vec<String> = (0..row.cols()).map(|c| fmt_q(&row[(0, c)])).collect();
                outln!("  {:?}  [{}]", mu.0, vals.join(", "));
            }
        }
        outln!();
    }
    out!("{}", pretty(&v));
    Ok(())
}

fn level_cap(dim: usize) -> Result<u32, Failure> {
    match std::env::var("GHSD_MAX_LEVEL") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::new(2, format!("GHSD_MAX_LEVEL={s:?} is not a level"))),
        Err(_) => Ok(if dim == 1 { 12 } else { 8 }),
    }
}

fn refine_cmd(source: &MaskSource, data: Option<&Path>, delta: bool, levels: u32, out: Option<&Path>) -> CmdResult {
    let l = load(&source.mask, &source.params)?;
    let cap = level_cap(l.mask.dim())?;
    if levels > cap {
        return Err(Failure::new(4, format!("{levels} levels exceed the cap of {cap} (set GHSD_MAX_LEVEL to raise it)")));
    }
    let (w0, start) = match (data, delta) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::new(2, format!("{}: {e}", p.display())))?;
            let v = parse_data(&text).map_err(input_error)?;
            (v.values, v.level)
        }
        (None, true) => (MatSeq::delta(l.mask.dim(), l.mask.r()), 0),
        (None, false) => return Err(Failure::new(2, "one of --data or --delta is required")),
    };
    let all = refine(&l.mask, &l.htype, &w0, levels).map_err(analysis_error)?;
    let last = all.last().expect("level list is non-empty");
    let mut buf = Vec::new();
    export_refinement(last, &l.htype, start + levels, &mut buf).map_err(analysis_error)?;
    match out {
        Some(p) => fs::write(p, &buf).map_err(|e| Failure::new(3, format!("{}: {e}", p.display()))),
        None => {
            emit(&String::from_utf8(buf).expect("CSV is UTF-8"));
            Ok(())
        }
    }
}

fn smoothness_cmd(source: &MaskSource, iters: usize, tol: f64) -> CmdResult {
    let l = load(&source.mask, &source.params)?;
    let opts = SmoothnessOptions { iters, tol, ..Default::default() };
    let rep = sm2(&l.mask, &opts).map_err(analysis_error)?;
    let mut v = rep.to_json();
    v["verdict"] = match convergence_verdict(&l.mask, &l.htype, &rep) {
        Ok(c) => json!({ "label": c.label, "order": c.order }),
        Err(e) => json!({ "label": "not applicable", "reason": e.to_string() }),
    };
    out!("{}", pretty(&v));
    if rep.converged {
        Ok(())
    } else {
        Err(Failure::new(5, format!("no convergence within {iters} iterations")))
    }
}

fn emit_mask(mask: &Mask, htype: &HermiteType, out: Option<&Path>) -> CmdResult {
    write_output(out, &serialize_mask(mask, htype))?;
    let summary = match classify(mask, htype, 12) {
        Ok(r) => format!(
            "coefficients {}, sr {}, type {}, lpm {}, interpolatory {}",
            mask.len(),
            r.sr_order,
            if r.hermite_type_ok { "ok" } else { "not met" },
            r.lpm_order,
            r.interpolatory_ok.map_or("n/a", |b| if b { "yes" } else { "no" })
        ),
        Err(e) => format!("classification failed: {e}"),
    };
    if out.is_some() {
        outln!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn parse_int_rows(s: &str, what: &str) -> Result<Vec<Vec<String>>, Failure> {
    let rows: Vec<Vec<String>> =
        s.split(';').map(|r| r.split(',').map(|x| x.trim().to_string()).collect()).collect();
    if rows.is_empty() || rows.iter().any(|r| r.iter().any(String::is_empty)) {
        return Err(Failure::new(2, format!("malformed {what} {s:?}")));
    }
    Ok(rows)
}

fn parse_type(s: &str, dim: usize) -> Result<HermiteType, Failure> {
    let rows = parse_int_rows(s, "type")?;
    let lambda = rows
        .iter()
        .map(|r| {
            if r.len() != dim {
                return Err(Failure::new(2, format!("type entry {r:?} does not have {dim} components")));
            }
            r.iter()
                .map(|x| x.parse::<u32>().map_err(|_| Failure::new(2, format!("bad type component {x:?}"))))
                .collect::<Result<Vec<u32>, Failure>>()
                .map(MultiIndex)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    HermiteType::new(lambda, None).map_err(input_error)
}

fn construct_cmd(what: &Construct) -> CmdResult {
    match what {
        Construct::Bspline { n, out } => {
            let a = bspline_mask(*n).map_err(input_error)?;
            emit_mask(&a, &HermiteType::scalar(1), out.as_deref())
        }
        Construct::Tensor { first, second, out } => {
            let a = load(first, &[])?;
            let b = load(second, &[])?;
            let m = tensor_mask(&a.mask, &b.mask).map_err(analysis_error)?;
            let h = tensor_type(&a.htype, &b.htype).map_err(analysis_error)?;
            emit_mask(&m, &h, out.as_deref())
        }
        Construct::Vectorize { mask, matrix, out } => {
            let a = load(mask, &[])?;
            if a.mask.r() != 1 {
                return Err(Failure::new(2, "vectorize expects a scalar mask"));
            }
            let rows = parse_int_rows(matrix, "matrix")?
                .iter()
                .map(|r| r.iter().map(|x| parse_q(x)).collect::<ghsd::Result<Vec<_>>>())
                .collect::<ghsd::Result<Vec<_>>>()
                .map_err(input_error)?;
            let n = QMatrix::from_rows(rows);
            let v = vectorize_mask(&a.mask, &n).map_err(analysis_error)?;
            let h = vectorized_type(&n, &v.cosets).map_err(analysis_error)?;
            emit_mask(&v.mask, &h, out.as_deref())
        }
        Construct::FromSpline { m, nodes, out } => {
            let (phi, h) = example12_interpolant(*m, *nodes);
            let a = interpolant_to_mask(&phi, &h).map_err(analysis_error)?;
            emit_mask(&a, &h, out.as_deref())
        }
        Construct::Existence { htype, dim, out } => {
            let h = parse_type(htype, *dim)?;
            let a = existence_pipeline(&h).map_err(analysis_error)?;
            emit_mask(&a, &h, out.as_deref())
        }
    }
}

fn verify_cmd(id: Option<&str>, all: bool, params: &[String], json_only: bool) -> CmdResult {
    if all {
        let reports = run_all();
        if !json_only {
            for r in &reports {
                outln!("{}", r.line());
            }
        }
        let pass = reports.iter().all(|r| r.pass());
        let v = json!({ "pass": pass, "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
        out!("{}", pretty(&v));
        return if pass { Ok(()) } else { Err(Failure::new(1, "acceptance battery failed")) };
    }
    let id = id.expect("clap requires an id without --all");
    let rec = find(id).map_err(|_| {
        let known: Vec<&str> = examples().iter().map(|e| e.id).collect();
        Failure::new(2, format!("unknown example {id:?}; known: {}", known.join(", ")))
    })?;
    let overrides = parse_overrides(params).map_err(input_error)?;
    let checks = verify_example(&rec, &overrides);
    if !json_only {
        for c in &checks {
            outln!("{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let v = json!({ "id": id, "pass": pass, "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>() });
    out!("{}", pretty(&v));
    if pass {
        Ok(())
    } else {
        Err(Failure::new(1, format!("{id}: some checks failed")))
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze { source, max_order, json } => analyze(source, *max_order, *json),
        Command::Refine { source, data, delta, levels, out } => {
            refine_cmd(source, data.as_deref(), *delta, *levels, out.as_deref())
        }
        Command::Smoothness { source, iters, tol } => smoothness_cmd(source, *iters, *tol),
        Command::Construct { what } => construct_cmd(what),
        Command::Verify { id, all, params, json } => verify_cmd(id.as_deref(), *all, params, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ghsd: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
