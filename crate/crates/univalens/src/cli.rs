//! Command-line front end: `check`, `map`, `chain`, `extend`, and
//! `reproduce example1`. Exit codes: 0 = satisfied/pass, 1 = violated,
//! 2 = input or evaluation error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::criteria::{
    check_criterion, resolve_preset, CoFn, CriterionSpec, FirstCenter, GridSpec, ResolvedParams,
    Variant,
};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::loewner::{default_t_grid, verify_chain};
use crate::qcext::{check_qc_criterion, estimate_k, univalence_evidence, ExtensionMap};
use crate::quad::{integral_operator, QuadConfig};
use crate::report::{
    tool_version, ChainSection, ConditionReport, EvidenceSection, ExtensionSection, GridEcho,
    RunReport, SpecEcho,
};
use crate::svg::{scene_side_by_side, scene_under_f, scene_under_operator};

#[derive(Parser)]
#[command(
    name = "univalens",
    version,
    about = "Univalence criterion checks, Loewner-chain diagnostics, and quasiconformal extension measurement for an integral operator on the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Estimate the suprema of both criterion conditions over the disk
    Check(CheckArgs),
    /// Render the disk mesh under f and under F_beta as one SVG
    Map(MapArgs),
    /// Sweep the chain transfer quantities w and p over a space-time grid
    Chain(ChainArgs),
    /// Evaluate the extension and measure its Beltrami coefficient
    Extend(ExtendArgs),
    /// Re-run a packaged worked example end to end
    Reproduce(ReproduceArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Function f as an expression in z, e.g. "z/(1 - z^2/2)"
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// g: expression or preset (fprime, fsecond, nehari-h, ratio-squared, ozaki-h, zero)
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// h: expression or preset
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// Complex alpha, Re alpha < 1/2 (syntax: "a+bi" or a bare real)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    /// Complex beta, Re beta > 0
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: String,
    /// Positive real weight m
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Quasiconformal constant in [0, 1); scales both bounds
    #[arg(long)]
    k: Option<f64>,
    /// Criterion preset
    #[arg(long, default_value = "general")]
    variant: String,
    /// Center of the first condition: proof ((m+1)/2) or printed ((m-1)/2)
    #[arg(long = "first-center", default_value = "proof")]
    first_center: String,
    /// Grid override: nr=N,ntheta=N,rmin=R,rmax=R
    #[arg(long)]
    grid: Option<String>,
    /// Write the JSON report here (timing omitted so reruns are byte-identical)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout even when --out is given
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MapArgs {
    /// Function f as an expression in z
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Complex beta for the operator panel
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: String,
    /// Number of concentric circles
    #[arg(long, default_value_t = 8)]
    rings: usize,
    /// Number of radial rays
    #[arg(long, default_value_t = 16)]
    rays: usize,
    /// Output SVG path
    #[arg(long)]
    svg: PathBuf,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated list of times t >= 0 (default: dense grid up to 10)
    #[arg(long)]
    t: Option<String>,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Annulus rin:rout for the Beltrami sweep
    #[arg(long, default_value = "1.001:3")]
    annulus: String,
    /// Measure sup |mu| on the annulus
    #[arg(long = "k-estimate")]
    k_estimate: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Which bundle to reproduce (currently: example1)
    what: String,
    /// Directory for the emitted report and SVG files
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.cmd {
        Cmd::Check(a) => cmd_check(a),
        Cmd::Map(a) => cmd_map(a),
        Cmd::Chain(a) => cmd_chain(a),
        Cmd::Extend(a) => cmd_extend(a),
        Cmd::Reproduce(a) => cmd_reproduce(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Precondition(format!("cannot parse `{}` as a complex number", s));
    if let Some(body) = t.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            0.0
        } else {
            re_str.parse().map_err(|_| bad())?
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => im_str.parse().map_err(|_| bad())?,
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

fn parse_grid(s: &str) -> Result<GridSpec> {
    let mut grid = GridSpec::default();
    for item in s.split(',') {
        let (key, value) = item.split_once('=').ok_or_else(|| {
            Error::Precondition(format!("grid entry `{}` is not key=value", item))
        })?;
        let bad = |what: &str| Error::Precondition(format!("cannot parse grid {} `{}`", what, value));
        match key.trim() {
            "nr" => grid.n_radii = value.parse().map_err(|_| bad("nr"))?,
            "ntheta" => grid.n_angles = value.parse().map_err(|_| bad("ntheta"))?,
            "rmin" => grid.r_min = value.parse().map_err(|_| bad("rmin"))?,
            "rmax" => grid.r_max = value.parse().map_err(|_| bad("rmax"))?,
            other => {
                return Err(Error::Precondition(format!(
                    "unknown grid key `{}` (expected nr, ntheta, rmin, rmax)",
                    other
                )))
            }
        }
    }
    grid.validate()?;
    Ok(grid)
}

fn build_spec(args: &CommonArgs) -> Result<(FunctionExpr, CriterionSpec, GridSpec)> {
    let f = FunctionExpr::parse(&args.f)?;
    let spec = CriterionSpec {
        m: args.m,
        alpha: parse_complex(&args.alpha)?,
        beta: parse_complex(&args.beta)?,
        variant: args.variant.parse::<Variant>()?,
        g: args.g.as_deref().map(CoFn::parse_flag).transpose()?,
        h: args.h.as_deref().map(CoFn::parse_flag).transpose()?,
        first_center: args.first_center.parse::<FirstCenter>()?,
        k: args.k,
    };
    spec.validate()?;
    let grid = match &args.grid {
        Some(s) => parse_grid(s)?,
        None => GridSpec::default(),
    };
    Ok((f, spec, grid))
}

fn spec_echo(
    f: &FunctionExpr,
    spec: &CriterionSpec,
    p: &ResolvedParams,
    grid: &GridSpec,
) -> SpecEcho {
    SpecEcho {
        f: f.source().to_string(),
        g: Some(p.g.describe()),
        h: Some(p.h.describe()),
        alpha: p.alpha.into(),
        beta: p.beta.into(),
        m: p.m,
        k: spec.k,
        variant: spec.variant.name().to_string(),
        first_center: spec.first_center.name().to_string(),
        grid: GridEcho {
            n_radii: grid.n_radii,
            n_angles: grid.n_angles,
            r_min: grid.r_min,
            r_max: grid.r_max,
        },
    }
}

fn emit_report(rep: &RunReport, out: Option<&Path>, also_stdout: bool) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, rep.without_timing().to_json())?;
            if also_stdout {
                print!("{}", rep.to_json());
            }
        }
        None => print!("{}", rep.to_json()),
    }
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let started = Instant::now();
    let (f, spec, grid) = build_spec(&args.common)?;
    let p = resolve_preset(&spec, &f)?;

    let (first, main, overall, extension) = if spec.k.is_some() {
        let out = check_qc_criterion(&spec, &f, &grid, &QuadConfig::default(), true)?;
        let ext = out.measured_k.map(|mk| ExtensionSection {
            r_in: 1.001,
            r_out: 5.0,
            n_radii: 16,
            n_angles: 64,
            estimated_k: mk,
            k: spec.k,
            within_k: out.within_k,
        });
        (out.first, out.main, out.overall, ext)
    } else {
        let out = check_criterion(&spec, &f, &grid)?;
        (out.first, out.main, out.overall, None)
    };

    let rep = RunReport {
        tool_version: tool_version(),
        command: "check".into(),
        spec: spec_echo(&f, &spec, &p, &grid),
        condition1: Some(ConditionReport::from(&first)),
        condition2: Some(ConditionReport::from(&main)),
        overall: Some(overall),
        chain: None,
        extension,
        evidence: None,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    };
    emit_report(&rep, args.common.out.as_deref(), args.common.json)?;
    eprintln!(
        "condition1: sup {:.9} {} bound {:.6} -> {}",
        first.sup_estimate,
        if first.strict { "<" } else { "<=" },
        first.bound,
        if first.satisfied { "satisfied" } else { "violated" }
    );
    eprintln!(
        "condition2: sup {:.9} {} bound {:.6} -> {}",
        main.sup_estimate,
        if main.strict { "<" } else { "<=" },
        main.bound,
        if main.satisfied { "satisfied" } else { "violated" }
    );
    eprintln!("overall: {}", if overall { "SATISFIED" } else { "VIOLATED" });
    Ok(if overall { 0 } else { 1 })
}

fn cmd_map(args: MapArgs) -> Result<i32> {
    let f = FunctionExpr::parse(&args.f)?;
    let beta = parse_complex(&args.beta)?;
    let scene = scene_side_by_side(&f, beta, &QuadConfig::default(), args.rings, args.rays)?;
    std::fs::write(&args.svg, scene.render())?;
    eprintln!(
        "wrote {} ({} curves)",
        args.svg.display(),
        scene.curves.len()
    );
    Ok(0)
}

fn cmd_chain(args: ChainArgs) -> Result<i32> {
    let started = Instant::now();
    let (f, spec, grid_flag) = build_spec(&args.common)?;
    let p = resolve_preset(&spec, &f)?;
    // transfer sweeps are cheap but dense; default to a lighter grid than check
    let grid = if args.common.grid.is_some() {
        grid_flag
    } else {
        GridSpec {
            n_radii: 16,
            n_angles: 64,
            ..GridSpec::default()
        }
    };
    let ts = match &args.t {
        Some(list) => {
            let ts: std::result::Result<Vec<f64>, _> =
                list.split(',').map(|x| x.trim().parse::<f64>()).collect();
            ts.map_err(|_| Error::Precondition(format!("cannot parse t list `{}`", list)))?
        }
        None => default_t_grid(),
    };
    let mut zs = Vec::with_capacity(grid.n_radii * grid.n_angles);
    for r in grid.radii() {
        for th in grid.angles() {
            zs.push(Complex64::from_polar(r, th));
        }
    }
    let report = verify_chain(&p, &zs, &ts, spec.k)?;

    let rep = RunReport {
        tool_version: tool_version(),
        command: "chain".into(),
        spec: spec_echo(&f, &spec, &p, &grid),
        condition1: None,
        condition2: None,
        overall: Some(report.pass),
        chain: Some(ChainSection::from_report(&report, ts)),
        extension: None,
        evidence: None,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    };
    emit_report(&rep, args.common.out.as_deref(), args.common.json)?;
    eprintln!(
        "chain: sup |w| = {:.9}, min Re p = {:.9} over {} samples -> {}",
        report.sup_w_abs,
        report.min_re_p,
        report.samples,
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_extend(args: ExtendArgs) -> Result<i32> {
    let started = Instant::now();
    let (f, spec, grid) = build_spec(&args.common)?;
    let p = resolve_preset(&spec, &f)?;
    let (rin_s, rout_s) = args.annulus.split_once(':').ok_or_else(|| {
        Error::Precondition(format!("annulus must be rin:rout, got `{}`", args.annulus))
    })?;
    let r_in: f64 = rin_s
        .parse()
        .map_err(|_| Error::Precondition(format!("bad annulus inner radius `{}`", rin_s)))?;
    let r_out: f64 = rout_s
        .parse()
        .map_err(|_| Error::Precondition(format!("bad annulus outer radius `{}`", rout_s)))?;

    let cfg = QuadConfig::default();
    let map = ExtensionMap {
        params: &p,
        cfg,
    };
    let (n_radii, n_angles) = (24usize, 96usize);
    let measured = estimate_k(&map, r_in, r_out, n_radii, n_angles)?;

    let (c1, c2, overall, within) = if spec.k.is_some() {
        let out = check_qc_criterion(&spec, &f, &grid, &cfg, false)?;
        let within = spec.k.map(|k| measured <= k + crate::qcext::MEASURED_K_SLACK);
        (
            Some(ConditionReport::from(&out.first)),
            Some(ConditionReport::from(&out.main)),
            Some(out.overall),
            within,
        )
    } else {
        (None, None, None, None)
    };

    let rep = RunReport {
        tool_version: tool_version(),
        command: "extend".into(),
        spec: spec_echo(&f, &spec, &p, &grid),
        condition1: c1,
        condition2: c2,
        overall,
        chain: None,
        extension: Some(ExtensionSection {
            r_in,
            r_out,
            n_radii,
            n_angles,
            estimated_k: measured,
            k: spec.k,
            within_k: within,
        }),
        evidence: None,
        wall_time_ms: Some(started.elapsed().as_millis() as u64),
    };
    emit_report(&rep, args.common.out.as_deref(), args.common.json)?;
    eprintln!(
        "extension: sup |mu| = {:.9} on {}..{}{}",
        measured,
        r_in,
        r_out,
        match spec.k {
            Some(k) => format!(" (k = {})", k),
            None => String::new(),
        }
    );
    let _ = args.k_estimate; // measurement always runs; the flag is accepted for symmetry
    Ok(match overall {
        Some(ok) => {
            if ok {
                0
            } else {
                1
            }
        }
        None => 0,
    })
}

/// Golden tolerances of the packaged example.
const EX1_FIRST_SUP: f64 = 0.5;
const EX1_FIRST_TOL: f64 = 1e-6;
const EX1_MAIN_BOUND: f64 = 24.0 / 27.0;
const EX1_MAIN_TOL: f64 = 1e-6;

fn cmd_reproduce(args: ReproduceArgs) -> Result<i32> {
    if args.what != "example1" {
        return Err(Error::Precondition(format!(
            "unknown bundle `{}` (expected `example1`)",
            args.what
        )));
    }
    let f = FunctionExpr::parse("z/(1 - z^2/2)")?;
    let beta = Complex64::new(2.0, 0.0);
    let spec = CriterionSpec {
        beta,
        variant: Variant::CorollaryC34,
        ..CriterionSpec::default()
    };
    let grid = GridSpec::default();
    let p = resolve_preset(&spec, &f)?;
    let out = check_criterion(&spec, &f, &grid)?;

    let cfg = QuadConfig::default();
    let operator = |z: Complex64| integral_operator(&f, beta, z, &cfg);
    let evidence_grid = GridSpec {
        n_radii: 32,
        n_angles: 128,
        r_min: 1e-3,
        r_max: 0.995,
    };
    let evidence = univalence_evidence(operator, &evidence_grid, 12)?;

    std::fs::create_dir_all(&args.out_dir)?;
    let f_svg = args.out_dir.join("example1_f.svg");
    let op_svg = args.out_dir.join("example1_f2.svg");
    std::fs::write(&f_svg, scene_under_f(&f, 8, 16)?.render())?;
    std::fs::write(&op_svg, scene_under_operator(&f, beta, &cfg, 8, 16)?.render())?;

    let rep = RunReport {
        tool_version: tool_version(),
        command: "reproduce example1".into(),
        spec: spec_echo(&f, &spec, &p, &grid),
        condition1: Some(ConditionReport::from(&out.first)),
        condition2: Some(ConditionReport::from(&out.main)),
        overall: Some(out.overall && evidence.pass),
        chain: None,
        extension: None,
        evidence: Some(EvidenceSection::from(&evidence)),
        wall_time_ms: None,
    };
    let report_path = args.out_dir.join("example1_report.json");
    std::fs::write(&report_path, rep.to_json())?;

    let mut failures = 0usize;
    let mut assert_line = |ok: bool, label: String| {
        println!("{}: {}", if ok { "PASS" } else { "FAIL" }, label);
        if !ok {
            failures += 1;
        }
    };
    assert_line(
        (out.first.sup_estimate - EX1_FIRST_SUP).abs() <= EX1_FIRST_TOL,
        format!(
            "condition1 sup = {:.9} matches {} within {:.0e}",
            out.first.sup_estimate, EX1_FIRST_SUP, EX1_FIRST_TOL
        ),
    );
    assert_line(
        out.first.satisfied,
        format!("condition1 satisfied (bound {})", out.first.bound),
    );
    assert_line(
        out.main.sup_estimate <= EX1_MAIN_BOUND + EX1_MAIN_TOL,
        format!(
            "condition2 sup = {:.9} stays below 24/27 + {:.0e}",
            out.main.sup_estimate, EX1_MAIN_TOL
        ),
    );
    assert_line(
        out.main.satisfied,
        format!("condition2 satisfied (bound {})", out.main.bound),
    );
    assert_line(
        evidence.pass,
        format!(
            "univalence evidence passes (min |F'| = {:.6}, {} windings checked)",
            evidence.min_abs_deriv, evidence.windings_checked
        ),
    );
    println!(
        "wrote {}, {}, {}",
        report_path.display(),
        f_svg.display(),
        op_svg.display()
    );
    Ok(if failures == 0 { 0 } else { 1 })
}
