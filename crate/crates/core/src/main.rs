//! Command-line front end: evaluations, scans, extremum search,
//! condition checks, Monte Carlo estimates and figure regeneration.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on numerical
//! failures.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gini_distortion::conditions::{self, CheckContext, TheoremId};
use gini_distortion::config;
use gini_distortion::copulas::SurvivalCopulaFamily;
use gini_distortion::distortions::DistortionFamily;
use gini_distortion::distributions::ContinuousDistribution;
use gini_distortion::error::Error;
use gini_distortion::extrema::{self, ExtremumKind};
use gini_distortion::measures;
use gini_distortion::montecarlo;
use gini_distortion::svg;

#[derive(Parser)]
#[command(
    name = "gini-distortion",
    version,
    about = "Distorted and copula-distorted Gini mean differences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single measure at fixed parameters.
    Eval(EvalArgs),
    /// Evaluate a measure over an alpha grid (optionally a theta grid)
    /// and write CSV, optionally an SVG plot.
    Scan(ScanArgs),
    /// Locate an extremum of the measure over a parameter window.
    Extrema(ExtremaArgs),
    /// Run a sufficient-condition checker (or all of them).
    Check(CheckArgs),
    /// Monte Carlo estimate of nu via copula sampling.
    Mc(McArgs),
    /// Regenerate the bundled figure CSV/SVG files.
    Figures(FiguresArgs),
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Distribution spec: exp(1), uniform(0,1), weibull(2,1), powerlaw(2).
    #[arg(long)]
    dist: Option<String>,
    /// Distortion spec: ph, prh, pow, gah:K=t^2/2.
    #[arg(long)]
    distortion: Option<String>,
    /// Copula spec: independence, fgm.
    #[arg(long)]
    copula: Option<String>,
    /// Copula parameter.
    #[arg(long)]
    theta: Option<f64>,
    /// `key = value` config file; its entries override flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    alpha: Option<f64>,
    /// One of eta, nu, eta-dalpha, nu-dalpha, mean, gini.
    #[arg(long, default_value = "eta")]
    measure: String,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Alpha grid as lo:hi:step.
    #[arg(long)]
    alpha_range: Option<String>,
    /// Optional theta grid as lo:hi:step (needs a copula).
    #[arg(long)]
    theta_range: Option<String>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG output path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ExtremaArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Search window as lo:hi.
    #[arg(long)]
    window: Option<String>,
    /// min or max; decided from the data when omitted.
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Check id (T3.1 .. T4.4, A2.3, A2.4) or `all`.
    id: String,
    #[command(flatten)]
    model: ModelArgs,
    /// Distortion parameter used by the pointwise hypotheses.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Write grid violations as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct FiguresArgs {
    /// Output directory for figN.csv / figN.svg.
    #[arg(long, default_value = "figures")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Scan(a) => run_scan(a),
        Command::Extrema(a) => run_extrema(a),
        Command::Check(a) => run_check(a),
        Command::Mc(a) => run_mc(a),
        Command::Figures(a) => run_figures(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidModel(_)
        | Error::InvalidFamilyId(_)
        | Error::MissingK
        | Error::AlphaOutOfRange { .. }
        | Error::ThetaOutOfRange { .. }
        | Error::UOutOfRange { .. }
        | Error::OutsideSupport { .. }
        | Error::WindowOutsideInterval { .. }
        | Error::MissingContext { .. } => 2,
        _ => 3,
    }
}

/// Load the config file (if any) and merge its entries over the
/// flag values; config entries win.
fn merge_config(model: &mut ModelArgs) -> Result<BTreeMap<String, String>, Error> {
    let Some(path) = &model.config else {
        return Ok(BTreeMap::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let map = config::parse_config_file(&text)?;
    if let Some(v) = map.get("dist") {
        model.dist = Some(v.clone());
    }
    if let Some(v) = map.get("distortion") {
        model.distortion = Some(v.clone());
    }
    if let Some(v) = map.get("copula") {
        model.copula = Some(v.clone());
    }
    if let Some(v) = map.get("theta") {
        model.theta = Some(parse_cfg_f64(v, "theta")?);
    }
    Ok(map)
}

fn parse_cfg_f64(s: &str, what: &str) -> Result<f64, Error> {
    s.parse()
        .map_err(|_| Error::Config(format!("invalid {what} `{s}`")))
}

fn parse_cfg_u64(s: &str, what: &str) -> Result<u64, Error> {
    s.parse()
        .map_err(|_| Error::Config(format!("invalid {what} `{s}`")))
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::Config(format!("missing required `{what}`")))
}

struct Model {
    dist: ContinuousDistribution,
    family: DistortionFamily,
    copula: Option<SurvivalCopulaFamily>,
    theta: Option<f64>,
}

fn build_model(model: &ModelArgs) -> Result<Model, Error> {
    let dist_spec = require(model.dist.clone(), "--dist")?;
    let distortion_spec = require(model.distortion.clone(), "--distortion")?;
    let dist = config::parse_dist(&dist_spec)?;
    let family = config::parse_distortion(&distortion_spec, &dist)?;
    let copula = match &model.copula {
        Some(c) => Some(config::parse_copula(c)?),
        None => None,
    };
    Ok(Model {
        dist,
        family,
        copula,
        theta: model.theta,
    })
}

fn copula_pair(m: &Model) -> Result<(&SurvivalCopulaFamily, f64), Error> {
    let c = m
        .copula
        .as_ref()
        .ok_or_else(|| Error::Config("this measure needs --copula".to_string()))?;
    let t = require(m.theta, "--theta")?;
    Ok((c, t))
}

fn run_eval(mut args: EvalArgs) -> Result<(), Error> {
    let map = merge_config(&mut args.model)?;
    if let Some(v) = map.get("alpha") {
        args.alpha = Some(parse_cfg_f64(v, "alpha")?);
    }
    if let Some(v) = map.get("measure") {
        args.measure = v.clone();
    }
    let m = build_model(&args.model)?;
    let alpha = require(args.alpha, "--alpha")?;

    let result = match args.measure.as_str() {
        "eta" => measures::eta(&m.dist, &m.family, alpha)?,
        "eta-dalpha" => measures::eta_dalpha(&m.dist, &m.family, alpha)?,
        "mean" => measures::distorted_mean(&m.dist, &m.family, alpha)?,
        "nu" => {
            let (c, t) = copula_pair(&m)?;
            measures::nu(&m.dist, &m.family, c, t, alpha)?
        }
        "nu-dalpha" => {
            let (c, t) = copula_pair(&m)?;
            measures::nu_dalpha(&m.dist, &m.family, c, t, alpha)?
        }
        "gini" => {
            let (c, t) = copula_pair(&m)?;
            measures::copula_gini_index(&m.dist, &m.family, c, t, alpha)?
        }
        other => {
            return Err(Error::Config(format!("unknown measure `{other}`")));
        }
    };
    println!("{} = {:.8e}", result.inputs, result.value);
    println!(
        "err_estimate = {:.8e}  subdivisions = {}  converged = {}",
        result.quadrature.error_estimate,
        result.quadrature.subdivisions,
        result.quadrature.converged
    );
    Ok(())
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_scan(mut args: ScanArgs) -> Result<(), Error> {
    let map = merge_config(&mut args.model)?;
    if let Some(v) = map.get("alpha_range") {
        args.alpha_range = Some(v.clone());
    }
    if let Some(v) = map.get("theta_range") {
        args.theta_range = Some(v.clone());
    }
    let m = build_model(&args.model)?;
    let alphas = config::parse_range(&require(args.alpha_range.clone(), "--alpha-range")?)?;

    let rows = match &args.theta_range {
        Some(tr) => {
            let thetas = config::parse_range(tr)?;
            let c = m
                .copula
                .as_ref()
                .ok_or_else(|| Error::Config("theta scans need --copula".to_string()))?;
            extrema::scan_surface(
                |t, a| measures::nu(&m.dist, &m.family, c, t, a),
                &thetas,
                &alphas,
            )
        }
        None => match (&m.copula, m.theta) {
            (Some(c), Some(t)) => {
                extrema::scan(|a| measures::nu(&m.dist, &m.family, c, t, a), &alphas)
            }
            _ => extrema::scan(|a| measures::eta(&m.dist, &m.family, a), &alphas),
        },
    };

    write_or_print(&args.out, &extrema::rows_to_csv(&rows))?;

    if let Some(svg_path) = &args.svg {
        let doc = match &args.theta_range {
            Some(tr) => {
                let thetas = config::parse_range(tr)?;
                let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
                svg::heatmap("scan", &alphas, &thetas, &values)
            }
            None => {
                let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.alpha, r.value)).collect();
                svg::line_plot("scan", &[("value".to_string(), pts)])
            }
        };
        write_or_print(&Some(svg_path.clone()), &doc)?;
    }
    Ok(())
}

fn run_extrema(mut args: ExtremaArgs) -> Result<(), Error> {
    let map = merge_config(&mut args.model)?;
    if let Some(v) = map.get("window") {
        args.window = Some(v.clone());
    }
    if let Some(v) = map.get("kind") {
        args.kind = Some(v.clone());
    }
    let m = build_model(&args.model)?;
    let window = config::parse_window(&require(args.window.clone(), "--window")?)?;
    let hint = match args.kind.as_deref() {
        None => None,
        Some("min") => Some(ExtremumKind::Minimum),
        Some("max") => Some(ExtremumKind::Maximum),
        Some(other) => {
            return Err(Error::Config(format!(
                "kind must be `min` or `max`, got `{other}`"
            )));
        }
    };

    let result = match (&m.copula, m.theta) {
        (Some(c), Some(t)) => extrema::find_extremum(
            |a| measures::nu(&m.dist, &m.family, c, t, a).map(|r| r.value),
            window,
            hint,
        )?,
        _ => extrema::find_extremum(
            |a| measures::eta(&m.dist, &m.family, a).map(|r| r.value),
            window,
            hint,
        )?,
    };

    let kind = match result.kind {
        ExtremumKind::Minimum => "minimum",
        ExtremumKind::Maximum => "maximum",
        ExtremumKind::NoneInWindow => "none-in-window",
    };
    println!("kind = {kind}");
    println!("alpha_star = {:.8e}", result.alpha_star);
    println!("value = {:.8e}", result.value);
    println!(
        "bracket = ({:.8e}, {:.8e})  evaluations = {}",
        result.bracket.0, result.bracket.1, result.evaluations
    );
    Ok(())
}

fn run_check(mut args: CheckArgs) -> Result<(), Error> {
    let map = merge_config(&mut args.model)?;
    if let Some(v) = map.get("alpha") {
        args.alpha = parse_cfg_f64(v, "alpha")?;
    }
    let m = build_model(&args.model)?;
    // copula checks verify their conclusion at a concrete theta; use
    // the strongest dependence by default
    let theta = m.theta.or(m.copula.as_ref().map(|c| c.theta_interval().1));
    let ctx = CheckContext {
        dist: m.dist,
        family: m.family,
        alpha: args.alpha,
        copula: m.copula,
        theta,
    };

    let mut csv = String::new();
    if args.id.eq_ignore_ascii_case("all") {
        for (id, outcome) in conditions::check_all(&ctx) {
            match outcome {
                Ok(rep) => {
                    print!("{rep}");
                    csv.push_str(&rep.to_csv());
                }
                Err(e) => println!("[{id}] not applicable: {e}"),
            }
        }
    } else {
        let id: TheoremId = args.id.parse()?;
        let rep = conditions::check(id, &ctx)?;
        print!("{rep}");
        csv.push_str(&rep.to_csv());
    }
    if let Some(path) = &args.csv {
        write_or_print(&Some(path.clone()), &csv)?;
    }
    Ok(())
}

fn run_mc(mut args: McArgs) -> Result<(), Error> {
    let map = merge_config(&mut args.model)?;
    if let Some(v) = map.get("alpha") {
        args.alpha = Some(parse_cfg_f64(v, "alpha")?);
    }
    if let Some(v) = map.get("n") {
        args.n = parse_cfg_u64(v, "n")?;
    }
    if let Some(v) = map.get("seed") {
        args.seed = parse_cfg_u64(v, "seed")?;
    }
    let m = build_model(&args.model)?;
    let alpha = require(args.alpha, "--alpha")?;
    let copula = m
        .copula
        .clone()
        .unwrap_or_else(SurvivalCopulaFamily::independence);
    let theta = m.theta.unwrap_or(0.0);

    let est = montecarlo::estimate_nu(&m.dist, &m.family, alpha, &copula, theta, args.n, args.seed)?;
    println!("mean = {:.8e}", est.mean);
    println!("std_error = {:.8e}", est.std_error);
    println!("n = {}  seed = {}", est.n, est.seed);
    Ok(())
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), Error> {
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn run_figures(args: FiguresArgs) -> Result<(), Error> {
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", args.out_dir.display())))?;
    let dir = &args.out_dir;

    let thetas = config::parse_range("-1:1:0.1")?;
    let alphas = config::parse_range("0.1:10:0.1")?;

    // dependence surface for the exponential proportional hazard model
    {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let fgm = SurvivalCopulaFamily::fgm();
        let rows = extrema::scan_surface(
            |t, a| measures::nu(&e, &ph, &fgm, t, a),
            &thetas,
            &alphas,
        );
        write_file(dir, "fig1.csv", &extrema::rows_to_csv(&rows))?;
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        write_file(
            dir,
            "fig1.svg",
            &svg::heatmap("nu for exp(1), ph, fgm", &alphas, &thetas, &values),
        )?;
    }

    // the two gah curves with error-function closed forms
    {
        let grid = config::parse_range("0.1:20:0.1")?;
        let mut csv = String::from("panel,alpha,value,err_estimate,converged\n");
        let mut series = Vec::new();
        for (panel, dist) in [
            ("uniform", ContinuousDistribution::uniform(0.0, 1.0)),
            ("exp", ContinuousDistribution::exponential(1.0)),
        ] {
            let gah = config::parse_distortion("gah:K=t^2/2", &dist)?;
            let rows = extrema::scan(|a| measures::eta(&dist, &gah, a), &grid);
            for r in &rows {
                csv.push_str(&format!(
                    "{panel},{:.8e},{:.8e},{:.8e},{}\n",
                    r.alpha, r.value, r.err_estimate, r.converged
                ));
            }
            series.push((
                panel.to_string(),
                rows.iter().map(|r| (r.alpha, r.value)).collect(),
            ));
        }
        write_file(dir, "fig2.csv", &csv)?;
        write_file(
            dir,
            "fig2.svg",
            &svg::line_plot("eta for gah K=t^2/2", &series),
        )?;
    }

    // dependence surface for the bounded power-law case
    {
        let p = ContinuousDistribution::power_law(2.0);
        let prh = DistortionFamily::proportional_reversed_hazard();
        let fgm = SurvivalCopulaFamily::fgm();
        let rows = extrema::scan_surface(
            |t, a| measures::nu(&p, &prh, &fgm, t, a),
            &thetas,
            &alphas,
        );
        write_file(dir, "fig3.csv", &extrema::rows_to_csv(&rows))?;
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        write_file(
            dir,
            "fig3.svg",
            &svg::heatmap("nu for powerlaw(2), prh, fgm", &alphas, &thetas, &values),
        )?;
    }

    println!("wrote fig1/fig2/fig3 CSV and SVG to {}", dir.display());
    Ok(())
}
