//! `induced` — CSV-emitting command-line front end for evaluating,
//! inverting, and sampling induced orthogonal-polynomial distributions.
//!
//! Exit codes: 0 on success, 1 on numeric failure, 2 on usage errors or
//! unsupported parameter ranges.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;

use induced::idist::{idist_jacobi_with_bound, InducedDistribution};
use induced::inverse::idist_inverse;
use induced::measures::{format_table, MeasureSpec};
use induced::sampling::{
    equilibrium_cdf, equilibrium_experiment, gram_discrepancy, ls_design, sample_count,
    total_degree_set, MixtureSampler, MultiIndexSet, TensorMeasure,
};

#[derive(Parser)]
#[command(
    name = "induced",
    about = "Induced orthogonal-polynomial distributions: evaluation, inversion, sampling",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the three-term recurrence coefficient table of a measure.
    Coeffs {
        /// Measure family: jacobi, hf (half-line Freud), or freud.
        #[arg(long)]
        measure: String,
        /// Comma-separated family parameters, e.g. `0,0`.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Largest coefficient index (table has N+1 rows).
        #[arg(short = 'N', long = "max-index")]
        n_max: usize,
        /// Output file (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the order-n induced distribution F_n on a grid.
    Eval {
        #[arg(long)]
        measure: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Induced order n.
        #[arg(short = 'n', long)]
        order: usize,
        /// Quadrature size override (default: family-specific).
        #[arg(short = 'M', long)]
        quad: Option<usize>,
        /// Evaluation points: comma-separated list, or @FILE with one value
        /// per line.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Append the a-posteriori truncation bound column (Jacobi only).
        #[arg(long)]
        bound: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invert the order-n induced distribution at given quantiles.
    Invert {
        #[arg(long)]
        measure: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(short = 'n', long)]
        order: usize,
        /// Quantiles in [0,1]: comma-separated list or @FILE. 0 and 1 map to
        /// the support endpoints (`-inf`/`inf` tokens when unbounded).
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Absolute inversion tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw samples from the mixture of induced measures over an index set.
    Sample {
        /// Number of coordinates.
        #[arg(long)]
        dims: usize,
        /// Marginal measures as `family:params`, e.g. `jacobi:0,0`. Give one
        /// per coordinate, or a single one applied to all.
        #[arg(long = "measures", required = true)]
        measures: Vec<String>,
        /// Index set: `total-degree:d,n` or @FILE with one comma-separated
        /// multi-index per line.
        #[arg(long)]
        lambda: String,
        /// Number of samples.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted least-squares concentration demo: repeated seeded designs.
    LsDemo {
        #[arg(long)]
        dims: usize,
        /// Total degree of the index set.
        #[arg(long)]
        degree: usize,
        /// Target Gram discrepancy threshold in (0,1).
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Oversampling/failure-rate exponent.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equilibrium-measure experiment: normalized sample radii vs G_d.
    Equilibrium {
        #[arg(long)]
        dims: usize,
        /// Total degree n of the index set.
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Lib(induced::Error),
}

impl From<induced::Error> for CliError {
    fn from(e: induced::Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Lib(err) => match err {
            induced::Error::UnsupportedMeasure(_)
            | induced::Error::Domain(_)
            | induced::Error::Parse { .. } => 2,
            _ => 1,
        },
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn parse_measure(name: &str, params: &str) -> Result<MeasureSpec, CliError> {
    let vals = parse_float_list(params)?;
    let two = |what: &str| -> Result<(f64, f64), CliError> {
        if vals.len() != 2 {
            return Err(CliError::Usage(format!(
                "{what} expects 2 parameters, got {}",
                vals.len()
            )));
        }
        Ok((vals[0], vals[1]))
    };
    match name {
        "jacobi" => {
            let (a, b) = two("jacobi")?;
            Ok(MeasureSpec::jacobi(a, b)?)
        }
        "hf" | "half-line-freud" | "halffreud" => {
            let (a, r) = two("half-line Freud")?;
            Ok(MeasureSpec::half_line_freud(a, r)?)
        }
        "freud" => {
            let (a, r) = two("Freud")?;
            Ok(MeasureSpec::freud(a, r)?)
        }
        other => Err(CliError::Usage(format!(
            "unknown measure `{other}` (expected jacobi, hf, or freud)"
        ))),
    }
}

fn parse_float_token(tok: &str) -> Result<f64, CliError> {
    match tok.trim() {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t
            .parse()
            .map_err(|e| CliError::Usage(format!("bad number `{t}`: {e}"))),
    }
}

fn parse_float_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',').map(parse_float_token).collect()
}

/// A `--x`/`--u` argument: either an inline comma-separated list or `@FILE`
/// with one value per line.
fn parse_grid(arg: &str) -> Result<Vec<f64>, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_float_token)
            .collect()
    } else {
        parse_float_list(arg)
    }
}

fn parse_lambda(arg: &str, dims: usize) -> Result<MultiIndexSet, CliError> {
    if let Some(spec) = arg.strip_prefix("total-degree:") {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Usage(
                "total-degree takes `d,n`, e.g. total-degree:2,5".into(),
            ));
        }
        let d: usize = parts[0]
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad dimension `{}`: {e}", parts[0])))?;
        if d != dims {
            return Err(CliError::Usage(format!(
                "index-set dimension {d} != --dims {dims}"
            )));
        }
        let n: usize = parts[1]
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad degree `{}`: {e}", parts[1])))?;
        Ok(total_degree_set(d, n)?)
    } else if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
        let mut indices = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let idx: Vec<usize> = line
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|e| CliError::Usage(format!("bad index `{t}`: {e}")))
                })
                .collect::<Result<_, _>>()?;
            indices.push(idx);
        }
        Ok(MultiIndexSet::new(dims, indices)?)
    } else {
        Err(CliError::Usage(
            "lambda must be `total-degree:d,n` or `@FILE`".into(),
        ))
    }
}

fn parse_marginals(measures: &[String], dims: usize) -> Result<TensorMeasure, CliError> {
    let parse_one = |s: &String| -> Result<MeasureSpec, CliError> {
        let (name, params) = s.split_once(':').ok_or_else(|| {
            CliError::Usage(format!("measure `{s}` must look like `family:params`"))
        })?;
        parse_measure(name, params)
    };
    let specs = if measures.len() == 1 {
        vec![parse_one(&measures[0])?; dims]
    } else if measures.len() == dims {
        measures.iter().map(parse_one).collect::<Result<_, _>>()?
    } else {
        return Err(CliError::Usage(format!(
            "got {} --measures flags for {dims} coordinates (give 1 or {dims})",
            measures.len()
        )));
    };
    Ok(TensorMeasure::new(specs)?)
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| {
            CliError::Usage(format!("cannot write `{}`: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fmt_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.16e}")
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Coeffs { measure, params, n_max, out } => {
            let spec = parse_measure(&measure, &params)?;
            let table = spec.recurrence_table(n_max)?;
            emit(out, &format_table(&table, spec.support()))
        }
        Command::Eval { measure, params, order, quad, x, bound, out } => {
            let spec = parse_measure(&measure, &params)?;
            if bound && !matches!(spec, MeasureSpec::Jacobi { .. }) {
                return Err(CliError::Usage(
                    "--bound is only available for Jacobi measures".into(),
                ));
            }
            let grid = parse_grid(&x)?;
            let mut text = String::new();
            if bound {
                let MeasureSpec::Jacobi { alpha, beta } = spec else { unreachable!() };
                let m = quad.unwrap_or(10);
                text.push_str("x,F,bound\n");
                for &xi in &grid {
                    let (f, b) = idist_jacobi_with_bound(alpha, beta, order, xi, m)?;
                    let _ = writeln!(text, "{},{},{}", fmt_value(xi), fmt_value(f), fmt_value(b));
                }
            } else {
                let dist = match quad {
                    Some(m) => InducedDistribution::with_quad_size(spec, order, m)?,
                    None => InducedDistribution::new(spec, order)?,
                };
                text.push_str("x,F\n");
                for &xi in &grid {
                    let f = dist.eval(xi)?;
                    let _ = writeln!(text, "{},{}", fmt_value(xi), fmt_value(f));
                }
            }
            emit(out, &text)
        }
        Command::Invert { measure, params, order, u, tol, out } => {
            let spec = parse_measure(&measure, &params)?;
            let dist = InducedDistribution::new(spec, order)?;
            let grid = parse_grid(&u)?;
            let mut text = String::from("u,x\n");
            for &ui in &grid {
                let x = idist_inverse(ui, &dist, tol)?;
                let _ = writeln!(text, "{},{}", fmt_value(ui), fmt_value(x));
            }
            emit(out, &text)
        }
        Command::Sample { dims, measures, lambda, count, seed, out } => {
            let tensor = parse_marginals(&measures, dims)?;
            let set = parse_lambda(&lambda, dims)?;
            let sampler = MixtureSampler::new(set, &tensor)?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut text = String::new();
            let header: Vec<String> = (1..=dims).map(|j| format!("x{j}")).collect();
            let _ = writeln!(text, "{}", header.join(","));
            for _ in 0..count {
                let point = sampler.sample(&mut rng)?;
                let row: Vec<String> = point.iter().map(|&v| fmt_value(v)).collect();
                let _ = writeln!(text, "{}", row.join(","));
            }
            emit(out, &text)
        }
        Command::LsDemo { dims, degree, delta, r, trials, seed, out } => {
            let set = total_degree_set(dims, degree)?;
            let n_basis = set.len();
            let c_delta = delta + (1.0 - delta) * (1.0 - delta).ln();
            let m = sample_count(n_basis, r, delta)?;
            let tensor =
                TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0)?, dims)?;
            let sampler = MixtureSampler::new(set.clone(), &tensor)?;
            let mut text = String::new();
            let _ = writeln!(text, "# N = {n_basis}, c_delta = {c_delta:.16e}, M = {m}");
            text.push_str("trial,gram_discrepancy\n");
            let mut successes = 0usize;
            for trial in 0..trials {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed + trial as u64);
                let samples = sampler.sample_batch(m, &mut rng)?;
                let design = ls_design(&set, &tensor, samples)?;
                let disc = gram_discrepancy(&design);
                if disc <= delta {
                    successes += 1;
                }
                let _ = writeln!(text, "{trial},{}", fmt_value(disc));
            }
            let _ = writeln!(
                text,
                "# successes = {successes}/{trials} with threshold delta = {delta}"
            );
            emit(out, &text)
        }
        Command::Equilibrium { dims, degree, count, seed, out } => {
            let (radii, ks) = equilibrium_experiment(dims, degree, count, seed)?;
            let mut text = String::from("r,empirical_cdf,G_d\n");
            for (i, &r) in radii.iter().enumerate() {
                let g = equilibrium_cdf(dims, r.min(1.0))?;
                let _ = writeln!(
                    text,
                    "{},{},{}",
                    fmt_value(r),
                    fmt_value((i + 1) as f64 / count as f64),
                    fmt_value(g)
                );
            }
            let _ = writeln!(text, "# ks_distance = {}", fmt_value(ks));
            emit(out, &text)
        }
    }
}
