//! Command-line front end: pointwise evaluation tables, transform sampling,
//! verification suites, contour reconstruction experiments, and kernel-norm
//! tables. All numeric output uses 17-significant-digit decimal rendering so
//! doubles round-trip exactly; identical configurations produce byte-identical
//! output.

use std::io::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use crate::bkernel::{b, b_profile, l1_norm_b, product_formula_residual, weighted_moment};
use crate::eigenfn::{
    c_fn, connection_residual, phi, phi_cap, psi, Differentiable, wronskian_bracket,
};
use crate::error::Result;
use crate::fourier::{discrete_transform, principal_transform, TransformRecord};
use crate::numerics::quad::QuadratureSpec;
use crate::profile::RadialProfile;
use crate::resolvent::{
    quotient_identity_residual, quotient_identity_residual_numeric, reconstruction_csv,
    reconstruction_rows, ContourSpec, SymbolPoint,
};

/// Quadrature settings for the whole invocation; `HARMONIA_QUAD_TOL`
/// overrides the default relative tolerance of 1e-9.
pub fn quad_spec() -> QuadratureSpec {
    let mut spec = QuadratureSpec::default();
    if let Ok(v) = std::env::var("HARMONIA_QUAD_TOL") {
        if let Ok(tol) = v.parse::<f64>() {
            if tol > 0.0 && tol < 1.0 {
                spec = spec.with_rel_tol(tol);
            }
        }
    }
    spec
}

/// Complex number in the form `a`, `ai`, `a+bi`, or `a-bi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix('i') {
            // Split into real and imaginary parts at the last +/- that is
            // not a leading sign or part of an exponent.
            let chars: Vec<char> = body.chars().collect();
            let mut split = None;
            for i in (1..chars.len()).rev() {
                if (chars[i] == '+' || chars[i] == '-')
                    && chars[i - 1] != 'e'
                    && chars[i - 1] != 'E'
                {
                    split = Some(i);
                    break;
                }
            }
            return match split {
                Some(i) => {
                    let re: f64 = body[..i].parse().map_err(|e| format!("{e}"))?;
                    let im_str = &body[i..];
                    let im: f64 = if im_str == "+" || im_str == "-" {
                        if im_str == "+" { 1.0 } else { -1.0 }
                    } else {
                        im_str.parse().map_err(|e| format!("{e}"))?
                    };
                    Ok(ComplexArg(Complex64::new(re, im)))
                }
                None => {
                    let im: f64 = if body.is_empty() || body == "+" {
                        1.0
                    } else if body == "-" {
                        -1.0
                    } else {
                        body.parse().map_err(|e| format!("{e}"))?
                    };
                    Ok(ComplexArg(Complex64::new(0.0, im)))
                }
            };
        }
        let re: f64 = s.parse().map_err(|e| format!("{e}"))?;
        Ok(ComplexArg(Complex64::new(re, 0.0)))
    }
}

/// `start:stop:step` range or a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RangeArg {
    pub fn points(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut i = 0usize;
        loop {
            let t = self.start + self.step * i as f64;
            if t > self.stop + 1e-12 * self.step.max(1.0) {
                break;
            }
            out.push(t);
            i += 1;
        }
        out
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => {
                let v: f64 = single.parse().map_err(|e| format!("{e}"))?;
                Ok(RangeArg { start: v, stop: v, step: 1.0 })
            }
            [start, stop, step] => {
                let start: f64 = start.parse().map_err(|e| format!("{e}"))?;
                let stop: f64 = stop.parse().map_err(|e| format!("{e}"))?;
                let step: f64 = step.parse().map_err(|e| format!("{e}"))?;
                if step <= 0.0 || stop < start {
                    return Err("range must satisfy step > 0 and stop >= start".into());
                }
                Ok(RangeArg { start, stop, step })
            }
            _ => Err("expected VALUE or START:STOP:STEP".into()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "harmonia", about = "Spherical analysis toolkit for the rank-one symmetric space of SL(2,R)", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFunction {
    Phi,
    PhiCap,
    B,
    Psi,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifySuite {
    Wronskian,
    Connection,
    ProductFormula,
    TransformPairs,
    QuotientIdentity,
    Moment,
    All,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Function to evaluate.
    #[arg(value_enum)]
    pub function: EvalFunction,
    /// Type index n.
    #[arg(long, default_value_t = 0)]
    pub n: i32,
    /// Spectral parameter lambda (e.g. `0.5`, `1.3+0.4i`).
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    pub lambda: ComplexArg,
    /// Discrete index k (for psi).
    #[arg(long)]
    pub k: Option<i32>,
    /// Radial coordinate: VALUE or START:STOP:STEP.
    #[arg(long, default_value = "1")]
    pub t: RangeArg,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Type index n.
    #[arg(long, default_value_t = 0)]
    pub n: i32,
    /// Kernel spectral parameter mu (the profile transformed is b_mu).
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub mu: ComplexArg,
    /// Largest imaginary-axis sample point.
    #[arg(long, default_value_t = 5.0)]
    pub xi_max: f64,
    /// Number of grid points on [0, xi-max].
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum)]
    pub suite: VerifySuite,
    #[arg(long)]
    pub n: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<ComplexArg>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub k: Option<i32>,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    /// Type index n.
    #[arg(long, default_value_t = 0)]
    pub n: i32,
    /// Contour truncation height.
    #[arg(long, default_value_t = 200.0)]
    pub height: f64,
    /// Contour node count.
    #[arg(long, default_value_t = 2048)]
    pub nodes: usize,
    /// Bump support start.
    #[arg(long, default_value_t = 0.5)]
    pub support_start: f64,
    /// Bump support end.
    #[arg(long, default_value_t = 1.5)]
    pub support_end: f64,
    /// Failure threshold on the max pointwise error.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Sample grid: START:STOP:STEP.
    #[arg(long, default_value = "0.25:2.5:0.25")]
    pub t: RangeArg,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct NormsArgs {
    /// Type index n.
    #[arg(long, default_value_t = 0)]
    pub n: i32,
    /// Real spectral points: START:STOP:STEP.
    #[arg(long, default_value = "5:40:5")]
    pub xi: RangeArg,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an eigenfunction or kernel on a radial grid.
    Eval(EvalArgs),
    /// Sample the spherical transforms of a resolvent kernel.
    Transform(TransformArgs),
    /// Run a named verification suite (exit 1 on failure).
    Verify(VerifyArgs),
    /// Reconstruct a smooth bump from the Cauchy-contour kernel sum.
    Reconstruct(ReconstructArgs),
    /// Table of L1 norms of the resolvent kernel along the real axis.
    Norms(NormsArgs),
}

fn emit(output: &Option<String>, content: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn fmt_row(t: f64, v: Complex64) -> String {
    format!("{:.16e},{:.16e},{:.16e}\n", t, v.re, v.im)
}

fn run_eval(args: &EvalArgs) -> Result<String> {
    let spec = quad_spec();
    let _ = &spec;
    let mut out = String::from("t,re_value,im_value\n");
    let lambda = args.lambda.0;
    for t in args.t.points() {
        let v = match args.function {
            EvalFunction::Phi => phi(args.n, lambda, t)?,
            EvalFunction::PhiCap => phi_cap(args.n, lambda, t)?,
            EvalFunction::B => b(args.n, lambda, t)?,
            EvalFunction::Psi => {
                let k = args.k.unwrap_or_else(|| lambda.re.round() as i32);
                psi(args.n, k, t)?
            }
            EvalFunction::C => c_fn(args.n, lambda)?,
        };
        out.push_str(&fmt_row(t, v));
    }
    Ok(out)
}

fn run_transform(args: &TransformArgs) -> Result<String> {
    let spec = quad_spec();
    let f = b_profile(args.n, args.mu.0)?;
    let points = args.points.max(2);
    let grid: Vec<Complex64> = (0..points)
        .map(|j| Complex64::new(0.0, args.xi_max * j as f64 / (points - 1) as f64))
        .collect();
    let record = TransformRecord::sample(&f, args.n, &grid, &spec)?;
    Ok(match args.format {
        OutputFormat::Csv => record.to_csv(),
        OutputFormat::Json => record.to_json(),
    })
}

struct Report {
    lines: String,
    all_pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { lines: String::new(), all_pass: true }
    }

    fn check(&mut self, name: &str, residual: f64, tol: f64) {
        let pass = residual.is_finite() && residual < tol;
        self.all_pass &= pass;
        self.lines.push_str(&format!(
            "{name}: {} residual={residual:.3e} tol={tol:.1e}\n",
            if pass { "pass" } else { "FAIL" }
        ));
    }
}

fn verify_wronskian(report: &mut Report, n: i32, lambda: Complex64) -> Result<()> {
    let f = Differentiable::phi(n, lambda);
    let g = Differentiable::phi_cap(n, lambda);
    let samples: Vec<Complex64> = [0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&t| wronskian_bracket(&f, &g, t))
        .collect();
    let mean = samples.iter().sum::<Complex64>() / samples.len() as f64;
    let spread = samples
        .iter()
        .map(|v| (v - mean).norm())
        .fold(0.0_f64, f64::max)
        / mean.norm();
    report.check("wronskian constancy", spread, 1e-10);
    let expected = 2.0 * lambda * c_fn(n, -lambda)?;
    report.check(
        "wronskian closed form",
        (mean - expected).norm() / expected.norm(),
        1e-7,
    );
    Ok(())
}

fn verify_connection(report: &mut Report, n: Option<i32>, lambda: Option<Complex64>) -> Result<()> {
    match (n, lambda) {
        (Some(n), Some(l)) => {
            let mut worst: f64 = 0.0;
            for &t in &[0.3, 0.9, 2.0, 4.0] {
                worst = worst.max(connection_residual(n, l, t)?);
            }
            report.check("connection formula", worst, 1e-8);
        }
        _ => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0);
            let mut worst: f64 = 0.0;
            for _ in 0..50 {
                let n = rng.gen_range(-5..=5);
                let mut l = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                if crate::eigenfn::SpectralParam(l).integer_distance() < 0.1 {
                    l += Complex64::new(0.15, 0.1);
                }
                let t = rng.gen_range(0.2..4.0);
                worst = worst.max(connection_residual(n, l, t)?);
            }
            report.check("connection formula (50 draws)", worst, 1e-8);
        }
    }
    Ok(())
}

fn verify_product_formula(report: &mut Report, n: i32, lambda: Complex64) -> Result<()> {
    let spec = quad_spec();
    let mut worst: f64 = 0.0;
    for &s in &[0.4, 1.0, 2.2] {
        for &t in &[0.7, 1.5, 3.0] {
            worst = worst.max(product_formula_residual(n, lambda, s, t, &spec)?);
        }
    }
    report.check("product formula (3x3 grid)", worst, 1e-6);
    Ok(())
}

fn verify_transform_pairs(
    report: &mut Report,
    n: i32,
    mu: Complex64,
    xi: f64,
    k: Option<i32>,
) -> Result<()> {
    let spec = quad_spec();
    let f = b_profile(n, mu)?;
    let v = principal_transform(&f, n, Complex64::new(0.0, xi), &spec)?;
    let expect = 1.0 / (mu * mu + xi * xi);
    report.check(
        "principal transform pair",
        (v - expect).norm() / expect.norm(),
        1e-6,
    );
    if let Some(k) = k {
        let v = discrete_transform(&f, n, k, &spec)?;
        let expect = 1.0 / (mu * mu - ((k * k) as f64));
        report.check(
            "discrete transform pair",
            (v - expect).norm() / expect.norm(),
            1e-6,
        );
    }
    Ok(())
}

fn verify_quotient_identity(report: &mut Report) -> Result<()> {
    let spec = quad_spec();
    let mut worst_alg: f64 = 0.0;
    for &l0 in &[2.5, 3.0, 4.0, 5.5] {
        for &l in &[1.3, 2.0, 2.7, 3.3] {
            for &zi in &[0.2, 0.5, 0.8, 0.95] {
                let r = quotient_identity_residual(
                    Complex64::new(l0, 0.0),
                    Complex64::new(l, 0.0),
                    Complex64::new(zi, 0.3),
                )?;
                worst_alg = worst_alg.max(r);
            }
        }
    }
    report.check("quotient identity (algebraic 4x4x4)", worst_alg, 1e-12);
    let r = quotient_identity_residual_numeric(
        0,
        Complex64::new(3.0, 0.0),
        Complex64::new(2.0, 0.0),
        SymbolPoint::Principal(Complex64::new(0.3, 0.9)),
        &spec,
    )?;
    report.check("quotient identity (numeric)", r, 1e-6);
    Ok(())
}

fn verify_moment(report: &mut Report, n: i32, xi: f64) -> Result<()> {
    let spec = quad_spec();
    let v = weighted_moment(n, xi, &spec)?;
    let expect = 1.0 / (xi * xi - ((n.abs() + 1) * (n.abs() + 1)) as f64);
    report.check("weighted moment", (v.re - expect).abs() / expect.abs(), 1e-6);
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let mut report = Report::new();
    let n = args.n.unwrap_or(2);
    let lambda = args.lambda.map(|c| c.0);
    match args.suite {
        VerifySuite::Wronskian => {
            verify_wronskian(&mut report, n, lambda.unwrap_or(Complex64::new(1.3, 0.4)))?
        }
        VerifySuite::Connection => verify_connection(&mut report, args.n, lambda)?,
        VerifySuite::ProductFormula => {
            verify_product_formula(&mut report, args.n.unwrap_or(0), lambda.unwrap_or(Complex64::new(2.0, 0.0)))?
        }
        VerifySuite::TransformPairs => verify_transform_pairs(
            &mut report,
            args.n.unwrap_or(0),
            lambda.unwrap_or(Complex64::new(2.0, 0.0)),
            args.xi.unwrap_or(1.0),
            args.k,
        )?,
        VerifySuite::QuotientIdentity => verify_quotient_identity(&mut report)?,
        VerifySuite::Moment => verify_moment(&mut report, args.n.unwrap_or(2), args.xi.unwrap_or(4.0))?,
        VerifySuite::All => {
            verify_wronskian(&mut report, 2, Complex64::new(1.3, 0.4))?;
            verify_connection(&mut report, None, None)?;
            verify_product_formula(&mut report, 0, Complex64::new(2.0, 0.0))?;
            verify_transform_pairs(&mut report, 0, Complex64::new(2.0, 0.0), 1.0, None)?;
            verify_transform_pairs(&mut report, 4, Complex64::new(5.0, 0.0), 2.0, Some(3))?;
            verify_quotient_identity(&mut report)?;
            verify_moment(&mut report, 2, 4.0)?;
        }
    }
    Ok((report.lines, report.all_pass))
}

fn run_reconstruct(args: &ReconstructArgs) -> Result<(String, bool)> {
    let spec = quad_spec();
    let f = RadialProfile::smooth_bump(args.support_start, args.support_end);
    let contour = ContourSpec {
        abscissa: (args.n.abs() + 2) as f64,
        height: args.height,
        nodes: args.nodes,
    };
    let ts = args.t.points();
    let rows = reconstruction_rows(&f, args.n, &ts, &contour, &spec)?;
    let max_err = rows.iter().map(|r| r.3).fold(0.0_f64, f64::max);
    let mut out = reconstruction_csv(&rows);
    out.push_str(&format!("# max_error,{max_err:.16e}\n"));
    Ok((out, max_err <= args.tol))
}

fn run_norms(args: &NormsArgs) -> Result<String> {
    let spec = quad_spec();
    let mut out = String::from("xi,l1_norm\n");
    for xi in args.xi.points() {
        let v = l1_norm_b(args.n, Complex64::new(xi, 0.0), &spec)?;
        out.push_str(&format!("{:.16e},{:.16e}\n", xi, v));
    }
    Ok(out)
}

/// Entry point: parses `args`, runs the command, and returns the process
/// exit code (0 success, 1 verification failure, 2 domain/usage error).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems are exit 2,
            // --help/--version are exit 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome: Result<(String, bool, Option<String>)> = match &cli.command {
        Command::Eval(a) => run_eval(a).map(|s| (s, true, a.output.clone())),
        Command::Transform(a) => run_transform(a).map(|s| (s, true, a.output.clone())),
        Command::Verify(a) => run_verify(a).map(|(s, ok)| (s, ok, None)),
        Command::Reconstruct(a) => run_reconstruct(a).map(|(s, ok)| (s, ok, a.output.clone())),
        Command::Norms(a) => run_norms(a).map(|s| (s, true, a.output.clone())),
    };
    match outcome {
        Ok((content, pass, output)) => {
            if emit(&output, &content).is_err() {
                eprintln!("OutputWriteFailed");
                return 2;
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{e:?}");
            2
        }
    }
}
