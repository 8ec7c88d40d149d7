use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sixj::asymptotic::decay_rate;
use sixj::checks::run_checks;
use sixj::integral::integral_estimate;
use sixj::racah::sixj_exact;
use sixj::sweep::{doubling, fit_decay, run_sweep, SweepConfig};
use sixj::{Edge, Error, SpinSextet, TetraGeometry, TetraKind};

const EXIT_DOMAIN: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "sixj", version, about = "Wigner 6j symbols: exact values, geometry and asymptotics")]
struct Cli {
    /// Digits after the decimal point for printed values.
    #[arg(long, global = true, default_value_t = 8)]
    digits: usize,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Six spins `j1 j2 j3 J1 J2 J3`, each "n", "n/2" or "n.5".
#[derive(Args)]
struct Spins {
    #[arg(num_args = 6, value_names = ["j1", "j2", "j3", "J1", "J2", "J3"], required = true)]
    spins: Vec<String>,
}

impl Spins {
    fn sextet(&self) -> Result<SpinSextet, Error> {
        SpinSextet::parse(&self.spins)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact value from Racah's sum.
    Exact(Spins),
    /// Saddle quadratic, discriminant, volume, dihedral angles, saddles.
    Geometry(Spins),
    /// Sweep k and compare exact values with the asymptotic formula (CSV).
    Scan {
        #[command(flatten)]
        spins: Spins,
        #[arg(long, default_value_t = 5)]
        k_min: u32,
        #[arg(long, default_value_t = 160)]
        k_max: u32,
        /// Linear step in k; without it k doubles from k_min.
        #[arg(long)]
        k_step: Option<u32>,
    },
    /// Run the identity suite on one sextet.
    Check(Spins),
    /// Predicted decay rate of a Minkowskian sextet against a fitted slope.
    Decay {
        /// `j1 j2 j3 J1 J2 J3 k_min k_max`.
        #[arg(num_args = 8, value_names = ["j1", "j2", "j3", "J1", "J2", "J3", "k_min", "k_max"], required = true)]
        args: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k_step: u32,
    },
    /// Quadrature of the continuous integral representation.
    Integral {
        /// Triad sums v1 v2 v3 v4.
        #[arg(num_args = 4, value_names = ["v1", "v2", "v3", "v4"], required = true, allow_negative_numbers = true)]
        v: Vec<f64>,
        /// Pair sums p1 p2 p3.
        #[arg(long, num_args = 3, value_names = ["p1", "p2", "p3"], required = true, allow_negative_numbers = true)]
        p: Vec<f64>,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 400)]
        n_points: usize,
    },
}

enum Failure {
    Domain(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Exact(spins) => emit(cli, &exact_report(&spins.sextet()?, cli.digits)),
        Command::Geometry(spins) => emit(cli, &geometry_report(&spins.sextet()?, cli.digits)?),
        Command::Scan { spins, k_min, k_max, k_step } => scan(cli, &spins.sextet()?, *k_min, *k_max, *k_step),
        Command::Check(spins) => {
            let report = run_checks(&spins.sextet()?)?;
            emit(cli, &report.to_string())?;
            if report.any_failed() {
                return Err(Failure::Internal("identity check failed".into()));
            }
            Ok(())
        }
        Command::Decay { args, k_step } => {
            let s = SpinSextet::parse(&args[..6])?;
            let k_min = parse_k(&args[6])?;
            let k_max = parse_k(&args[7])?;
            emit(cli, &decay_report(&s, k_min, k_max, *k_step, cli.digits)?)
        }
        Command::Integral { v, p, k, n_points } => {
            let v = [v[0], v[1], v[2], v[3]];
            let p = [p[0], p[1], p[2]];
            emit(cli, &integral_report(v, p, *k, *n_points, cli.digits)?)
        }
    }
}

fn parse_k(text: &str) -> Result<u32, Failure> {
    text.parse().map_err(|_| Failure::Domain(format!("cannot parse k {text:?}: expected a non-negative integer")))
}

fn exact_report(s: &SpinSextet, digits: usize) -> String {
    let x = sixj_exact(s);
    let mut out = String::new();
    writeln!(out, "sextet    {s}").unwrap();
    if !s.is_admissible() {
        writeln!(out, "inadmissible triad: the symbol is zero").unwrap();
    }
    writeln!(out, "sum_part  {}", x.sum_part).unwrap();
    let labels = ["(j1,j2,j3)", "(J1,j2,J3)", "(J1,J2,j3)", "(j1,J2,J3)"];
    for (label, t) in labels.iter().zip(&x.tri) {
        writeln!(out, "tri{label:<11} {t}").unwrap();
    }
    let (q, m) = x.simplified();
    writeln!(out, "value     {q} · √{m}").unwrap();
    writeln!(out, "decimal   {}", x.to_decimal(digits)).unwrap();
    out
}

fn geometry_report(s: &SpinSextet, digits: usize) -> Result<String, Failure> {
    let g = TetraGeometry::new(s)?;
    let mut out = String::new();
    writeln!(out, "sextet    {s}").unwrap();
    writeln!(out, "A         {}", g.coeffs.a).unwrap();
    writeln!(out, "B         {}", g.coeffs.b).unwrap();
    writeln!(out, "C         {}", g.coeffs.c).unwrap();
    writeln!(out, "delta     {}", g.delta).unwrap();
    writeln!(out, "kind      {}", g.kind).unwrap();
    match g.volume {
        Some(v) => writeln!(out, "volume    {v:.digits$}").unwrap(),
        None => writeln!(out, "volume    imaginary (V^2 < 0)").unwrap(),
    }
    if let Some(thetas) = g.thetas {
        for (e, t) in Edge::ALL.iter().zip(thetas) {
            writeln!(out, "theta_{:<3} {t:.digits$}", e.label()).unwrap();
        }
    }
    let (xp, xm) = (g.saddles.x_plus, g.saddles.x_minus);
    match g.kind {
        TetraKind::Minkowskian => {
            writeln!(out, "saddles   {:.digits$}, {:.digits$} (real)", xp.re, xm.re).unwrap();
        }
        _ => {
            writeln!(out, "x+        {:.digits$} + {:.digits$} i", xp.re, xp.im).unwrap();
            writeln!(out, "x-        {:.digits$} - {:.digits$} i", xm.re, -xm.im).unwrap();
        }
    }
    Ok(out)
}

fn scan(cli: &Cli, s: &SpinSextet, k_min: u32, k_max: u32, k_step: Option<u32>) -> Result<(), Failure> {
    let k_values = match k_step {
        Some(0) => return Err(Failure::Domain("k step must be positive".into())),
        Some(step) => (k_min.max(1)..=k_max).step_by(step as usize).collect(),
        None => doubling(k_min, k_max),
    };
    let config = SweepConfig::new(*s, k_values, cli.digits)?;
    let report = run_sweep(&config).map_err(|e| match e {
        Error::Degenerate | Error::Minkowskian => {
            Failure::Domain(format!("{e}; scan needs a Euclidean sextet, see the `decay` command"))
        }
        other => other.into(),
    })?;
    let median = report.median_top_half().unwrap_or(f64::NAN);
    let summary = format!(
        "{} rows, median env_rel_err over the top half of k = {median:.6e}, exact at k = {}: {}",
        report.rows.len(),
        report.rows.last().map(|r| r.k).unwrap_or(0),
        report.last_exact_decimal
    );
    match &cli.output {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path)?);
            report.write_csv(&mut file)?;
            file.flush()?;
            println!("{summary}");
        }
        None => {
            report.write_csv(io::stdout().lock())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn decay_report(s: &SpinSextet, k_min: u32, k_max: u32, k_step: u32, digits: usize) -> Result<String, Failure> {
    if k_step == 0 {
        return Err(Failure::Domain("k step must be positive".into()));
    }
    // Classify first so a non-Minkowskian sextet is reported as such.
    decay_rate(s)?;
    let k_values: Vec<u32> = (k_min.max(1)..=k_max).step_by(k_step as usize).collect();
    let fit = fit_decay(s, &k_values)?;
    let mut out = String::new();
    writeln!(out, "sextet          {s}").unwrap();
    writeln!(out, "points          {} (k = {}..{} step {k_step})", fit.points.len(), k_min, k_max).unwrap();
    writeln!(out, "predicted rate  {:.digits$}", fit.predicted.rate).unwrap();
    writeln!(out, "fitted slope    {:.digits$}", fit.slope).unwrap();
    writeln!(out, "raw slope       {:.digits$}", fit.raw_slope).unwrap();
    writeln!(out, "relative diff   {:.3e}", fit.relative_difference()).unwrap();
    Ok(out)
}

fn integral_report(v: [f64; 4], p: [f64; 3], k: u32, n_points: usize, digits: usize) -> Result<String, Failure> {
    let est = integral_estimate(v, p, k, n_points)?;
    let mut out = String::new();
    writeln!(out, "value           {:.digits$e}", est.value).unwrap();
    writeln!(out, "imaginary       {:.3e}", est.imaginary).unwrap();
    writeln!(out, "refined         {:.digits$e}", est.refined).unwrap();
    writeln!(out, "relative change {:.3e}", est.relative_change).unwrap();
    writeln!(out, "converged       {}", est.converged).unwrap();
    writeln!(out, "endpoint bound  {:.3e}", est.endpoint_bound).unwrap();
    Ok(out)
}
