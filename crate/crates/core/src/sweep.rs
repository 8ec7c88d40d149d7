//! Convergence sweeps of the asymptotic formula against exact values, and
//! the log-slope fit for Minkowskian decay.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::asymptotic::{decay_rate, estimate_from_parts, DecayEstimate};
use crate::error::{Error, Result};
use crate::geometry::{TetraGeometry, TetraKind};
use crate::racah::sixj_exact;
use crate::spin::SpinSextet;

pub const CSV_HEADER: &str = "k,exact,pr,amplitude,abs_err,env_rel_err,phase";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub sextet: SpinSextet,
    pub k_values: Vec<u32>,
    pub digits: usize,
}

impl SweepConfig {
    pub fn new(sextet: SpinSextet, k_values: Vec<u32>, digits: usize) -> Result<Self> {
        if k_values.is_empty() {
            return Err(Error::Domain("no k values given".into()));
        }
        if k_values[0] == 0 {
            return Err(Error::Domain("k values must be positive".into()));
        }
        if k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("k values must be strictly increasing".into()));
        }
        Ok(SweepConfig { sextet, k_values, digits })
    }
}

/// `k_min, 2 k_min, 4 k_min, ...` up to `k_max`.
pub fn doubling(k_min: u32, k_max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut k = k_min.max(1);
    while k <= k_max {
        out.push(k);
        k = match k.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub k: u32,
    pub exact: f64,
    pub pr: f64,
    pub amplitude: f64,
    pub abs_err: f64,
    pub env_rel_err: f64,
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub sextet: SpinSextet,
    pub rows: Vec<ConvergenceRow>,
    /// Exact value at the largest `k`, rounded to the configured digits.
    pub last_exact_decimal: String,
}

fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    })
}

impl ConvergenceReport {
    /// Median of `env_rel_err` over rows with `lo <= k <= hi`.
    pub fn median_env_rel_err(&self, lo: u32, hi: u32) -> Option<f64> {
        median(
            self.rows
                .iter()
                .filter(|r| r.k >= lo && r.k <= hi)
                .map(|r| r.env_rel_err)
                .collect(),
        )
    }

    /// Median of `env_rel_err` over the upper half of the rows (by `k`).
    pub fn median_top_half(&self) -> Option<f64> {
        let start = self.rows.len() / 2;
        median(self.rows[start..].iter().map(|r| r.env_rel_err).collect())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.k,
                sci(r.exact),
                sci(r.pr),
                sci(r.amplitude),
                sci(r.abs_err),
                sci(r.env_rel_err),
                sci(r.phase)
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Round-trip scientific notation, independent of locale.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compares exact values of `k s` with the asymptotic formula for each `k`.
/// Points are evaluated in parallel; rows come back ordered by `k`.
pub fn run_sweep(config: &SweepConfig) -> Result<ConvergenceReport> {
    let geometry = TetraGeometry::new(&config.sextet)?;
    match geometry.kind {
        TetraKind::Euclidean => {}
        TetraKind::Degenerate => return Err(Error::Degenerate),
        TetraKind::Minkowskian => return Err(Error::Minkowskian),
    }
    let volume = geometry.volume.expect("Euclidean has a volume");
    let thetas = geometry.thetas.expect("Euclidean has angles");
    let spins = config.sextet.to_f64();

    let rows = config
        .k_values
        .par_iter()
        .map(|&k| {
            let scaled = config.sextet.scaled(k)?;
            let exact = sixj_exact(&scaled);
            let est = estimate_from_parts(&spins, volume, &thetas, k);
            let exact_f = exact.to_f64();
            let abs_err = (exact_f - est.value).abs();
            Ok(ConvergenceRow {
                k,
                exact: exact_f,
                pr: est.value,
                amplitude: est.amplitude,
                abs_err,
                env_rel_err: abs_err / est.amplitude,
                phase: est.phase,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let last_k = *config.k_values.last().unwrap();
    let last_exact_decimal = sixj_exact(&config.sextet.scaled(last_k)?).to_decimal(config.digits);
    Ok(ConvergenceReport { sextet: config.sextet, rows, last_exact_decimal })
}

/// Predicted and fitted decay of a Minkowskian sextet.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub predicted: DecayEstimate,
    /// Least-squares slope of `ln(k^{3/2} |exact|)` against `k`.
    pub slope: f64,
    /// Least-squares slope of `ln |exact|` against `k`, without removing the
    /// `k^{-3/2}` prefactor.
    pub raw_slope: f64,
    pub points: Vec<(u32, f64)>,
}

impl DecayFit {
    pub fn relative_difference(&self) -> f64 {
        (self.slope - self.predicted.rate).abs() / self.predicted.rate.abs()
    }
}

/// Minimum number of nonzero exact values needed for a fit.
pub const MIN_FIT_POINTS: usize = 4;

pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Fits the decay of `|{k s}|` over the given `k` values and compares with
/// [`decay_rate`]. `ln|exact|` comes from the exact rational value.
pub fn fit_decay(s: &SpinSextet, k_values: &[u32]) -> Result<DecayFit> {
    let predicted = decay_rate(s)?;
    let points = k_values
        .par_iter()
        .map(|&k| Ok((k, sixj_exact(&s.scaled(k)?).ln_abs())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, y)| y.is_finite())
        .collect::<Vec<_>>();
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::Domain(format!(
            "need at least {MIN_FIT_POINTS} nonzero points to fit a slope, got {}",
            points.len()
        )));
    }
    let raw: Vec<(f64, f64)> = points.iter().map(|&(k, y)| (f64::from(k), y)).collect();
    let compensated: Vec<(f64, f64)> =
        raw.iter().map(|&(k, y)| (k, y + 1.5 * k.ln())).collect();
    Ok(DecayFit {
        predicted,
        slope: least_squares_slope(&compensated),
        raw_slope: least_squares_slope(&raw),
        points,
    })
}
