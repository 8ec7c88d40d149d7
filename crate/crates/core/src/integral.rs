//! Continuous integral representation of the scaled symbol.
//!
//! After Stirling's formula the symbol becomes
//! `(2pi)^2 e^{H + k h} / ((2pi)^3 k) * int e^{F(x) + k f(x)} dx` over
//! `[max v, min p]`, which makes sense for real (not only half-integer)
//! triad and pair sums.
//!
//! On the real axis the integrand is exponentially large and cancels through
//! the `e^{i pi k x}` factor, and coinciding triad sums make the endpoint
//! singularities non-integrable. The quadrature therefore runs along a
//! contour lifted into the upper half plane through the saddle `x+`, starting
//! and ending a small distance inside the interval where the integrand is
//! exponentially suppressed. The alternating sign `(-1)^t` has two continuous
//! representatives `e^{± i pi t}`; their integrals are complex conjugates and
//! the estimate is their sum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::asymptotic::{prefactor_terms_continuous, SaddleFunction};
use crate::error::{Error, Result};

/// Distance of the contour ends from the interval ends, relative to its
/// length.
pub const ENDPOINT_OFFSET: f64 = 1e-3;

/// Relative change under doubling of the node count above which the result
/// is flagged as unconverged.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralEstimate {
    /// Real part of the summed branch integrals.
    pub value: f64,
    /// Imaginary part; zero up to rounding.
    pub imaginary: f64,
    /// The `e^{+i pi k x}` branch alone.
    pub upper_branch: Complex64,
    pub n_points: usize,
    /// Value with twice the nodes.
    pub refined: f64,
    pub relative_change: f64,
    pub converged: bool,
    /// Bound on the neglected pieces next to the endpoints.
    pub endpoint_bound: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

struct Integrand {
    func: SaddleFunction,
    log_prefactor: f64,
    k: f64,
}

impl Integrand {
    /// `e^{H + k h + F(x) + k f(x)} / (2 pi k)`.
    fn eval(&self, x: Complex64, sign: f64) -> Complex64 {
        let exponent = self.log_prefactor + self.func.big_f(x) + self.k * self.func.f_exponent(x, sign);
        exponent.exp() / (2.0 * PI * self.k)
    }

    fn path_integral(&self, path: &[Complex64], sign: f64, nodes: &(Vec<f64>, Vec<f64>)) -> Complex64 {
        let (xs, ws) = nodes;
        let mut total = Complex64::new(0.0, 0.0);
        for seg in path.windows(2) {
            let (z0, z1) = (seg[0], seg[1]);
            let mid = (z0 + z1) * 0.5;
            let half = (z1 - z0) * 0.5;
            let sum: Complex64 = xs
                .iter()
                .zip(ws)
                .map(|(&t, &w)| w * self.eval(mid + half * t, sign))
                .sum();
            total += sum * half;
        }
        total
    }
}

/// Quadrature estimate of the symbol from its integral representation, for
/// triad sums `v`, pair sums `p` and scale `k`. Uses `n_points / 2` nodes on
/// each of the two contour legs.
pub fn integral_estimate(v: [f64; 4], p: [f64; 3], k: u32, n_points: usize) -> Result<IntegralEstimate> {
    if k == 0 {
        return Err(Error::Domain("scale k must be positive".into()));
    }
    if n_points < 100 {
        return Err(Error::Domain(format!("n_points must be at least 100, got {n_points}")));
    }
    if v.iter().chain(&p).any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::Domain("triad and pair sums must be finite and non-negative".into()));
    }
    let func = SaddleFunction::new(v, p);
    let (a, b) = (func.v_max(), func.p_min());
    if !(a < b) {
        return Err(Error::Domain(format!("empty integration interval [{a}, {b}]")));
    }
    let spins = func.spins();
    let prefactor = prefactor_terms_continuous(&spins)?;
    let kf = f64::from(k);
    let integrand = Integrand {
        func,
        log_prefactor: prefactor.big_h + kf * prefactor.weighted(&spins),
        k: kf,
    };

    let offset = ENDPOINT_OFFSET * (b - a);
    let start = Complex64::new(a + offset, 0.0);
    let end = Complex64::new(b - offset, 0.0);
    let apex = contour_apex(&func, a, b);
    let upper = [start, apex, end];
    let lower = upper.map(|z| z.conj());

    let run = |n: usize| {
        let nodes = gauss_legendre(n);
        let plus = integrand.path_integral(&upper, 1.0, &nodes);
        let minus = integrand.path_integral(&lower, -1.0, &nodes);
        (plus, plus + minus)
    };
    let per_leg = n_points.div_ceil(2);
    let (upper_branch, total) = run(per_leg);
    let (_, refined) = run(2 * per_leg);
    let relative_change = (refined.re - total.re).abs() / refined.re.abs().max(f64::MIN_POSITIVE);

    let endpoint_bound = 2.0
        * offset
        * (integrand.eval(start, 1.0).norm() + integrand.eval(end, 1.0).norm());

    Ok(IntegralEstimate {
        value: total.re,
        imaginary: total.im,
        upper_branch,
        n_points,
        refined: refined.re,
        relative_change,
        converged: relative_change <= CONVERGENCE_TOLERANCE,
        endpoint_bound,
    })
}

// The complex saddle when it sits over the interval, otherwise a fixed arc.
fn contour_apex(func: &SaddleFunction, a: f64, b: f64) -> Complex64 {
    let e = |x: &[f64], k: usize| -> f64 {
        let mut c = vec![0.0; x.len() + 1];
        c[0] = 1.0;
        for &xi in x {
            for j in (1..c.len()).rev() {
                c[j] += c[j - 1] * xi;
            }
        }
        c[k]
    };
    let qa = e(&func.v, 2) - e(&func.p, 2);
    let qb = e(&func.v, 3) - e(&func.p, 3);
    let qc = e(&func.v, 4);
    let delta = 4.0 * qa * qc - qb * qb;
    if qa > 0.0 && delta > 0.0 {
        let x = Complex64::new(qb / (2.0 * qa), delta.sqrt() / (2.0 * qa));
        if x.re > a && x.re < b {
            return x;
        }
    }
    Complex64::new(0.5 * (a + b), 0.25 * (b - a))
}
