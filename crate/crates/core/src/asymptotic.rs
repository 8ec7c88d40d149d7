//! Ponzano-Regge asymptotics of the 6j symbol and the pieces of its
//! saddle-point derivation.
//!
//! With every spin scaled by `k`, Stirling's formula turns the four triangle
//! coefficients into `(2pi)^2 exp(H + k h)` and the Racah sum into an
//! integral of `exp(F(x) + k f(x))`. The complex saddles of `f` are the roots
//! of the quadratic in [`crate::geometry`]; at the upper one `x+`:
//!
//! - `f(x+) = sum_e e f_e` with `f_e` a log of two triad and two pair factors,
//! - `h_e + Re f_e = 0` and `Im f_e` is the exterior dihedral angle at `e`,
//! - `-f''(x+) x+ prod(p - x+) = -i sqrt(delta)`.
//!
//! These identities are exposed as values so they can be checked, not assumed.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{self, rat_to_f64, TetraKind};
use crate::spin::{triad_sums, Edge, SpinSextet};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Triad sums and pair sums as reals, so the same code serves continuous
/// (non half-integer) arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleFunction {
    pub v: [f64; 4],
    pub p: [f64; 3],
}

impl SaddleFunction {
    pub fn new(v: [f64; 4], p: [f64; 3]) -> Self {
        SaddleFunction { v, p }
    }

    pub fn from_sextet(s: &SpinSextet) -> Result<Self> {
        let sums = triad_sums(s)?;
        Ok(SaddleFunction { v: sums.v.map(|x| x as f64), p: sums.p.map(|x| x as f64) })
    }

    pub fn v_max(&self) -> f64 {
        self.v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn p_min(&self) -> f64 {
        self.p.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// The six spins recovered from the sums: an edge equals half of
    /// (its two triads minus the pair sum that excludes its column).
    pub fn spins(&self) -> [f64; 6] {
        Edge::ALL.map(|e| {
            let [t1, t2] = e.triads();
            (self.v[t1] + self.v[t2] - self.p[e.column()]) / 2.0
        })
    }

    /// `f` written as `x ln(-x prod(p-x) / prod(x-v)) + sum v ln(x-v) - sum p ln(p-x)`.
    pub fn f(&self, x: Complex64) -> Complex64 {
        self.first_term(x) + self.log_sum(x)
    }

    /// `x ln(-x prod(p-x) / prod(x-v))`, which vanishes at a saddle.
    pub fn first_term(&self, x: Complex64) -> Complex64 {
        let num = self.p.iter().fold(-x, |acc, &p| acc * (p - x));
        let den = self.v.iter().fold(Complex64::new(1.0, 0.0), |acc, &v| acc * (x - v));
        x * (num / den).ln()
    }

    /// `sum v ln(x-v) - sum p ln(p-x)`.
    pub fn log_sum(&self, x: Complex64) -> Complex64 {
        let v: Complex64 = self.v.iter().map(|&v| v * (x - v).ln()).sum();
        let p: Complex64 = self.p.iter().map(|&p| p * (p - x).ln()).sum();
        v - p
    }

    /// `f` in the form it has in the exponent of the summand:
    /// `sign i pi x + x ln x - sum (x-v) ln(x-v) - sum (p-x) ln(p-x)`, where
    /// `sign = +1` represents `(-1)^t` as `e^{i pi t}` and `-1` as
    /// `e^{-i pi t}`.
    pub fn f_exponent(&self, x: Complex64, sign: f64) -> Complex64 {
        let v: Complex64 = self.v.iter().map(|&v| (x - v) * (x - v).ln()).sum();
        let p: Complex64 = self.p.iter().map(|&p| (p - x) * (p - x).ln()).sum();
        sign * I * PI * x + x * x.ln() - v - p
    }

    /// `F(x) = 1/2 ln(x^3 / (prod(x-v) prod(p-x)))`.
    pub fn big_f(&self, x: Complex64) -> Complex64 {
        let v: Complex64 = self.v.iter().map(|&v| (x - v).ln()).sum();
        let p: Complex64 = self.p.iter().map(|&p| (p - x).ln()).sum();
        0.5 * (3.0 * x.ln() - v - p)
    }

    /// `f'(x) = sign i pi + ln x - sum ln(x-v) + sum ln(p-x)`, principal logs.
    pub fn f_prime(&self, x: Complex64, sign: f64) -> Complex64 {
        let v: Complex64 = self.v.iter().map(|&v| (x - v).ln()).sum();
        let p: Complex64 = self.p.iter().map(|&p| (p - x).ln()).sum();
        sign * I * PI + x.ln() - v + p
    }

    /// `f''(x) = 1/x - sum 1/(x-v) - sum 1/(p-x)`.
    pub fn f_second(&self, x: Complex64) -> Complex64 {
        let v: Complex64 = self.v.iter().map(|&v| (x - v).inv()).sum();
        let p: Complex64 = self.p.iter().map(|&p| (p - x).inv()).sum();
        x.inv() - v - p
    }

    /// `prod (p_j - x)`.
    pub fn pair_product(&self, x: Complex64) -> Complex64 {
        self.p.iter().fold(Complex64::new(1.0, 0.0), |acc, &p| acc * (p - x))
    }

    /// `f_e = ln(x - v_a) + ln(x - v_b) - ln(p_c - x) - ln(p_d - x)` over the
    /// two triads and the two pair sums that contain edge `e`.
    pub fn edge_term(&self, e: Edge, x: Complex64) -> Complex64 {
        let [a, b] = e.triads();
        let [c, d] = e.pair_sums();
        (x - self.v[a]).ln() + (x - self.v[b]).ln() - (self.p[c] - x).ln() - (self.p[d] - x).ln()
    }
}

/// The Stirling prefactor of the four triangle coefficients,
/// `(2pi)^2 exp(H + k h)` with `h = sum_e e h_e` and `H = (sum_e h_e) / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrefactorTerms {
    pub h: [f64; 6],
    pub big_h: f64,
}

impl PrefactorTerms {
    /// `h(j, J) = sum_e e h_e`.
    pub fn weighted(&self, spins: &[f64; 6]) -> f64 {
        self.h.iter().zip(spins).map(|(h, e)| h * e).sum()
    }
}

/// `h_e = 1/2 ln[(e+a-b)(e-a+b)(e+c-d)(e-c+d) / ((e+a+b)(-e+a+b)(e+c+d)(-e+c+d))]`
/// for the triads `(e,a,b)` and `(e,c,d)` containing `e`.
pub fn prefactor_terms(s: &SpinSextet) -> Result<PrefactorTerms> {
    s.check_admissible()?;
    prefactor_terms_continuous(&s.to_f64())
}

/// As [`prefactor_terms`], for real spins.
pub fn prefactor_terms_continuous(spins: &[f64; 6]) -> Result<PrefactorTerms> {
    let mut h = [0.0; 6];
    for e in Edge::ALL {
        let x = spins[e.index()];
        let mut num = 1.0;
        let mut den = 1.0;
        for [a, b] in e.triad_partners() {
            let (a, b) = (spins[a.index()], spins[b.index()]);
            num *= (x + a - b) * (x - a + b);
            den *= (x + a + b) * (-x + a + b);
        }
        if num <= 0.0 || den <= 0.0 {
            return Err(Error::DegenerateTriad);
        }
        h[e.index()] = 0.5 * (num / den).ln();
    }
    let big_h = 0.5 * h.iter().sum::<f64>();
    Ok(PrefactorTerms { h, big_h })
}

/// Which of the two conjugate saddles of a Euclidean sextet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saddle {
    /// Upper half plane; pairs with `e^{+i pi t}`.
    Plus,
    /// Lower half plane; pairs with `e^{-i pi t}`.
    Minus,
}

impl Saddle {
    /// Sign of the `i pi` term in `f` that this saddle is stationary for.
    pub fn branch_sign(self) -> f64 {
        match self {
            Saddle::Plus => 1.0,
            Saddle::Minus => -1.0,
        }
    }
}

/// The pieces of `f` at one saddle of a Euclidean sextet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleDecomposition {
    pub saddle_used: Saddle,
    pub x: Complex64,
    /// `f_e` in edge order.
    pub f: [Complex64; 6],
    /// `f''(x)`.
    pub f_second: Complex64,
    /// `f(x)` evaluated directly, first term included.
    pub f_direct: Complex64,
    /// The first term of `f` at `x`, which the saddle equation makes zero.
    pub first_term: Complex64,
}

impl SaddleDecomposition {
    /// `sum_e e f_e`.
    pub fn weighted(&self, spins: &[f64; 6]) -> Complex64 {
        self.f.iter().zip(spins).map(|(f, e)| f * e).sum()
    }
}

fn require_euclidean(kind: TetraKind) -> Result<()> {
    match kind {
        TetraKind::Euclidean => Ok(()),
        TetraKind::Degenerate => Err(Error::Degenerate),
        TetraKind::Minkowskian => Err(Error::Minkowskian),
    }
}

/// Decomposes `f(x+)` into the six edge terms and evaluates `f''(x+)`.
pub fn saddle_decomposition(s: &SpinSextet) -> Result<SaddleDecomposition> {
    saddle_decomposition_at(s, Saddle::Plus)
}

/// As [`saddle_decomposition`], at either saddle.
pub fn saddle_decomposition_at(s: &SpinSextet, saddle: Saddle) -> Result<SaddleDecomposition> {
    let delta = geometry::discriminant(s)?;
    require_euclidean(geometry::classify(s)?)?;
    let func = SaddleFunction::from_sextet(s)?;
    let pair = geometry::saddle_points(s)?;
    let x = match saddle {
        Saddle::Plus => pair.x_plus,
        Saddle::Minus => pair.x_minus,
    };

    // Principal logs are safe: with Im x+ > 0 every x - v_i lies in the upper
    // and every p_j - x in the lower half plane, so no argument reaches the
    // cut. The real part need not lie over the summation interval.
    if !(pair.x_plus.im > 0.0) {
        return Err(Error::Internal(format!("saddle {} not in the upper half plane", pair.x_plus)));
    }

    let f = Edge::ALL.map(|e| func.edge_term(e, x));
    let first_term = func.first_term(x);
    let scale = rat_to_f64(&delta).sqrt().max(1.0);
    if first_term.norm() > 1e-8 * scale * x.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "first term of f does not vanish at the saddle: {first_term}"
        )));
    }
    Ok(SaddleDecomposition {
        saddle_used: saddle,
        x,
        f,
        f_second: func.f_second(x),
        f_direct: func.f(x),
        first_term,
    })
}

/// Leading-order asymptotic estimate of the scaled symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticEstimate {
    pub k: u32,
    /// `1 / sqrt(12 pi k^3 V)`.
    pub amplitude: f64,
    /// `pi/4 + sum_e (k e + 1/2) theta_e`.
    pub phase: f64,
    pub value: f64,
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::Domain("scale k must be positive".into()))
    } else {
        Ok(())
    }
}

/// Ponzano-Regge estimate of `{k j1 k j2 k j3; k J1 k J2 k J3}`.
pub fn ponzano_regge(s: &SpinSextet, k: u32) -> Result<AsymptoticEstimate> {
    check_k(k)?;
    let delta = geometry::discriminant(s)?;
    require_euclidean(geometry::classify(s)?)?;
    let volume = rat_to_f64(&delta).sqrt() / 24.0;
    let thetas = geometry::exterior_dihedral_angles(s)?;
    Ok(estimate_from_parts(&s.to_f64(), volume, &thetas, k))
}

/// The estimate given the volume and angles of the unscaled sextet.
pub fn estimate_from_parts(spins: &[f64; 6], volume: f64, thetas: &[f64; 6], k: u32) -> AsymptoticEstimate {
    let kf = f64::from(k);
    let amplitude = 1.0 / (12.0 * PI * kf.powi(3) * volume).sqrt();
    let phase = PI / 4.0
        + spins
            .iter()
            .zip(thetas)
            .map(|(e, theta)| (kf * e + 0.5) * theta)
            .sum::<f64>();
    AsymptoticEstimate { k, amplitude, phase, value: amplitude * phase.cos() }
}

/// Contribution of the `x+` saddle:
/// `(2 pi k^3 (-i) sqrt(delta))^{-1/2} exp(sum_e (k e + 1/2)(h_e + f_e))`.
/// The `x-` saddle contributes the complex conjugate.
pub fn saddle_contribution(s: &SpinSextet, k: u32) -> Result<Complex64> {
    saddle_contribution_at(s, k, Saddle::Plus)
}

/// Contribution of either saddle; at `x-` the factor `-i` becomes `+i`.
pub fn saddle_contribution_at(s: &SpinSextet, k: u32, saddle: Saddle) -> Result<Complex64> {
    check_k(k)?;
    let decomposition = saddle_decomposition_at(s, saddle)?;
    let prefactor = prefactor_terms(s)?;
    let delta = rat_to_f64(&geometry::discriminant(s)?);
    let kf = f64::from(k);
    let rotation = -saddle.branch_sign();
    let scale = Complex64::new(0.0, rotation * 2.0 * PI * kf.powi(3) * delta.sqrt()).sqrt().inv();
    let exponent: Complex64 = s
        .to_f64()
        .iter()
        .zip(prefactor.h.iter().zip(&decomposition.f))
        .map(|(e, (h, f))| (kf * e + 0.5) * (h + f))
        .sum();
    Ok(scale * exponent.exp())
}

/// Exponential decay of a Minkowskian sextet under scaling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayEstimate {
    /// `h + f(x)` at the contributing real saddle; `|{k s}| ~ k^{-3/2} e^{k rate}`.
    pub rate: f64,
    pub dominant_saddle: f64,
    /// The other real root and the value of `h + f` there (the growing
    /// branch, which does not contribute).
    pub other_saddle: f64,
    pub other_rate: f64,
    /// Set when the two candidate rates agree to 1e-9.
    pub near_degenerate: bool,
}

/// Decay rate per unit `k` of a Minkowskian sextet.
///
/// Both real roots of the saddle quadratic are evaluated with
/// `f = sum v ln|x - v| - sum p ln|p - x|` (the first term of `f` vanishes at
/// a root). The two values come out as `±r`; the symbol is bounded by one, so
/// the contributing saddle is the one with the negative value.
pub fn decay_rate(s: &SpinSextet) -> Result<DecayEstimate> {
    let kind = geometry::classify(s)?;
    if kind != TetraKind::Minkowskian {
        return Err(Error::Domain(format!("decay rate needs a Minkowskian sextet, got {kind}")));
    }
    let func = SaddleFunction::from_sextet(s)?;
    let spins = s.to_f64();
    let h = prefactor_terms(s)?.weighted(&spins);
    let pair = geometry::saddle_points(s)?;

    let rate_at = |x: f64| -> Result<f64> {
        let mut acc = h;
        for &v in &func.v {
            let d = (x - v).abs();
            if d == 0.0 {
                return Err(Error::Internal(format!("real saddle {x} hits triad sum {v}")));
            }
            acc += v * d.ln();
        }
        for &p in &func.p {
            let d = (p - x).abs();
            if d == 0.0 {
                return Err(Error::Internal(format!("real saddle {x} hits pair sum {p}")));
            }
            acc -= p * d.ln();
        }
        Ok(acc)
    };
    let candidates = [
        (pair.x_plus.re, rate_at(pair.x_plus.re)?),
        (pair.x_minus.re, rate_at(pair.x_minus.re)?),
    ];
    let near_degenerate = (candidates[0].1 - candidates[1].1).abs() < 1e-9;
    let (dominant, other) = match (candidates[0].1 < 0.0, candidates[1].1 < 0.0) {
        (true, false) => (candidates[0], candidates[1]),
        (false, true) => (candidates[1], candidates[0]),
        // Both decaying: the slower decay dominates.
        (true, true) if candidates[0].1 >= candidates[1].1 => (candidates[0], candidates[1]),
        (true, true) => (candidates[1], candidates[0]),
        (false, false) => {
            return Err(Error::Internal(format!(
                "no decaying real saddle: h + f = {} at {}, {} at {}",
                candidates[0].1, candidates[0].0, candidates[1].1, candidates[1].0
            )))
        }
    };
    Ok(DecayEstimate {
        rate: dominant.1,
        dominant_saddle: dominant.0,
        other_saddle: other.0,
        other_rate: other.1,
        near_degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EQUILATERAL: SpinSextet = SpinSextet::from_ints([1; 6]);
    const SHORT_LATERAL: SpinSextet = SpinSextet::from_doubled([16, 16, 16, 9, 9, 9]);

    fn regular_theta() -> f64 {
        PI - (1.0f64 / 3.0).acos()
    }

    #[test]
    fn prefactor_equilateral() {
        let t = prefactor_terms(&EQUILATERAL).unwrap();
        for h in t.h {
            assert!((h + 3f64.ln()).abs() < 1e-15);
        }
        assert!((t.big_h - 3.0 * -(3f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn prefactor_rejects_flat_triads() {
        // (1, 1, 2) is admissible but flat.
        let s = SpinSextet::from_ints([1, 1, 2, 1, 1, 2]);
        assert_eq!(prefactor_terms(&s), Err(Error::DegenerateTriad));
    }

    #[test]
    fn decomposition_equilateral() {
        let d = saddle_decomposition(&EQUILATERAL).unwrap();
        for f in d.f {
            assert!((f.im - regular_theta()).abs() < 1e-14);
            assert!((f.re - 3f64.ln()).abs() < 1e-14);
        }
        let spins = EQUILATERAL.to_f64();
        assert!((d.weighted(&spins) - d.f_direct).norm() < 1e-12);
        assert!(d.first_term.norm() < 1e-12);
        let func = SaddleFunction::from_sextet(&EQUILATERAL).unwrap();
        let lhs = -d.f_second * d.x * func.pair_product(d.x);
        assert!((lhs - Complex64::new(0.0, -8f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn stationarity_equilateral() {
        let func = SaddleFunction::from_sextet(&EQUILATERAL).unwrap();
        let pair = geometry::saddle_points(&EQUILATERAL).unwrap();
        assert!(func.f_prime(pair.x_plus, 1.0).norm() < 1e-13);
        assert!(func.f_prime(pair.x_minus, -1.0).norm() < 1e-13);
        // Keeping +i pi at x- lands one sheet over.
        assert!((func.f_prime(pair.x_minus, 1.0) - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-13);
    }

    #[test]
    fn spins_from_sums() {
        let s = SpinSextet::from_doubled([4, 6, 8, 5, 7, 9]);
        let func = SaddleFunction::from_sextet(&s).unwrap();
        assert_eq!(func.spins(), s.to_f64());
    }

    #[test]
    fn pr_equilateral() {
        for k in [1u32, 7, 100] {
            let est = ponzano_regge(&EQUILATERAL, k).unwrap();
            let kf = f64::from(k);
            let amp = 1.0 / (PI * kf.powi(3) * 2f64.sqrt()).sqrt();
            assert!((est.amplitude - amp).abs() < 1e-15 * amp.max(1.0));
            let phase = PI / 4.0 + 6.0 * (kf + 0.5) * regular_theta();
            assert!((est.phase - phase).abs() < 1e-12 * phase);
            assert!(est.value.abs() <= est.amplitude);
        }
    }

    #[test]
    fn pr_errors() {
        assert_eq!(ponzano_regge(&SpinSextet::from_ints([3, 5, 4, 3, 5, 4]), 3), Err(Error::Degenerate));
        assert_eq!(ponzano_regge(&SHORT_LATERAL, 3), Err(Error::Minkowskian));
        assert!(matches!(ponzano_regge(&EQUILATERAL, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn contribution_equilateral() {
        let k = 10;
        let c = saddle_contribution(&EQUILATERAL, k).unwrap();
        let est = ponzano_regge(&EQUILATERAL, k).unwrap();
        assert!((2.0 * c.re - est.value).abs() < 1e-12);
        assert!((c.norm() - 0.5 * est.amplitude).abs() < 1e-12);
        let diff = (c.arg() - est.phase).rem_euclid(2.0 * PI);
        assert!(diff.min(2.0 * PI - diff) < 1e-10);
        let minus = saddle_contribution_at(&EQUILATERAL, k, Saddle::Minus).unwrap();
        assert!((minus - c.conj()).norm() < 1e-14);
    }

    #[test]
    fn decay_short_lateral() {
        let d = decay_rate(&SHORT_LATERAL).unwrap();
        assert!(d.rate < 0.0);
        assert!((d.rate + d.other_rate).abs() < 1e-9);
        assert!(!d.near_degenerate);
        assert!(d.dominant_saddle > 23.0 && d.dominant_saddle < 24.0);
        assert!(matches!(decay_rate(&EQUILATERAL), Err(Error::Domain(_))));
    }
}
