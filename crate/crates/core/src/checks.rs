//! Identity report for a single sextet: exact identities in rational
//! arithmetic, and the saddle-point identities in floating point.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::asymptotic::{
    decay_rate, prefactor_terms, saddle_contribution_at, saddle_decomposition, Saddle, SaddleFunction,
};
use crate::error::{Error, Result};
use crate::geometry::{
    cayley_menger_volume_sq, discriminant_expanded, exterior_dihedral_angles, quadratic_coefficients,
    rat_to_f64, saddle_quartic, TetraKind,
};
use crate::racah::sixj_exact;
use crate::spin::{is_admissible_triple, triad_sums, HalfInt, SpinSextet};

/// Absolute tolerance of the floating identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub sextet: SpinSextet,
    pub kind: TetraKind,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.results.iter().find(|r| r.name == name).map(|r| r.status)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sextet {} ({})", self.sextet, self.kind)?;
        for r in &self.results {
            writeln!(f, "{:<4} {:<16} {}", r.status, r.name, r.detail)?;
        }
        Ok(())
    }
}

fn pass_if(name: &'static str, ok: bool, detail: String) -> CheckResult {
    CheckResult { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn skip(name: &'static str, reason: &str) -> CheckResult {
    CheckResult { name, status: Status::Skip, detail: reason.to_string() }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `sum_x (2x + 1) {j1 j2 x; J1 J2 J3}^2`, exact. Equals `1 / (2 J3 + 1)`
/// whenever `(J1, j2, J3)` and `(j1, J2, J3)` are admissible.
pub fn orthogonality_sum(s: &SpinSextet) -> BigRational {
    let [j1, j2, _, k1, k2, k3] = *s.edges();
    let lo = j1.doubled().abs_diff(j2.doubled());
    let hi = j1.doubled() + j2.doubled();
    let mut total = BigRational::zero();
    for dx in (lo..=hi).step_by(2) {
        let x = HalfInt::from_doubled(dx);
        if !is_admissible_triple(k1, k2, x) {
            continue;
        }
        let term = sixj_exact(&SpinSextet::new([j1, j2, x], [k1, k2, k3]));
        total += term.squared() * int(i64::from(dx) + 1);
    }
    total
}

/// Runs every identity that applies to the sextet's class. Inadmissible
/// sextets are a domain error.
pub fn run_checks(s: &SpinSextet) -> Result<CheckReport> {
    s.check_admissible()?;
    let mut results = Vec::new();

    // Exact symbol identities.
    let base = sixj_exact(s).signed_squared();
    let images = s.symmetry_images();
    let mismatched = images.iter().filter(|t| sixj_exact(t).signed_squared() != base).count();
    results.push(pass_if(
        "symmetry",
        mismatched == 0,
        format!("{} images, {mismatched} differ", images.len()),
    ));

    let ortho = orthogonality_sum(s);
    let expected = int(1) / int(i64::from(s.edges()[5].doubled()) + 1);
    results.push(pass_if("orthogonality", ortho == expected, format!("sum = {ortho}, expected {expected}")));

    // Exact geometry identities.
    let coeffs = match quadratic_coefficients(s) {
        Ok(c) => {
            results.push(pass_if(
                "coefficients",
                true,
                format!("A = {}, B = {}, C = {}", c.a, c.b, c.c),
            ));
            c
        }
        Err(Error::Internal(msg)) => {
            results.push(pass_if("coefficients", false, msg));
            return Ok(CheckReport { sextet: *s, kind: TetraKind::Degenerate, results });
        }
        Err(e) => return Err(e),
    };
    let delta = coeffs.discriminant();
    let expanded = discriminant_expanded(s)?;
    results.push(pass_if("delta_expanded", expanded == delta, format!("4AC - B^2 = {delta}, expanded {expanded}")));

    let cm = cayley_menger_volume_sq(s)? * int(576);
    results.push(pass_if("cayley_menger", cm == delta, format!("576 V^2 = {cm}")));

    let sums = triad_sums(s)?;
    let quartic_ok = [int(0), int(1), int(-2), BigRational::new(BigInt::from(7), BigInt::from(3))]
        .iter()
        .chain(std::iter::once(&int(sums.v_max() as i64)))
        .all(|x| saddle_quartic(&sums, x) == coeffs.eval(x));
    results.push(pass_if("quartic", quartic_ok, "x prod(p-x) + prod(x-v) = A x^2 - B x + C".into()));

    let kind = if delta > BigRational::zero() {
        TetraKind::Euclidean
    } else if delta < BigRational::zero() {
        TetraKind::Minkowskian
    } else {
        TetraKind::Degenerate
    };
    let cm_kind = if cm > BigRational::zero() {
        TetraKind::Euclidean
    } else if cm < BigRational::zero() {
        TetraKind::Minkowskian
    } else {
        TetraKind::Degenerate
    };
    results.push(pass_if("classification", cm_kind == kind, format!("{kind}")));

    const ASYMPTOTIC: [&str; 6] = ["cancellation", "angles", "deriv2", "stationarity", "decomposition", "conjugacy"];
    match kind {
        TetraKind::Euclidean => euclidean_checks(s, &delta, &mut results)?,
        TetraKind::Minkowskian => {
            for name in ASYMPTOTIC {
                results.push(skip(name, "Minkowskian"));
            }
            let d = decay_rate(s)?;
            results.push(pass_if("decay_sign", d.rate < 0.0, format!("rate = {:.12}", d.rate)));
        }
        TetraKind::Degenerate => {
            for name in ASYMPTOTIC {
                results.push(skip(name, "degenerate"));
            }
            results.push(skip("decay_sign", "degenerate"));
        }
    }
    Ok(CheckReport { sextet: *s, kind, results })
}

fn euclidean_checks(s: &SpinSextet, delta: &BigRational, results: &mut Vec<CheckResult>) -> Result<()> {
    let spins = s.to_f64();
    let prefactor = prefactor_terms(s)?;
    let dec = saddle_decomposition(s)?;
    let thetas = exterior_dihedral_angles(s)?;
    let root = rat_to_f64(delta).sqrt();

    let cancel = (0..6).map(|i| (prefactor.h[i] + dec.f[i].re).abs()).fold(0.0, f64::max);
    results.push(pass_if("cancellation", cancel <= IDENTITY_TOLERANCE, format!("max |h_e + Re f_e| = {cancel:.3e}")));

    let angle = (0..6).map(|i| (dec.f[i].im - thetas[i]).abs()).fold(0.0, f64::max);
    results.push(pass_if("angles", angle <= IDENTITY_TOLERANCE, format!("max |Im f_e - theta_e| = {angle:.3e}")));

    let func = SaddleFunction::from_sextet(s)?;
    let lhs = -dec.f_second * dec.x * func.pair_product(dec.x);
    let rhs = Complex64::new(0.0, -root);
    let deriv2 = (lhs - rhs).norm() / root;
    results.push(pass_if("deriv2", deriv2 <= IDENTITY_TOLERANCE, format!("relative deviation {deriv2:.3e}")));

    let stationary = func.f_prime(dec.x, Saddle::Plus.branch_sign()).norm();
    results.push(pass_if("stationarity", stationary <= IDENTITY_TOLERANCE, format!("|f'(x+)| = {stationary:.3e}")));

    let weighted = dec.weighted(&spins);
    let decomposition = (dec.f_direct - weighted).norm() / weighted.norm().max(1.0);
    results.push(pass_if(
        "decomposition",
        decomposition <= IDENTITY_TOLERANCE,
        format!("|f(x+) - sum e f_e| relative {decomposition:.3e}"),
    ));

    let plus = saddle_contribution_at(s, 1, Saddle::Plus)?;
    let minus = saddle_contribution_at(s, 1, Saddle::Minus)?;
    let conj = (minus - plus.conj()).norm() / plus.norm().max(f64::MIN_POSITIVE);
    results.push(pass_if("conjugacy", conj <= IDENTITY_TOLERANCE, format!("x- vs conj(x+) relative {conj:.3e}")));
    Ok(())
}

/// `1 / (2 J3 + 1)` as a rational; a convenience for callers printing the
/// orthogonality target.
pub fn orthogonality_target(s: &SpinSextet) -> BigRational {
    BigRational::one() / int(i64::from(s.edges()[5].doubled()) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_all_pass() {
        let r = run_checks(&SpinSextet::from_ints([1; 6])).unwrap();
        assert_eq!(r.kind, TetraKind::Euclidean);
        for c in &r.results {
            assert!(c.status == Status::Pass || c.name == "decay_sign", "{c:?}");
        }
        assert!(!r.any_failed());
    }

    #[test]
    fn generic_half_integer_sextet() {
        let s = SpinSextet::from_doubled([4, 6, 8, 5, 7, 9]);
        let r = run_checks(&s).unwrap();
        assert!(!r.any_failed(), "{r}");
        // This one is Minkowskian; a half-integer Euclidean case as well.
        assert_eq!(r.kind, TetraKind::Minkowskian);
        let r = run_checks(&SpinSextet::from_doubled([5, 5, 4, 5, 5, 4])).unwrap();
        assert_eq!(r.kind, TetraKind::Euclidean);
        assert!(!r.any_failed(), "{r}");
    }

    #[test]
    fn degenerate_skips_asymptotics() {
        let r = run_checks(&SpinSextet::from_ints([3, 5, 4, 3, 5, 4])).unwrap();
        assert_eq!(r.kind, TetraKind::Degenerate);
        assert!(!r.any_failed(), "{r}");
        assert_eq!(r.status_of("cayley_menger"), Some(Status::Pass));
        assert_eq!(r.status_of("cancellation"), Some(Status::Skip));
        assert_eq!(r.status_of("deriv2"), Some(Status::Skip));
    }

    #[test]
    fn minkowskian_checks_decay_sign() {
        let r = run_checks(&SpinSextet::from_doubled([16, 16, 16, 9, 9, 9])).unwrap();
        assert_eq!(r.kind, TetraKind::Minkowskian);
        assert!(!r.any_failed(), "{r}");
        assert_eq!(r.status_of("decay_sign"), Some(Status::Pass));
    }

    #[test]
    fn inadmissible_is_domain_error() {
        let s = SpinSextet::from_doubled([1, 1, 4, 2, 2, 2]);
        assert!(matches!(run_checks(&s), Err(Error::InadmissibleTriad(..))));
    }

    #[test]
    fn orthogonality_target_matches() {
        let s = SpinSextet::from_doubled([2, 3, 3, 4, 3, 1]);
        assert_eq!(orthogonality_sum(&s), orthogonality_target(&s));
    }
}
