//! The saddle-point quadratic of the Racah sum and the tetrahedron it
//! encodes.
//!
//! The stationarity condition of the summand reduces to `A x^2 - B x + C = 0`
//! with coefficients polynomial in the six spins. Its discriminant
//! `4AC - B^2` is `576 V^2`, where `V` is the volume of the tetrahedron whose
//! edge lengths are the spins, and the phases of the complex roots give the
//! exterior dihedral angles.
//!
//! Everything that decides a branch (the sign of the discriminant) is exact.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spin::{triad_sums, Edge, SpinSextet, TriadSums};

/// Coefficients of the saddle quadratic `A x^2 - B x + C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCoefficients {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl QuadraticCoefficients {
    /// `4AC - B^2`.
    pub fn discriminant(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(4)) * &self.a * &self.c - &self.b * &self.b
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        &self.a * x * x - &self.b * x + &self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TetraKind {
    Euclidean,
    Minkowskian,
    Degenerate,
}

impl fmt::Display for TetraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TetraKind::Euclidean => "Euclidean",
            TetraKind::Minkowskian => "Minkowskian",
            TetraKind::Degenerate => "Degenerate",
        })
    }
}

/// The two roots of the saddle quadratic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddlePair {
    pub x_plus: Complex64,
    pub x_minus: Complex64,
}

/// Everything geometric about a sextet in one place.
#[derive(Clone, Debug)]
pub struct TetraGeometry {
    pub coeffs: QuadraticCoefficients,
    pub delta: BigRational,
    pub kind: TetraKind,
    /// `sqrt(delta) / 24`; `None` for Minkowskian sextets.
    pub volume: Option<f64>,
    /// Exterior dihedral angles in edge order; Euclidean sextets only.
    pub thetas: Option<[f64; 6]>,
    pub saddles: SaddlePair,
}

impl TetraGeometry {
    pub fn new(s: &SpinSextet) -> Result<Self> {
        let coeffs = quadratic_coefficients(s)?;
        let delta = coeffs.discriminant();
        let kind = kind_of(&delta);
        let volume = match kind {
            TetraKind::Minkowskian => None,
            TetraKind::Degenerate => Some(0.0),
            TetraKind::Euclidean => Some(rat_to_f64(&delta).sqrt() / 24.0),
        };
        let thetas = match kind {
            TetraKind::Euclidean => Some(exterior_dihedral_angles(s)?),
            _ => None,
        };
        let saddles = roots(&coeffs, &delta)?;
        Ok(TetraGeometry { coeffs, delta, kind, volume, thetas, saddles })
    }
}

pub(crate) fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("rational converts to f64")
}

fn spins(s: &SpinSextet) -> [BigRational; 6] {
    s.edges().map(|e| e.to_rational())
}

/// `A`, `B`, `C` from the symmetric functions of the triad and pair sums:
/// `A = e2(v) - e2(p)`, `B = e3(v) - e3(p)`, `C = e4(v)`.
pub fn quadratic_from_triad_sums(sums: &TriadSums) -> QuadraticCoefficients {
    let v = sums.v.map(|x| BigRational::from_integer(BigInt::from(x)));
    let p = sums.p.map(|x| BigRational::from_integer(BigInt::from(x)));
    quadratic_from_sums(&v, &p)
}

/// As [`quadratic_from_triad_sums`], for arbitrary (continuous) sums.
pub fn quadratic_from_sums(v: &[BigRational; 4], p: &[BigRational; 3]) -> QuadraticCoefficients {
    let [e2v, e3v, e4v] = elementary(v);
    let [e2p, e3p, _] = elementary(p);
    QuadraticCoefficients { a: e2v - e2p, b: e3v - e3p, c: e4v }
}

// e2, e3, e4 of the given values (e4 is zero for fewer than four).
fn elementary(x: &[BigRational]) -> [BigRational; 3] {
    let mut e = [BigRational::one(), BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for xi in x {
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * xi;
            e[k] += add;
        }
    }
    let [_, _, e2, e3, e4] = e;
    [e2, e3, e4]
}

/// Coefficients from the closed forms in the spins, cross-checked against the
/// symmetric-function definitions.
pub fn quadratic_coefficients(s: &SpinSextet) -> Result<QuadraticCoefficients> {
    let sums = triad_sums(s)?;
    if s.is_zero() {
        return Err(Error::Domain("all six spins are zero".into()));
    }
    let [j1, j2, j3, k1, k2, k3] = spins(s);
    let two = BigRational::from_integer(BigInt::from(2));
    let pairs = &j1 * &k1 + &j2 * &k2 + &j3 * &k3;
    let total = &j1 + &j2 + &j3 + &k1 + &k2 + &k3;
    let a = &two * &pairs;
    let b = &two
        * (&pairs * &total
            + &j1 * &j2 * &j3
            + &k1 * &j2 * &k3
            + &k1 * &k2 * &j3
            + &j1 * &k2 * &k3);
    let c = sums.v.iter().fold(BigRational::one(), |acc, &v| {
        acc * BigRational::from_integer(BigInt::from(v))
    });
    let closed = QuadraticCoefficients { a, b, c };
    let symmetric = quadratic_from_triad_sums(&sums);
    if closed != symmetric {
        return Err(Error::Internal(format!(
            "closed-form coefficients {:?} disagree with symmetric functions {:?}",
            closed, symmetric
        )));
    }
    Ok(closed)
}

/// `x prod(p_j - x) + prod(x - v_i)`; the quartic and cubic terms cancel and
/// this equals `A x^2 - B x + C`.
pub fn saddle_quartic(sums: &TriadSums, x: &BigRational) -> BigRational {
    let lhs = sums.p.iter().fold(x.clone(), |acc, &p| {
        acc * (BigRational::from_integer(BigInt::from(p)) - x)
    });
    let rhs = sums.v.iter().fold(BigRational::one(), |acc, &v| {
        acc * (x - BigRational::from_integer(BigInt::from(v)))
    });
    lhs + rhs
}

/// The discriminant `4AC - B^2`.
pub fn discriminant(s: &SpinSextet) -> Result<BigRational> {
    Ok(quadratic_coefficients(s)?.discriminant())
}

/// The discriminant from its expanded form in the squared spins.
pub fn discriminant_expanded(s: &SpinSextet) -> Result<BigRational> {
    s.check_admissible()?;
    let [a1, a2, a3, b1, b2, b3] = spins(s).map(|x| &x * &x);
    let quarter = &a1 * &b1 * (&a2 + &b2 + &a3 + &b3 - &a1 - &b1)
        + &a2 * &b2 * (&a1 + &b1 + &a3 + &b3 - &a2 - &b2)
        + &a3 * &b3 * (&a2 + &b2 + &a1 + &b1 - &a3 - &b3)
        - &a1 * &a2 * &a3
        - &b1 * &a2 * &b3
        - &b1 * &b2 * &a3
        - &a1 * &b2 * &b3;
    Ok(quarter * BigRational::from_integer(BigInt::from(4)))
}

fn kind_of(delta: &BigRational) -> TetraKind {
    if delta.is_positive() {
        TetraKind::Euclidean
    } else if delta.is_negative() {
        TetraKind::Minkowskian
    } else {
        TetraKind::Degenerate
    }
}

pub fn classify(s: &SpinSextet) -> Result<TetraKind> {
    Ok(kind_of(&discriminant(s)?))
}

/// `sqrt(delta) / 24`. Refuses Minkowskian sextets.
pub fn volume(s: &SpinSextet) -> Result<f64> {
    let delta = discriminant(s)?;
    match kind_of(&delta) {
        TetraKind::Minkowskian => Err(Error::Minkowskian),
        TetraKind::Degenerate => Ok(0.0),
        TetraKind::Euclidean => Ok(rat_to_f64(&delta).sqrt() / 24.0),
    }
}

fn roots(coeffs: &QuadraticCoefficients, delta: &BigRational) -> Result<SaddlePair> {
    if coeffs.a.is_zero() {
        return Err(Error::Degenerate);
    }
    let two_a = 2.0 * rat_to_f64(&coeffs.a);
    let b = rat_to_f64(&coeffs.b);
    let d = rat_to_f64(delta);
    let pair = if delta.is_negative() {
        let r = (-d).sqrt();
        SaddlePair {
            x_plus: Complex64::new((b + r) / two_a, 0.0),
            x_minus: Complex64::new((b - r) / two_a, 0.0),
        }
    } else {
        let im = d.sqrt() / two_a;
        SaddlePair {
            x_plus: Complex64::new(b / two_a, im),
            x_minus: Complex64::new(b / two_a, -im),
        }
    };
    Ok(pair)
}

/// Roots `(B ± i sqrt(delta)) / 2A`, real when `delta < 0`.
pub fn saddle_points(s: &SpinSextet) -> Result<SaddlePair> {
    let coeffs = quadratic_coefficients(s)?;
    let delta = coeffs.discriminant();
    roots(&coeffs, &delta)
}

/// Denominator of `tan(theta_{j1})`:
/// `j1^2 (j1^2 + 2 J1^2 - j2^2 - J2^2 - j3^2 - J3^2) + j2^2 J3^2 + j3^2 J2^2
///  - j2^2 J2^2 - j3^2 J3^2`.
pub fn dihedral_denominator(s: &SpinSextet) -> BigRational {
    let [a1, a2, a3, b1, b2, b3] = spins(s).map(|x| &x * &x);
    let two = BigRational::from_integer(BigInt::from(2));
    &a1 * (&a1 + &two * &b1 - &a2 - &b2 - &a3 - &b3) + &a2 * &b3 + &a3 * &b2
        - &a2 * &b2
        - &a3 * &b3
}

/// Exterior dihedral angle at each edge, in `(0, pi)`, in edge order
/// `j1 j2 j3 J1 J2 J3`.
///
/// For each edge the sextet is relabeled so the edge sits in the `j1` slot,
/// and `theta = atan2(e sqrt(delta), D)` with `D` from
/// [`dihedral_denominator`].
pub fn exterior_dihedral_angles(s: &SpinSextet) -> Result<[f64; 6]> {
    let delta = discriminant(s)?;
    if !delta.is_positive() {
        return Err(match kind_of(&delta) {
            TetraKind::Minkowskian => Error::Minkowskian,
            _ => Error::Degenerate,
        });
    }
    let root = rat_to_f64(&delta).sqrt();
    Ok(Edge::ALL.map(|e| {
        let relabeled = s.relabeled_with_first(e);
        let numerator = s.get(e).to_f64() * root;
        let denominator = rat_to_f64(&dihedral_denominator(&relabeled));
        numerator.atan2(denominator)
    }))
}

/// Squared volume from the Cayley-Menger determinant, with vertices
/// `O, P = O + j1, Q = O + j3, R = O + J2`, so that `OP = j1`, `OQ = j3`,
/// `OR = J2`, `PQ = j2`, `PR = J3`, `QR = J1`. Negative for Minkowskian
/// sextets.
pub fn cayley_menger_volume_sq(s: &SpinSextet) -> Result<BigRational> {
    s.check_admissible()?;
    let sq = spins(s).map(|x| &x * &x);
    let [j1, j2, j3, k1, k2, k3] = sq;
    let z = BigRational::zero;
    let o = BigRational::one;
    // Rows/columns: 1, O, P, Q, R.
    let m = vec![
        vec![z(), o(), o(), o(), o()],
        vec![o(), z(), j1.clone(), j3.clone(), k2.clone()],
        vec![o(), j1, z(), j2.clone(), k3.clone()],
        vec![o(), j3, j2, z(), k1.clone()],
        vec![o(), k2, k3, k1, z()],
    ];
    Ok(determinant(m) / BigRational::from_integer(BigInt::from(288)))
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}
