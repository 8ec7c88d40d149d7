//! Independent oracles and sextet generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use sixj::{SpinSextet, TetraKind};

/// `n!` as f64; exact up to 22!.
fn fact(n: i64) -> f64 {
    assert!(n >= 0, "negative factorial argument {n}");
    (1..=n).map(|i| i as f64).product()
}

/// 3j symbol in floating point from its own Racah-type sum, with all
/// arguments doubled.
pub fn three_j(j: [i64; 3], m: [i64; 3]) -> f64 {
    let [j1, j2, j3] = j;
    let [m1, m2, m3] = m;
    if m1 + m2 + m3 != 0 {
        return 0.0;
    }
    for i in 0..3 {
        if m[i].abs() > j[i] || (j[i] - m[i]) % 2 != 0 {
            return 0.0;
        }
    }
    if j3 < (j1 - j2).abs() || j3 > j1 + j2 || (j1 + j2 + j3) % 2 != 0 {
        return 0.0;
    }
    let h = |x: i64| {
        debug_assert!(x % 2 == 0);
        x / 2
    };
    let tri = fact(h(j1 + j2 - j3)) * fact(h(j1 - j2 + j3)) * fact(h(-j1 + j2 + j3))
        / fact(h(j1 + j2 + j3) + 1);
    let norm = tri
        * fact(h(j1 + m1))
        * fact(h(j1 - m1))
        * fact(h(j2 + m2))
        * fact(h(j2 - m2))
        * fact(h(j3 + m3))
        * fact(h(j3 - m3));
    let mut sum = 0.0;
    for k in 0..=h(j1 + j2 + j3) {
        let args = [
            k,
            h(j3 - j2 + m1) + k,
            h(j3 - j1 - m2) + k,
            h(j1 + j2 - j3) - k,
            h(j1 - m1) - k,
            h(j2 + m2) - k,
        ];
        if args.iter().any(|&a| a < 0) {
            continue;
        }
        let den: f64 = args.iter().map(|&a| fact(a)).product();
        sum += if k % 2 == 0 { 1.0 } else { -1.0 } / den;
    }
    let phase = if h(j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * norm.sqrt() * sum
}

/// 6j symbol as a contraction of four 3j symbols over all projections.
/// Doubled spins.
pub fn six_j_from_three_j(d: [u32; 6]) -> f64 {
    let [a, b, c, d4, e, f] = d.map(i64::from);
    let mut total = 0.0;
    let range = |j: i64| (-j..=j).step_by(2);
    for m1 in range(a) {
        for m2 in range(b) {
            let m3 = -m1 - m2;
            if m3.abs() > c {
                continue;
            }
            for m6 in range(f) {
                let m5 = m1 + m6;
                let m4 = m6 - m2;
                if m5.abs() > e || m4.abs() > d4 {
                    continue;
                }
                let s = (a - m1) + (b - m2) + (c - m3) + (d4 - m4) + (e - m5) + (f - m6);
                let sign = if (s / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                total += sign
                    * three_j([a, b, c], [-m1, -m2, -m3])
                    * three_j([a, e, f], [m1, -m5, m6])
                    * three_j([d4, b, f], [m4, m2, -m6])
                    * three_j([d4, e, c], [-m4, m5, m3]);
            }
        }
    }
    total
}

fn ln_fact(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Racah's sum evaluated directly in floating point, terms via log-factorials.
/// Doubled spins; the sextet must be admissible.
pub fn six_j_float(d: [u32; 6]) -> f64 {
    let [a, b, c, d4, e, f] = d.map(u64::from);
    let triads = [[a, b, c], [d4, b, f], [d4, e, c], [a, e, f]];
    let ln_tri = |[x, y, z]: [u64; 3]| {
        ln_fact((x + y - z) / 2) + ln_fact((x + z - y) / 2) + ln_fact((y + z - x) / 2)
            - ln_fact((x + y + z) / 2 + 1)
    };
    let half_ln_norm: f64 = 0.5 * triads.iter().map(|&t| ln_tri(t)).sum::<f64>();
    let v = triads.map(|[x, y, z]| (x + y + z) / 2);
    let p = [(a + b + d4 + e) / 2, (b + c + e + f) / 2, (a + c + d4 + f) / 2];
    let lo = *v.iter().max().unwrap();
    let hi = *p.iter().min().unwrap();
    let mut sum = 0.0;
    for t in lo..=hi {
        let ln_term = ln_fact(t + 1)
            - v.iter().map(|&vi| ln_fact(t - vi)).sum::<f64>()
            - p.iter().map(|&pj| ln_fact(pj - t)).sum::<f64>()
            + half_ln_norm;
        let term = ln_term.exp();
        sum += if t % 2 == 0 { term } else { -term };
    }
    sum
}

type Vec3 = [f64; 3];

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Exterior dihedral angles in edge order `j1 j2 j3 J1 J2 J3`, from an
/// explicit embedding of the tetrahedron with vertices `O, P, Q, R`:
/// `OP = j1, PQ = j2, OQ = j3, QR = J1, OR = J2, PR = J3`.
pub fn embedding_dihedral_angles(spins: [f64; 6]) -> [f64; 6] {
    let [j1, j2, j3, k1, k2, k3] = spins;
    let o = [0.0, 0.0, 0.0];
    let p = [j1, 0.0, 0.0];
    // Q from |OQ| = j3, |PQ| = j2.
    let qx = (j1 * j1 + j3 * j3 - j2 * j2) / (2.0 * j1);
    let qy = (j3 * j3 - qx * qx).sqrt();
    let q = [qx, qy, 0.0];
    // R from |OR| = J2, |PR| = J3, |QR| = J1.
    let rx = (j1 * j1 + k2 * k2 - k3 * k3) / (2.0 * j1);
    let ry = (k2 * k2 - k1 * k1 + qx * qx + qy * qy - 2.0 * qx * rx) / (2.0 * qy);
    let rz = (k2 * k2 - rx * rx - ry * ry).sqrt();
    let r = [rx, ry, rz];

    // Interior angle along edge XY between the faces through Z and W.
    let interior = |x: Vec3, y: Vec3, z: Vec3, w: Vec3| {
        let axis = sub(y, x);
        let unit = scale(axis, 1.0 / dot(axis, axis).sqrt());
        let perp = |pt: Vec3| {
            let d = sub(pt, x);
            sub(d, scale(unit, dot(d, unit)))
        };
        let (u, v) = (perp(z), perp(w));
        (dot(u, v) / (dot(u, u) * dot(v, v)).sqrt()).clamp(-1.0, 1.0).acos()
    };
    let ext = |x, y, z, w| std::f64::consts::PI - interior(x, y, z, w);
    [
        ext(o, p, q, r),
        ext(p, q, o, r),
        ext(o, q, p, r),
        ext(q, r, o, p),
        ext(o, r, p, q),
        ext(p, r, o, q),
    ]
}

fn pick(raw: u32, lo: u32, hi: u32) -> Option<u32> {
    // A value in [lo, hi] with the parity of lo.
    if lo > hi {
        return None;
    }
    let count = (hi - lo) / 2 + 1;
    Some(lo + 2 * (raw % count))
}

/// Builds an admissible sextet with doubled spins at most `max` from six raw
/// numbers, or `None` when the choices leave no room for the last spin.
pub fn admissible_from_raw(raw: [u32; 6], max: u32) -> Option<SpinSextet> {
    let j1 = raw[0] % (max + 1);
    let j2 = raw[1] % (max + 1);
    let j3 = pick(raw[2], j1.abs_diff(j2), (j1 + j2).min(max))?;
    let k1 = raw[3] % (max + 1);
    let k2 = pick(raw[4], k1.abs_diff(j3), (k1 + j3).min(max))?;
    let lo = k1.abs_diff(j2).max(j1.abs_diff(k2));
    let hi = (k1 + j2).min(j1 + k2).min(max);
    // Parity of k3 is fixed by both triads; shift lo onto it.
    let lo = if (lo + k1 + j2) % 2 == 0 { lo } else { lo + 1 };
    let k3 = pick(raw[5], lo, hi)?;
    let s = SpinSextet::from_doubled([j1, j2, j3, k1, k2, k3]);
    debug_assert!(s.is_admissible());
    Some(s)
}

pub fn random_admissible<R: Rng>(rng: &mut R, max: u32) -> SpinSextet {
    loop {
        let raw: [u32; 6] = std::array::from_fn(|_| rng.gen());
        if let Some(s) = admissible_from_raw(raw, max) {
            return s;
        }
    }
}

/// Random admissible sextet with strictly positive discriminant.
pub fn random_euclidean<R: Rng>(rng: &mut R, max: u32) -> SpinSextet {
    loop {
        let s = random_admissible(rng, max);
        if sixj::geometry::classify(&s) == Ok(TetraKind::Euclidean) {
            return s;
        }
    }
}
