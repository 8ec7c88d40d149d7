//! Spins, sextets of spins and the triad bookkeeping shared by every module.
//!
//! A spin is stored as twice its value so that half-integers are exact. The
//! six edges of a sextet are laid out as
//!
//! ```text
//! { j1 j2 j3 }
//! { J1 J2 J3 }
//! ```
//!
//! and indexed `0..6` in the order `j1, j2, j3, J1, J2, J3`. The four triads
//! (the faces of the tetrahedron) are `(j1,j2,j3)`, `(J1,j2,J3)`,
//! `(J1,J2,j3)` and `(j1,J2,J3)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// A non-negative integer or half-integer spin, stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(u32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: u32) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(n: u32) -> Self {
        HalfInt(2 * n)
    }

    #[inline]
    pub const fn doubled(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }

    pub fn scaled(self, k: u32) -> Result<Self> {
        self.0
            .checked_mul(k)
            .map(HalfInt)
            .ok_or_else(|| Error::Domain(format!("spin {} scaled by {} overflows", self, k)))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parses `"n"`, `"n/2"` or `"n.5"` (and `"n.0"`) into a spin.
pub fn parse_spin(text: &str) -> Result<HalfInt> {
    let s = text.trim();
    let parse_err = || Error::Parse(text.to_string());
    let not_half = || Error::Domain(format!("{:?} is not a non-negative half-integer", text));
    if s.is_empty() {
        return Err(parse_err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| parse_err())?;
        let den: i64 = den.trim().parse().map_err(|_| parse_err())?;
        return match den {
            1 => doubled_from(num.checked_mul(2).ok_or_else(not_half)?, text),
            2 => doubled_from(num, text),
            0 => Err(parse_err()),
            _ => {
                // Accept reducible forms such as 6/4 = 3/2.
                if (2 * num) % den != 0 {
                    Err(not_half())
                } else {
                    doubled_from(2 * num / den, text)
                }
            }
        };
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| parse_err())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err());
        }
        let frac = frac.trim_end_matches('0');
        let half = match frac {
            "" => 0,
            "5" => 1,
            _ => return Err(not_half()),
        };
        if negative && (int != 0 || half != 0) {
            return Err(not_half());
        }
        return doubled_from(2 * int + half, text);
    }
    let n: i64 = s.parse().map_err(|_| parse_err())?;
    doubled_from(n.checked_mul(2).ok_or_else(not_half)?, text)
}

fn doubled_from(doubled: i64, text: &str) -> Result<HalfInt> {
    u32::try_from(doubled)
        .map(HalfInt)
        .map_err(|_| Error::Domain(format!("{:?} is not a non-negative half-integer", text)))
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spin(s)
    }
}

/// True iff `(a, b, c)` obeys the triangle inequalities and `a + b + c` is an
/// integer.
pub fn is_admissible_triple(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (i64::from(a.0), i64::from(b.0), i64::from(c.0));
    (a + b + c) % 2 == 0 && a + b >= c && a + c >= b && b + c >= a
}

/// The six edges of a sextet; `Upper` is the `j` row, `Lower` the `J` row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Upper1,
    Upper2,
    Upper3,
    Lower1,
    Lower2,
    Lower3,
}

impl Edge {
    pub const ALL: [Edge; 6] = [
        Edge::Upper1,
        Edge::Upper2,
        Edge::Upper3,
        Edge::Lower1,
        Edge::Lower2,
        Edge::Lower3,
    ];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Column `0..3` of the symbol holding this edge.
    #[inline]
    pub const fn column(self) -> usize {
        self as usize % 3
    }

    pub const fn label(self) -> &'static str {
        match self {
            Edge::Upper1 => "j1",
            Edge::Upper2 => "j2",
            Edge::Upper3 => "j3",
            Edge::Lower1 => "J1",
            Edge::Lower2 => "J2",
            Edge::Lower3 => "J3",
        }
    }

    /// The two triads containing this edge, as indices into [`TRIADS`].
    pub const fn triads(self) -> [usize; 2] {
        match self {
            Edge::Upper1 => [0, 3],
            Edge::Upper2 => [0, 1],
            Edge::Upper3 => [0, 2],
            Edge::Lower1 => [1, 2],
            Edge::Lower2 => [2, 3],
            Edge::Lower3 => [1, 3],
        }
    }

    /// The two opposite-pair sums containing this edge, as indices `0..3`
    /// into `TriadSums::p`.
    pub const fn pair_sums(self) -> [usize; 2] {
        match self.column() {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }

    /// The other two edges of each triad containing this edge.
    pub fn triad_partners(self) -> [[Edge; 2]; 2] {
        self.triads().map(|t| {
            let mut others = TRIADS[t].iter().copied().filter(|&e| e != self);
            [others.next().unwrap(), others.next().unwrap()]
        })
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Edges of the four triads, in the order `v1..v4`.
pub const TRIADS: [[Edge; 3]; 4] = [
    [Edge::Upper1, Edge::Upper2, Edge::Upper3],
    [Edge::Lower1, Edge::Upper2, Edge::Lower3],
    [Edge::Lower1, Edge::Lower2, Edge::Upper3],
    [Edge::Upper1, Edge::Lower2, Edge::Lower3],
];

/// Six spins `{j1 j2 j3; J1 J2 J3}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SpinSextet {
    edges: [HalfInt; 6],
}

impl SpinSextet {
    pub const fn new(upper: [HalfInt; 3], lower: [HalfInt; 3]) -> Self {
        SpinSextet {
            edges: [upper[0], upper[1], upper[2], lower[0], lower[1], lower[2]],
        }
    }

    pub const fn from_edges(edges: [HalfInt; 6]) -> Self {
        SpinSextet { edges }
    }

    /// Builds a sextet from doubled spins in the order `j1 j2 j3 J1 J2 J3`.
    pub const fn from_doubled(d: [u32; 6]) -> Self {
        SpinSextet {
            edges: [
                HalfInt(d[0]),
                HalfInt(d[1]),
                HalfInt(d[2]),
                HalfInt(d[3]),
                HalfInt(d[4]),
                HalfInt(d[5]),
            ],
        }
    }

    /// Builds a sextet from integer spins in the order `j1 j2 j3 J1 J2 J3`.
    pub const fn from_ints(n: [u32; 6]) -> Self {
        SpinSextet::from_doubled([2 * n[0], 2 * n[1], 2 * n[2], 2 * n[3], 2 * n[4], 2 * n[5]])
    }

    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        if texts.len() != 6 {
            return Err(Error::Domain(format!("expected six spins, got {}", texts.len())));
        }
        let mut edges = [HalfInt::ZERO; 6];
        for (slot, text) in edges.iter_mut().zip(texts) {
            *slot = parse_spin(text.as_ref())?;
        }
        Ok(SpinSextet { edges })
    }

    #[inline]
    pub fn edges(&self) -> &[HalfInt; 6] {
        &self.edges
    }

    #[inline]
    pub fn get(&self, e: Edge) -> HalfInt {
        self.edges[e.index()]
    }

    pub fn doubled(&self) -> [u32; 6] {
        self.edges.map(HalfInt::doubled)
    }

    pub fn to_f64(&self) -> [f64; 6] {
        self.edges.map(HalfInt::to_f64)
    }

    pub fn triad(&self, index: usize) -> [HalfInt; 3] {
        TRIADS[index].map(|e| self.get(e))
    }

    pub fn triads(&self) -> [[HalfInt; 3]; 4] {
        [self.triad(0), self.triad(1), self.triad(2), self.triad(3)]
    }

    pub fn is_admissible(&self) -> bool {
        self.triads().iter().all(|t| is_admissible_triple(t[0], t[1], t[2]))
    }

    /// Returns an error naming the first inadmissible triad.
    pub fn check_admissible(&self) -> Result<()> {
        match self.triads().iter().find(|t| !is_admissible_triple(t[0], t[1], t[2])) {
            Some(t) => Err(Error::InadmissibleTriad(
                t[0].to_string(),
                t[1].to_string(),
                t[2].to_string(),
            )),
            None => Ok(()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.edges.iter().all(|e| e.0 == 0)
    }

    /// All six spins multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Result<Self> {
        let mut edges = self.edges;
        for e in edges.iter_mut() {
            *e = e.scaled(k)?;
        }
        Ok(SpinSextet { edges })
    }

    /// Sextet with the given edge moved into the `j1` slot by a tetrahedral
    /// symmetry (column permutations and upper/lower swaps in two columns).
    pub fn relabeled_with_first(&self, e: Edge) -> SpinSextet {
        let [j1, j2, j3, k1, k2, k3] = self.edges;
        let edges = match e {
            Edge::Upper1 => [j1, j2, j3, k1, k2, k3],
            Edge::Upper2 => [j2, j1, j3, k2, k1, k3],
            Edge::Upper3 => [j3, j2, j1, k3, k2, k1],
            Edge::Lower1 => [k1, k2, j3, j1, j2, k3],
            Edge::Lower2 => [k2, k1, j3, j2, j1, k3],
            Edge::Lower3 => [k3, j2, k1, j3, k2, j1],
        };
        SpinSextet { edges }
    }

    /// The 24 images of this sextet under the tetrahedral symmetries of the
    /// symbol: the six column permutations combined with the four upper/lower
    /// swap patterns (none, or exactly two columns swapped).
    pub fn symmetry_images(&self) -> Vec<SpinSextet> {
        const PERMS: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        const SWAPS: [[bool; 3]; 4] = [
            [false, false, false],
            [true, true, false],
            [true, false, true],
            [false, true, true],
        ];
        let cols = [
            (self.edges[0], self.edges[3]),
            (self.edges[1], self.edges[4]),
            (self.edges[2], self.edges[5]),
        ];
        let mut out = Vec::with_capacity(24);
        for perm in PERMS {
            for swap in SWAPS {
                let mut upper = [HalfInt::ZERO; 3];
                let mut lower = [HalfInt::ZERO; 3];
                for (slot, &src) in perm.iter().enumerate() {
                    let (u, l) = cols[src];
                    let (u, l) = if swap[slot] { (l, u) } else { (u, l) };
                    upper[slot] = u;
                    lower[slot] = l;
                }
                out.push(SpinSextet::new(upper, lower));
            }
        }
        out
    }
}

impl fmt::Display for SpinSextet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.edges;
        write!(f, "{{{} {} {}; {} {} {}}}", e[0], e[1], e[2], e[3], e[4], e[5])
    }
}

/// Triad sums `v1..v4` and opposite-pair sums `p1..p3`, as integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriadSums {
    pub v: [u64; 4],
    pub p: [u64; 3],
}

impl TriadSums {
    pub fn v_max(&self) -> u64 {
        *self.v.iter().max().unwrap()
    }

    pub fn p_min(&self) -> u64 {
        *self.p.iter().min().unwrap()
    }
}

/// Triad and pair sums of an admissible sextet.
pub fn triad_sums(s: &SpinSextet) -> Result<TriadSums> {
    s.check_admissible()?;
    let d = s.doubled().map(u64::from);
    let v = TRIADS.map(|t| t.iter().map(|e| d[e.index()]).sum::<u64>() / 2);
    // p_c omits column c; admissibility makes every p integral.
    let p = [0, 1, 2].map(|c| {
        (0..6).filter(|&i| i % 3 != c).map(|i| d[i]).sum::<u64>() / 2
    });
    Ok(TriadSums { v, p })
}
