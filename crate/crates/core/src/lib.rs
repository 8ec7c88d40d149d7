//! Wigner 6j symbols, exactly and asymptotically.
//!
//! - [`racah`]: exact values from Racah's single sum, in rational arithmetic
//!   with prime-factored factorials ([`factorial`]).
//! - [`geometry`]: the saddle-point quadratic, its discriminant, and the
//!   tetrahedron (volume, dihedral angles) behind it.
//! - [`asymptotic`]: the Ponzano-Regge formula and every intermediate term of
//!   its saddle-point derivation, plus the Minkowskian decay rate.
//! - [`integral`]: the continuous integral representation, by contour
//!   quadrature.
//! - [`sweep`] and [`checks`]: convergence sweeps and identity reports used by
//!   the command-line tool.

pub mod asymptotic;
pub mod checks;
pub mod error;
pub mod factorial;
pub mod geometry;
pub mod integral;
pub mod racah;
pub mod spin;
pub mod sweep;

pub use error::{Error, Result};
pub use geometry::{TetraGeometry, TetraKind};
pub use racah::{sixj_exact, ExactSixJ};
pub use spin::{parse_spin, Edge, HalfInt, SpinSextet, TriadSums};
