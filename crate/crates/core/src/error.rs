use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse spin {0:?}: expected \"n\", \"n/2\" or \"n.5\"")]
    Parse(String),

    #[error("{0}")]
    Domain(String),

    #[error("inadmissible triad ({0}, {1}, {2})")]
    InadmissibleTriad(String, String, String),

    #[error("degenerate tetrahedron: zero volume, the asymptotic formula is undefined")]
    Degenerate,

    #[error("Minkowskian tetrahedron (negative discriminant): use the decay estimate instead")]
    Minkowskian,

    #[error("degenerate triad: a logarithm argument in the prefactor vanishes")]
    DegenerateTriad,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of internal consistency checks, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
