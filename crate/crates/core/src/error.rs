use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode layout: {0}")]
    InvalidLayout(String),

    #[error("mode {mode} out of range for a {modes}-mode layout")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("layout mismatch: expected {expected:?}, found {found:?}")]
    LayoutMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("amplitude array of length {found} does not match layout dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "truncation: tail mass {tail:.3e} in mode {mode} exceeds {threshold:.1e} (cutoff {cutoff})"
    )]
    Truncation {
        mode: usize,
        cutoff: usize,
        tail: f64,
        threshold: f64,
    },

    #[error("truncation margin: operator power {power} on mode {mode} needs cutoff > {power}, have {cutoff}")]
    TruncationMargin {
        mode: usize,
        power: usize,
        cutoff: usize,
    },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("null state: {0}")]
    NullState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid minor selector: {0}")]
    InvalidSelector(String),

    #[error("determinant has imaginary residue {imag:.3e} (real part {real:.3e})")]
    ComplexDeterminant { real: f64, imag: f64 },

    #[error("quadrature did not converge with {nodes} nodes (residual {residual:.3e})")]
    Quadrature { nodes: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
