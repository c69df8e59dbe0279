use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: &'static str,
        found: String,
    },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("exponent at byte {offset} does not reduce to a constant")]
    NonConstantExponent { offset: usize },

    #[error("evaluation error in `{subexpr}`: {reason}")]
    Eval { subexpr: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {estimate:.3e})")]
    NonConvergence { estimate: f64, subdivisions: usize },

    #[error("pole: |g(z) - alpha| below 1e-14 at z = {z}")]
    Pole { z: Complex64 },

    #[error("critical point: |f'(z)| below 1e-14 at z = {z}")]
    CriticalPoint { z: Complex64 },

    #[error("overflow guard tripped at z = {z}")]
    Overflow { z: Complex64 },

    #[error("vanishing denominator {which} at z = {z}, t = {t}")]
    VanishingDenominator {
        which: &'static str,
        z: Complex64,
        t: f64,
    },

    #[error("transfer function singular (w ~ 1) at z = {z}, t = {t}")]
    WSingular { z: Complex64, t: f64 },

    #[error("degenerate Wirtinger derivative at z = {z}")]
    DegenerateDerivative { z: Complex64 },

    #[error("winding probe {probe} on circle r = {r}: image curve passes within 1e-9 of target")]
    WindingGuard { r: f64, probe: usize },

    #[error("preset `{0}` is ambiguous in its source form; supply h explicitly")]
    AmbiguousPreset(&'static str),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
