use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The matrix differs from its adjoint by more than the tolerance.
    NotHermitian {
        max_deviation: f64,
    },
    /// Jacobi sweeps exhausted before the off-diagonal mass vanished.
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
    },
    /// A matrix had the wrong shape for the requested operation.
    BadShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Negative eigenvalue or wrong trace for something used as a state.
    NotDensityMatrix {
        min_eigenvalue: f64,
        trace: f64,
    },
    /// The closed forms divide by the coupling and cannot be used at `J = 0`.
    DegenerateCoupling,
    NonPositiveTemperature(f64),
    /// `B < 0` without the explicit override.
    NegativeField(f64),
    /// A parameter was NaN or infinite.
    NonFiniteParameter(&'static str),
    /// Numeric and closed-form paths disagree beyond tolerance.
    CrossCheck {
        what: &'static str,
        deviation: f64,
    },
    /// A quantity became NaN/Inf or escaped its admissible range.
    NumericalFailure {
        what: &'static str,
        value: f64,
    },
    InvalidBracket {
        lo: f64,
        hi: f64,
    },
    InvalidSpec {
        field: &'static str,
        reason: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { max_deviation } => {
                write!(f, "matrix is not Hermitian (max |M - M†| = {max_deviation:e})")
            }
            Error::NoConvergence { sweeps, off_norm } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::BadShape { expected, found } => write!(
                f,
                "expected a {}x{} matrix, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotDensityMatrix {
                min_eigenvalue,
                trace,
            } => write!(
                f,
                "not a density matrix (min eigenvalue {min_eigenvalue:e}, trace {trace})"
            ),
            Error::DegenerateCoupling => {
                f.write_str("closed-form spectrum needs J != 0; use the numeric path")
            }
            Error::NonPositiveTemperature(t) => {
                write!(f, "temperature must be > 0 for a finite-T state (got {t}); use the T=0 limit mode instead")
            }
            Error::NegativeField(b) => write!(
                f,
                "magnetic field B = {b} is negative; B >= 0 unless the negative-field override is set"
            ),
            Error::NonFiniteParameter(name) => write!(f, "parameter {name} is not finite"),
            Error::CrossCheck { what, deviation } => write!(
                f,
                "closed-form and numeric {what} disagree by {deviation:e}"
            ),
            Error::NumericalFailure { what, value } => {
                write!(f, "numerical failure in {what}: {value}")
            }
            Error::InvalidBracket { lo, hi } => {
                write!(f, "invalid temperature bracket: need 0 < lo < hi, got [{lo}, {hi}]")
            }
            Error::InvalidSpec { field, reason } => {
                write!(f, "invalid sweep spec field `{field}`: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}
