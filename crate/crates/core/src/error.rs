use thiserror::Error;

/// Errors raised by the optics, scattering, special-function and energy layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("angular node t = {0} outside [0, 1]")]
    NodeOutOfRange(f64),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("size mismatch: {what} has {got} entries, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("plate indices ({i}, {k}) invalid for a {plates}-plate stack: {reason}")]
    PlateIndex {
        i: usize,
        k: usize,
        plates: usize,
        reason: &'static str,
    },

    #[error("composition size {0} outside supported range 1..=62")]
    CompositionBound(usize),

    #[error("effective-mirror recursion hit a vanishing denominator at plate {plate}")]
    SingularRecursion { plate: usize },

    #[error("polylogarithm argument |z| = {0} exceeds the closed unit disk")]
    Li4Domain(f64),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("integrand returned non-finite value {value} at {at}")]
    NonFiniteIntegrand { at: f64, value: f64 },

    #[error("eigenvalue iteration for the round-trip operator did not converge")]
    RootFinding,

    #[error("reflection root with modulus {modulus} lies outside the closed unit disk at t = {t}")]
    RootOutsideDisk { modulus: f64, t: f64 },

    #[error("imaginary part {imag:e} of the polylogarithm node sum at t = {t} does not cancel")]
    ImaginaryResidue { imag: f64, t: f64 },

    #[error("scattering parameter {value} <= 0 at t = {t}, s = {s}")]
    NonPositiveDelta { value: f64, t: f64, s: f64 },

    #[error("gaps are not uniform; this method needs a single propagation variable")]
    NonUniformGaps,

    #[error("plate {0} is not perfectly electric or perfectly magnetic")]
    NonIdealPlate(usize),

    #[error("invalid stack: {0}")]
    InvalidStack(String),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("sweep failed at sigma = {sigma}: {source}")]
    SweepPoint {
        sigma: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("non-positive physical dimension: {0}")]
    NonPositiveDimension(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
