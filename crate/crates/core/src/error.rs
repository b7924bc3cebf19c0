use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (pivot below threshold)")]
    SingularMatrix,
    #[error("iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("system is not asymptotically stable (spectral abscissa {0:e})")]
    NotStable(f64),
    #[error("system is not minimal: {0}")]
    NotMinimal(String),
    #[error("eigenvalue {re:e}{im:+e}i is not real")]
    ComplexEigenvalue { re: f64, im: f64 },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("repeated Hankel singular value {sigma:e} (multiplicity {multiplicity})")]
    RepeatedHsv { sigma: f64, multiplicity: usize },
    #[error("order {0} splits a group of repeated Hankel singular values")]
    SplitsMultiplicityGroup(usize),
    #[error("A22 block is singular")]
    SingularA22,
    #[error("A11 block is singular")]
    SingularA11,
    #[error("arrowhead matrix has a singular shift: {0}")]
    SingularShift(String),
    #[error("evaluation point coincides with a pole")]
    PoleHit,
    #[error("hypotheses of the arrowhead sign theorem are violated: {0}")]
    HypothesisViolated(String),
    #[error("numerator has complex zeros")]
    ComplexZeros,
    #[error("numerator has repeated zeros")]
    RepeatedZeros,
    #[error("numerator and denominator share a root")]
    NotCoprime,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("bad grid configuration: {0}")]
    BadConfig(String),
}
