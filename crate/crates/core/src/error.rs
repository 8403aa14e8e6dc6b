use std::fmt;

use thiserror::Error;

use crate::expr::ParseError;

/// Stage of the plane degree reduction at which a map was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JvdkStage {
    /// A component is constant (or zero) while the other is nonlinear.
    ConstantComponent,
    /// The smaller degree does not divide the larger one.
    NonDivisibleDegrees,
    /// The leading form of the larger component is not a scalar multiple
    /// of a power of the other leading form.
    LeadingFormsNotProportional,
    /// Reduction did not lower the total degree.
    DegreeNotDecreasing,
    /// The terminal affine map is singular.
    SingularLinearPart,
}

impl fmt::Display for JvdkStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            JvdkStage::ConstantComponent => "a component is constant",
            JvdkStage::NonDivisibleDegrees => "component degrees are not divisible",
            JvdkStage::LeadingFormsNotProportional => "leading forms are not proportional",
            JvdkStage::DegreeNotDecreasing => "degree did not decrease",
            JvdkStage::SingularLinearPart => "linear part is singular",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a precondition (arity mismatch, wrong grading class, ...).
    #[error("usage error: {0}")]
    Usage(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(JvdkStage),
    #[error("not graded: {0}")]
    NotGraded(String),
    #[error("not liftable: {0}")]
    NotLiftable(String),
    #[error("not splittable: {0}")]
    NotSplittable(String),
    #[error("unsupported grading: {0}")]
    UnsupportedGrading(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A mathematical invariant that should always hold was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for mathematical negatives, as opposed to bad input or bugs.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotAutomorphism(_)
                | Error::NotGraded(_)
                | Error::NotLiftable(_)
                | Error::NotSplittable(_)
                | Error::UnsupportedGrading(_)
        )
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
