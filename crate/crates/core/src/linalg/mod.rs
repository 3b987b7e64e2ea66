//! Exact linear algebra over ℚ and 𝔽_p.

mod complex;
mod elim;
mod field;
mod mat;
mod ses;

pub use complex::{homology_dim_at, CohomologyBasis, Complex, Grading};
pub use elim::{
    rank, rank_kernel_image, rank_kernel_image_with, rref, rref_rows, solve, solve_many, PivotOrder, Quotient,
    RankKernelImage, Rref,
};
pub use field::{Field, Scalar, MAX_PRIME};
pub use mat::{axpy, is_zero_vec, Mat, SparseRow};
pub use ses::{long_exact_sequence, snake_connecting, ComplexSes, ExactSequence, Exactness, Term};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `Q` or `GF(p)`)")]
    BadField(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("consecutive differentials do not compose to zero at degree {degree}")]
    CompositionNotZero { degree: usize },
    #[error("degree {0} is outside the computed range")]
    DegreeOutOfRange(usize),
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("ill-formed short exact sequence: {0}")]
    IllFormedSes(String),
}
