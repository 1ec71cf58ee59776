//! Exact scalars, sparse linear algebra over Q and Q[x], and cohomology of
//! finite complexes.

pub mod complex;
pub mod element;
pub mod matrix;
pub mod poly;
pub mod smith;

pub use complex::{cohomology, fibre_dimensions, DegreeCohomology, FiniteComplex};
pub use element::{Element, GradedElement, Parity, Token, TokenInfo, TokenTable};
pub use matrix::{solve_rational, Echelon, QSolution, SparseMatrix, SparseVec};
pub use poly::{int, parse_rational, rat, Poly, Rational, Ring, Scalar};
pub use smith::{graded_smith, smith_form, GradedMatrix, GradedSmith, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("mixed coefficient rings {left} and {right}")]
    MixedRings { left: String, right: String },
    #[error("entry ({row}, {col}) is not a rational constant")]
    NonConstantEntry { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d is nonzero on degree {degree}")]
    DSquaredNonzero { degree: i64 },
}

/// Rank, kernel and image of a matrix, together with its invariant factors.
#[derive(Clone, Debug)]
pub struct Solution {
    pub rank: usize,
    pub kernel: Vec<SparseVec>,
    pub image: Vec<SparseVec>,
    /// monic invariant factors; all equal to 1 over Q
    pub invariant_factors: Vec<Poly>,
}

/// Exact row reduction over Q, Smith form over a polynomial ring.
pub fn solve_and_rank(m: &SparseMatrix) -> Result<Solution, KernelError> {
    if m.ring.is_field() {
        let s = solve_rational(m)?;
        return Ok(Solution {
            rank: s.rank,
            kernel: s.kernel,
            image: s.image,
            invariant_factors: vec![Poly::one(); s.rank],
        });
    }
    let s = smith_form(m);
    let image = (0..s.rank())
        .map(|j| m.apply(&s.transform_column(j)))
        .collect();
    Ok(Solution {
        rank: s.rank(),
        kernel: s.kernel_basis(),
        image,
        invariant_factors: s.factors,
    })
}
