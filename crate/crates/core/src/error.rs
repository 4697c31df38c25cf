use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(String),
    #[error("not a Hom-Lie algebra: {0}")]
    NotHomLie(String),
    #[error("map is not an endomorphism: {0}")]
    NotAnEndomorphism(String),
    #[error("twist does not preserve the product")]
    AlphaDoesNotPreserveProduct,
    #[error("product is not Hom-associative")]
    NotHomAssociative,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("cochain is not α-equivariant")]
    NotEquivariant,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("extensions have different boundary data: {0}")]
    BoundaryMismatch(String),
    #[error("subspace T is not an ideal of the semidirect product")]
    TNotIdeal,
    #[error("twist {0} is not a supported power of α")]
    UnsupportedTwist(String),
    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(String),
    #[error("invalid cat1 algebra: {0}")]
    InvalidCat1(String),
    #[error("invalid crossed extension: {0}")]
    InvalidCrossedExtension(String),
    #[error("η values leave ker μ")]
    EtaOutsideKernel,
    #[error("not a Hom-set morphism: {0}")]
    NotHomSetMorphism(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn dims(context: &str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.to_string(),
            expected,
            found,
        }
    }
}
