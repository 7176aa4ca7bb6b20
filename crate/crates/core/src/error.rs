use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed system spec: {0}")]
    MalformedSpec(String),
    #[error("non-crystallographic entry m({s},{t}) = {m}; allowed values are 2, 3, 4, 6 and infinity")]
    NonCrystallographic { s: String, t: String, m: i64 },
    #[error("coxeter matrix is not symmetric at ({s},{t})")]
    AsymmetricMatrix { s: String, t: String },
    #[error("elements or roots belong to different coxeter systems")]
    SystemMismatch,
    #[error("vector {0:?} is not a real root of the system")]
    NotARootVector(Vec<i64>),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("matrix is not an element of the coxeter group")]
    NotInGroup,
    #[error("permutation does not preserve the coxeter matrix: m({s},{t}) changes")]
    NotDiagramCompatible { s: String, t: String },
    #[error("input set is empty")]
    EmptyInput,
    #[error("operation requires an affine system")]
    NotAffine,
    #[error("generator `{0}` is not a special vertex")]
    NotSpecialVertex(String),
    #[error("residue is too large: {size} chambers exceeds the guard of {limit}")]
    ResidueTooLarge { size: u64, limit: u64 },
    #[error("residue of type {0} is infinite")]
    InfiniteResidue(String),
    #[error("chamber is not contained in the gem")]
    NotInGem,
    #[error("roots {0:?} and {1:?} are not parallel")]
    NotParallel(Vec<i64>, Vec<i64>),
    #[error("root {0:?} is not one of the sector walls")]
    NotASectorWall(Vec<i64>),
    #[error("no translation found within search bound {0}")]
    SearchBoundExceeded(i64),
    #[error("invalid thickness: {0}")]
    InvalidThickness(String),
    #[error("thickness is not invariant under the diagram automorphism: q({s}) != q({t})")]
    ThicknessSigmaMismatch { s: String, t: String },
    #[error("gallery is not minimal")]
    GalleryNotMinimal,
    #[error("gallery does not end at the chamber opposite the apex")]
    NotOpposite,
    #[error("sign vector has length {got}, expected {expected}")]
    SignVectorLength { expected: usize, got: usize },
    #[error("scale factorization mismatch for translation {word}: q-length {scale} but product {product}")]
    FactorizationMismatch {
        word: String,
        scale: String,
        product: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
