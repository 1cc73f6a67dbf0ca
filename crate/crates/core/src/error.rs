use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not respect relations: source relation {witness} is not mapped into the target relations")]
    IllDefinedHom { witness: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree {degree} outside the range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },

    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: i64 },

    #[error("differential does not preserve the filtration at degree {degree}, level {level}")]
    FiltrationNotPreserved { degree: i64, level: i64 },

    #[error("structure map of stage {stage} is not surjective in degree {degree}")]
    NotSurjective { stage: i64, degree: i64 },

    #[error("exact couple fails exactness at {place} in bidegree ({s}, {t})")]
    NotExact { place: &'static str, s: i64, t: i64 },

    #[error("cosimplicial identity {identity} fails at level {level}")]
    CosimplicialIdentity { identity: String, level: usize },

    #[error("not a group homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("requested degree {requested} needs {needed}")]
    WindowViolation { requested: i64, needed: String },

    #[error("invalid site: {0}")]
    InvalidSite(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("presheaf has no value on open {0}")]
    MissingPresheafValue(String),

    #[error("cochain is not a cocycle: coboundary nonzero on level-3 piece {piece}")]
    NonCocycle { piece: String },

    #[error("gluing data does not land in the subpresheaf on piece {piece}")]
    NotInSubpresheaf { piece: String },

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
