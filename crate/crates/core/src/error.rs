use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("malformed value: {0}")]
    Malformed(String),

    #[error("not a homology basis: {0}")]
    NotAHomologyBasis(String),
    #[error("boundary of boundary is nonzero: {0}")]
    NotAComplex(String),

    #[error("relator rewriting exceeded the budget of {budget} states")]
    RelatorRewriteBudgetExceeded { budget: usize },
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("no such cell: dimension {dim}, index {index}")]
    NoSuchCell { dim: usize, index: usize },

    #[error("invalid representation: {0}")]
    RepresentationInvalid(String),
    #[error("lie basis is not invariant under conjugation: {0}")]
    NotInvariantSubspace(String),
    #[error("local system is not orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("complex is not acyclic and no homology basis was supplied")]
    NotAcyclicAndNoBasis,
    #[error("complex is not acyclic")]
    NotAcyclic,

    #[error("not a dimer configuration: {0}")]
    NotADimer(String),
    #[error("orientation is not Kasteleyn: {0}")]
    NotKasteleyn(String),
    #[error("intersection pairing is degenerate")]
    DegeneratePairing,
    #[error("unsupported surface model: {0}")]
    UnsupportedModel(String),
    #[error("expected a sign, got {0}")]
    NotASign(String),
    #[error("not a spin structure: {0}")]
    NotASpinStructure(String),

    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("alternating form is degenerate")]
    Degenerate,

    #[error("series has non-unit constant term")]
    NonUnit,
    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
}
