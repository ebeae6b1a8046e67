use thiserror::Error;

/// Errors raised by ingestion, construction and certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generating set: {0}")]
    InvalidGenset(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("identity permutation supplied as a generator")]
    IdentityGenerator,
    #[error("group table check failed: {0}")]
    GroupTable(String),
    #[error("empty edge set: the link graph has no edges")]
    EmptyEdgeSet,
    #[error("isolated vertex `{0}` in the link graph")]
    IsolatedVertex(String),
    #[error("link graph is disconnected (kernel dimension {0})")]
    Disconnected(usize),
    #[error("Zuk condition fails: lambda1 = {0} is not > 1/2")]
    ZukFails(f64),
    #[error("invalid almost representation: {0}")]
    InvalidRep(String),
    #[error("multiplicativity violated: defect {defect} exceeds {tol}")]
    NotHomomorphism { defect: f64, tol: f64 },
    #[error("generating set does not cover G \\ {{e}}: {0}")]
    NotAllNonIdentity(String),
    #[error("matrix is rank deficient (smallest singular value {0})")]
    RankDeficient(f64),
    #[error("gap certificate verdict is `{0}`, decomposition requires `pass`")]
    CertificationNotPassed(String),
    #[error("block bound violated: {0}")]
    BlockBound(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
