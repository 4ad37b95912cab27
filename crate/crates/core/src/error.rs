use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unknown id {0:?}")]
    UnknownId(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subspace containment violated: small subspace is not contained in big subspace")]
    ContainmentViolation,
    #[error("invalid translation quiver: {0}")]
    InvalidQuiver(String),
    #[error("quiver is not a tree: {0}")]
    NotATree(String),
    #[error("path does not lie in the quiver: {0}")]
    PathNotInQuiver(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("representations belong to different algebras")]
    AlgebraMismatch,
    #[error("relation {relation} violated on module {module}")]
    RelationViolated { module: String, relation: usize },
    #[error("map is not a module morphism: {0}")]
    NotIntertwining(String),
    #[error("endomorphism ring of {0} is not local over the base field")]
    EndNotLocalOverField(String),
    #[error("no verified sink map at {0}")]
    MissingSinkMap(String),
    #[error("sink/source map summand {0} lies outside the component")]
    SummandOutsideComponent(String),
    #[error("radical filtration did not stabilize within {cap} steps")]
    NotStabilized { cap: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("the zero morphism has no principal part")]
    ZeroMorphism,
    #[error("input morphism has infinite depth")]
    InfiniteDepthInput,
    #[error("morphism is not irreducible")]
    NotIrreducible,
    #[error("kernel or cokernel does not belong to the component: {0}")]
    KernelNotInComponent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidField(_) => "invalid_field",
            Error::UnknownId(_) => "unknown_id",
            Error::Shape(_) => "shape",
            Error::ContainmentViolation => "containment_violation",
            Error::InvalidQuiver(_) => "invalid_quiver",
            Error::NotATree(_) => "not_a_tree",
            Error::PathNotInQuiver(_) => "path_not_in_quiver",
            Error::EndpointMismatch(_) => "endpoint_mismatch",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::RelationViolated { .. } => "relation_violated",
            Error::NotIntertwining(_) => "not_intertwining",
            Error::EndNotLocalOverField(_) => "end_not_local",
            Error::MissingSinkMap(_) => "missing_sink_map",
            Error::SummandOutsideComponent(_) => "summand_outside_component",
            Error::NotStabilized { .. } => "not_stabilized",
            Error::Inconclusive(_) => "inconclusive",
            Error::ZeroMorphism => "zero_morphism",
            Error::InfiniteDepthInput => "infinite_depth_input",
            Error::NotIrreducible => "not_irreducible",
            Error::KernelNotInComponent(_) => "kernel_not_in_component",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
        }
    }
}
