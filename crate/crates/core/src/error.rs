use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    CycleDetected(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("carrier has {size} elements, enumeration cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset is not downward directed")]
    NotDirected,

    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("relation `{kind}` does not fit node kinds of `{lo}` and `{hi}`")]
    InvalidRelation {
        lo: String,
        hi: String,
        kind: String,
    },
    #[error("closure conflict between `{lo}` and `{hi}`: {detail}")]
    ClosureConflict {
        lo: String,
        hi: String,
        detail: String,
    },
    #[error("node relation cycle through `{0}`")]
    NodeCycle(String),
    #[error("removing `{element}` (glb of the tail of ray `{ray}`) would shift a ray; not representable")]
    RayTopRemoval { ray: String, element: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge multiplicity must be a positive integer or \"inf\"")]
    BadMultiplicity,
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("vertex set is not a maximal tail")]
    NotATail,
    #[error("graph is outside the graded regime: {0}")]
    NotGradedRegime(String),
    #[error("prime ideals come from different graphs")]
    MixedGraphs,
    #[error("unknown prime")]
    UnknownPrime,
    #[error("no prime avoids the vertex above the given prime")]
    NoSuchPrime,

    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
