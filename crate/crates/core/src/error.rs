use std::fmt;

use thiserror::Error;

/// One violated grading axiom, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GradingViolation {
    /// Component `g` is not an additive subgroup; `witness` is an offending sum or negation.
    NotSubgroup { g: usize, witness: usize },
    /// Element `x` has zero or several decompositions into component parts.
    NotDirectSum { x: usize },
    /// `a ∈ R_g`, `b ∈ R_h` but `a·b ∉ R_{gh}`.
    ClosureViolation { g: usize, h: usize, a: usize, b: usize },
    /// The unity is not in the identity component.
    OneNotInIdentity,
    /// A homogeneous idempotent sits in a component other than the identity one.
    IdempotentOffIdentity { x: usize, g: usize },
    /// A component member is not an element of the ring.
    OutOfRange { g: usize, x: usize },
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSubgroup { g, witness } => {
                write!(f, "NotSubgroup({g}): witness element {witness} escapes the component")
            }
            Self::NotDirectSum { x } => write!(f, "NotDirectSum({x})"),
            Self::ClosureViolation { g, h, a, b } => {
                write!(f, "ClosureViolation({g},{h},{a},{b})")
            }
            Self::OneNotInIdentity => f.write_str("one is not in the identity component"),
            Self::IdempotentOffIdentity { x, g } => {
                write!(f, "homogeneous idempotent {x} has degree {g}")
            }
            Self::OutOfRange { g, x } => write!(f, "component {g} lists element {x} out of range"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded { what: &'static str, order: usize, cap: usize },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid ring table: {0}")]
    InvalidRing(String),

    #[error("invalid grading: {}", join(.0))]
    Grading(Vec<GradingViolation>),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("element {0} is not homogeneous")]
    NotHomogeneous(usize),

    #[error("zero lies in every component and has no degree")]
    ZeroHasNoDegree,

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("ideal is not two-sided")]
    NotTwoSided,

    #[error("ideal is not proper")]
    NotProper,

    #[error("graded rings are over different groups")]
    GroupMismatch,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("element {0} is not an idempotent of the identity component")]
    NotIdempotent(usize),

    #[error("idempotent {0} is not central")]
    NotCentralIdempotent(usize),

    #[error("twisted product is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    AssociativityViolation { a: usize, b: usize, c: usize },

    #[error("not a ring homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("element {x} has no decomposition ({searched} candidates searched)")]
    NotDecomposable { x: usize, searched: usize },

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown kind at line {line}, column {column}: {message}")]
    UnknownKind { line: usize, column: usize, message: String },

    #[error("bad reference at {path}: {message}")]
    BadReference { path: String, message: String },

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(v: &[GradingViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
