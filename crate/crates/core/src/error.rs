use crate::exact::{ParseRatError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Rat(#[from] ParseRatError),
    #[error("invalid parameter syntax: {0}")]
    Syntax(String),
    #[error("{0} is undefined for the punctual type (0, 0)")]
    EmptyType(&'static str),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("reducible: alpha_{alpha_index} - beta_{beta_index} = {difference} is an integer")]
    Reducible {
        alpha_index: usize,
        beta_index: usize,
        difference: Rat,
    },
    #[error("parameter {name} = {value} lies outside [0, 1)")]
    OutOfRange { name: String, value: Rat },
    #[error("parameters {0} are not in increasing order")]
    NotSorted(&'static str),
    /// Tensoring with `K_{−α_1}` moves `α_1` to zero.
    #[error("alpha_1 = {alpha1} must vanish; tensor with the Kummer module K_{} first", -alpha1.clone())]
    KummerTwistRequired { alpha1: Rat },
    #[error("Gale data: {0}")]
    Gale(String),
    #[error("matrix has {rows} rows and {cols} columns; need rows < columns")]
    Shape { rows: usize, cols: usize },
    #[error("convex hull is degenerate: affine hull has dimension {affine_dim} in R^{ambient}")]
    DegenerateHull { affine_dim: usize, ambient: usize },
    #[error("input too large: {0}")]
    Size(String),
    #[error("matrix violates assumption {0}")]
    Assumption(String),
    #[error("not in the lattice: {0}")]
    NotInLattice(String),
    #[error("substitution into a non-central variable: {0}")]
    NonCentral(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag used in serialized errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Rat(_) | Error::Syntax(_) => "parse",
            Error::EmptyType(_) => "empty_type",
            Error::TypeMismatch(_) => "type_mismatch",
            Error::Reducible { .. } => "reducible",
            Error::OutOfRange { .. } => "range",
            Error::NotSorted(_) => "ordering",
            Error::KummerTwistRequired { .. } => "kummer_twist_required",
            Error::Gale(_) => "gale",
            Error::Shape { .. } => "shape",
            Error::DegenerateHull { .. } => "degenerate_hull",
            Error::Size(_) => "size",
            Error::Assumption(_) => "assumption",
            Error::NotInLattice(_) => "not_in_lattice",
            Error::NonCentral(_) => "noncentral",
            Error::Unsupported(_) => "unsupported",
            Error::Invalid(_) => "invalid",
        }
    }

    /// Errors caused by malformed input text rather than by the mathematics.
    pub fn is_parse(&self) -> bool {
        self.kind() == "parse"
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
