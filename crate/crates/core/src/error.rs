use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Witnesses are carried as names so
/// the error can be rendered without access to the structure that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // lattices
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order has a cycle: {0} <= {1} and {1} <= {0}")]
    Cycle(String, String),
    #[error("not a lattice: {a} and {b} have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },

    // quantaloids
    #[error("composition table for {0} is incomplete")]
    IncompleteComposition(String),
    #[error("composition is not associative: ({h} o {g}) o {f} != {h} o ({g} o {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("identity on `{object}` is not neutral: {detail}")]
    NotUnital { object: String, detail: String },
    #[error("composition does not preserve joins: {0}")]
    NotSupPreserving(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("residual adjunction fails: {0}")]
    ResidualViolation(String),
    #[error("diagonal hom {0} is not closed under joins")]
    DiagonalNotClosed(String),

    // categories and functors
    #[error("reflexivity fails at `{0}`: identity is not below a(x,x)")]
    ReflexivityViolation(String),
    #[error("transitivity fails: a({y},{z}) o a({x},{y}) is not below a({x},{z})")]
    TransitivityViolation { x: String, y: String, z: String },
    #[error("extent mismatch: `{0}` and its image `{1}` have different extents")]
    ExtentMismatch(String, String),
    #[error("not monotone: a({x},{y}) is not below b(f {x}, f {y})")]
    NotMonotone { x: String, y: String },
    #[error("categories live over different quantaloids")]
    QuantaloidMismatch,

    // distributors and Chu transforms
    #[error("bimodule condition fails at x={x}, x'={x2}, y={y}, y'={y2}")]
    BimoduleViolation {
        x: String,
        x2: String,
        y: String,
        y2: String,
    },
    #[error("Chu condition fails at x={x}, z={z}")]
    ChuViolation { x: String, z: String },
    #[error("elementwise and presheaf formulations of the Chu condition disagree")]
    FormulationMismatch,
    #[error("construction is ill-defined on a class: {0}")]
    IllDefined(String),
    #[error("not a cone: {0}")]
    NotACone(String),
    #[error("transforms are not distinct")]
    NotDistinct,
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    SizeCap {
        what: String,
        needed: usize,
        cap: usize,
    },

    // input
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved reference `{name}` at {path}")]
    UnresolvedReference { path: String, name: String },
    #[error("invalid value at {path}: {source}")]
    Validation {
        path: String,
        #[source]
        source: Box<Error>,
    },
    #[error("malformed input at {path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyLattice => "EmptyLattice",
            Error::Duplicate(_) => "Duplicate",
            Error::UnknownElement(_) => "UnknownElement",
            Error::Cycle(..) => "CycleError",
            Error::NotALattice { .. } => "NotALattice",
            Error::IncompleteComposition(_) => "IncompleteComposition",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::NotUnital { .. } => "NotUnital",
            Error::NotSupPreserving(_) => "NotSupPreserving",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::BadParameter(_) => "BadParameter",
            Error::ResidualViolation(_) => "ResidualViolation",
            Error::DiagonalNotClosed(_) => "DiagonalNotClosed",
            Error::ReflexivityViolation(_) => "ReflexivityViolation",
            Error::TransitivityViolation { .. } => "TransitivityViolation",
            Error::ExtentMismatch(..) => "ExtentMismatch",
            Error::NotMonotone { .. } => "NotMonotone",
            Error::QuantaloidMismatch => "QuantaloidMismatch",
            Error::BimoduleViolation { .. } => "BimoduleViolation",
            Error::ChuViolation { .. } => "ChuViolation",
            Error::FormulationMismatch => "FormulationMismatch",
            Error::IllDefined(_) => "WitnessedIllDefinedness",
            Error::NotACone(_) => "NotACone",
            Error::NotDistinct => "NotDistinct",
            Error::SizeCap { .. } => "SizeCap",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnresolvedReference { .. } => "UnresolvedReference",
            Error::Validation { .. } => "ValidationError",
            Error::Schema { .. } => "SchemaError",
        }
    }

    /// The innermost error, looking through `Validation` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Validation { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn at(self, path: impl Into<String>) -> Error {
        Error::Validation {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
