use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph or CRG text. `line` is 1-based.
    Parse { line: usize, message: String },
    /// A name such as `C5` or `k2,1` that does not denote anything.
    UnknownName(String),
    /// A vertex index outside the graph.
    VertexOutOfRange { index: usize, len: usize },
    /// Input larger than what an exhaustive routine accepts.
    CapExceeded { what: &'static str, size: usize, cap: usize },
    /// Caller violated a precondition that has no dedicated variant.
    InvalidArgument(String),
    /// No CRG of the form K(r,s) admits the forbidden family.
    TrivialProperty,
    /// A closed form was requested outside the inputs it covers.
    NotApplicable(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            Error::UnknownName(name) => write!(f, "unknown name `{name}`"),
            Error::VertexOutOfRange { index, len } => {
                write!(f, "vertex index {index} out of range for {len} vertices")
            }
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what} has size {size}, above the supported cap of {cap}")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
            Error::TrivialProperty => f.write_str(
                "the forbidden family defines a trivial property (empty clique spectrum)",
            ),
            Error::NotApplicable(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
