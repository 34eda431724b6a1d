use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Too few (or too many) observations for the requested operation.
    #[error("size error: {what} requires {requirement}, got {got}")]
    Size {
        what: &'static str,
        requirement: String,
        got: usize,
    },

    #[error("validation error: {0}")]
    Validation(String),

    /// The statistic is undefined for this input (zero variance, all ties).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("format error at line {line}{}: {message}", column.as_ref().map(|c| format!(", column {c}")).unwrap_or_default())]
    Format {
        line: u64,
        column: Option<String>,
        message: String,
    },

    #[error("coverage error: missing years {missing:?}")]
    Coverage { missing: Vec<i32> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn size(what: &'static str, requirement: impl Into<String>, got: usize) -> Self {
        Error::Size {
            what,
            requirement: requirement.into(),
            got,
        }
    }

    pub(crate) fn format(line: u64, column: Option<&str>, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            column: column.map(str::to_owned),
            message: message.into(),
        }
    }

    /// True for errors caused by the statistic being undefined on the data,
    /// as opposed to malformed or insufficient input.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::Degenerate(_))
    }
}
