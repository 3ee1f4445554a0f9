use std::process::ExitCode;

use embedlab::Error;

/// Process outcome other than success, one variant per exit code.
#[derive(Debug)]
pub enum Failure {
    /// Some property failed (1).
    Property(String),
    /// Unreadable input (2).
    Parse(String),
    /// Input read but rejected, or an output could not be written (3).
    Validation(String),
    /// A size guard tripped (4).
    Guard(String),
}

impl Failure {
    pub fn code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Property(_) => 1,
            Self::Parse(_) => 2,
            Self::Validation(_) => 3,
            Self::Guard(_) => 4,
        })
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Property(m) | Self::Parse(m) | Self::Validation(m) | Self::Guard(m) => m,
        }
    }

    pub fn context(self, what: &str) -> Self {
        let wrap = |m: String| format!("{what}: {m}");
        match self {
            Self::Property(m) => Self::Property(wrap(m)),
            Self::Parse(m) => Self::Parse(wrap(m)),
            Self::Validation(m) => Self::Validation(wrap(m)),
            Self::Guard(m) => Self::Guard(wrap(m)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::UnknownPrimitive(_) | Error::UnknownSuite(_) => Self::Parse(m),
            Error::TooManyCoordinates { .. } | Error::DimensionTooLarge { .. } => Self::Guard(m),
            _ => Self::Validation(m),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Validation(e.to_string())
    }
}
