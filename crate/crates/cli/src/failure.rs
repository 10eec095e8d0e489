use std::path::Path;

use serde_json::json;
use ultrametric_core::Error;

/// An error with the file it concerns, rendered as JSON on stderr.
#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub file: Option<String>,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self.error {
            Error::Parse { .. } | Error::Csv(_) | Error::Io(_) => 2,
            Error::InvalidInput(_) | Error::Degenerate(_) => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let (kind, row, column) = match &self.error {
            Error::Parse { row, column, .. } => ("malformed-csv", Some(*row), Some(*column)),
            Error::Csv(e) => (
                "malformed-csv",
                e.position().map(|p| p.line() as usize),
                None,
            ),
            Error::Io(_) => ("io", None, None),
            Error::InvalidInput(_) => ("invalid-input", None, None),
            Error::Degenerate(_) => ("degenerate", None, None),
        };
        json!({
            "error": kind,
            "message": self.error.to_string(),
            "file": self.file,
            "row": row,
            "column": column,
        })
        .to_string()
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, file: None }
    }
}

pub trait InFile<T> {
    fn in_file(self, path: &Path) -> Result<T, Failure>;
}

impl<T> InFile<T> for Result<T, Error> {
    fn in_file(self, path: &Path) -> Result<T, Failure> {
        self.map_err(|error| Failure {
            error,
            file: Some(path.display().to_string()),
        })
    }
}
