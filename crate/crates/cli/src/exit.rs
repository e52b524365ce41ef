//! Exit codes: 0 success, 1 usage, 2 data error, 3 internal.

use std::fmt;
use std::process::ExitCode;

use wikiqual_ml::MlError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Usage = 1,
    Data = 2,
    Internal = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Failure {
        Failure { code: Code::Usage, error: error.into() }
    }

    pub fn data(error: impl Into<anyhow::Error>) -> Failure {
        Failure { code: Code::Data, error: error.into() }
    }

    pub fn internal(error: impl Into<anyhow::Error>) -> Failure {
        Failure { code: Code::Internal, error: error.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code as u8)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Causes already quoted by the message above them are skipped.
        let mut shown = self.error.to_string();
        f.write_str(&shown)?;
        for cause in self.error.chain().skip(1) {
            let text = cause.to_string();
            if !shown.contains(&text) {
                write!(f, ": {text}")?;
                shown = text;
            }
        }
        Ok(())
    }
}

pub fn usage(message: String) -> Failure {
    Failure::usage(anyhow::anyhow!(message))
}

impl From<MlError> for Failure {
    fn from(e: MlError) -> Failure {
        let code = match e {
            MlError::UnknownGroup(_) | MlError::UnknownAlgorithm(_) | MlError::NoGroups | MlError::TooFewFolds(_) => {
                Code::Usage
            }
            MlError::Leakage(_) | MlError::LengthMismatch(..) | MlError::Empty => Code::Internal,
            _ => Code::Data,
        };
        Failure { code, error: e.into() }
    }
}

impl From<wikiqual_core::corpus::CorpusError> for Failure {
    fn from(e: wikiqual_core::corpus::CorpusError) -> Failure {
        Failure::data(e)
    }
}

impl From<wikiqual_core::matrix::MatrixError> for Failure {
    fn from(e: wikiqual_core::matrix::MatrixError) -> Failure {
        Failure::data(e)
    }
}
