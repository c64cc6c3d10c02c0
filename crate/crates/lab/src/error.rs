use thiserror::Error;

use crate::record::ExperimentRecord;

#[derive(Debug, Error)]
pub enum LabError {
    /// Bad arguments or parameters.
    #[error("usage: {0}")]
    Usage(String),
    /// A generator could not produce a graph meeting its contract.
    #[error("generator failed: {0}")]
    Generator(String),
    /// An input file did not parse.
    #[error("input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(String),
    /// A seeder broke one of its proven guarantees.
    #[error("guarantee violated: {reason}; record {record:?}")]
    Violation { reason: String, record: Box<ExperimentRecord> },
}

impl LabError {
    /// Process exit code: 1 usage, 2 guarantee violation, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) | LabError::Generator(_) => 1,
            LabError::Violation { .. } => 2,
            LabError::Input(_) | LabError::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
