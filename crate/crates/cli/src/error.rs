use knotcalc::classical::ClassicalError;
use knotcalc::diagram::DiagramError;
use knotcalc::moves::MoveError;
use knotcalc::quantum::QuantumError;
use knotcalc::ring::RingError;
use knotcalc::surfaces::SurfaceError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("resource cap: {0}")]
    Resource(String),
    #[error("{0}")]
    NotReproduced(String),
}

impl CliError {
    /// 2 for bad input, 3 when a resource cap stopped the computation, 1
    /// when a reproduction ran but disagreed with the published result.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::NotReproduced(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassicalError> for CliError {
    fn from(e: ClassicalError) -> Self {
        match e {
            ClassicalError::TooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        match e {
            QuantumError::ResourceLimit(_) => CliError::Resource(e.to_string()),
            QuantumError::Classical(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Classical(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
