use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] anyon_core::Error),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// 2 for parse and configuration errors, 3 for budget refusals, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Core(e) if e.is_budget_refusal() => 3,
            BenchError::Core(anyon_core::Error::Parse(_) | anyon_core::Error::Config(_)) => 2,
            BenchError::Config(_) => 2,
            _ => 1,
        }
    }
}
