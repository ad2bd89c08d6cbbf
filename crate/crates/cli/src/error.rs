//! CLI error classification. Each class maps to a distinct exit code so
//! scripts can tell malformed input from violated preconditions from failed
//! validation.

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input files. Exit code 2.
    Input(String),
    /// Structurally valid input that an algorithm cannot accept. Exit code 3.
    Precondition(String),
    /// A produced decomposition failed its validation checks. Exit code 4.
    Validation(String),
}

impl CliError {
    pub fn input(msg: String) -> Self {
        CliError::Input(msg)
    }

    pub fn precondition(msg: String) -> Self {
        CliError::Precondition(msg)
    }

    pub fn validation(msg: String) -> Self {
        CliError::Validation(msg)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Validation(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<clusterpants::Error> for CliError {
    fn from(e: clusterpants::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}
