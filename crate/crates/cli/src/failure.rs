use std::fmt;
use std::process::ExitCode;

/// Error carrying the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_STABILITY: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_NUMERIC: u8 = 4;

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    pub fn stability(message: impl Into<String>) -> Self {
        Self { code: EXIT_STABILITY, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl From<netperf::Error> for Failure {
    fn from(e: netperf::Error) -> Self {
        let code = if e.is_stability_failure() {
            EXIT_STABILITY
        } else if e.is_numeric_failure() {
            EXIT_NUMERIC
        } else {
            EXIT_INPUT
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
