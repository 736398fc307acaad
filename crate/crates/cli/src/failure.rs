use std::fmt::Display;

/// Exit code for unreadable or malformed inputs.
pub const INPUT: u8 = 2;
/// Exit code for invalid configuration.
pub const CONFIG: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub type CliResult<T> = Result<T, Failure>;

impl Failure {
    pub fn input(msg: impl Display) -> Failure {
        Failure {
            code: INPUT,
            error: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn config(msg: impl Display) -> Failure {
        Failure {
            code: CONFIG,
            error: anyhow::anyhow!("{msg}"),
        }
    }
}

impl From<nativeness::Error> for Failure {
    fn from(e: nativeness::Error) -> Failure {
        use nativeness::Error::*;
        let code = match e {
            KTooLarge { .. } | ZeroK | InvalidHyperparams(_) | UnknownScript(_) => CONFIG,
            _ => INPUT,
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

/// Attach context and an exit code to any error.
pub trait Context<T> {
    fn or_input(self, what: impl Display) -> CliResult<T>;
    fn or_config(self, what: impl Display) -> CliResult<T>;
}

impl<T, E: Display> Context<T> for Result<T, E> {
    fn or_input(self, what: impl Display) -> CliResult<T> {
        self.map_err(|e| Failure::input(format!("{what}: {e}")))
    }

    fn or_config(self, what: impl Display) -> CliResult<T> {
        self.map_err(|e| Failure::config(format!("{what}: {e}")))
    }
}
