//! Command implementations for the CAD engine front end.
//!
//! The binary (`cadc`) dispatches to these modules. Primary command output
//! on stdout is deterministic for fixed flags and seed; timings and
//! diagnostics go to stderr. All exact computation lives in the engine;
//! floating point appears only in presentation (SVG/CSV approximations,
//! benchmark statistics).

pub mod bench;
pub mod commands;
pub mod gen;
pub mod plot;

use cad_core::CadError;

/// Exit-code discipline: 0 success, 1 check/equivalence failure, 2 input
/// error, 64 usage error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Command-level error with its exit code and diagnostic stream format.
#[derive(Debug)]
pub enum CmdError {
    /// Engine/input error: `E_*` code on stderr, exit 2.
    Input(CadError),
    /// Filesystem problem: exit 2.
    Io(String),
    /// Bad flag combination or value: exit 64.
    Usage(String),
}

impl From<CadError> for CmdError {
    fn from(e: CadError) -> Self {
        CmdError::Input(e)
    }
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Input(_) | CmdError::Io(_) => EXIT_INPUT_ERROR,
            CmdError::Usage(_) => EXIT_USAGE,
        }
    }

    /// Diagnostic line for the error stream.
    pub fn diagnostic(&self) -> String {
        match self {
            CmdError::Input(e) => format!("{}: {}", e.code(), e),
            CmdError::Io(m) => format!("E_IO: {m}"),
            CmdError::Usage(m) => format!("usage error: {m}"),
        }
    }
}

pub type CmdResult = std::result::Result<i32, CmdError>;
