use std::path::PathBuf;

pub mod bounds;
pub mod expand;
pub mod faber;
pub mod invert;
pub mod sweep;
pub mod verify;

/// What a command hands back to `main` for writing and exit-code selection.
#[derive(Debug, Default)]
pub struct Run {
    pub output: Vec<u8>,
    /// Printed to stderr; with `strict`, any warning turns into exit code 3.
    pub warnings: Vec<String>,
    pub strict: bool,
    /// Extra stderr lines that are not warnings (e.g. COUNTEREXAMPLE records).
    pub records: Vec<String>,
    pub dest: Option<PathBuf>,
    /// Internal cross-check failure; the report is still written, then exit 2.
    pub mismatch: Option<String>,
}
