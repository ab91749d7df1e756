use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use tractable_core::{Error, ErrorKind};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::ResourceCap => 3,
                ErrorKind::Numerical => 4,
            },
            CliError::Io(..) | CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e| CliError::Io(path.to_path_buf(), e);
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `--out` when given, otherwise to stdout.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// Output directory of a multi-file command, created if missing.
pub fn out_dir(out: Option<&Path>) -> Result<PathBuf, CliError> {
    let dir = out
        .ok_or_else(|| CliError::Usage("this command writes several files; pass --out DIR".into()))?
        .to_path_buf();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(dir.clone(), e))?;
    Ok(dir)
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}
