//! Exit code classes and atomic CSV output.

use std::fmt;
use std::io::Write;
use std::path::Path;

/// A failed command, carrying its exit code class.
#[derive(Debug)]
pub enum Failure {
    /// A verification check failed or a numerical routine gave up (exit 1).
    Verification(String),
    /// Arguments that do not describe a valid request (exit 2).
    Invalid(String),
    /// Reading or writing files failed (exit 3).
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) | Failure::Invalid(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<nonclassical::Error> for Failure {
    fn from(e: nonclassical::Error) -> Self {
        use nonclassical::Error::*;
        match e {
            Nonphysical(_) | InvalidArgument(_) => Failure::Invalid(e.to_string()),
            Numerical(_) | Verification(_) => Failure::Verification(e.to_string()),
        }
    }
}

/// Scientific notation with `sig` significant digits.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    format!("{:.*e}", sig.clamp(1, 17) - 1, v)
}

/// Rejects non-finite values before anything is written.
pub fn ensure_finite(what: &str, values: &[f64]) -> Result<(), Failure> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Failure::Verification(format!("non-finite value {v} in {what}"))),
        None => Ok(()),
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.5714285714285714, 6), "5.71429e-1");
        assert_eq!(fmt_sig(0.0, 3), "0.00e0");
        assert_eq!(fmt_sig(1.0 / 3.0, 17).parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn error_classes() {
        assert_eq!(Failure::from(nonclassical::Error::Nonphysical("x".into())).code(), 2);
        assert_eq!(Failure::from(nonclassical::Error::Numerical("x".into())).code(), 1);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("a.csv");
        write_atomic(&f, b"one").unwrap();
        write_atomic(&f, b"two").unwrap();
        assert_eq!(std::fs::read(&f).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
