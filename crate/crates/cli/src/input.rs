//! Reading matrices, parameter files and `--n` specifications.

use std::path::{Path, PathBuf};

use hyptest::composite::FamilyParams;
use hyptest::linalg::{matrix_from_json, HermitianOperator, PsdOperator};
use thiserror::Error;

/// Most copy numbers a single `--n` may request.
const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] hyptest::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file(path: &Path, err: hyptest::Error) -> CliError {
    match err {
        hyptest::Error::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => CliError::Core(other),
    }
}

/// Reads a matrix JSON file and checks the Hermitian invariant.
pub fn parse_matrix_file(path: &Path) -> CliResult<HermitianOperator> {
    let text = read(path)?;
    let m = matrix_from_json(&text).map_err(|e| in_file(path, e))?;
    Ok(HermitianOperator::new(m)?)
}

pub fn parse_psd_file(path: &Path) -> CliResult<PsdOperator> {
    Ok(PsdOperator::new(parse_matrix_file(path)?)?)
}

pub fn parse_params_file(path: &Path) -> CliResult<FamilyParams> {
    let text = read(path)?;
    FamilyParams::from_json(&text).map_err(|e| in_file(path, e))
}

/// Copy numbers from `--n`: a comma list (`10,20,40`) or a range
/// `start:stop[:step]` with `stop` inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSpec {
    pub values: Vec<u32>,
    /// Range step, `1` for lists. Finite differences use this spacing.
    pub step: u32,
}

impl std::str::FromStr for NSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let number = |s: &str| -> Result<u32, String> {
            let v: u32 = s
                .trim()
                .parse()
                .map_err(|_| format!("{s:?} is not a nonnegative integer"))?;
            if v == 0 {
                return Err("copy numbers start at 1".into());
            }
            Ok(v)
        };
        if text.contains(':') {
            let parts: Vec<&str> = text.split(':').collect();
            if parts.len() > 3 {
                return Err(format!("range {text:?} must be start:stop[:step]"));
            }
            let start = number(parts[0])?;
            let stop = number(parts[1])?;
            let step = parts.get(2).map_or(Ok(1), |s| number(s))?;
            if stop < start {
                return Err(format!("range {text:?} ends before it starts"));
            }
            if ((stop - start) / step) as usize >= MAX_POINTS {
                return Err(format!("range {text:?} has more than {MAX_POINTS} points"));
            }
            Ok(NSpec {
                values: (start..=stop).step_by(step as usize).collect(),
                step,
            })
        } else {
            let values = text.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            Ok(NSpec { values, step: 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn matrix_examples() {
        let m = parse_matrix_file(file(r#"{"dim":2,"re":[[1,0],[0,0]]}"#).path()).unwrap();
        assert_eq!(
            m,
            HermitianOperator::from_real_diagonal(&[1.0, 0.0]).unwrap()
        );
        let err =
            parse_matrix_file(file(r#"{"dim":2,"re":[[1,0,0],[0,0,0]]}"#).path()).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)), "{err}");
        let err = parse_matrix_file(file(r#"{"dim":2,"re":[[0,1],[0,0]]}"#).path()).unwrap_err();
        assert!(
            matches!(err, CliError::Core(hyptest::Error::InvalidOperand(_))),
            "{err}"
        );
        let err = parse_matrix_file(Path::new("/nonexistent/matrix.json")).unwrap_err();
        assert!(matches!(err, CliError::Io { .. }));
    }

    #[test]
    fn params_errors_keep_their_kind() {
        let ok =
            parse_params_file(file(r#"{"p":0.5,"q":0.5,"t":0.5,"s":0.5,"r":0.1,"R":1}"#).path())
                .unwrap();
        assert_eq!(ok.overlap_rank, 1);
        let err =
            parse_params_file(file(r#"{"p":0.5,"q":0.5,"t":0.1,"s":0.5,"r":0.3,"R":1}"#).path())
                .unwrap_err();
        assert!(
            matches!(err, CliError::Core(hyptest::Error::InvariantViolation(_))),
            "{err}"
        );
        let err = parse_params_file(file("{").path()).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)));
    }

    #[test]
    fn n_specs() {
        assert_eq!(
            "10,20,40".parse::<NSpec>().unwrap(),
            NSpec {
                values: vec![10, 20, 40],
                step: 1
            }
        );
        assert_eq!(
            "1:7:3".parse::<NSpec>().unwrap(),
            NSpec {
                values: vec![1, 4, 7],
                step: 3
            }
        );
        assert_eq!(
            "2:4".parse::<NSpec>().unwrap(),
            NSpec {
                values: vec![2, 3, 4],
                step: 1
            }
        );
        for bad in [
            "0:5",
            "5:1",
            "1:2:0",
            "a",
            "1:2:3:4",
            "3,,4",
            "1:4294967295",
        ] {
            assert!(bad.parse::<NSpec>().is_err(), "{bad}");
        }
    }
}
