use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use netbundle::io::{self, LoadError};
use netbundle::{fixtures, Complex, Error, Poset};
use sha2::{Digest, Sha256};

/// Why a command stopped; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Usage errors and malformed input files: exit 1.
    Parse(String),
    /// Domain validation failures: exit 2, budget overruns: exit 3.
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Domain(Error::BudgetExceeded { .. }) => 3,
            Failure::Domain(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "{m}"),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::Parse(p.to_string()),
            LoadError::Invalid(e) => Failure::Domain(e),
        }
    }
}

/// Collects every input read by a command, for the report digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn feed(&mut self, label: &str, text: &str) {
        self.hasher.update(label.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
    }

    pub fn digest(self) -> String {
        self.hasher.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
        self.feed(&path.display().to_string(), &text);
        Ok(text)
    }

    /// A poset given as a file path, a fixture name or `<name>.dual`. A
    /// trailing `.poset` on a missing file falls back to the fixture of
    /// that name.
    pub fn poset(&mut self, spec: &str, dir: Option<&Path>) -> Result<Poset, Failure> {
        if let Some(base) = spec.strip_suffix(".dual") {
            return Ok(self.poset(base, dir)?.dual());
        }
        let mut candidates: Vec<PathBuf> = vec![PathBuf::from(spec)];
        if let Some(d) = dir {
            candidates.push(d.join(spec));
            candidates.push(d.join(format!("{spec}.poset")));
        }
        if let Some(path) = candidates.iter().find(|p| p.is_file()) {
            let text = self.read(path)?;
            return Ok(io::parse_poset(&text)?);
        }
        let stem = spec.strip_suffix(".poset").unwrap_or(spec);
        let stem = Path::new(stem).file_name().and_then(|s| s.to_str()).unwrap_or(stem);
        match fixtures::by_name(stem) {
            Some(p) => {
                self.feed(&format!("fixture:{stem}"), &p.to_string());
                Ok(p)
            }
            None => Err(Failure::Parse(format!("no poset file or fixture named `{spec}`"))),
        }
    }

    /// Reads a data file and the poset its header names: `--poset` wins,
    /// then fixtures, then `<name>.poset` next to the file.
    pub fn data_file(
        &mut self,
        path: &Path,
        poset_override: Option<&str>,
    ) -> Result<(String, Arc<Complex>), Failure> {
        let text = self.read(path)?;
        let header = io::read_header(&text)?;
        let dir = path.parent();
        let poset = match (poset_override, fixtures::by_name(&header.poset)) {
            (Some(p), _) => self.poset(p, dir)?,
            (None, Some(p)) => {
                self.feed(&format!("fixture:{}", header.poset), &p.to_string());
                p
            }
            (None, None) => self.poset(&header.poset, dir)?,
        };
        Ok((text, Complex::new(poset).into_shared()))
    }
}
