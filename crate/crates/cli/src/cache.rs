//! Content-addressed cache of command output, keyed by the SHA-256 of the
//! canonical request line.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `$VOA_CACHE_DIR`, or `./.voa-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("VOA_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".voa-cache"));
        Self { dir }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(request: &str) -> String {
        let digest = Sha256::digest(request.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, request: &str) -> PathBuf {
        self.dir.join(format!("{}.out", Self::key(request)))
    }

    pub fn get(&self, request: &str) -> Option<String> {
        std::fs::read_to_string(self.path(request)).ok()
    }

    /// Writes through a temporary file in the cache directory, then renames.
    pub fn put(&self, request: &str, output: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(output.as_bytes())?;
        tmp.persist(self.path(request)).map_err(|e| e.error)?;
        Ok(())
    }
}
