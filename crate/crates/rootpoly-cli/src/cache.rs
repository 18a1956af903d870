use std::fs;
use std::path::{Path, PathBuf};

use rootpoly::parse_scalar;

use crate::compute::{canonical, ResultRecord};
use crate::error::CliResult;

/// Environment variable naming the cache directory when no flag is given.
pub const CACHE_ENV: &str = "ROOTPOLY_CACHE_DIR";

/// One JSON file per job fingerprint.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// The flag if given, else the environment; no cache when neither is set.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        match flag {
            Some(p) => Some(Cache::new(p)),
            None => std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, fingerprint: &str) -> PathBuf {
        self.dir.join(format!("{}.json", fingerprint))
    }

    /// `Ok(None)` on a miss; `Err` carries a warning for an unusable entry.
    pub fn load(&self, fingerprint: &str) -> Result<Option<ResultRecord>, String> {
        let path = self.entry_path(fingerprint);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("warning: ignoring unreadable cache entry {}: {}", path.display(), e)),
        };
        let corrupt = |why: String| format!("warning: ignoring corrupt cache entry {}: {}", path.display(), why);
        let rec: ResultRecord = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if rec.fingerprint != fingerprint {
            return Err(corrupt("fingerprint mismatch".into()));
        }
        if rec.lambda.is_empty() || rec.coefficients.is_empty() {
            return Err(corrupt("empty expansion".into()));
        }
        for c in &rec.coefficients {
            match parse_scalar(&c.value) {
                Ok(s) if canonical(&s) == c.value => {}
                _ => return Err(corrupt(format!("coefficient {} is not canonical", c.value))),
            }
        }
        Ok(Some(rec))
    }

    pub fn store(&self, rec: &ResultRecord) -> CliResult<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.entry_path(&rec.fingerprint);
        let tmp = self.dir.join(format!(".{}.{}.tmp", rec.fingerprint, std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(rec).expect("record serializes"))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}
