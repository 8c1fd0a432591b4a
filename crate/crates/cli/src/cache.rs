use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::config::Job;
use crate::error::CliError;

pub const CACHE_ENV: &str = "CHEREDNIK_CACHE";
const DEFAULT_DIR: &str = ".cherednik-cache";

/// A finished computation as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub result: serde_json::Value,
    pub mismatch: Option<String>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `--cache-dir`, else `$CHEREDNIK_CACHE`, else `./.cherednik-cache`.
    pub fn resolve(flag: Option<&Path>) -> Self {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache { dir }
    }

    pub fn path(&self, job: &Job) -> PathBuf {
        self.dir.join(format!("{}.json", job.digest()))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, job: &Job) -> Option<Artifact> {
        let text = fs::read_to_string(self.path(job)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes through a temporary file so concurrent readers never see a
    /// partial entry.
    pub fn store(&self, job: &Job, artifact: &Artifact) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Computation {
            code: "CacheWrite".into(),
            message: format!("{}: {e}", self.dir.display()),
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path(job);
        static WRITES: AtomicUsize = AtomicUsize::new(0);
        let unique = WRITES.fetch_add(1, Ordering::Relaxed);
        let tmp = target.with_extension(format!("tmp{}-{unique}", std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(io)?;
        file.write_all(to_json(artifact).as_bytes()).map_err(io)?;
        fs::rename(&tmp, &target).map_err(io)
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
