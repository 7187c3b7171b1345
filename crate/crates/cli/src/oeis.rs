//! b-file retrieval: local cache, then the OEIS server, then bundled fixtures.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::bfile::{BFile, BFileFormatError, SequenceId};

pub const CACHE_ENV: &str = "CUBICFIELDS_OEIS_CACHE";
pub const OFFLINE_ENV: &str = "CUBICFIELDS_OFFLINE";

const FIXTURES: [(&str, &str); 2] =
    [("A005471", include_str!("../fixtures/b005471.txt")), ("A198636", include_str!("../fixtures/b198636.txt"))];

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("{id} is not cached, not bundled, and could not be downloaded{}", detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default())]
    OfflineMiss { id: SequenceId, detail: Option<String> },
    #[error("{id}: {source}")]
    BFileFormat {
        id: SequenceId,
        #[source]
        source: BFileFormatError,
    },
}

/// Where a b-file came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Cache,
    Network,
    Fixture,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Cache => "cache",
            Source::Network => "network",
            Source::Fixture => "fixture",
        }
    }
}

/// `$CUBICFIELDS_OEIS_CACHE`, else `$XDG_CACHE_HOME/cubicfields/oeis`, else
/// `$HOME/.cache/cubicfields/oeis`, else a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("cubicfields").join("oeis")
}

pub fn offline_from_env() -> bool {
    std::env::var(OFFLINE_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

pub fn fixture(id: &SequenceId) -> Option<&'static str> {
    FIXTURES.iter().find(|(name, _)| *name == id.as_str()).map(|(_, text)| *text)
}

fn download(id: &SequenceId) -> Result<String, String> {
    let url = format!("https://oeis.org/{}/{}", id, id.file_name());
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(20))).build().into();
    let mut response = agent.get(&url).call().map_err(|e| e.to_string())?;
    response.body_mut().read_to_string().map_err(|e| e.to_string())
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so concurrent readers see either nothing or the whole file.
fn store(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Cached copy if present; otherwise a download (unless `offline`), which is
/// cached; otherwise the bundled fixture.
pub fn fetch_bfile(id: &SequenceId, cache_dir: &Path, offline: bool) -> Result<(BFile, Source), FetchError> {
    let parse = |text: &str| {
        BFile::parse(id.clone(), text).map_err(|source| FetchError::BFileFormat { id: id.clone(), source })
    };
    let path = cache_dir.join(id.file_name());
    if let Ok(text) = std::fs::read_to_string(&path) {
        return Ok((parse(&text)?, Source::Cache));
    }
    let mut detail = offline.then(|| "offline".to_string());
    if !offline {
        match download(id) {
            Ok(text) => {
                let bfile = parse(&text)?;
                // a failed cache write only costs a later re-download
                let _ = store(&path, &text);
                return Ok((bfile, Source::Network));
            }
            Err(e) => detail = Some(e),
        }
    }
    match fixture(id) {
        Some(text) => Ok((parse(text)?, Source::Fixture)),
        None => Err(FetchError::OfflineMiss { id: id.clone(), detail }),
    }
}
