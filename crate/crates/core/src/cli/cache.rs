use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::verify::VERSION;

/// Coefficient fields are the splitting fields of the ambient exponent
/// with the lexicographically least modulus; part of every key.
pub const FIELD_CONVENTION: &str = "splitting-field/lex-least-modulus";

/// The canonical description of a cached computation and its address.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    canonical: String,
}

impl CacheKey {
    /// `parts` are `(name, value)` pairs; the version tag and field
    /// convention are always included.
    pub fn new<'a>(parts: impl IntoIterator<Item = (&'a str, String)>) -> CacheKey {
        let mut canonical = format!("version={VERSION};field={FIELD_CONVENTION}");
        for (k, v) in parts {
            canonical.push_str(&format!(";{k}={v}"));
        }
        CacheKey { canonical }
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical.as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: String,
    key: String,
    sha256: String,
    payload: String,
}

/// A directory of content-addressed JSON payloads.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// The stored payload bytes, or `None` for a missing, stale or corrupt
    /// entry.
    pub fn load_bytes(&self, key: &CacheKey) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let env: Envelope = serde_json::from_str(&text).ok()?;
        let sum = hex::encode(Sha256::digest(env.payload.as_bytes()));
        (env.version == VERSION && env.key == key.canonical && env.sha256 == sum)
            .then_some(env.payload)
    }

    pub fn store_bytes(&self, key: &CacheKey, payload: String) -> Result<()> {
        let env = Envelope {
            version: VERSION.to_string(),
            key: key.canonical.clone(),
            sha256: hex::encode(Sha256::digest(payload.as_bytes())),
            payload,
        };
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&env)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        serde_json::from_str(&self.load_bytes(key)?).ok()
    }

    pub fn store<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<()> {
        self.store_bytes(key, serde_json::to_string(value)?)
    }

    /// Loads `key` or computes and stores it.
    pub fn get_or_compute<T: Serialize + DeserializeOwned>(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<(T, bool)> {
        if let Some(v) = self.load(key) {
            return Ok((v, true));
        }
        let v = compute()?;
        self.store(key, &v)?;
        Ok((v, false))
    }
}

/// Runs `compute` through the cache when there is one.
pub fn cached<T: Serialize + DeserializeOwned>(
    cache: Option<&Cache>,
    key: impl FnOnce() -> CacheKey,
    compute: impl FnOnce() -> Result<T>,
) -> Result<T> {
    match cache {
        Some(c) => Ok(c.get_or_compute(&key(), compute)?.0),
        None => compute(),
    }
}
