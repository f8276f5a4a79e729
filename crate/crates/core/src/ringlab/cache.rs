//! On-disk cache of named expansions.
//!
//! One JSON file per `(name, N, normalization version)`; each file records
//! the hash of the recipe that produced it and is ignored when that hash no
//! longer matches. Files are written to a temporary path and renamed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::Rational;
use crate::qexp::FourierExpansion;

use super::{Recipe, RingError, NORMALIZATION_VERSION};

#[derive(Serialize, Deserialize)]
struct Entry {
    name: String,
    truncation: u32,
    recipe_hash: String,
    expansion: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct FormCache {
    dir: PathBuf,
}

/// Hash of everything that determines a stored expansion.
pub fn recipe_hash(name: &str, recipe: &Recipe) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(NORMALIZATION_VERSION.to_le_bytes());
    h.update(name.as_bytes());
    h.update(format!("{recipe:?}").as_bytes());
    hex::encode(h.finalize())
}

impl FormCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FormCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, name: &str, n: u32) -> PathBuf {
        self.dir.join(format!("{name}-N{n}-v{NORMALIZATION_VERSION}.json"))
    }

    /// The stored expansion, if present and produced by the same recipe.
    pub fn load(&self, name: &str, n: u32, recipe: &Recipe) -> Option<FourierExpansion<Rational>> {
        let text = fs::read_to_string(self.path(name, n)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.recipe_hash != recipe_hash(name, recipe) || entry.name != name || entry.truncation != n {
            return None;
        }
        FourierExpansion::from_json(&entry.expansion).ok()
    }

    pub fn store(&self, name: &str, n: u32, recipe: &Recipe, f: &FourierExpansion<Rational>) -> Result<(), RingError> {
        let io = |e: std::io::Error| RingError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let entry = Entry {
            name: name.to_string(),
            truncation: n,
            recipe_hash: recipe_hash(name, recipe),
            expansion: f.to_json(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        serde_json::to_writer(&mut tmp, &entry).map_err(|e| RingError::Cache(e.to_string()))?;
        tmp.flush().map_err(io)?;
        tmp.persist(self.path(name, n)).map_err(|e| RingError::Cache(e.to_string()))?;
        Ok(())
    }
}
