//! Persistent store of per-block ranks for graded homology runs.
//!
//! Entries are keyed by the content hash of the algebra and the block's
//! bidegree; a file is only ever replaced whole, via rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::presentation::Mode;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockKey {
    pub algebra: String,
    pub n: Option<usize>,
    pub hdeg: u32,
    pub weight: u32,
    pub mode: Mode,
}

/// Rank of the differential leaving bidegree `(hdeg, weight)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

pub trait BlockStore: Send + Sync {
    fn load(&self, key: &BlockKey) -> Option<BlockRecord>;
    fn store(&self, key: &BlockKey, record: &BlockRecord) -> Result<()>;
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    key: BlockKey,
    record: BlockRecord,
}

/// One JSON file per block under a directory.
#[derive(Debug)]
pub struct BlockCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl BlockCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Self {
            dir: dir.as_ref().to_path_buf(),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &BlockKey) -> PathBuf {
        let n = key.n.map_or_else(|| "x".to_string(), |n| n.to_string());
        self.dir.join(format!(
            "{}-n{}-p{}-w{}-{}.json",
            key.algebra, n, key.hdeg, key.weight, key.mode
        ))
    }
}

impl BlockStore for BlockCache {
    fn load(&self, key: &BlockKey) -> Option<BlockRecord> {
        // unreadable or foreign files count as misses
        let found = fs::read(self.path(key))
            .ok()
            .and_then(|b| serde_json::from_slice::<CacheFile>(&b).ok())
            .filter(|f| &f.key == key)
            .map(|f| f.record);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    fn store(&self, key: &BlockKey, record: &BlockRecord) -> Result<()> {
        let body = serde_json::to_vec(&CacheFile {
            key: key.clone(),
            record: *record,
        })?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&body)?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
