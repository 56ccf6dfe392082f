//! The on-disk catalog: `<root>/<v>-<k>-<t>-<m>-<lambda>/best.cov`, superseded designs in
//! `history/` beside it, and a flat `index.tsv` regenerated from the directories.

use std::fs::{self, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use super::format::{parse_design_file, write_design_file, DesignFile};
use crate::bounds::CoverNumbers;
use crate::constructions::DesignSource;
use crate::error::{invalid, Error, Result};
use crate::model::{CoverSpec, Design};

/// Environment variable naming the catalog root.
pub const CATALOG_ENV: &str = "GENCOVER_CATALOG";

const INDEX: &str = "index.tsv";
const LOCK: &str = "catalog.lock";
const BEST: &str = "best.cov";
const LOCK_WAIT: Duration = Duration::from_secs(30);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexEntry {
    pub spec: CoverSpec,
    pub nblocks: u64,
    /// Relative to the catalog root.
    pub file: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted,
    /// Replaced an entry of this many blocks.
    Replaced(u64),
    /// An entry of this many blocks was at least as small.
    Kept(u64),
}

#[derive(Clone, Debug)]
pub struct Catalog {
    root: PathBuf,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Catalog {
    /// Opens (creating if needed) a catalog at `root`.
    pub fn open(root: impl Into<PathBuf>) -> Result<Catalog> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Catalog { root })
    }

    /// The catalog at `flag`, else at `$GENCOVER_CATALOG`, else none.
    pub fn locate(flag: Option<&Path>) -> Result<Option<Catalog>> {
        match flag {
            Some(p) => Catalog::open(p).map(Some),
            None => match std::env::var_os(CATALOG_ENV) {
                Some(p) if !p.is_empty() => Catalog::open(PathBuf::from(p)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, s: &CoverSpec) -> PathBuf {
        self.root.join(format!("{}-{}-{}-{}-{}", s.v, s.k, s.t, s.m, s.lambda))
    }

    fn lock(&self) -> Result<LockGuard> {
        let path = self.root.join(LOCK);
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(LockGuard(path)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                    if start.elapsed() > LOCK_WAIT {
                        return Err(Error::Io(format!("catalog lock {} held too long", path.display())));
                    }
                    thread::sleep(Duration::from_millis(50));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    /// Stores `file` as the best design for its spec unless an entry at least as small
    /// exists. Only verified files are accepted.
    pub fn insert(&self, file: &DesignFile) -> Result<InsertOutcome> {
        if !file.verified {
            return Err(invalid("the catalog only stores verified designs"));
        }
        let _guard = self.lock()?;
        let dir = self.dir(&file.spec);
        let best = dir.join(BEST);
        let outcome = match self.read(&best)? {
            Some(old) if old.len() <= file.len() => return Ok(InsertOutcome::Kept(old.len())),
            Some(old) => {
                let history = dir.join("history");
                fs::create_dir_all(&history)?;
                let n = fs::read_dir(&history)?.count();
                fs::rename(&best, history.join(format!("{:04}-{}.cov", n + 1, old.len())))?;
                InsertOutcome::Replaced(old.len())
            }
            None => InsertOutcome::Inserted,
        };
        fs::create_dir_all(&dir)?;
        write_design_file(file, &best)?;
        self.write_index()?;
        Ok(outcome)
    }

    fn read(&self, path: &Path) -> Result<Option<DesignFile>> {
        match fs::read_to_string(path) {
            Ok(text) => parse_design_file(&text)
                .map(Some)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// The stored best file for `spec`.
    pub fn get(&self, spec: &CoverSpec) -> Result<Option<DesignFile>> {
        self.read(&self.dir(spec).join(BEST))
    }

    /// Entries found by scanning the entry directories, sorted by spec.
    pub fn entries(&self) -> Result<Vec<IndexEntry>> {
        let mut out = Vec::new();
        for ent in fs::read_dir(&self.root)? {
            let ent = ent?;
            if !ent.file_type()?.is_dir() {
                continue;
            }
            let rel = PathBuf::from(ent.file_name()).join(BEST);
            if let Some(f) = self.read(&self.root.join(&rel))? {
                out.push(IndexEntry {
                    spec: f.spec,
                    nblocks: f.len(),
                    file: rel,
                });
            }
        }
        out.sort_by_key(|a| a.spec);
        Ok(out)
    }

    /// Rewrites `index.tsv` from the entry directories.
    pub fn regenerate_index(&self) -> Result<Vec<IndexEntry>> {
        let _guard = self.lock()?;
        self.write_index()
    }

    fn write_index(&self) -> Result<Vec<IndexEntry>> {
        let entries = self.entries()?;
        let mut text = String::from("v\tk\tt\tm\tlambda\tnblocks\tfile\n");
        for e in &entries {
            let s = e.spec;
            text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                s.v,
                s.k,
                s.t,
                s.m,
                s.lambda,
                e.nblocks,
                e.file.display()
            ));
        }
        fs::write(self.root.join(INDEX), text)?;
        Ok(entries)
    }
}

impl CoverNumbers for Catalog {
    fn cover_number(&self, spec: &CoverSpec) -> Option<u64> {
        self.get(spec).ok().flatten().map(|f| f.len())
    }
}

impl DesignSource for Catalog {
    fn best_design(&self, spec: &CoverSpec) -> Option<Design> {
        self.get(spec).ok().flatten().map(|f| f.design)
    }
}
