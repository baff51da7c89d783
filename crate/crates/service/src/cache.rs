use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime};

use horseshoe::scanner::{ScanWindow, TileGrid};
use horseshoe::CODE_VERSION;
use log::{debug, warn};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Negative zero prints differently from zero; fold it away.
fn canonical(window: &ScanWindow) -> ScanWindow {
    let mut w = window.clone();
    for v in [&mut w.re_min, &mut w.re_max, &mut w.im_min, &mut w.im_max] {
        *v += 0.0;
    }
    w.b.re += 0.0;
    w.b.im += 0.0;
    w
}

/// Hash of the window, its classifier options and the code version.
pub fn cache_key(window: &ScanWindow) -> String {
    let body = serde_json::to_vec(&(CODE_VERSION, canonical(window)))
        .expect("scan windows serialize");
    sha256_hex(&body)
}

/// The bytes stored for a finished scan.
pub fn tile_payload(grid: &TileGrid) -> Vec<u8> {
    serde_json::to_vec(grid).expect("tile grids serialize")
}

/// Finished scans on disk, one JSON file per key.
#[derive(Clone, Debug)]
pub struct ScanCache {
    dir: PathBuf,
    max_entries: usize,
    max_age: Duration,
}

impl ScanCache {
    pub fn open(dir: impl Into<PathBuf>, max_entries: usize, max_age: Duration) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            max_entries,
            max_age,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored payload for `window`. Unreadable or corrupt entries are
    /// removed and reported as a miss.
    pub fn lookup(&self, window: &ScanWindow) -> Option<(TileGrid, Vec<u8>)> {
        let path = self.entry(&cache_key(window));
        let bytes = fs::read(&path).ok()?;
        if self.expired(&path) {
            debug!("cache entry {} expired", path.display());
            let _ = fs::remove_file(&path);
            return None;
        }
        match serde_json::from_slice::<TileGrid>(&bytes) {
            Ok(grid) if grid.window == *window && grid.pixels.len() == window.width * window.height => {
                Some((grid, bytes))
            }
            Ok(_) => {
                warn!("cache entry {} does not match its key; ignoring", path.display());
                let _ = fs::remove_file(&path);
                None
            }
            Err(e) => {
                warn!("corrupt cache entry {}: {e}; ignoring", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    /// Write through a temporary file and rename, then evict.
    pub fn store(&self, grid: &TileGrid) -> io::Result<Vec<u8>> {
        let key = cache_key(&grid.window);
        let bytes = tile_payload(grid);
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, self.entry(&key))?;
        self.evict()?;
        Ok(bytes)
    }

    fn expired(&self, path: &Path) -> bool {
        fs::metadata(path)
            .and_then(|m| m.modified())
            .ok()
            .and_then(|t| SystemTime::now().duration_since(t).ok())
            .is_some_and(|age| age > self.max_age)
    }

    /// Drop expired entries, then the oldest beyond `max_entries`.
    pub fn evict(&self) -> io::Result<usize> {
        let mut entries = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let path = e?.path();
            if path.extension().is_some_and(|x| x == "json") {
                let modified = fs::metadata(&path)?.modified()?;
                entries.push((modified, path));
            }
        }
        let mut removed = 0;
        entries.sort();
        let mut keep = Vec::new();
        for (t, path) in entries {
            if self.expired(&path) {
                fs::remove_file(&path)?;
                removed += 1;
            } else {
                keep.push((t, path));
            }
        }
        let excess = keep.len().saturating_sub(self.max_entries);
        for (_, path) in keep.into_iter().take(excess) {
            fs::remove_file(&path)?;
            removed += 1;
        }
        Ok(removed)
    }

    pub fn len(&self) -> usize {
        fs::read_dir(&self.dir)
            .map(|rd| {
                rd.filter_map(Result::ok)
                    .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                    .count()
            })
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use horseshoe::cx::real;
    use horseshoe::scanner::scan_window;

    fn window() -> ScanWindow {
        ScanWindow::new(real(0.2), (20.0, 30.0), (-5.0, 5.0), (3, 2)).unwrap()
    }

    #[test]
    fn key_tracks_options_and_ignores_zero_sign() {
        let w = window();
        let mut m = w.clone();
        m.options.n_max = 4;
        assert_ne!(cache_key(&w), cache_key(&m));
        let mut z = ScanWindow::new(real(0.0), (20.0, 30.0), (-5.0, 5.0), (3, 2)).unwrap();
        let k = cache_key(&z);
        z.b.re = -0.0;
        assert_eq!(cache_key(&z), k);
    }

    #[test]
    fn store_lookup_evict() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ScanCache::open(dir.path(), 1, Duration::from_secs(3600)).unwrap();
        let w = window();
        assert!(cache.lookup(&w).is_none());
        let grid = scan_window(&w).unwrap();
        let bytes = cache.store(&grid).unwrap();
        let (hit, again) = cache.lookup(&w).unwrap();
        assert_eq!(hit, grid);
        assert_eq!(again, bytes);

        let mut other = w.clone();
        other.width = 2;
        cache.store(&scan_window(&other).unwrap()).unwrap();
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ScanCache::open(dir.path(), 8, Duration::from_secs(3600)).unwrap();
        let w = window();
        fs::write(dir.path().join(format!("{}.json", cache_key(&w))), b"{not json").unwrap();
        assert!(cache.lookup(&w).is_none());
        assert!(cache.is_empty());
    }
}
