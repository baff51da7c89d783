use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use horseshoe::scanner::{scan_rows, PixelClass, ScanWindow, TileGrid, TileRecord};
use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::cache::{cache_key, sha256_hex, tile_payload, ScanCache};
use crate::ops::ServiceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JobState {
    Queued,
    Running,
    Done,
    Failed,
}

#[derive(Debug)]
struct Job {
    window: ScanWindow,
    key: String,
    state: JobState,
    /// Completed rows, top first.
    pixels: Vec<PixelClass>,
    finished: Arc<AtomicUsize>,
    cached: bool,
    payload: Option<Arc<Vec<u8>>>,
    error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobStatus {
    pub id: u64,
    pub state: JobState,
    pub progress: f64,
    pub rows_done: usize,
    pub width: usize,
    pub height: usize,
    pub key: String,
    pub cached: bool,
    pub payload_sha256: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilesResponse {
    pub job: u64,
    pub state: JobState,
    /// Rows `rows[0]..rows[1]` and columns `cols[0]..cols[1]` were requested.
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    /// Requested rows not yet finished are left out.
    pub complete: bool,
    pub records: Vec<TileRecord>,
}

/// A requested part of the grid: a band of rows, or a pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub cols: (usize, usize),
    pub rows: (usize, usize),
}

impl Rect {
    /// `r0,r1` for rows, or `i0,j0,i1,j1` for columns `i0..i1` of rows
    /// `j0..j1`; ends are exclusive.
    pub fn parse(s: &str, width: usize, height: usize) -> Result<Self, ServiceError> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| ServiceError::BadRequest(format!("bad rect {s:?}")))?;
        let rect = match parts[..] {
            [r0, r1] => Self {
                cols: (0, width),
                rows: (r0, r1),
            },
            [i0, j0, i1, j1] => Self {
                cols: (i0, i1),
                rows: (j0, j1),
            },
            _ => return Err(ServiceError::BadRequest(format!("bad rect {s:?}"))),
        };
        if rect.cols.0 > rect.cols.1 || rect.rows.0 > rect.rows.1 || rect.cols.1 > width || rect.rows.1 > height {
            return Err(ServiceError::Invalid(format!(
                "rect {s:?} outside the {width}x{height} grid"
            )));
        }
        Ok(rect)
    }
}

/// The job table. Jobs only move forward through their states.
#[derive(Debug, Default)]
pub struct JobTable {
    jobs: Mutex<HashMap<u64, Job>>,
    next: Mutex<u64>,
}

impl JobTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<u64, Job>> {
        self.jobs.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn create(&self, window: ScanWindow) -> u64 {
        let id = {
            let mut next = self.next.lock().unwrap_or_else(|e| e.into_inner());
            *next += 1;
            *next
        };
        let key = cache_key(&window);
        self.lock().insert(
            id,
            Job {
                window,
                key,
                state: JobState::Queued,
                pixels: Vec::new(),
                finished: Arc::new(AtomicUsize::new(0)),
                cached: false,
                payload: None,
                error: None,
            },
        );
        id
    }

    pub fn window(&self, id: u64) -> Option<ScanWindow> {
        self.lock().get(&id).map(|j| j.window.clone())
    }

    pub fn status(&self, id: u64) -> Option<JobStatus> {
        let jobs = self.lock();
        let j = jobs.get(&id)?;
        let total = (j.window.width * j.window.height).max(1);
        let progress = if j.state == JobState::Done {
            1.0
        } else {
            j.finished.load(Ordering::Relaxed).min(total) as f64 / total as f64
        };
        Some(JobStatus {
            id,
            state: j.state,
            progress,
            rows_done: j.pixels.len() / j.window.width,
            width: j.window.width,
            height: j.window.height,
            key: j.key.clone(),
            cached: j.cached,
            payload_sha256: j.payload.as_deref().map(|p| sha256_hex(p)),
            error: j.error.clone(),
        })
    }

    fn update(&self, id: u64, f: impl FnOnce(&mut Job)) {
        if let Some(j) = self.lock().get_mut(&id) {
            if !matches!(j.state, JobState::Done | JobState::Failed) {
                f(j);
            }
        }
    }

    /// Finish a job from a cached grid.
    pub fn complete_from_cache(&self, id: u64, grid: TileGrid, payload: &[u8]) {
        self.update(id, |j| {
            j.finished.store(grid.pixels.len(), Ordering::Relaxed);
            j.pixels = grid.pixels;
            j.cached = true;
            j.payload = Some(Arc::new(payload.to_vec()));
            j.state = JobState::Done;
        });
    }

    /// Scan a queued job band by band on the calling thread.
    pub fn run(&self, id: u64, band_rows: usize, cache: Option<&ScanCache>) {
        let Some(window) = self.window(id) else {
            return;
        };
        let finished = {
            let mut jobs = self.lock();
            let Some(j) = jobs.get_mut(&id) else { return };
            if j.state != JobState::Queued {
                return;
            }
            j.state = JobState::Running;
            j.finished.clone()
        };
        let band = band_rows.max(1);
        let mut r0 = 0;
        while r0 < window.height {
            let r1 = (r0 + band).min(window.height);
            match scan_rows(&window, r0..r1, &finished) {
                Ok(rows) => self.update(id, |j| j.pixels.extend(rows)),
                Err(e) => {
                    self.update(id, |j| {
                        j.error = Some(e.to_string());
                        j.state = JobState::Failed;
                    });
                    return;
                }
            }
            r0 = r1;
        }
        let grid = TileGrid {
            window,
            pixels: self
                .lock()
                .get(&id)
                .map(|j| j.pixels.clone())
                .unwrap_or_default(),
        };
        let payload = match cache.map(|c| c.store(&grid)) {
            Some(Ok(bytes)) => bytes,
            Some(Err(e)) => {
                warn!("cannot cache job {id}: {e}");
                tile_payload(&grid)
            }
            None => tile_payload(&grid),
        };
        info!("job {id} done");
        self.update(id, |j| {
            j.payload = Some(Arc::new(payload));
            j.state = JobState::Done;
        });
    }

    pub fn tiles(&self, id: u64, rect: Option<&str>) -> Result<TilesResponse, ServiceError> {
        let jobs = self.lock();
        let j = jobs
            .get(&id)
            .ok_or_else(|| ServiceError::NotFound(format!("no job {id}")))?;
        let (w, h) = (j.window.width, j.window.height);
        let rect = match rect {
            Some(s) => Rect::parse(s, w, h)?,
            None => Rect {
                cols: (0, w),
                rows: (0, h),
            },
        };
        let done = j.pixels.len() / w;
        let last = rect.rows.1.min(done);
        let grid = TileGrid {
            window: j.window.clone(),
            pixels: j.pixels.clone(),
        };
        let records = if rect.rows.0 < last {
            grid.records(rect.rows.0..last)
                .into_iter()
                .enumerate()
                .filter(|(k, _)| (rect.cols.0..rect.cols.1).contains(&(k % w)))
                .map(|(_, r)| r)
                .collect()
        } else {
            Vec::new()
        };
        Ok(TilesResponse {
            job: id,
            state: j.state,
            rows: [rect.rows.0, rect.rows.1],
            cols: [rect.cols.0, rect.cols.1],
            complete: last >= rect.rows.1,
            records,
        })
    }

    /// The stored tile payload of a finished job.
    pub fn payload(&self, id: u64) -> Result<Arc<Vec<u8>>, ServiceError> {
        let jobs = self.lock();
        let j = jobs
            .get(&id)
            .ok_or_else(|| ServiceError::NotFound(format!("no job {id}")))?;
        j.payload
            .clone()
            .ok_or_else(|| ServiceError::NotReady(format!("job {id} is {:?}", j.state)))
    }
}
