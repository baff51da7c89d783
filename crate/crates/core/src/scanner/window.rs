use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{classify_parameter, ClassifierOptions, PixelClass, ScanError, Verdict};
use crate::cx::{c, C64};
use crate::henon::HenonParams;

/// A rectangle of the `a`-plane at fixed `b`, sampled at pixel centers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanWindow {
    pub b: C64,
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: usize,
    pub height: usize,
    pub options: ClassifierOptions,
}

impl ScanWindow {
    pub fn new(
        b: C64,
        (re_min, re_max): (f64, f64),
        (im_min, im_max): (f64, f64),
        (width, height): (usize, usize),
    ) -> Result<Self, ScanError> {
        let w = Self {
            b,
            re_min,
            re_max,
            im_min,
            im_max,
            width,
            height,
            options: ClassifierOptions::default(),
        };
        w.validate()?;
        Ok(w)
    }

    pub fn with_options(mut self, options: ClassifierOptions) -> Self {
        self.options = options;
        self
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|v| v.is_finite())
            && self.b.is_finite();
        if !finite {
            return Err(ScanError::BadWindow("bounds must be finite".into()));
        }
        if self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(ScanError::BadWindow(format!(
                "bounds out of order: re [{}, {}], im [{}, {}]",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(ScanError::BadWindow("resolution must be positive".into()));
        }
        if self.options.n_max == 0 {
            return Err(ScanError::BadWindow("n_max must be at least 1".into()));
        }
        Ok(())
    }

    /// Center of pixel `(i, j)`; row 0 is the top edge `im_max`.
    ///
    /// Offsets are taken from the window center so that a window symmetric
    /// about the real axis has exactly mirrored pixel centers.
    pub fn pixel_center(&self, i: usize, j: usize) -> C64 {
        let (cr, ci) = ((self.re_min + self.re_max) / 2.0, (self.im_min + self.im_max) / 2.0);
        let hx = (self.re_max - self.re_min) / self.width as f64 / 2.0;
        let hy = (self.im_max - self.im_min) / self.height as f64 / 2.0;
        let kx = 2.0 * i as f64 + 1.0 - self.width as f64;
        let ky = self.height as f64 - 1.0 - 2.0 * j as f64;
        c(cr + kx * hx, ci + ky * hy)
    }

    pub fn params_at(&self, i: usize, j: usize) -> HenonParams {
        HenonParams::new(self.pixel_center(i, j), self.b)
    }
}

/// One pixel as a flat record for the service.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileRecord {
    pub re: f64,
    pub im: f64,
    pub verdict: Verdict,
    pub witness_kind: String,
}

/// Classified pixels in row-major order, top row first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileGrid {
    pub window: ScanWindow,
    pub pixels: Vec<PixelClass>,
}

impl TileGrid {
    pub fn get(&self, i: usize, j: usize) -> &PixelClass {
        &self.pixels[j * self.window.width + i]
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.pixels.iter().filter(|p| p.verdict == v).count()
    }

    /// Records for rows `rows.start..rows.end`.
    pub fn records(&self, rows: std::ops::Range<usize>) -> Vec<TileRecord> {
        let w = self.window.width;
        let rows = rows.start.min(self.window.height)..rows.end.min(self.window.height);
        rows.flat_map(|j| (0..w).map(move |i| (i, j)))
            .map(|(i, j)| {
                let z = self.window.pixel_center(i, j);
                let p = self.get(i, j);
                TileRecord {
                    re: z.re,
                    im: z.im,
                    verdict: p.verdict,
                    witness_kind: p.witness.kind().to_string(),
                }
            })
            .collect()
    }

    pub fn all_records(&self) -> Vec<TileRecord> {
        self.records(0..self.window.height)
    }
}

pub fn scan_window(window: &ScanWindow) -> Result<TileGrid, ScanError> {
    scan_window_with_progress(window, &AtomicUsize::new(0))
}

/// Classify every pixel in parallel; `progress` counts finished pixels.
pub fn scan_window_with_progress(
    window: &ScanWindow,
    progress: &AtomicUsize,
) -> Result<TileGrid, ScanError> {
    let pixels = scan_rows(window, 0..window.height, progress)?;
    Ok(TileGrid {
        window: window.clone(),
        pixels,
    })
}

/// Classify the pixels of rows `rows`, in row-major order.
pub fn scan_rows(
    window: &ScanWindow,
    rows: std::ops::Range<usize>,
    progress: &AtomicUsize,
) -> Result<Vec<PixelClass>, ScanError> {
    window.validate()?;
    if rows.start > rows.end || rows.end > window.height {
        return Err(ScanError::BadWindow(format!(
            "rows {}..{} outside 0..{}",
            rows.start, rows.end, window.height
        )));
    }
    let w = window.width;
    Ok((rows.start * w..rows.end * w)
        .into_par_iter()
        .map(|k| {
            let class = classify_parameter(window.params_at(k % w, k / w), &window.options);
            progress.fetch_add(1, Ordering::Relaxed);
            class
        })
        .collect())
}
