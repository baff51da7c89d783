use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder, Rgb, RgbImage};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ScanError, TileGrid, Verdict};
use crate::cx::{c, C64};
use crate::henon::{filtration_radius, hov_threshold, HenonParams, EPSILON_SAFETY};
use crate::one_dim::{
    estimate_epsilon_with, mandelbrot_member, region_member_1d, w1_boundary_radius,
    EpsilonOptions, Region1D, MANDELBROT_ITERATIONS,
};

const CURVE_HOV: Rgb<u8> = Rgb([200, 30, 30]);
const CURVE_W: Rgb<u8> = Rgb([30, 60, 200]);
const CURVE_USER: Rgb<u8> = Rgb([20, 140, 40]);

/// Fill color of each verdict.
pub fn palette(v: Verdict) -> Rgb<u8> {
    match v {
        Verdict::NotHorseshoe => Rgb([40, 40, 40]),
        Verdict::HorseshoeEvidence => Rgb([205, 205, 205]),
        Verdict::HorseshoeHov => Rgb([255, 255, 255]),
        Verdict::Unknown => Rgb([128, 128, 128]),
    }
}

pub fn render_tiles(grid: &TileGrid) -> Result<RgbImage, ScanError> {
    let (w, h) = (grid.window.width, grid.window.height);
    if w == 0 || h == 0 || grid.pixels.len() != w * h {
        return Err(ScanError::EmptyGrid);
    }
    Ok(RgbImage::from_fn(w as u32, h as u32, |i, j| {
        palette(grid.get(i as usize, j as usize).verdict)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageFormat {
    Ppm,
    Png,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Result<Self, ScanError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or_default();
        ext.parse()
    }
}

impl FromStr for ImageFormat {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ppm" | "pnm" => Ok(Self::Ppm),
            "png" => Ok(Self::Png),
            other => Err(ScanError::UnknownFormat(other.to_string())),
        }
    }
}

/// Write an image; the format follows the file extension.
pub fn save_image(img: &RgbImage, path: &Path) -> Result<(), ScanError> {
    let err = |e: &dyn std::fmt::Display| ScanError::Io(format!("{}: {e}", path.display()));
    match ImageFormat::from_path(path)? {
        ImageFormat::Ppm => {
            let file = std::fs::File::create(path).map_err(|e| err(&e))?;
            let mut w = std::io::BufWriter::new(file);
            PnmEncoder::new(&mut w)
                .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
                .write_image(img.as_raw(), img.width(), img.height(), ExtendedColorType::Rgb8)
                .map_err(|e| err(&e))?;
            w.flush().map_err(|e| err(&e))
        }
        ImageFormat::Png => img
            .save_with_format(path, image::ImageFormat::Png)
            .map_err(|e| err(&e)),
    }
}

/// Maps a rectangle of the plane onto pixel coordinates, row 0 at the top.
struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    width: usize,
    height: usize,
}

impl Frame {
    fn validate(&self) -> Result<(), ScanError> {
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(ScanError::BadWindow("bounds out of order".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(ScanError::BadWindow("resolution must be positive".into()));
        }
        Ok(())
    }

    fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let dx = (self.x_max - self.x_min) / self.width as f64;
        let dy = (self.y_max - self.y_min) / self.height as f64;
        (self.x_min + (i as f64 + 0.5) * dx, self.y_max - (j as f64 + 0.5) * dy)
    }

    fn pixel(&self, x: f64, y: f64) -> Option<(u32, u32)> {
        let fx = (x - self.x_min) / (self.x_max - self.x_min) * self.width as f64;
        let fy = (self.y_max - y) / (self.y_max - self.y_min) * self.height as f64;
        let inside = (0.0..self.width as f64).contains(&fx) && (0.0..self.height as f64).contains(&fy);
        inside.then_some((fx as u32, fy as u32))
    }

    fn plot(&self, img: &mut RgbImage, pts: impl IntoIterator<Item = (f64, f64)>, color: Rgb<u8>) {
        let pts: Vec<(f64, f64)> = pts.into_iter().collect();
        let step = ((self.x_max - self.x_min) / self.width as f64)
            .min((self.y_max - self.y_min) / self.height as f64)
            / 3.0;
        for w in pts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let len = ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt();
            let k = (len / step).ceil().max(1.0) as usize;
            for s in 0..=k {
                let t = s as f64 / k as f64;
                if let Some((i, j)) = self.pixel(p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)) {
                    img.put_pixel(i, j, color);
                }
            }
        }
    }
}

/// The boundary arch of `W1`, `r = −sin(φ/2)/sin(3φ/2)` for
/// `2π/3 < φ < 4π/3`, from the upper branch to the lower.
pub fn w1_arch(samples: usize) -> Vec<C64> {
    let samples = samples.max(2);
    let (lo, hi) = (2.0 * std::f64::consts::PI / 3.0, 4.0 * std::f64::consts::PI / 3.0);
    (1..samples)
        .filter_map(|k| {
            let phi = lo + (hi - lo) * k as f64 / samples as f64;
            w1_boundary_radius(phi).map(|r| C64::from_polar(r, phi))
        })
        .collect()
}

/// Window of the `a`-plane for the region overlay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig6Spec {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub width: usize,
    pub height: usize,
}

impl Default for Fig6Spec {
    fn default() -> Self {
        Self {
            re: (-4.0, 3.0),
            im: (-3.0, 3.0),
            width: 700,
            height: 600,
        }
    }
}

/// The Mandelbrot set (dark), `W1` (light gray) and the complement, with
/// the circle `|a| = 2` and the `W1` arch drawn on top.
pub fn fig6_image(spec: &Fig6Spec) -> Result<RgbImage, ScanError> {
    let frame = Frame {
        x_min: spec.re.0,
        x_max: spec.re.1,
        y_min: spec.im.0,
        y_max: spec.im.1,
        width: spec.width,
        height: spec.height,
    };
    frame.validate()?;
    let fill: Vec<Rgb<u8>> = (0..spec.width * spec.height)
        .into_par_iter()
        .map(|k| {
            let (x, y) = frame.center(k % spec.width, k / spec.width);
            let a = c(x, y);
            if mandelbrot_member(a, MANDELBROT_ITERATIONS) {
                Rgb([30, 30, 30])
            } else if region_member_1d(Region1D::W1, a) {
                Rgb([190, 190, 190])
            } else {
                Rgb([255, 255, 255])
            }
        })
        .collect();
    let mut img = RgbImage::from_fn(spec.width as u32, spec.height as u32, |i, j| {
        fill[j as usize * spec.width + i as usize]
    });
    let circle = (0..=720).map(|k| {
        let z = C64::from_polar(2.0, std::f64::consts::TAU * k as f64 / 720.0);
        (z.re, z.im)
    });
    frame.plot(&mut img, circle, CURVE_HOV);
    frame.plot(&mut img, w1_arch(2000).iter().map(|z| (z.re, z.im)), CURVE_W);
    Ok(img)
}

/// Window of the real `(a, b)` plane, with optional extra polylines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig9Spec {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub width: usize,
    pub height: usize,
    pub overlays: Vec<Vec<(f64, f64)>>,
    /// Boundary samples per box piece when estimating the slack.
    pub density: usize,
}

impl Default for Fig9Spec {
    fn default() -> Self {
        Self {
            a: (-3.0, 0.0),
            b: (-0.4, 0.4),
            width: 300,
            height: 200,
            overlays: Vec::new(),
            density: 256,
        }
    }
}

/// The real slice of the two-dimensional three-box region (light gray),
/// its boundary, and the HOV curves `|a| = 2(|b| + 1)²`.
pub fn fig9_image(spec: &Fig9Spec) -> Result<RgbImage, ScanError> {
    let frame = Frame {
        x_min: spec.a.0,
        x_max: spec.a.1,
        y_min: spec.b.0,
        y_max: spec.b.1,
        width: spec.width,
        height: spec.height,
    };
    frame.validate()?;
    let opts = EpsilonOptions {
        density: spec.density.max(16),
        ..EpsilonOptions::default()
    };
    let eps: Vec<Option<f64>> = (0..spec.width)
        .into_par_iter()
        .map(|i| {
            let a = c(frame.center(i, 0).0, 0.0);
            estimate_epsilon_with(a, opts).ok()
        })
        .collect();
    let inside = |i: usize, j: usize| {
        let (a, b) = frame.center(i, j);
        eps[i].is_some_and(|e| {
            EPSILON_SAFETY * e / filtration_radius(HenonParams::new(c(a, 0.0), c(b, 0.0))) > b.abs()
        })
    };
    let mut img = RgbImage::from_fn(spec.width as u32, spec.height as u32, |i, j| {
        let (i, j) = (i as usize, j as usize);
        if !inside(i, j) {
            return Rgb([255, 255, 255]);
        }
        let edge = [(1, 0), (0, 1)].iter().any(|&(di, dj)| {
            let (ni, nj) = (i + di, j + dj);
            ni < spec.width && nj < spec.height && !inside(ni, nj)
        }) || (i > 0 && !inside(i - 1, j))
            || (j > 0 && !inside(i, j - 1));
        if edge {
            Rgb([60, 60, 60])
        } else {
            Rgb([200, 200, 200])
        }
    });
    for sign in [-1.0, 1.0] {
        let curve = (0..=400).map(|k| {
            let b = spec.b.0 + (spec.b.1 - spec.b.0) * k as f64 / 400.0;
            (sign * hov_threshold(c(b, 0.0)), b)
        });
        frame.plot(&mut img, curve, CURVE_HOV);
    }
    for line in &spec.overlays {
        frame.plot(&mut img, line.iter().copied(), CURVE_USER);
    }
    Ok(img)
}

#[cfg(test)]
/// Pixel of `(x, y)` in a rendered figure, if inside.
pub(crate) fn locate(
    (x_min, x_max): (f64, f64),
    (y_min, y_max): (f64, f64),
    (width, height): (usize, usize),
    x: f64,
    y: f64,
) -> Option<(u32, u32)> {
    Frame {
        x_min,
        x_max,
        y_min,
        y_max,
        width,
        height,
    }
    .pixel(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::real;
    use crate::scanner::{PixelClass, ScanWindow};

    #[test]
    fn arch_passes_through_minus_one() {
        let arch = w1_arch(2001);
        let closest = arch.iter().map(|z| (z - real(-1.0)).norm()).fold(f64::INFINITY, f64::min);
        assert!(closest < 1e-3);
        assert!(region_member_1d(Region1D::W1, real(-2.0)));
    }

    #[test]
    fn fig6_marks_both_curves() {
        let spec = Fig6Spec {
            width: 140,
            height: 120,
            ..Default::default()
        };
        let img = fig6_image(&spec).unwrap();
        assert_eq!(img.dimensions(), (140, 120));
        let at = |x, y| {
            let (i, j) = locate(spec.re, spec.im, (spec.width, spec.height), x, y).unwrap();
            *img.get_pixel(i, j)
        };
        assert_eq!(at(-1.0, 0.0), CURVE_W);
        assert_eq!(at(2.0, 0.0), CURVE_HOV);
        assert_eq!(at(-2.5, 0.0), Rgb([190, 190, 190]));
    }

    #[test]
    fn fig9_hov_curve_crosses_minus_two() {
        let spec = Fig9Spec {
            width: 60,
            height: 40,
            density: 64,
            ..Default::default()
        };
        let img = fig9_image(&spec).unwrap();
        let (i, j) = locate(spec.a, spec.b, (spec.width, spec.height), -2.0, 0.0).unwrap();
        let near = (i.saturating_sub(1)..=i + 1).any(|ii| *img.get_pixel(ii.min(59), j) == CURVE_HOV);
        assert!(near);
    }

    #[test]
    fn empty_grid_is_an_error() {
        let window = ScanWindow::new(real(0.2), (20.0, 30.0), (-5.0, 5.0), (2, 2)).unwrap();
        let grid = TileGrid {
            window,
            pixels: Vec::<PixelClass>::new(),
        };
        assert_eq!(render_tiles(&grid), Err(ScanError::EmptyGrid));
    }

    #[test]
    fn ppm_is_a_binary_pixmap() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.ppm");
        let img = RgbImage::from_pixel(3, 2, Rgb([1, 2, 3]));
        save_image(&img, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P6"));
        assert_eq!(&bytes[bytes.len() - 3..], &[1, 2, 3]);
        assert!(save_image(&img, &dir.path().join("t.gif")).is_err());
    }
}
