//! Scan a window of the `a`-plane and write the verdict raster.
//!
//! `cargo run --release --example scan -- 200 175 fig1.ppm` reproduces the
//! full window; the defaults are small.

use horseshoe::cx::real;
use horseshoe::scanner::{render_tiles, save_image, scan_window, ScanWindow, Verdict};

pub fn main() {
    let args: Vec<String> = std::env::args().collect();
    let size = args.get(1).zip(args.get(2)).and_then(|(w, h)| Some((w.parse().ok()?, h.parse().ok()?)));
    let (w, h) = size.unwrap_or((20, 17));
    let out = match (size, args.get(3)) {
        (Some(_), Some(p)) => p.into(),
        _ => std::env::temp_dir().join("horseshoe_scan.ppm"),
    };
    let window = ScanWindow::new(real(0.2), (-2.6, -1.0), (-0.7, 0.7), (w, h)).unwrap();
    let grid = scan_window(&window).unwrap();
    for v in [Verdict::HorseshoeHov, Verdict::HorseshoeEvidence, Verdict::NotHorseshoe, Verdict::Unknown] {
        println!("{v:>20}: {}", grid.count(v));
    }
    save_image(&render_tiles(&grid).unwrap(), &out).unwrap();
    println!("wrote {}", out.display());
}
