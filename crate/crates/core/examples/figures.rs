//! Render the one-variable regions and the three-box region `W2`.

use horseshoe::scanner::{fig6_image, fig9_image, save_image, w1_arch, Fig6Spec, Fig9Spec};

pub fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .filter(|d| d.is_dir())
        .unwrap_or_else(std::env::temp_dir);
    let f6 = Fig6Spec {
        width: 350,
        height: 300,
        ..Fig6Spec::default()
    };
    let p = dir.join("fig6.png");
    save_image(&fig6_image(&f6).unwrap(), &p).unwrap();
    println!("wrote {}", p.display());

    let f9 = Fig9Spec {
        width: 150,
        height: 100,
        density: 64,
        overlays: vec![vec![(-2.6, -0.2), (-2.0, 0.2)]],
        ..Fig9Spec::default()
    };
    let p = dir.join("fig9.ppm");
    save_image(&fig9_image(&f9).unwrap(), &p).unwrap();
    println!("wrote {}", p.display());

    let arch: Vec<String> = w1_arch(5).iter().map(|z| format!("{z:.3}")).collect();
    println!("W1 arch samples: {}", arch.join(" "));
}
