mod common;

use common::run_cli;

#[test]
fn thm2_passes() {
    let (code, out, _) = run_cli(&["thm2"]);
    assert_eq!(code, 0);
    assert!(out.contains("conclusion"));
    let (code, out, _) = run_cli(&["thm2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["conclusion"], true);
}

#[test]
fn theta_is_two_pi() {
    let (code, out, _) = run_cli(&["--format", "json", "theta"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::TAU).abs() < 0.01 * std::f64::consts::TAU);
}

#[test]
fn unknown_verb_prints_usage() {
    let (code, out, err) = run_cli(&["frobnicate"]);
    assert_ne!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("Usage"));
    let (code, _, err) = run_cli(&[]);
    assert_ne!(code, 0);
    assert!(err.contains("Usage"));
}

#[test]
fn scan_rejects_inverted_bounds() {
    let (code, _, err) = run_cli(&["scan", "--re", "-1,-2.6", "--size", "4x4"]);
    assert_ne!(code, 0);
    assert!(err.contains("out of order"), "{err}");
    let (code, _, _) = run_cli(&["scan", "--size", "0x4"]);
    assert_ne!(code, 0);
}

#[test]
fn scan_writes_image_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("w.ppm");
    let rec = dir.path().join("w.json");
    let (code, out, err) = run_cli(&[
        "scan",
        "--b",
        "0.2",
        "--re",
        "20,30",
        "--im",
        "-5,5",
        "--size",
        "5x4",
        "-o",
        img.to_str().unwrap(),
        "--records",
        rec.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("horseshoe_hov"));
    assert!(std::fs::read(&img).unwrap().starts_with(b"P6"));
    let records: serde_json::Value = serde_json::from_slice(&std::fs::read(&rec).unwrap()).unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 20);
    assert!(records.iter().all(|r| r["verdict"] == "horseshoe_hov" && r["witness_kind"] == "none"));
}

#[test]
fn scan_cache_via_flag() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--format", "json", "scan", "--re", "20,30", "--im", "-5,5", "--size", "3x3", "--cache-dir", d];
    let (_, first, _) = run_cli(&args);
    let (_, second, _) = run_cli(&args);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&first).unwrap(), serde_json::from_str(&second).unwrap());
    assert_eq!(a["cached"], false);
    assert_eq!(b["cached"], true);
    assert_eq!(a["payload_sha256"], b["payload_sha256"]);
}

#[test]
fn figures_render() {
    let dir = tempfile::tempdir().unwrap();
    let f6 = dir.path().join("f6.png");
    let (code, _, err) = run_cli(&["fig6", "--size", "70x60", "-o", f6.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(std::fs::read(&f6).unwrap().starts_with(b"\x89PNG"));

    let overlay = dir.path().join("o.txt");
    std::fs::write(&overlay, "# a b\n-2.5 -0.1\n-2.4 0.1\n\n-1.5 0\n-1.4 0.2\n").unwrap();
    let f9 = dir.path().join("f9.ppm");
    let (code, _, err) = run_cli(&[
        "fig9",
        "--size",
        "30x20",
        "--density",
        "32",
        "--overlay",
        overlay.to_str().unwrap(),
        "-o",
        f9.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(std::fs::read(&f9).unwrap().starts_with(b"P6"));

    let (code, _, _) = run_cli(&["fig6", "--size", "70x60", "-o", dir.path().join("f.gif").to_str().unwrap()]);
    assert_ne!(code, 0);
}

#[test]
fn codes_and_classify_text() {
    let (code, out, _) = run_cli(&["codes", "-2.3", "0.05", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("{12,21}"));
    let (code, out, _) = run_cli(&["codes", "6", "0.2", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("outside W2"));
    let (code, out, _) = run_cli(&["classify", "-6", "0.2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("horseshoe_hov"));
}

#[test]
fn loop_text_and_period_override() {
    let path = common::data("hov_circle.json");
    let (code, out, err) = run_cli(&["loop", &path, "--N", "3"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("match: C"));
    assert!(out.contains("\"n\":3"));
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("h.toml");
    std::fs::write(&cfg, "loop_n = 2\n").unwrap();
    let req = dir.path().join("l.json");
    let text = std::fs::read_to_string(common::data("hov_circle.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("N");
    std::fs::write(&req, v.to_string()).unwrap();
    let c = cfg.to_str().unwrap();
    let r = req.to_str().unwrap();
    let (code, out, _) = run_cli(&["--config", c, "--format", "json", "loop", r]);
    assert_eq!(code, 0);
    assert!(out.contains("\"n\":2"));
    let (_, out, _) = run_cli(&["--config", c, "--format", "json", "loop", r, "--N", "3"]);
    assert!(out.contains("\"n\":3"));
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    let (code, _, err) = run_cli(&["--config", c, "thm2"]);
    assert_ne!(code, 0);
    assert!(err.contains("config"));
}
