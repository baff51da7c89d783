//! The `horseshoe` command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horseshoe::henon::HenonParams;
use horseshoe::one_dim::theta_loop_integral;
use horseshoe::scanner::{
    fig6_image, fig9_image, render_tiles, save_image, scan_window, Fig6Spec, Fig9Spec, TileGrid,
    Verdict,
};
use horseshoe::symbolic::theorem2_report;
use serde::{Deserialize, Serialize};

use crate::cache::{sha256_hex, tile_payload, ScanCache};
use crate::config::Config;
use crate::ops::{self, parse_complex, parse_range, parse_size, LoopRequest, ScanRequest, ServiceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "horseshoe", version, about = "Complex Hénon horseshoes: scans, codings, monodromy")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// TOML config file.
    #[arg(long, global = true, env = "HORSESHOE_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Classify a window of the a-plane at fixed b.
    Scan(ScanArgs),
    /// Render the one-variable regions: HOV circle, W1 arch, Mandelbrot set.
    Fig6(Fig6Args),
    /// Render the three-box region W2 in the real (a, b) plane.
    Fig9(Fig9Args),
    /// Integrate the critical Green function's normal derivative over |a| = r.
    Theta(ThetaArgs),
    /// List the period-N points with their codings.
    Codes(CodesArgs),
    /// Monodromy of the period-N points around a loop read from a JSON file.
    Loop(LoopArgs),
    /// Check that Brown's automorphism is not generated by shift, swap and
    /// coding-preserving maps.
    Thm2,
    /// Classify one parameter.
    Classify(ClassifyArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value = "0.2", allow_hyphen_values = true)]
    pub b: String,
    /// Real range of a, as lo,hi.
    #[arg(long, default_value = "-2.6,-1", allow_hyphen_values = true)]
    pub re: String,
    /// Imaginary range of a, as lo,hi.
    #[arg(long, default_value = "-0.7,0.7", allow_hyphen_values = true)]
    pub im: String,
    #[arg(long, default_value = "200x175")]
    pub size: String,
    /// Largest period continued by the classifier.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Image path; `.ppm` or `.png`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Write {re, im, verdict, witness_kind} records as JSON.
    #[arg(long)]
    pub records: Option<PathBuf>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Fig6Args {
    #[arg(long, default_value = "-4,3", allow_hyphen_values = true)]
    pub re: String,
    #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
    pub im: String,
    #[arg(long, default_value = "700x600")]
    pub size: String,
    #[arg(long, short, default_value = "fig6.png")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct Fig9Args {
    #[arg(long, default_value = "-3,0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "-0.4,0.4", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "300x200")]
    pub size: String,
    /// Boundary samples per box piece.
    #[arg(long, default_value_t = 256)]
    pub density: usize,
    /// Polyline file: one `a b` pair per line, blank lines between curves.
    #[arg(long)]
    pub overlay: Vec<PathBuf>,
    #[arg(long, short, default_value = "fig9.png")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, default_value_t = 3.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct CodesArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: String,
    #[arg(allow_hyphen_values = true)]
    pub b: String,
    #[arg(value_name = "N")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct LoopArgs {
    pub path: PathBuf,
    /// Period; overrides the file.
    #[arg(long = "N", short = 'N', visible_alias = "n")]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: String,
    #[arg(allow_hyphen_values = true)]
    pub b: String,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub host: Option<String>,
    #[arg(long)]
    pub port: Option<u16>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Service(#[from] ServiceError),
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error("{0}")]
    Other(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Other(e.to_string())
    }
}

fn other(e: impl std::fmt::Display) -> CliError {
    CliError::Other(e.to_string())
}

/// Parse `args` (program name first), run the verb, and return the exit
/// status: 0 on success, 1 on failure, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(value).map_err(other)?)?,
        Format::Text => {
            let t = text();
            write!(out, "{t}")?;
            if !t.ends_with('\n') {
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn params(a: &str, b: &str) -> Result<HenonParams, ServiceError> {
    Ok(HenonParams::new(parse_complex(a)?, parse_complex(b)?))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    let f = cli.format;
    match cli.verb {
        Verb::Scan(a) => scan(a, &mut cfg, f, out).map(|_| 0),
        Verb::Fig6(a) => {
            let (re, im) = (parse_range(&a.re)?, parse_range(&a.im)?);
            let (width, height) = parse_size(&a.size)?;
            let img = fig6_image(&Fig6Spec { re, im, width, height }).map_err(other)?;
            save_image(&img, &a.output).map_err(other)?;
            let r = ImageSummary::new(&a.output, width, height);
            emit(out, f, &r, || format!("wrote {} ({width}x{height})\n", a.output.display()))?;
            Ok(0)
        }
        Verb::Fig9(a) => {
            let (ar, br) = (parse_range(&a.a)?, parse_range(&a.b)?);
            let (width, height) = parse_size(&a.size)?;
            let overlays = a
                .overlay
                .iter()
                .map(|p| read_overlay(p))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect();
            let spec = Fig9Spec {
                a: ar,
                b: br,
                width,
                height,
                overlays,
                density: a.density,
            };
            let img = fig9_image(&spec).map_err(other)?;
            save_image(&img, &a.output).map_err(other)?;
            let r = ImageSummary::new(&a.output, width, height);
            emit(out, f, &r, || format!("wrote {} ({width}x{height})\n", a.output.display()))?;
            Ok(0)
        }
        Verb::Theta(a) => {
            let value = theta_loop_integral(a.radius, a.samples).map_err(other)?;
            let two_pi = std::f64::consts::TAU;
            let r = ThetaSummary {
                radius: a.radius,
                samples: a.samples,
                value,
                two_pi,
                relative_error: (value - two_pi).abs() / two_pi,
            };
            emit(out, f, &r, || {
                format!(
                    "theta(|a| = {}) = {:.6}  (2π = {:.6}, relative error {:.2e})\n",
                    r.radius, r.value, r.two_pi, r.relative_error
                )
            })?;
            Ok(0)
        }
        Verb::Codes(a) => {
            let r = ops::codes(params(&a.a, &a.b)?, a.n)?;
            emit(out, f, &r, || codes_table(&r))?;
            Ok(0)
        }
        Verb::Loop(a) => {
            let text = std::fs::read_to_string(&a.path)
                .map_err(|e| other(format!("{}: {e}", a.path.display())))?;
            let mut req = LoopRequest::from_json(&text)?;
            if a.n.is_some() {
                req.n = a.n;
            }
            let r = ops::run_loop(&req, cfg.loop_n)?;
            emit(out, f, &r, || {
                let mut s = format!(
                    "permutation: {}\nmatch: {}\nstatus: {}\n",
                    if r.cycles.is_empty() { "-" } else { &r.cycles },
                    r.automorphism.as_deref().map_or("none", |m| if m.is_empty() { "identity" } else { m }),
                    serde_json::to_string(&r.status).unwrap_or_default().trim_matches('"'),
                );
                s.push_str(&format!(
                    "diagnostics: {}\n",
                    serde_json::to_string(&r.diagnostics).unwrap_or_default()
                ));
                s
            })?;
            Ok(0)
        }
        Verb::Thm2 => {
            let r = theorem2_report().map_err(other)?;
            let passed = r.passed();
            emit(out, f, &r, || r.to_string())?;
            Ok(if passed { 0 } else { 1 })
        }
        Verb::Classify(a) => {
            let r = ops::classify(params(&a.a, &a.b)?, a.n_max.unwrap_or(cfg.n_max))?;
            emit(out, f, &r, || {
                let mut s = format!("{} (witness: {})", r.verdict, r.witness.kind());
                if let Some(t) = r.real_type {
                    s.push_str(&format!(", real type {t}"));
                }
                s.push('\n');
                s
            })?;
            Ok(0)
        }
        Verb::Serve(a) => {
            if let Some(h) = a.host {
                cfg.host = h;
            }
            if let Some(p) = a.port {
                cfg.port = p;
            }
            if let Some(w) = a.workers {
                cfg.workers = w;
            }
            if a.cache_dir.is_some() {
                cfg.cache_dir = a.cache_dir;
            }
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::api::serve(cfg))?;
            Ok(0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageSummary {
    pub output: String,
    pub width: usize,
    pub height: usize,
}

impl ImageSummary {
    fn new(path: &Path, width: usize, height: usize) -> Self {
        Self {
            output: path.display().to_string(),
            width,
            height,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSummary {
    pub radius: f64,
    pub samples: usize,
    pub value: f64,
    pub two_pi: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub key: String,
    pub cached: bool,
    pub width: usize,
    pub height: usize,
    pub counts: BTreeMap<Verdict, usize>,
    pub payload_sha256: String,
    pub output: Option<String>,
    pub records: Option<String>,
}

fn scan(a: ScanArgs, cfg: &mut Config, f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let b = parse_complex(&a.b)?;
    let (re, im) = (parse_range(&a.re)?, parse_range(&a.im)?);
    let (width, height) = parse_size(&a.size)?;
    let window = ScanRequest {
        b: [b.re, b.im],
        re: [re.0, re.1],
        im: [im.0, im.1],
        width,
        height,
        n_max: a.n_max,
    }
    .window(cfg.n_max)?;
    if let Some(d) = a.cache_dir {
        cfg.cache_dir = Some(d);
    }
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    let cache = match (&cfg.cache_dir, a.no_cache) {
        (Some(dir), false) => Some(ScanCache::open(
            dir,
            cfg.cache_max_entries,
            Duration::from_secs(cfg.cache_max_age_secs),
        )?),
        _ => None,
    };
    let (grid, payload, cached) = match cache.as_ref().and_then(|c| c.lookup(&window)) {
        Some((grid, bytes)) => (grid, bytes, true),
        None => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(other)?;
            let grid: TileGrid = pool.install(|| scan_window(&window)).map_err(other)?;
            let bytes = match &cache {
                Some(c) => c.store(&grid)?,
                None => tile_payload(&grid),
            };
            (grid, bytes, false)
        }
    };
    if let Some(p) = &a.output {
        save_image(&render_tiles(&grid).map_err(other)?, p).map_err(other)?;
    }
    if let Some(p) = &a.records {
        std::fs::write(p, serde_json::to_vec(&grid.all_records()).map_err(other)?)?;
    }
    let counts = [
        Verdict::HorseshoeHov,
        Verdict::HorseshoeEvidence,
        Verdict::NotHorseshoe,
        Verdict::Unknown,
    ]
    .into_iter()
    .map(|v| (v, grid.count(v)))
    .collect();
    let r = ScanSummary {
        key: crate::cache::cache_key(&window),
        cached,
        width,
        height,
        counts,
        payload_sha256: sha256_hex(&payload),
        output: a.output.as_ref().map(|p| p.display().to_string()),
        records: a.records.as_ref().map(|p| p.display().to_string()),
    };
    emit(out, f, &r, || {
        let mut s = format!(
            "scanned {width}x{height} at b = {b}{}\n",
            if cached { " (cached)" } else { "" }
        );
        for (v, k) in &r.counts {
            s.push_str(&format!("  {:<20} {k}\n", v.as_str()));
        }
        s.push_str(&format!("  payload sha256 {}\n", r.payload_sha256));
        for p in [&r.output, &r.records].into_iter().flatten() {
            s.push_str(&format!("wrote {p}\n"));
        }
        s
    })
}

fn codes_table(r: &ops::CodesResponse) -> String {
    let mut s = format!(
        "Per_{} at a = {}{:+}i, b = {}{:+}i{}\n",
        r.n,
        r.a[0],
        r.a[1],
        r.b[0],
        r.b[1],
        if r.in_w2 { "" } else { " (outside W2: no three-box codes)" }
    );
    s.push_str(&format!(
        "{:<w$}  {:<w$}  {:<24}  {:>8}  {:>10}\n",
        "seed",
        "E-code",
        "G-codes",
        "unstable",
        "margin",
        w = r.n.max(6)
    ));
    for row in &r.rows {
        let g = row
            .g_codes
            .as_ref()
            .map_or("-".to_string(), |g| format!("{{{}}}", g.join(",")));
        s.push_str(&format!(
            "{:<w$}  {:<w$}  {:<24}  {:>8}  {:>10.3e}\n",
            row.word,
            row.e_code.as_deref().unwrap_or("-"),
            g,
            row.unstable,
            row.margin,
            w = r.n.max(6)
        ));
    }
    s
}

fn read_overlay(path: &Path) -> Result<Vec<Vec<(f64, f64)>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| other(format!("{}: {e}", path.display())))?;
    let mut curves = vec![Vec::new()];
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            if !curves.last().is_some_and(Vec::is_empty) {
                curves.push(Vec::new());
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| other(format!("{}:{}: expected `a b`", path.display(), k + 1)))?;
        match nums[..] {
            [a, b] => curves.last_mut().expect("one curve").push((a, b)),
            _ => return Err(other(format!("{}:{}: expected `a b`", path.display(), k + 1))),
        }
    }
    curves.retain(|c| !c.is_empty());
    Ok(curves)
}
