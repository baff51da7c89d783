//! Horseshoe evidence for single parameters and whole windows of the
//! `a`-plane, and raster rendering.
//!
//! Each parameter passes through up to three tiers:
//!
//! 1. the HOV inequality, which guarantees a horseshoe;
//! 2. a search for an attracting cycle, which rules one out;
//! 3. continuation of every orbit of period at most `N_max` from an anchor
//!    at `b = 0`; success is evidence for a horseshoe, a collision or loss
//!    of hyperbolicity is evidence against.
//!
//! Only tier 1 is a proof.

mod attractor;
mod real_type;
mod render;
mod window;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::continuation::{continue_orbits, ContinuationError, ContinuationOptions};
use crate::cx::C64;
use crate::henon::{
    radial_anchor, region_member_2d, seed_orbit_1d, solve_periodic_orbit, HenonParams, Region2D,
};
use crate::symbolic::all_words;

pub use attractor::{find_attractor, AttractorOptions};
pub use real_type::{classify_real_type, RealType, RealTypeReport};
pub use render::{
    fig6_image, fig9_image, palette, render_tiles, save_image, w1_arch, Fig6Spec, Fig9Spec,
    ImageFormat,
};
pub use window::{scan_rows, scan_window, scan_window_with_progress, ScanWindow, TileGrid, TileRecord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("nothing to render")]
    EmptyGrid,
    #[error("cannot write image: {0}")]
    Io(String),
    #[error("unknown image format {0:?}")]
    UnknownFormat(String),
    #[error("unknown verdict {0:?}")]
    UnknownVerdict(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HorseshoeHov,
    HorseshoeEvidence,
    NotHorseshoe,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::HorseshoeHov => "horseshoe_hov",
            Self::HorseshoeEvidence => "horseshoe_evidence",
            Self::NotHorseshoe => "not_horseshoe",
            Self::Unknown => "unknown",
        }
    }

    pub fn is_horseshoe(&self) -> bool {
        matches!(self, Self::HorseshoeHov | Self::HorseshoeEvidence)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "horseshoe_hov" => Ok(Self::HorseshoeHov),
            "horseshoe_evidence" => Ok(Self::HorseshoeEvidence),
            "not_horseshoe" => Ok(Self::NotHorseshoe),
            "unknown" => Ok(Self::Unknown),
            _ => Err(ScanError::UnknownVerdict(s.to_string())),
        }
    }
}

/// What a verdict rests on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// An attracting cycle: point `(x, y)` on it and its multiplier moduli.
    Attractor {
        period: usize,
        x: C64,
        y: C64,
        multipliers: [f64; 2],
    },
    Collision { at: HenonParams },
    MarginLoss { at: HenonParams, margin: f64 },
    Budget { at: HenonParams },
    Divergence { at: HenonParams },
    SeedFailure { reason: String },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Attractor { .. } => "attractor",
            Self::Collision { .. } => "collision",
            Self::MarginLoss { .. } => "margin_loss",
            Self::Budget { .. } => "budget",
            Self::Divergence { .. } => "divergence",
            Self::SeedFailure { .. } => "seed_failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PixelClass {
    pub verdict: Verdict,
    pub witness: Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierOptions {
    /// Largest period continued in tier 3.
    pub n_max: usize,
    pub attractor: AttractorOptions,
    pub continuation: ContinuationOptions,
    /// Tier 3 anchor sits at `|a'| = anchor_scale·2(|b| + 1)²`.
    pub anchor_scale: f64,
}

impl Default for ClassifierOptions {
    fn default() -> Self {
        Self {
            n_max: 5,
            attractor: AttractorOptions::default(),
            continuation: ContinuationOptions {
                max_steps: 20_000,
                ..ContinuationOptions::default()
            },
            anchor_scale: 1.1,
        }
    }
}

/// Run the three tiers in order and report the first conclusive one.
pub fn classify_parameter(params: HenonParams, opts: &ClassifierOptions) -> PixelClass {
    if region_member_2d(Region2D::Hov, params) {
        return PixelClass {
            verdict: Verdict::HorseshoeHov,
            witness: Witness::None,
        };
    }
    if let Some(w) = find_attractor(params, &opts.attractor) {
        return PixelClass {
            verdict: Verdict::NotHorseshoe,
            witness: w,
        };
    }
    continuation_tier(params, opts)
}

fn continuation_tier(params: HenonParams, opts: &ClassifierOptions) -> PixelClass {
    let (anchor, path) = radial_anchor(params, opts.anchor_scale);
    let seeds: Result<Vec<_>, _> = (1..=opts.n_max)
        .flat_map(|n| all_words(2, n))
        .map(|w| {
            let y = seed_orbit_1d(anchor.a, &w)?;
            solve_periodic_orbit(anchor, w.len(), &y)
        })
        .collect();
    let seeds = match seeds {
        Ok(s) => s,
        Err(e) => {
            return PixelClass {
                verdict: Verdict::Unknown,
                witness: Witness::SeedFailure {
                    reason: e.to_string(),
                },
            }
        }
    };
    match continue_orbits(&seeds, &path, &opts.continuation) {
        Ok(_) => PixelClass {
            verdict: Verdict::HorseshoeEvidence,
            witness: Witness::None,
        },
        Err(e) => {
            let (verdict, witness) = match e {
                ContinuationError::Collision { at, .. } => {
                    (Verdict::NotHorseshoe, Witness::Collision { at })
                }
                ContinuationError::MarginLoss { at, margin, .. } => {
                    (Verdict::NotHorseshoe, Witness::MarginLoss { at, margin })
                }
                ContinuationError::Budget { at, .. } => (Verdict::Unknown, Witness::Budget { at }),
                ContinuationError::Divergence { at } => {
                    (Verdict::Unknown, Witness::Divergence { at })
                }
                other => (
                    Verdict::Unknown,
                    Witness::SeedFailure {
                        reason: other.to_string(),
                    },
                ),
            };
            PixelClass { verdict, witness }
        }
    }
}

/// Re-derive a verdict's witness: an attractor must still solve and be
/// attracting; a continuation witness must recur on a fresh run.
pub fn recheck_witness(params: HenonParams, class: &PixelClass, opts: &ClassifierOptions) -> bool {
    match &class.witness {
        Witness::None => match class.verdict {
            Verdict::HorseshoeHov => region_member_2d(Region2D::Hov, params),
            Verdict::HorseshoeEvidence => {
                continuation_tier(params, opts).verdict == Verdict::HorseshoeEvidence
            }
            _ => false,
        },
        Witness::Attractor { period, x, y, .. } => {
            attractor::confirm_attractor(params, *period, (*x, *y))
        }
        w => continuation_tier(params, opts).witness.kind() == w.kind(),
    }
}
