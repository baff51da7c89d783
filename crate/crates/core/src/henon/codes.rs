use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{w2_slack, CyclicOrbit, HenonError};
use crate::cx::half_angle_unit;
use crate::one_dim::{code_cycle_g_1d, BoxSystem1D, OneDimError};
use crate::symbolic::CyclicWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeScheme {
    /// Two-piece sector coding.
    E,
    /// Three-box coding.
    G,
}

impl FromStr for CodeScheme {
    type Err = HenonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "E" => Ok(Self::E),
            "G" => Ok(Self::G),
            _ => Err(HenonError::UnknownRegion(s.to_string())),
        }
    }
}

impl fmt::Display for CodeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", content = "codes")]
pub enum OrbitCoding {
    E(CyclicWord),
    G(BTreeSet<CyclicWord>),
}

impl OrbitCoding {
    pub fn words(&self) -> Vec<CyclicWord> {
        match self {
            Self::E(w) => vec![w.clone()],
            Self::G(set) => set.iter().cloned().collect(),
        }
    }
}

impl fmt::Display for OrbitCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words().iter().map(|w| format!("({w})")).collect();
        write!(f, "{{{}}}", words.join(","))
    }
}

pub fn code_orbit(orbit: &CyclicOrbit, scheme: CodeScheme) -> Result<OrbitCoding, HenonError> {
    match scheme {
        CodeScheme::E => code_orbit_e(orbit).map(OrbitCoding::E),
        CodeScheme::G => code_orbit_g(orbit).map(OrbitCoding::G),
    }
}

/// Sector coding of the `y`-cycle: symbol `0` on the piece that is the left
/// half-plane at real `a < 0`.
pub fn code_orbit_e(orbit: &CyclicOrbit) -> Result<CyclicWord, HenonError> {
    let h = half_angle_unit(orbit.params.a).conj();
    let symbols = orbit
        .y
        .iter()
        .enumerate()
        .map(|(index, &y)| {
            let side = (y * h).im;
            if side.abs() <= 1e-12 * (1.0 + y.norm()) {
                Err(HenonError::SectorBoundary { index })
            } else {
                Ok(u8::from(side < 0.0))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    CyclicWord::new(symbols).map_err(|_| HenonError::ZeroPeriod)
}

/// Three-box codings of the orbit, after checking that its parameters lie
/// in the two-dimensional region where they are valid.
pub fn code_orbit_g(orbit: &CyclicOrbit) -> Result<BTreeSet<CyclicWord>, HenonError> {
    if !w2_slack(orbit.params).is_some_and(|s| s > 0.0) {
        return Err(HenonError::OutsideW2(orbit.params));
    }
    code_orbit_g_in(&BoxSystem1D::new(orbit.params.a), orbit)
}

/// Three-box codings of the `y`-cycle in a given box system, without the
/// region check. A cycle with no admissible coding of its own length is
/// read twice around.
pub fn code_orbit_g_in(
    bx: &BoxSystem1D,
    orbit: &CyclicOrbit,
) -> Result<BTreeSet<CyclicWord>, HenonError> {
    let map_err = |e| match e {
        OneDimError::OutsideBoxes { index, z } => HenonError::OutsideBoxes { index, z },
        other => HenonError::Continuation(other.to_string()),
    };
    let codes = code_cycle_g_1d(bx, &orbit.y).map_err(map_err)?;
    if !codes.is_empty() {
        return Ok(codes);
    }
    let twice: Vec<_> = orbit.y.iter().chain(&orbit.y).copied().collect();
    code_cycle_g_1d(bx, &twice).map_err(map_err)
}

/// The top row of the refined coding: the complement of the sector code.
pub fn e_code_to_ghat_top(e: &CyclicWord) -> CyclicWord {
    e.map_symbols(|s| 1 - s)
}
