use std::fmt;

use serde::{Deserialize, Serialize};

use super::{classify_parameter, ClassifierOptions, PixelClass, Verdict};
use crate::henon::{filtration_radius, per_n_with, HenonParams, PerNOptions};
use crate::symbolic::CyclicWord;

/// Real horseshoe types: `K ⊂ ℝ²`, `K ∩ ℝ² = ∅`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealType {
    Type1,
    Type2,
    Type3,
    NotHorseshoe,
    Unknown,
}

impl fmt::Display for RealType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Type1 => "type1",
            Self::Type2 => "type2",
            Self::Type3 => "type3",
            Self::NotHorseshoe => "not_horseshoe",
            Self::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealTypeReport {
    pub params: HenonParams,
    pub n: usize,
    pub real_type: RealType,
    pub classification: PixelClass,
    /// Seed word and whether its continued orbit is real.
    pub reality: Vec<(CyclicWord, bool)>,
    pub note: String,
}

/// Real type of a real horseshoe parameter, judged from which period-`N`
/// points are real.
pub fn classify_real_type(params: HenonParams, n: usize, opts: &ClassifierOptions) -> RealTypeReport {
    let classification = classify_parameter(params, opts);
    let note = format!("evidence at period <= {n}, not a proof");
    let fail = |real_type, classification| RealTypeReport {
        params,
        n,
        real_type,
        classification,
        reality: Vec::new(),
        note: note.clone(),
    };
    if !params.is_real() {
        return fail(RealType::Unknown, classification);
    }
    match classification.verdict {
        Verdict::NotHorseshoe => return fail(RealType::NotHorseshoe, classification),
        Verdict::Unknown => return fail(RealType::Unknown, classification),
        _ => {}
    }
    let Ok(orbits) = per_n_with(
        params,
        n,
        &PerNOptions {
            continuation: opts.continuation,
        },
    ) else {
        return fail(RealType::Unknown, classification);
    };
    let tol = 1e-8 * filtration_radius(params);
    let reality: Vec<(CyclicWord, bool)> = orbits
        .into_iter()
        .map(|o| {
            let real = o.orbit.max_imag() < tol;
            (o.word, real)
        })
        .collect();
    let real = reality.iter().filter(|r| r.1).count();
    let real_type = if real == reality.len() {
        RealType::Type1
    } else if real == 0 {
        RealType::Type2
    } else {
        RealType::Type3
    };
    RealTypeReport {
        params,
        n,
        real_type,
        classification,
        reality,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hov_examples() {
        let opts = ClassifierOptions::default();
        let r = classify_real_type(HenonParams::real(-6.0, 0.2), 4, &opts);
        assert_eq!(r.real_type, RealType::Type1);
        assert_eq!(r.reality.len(), 16);
        let r = classify_real_type(HenonParams::real(6.0, 0.2), 4, &opts);
        assert_eq!(r.real_type, RealType::Type2);
    }

    #[test]
    fn near_the_tip_is_logged_not_asserted() {
        let r = classify_real_type(HenonParams::real(-2.2, 0.2), 4, &ClassifierOptions::default());
        assert!(matches!(
            r.real_type,
            RealType::Type3 | RealType::NotHorseshoe | RealType::Unknown
        ));
    }
}
