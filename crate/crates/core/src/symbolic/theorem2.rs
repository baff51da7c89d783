use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::block_code::{apply_block_code, SlidingBlockCode};
use super::ghat::{lift_codings, ClosedPath, Projection};
use super::graph::{periodic_points, GraphTag, TransitionGraph};
use super::word::CyclicWord;
use super::SymbolicError;

/// The refined period-4 points carrying `𝒢`-codes `0012, 1200, 2121`.
pub const X_LISTING: [(&str, &str); 6] = [
    ("0001", "0012"),
    ("1110", "2121"),
    ("0011", "0012"),
    ("1100", "1200"),
    ("1011", "2121"),
    ("0100", "1200"),
];

/// The refined period-4 points carrying `𝒢`-codes `0120, 1212, 2001`.
pub const Y_LISTING: [(&str, &str); 6] = [
    ("0010", "0120"),
    ("1101", "1212"),
    ("0110", "0120"),
    ("1001", "2001"),
    ("0111", "1212"),
    ("1000", "2001"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    /// A point that breaks the claim, in `top/bottom` form.
    pub witness: Option<String>,
}

/// Mechanical check that Brown's automorphism `F` lies outside the group
/// generated by the shift, the swap `C`, and any automorphism fixing the
/// `𝒢`-coding of every point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Report {
    /// Points of exact period four in the full 2-shift.
    pub p4: Vec<CyclicWord>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    /// The computed lifts coincide with the tabulated `X ∪ Y`.
    pub listing_matches: bool,
    pub pi_g_x: Vec<CyclicWord>,
    pub pi_g_y: Vec<CyclicWord>,
    pub assertions: Vec<Assertion>,
    /// `F(0001)` and `F(0011)` with the set each lands in.
    pub f_images: Vec<(CyclicWord, CyclicWord, String)>,
    pub conclusion: bool,
}

impl Theorem2Report {
    pub fn passed(&self) -> bool {
        self.listing_matches && self.conclusion && self.assertions.iter().all(|a| a.passed)
    }
}

fn parse_listing(rows: &[(&str, &str)]) -> Result<BTreeSet<ClosedPath>, SymbolicError> {
    rows.iter().map(|(t, b)| ClosedPath::from_rows(t, b)).collect()
}

fn unique_lift(top: &CyclicWord) -> Result<ClosedPath, SymbolicError> {
    let lifts = lift_codings(top)?;
    if lifts.len() != 1 {
        return Err(SymbolicError::NotAdmissible(format!(
            "{top} has {} lifts, expected one",
            lifts.len()
        )));
    }
    Ok(lifts.into_iter().next().expect("one lift"))
}

/// Push a block code on the top row through to refined paths.
fn act(code: &SlidingBlockCode, set: &BTreeSet<ClosedPath>) -> Result<BTreeSet<ClosedPath>, SymbolicError> {
    set.iter()
        .map(|p| unique_lift(&apply_block_code(code, &p.project(Projection::E))?))
        .collect()
}

fn maps_onto(
    name: &str,
    image: &BTreeSet<ClosedPath>,
    target: &BTreeSet<ClosedPath>,
) -> Assertion {
    let witness = image.iter().find(|p| !target.contains(p)).map(ToString::to_string);
    Assertion {
        name: name.into(),
        passed: witness.is_none() && image.len() == target.len(),
        witness,
    }
}

fn project_set(set: &BTreeSet<ClosedPath>) -> BTreeSet<CyclicWord> {
    set.iter().map(|p| p.project(Projection::G)).collect()
}

pub fn theorem2_report() -> Result<Theorem2Report, SymbolicError> {
    let e = TransitionGraph::named(GraphTag::E)?;
    let p4: Vec<CyclicWord> = periodic_points(&e, 4, true).into_iter().collect();

    let x = parse_listing(&X_LISTING)?;
    let y = parse_listing(&Y_LISTING)?;
    let lifted: BTreeSet<ClosedPath> = p4
        .iter()
        .map(unique_lift)
        .collect::<Result<_, _>>()?;
    let listed: BTreeSet<ClosedPath> = x.union(&y).cloned().collect();
    let listing_matches = lifted == listed && x.is_disjoint(&y);

    let mut assertions = Vec::new();

    let sx: BTreeSet<_> = x.iter().map(ClosedPath::shift).collect();
    let sy: BTreeSet<_> = y.iter().map(ClosedPath::shift).collect();
    let a1 = maps_onto("shift X = Y", &sx, &y);
    let a1b = maps_onto("shift Y = X", &sy, &x);
    assertions.push(Assertion {
        name: "shift swaps X and Y".into(),
        passed: a1.passed && a1b.passed,
        witness: a1.witness.or(a1b.witness),
    });

    let swap = SlidingBlockCode::swap();
    let cx = act(&swap, &x)?;
    let cy = act(&swap, &y)?;
    let a2 = maps_onto("C X = X", &cx, &x);
    let a2b = maps_onto("C Y = Y", &cy, &y);
    assertions.push(Assertion {
        name: "swap C preserves X and Y".into(),
        passed: a2.passed && a2b.passed,
        witness: a2.witness.or(a2b.witness),
    });

    let pi_g_x = project_set(&x);
    let pi_g_y = project_set(&y);
    let shared = pi_g_x.intersection(&pi_g_y).next();
    assertions.push(Assertion {
        name: "G-codes separate X from Y".into(),
        passed: shared.is_none(),
        witness: shared.map(ToString::to_string),
    });

    let brown = SlidingBlockCode::brown();
    let fx = act(&brown, &x)?;
    let in_x = fx.intersection(&x).next().cloned();
    let in_y = fx.intersection(&y).next().cloned();
    assertions.push(Assertion {
        name: "F(X) meets X".into(),
        passed: in_x.is_some(),
        witness: in_x.map(|p| p.to_string()),
    });
    assertions.push(Assertion {
        name: "F(X) meets Y".into(),
        passed: in_y.is_some(),
        witness: in_y.map(|p| p.to_string()),
    });

    let f_images = ["0001", "0011"]
        .iter()
        .map(|s| {
            let w: CyclicWord = s.parse()?;
            let img = apply_block_code(&brown, &w)?;
            let lift = unique_lift(&img)?;
            let set = if x.contains(&lift) {
                "X"
            } else if y.contains(&lift) {
                "Y"
            } else {
                "?"
            };
            Ok((w, img, set.to_string()))
        })
        .collect::<Result<Vec<_>, SymbolicError>>()?;

    let conclusion = listing_matches && assertions.iter().all(|a| a.passed);
    Ok(Theorem2Report {
        p4,
        x: x.iter().map(ToString::to_string).collect(),
        y: y.iter().map(ToString::to_string).collect(),
        listing_matches,
        pi_g_x: pi_g_x.into_iter().collect(),
        pi_g_y: pi_g_y.into_iter().collect(),
        assertions,
        f_images,
        conclusion,
    })
}

impl fmt::Display for Theorem2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[CyclicWord]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        writeln!(f, "P4 ({} points): {}", self.p4.len(), join(&self.p4))?;
        writeln!(f, "X: {}", self.x.join(", "))?;
        writeln!(f, "Y: {}", self.y.join(", "))?;
        writeln!(f, "lifts match listing: {}", self.listing_matches)?;
        writeln!(f, "pi_G X = {{{}}}", join(&self.pi_g_x))?;
        writeln!(f, "pi_G Y = {{{}}}", join(&self.pi_g_y))?;
        for (w, img, set) in &self.f_images {
            writeln!(f, "F({w}) = {img} in {set}")?;
        }
        for a in &self.assertions {
            let mark = if a.passed { "ok  " } else { "FAIL" };
            match &a.witness {
                Some(w) if !a.passed => writeln!(f, "[{mark}] {} (witness {w})", a.name)?,
                _ => writeln!(f, "[{mark}] {}", a.name)?,
            }
        }
        write!(
            f,
            "conclusion: {}",
            if self.conclusion {
                "F is not generated by the shift, C, and G-code preserving automorphisms"
            } else {
                "not established"
            }
        )
    }
}
