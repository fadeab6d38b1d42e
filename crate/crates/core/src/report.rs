//! Verdicts and reports shared by the assumption and theorem checkers.

use std::collections::BTreeMap;
use std::fmt;

/// Tri-state outcome of a grid-based check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The defining inequality holds with equality everywhere (within
    /// tolerance), e.g. the exponential distribution for IFR/DFR.
    Boundary,
}

impl Verdict {
    pub fn holds_non_strict(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Boundary)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::Boundary => write!(f, "boundary"),
        }
    }
}

/// Which reading of a paired "<= (>=)" condition fired on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Le,
    Ge,
    /// lhs and rhs agree within tolerance everywhere.
    BothBoundary,
    Neither,
}

impl Direction {
    pub fn le(self) -> bool {
        matches!(self, Direction::Le | Direction::BothBoundary)
    }
    pub fn ge(self) -> bool {
        matches!(self, Direction::Ge | Direction::BothBoundary)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Le => write!(f, "le"),
            Direction::Ge => write!(f, "ge"),
            Direction::BothBoundary => write!(f, "both-boundary"),
            Direction::Neither => write!(f, "neither"),
        }
    }
}

/// Result of checking a sufficient condition and (when it fires)
/// re-verifying the implied conclusion numerically.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub theorem_id: String,
    /// Direction of the principal pointwise condition.
    pub direction: Direction,
    /// Grid points violating the `<=` reading: (u, lhs, rhs).
    pub pointwise_violations: Vec<(f64, f64, f64)>,
    /// Named integral terms evaluated along the way.
    pub integral_terms: BTreeMap<String, f64>,
    /// Human-readable statement of what the hypotheses imply (empty
    /// when they do not fire).
    pub implied_conclusion: String,
    /// `None` when the hypotheses do not fire and nothing is implied.
    pub conclusion_verified: Option<Verdict>,
}

impl ConditionReport {
    pub fn hypotheses_fired(&self) -> bool {
        self.conclusion_verified.is_some()
    }

    /// One CSV row per grid violation: `theorem,u,lhs,rhs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,u,lhs,rhs\n");
        for (u, lhs, rhs) in &self.pointwise_violations {
            out.push_str(&format!(
                "{},{:.8e},{:.8e},{:.8e}\n",
                self.theorem_id, u, lhs, rhs
            ));
        }
        out
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.theorem_id)?;
        writeln!(f, "  direction: {}", self.direction)?;
        writeln!(f, "  violations: {}", self.pointwise_violations.len())?;
        for (name, value) in &self.integral_terms {
            writeln!(f, "  {name} = {value:.8e}")?;
        }
        match &self.conclusion_verified {
            Some(v) => {
                writeln!(f, "  conclusion: {}", self.implied_conclusion)?;
                writeln!(f, "  conclusion_verified: {v}")
            }
            None => writeln!(f, "  conclusion: hypotheses not satisfied"),
        }
    }
}
