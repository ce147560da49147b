//! Solver results and their re-verification.

use std::fmt;

use crate::borda::Ballot;
use crate::error::{Error, Result};
use crate::model::{PreferenceOrder, ScoreVector};
use crate::Instance;

/// Why a solver answered "no".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// No report by the team agent makes the target its spouse.
    InfeasibleTarget,
    /// No man can serve as the shielding second proposal.
    NoSecondProposal,
    /// The constructed ballots did not produce the target on re-check.
    VerificationFailed,
    /// The coalition is empty and the honest outcome misses the target.
    NoManipulators,
    /// Exhaustive search found nothing.
    Exhausted,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::InfeasibleTarget => "infeasible-target",
            Reason::NoSecondProposal => "no-second-proposal",
            Reason::VerificationFailed => "verification-failed",
            Reason::NoManipulators => "no-manipulators",
            Reason::Exhausted => "exhausted",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A checked set of manipulator ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub ballots: Vec<PreferenceOrder>,
    pub scores: ScoreVector,
    /// `F(L ∪ L_R)`.
    pub aggregate: PreferenceOrder,
    pub spouse: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManipResult {
    Found(Witness),
    NotFound(Reason),
}

impl ManipResult {
    pub fn is_found(&self) -> bool {
        matches!(self, ManipResult::Found(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ManipResult::Found(w) => Some(w),
            ManipResult::NotFound(_) => None,
        }
    }

    pub fn ballots(&self) -> Option<&[PreferenceOrder]> {
        self.witness().map(|w| w.ballots.as_slice())
    }

    pub fn into_ballots(self) -> Option<Vec<PreferenceOrder>> {
        match self {
            ManipResult::Found(w) => Some(w.ballots),
            ManipResult::NotFound(_) => None,
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            ManipResult::Found(_) => None,
            ManipResult::NotFound(r) => Some(*r),
        }
    }
}

/// Outcome of re-running aggregation and matching on a set of ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub scores: ScoreVector,
    pub aggregate: PreferenceOrder,
    pub spouse: usize,
    pub target: usize,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.spouse == self.target
    }
}

/// Aggregates `ballots` with the honest electorate and reports the team's
/// resulting spouse.
pub fn evaluate<B: Ballot>(instance: &Instance, ballots: &[B], target: usize) -> Result<Verification> {
    instance.check_candidate(target)?;
    let scores = instance.scores_with(ballots)?;
    let aggregate = crate::borda::aggregate(&scores, instance.tie_break());
    let spouse = instance.team_spouse(&aggregate)?;
    Ok(Verification {
        scores,
        aggregate,
        spouse,
        target,
    })
}

/// Wraps complete ballots into a [`ManipResult`] after re-checking them.
pub(crate) fn certify(
    instance: &Instance,
    ballots: Vec<PreferenceOrder>,
    target: usize,
) -> Result<ManipResult> {
    let v = evaluate(instance, &ballots, target)?;
    if !v.holds() {
        return Ok(ManipResult::NotFound(Reason::VerificationFailed));
    }
    Ok(ManipResult::Found(Witness {
        ballots,
        scores: v.scores,
        aggregate: v.aggregate,
        spouse: v.spouse,
    }))
}

pub(crate) fn expect_side(instance: &Instance, side: crate::Side) -> Result<()> {
    if instance.team().side != side {
        return Err(Error::domain(format!(
            "solver expects a team on the {side} side, instance team is on the {} side",
            instance.team().side
        )));
    }
    Ok(())
}
