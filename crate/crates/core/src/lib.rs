//! Strategic voting inside a marriage market.
//!
//! One agent of a Gale-Shapley market is a *team*: its preference list is
//! the Borda aggregate of a group of voters' ballots, ties broken by a fixed
//! priority. A manipulator (or a coalition of them) in that group wants the
//! team matched to a particular spouse. This crate decides that question:
//!
//! * [`men`]: team on the proposing side. Exact for one manipulator; a
//!   coalition solver that succeeds whenever one fewer voter could.
//! * [`women`]: team on the receiving side, with the same guarantees.
//! * [`oracle`]: exhaustive searches used to certify the solvers.
//! * [`hardness`]: the gadgets showing the coalition problems NP-hard, plus
//!   random instance generation.
//! * [`io`] and [`experiment`]: the instance file format and batch sweeps.

pub mod borda;
pub mod error;
pub mod experiment;
pub mod gale_shapley;
pub mod hardness;
pub mod io;
pub mod men;
pub mod model;
pub mod oracle;
pub mod verify;
pub mod women;

pub use borda::{aggregate, beats, borda_score, total_scores, Ballot};
pub use error::{Error, Result};
pub use gale_shapley::{blocking_pairs, match_with, run_gs, MatchOutcome, Matching};
pub use model::{AgentRef, Instance, PartialBallot, PreferenceOrder, ScoreVector, Side, TieBreak};
pub use oracle::OracleBudget;
pub use verify::{evaluate, ManipResult, Reason, Verification, Witness};

/// Single-manipulator solver for whichever side the team is on.
pub fn solve_single(instance: &Instance, target: usize) -> Result<ManipResult> {
    match instance.team().side {
        Side::Men => men::single_manipulation(instance, target),
        Side::Women => women::single_manipulation(instance, target),
    }
}

/// Coalition solver for whichever side the team is on, using
/// `instance.num_manipulators()` voters.
pub fn solve_coalition(instance: &Instance, target: usize) -> Result<ManipResult> {
    match instance.team().side {
        Side::Men => men::coalition_manipulation(instance, target),
        Side::Women => women::coalition_manipulation(instance, target),
    }
}
