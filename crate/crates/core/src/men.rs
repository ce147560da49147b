//! Manipulation when the team agent is a man (the proposing side).
//!
//! Both solvers share a prologue that finds the set `B` of women who would
//! be matched to the team man ahead of the target. Starting from his
//! truthful order, each woman he ends up with while she still sits above the
//! target is moved to just below the target, until either the target is his
//! match (feasible) or he lands below the target (infeasible). Then every
//! manipulator ranks the target first, the non-blockers next and the
//! blockers last, blockers in reverse of the current aggregate order.

use crate::borda::aggregate;
use crate::error::Result;
use crate::model::{Instance, PreferenceOrder, Side};
use crate::verify::{certify, expect_side, ManipResult, Reason, Witness};

/// The women that must end up below the target, and the order that proves
/// the target reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerAnalysis {
    /// In discovery order.
    pub blockers: Vec<usize>,
    /// The team man's order after every blocker was moved below the target.
    pub target_order: PreferenceOrder,
    pub feasible: bool,
    /// Loop iterations, at most `k`.
    pub iterations: usize,
}

impl BlockerAnalysis {
    pub fn is_blocker(&self, woman: usize) -> bool {
        self.blockers.contains(&woman)
    }
}

pub fn analyze_blockers(instance: &Instance, target: usize) -> Result<BlockerAnalysis> {
    expect_side(instance, Side::Men)?;
    instance.check_candidate(target)?;
    let mut order = instance.truthful_order();
    let mut blockers = Vec::new();
    let mut iterations = 0;
    let mut b = instance.team_spouse(&order)?;
    while order.prefers(b, target) {
        iterations += 1;
        debug_assert!(iterations <= instance.k());
        blockers.push(b);
        let below_target = order.position(target);
        order.move_to(b, below_target);
        b = instance.team_spouse(&order)?;
    }
    Ok(BlockerAnalysis {
        blockers,
        target_order: order,
        feasible: b == target,
        iterations,
    })
}

/// One manipulator ballot: `target` on top, non-blockers in `running`
/// order, then blockers from least to most preferred under `running`.
pub fn stage_ballot(running: &PreferenceOrder, target: usize, blockers: &[usize]) -> PreferenceOrder {
    let is_blocker = |w: usize| blockers.contains(&w);
    let mut ranking = Vec::with_capacity(running.len());
    ranking.push(target);
    ranking.extend(
        running
            .ranking()
            .iter()
            .copied()
            .filter(|&w| w != target && !is_blocker(w)),
    );
    ranking.extend(
        running
            .ranking()
            .iter()
            .rev()
            .copied()
            .filter(|&w| w != target && is_blocker(w)),
    );
    PreferenceOrder::new(ranking).expect("every woman placed once")
}

/// Single manipulator: decides exactly whether one extra ballot can make
/// `target` the team man's wife.
pub fn single_manipulation(instance: &Instance, target: usize) -> Result<ManipResult> {
    let analysis = analyze_blockers(instance, target)?;
    if !analysis.feasible {
        return Ok(ManipResult::NotFound(Reason::InfeasibleTarget));
    }
    let ballot = stage_ballot(&instance.truthful_order(), target, &analysis.blockers);
    certify(instance, vec![ballot], target)
}

/// Builds the `n` stage ballots in order, each one against the aggregate of
/// the honest electorate and the ballots of the earlier stages. No
/// verification is done here.
pub fn coalition_profile(
    instance: &Instance,
    target: usize,
    analysis: &BlockerAnalysis,
    n: usize,
) -> Result<Vec<PreferenceOrder>> {
    let mut ballots: Vec<PreferenceOrder> = Vec::with_capacity(n);
    let mut scores = instance.honest_scores();
    for _ in 0..n {
        let running = aggregate(&scores, instance.tie_break());
        let ballot = stage_ballot(&running, target, &analysis.blockers);
        crate::borda::add_ballot(&mut scores, &ballot)?;
        ballots.push(ballot);
    }
    Ok(ballots)
}

/// Coalition of `instance.num_manipulators()` voters. Succeeds whenever one
/// fewer manipulator could have succeeded; never claims an unverified
/// profile.
pub fn coalition_manipulation(instance: &Instance, target: usize) -> Result<ManipResult> {
    expect_side(instance, Side::Men)?;
    instance.check_candidate(target)?;
    let n = instance.num_manipulators();
    if n == 0 {
        return no_coalition(instance, target);
    }
    let analysis = analyze_blockers(instance, target)?;
    if !analysis.feasible {
        return Ok(ManipResult::NotFound(Reason::InfeasibleTarget));
    }
    let ballots = coalition_profile(instance, target, &analysis, n)?;
    certify(instance, ballots, target)
}

pub(crate) fn no_coalition(instance: &Instance, target: usize) -> Result<ManipResult> {
    let v = crate::verify::evaluate::<PreferenceOrder>(instance, &[], target)?;
    if v.holds() {
        Ok(ManipResult::Found(Witness {
            ballots: Vec::new(),
            scores: v.scores,
            aggregate: v.aggregate,
            spouse: v.spouse,
        }))
    } else {
        Ok(ManipResult::NotFound(Reason::NoManipulators))
    }
}
