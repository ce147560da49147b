//! Manipulation when the team agent is a woman (the proposed-to side).
//!
//! A woman keeps the best proposal she receives, so the team must make the
//! target the top of its aggregate among her proposers and keep him among
//! them. The solvers first pick a second man `m_nd` who still proposes to
//! her while ranked just below the target, seeding the ballots with only
//! those two men. The remaining proposers are then pushed below `m_nd`,
//! while non-proposers fill the top free positions, where they cannot
//! affect her match.

use crate::borda::outscores;
use crate::error::{Error, Result};
use crate::model::{Instance, PartialBallot, PreferenceOrder, Side};
use crate::oracle::{self, OracleBudget};
use crate::verify::{certify, expect_side, ManipResult, Reason};

/// The chosen second proposal and the seed ballots that realise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondProposal {
    pub m_nd: usize,
    /// Ballots with only the target and `m_nd` placed.
    pub seed_ballots: Vec<PartialBallot>,
    /// `s(m_nd, L ∪ seed)`.
    pub achieved_score: i64,
    /// `o(ŵ)` when the seeded aggregate is her order, ascending.
    pub proposers: Vec<usize>,
}

impl SecondProposal {
    /// `o(ŵ) \ {target, m_nd}`.
    pub fn blockers(&self, target: usize) -> Vec<usize> {
        self.proposers
            .iter()
            .copied()
            .filter(|&m| m != target && m != self.m_nd)
            .collect()
    }
}

/// Runs matching under the seeded aggregate; returns the proposer set if
/// the team woman ends up with `target` and `m` proposed to her.
fn seed_passes(
    instance: &Instance,
    target: usize,
    m: usize,
    seed: &[PartialBallot],
) -> Result<Option<Vec<usize>>> {
    let order = instance.aggregate_with(seed)?;
    let out = crate::gale_shapley::match_with(instance, &order)?;
    let team = instance.team().index;
    if out.matching.husband_of(team) == target && out.proposed(m, team) {
        Ok(Some(out.proposers(team).to_vec()))
    } else {
        Ok(None)
    }
}

/// Keeps `candidate` if it beats the current best under the seeded scores.
fn keep_better(
    instance: &Instance,
    best: &mut Option<SecondProposal>,
    candidate: SecondProposal,
) {
    let better = match best {
        None => true,
        Some(cur) => outscores(
            candidate.m_nd,
            candidate.achieved_score,
            cur.m_nd,
            cur.achieved_score,
            instance.tie_break(),
        ),
    };
    if better {
        *best = Some(candidate);
    }
}

/// Picks `m_nd` for a single manipulator.
///
/// Each man `m` is tried on top with the target second; if that lets `m`
/// beat the target, the target goes on top and `m` takes the highest
/// position that keeps him below the target. Among the men whose seed keeps
/// the target as her match with `m` proposing, the one ranked highest by
/// the seeded tally wins.
pub fn find_second_proposal_single(
    instance: &Instance,
    target: usize,
) -> Result<Option<SecondProposal>> {
    expect_side(instance, Side::Women)?;
    instance.check_candidate(target)?;
    let k = instance.k();
    let tb = instance.tie_break();
    let honest = instance.honest_scores();
    let mut best: Option<SecondProposal> = None;

    for m in (0..k).filter(|&m| m != target) {
        let mut ballot = PartialBallot::empty(k);
        ballot.place(0, m)?;
        ballot.place(1, target)?;
        let pts = |b: &PartialBallot, c: usize| honest.get(c) + crate::borda::Ballot::points(b, c);
        if outscores(m, pts(&ballot, m), target, pts(&ballot, target), tb) {
            ballot = PartialBallot::empty(k);
            ballot.place(0, target)?;
            let mut placed = false;
            for pos in 1..k {
                ballot.place(pos, m)?;
                if outscores(target, pts(&ballot, target), m, pts(&ballot, m), tb) {
                    placed = true;
                    break;
                }
                ballot.unplace(m);
            }
            if !placed {
                continue;
            }
        }
        let seed = vec![ballot];
        if let Some(proposers) = seed_passes(instance, target, m, &seed)? {
            let achieved_score = honest.get(m) + crate::borda::Ballot::points(&seed[0], m);
            keep_better(
                instance,
                &mut best,
                SecondProposal {
                    m_nd: m,
                    seed_ballots: seed,
                    achieved_score,
                    proposers,
                },
            );
        }
    }
    Ok(best)
}

/// Fills a seeded ballot: unplaced non-blockers take the highest free
/// positions in `order`, blockers take the rest, least preferred under
/// `blocker_order` first.
fn fill_ballot(
    ballot: &mut PartialBallot,
    blockers: &[usize],
    order: &PreferenceOrder,
    blocker_order: Option<&PreferenceOrder>,
) -> Result<()> {
    for &c in order.ranking() {
        if !ballot.is_placed(c) && !blockers.contains(&c) {
            ballot.place_highest_free(c)?;
        }
    }
    let blocker_order = blocker_order.unwrap_or(order);
    for &c in blocker_order.ranking().iter().rev() {
        if !ballot.is_placed(c) && blockers.contains(&c) {
            ballot.place_highest_free(c)?;
        }
    }
    Ok(())
}

/// Single manipulator: decides exactly whether one extra ballot can make
/// `target` the team woman's husband.
pub fn single_manipulation(instance: &Instance, target: usize) -> Result<ManipResult> {
    expect_side(instance, Side::Women)?;
    instance.check_candidate(target)?;
    let truthful = instance.truthful_order();
    if instance.team_spouse(&truthful)? == target {
        return certify(instance, vec![truthful], target);
    }
    let Some(sp) = find_second_proposal_single(instance, target)? else {
        return Ok(ManipResult::NotFound(Reason::NoSecondProposal));
    };
    let blockers = sp.blockers(target);
    let mut ballot = sp.seed_ballots[0].clone();
    fill_ballot(&mut ballot, &blockers, &truthful, None)?;
    certify(instance, vec![ballot.complete()?], target)
}

/// Stage one of the coalition solver: picks `m_nd` and seeds every
/// manipulator's ballot with the target and `m_nd`.
///
/// `gap` is how many points `m` leads the target by in the honest tally
/// (one more if `m` wins ties). With at least `gap` manipulators the two men
/// share the top two positions, the target on top in just enough ballots to
/// stay ahead. Otherwise the target tops every ballot and `m` is sunk to the
/// bottom of as many ballots as the deficit requires, sits second in the
/// rest, and takes the highest position still keeping him behind the target
/// in the last ballot.
pub fn coalition_stage_one(instance: &Instance, target: usize) -> Result<Option<SecondProposal>> {
    expect_side(instance, Side::Women)?;
    instance.check_candidate(target)?;
    let k = instance.k();
    if k < 3 {
        return Err(Error::domain("coalition stage one needs k >= 3"));
    }
    let n = instance.num_manipulators();
    if n == 0 {
        return Err(Error::domain("coalition stage one needs at least one manipulator"));
    }
    let tb = instance.tie_break();
    let honest = instance.honest_scores();
    let r = n as i64;
    let mut best: Option<SecondProposal> = None;

    'candidates: for m in (0..k).filter(|&m| m != target) {
        let mut gap = honest.get(m) - honest.get(target);
        if tb.favors(m, target) {
            gap += 1;
        }
        if r * (k as i64 - 1) < gap {
            continue;
        }
        let mut seed = vec![PartialBallot::empty(k); n];
        if r >= gap {
            let on_top = (gap + (r - gap + 1) / 2).max(0) as usize;
            for (i, ballot) in seed.iter_mut().enumerate() {
                if i < on_top {
                    ballot.place(0, target)?;
                    ballot.place(1, m)?;
                } else {
                    ballot.place(0, m)?;
                    ballot.place(1, target)?;
                }
            }
        } else {
            for ballot in seed.iter_mut() {
                ballot.place(0, target)?;
            }
            let sunk = (((gap - r) / (k as i64 - 2)) as usize).min(n - 1);
            for (i, ballot) in seed[..n - 1].iter_mut().enumerate() {
                ballot.place(if i < sunk { k - 1 } else { 1 }, m)?;
            }
            let mut placed = false;
            for pos in 1..k {
                seed[n - 1].place(pos, m)?;
                let scores = instance.scores_with(&seed)?;
                if outscores(target, scores.get(target), m, scores.get(m), tb) {
                    placed = true;
                    break;
                }
                seed[n - 1].unplace(m);
            }
            if !placed {
                continue 'candidates;
            }
        }
        if let Some(proposers) = seed_passes(instance, target, m, &seed)? {
            let achieved_score = instance.scores_with(&seed)?.get(m);
            keep_better(
                instance,
                &mut best,
                SecondProposal {
                    m_nd: m,
                    seed_ballots: seed,
                    achieved_score,
                    proposers,
                },
            );
        }
    }
    Ok(best)
}

/// Stage two: completes the seeded ballots one manipulator at a time.
/// Blockers go to the bottom of each ballot in reverse order of the running
/// aggregate, which already includes the earlier completed ballots.
/// Returns the ballots without verifying them.
pub fn coalition_stage_two(
    instance: &Instance,
    target: usize,
    second: &SecondProposal,
) -> Result<Vec<PreferenceOrder>> {
    let blockers = second.blockers(target);
    let mut ballots = second.seed_ballots.clone();
    for r in 0..ballots.len() {
        let running = instance.aggregate_with(&ballots)?;
        let mut ballot = ballots[r].clone();
        for &c in running.ranking() {
            if !ballot.is_placed(c) && !blockers.contains(&c) {
                ballot.place_highest_free(c)?;
            }
        }
        ballots[r] = ballot;
        let running = instance.aggregate_with(&ballots)?;
        fill_ballot(&mut ballots[r], &blockers, &running, None)?;
    }
    ballots.iter().map(PartialBallot::complete).collect()
}

/// Coalition of `instance.num_manipulators()` voters for a woman.
///
/// `k <= 2` markets are settled by exhaustive search, which is at most
/// `n + 1` profiles there.
pub fn coalition_manipulation(instance: &Instance, target: usize) -> Result<ManipResult> {
    expect_side(instance, Side::Women)?;
    instance.check_candidate(target)?;
    let n = instance.num_manipulators();
    if n == 0 {
        return crate::men::no_coalition(instance, target);
    }
    let truthful = instance.truthful_order();
    if instance.team_spouse(&truthful)? == target {
        return certify(instance, vec![truthful; n], target);
    }
    if instance.k() <= 2 {
        return match oracle::brute_coalition(instance, n, target, &OracleBudget::default())? {
            Some(ballots) => certify(instance, ballots, target),
            None => Ok(ManipResult::NotFound(Reason::Exhausted)),
        };
    }
    let Some(second) = coalition_stage_one(instance, target)? else {
        return Ok(ManipResult::NotFound(Reason::NoSecondProposal));
    };
    let ballots = coalition_stage_two(instance, target, &second)?;
    certify(instance, ballots, target)
}
