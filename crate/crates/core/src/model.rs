//! Domain types shared by every solver.
//!
//! Agents on both sides are numbered `0..k`. Every preference list, ballot
//! and tie-break priority is a permutation of the indices of the *opposite*
//! side, so a ballot cast for a man ranks women and vice versa.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two sides of the marriage market.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Men,
    Women,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Men => Side::Women,
            Side::Women => Side::Men,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Men => "men",
            Side::Women => "women",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "men" | "man" | "m" => Ok(Side::Men),
            "women" | "woman" | "w" => Ok(Side::Women),
            other => Err(Error::domain(format!("unknown side `{other}`"))),
        }
    }
}

/// One agent of the market.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentRef {
    pub side: Side,
    pub index: usize,
}

impl AgentRef {
    pub fn new(side: Side, index: usize, k: usize) -> Result<AgentRef> {
        if index >= k {
            return Err(Error::domain(format!(
                "agent index {index} out of range for k = {k}"
            )));
        }
        Ok(AgentRef { side, index })
    }

    pub fn man(index: usize) -> AgentRef {
        AgentRef {
            side: Side::Men,
            index,
        }
    }

    pub fn woman(index: usize) -> AgentRef {
        AgentRef {
            side: Side::Women,
            index,
        }
    }
}

/// A strict total order over `k` candidates, most preferred first.
///
/// The inverse permutation is kept alongside the ranking so position lookups
/// are constant time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    ranking: Vec<usize>,
    position: Vec<usize>,
}

impl PreferenceOrder {
    /// Builds an order from a ranking, rejecting anything that is not a
    /// permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<usize>) -> Result<PreferenceOrder> {
        let k = ranking.len();
        let mut position = vec![usize::MAX; k];
        for (pos, &c) in ranking.iter().enumerate() {
            if c >= k || position[c] != usize::MAX {
                return Err(Error::domain(format!(
                    "{ranking:?} is not a permutation of 0..{k}"
                )));
            }
            position[c] = pos;
        }
        Ok(PreferenceOrder { ranking, position })
    }

    /// `0, 1, ..., k-1`.
    pub fn identity(k: usize) -> PreferenceOrder {
        PreferenceOrder {
            ranking: (0..k).collect(),
            position: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn into_ranking(self) -> Vec<usize> {
        self.ranking
    }

    /// Position of `candidate`, 0 being the top.
    ///
    /// Panics if `candidate >= k`.
    pub fn position(&self, candidate: usize) -> usize {
        self.position[candidate]
    }

    pub fn top(&self) -> usize {
        self.ranking[0]
    }

    /// Candidate at `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.ranking[pos]
    }

    /// True iff `a` is ranked above `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn reversed(&self) -> PreferenceOrder {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        let k = ranking.len();
        let position = self.position.iter().map(|&p| k - 1 - p).collect();
        PreferenceOrder { ranking, position }
    }

    /// Removes `candidate` and reinserts it so that it lands at `pos`.
    pub fn move_to(&mut self, candidate: usize, pos: usize) {
        let from = self.position[candidate];
        let c = self.ranking.remove(from);
        self.ranking.insert(pos, c);
        let (lo, hi) = if from < pos { (from, pos) } else { (pos, from) };
        for p in lo..=hi {
            self.position[self.ranking[p]] = p;
        }
    }

    /// Exchanges the candidates at positions `pos` and `pos + 1`.
    pub fn swap_adjacent(&mut self, pos: usize) {
        self.ranking.swap(pos, pos + 1);
        self.position[self.ranking[pos]] = pos;
        self.position[self.ranking[pos + 1]] = pos + 1;
    }
}

impl fmt::Debug for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranking)
    }
}

impl fmt::Display for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.ranking {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// A ballot under construction: some positions hold a candidate, the rest
/// are still free. Unplaced candidates receive no points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialBallot {
    slots: Vec<Option<usize>>,
    placed_at: Vec<Option<usize>>,
}

impl PartialBallot {
    pub fn empty(k: usize) -> PartialBallot {
        PartialBallot {
            slots: vec![None; k],
            placed_at: vec![None; k],
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn place(&mut self, pos: usize, candidate: usize) -> Result<()> {
        let k = self.slots.len();
        if pos >= k || candidate >= k {
            return Err(Error::domain(format!(
                "cannot place candidate {candidate} at {pos}, k = {k}"
            )));
        }
        if self.slots[pos].is_some() {
            return Err(Error::domain(format!("position {pos} already taken")));
        }
        if self.placed_at[candidate].is_some() {
            return Err(Error::domain(format!(
                "candidate {candidate} already placed"
            )));
        }
        self.slots[pos] = Some(candidate);
        self.placed_at[candidate] = Some(pos);
        Ok(())
    }

    /// Removes `candidate` if it is placed.
    pub fn unplace(&mut self, candidate: usize) {
        if let Some(pos) = self.placed_at[candidate].take() {
            self.slots[pos] = None;
        }
    }

    pub fn position_of(&self, candidate: usize) -> Option<usize> {
        self.placed_at[candidate]
    }

    pub fn is_placed(&self, candidate: usize) -> bool {
        self.placed_at[candidate].is_some()
    }

    /// Free positions from the top down.
    pub fn free_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(p, _)| p)
    }

    /// Puts `candidate` into the highest free position.
    pub fn place_highest_free(&mut self, candidate: usize) -> Result<usize> {
        let pos = self
            .free_positions()
            .next()
            .ok_or_else(|| Error::domain("ballot is already full"))?;
        self.place(pos, candidate)?;
        Ok(pos)
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn complete(&self) -> Result<PreferenceOrder> {
        let ranking = self
            .slots
            .iter()
            .map(|s| s.ok_or_else(|| Error::domain("ballot has free positions")))
            .collect::<Result<Vec<_>>>()?;
        PreferenceOrder::new(ranking)
    }
}

impl From<&PreferenceOrder> for PartialBallot {
    fn from(order: &PreferenceOrder) -> Self {
        PartialBallot {
            slots: order.ranking().iter().copied().map(Some).collect(),
            placed_at: (0..order.len()).map(|c| Some(order.position(c))).collect(),
        }
    }
}

/// Borda tallies, one entry per candidate.
///
/// Entries are `i64`. Tallies stay exact as long as
/// `base + (k - 1) * (voters + manipulators)` fits, which holds for every
/// instance this crate can enumerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScoreVector(Vec<i64>);

impl ScoreVector {
    pub fn new(scores: Vec<i64>) -> Result<ScoreVector> {
        if let Some(s) = scores.iter().find(|&&s| s < 0) {
            return Err(Error::domain(format!("negative score {s}")));
        }
        Ok(ScoreVector(scores))
    }

    pub fn zeros(k: usize) -> ScoreVector {
        ScoreVector(vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, candidate: usize) -> i64 {
        self.0[candidate]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub(crate) fn add_points(&mut self, candidate: usize, points: i64) {
        self.0[candidate] += points;
    }
}

/// Strict priority used to order candidates with equal scores.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TieBreak {
    priority: PreferenceOrder,
}

impl TieBreak {
    /// Lower index wins.
    pub fn canonical(k: usize) -> TieBreak {
        TieBreak {
            priority: PreferenceOrder::identity(k),
        }
    }

    pub fn new(priority: PreferenceOrder) -> TieBreak {
        TieBreak { priority }
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.priority.ranking().iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn priority(&self) -> &PreferenceOrder {
        &self.priority
    }

    /// True iff `a` wins a tie against `b`.
    pub fn favors(&self, a: usize, b: usize) -> bool {
        self.priority.prefers(a, b)
    }
}

/// A complete manipulation problem.
///
/// `men` and `women` both hold `k` rows; the row of the team agent is kept
/// for completeness but every solver replaces it by the aggregate of the
/// team's ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    k: usize,
    men: Vec<PreferenceOrder>,
    women: Vec<PreferenceOrder>,
    team: AgentRef,
    honest: Vec<PreferenceOrder>,
    base_scores: Option<ScoreVector>,
    num_manipulators: usize,
    target: usize,
    tie_break: TieBreak,
}

impl Instance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        men: Vec<PreferenceOrder>,
        women: Vec<PreferenceOrder>,
        team: AgentRef,
        honest: Vec<PreferenceOrder>,
        base_scores: Option<ScoreVector>,
        num_manipulators: usize,
        target: usize,
        tie_break: Option<TieBreak>,
    ) -> Result<Instance> {
        let k = men.len();
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if women.len() != k {
            return Err(Error::domain(format!(
                "{} men but {} women",
                k,
                women.len()
            )));
        }
        for (i, row) in men.iter().chain(&women).enumerate() {
            if row.len() != k {
                return Err(Error::domain(format!(
                    "preference row {i} has length {}, expected {k}",
                    row.len()
                )));
            }
        }
        if team.index >= k {
            return Err(Error::domain(format!("team index {} >= k", team.index)));
        }
        if let Some(b) = honest.iter().find(|b| b.len() != k) {
            return Err(Error::domain(format!(
                "honest ballot {b:?} does not rank {k} candidates"
            )));
        }
        if let Some(base) = &base_scores {
            if base.len() != k {
                return Err(Error::domain(format!(
                    "base_scores has {} entries, expected {k}",
                    base.len()
                )));
            }
        }
        if target >= k {
            return Err(Error::domain(format!("target {target} out of range")));
        }
        let tie_break = tie_break.unwrap_or_else(|| TieBreak::canonical(k));
        if tie_break.len() != k {
            return Err(Error::domain("tie-break priority has wrong length"));
        }
        Ok(Instance {
            k,
            men,
            women,
            team,
            honest,
            base_scores,
            num_manipulators,
            target,
            tie_break,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn men(&self) -> &[PreferenceOrder] {
        &self.men
    }

    pub fn women(&self) -> &[PreferenceOrder] {
        &self.women
    }

    pub fn team(&self) -> AgentRef {
        self.team
    }

    pub fn honest_ballots(&self) -> &[PreferenceOrder] {
        &self.honest
    }

    pub fn base_scores(&self) -> Option<&ScoreVector> {
        self.base_scores.as_ref()
    }

    pub fn num_manipulators(&self) -> usize {
        self.num_manipulators
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn tie_break(&self) -> &TieBreak {
        &self.tie_break
    }

    pub fn with_manipulators(&self, n: usize) -> Instance {
        Instance {
            num_manipulators: n,
            ..self.clone()
        }
    }

    pub fn with_target(&self, target: usize) -> Result<Instance> {
        if target >= self.k {
            return Err(Error::domain(format!("target {target} out of range")));
        }
        Ok(Instance {
            target,
            ..self.clone()
        })
    }

    pub fn with_tie_break(&self, tie_break: TieBreak) -> Result<Instance> {
        if tie_break.len() != self.k {
            return Err(Error::domain("tie-break priority has wrong length"));
        }
        Ok(Instance {
            tie_break,
            ..self.clone()
        })
    }

    /// Checks that `candidate` indexes the side the team's ballots rank.
    pub(crate) fn check_candidate(&self, candidate: usize) -> Result<()> {
        if candidate >= self.k {
            return Err(Error::domain(format!(
                "candidate {candidate} out of range for k = {}",
                self.k
            )));
        }
        Ok(())
    }
}
