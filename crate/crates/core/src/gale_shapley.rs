//! Men-proposing deferred acceptance with a full proposal trace.

use crate::error::{Error, Result};
use crate::model::{Instance, PreferenceOrder, Side};

/// A perfect matching between `k` men and `k` women.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    wife_of: Vec<usize>,
    husband_of: Vec<usize>,
}

impl Matching {
    /// `wives[m]` is the woman matched to man `m`.
    pub fn from_wives(wives: Vec<usize>) -> Result<Matching> {
        let k = wives.len();
        let mut husband_of = vec![usize::MAX; k];
        for (m, &w) in wives.iter().enumerate() {
            if w >= k || husband_of[w] != usize::MAX {
                return Err(Error::domain(format!("{wives:?} is not a bijection")));
            }
            husband_of[w] = m;
        }
        Ok(Matching {
            wife_of: wives,
            husband_of,
        })
    }

    pub fn k(&self) -> usize {
        self.wife_of.len()
    }

    pub fn wife_of(&self, man: usize) -> usize {
        self.wife_of[man]
    }

    pub fn husband_of(&self, woman: usize) -> usize {
        self.husband_of[woman]
    }

    pub fn wives(&self) -> &[usize] {
        &self.wife_of
    }

    /// Partner of agent `index` on `side`.
    pub fn partner(&self, side: Side, index: usize) -> usize {
        match side {
            Side::Men => self.wife_of[index],
            Side::Women => self.husband_of[index],
        }
    }
}

/// Result of one deferred-acceptance run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOutcome {
    pub matching: Matching,
    /// `proposals[w]` lists, ascending, every man who proposed to `w`.
    proposals: Vec<Vec<usize>>,
    pub rounds: usize,
}

impl MatchOutcome {
    /// `o(w)`.
    pub fn proposers(&self, woman: usize) -> &[usize] {
        &self.proposals[woman]
    }

    pub fn proposed(&self, man: usize, woman: usize) -> bool {
        self.proposals[woman].binary_search(&man).is_ok()
    }

    pub fn proposal_log(&self) -> &[Vec<usize>] {
        &self.proposals
    }

    pub fn total_proposals(&self) -> usize {
        self.proposals.iter().map(Vec::len).sum()
    }
}

/// Runs men-proposing deferred acceptance.
///
/// Every free man proposes to the best woman he has not yet tried; a round
/// processes the free men in ascending index order.
pub fn run_gs(men: &[PreferenceOrder], women: &[PreferenceOrder]) -> Result<MatchOutcome> {
    let k = men.len();
    if women.len() != k {
        return Err(Error::domain(format!(
            "{} men but {} women",
            k,
            women.len()
        )));
    }
    if let Some(row) = men.iter().chain(women).find(|r| r.len() != k) {
        return Err(Error::domain(format!(
            "preference list {row:?} does not rank {k} agents"
        )));
    }
    let men: Vec<&PreferenceOrder> = men.iter().collect();
    let women: Vec<&PreferenceOrder> = women.iter().collect();
    Ok(deferred_acceptance(&men, &women))
}

/// Core loop over borrowed rows; callers guarantee a square profile.
pub(crate) fn deferred_acceptance(
    men: &[&PreferenceOrder],
    women: &[&PreferenceOrder],
) -> MatchOutcome {
    let k = men.len();
    let mut next = vec![0usize; k];
    let mut held: Vec<Option<usize>> = vec![None; k];
    let mut proposed = vec![false; k * k];
    let mut free: Vec<usize> = (0..k).collect();
    let mut rejected = Vec::with_capacity(k);
    let mut rounds = 0;

    while !free.is_empty() {
        rounds += 1;
        rejected.clear();
        for &m in &free {
            let w = men[m].at(next[m]);
            next[m] += 1;
            proposed[w * k + m] = true;
            match held[w] {
                None => held[w] = Some(m),
                Some(h) if women[w].prefers(m, h) => {
                    held[w] = Some(m);
                    rejected.push(h);
                }
                Some(_) => rejected.push(m),
            }
        }
        rejected.sort_unstable();
        std::mem::swap(&mut free, &mut rejected);
    }

    let mut wives = vec![0; k];
    for (w, h) in held.iter().enumerate() {
        wives[h.expect("complete lists leave nobody single")] = w;
    }
    let proposals = (0..k)
        .map(|w| (0..k).filter(|&m| proposed[w * k + m]).collect())
        .collect();
    MatchOutcome {
        matching: Matching::from_wives(wives).expect("deferred acceptance yields a bijection"),
        proposals,
        rounds,
    }
}

/// All `(man, woman)` pairs that prefer each other to their partners.
///
/// Panics if the profile sizes differ from the matching's.
pub fn blocking_pairs(
    matching: &Matching,
    men: &[PreferenceOrder],
    women: &[PreferenceOrder],
) -> Vec<(usize, usize)> {
    let k = matching.k();
    assert!(men.len() == k && women.len() == k, "profile size mismatch");
    let mut out = Vec::new();
    for (m, row) in men.iter().enumerate() {
        let current = matching.wife_of(m);
        for &w in row.ranking() {
            if w == current {
                break;
            }
            if women[w].prefers(m, matching.husband_of(w)) {
                out.push((m, w));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_stable(matching: &Matching, men: &[PreferenceOrder], women: &[PreferenceOrder]) -> bool {
    blocking_pairs(matching, men, women).is_empty()
}

/// Runs deferred acceptance with the team agent's row replaced by `order`.
pub fn match_with(instance: &Instance, order: &PreferenceOrder) -> Result<MatchOutcome> {
    if order.len() != instance.k() {
        return Err(Error::domain(format!(
            "override ranks {} agents, expected {}",
            order.len(),
            instance.k()
        )));
    }
    let team = instance.team();
    let mut men: Vec<&PreferenceOrder> = instance.men().iter().collect();
    let mut women: Vec<&PreferenceOrder> = instance.women().iter().collect();
    match team.side {
        Side::Men => men[team.index] = order,
        Side::Women => women[team.index] = order,
    }
    Ok(deferred_acceptance(&men, &women))
}

impl Instance {
    /// Partner of the team agent when it reports `order`.
    pub fn team_spouse(&self, order: &PreferenceOrder) -> Result<usize> {
        let out = match_with(self, order)?;
        Ok(out.matching.partner(self.team().side, self.team().index))
    }
}
