//! Reference implementations for the integration tests, written against raw
//! rankings so they share no code with the library.
#![allow(dead_code)]

use matchmanip::{men, run_gs, women, Instance, PartialBallot, PreferenceOrder, Side};

/// Queue-based deferred acceptance. Returns `wife_of`.
pub fn naive_gs(men: &[Vec<usize>], women: &[Vec<usize>]) -> Vec<usize> {
    let k = men.len();
    let rank = |w: usize, m: usize| women[w].iter().position(|&x| x == m).unwrap();
    let mut next = vec![0usize; k];
    let mut husband: Vec<Option<usize>> = vec![None; k];
    let mut free: Vec<usize> = (0..k).rev().collect();
    while let Some(m) = free.pop() {
        let w = men[m][next[m]];
        next[m] += 1;
        match husband[w] {
            None => husband[w] = Some(m),
            Some(h) if rank(w, m) < rank(w, h) => {
                husband[w] = Some(m);
                free.push(h);
            }
            Some(_) => free.push(m),
        }
    }
    let mut wife = vec![usize::MAX; k];
    for (w, h) in husband.iter().enumerate() {
        wife[h.unwrap()] = w;
    }
    wife
}

pub fn naive_blocking(wife: &[usize], men: &[Vec<usize>], women: &[Vec<usize>]) -> usize {
    let k = wife.len();
    let mut husband = vec![0; k];
    for (m, &w) in wife.iter().enumerate() {
        husband[w] = m;
    }
    let pos = |row: &Vec<usize>, x: usize| row.iter().position(|&y| y == x).unwrap();
    let mut count = 0;
    for m in 0..k {
        for w in 0..k {
            if pos(&men[m], w) < pos(&men[m], wife[m]) && pos(&women[w], m) < pos(&women[w], husband[w]) {
                count += 1;
            }
        }
    }
    count
}

pub fn naive_scores(k: usize, ballots: &[Vec<usize>], base: Option<&[i64]>) -> Vec<i64> {
    let mut s: Vec<i64> = base.map(|b| b.to_vec()).unwrap_or_else(|| vec![0; k]);
    for b in ballots {
        for (p, &c) in b.iter().enumerate() {
            s[c] += (k - 1 - p) as i64;
        }
    }
    s
}

/// Descending score, ties to the earlier entry of `priority`.
pub fn naive_sort(scores: &[i64], priority: &[usize]) -> Vec<usize> {
    let mut c: Vec<usize> = (0..scores.len()).collect();
    c.sort_by_key(|&x| (-scores[x], priority.iter().position(|&p| p == x).unwrap()));
    c
}

pub fn raw(orders: &[PreferenceOrder]) -> Vec<Vec<usize>> {
    orders.iter().map(|o| o.ranking().to_vec()).collect()
}

/// The team's spouse when `extra` complete ballots join the honest ones,
/// computed without touching the library's scoring or matching code.
pub fn naive_spouse(instance: &Instance, extra: &[PreferenceOrder]) -> usize {
    let k = instance.k();
    let mut ballots = raw(instance.honest_ballots());
    ballots.extend(raw(extra));
    let base = instance.base_scores().map(|b| b.as_slice().to_vec());
    let scores = naive_scores(k, &ballots, base.as_deref());
    let order = naive_sort(&scores, instance.tie_break().priority().ranking());
    let mut men = raw(instance.men());
    let mut women = raw(instance.women());
    let team = instance.team();
    match team.side {
        Side::Men => men[team.index] = order,
        Side::Women => women[team.index] = order,
    }
    let wife = naive_gs(&men, &women);
    match team.side {
        Side::Men => wife[team.index],
        Side::Women => wife.iter().position(|&w| w == team.index).unwrap(),
    }
}

/// Grows `D` from `d0` inside `pool`. `seen[l]` is the aggregate stage
/// `l + 1` works from; `d` joins when it sits below a member of `D` in one
/// of them and above that same member in the next.
pub fn simulate_d(seen: &[PreferenceOrder], pool: &[usize], d0: usize) -> Vec<usize> {
    let mut d = vec![d0];
    loop {
        let grow: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|c| !d.contains(c))
            .filter(|&c| {
                seen.windows(2).any(|w| {
                    d.iter().any(|&dp| w[0].prefers(dp, c) && w[1].prefers(c, dp))
                })
            })
            .collect();
        if grow.is_empty() {
            return d;
        }
        d.extend(grow);
    }
}

fn sorted_desc(values: &[i64]) -> Vec<i64> {
    let mut v = values.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn is_one_dense(values: &[i64]) -> bool {
    sorted_desc(values).windows(2).all(|w| w[1] >= w[0] - 1)
}

/// At most one adjacent drop of 2, every other drop at most 1.
pub fn is_almost_one_dense(values: &[i64]) -> bool {
    let v = sorted_desc(values);
    let drops: Vec<i64> = v.windows(2).map(|w| w[0] - w[1]).collect();
    drops.iter().all(|&d| d <= 2) && drops.iter().filter(|&&d| d == 2).count() <= 1
}

/// Scores of the simulated `D` after stage `|R| - 1` and whether they pass
/// the density predicate for the side.
pub struct DCase {
    pub d: Vec<i64>,
    pub dense: bool,
}

/// Runs the men's coalition stages, asserting that blockers form a suffix
/// of every stage ballot. `None` when there is nothing to simulate.
pub fn men_d_case(inst: &Instance) -> Option<DCase> {
    let t = inst.target();
    let n = inst.num_manipulators();
    let analysis = men::analyze_blockers(inst, t).unwrap();
    if !analysis.feasible || analysis.blockers.is_empty() {
        return None;
    }
    let ballots = men::coalition_profile(inst, t, &analysis, n).unwrap();
    let k = inst.k();
    let nb = analysis.blockers.len();
    for b in &ballots {
        let mut tail: Vec<usize> = b.ranking()[k - nb..].to_vec();
        tail.sort_unstable();
        let mut want = analysis.blockers.clone();
        want.sort_unstable();
        assert_eq!(tail, want, "blockers are not a suffix of {b}");
    }
    let stages: Vec<PreferenceOrder> = (0..=n).map(|l| inst.aggregate_with(&ballots[..l]).unwrap()).collect();
    let d0 = *stages[0].ranking().iter().find(|w| analysis.is_blocker(**w)).unwrap();
    let d = simulate_d(&stages[..n], &analysis.blockers, d0);
    let at = inst.scores_with(&ballots[..n - 1]).unwrap();
    let scores: Vec<i64> = d.iter().map(|&c| at.get(c)).collect();
    Some(DCase { dense: is_one_dense(&scores), d: scores })
}

/// Women's counterpart: blockers must sit in the lowest `|B| + 1`
/// positions, `D_0` is the top blocker under the seeded aggregate.
pub fn women_d_case(inst: &Instance) -> Option<DCase> {
    let t = inst.target();
    let n = inst.num_manipulators();
    if inst.team_spouse(&inst.truthful_order()).unwrap() == t {
        return None;
    }
    let second = women::coalition_stage_one(inst, t).unwrap()?;
    let blockers = second.blockers(t);
    if blockers.is_empty() {
        return None;
    }
    let done = women::coalition_stage_two(inst, t, &second).unwrap();
    let k = inst.k();
    for b in &done {
        // m_nd may sit among the lowest positions, so allow one extra slot
        let lowest = k - blockers.len() - 1;
        for &c in &blockers {
            assert!(b.position(c) >= lowest, "blocker {c} too high in {b}");
        }
    }
    let state = |l: usize| -> Vec<PartialBallot> {
        done[..l]
            .iter()
            .map(PartialBallot::from)
            .chain(second.seed_ballots[l..].iter().cloned())
            .collect()
    };
    let stages: Vec<PreferenceOrder> = (0..=n).map(|l| inst.aggregate_with(&state(l)).unwrap()).collect();
    let d0 = *stages[0].ranking().iter().find(|m| blockers.contains(m)).unwrap();
    let d = simulate_d(&stages[..n], &blockers, d0);
    let at = inst.scores_with(&state(n - 1)).unwrap();
    let scores: Vec<i64> = d.iter().map(|&c| at.get(c)).collect();
    Some(DCase { dense: is_almost_one_dense(&scores), d: scores })
}

/// Swaps the adjacent pair at `p` in woman `w`'s row. Returns the swap-lemma
/// case (1: a non-proposer involved, 2: neither among her two best
/// proposals) and whether her match survived, or `None` for other swaps.
pub fn swap_case(men: &[PreferenceOrder], women: &[PreferenceOrder], w: usize, p: usize) -> Option<(u8, bool)> {
    let before = run_gs(men, women).unwrap();
    let row = &women[w];
    let (a, b) = (row.at(p), row.at(p + 1));
    let mut proposers = before.proposers(w).to_vec();
    proposers.sort_by_key(|&m| row.position(m));
    let top_two = &proposers[..proposers.len().min(2)];
    let case = if !before.proposed(a, w) || !before.proposed(b, w) {
        1
    } else if !top_two.contains(&a) && !top_two.contains(&b) {
        2
    } else {
        return None;
    };
    let mut swapped = women.to_vec();
    swapped[w].swap_adjacent(p);
    let after = run_gs(men, &swapped).unwrap();
    Some((case, after.matching.husband_of(w) == before.matching.husband_of(w)))
}
