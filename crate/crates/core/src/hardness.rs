//! Instance generators: the Permutation Sum gadgets that make coalitional
//! manipulation hard on either side, honest-electorate realisation of a
//! score vector, and uniform random markets.
//!
//! Gadget layout, with `q = X.len()` and `k = q + 3`: the target spouse is
//! index 0, the agents tied to `X_1..X_q` are `1..=q`, the strong rival is
//! `q + 1` and the weak rival is `q + 2`. The team agent is index 0 of its
//! side. Every preference row is the identity, so on the men's side every
//! woman ranks the team man first, and on the women's side every man
//! proposes to the team woman first; either way the team gets the top of
//! its aggregate. The tallies are carried as phantom base scores:
//!
//! | index | score |
//! |-------|-------|
//! | 0 | `C` |
//! | `1..=q` | `2q + 4 + C - X_i` |
//! | `q + 1` | `2q + 4 + C` |
//! | `q + 2` | `z` |

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::borda::{aggregate, Ballot};
use crate::error::{Error, Result};
use crate::model::{AgentRef, Instance, PreferenceOrder, ScoreVector, Side, TieBreak};
use crate::oracle::OracleBudget;

/// Constants of the gadget. `None` picks `C = 2qk` and `z = C`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionParams {
    pub c: Option<i64>,
    pub z: Option<i64>,
}

/// Base scores of the gadget for `x`, validated.
pub fn reduction_scores(x: &[i64], params: ReductionParams) -> Result<ScoreVector> {
    let q = x.len();
    if q == 0 {
        return Err(Error::domain("X must be non-empty"));
    }
    if x.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain(format!("X = {x:?} is not sorted")));
    }
    if let Some(v) = x.iter().find(|&&v| v < 1) {
        return Err(Error::domain(format!("X entries must be positive, got {v}")));
    }
    let want = (q * (q + 1)) as i64;
    if x.iter().sum::<i64>() != want {
        return Err(Error::domain(format!("X = {x:?} does not sum to {want}")));
    }
    let k = q as i64 + 3;
    let c = params.c.unwrap_or(2 * q as i64 * k);
    let z = params.z.unwrap_or(c);
    if z > c {
        return Err(Error::domain(format!("z = {z} exceeds C = {c}")));
    }
    let top = 2 * q as i64 + 4 + c;
    let mut scores = Vec::with_capacity(q + 3);
    scores.push(c);
    scores.extend(x.iter().map(|xi| top - xi));
    scores.push(top);
    scores.push(z);
    if scores.iter().any(|&s| s < 0) {
        return Err(Error::domain(format!(
            "C = {c}, z = {z} leave a negative score in {scores:?}"
        )));
    }
    ScoreVector::new(scores)
}

/// Builds the two-manipulator gadget for `x` with the team on `side`.
pub fn gen_reduction(x: &[i64], side: Side, params: ReductionParams) -> Result<Instance> {
    let base = reduction_scores(x, params)?;
    let k = base.len();
    let rows: Vec<PreferenceOrder> = (0..k).map(|_| PreferenceOrder::identity(k)).collect();
    let team = AgentRef::new(side, 0, k)?;
    Instance::new(rows.clone(), rows, team, vec![], Some(base), 2, 0, None)
}

/// The two manipulator ballots built from a Permutation Sum solution:
/// target, weak rival, then the `X` agents by descending permutation value,
/// strong rival last. Agent `i` collects `sigma[i-1]` and `pi[i-1]` points.
pub fn reduction_ballots(sigma: &[usize], pi: &[usize]) -> Result<Vec<PreferenceOrder>> {
    let q = sigma.len();
    if pi.len() != q {
        return Err(Error::domain("sigma and pi differ in length"));
    }
    [sigma, pi]
        .iter()
        .map(|perm| {
            let mut inverse = vec![0usize; q + 1];
            for (i, &v) in perm.iter().enumerate() {
                if v < 1 || v > q || inverse[v] != 0 {
                    return Err(Error::domain(format!("{perm:?} is not a permutation of 1..={q}")));
                }
                inverse[v] = i + 1;
            }
            let mut ranking = vec![0, q + 2];
            ranking.extend((1..=q).rev().map(|v| inverse[v]));
            ranking.push(q + 1);
            PreferenceOrder::new(ranking)
        })
        .collect()
}

/// Finds honest ballots whose Borda tallies equal `target` up to one
/// uniform additive constant.
///
/// Uses at most one ballot sorted by `target`, then pairs of ballots that
/// each move a single point between two candidates on top of a uniform
/// `k - 1` each. Returns `None` when the tally total has the wrong residue
/// modulo `k`, which no ballot multiset can fix.
pub fn realize_scores_as_ballots(
    target: &ScoreVector,
    budget: &OracleBudget,
) -> Result<Option<Vec<PreferenceOrder>>> {
    let k = target.len();
    if k == 0 {
        return Err(Error::domain("empty score vector"));
    }
    if k == 1 {
        return Ok(Some(vec![PreferenceOrder::identity(1)]));
    }
    let sorted = aggregate(target, &TieBreak::canonical(k));
    let mut best: Option<Vec<PreferenceOrder>> = None;
    for singles in 0..=1i64 {
        let residual: Vec<i64> = (0..k)
            .map(|c| target.get(c) - singles * sorted.points(c))
            .collect();
        let sum: i64 = residual.iter().sum();
        if sum.rem_euclid(k as i64) != 0 {
            continue;
        }
        let mean = sum / k as i64;
        let excess: Vec<i64> = residual.iter().map(|r| r - mean).collect();
        let moves: i64 = excess.iter().filter(|&&e| e > 0).sum();
        let count = singles as u128 + 2 * moves as u128;
        budget.check_count("ballots", count)?;
        if best.as_ref().is_some_and(|b| b.len() as u128 <= count) {
            continue;
        }
        let mut ballots = Vec::with_capacity(count as usize);
        if singles == 1 {
            ballots.push(sorted.clone());
        }
        let mut gain: Vec<usize> = Vec::new();
        let mut lose: Vec<usize> = Vec::new();
        for (c, &e) in excess.iter().enumerate() {
            for _ in 0..e.max(0) {
                gain.push(c);
            }
            for _ in 0..(-e).max(0) {
                lose.push(c);
            }
        }
        for (&a, &b) in gain.iter().zip(&lose) {
            ballots.extend(transfer_pair(k, a, b));
        }
        if ballots.is_empty() {
            let id = PreferenceOrder::identity(k);
            ballots.push(id.reversed());
            ballots.push(id);
        }
        best = Some(ballots);
    }
    Ok(best)
}

/// `(a, b, rest)` and `(rest reversed, a, b)`: `a` gets `k`, `b` gets
/// `k - 2`, everyone else `k - 1`.
fn transfer_pair(k: usize, a: usize, b: usize) -> [PreferenceOrder; 2] {
    let rest: Vec<usize> = (0..k).filter(|&c| c != a && c != b).collect();
    let mut first = vec![a, b];
    first.extend(&rest);
    let mut second: Vec<usize> = rest.iter().rev().copied().collect();
    second.extend([a, b]);
    [
        PreferenceOrder::new(first).expect("permutation"),
        PreferenceOrder::new(second).expect("permutation"),
    ]
}

fn random_order(rng: &mut impl Rng, k: usize) -> PreferenceOrder {
    let mut r: Vec<usize> = (0..k).collect();
    r.shuffle(rng);
    PreferenceOrder::new(r).expect("shuffled permutation")
}

/// Uniformly random market, ballots, team index and target. Draw order is
/// fixed, so `seed` determines the instance.
pub fn gen_random(
    k: usize,
    num_voters: usize,
    num_manipulators: usize,
    side: Side,
    seed: u64,
) -> Result<Instance> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let men = (0..k).map(|_| random_order(&mut rng, k)).collect();
    let women = (0..k).map(|_| random_order(&mut rng, k)).collect();
    let team = AgentRef::new(side, rng.gen_range(0..k), k)?;
    let honest = (0..num_voters).map(|_| random_order(&mut rng, k)).collect();
    let target = rng.gen_range(0..k);
    Instance::new(men, women, team, honest, None, num_manipulators, target, None)
}
