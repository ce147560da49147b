//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates in a fixed lexicographic order, so the first
//! witness returned is always the same for the same input.

use std::collections::HashMap;

use itertools::Itertools;

use crate::borda::{aggregate, Ballot};
use crate::error::{Error, Result};
use crate::gale_shapley::{is_stable, Matching};
use crate::model::{Instance, PreferenceOrder, ScoreVector};

/// Limits checked before any enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_k: usize,
    pub max_manipulators: usize,
    /// Upper bound on the number of candidate objects enumerated.
    pub max_enumerations: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_k: 8,
            max_manipulators: 4,
            max_enumerations: 5_000_000,
        }
    }
}

impl OracleBudget {
    pub fn with_enumerations(max_enumerations: u128) -> Self {
        OracleBudget {
            max_enumerations,
            ..OracleBudget::default()
        }
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        if k > self.max_k {
            return Err(Error::Budget {
                what: "k",
                needed: k as u128,
                limit: self.max_k as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_count(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_enumerations {
            return Err(Error::Budget {
                what,
                needed,
                limit: self.max_enumerations,
            });
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, i| acc.saturating_mul(i))
}

/// `C(n, r)`, saturating.
pub fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Every permutation of `0..k` in lexicographic order.
pub fn all_orders(k: usize) -> impl Iterator<Item = PreferenceOrder> {
    (0..k)
        .permutations(k)
        .map(|r| PreferenceOrder::new(r).expect("permutation"))
}

/// First ballot, in lexicographic order, that makes `target` the team
/// agent's spouse.
pub fn brute_single(
    instance: &Instance,
    target: usize,
    budget: &OracleBudget,
) -> Result<Option<PreferenceOrder>> {
    instance.check_candidate(target)?;
    let k = instance.k();
    budget.check_k(k)?;
    budget.check_count("ballots", factorial(k))?;
    let honest = instance.honest_scores();
    let mut seen: HashMap<PreferenceOrder, bool> = HashMap::new();
    for ballot in all_orders(k) {
        let mut scores = honest.clone();
        crate::borda::add_ballot(&mut scores, &ballot)?;
        if hits(instance, &scores, target, &mut seen)? {
            return Ok(Some(ballot));
        }
    }
    Ok(None)
}

fn hits(
    instance: &Instance,
    scores: &ScoreVector,
    target: usize,
    seen: &mut HashMap<PreferenceOrder, bool>,
) -> Result<bool> {
    let order = aggregate(scores, instance.tie_break());
    if let Some(&hit) = seen.get(&order) {
        return Ok(hit);
    }
    let hit = instance.team_spouse(&order)? == target;
    seen.insert(order, hit);
    Ok(hit)
}

/// Searches every multiset of `n` ballots. Manipulator identity does not
/// affect Borda totals, so `C(k! + n - 1, n)` profiles cover all `(k!)^n`
/// tuples.
pub fn brute_coalition(
    instance: &Instance,
    n: usize,
    target: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<PreferenceOrder>>> {
    instance.check_candidate(target)?;
    let k = instance.k();
    budget.check_k(k)?;
    if n > budget.max_manipulators {
        return Err(Error::Budget {
            what: "manipulators",
            needed: n as u128,
            limit: budget.max_manipulators as u128,
        });
    }
    if n == 0 {
        let hit = instance.team_spouse(&instance.truthful_order())? == target;
        return Ok(hit.then(Vec::new));
    }
    let ballots = factorial(k);
    budget.check_count("ballot multisets", binomial(ballots + n as u128 - 1, n as u128))?;

    let orders: Vec<PreferenceOrder> = all_orders(k).collect();
    let points: Vec<Vec<i64>> = orders
        .iter()
        .map(|o| (0..k).map(|c| o.points(c)).collect())
        .collect();
    let honest = instance.honest_scores();
    let mut seen: HashMap<PreferenceOrder, bool> = HashMap::new();
    for combo in (0..orders.len()).combinations_with_replacement(n) {
        let mut totals = honest.as_slice().to_vec();
        for &i in &combo {
            for (t, p) in totals.iter_mut().zip(&points[i]) {
                *t += p;
            }
        }
        let scores = ScoreVector::new(totals)?;
        if hits(instance, &scores, target, &mut seen)? {
            return Ok(Some(combo.into_iter().map(|i| orders[i].clone()).collect()));
        }
    }
    Ok(None)
}

/// Every stable matching, ordered by the wives vector.
pub fn enumerate_stable(
    men: &[PreferenceOrder],
    women: &[PreferenceOrder],
    budget: &OracleBudget,
) -> Result<Vec<Matching>> {
    let k = men.len();
    if women.len() != k {
        return Err(Error::domain("profile size mismatch"));
    }
    budget.check_k(k)?;
    budget.check_count("matchings", factorial(k))?;
    Ok((0..k)
        .permutations(k)
        .map(|w| Matching::from_wives(w).expect("permutation"))
        .filter(|m| is_stable(m, men, women))
        .collect())
}

/// Two permutations `sigma`, `pi` of `1..=q` with `sigma[i] + pi[i] == x[i]`.
pub fn solve_permutation_sum(
    x: &[i64],
    budget: &OracleBudget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let q = x.len();
    if q == 0 {
        return Err(Error::domain("permutation sum needs at least one integer"));
    }
    if x.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain(format!("{x:?} is not sorted")));
    }
    let want = (q * (q + 1)) as i64;
    if x.iter().sum::<i64>() != want {
        return Err(Error::domain(format!("{x:?} does not sum to q(q+1) = {want}")));
    }
    budget.check_count("permutations", factorial(q))?;
    for sigma in (1..=q).permutations(q) {
        let mut used = vec![false; q + 1];
        let mut pi = Vec::with_capacity(q);
        for (s, &xi) in sigma.iter().zip(x) {
            let p = xi - *s as i64;
            if p < 1 || p > q as i64 || used[p as usize] {
                break;
            }
            used[p as usize] = true;
            pi.push(p as usize);
        }
        if pi.len() == q {
            return Ok(Some((sigma, pi)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale_shapley::run_gs;
    use crate::model::AgentRef;

    #[test]
    fn counting_helpers() {
        assert_eq!(factorial(5), 120);
        assert_eq!(binomial(25, 2), 300);
        assert_eq!(binomial(721, 2), 259_560);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn permutation_sum_cases() {
        let b = OracleBudget::default();
        let (s, p) = solve_permutation_sum(&[3, 3], &b).unwrap().unwrap();
        assert_eq!(s[0] + p[0], 3);
        assert_eq!(s[1] + p[1], 3);
        assert!(solve_permutation_sum(&[1, 5], &b).unwrap().is_none());
        assert_eq!(
            solve_permutation_sum(&[2, 4], &b).unwrap(),
            Some((vec![1, 2], vec![1, 2]))
        );
        assert!(solve_permutation_sum(&[4, 2], &b).is_err());
        assert!(solve_permutation_sum(&[3, 4], &b).is_err());
    }

    #[test]
    fn single_agent_market() {
        let one = vec![PreferenceOrder::identity(1)];
        let inst = Instance::new(
            one.clone(),
            one.clone(),
            AgentRef::man(0),
            vec![],
            None,
            1,
            0,
            None,
        )
        .unwrap();
        let b = brute_single(&inst, 0, &OracleBudget::default()).unwrap();
        assert_eq!(b, Some(PreferenceOrder::identity(1)));
        assert_eq!(enumerate_stable(&one, &one, &OracleBudget::default()).unwrap().len(), 1);
    }

    #[test]
    fn common_preferences_have_one_stable_matching() {
        let same: Vec<PreferenceOrder> = (0..4).map(|_| PreferenceOrder::identity(4)).collect();
        let stable = enumerate_stable(&same, &same, &OracleBudget::default()).unwrap();
        assert_eq!(stable.len(), 1);
        assert_eq!(stable[0], run_gs(&same, &same).unwrap().matching);
    }

    #[test]
    fn budget_is_enforced() {
        let k = 6;
        let same: Vec<PreferenceOrder> = (0..k).map(|_| PreferenceOrder::identity(k)).collect();
        let inst = Instance::new(
            same.clone(),
            same.clone(),
            AgentRef::man(0),
            vec![],
            None,
            2,
            0,
            None,
        )
        .unwrap();
        let tight = OracleBudget::with_enumerations(100);
        assert!(matches!(
            brute_single(&inst, 0, &tight),
            Err(Error::Budget { needed: 720, .. })
        ));
        assert!(matches!(
            brute_coalition(&inst, 2, 0, &tight),
            Err(Error::Budget { .. })
        ));
        assert!(matches!(
            enumerate_stable(&same, &same, &tight),
            Err(Error::Budget { .. })
        ));
    }
}
