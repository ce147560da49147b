//! Borda scoring and the score-to-order aggregation used by a team.
//!
//! A candidate at position `p` of a `k`-candidate ballot earns `k - 1 - p`
//! points; a partial ballot gives nothing to candidates it does not place.
//! The aggregate order sorts by total score, breaking ties with a
//! [`TieBreak`].

use crate::error::{Error, Result};
use crate::model::{Instance, PartialBallot, PreferenceOrder, ScoreVector, TieBreak};

/// Anything that hands out Borda points.
pub trait Ballot {
    /// Number of candidates ranked over.
    fn candidates(&self) -> usize;

    /// Points for `candidate`, which must be `< candidates()`.
    fn points(&self, candidate: usize) -> i64;
}

impl Ballot for PreferenceOrder {
    fn candidates(&self) -> usize {
        self.len()
    }

    fn points(&self, candidate: usize) -> i64 {
        (self.len() - 1 - self.position(candidate)) as i64
    }
}

impl Ballot for PartialBallot {
    fn candidates(&self) -> usize {
        self.len()
    }

    fn points(&self, candidate: usize) -> i64 {
        match self.position_of(candidate) {
            Some(pos) => (self.len() - 1 - pos) as i64,
            None => 0,
        }
    }
}

impl<B: Ballot + ?Sized> Ballot for &B {
    fn candidates(&self) -> usize {
        (**self).candidates()
    }

    fn points(&self, candidate: usize) -> i64 {
        (**self).points(candidate)
    }
}

pub fn borda_score(ballot: &PreferenceOrder, candidate: usize) -> Result<i64> {
    if candidate >= ballot.len() {
        return Err(Error::domain(format!(
            "candidate {candidate} out of range for k = {}",
            ballot.len()
        )));
    }
    Ok(ballot.points(candidate))
}

/// Sums honest ballots, the optional phantom base and any extra ballots.
pub fn total_scores<B: Ballot>(
    honest: &[PreferenceOrder],
    base: Option<&ScoreVector>,
    extra: &[B],
) -> Result<ScoreVector> {
    let k = base
        .map(ScoreVector::len)
        .or_else(|| honest.first().map(PreferenceOrder::len))
        .or_else(|| extra.first().map(Ballot::candidates))
        .ok_or_else(|| Error::domain("no ballots and no base scores to size the tally"))?;
    let mut scores = base.cloned().unwrap_or_else(|| ScoreVector::zeros(k));
    for b in honest {
        add_ballot(&mut scores, b)?;
    }
    for b in extra {
        add_ballot(&mut scores, b)?;
    }
    Ok(scores)
}

/// Adds one ballot's points into `scores`.
pub fn add_ballot(scores: &mut ScoreVector, ballot: &impl Ballot) -> Result<()> {
    let k = scores.len();
    if ballot.candidates() != k {
        return Err(Error::domain(format!(
            "ballot over {} candidates mixed into a tally over {k}",
            ballot.candidates()
        )));
    }
    for c in 0..k {
        scores.add_points(c, ballot.points(c));
    }
    Ok(())
}

/// Orders candidates by descending score, ties resolved by `tb`.
pub fn aggregate(scores: &ScoreVector, tb: &TieBreak) -> PreferenceOrder {
    let mut ranking: Vec<usize> = (0..scores.len()).collect();
    ranking.sort_by(|&a, &b| {
        scores
            .get(b)
            .cmp(&scores.get(a))
            .then_with(|| tb.priority().position(a).cmp(&tb.priority().position(b)))
    });
    PreferenceOrder::new(ranking).expect("sorted indices form a permutation")
}

/// `(c, s_c) > (c', s_c')`: higher score wins, equal scores go to the
/// tie-break favourite.
pub fn beats(c: usize, s_c: i64, other: usize, s_other: i64, tb: &TieBreak) -> Result<bool> {
    if c == other {
        return Err(Error::domain(format!("candidate {c} compared with itself")));
    }
    Ok(outscores(c, s_c, other, s_other, tb))
}

#[inline]
pub(crate) fn outscores(c: usize, s_c: i64, other: usize, s_other: i64, tb: &TieBreak) -> bool {
    s_c > s_other || (s_c == s_other && tb.favors(c, other))
}

impl Instance {
    /// `s(c, L)` including the phantom base.
    pub fn honest_scores(&self) -> ScoreVector {
        self.scores_with::<PreferenceOrder>(&[])
            .expect("instance ballots share k")
    }

    /// `s(c, L, L_R)` for the given manipulator ballots.
    pub fn scores_with<B: Ballot>(&self, extra: &[B]) -> Result<ScoreVector> {
        let mut scores = self
            .base_scores()
            .cloned()
            .unwrap_or_else(|| ScoreVector::zeros(self.k()));
        for b in self.honest_ballots() {
            add_ballot(&mut scores, b)?;
        }
        for b in extra {
            add_ballot(&mut scores, b)?;
        }
        Ok(scores)
    }

    /// `F(L)`, the team agent's truthful preference order.
    pub fn truthful_order(&self) -> PreferenceOrder {
        aggregate(&self.honest_scores(), self.tie_break())
    }

    /// `F(L ∪ L_R)`.
    pub fn aggregate_with<B: Ballot>(&self, extra: &[B]) -> Result<PreferenceOrder> {
        Ok(aggregate(&self.scores_with(extra)?, self.tie_break()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(r: &[usize]) -> PreferenceOrder {
        PreferenceOrder::new(r.to_vec()).unwrap()
    }

    #[test]
    fn borda_points_by_position() {
        let b = order(&[0, 1, 2]);
        assert_eq!(borda_score(&b, 0).unwrap(), 2);
        assert_eq!(borda_score(&b, 2).unwrap(), 0);
        assert_eq!(borda_score(&order(&[2, 0, 1]), 0).unwrap(), 1);
        assert!(borda_score(&b, 3).is_err());
    }

    #[test]
    fn totals() {
        let s = total_scores::<PreferenceOrder>(&[order(&[0, 1]), order(&[1, 0])], None, &[])
            .unwrap();
        assert_eq!(s.as_slice(), &[1, 1]);

        let base = ScoreVector::new(vec![5, 3, 0]).unwrap();
        let s = total_scores(&[], Some(&base), &[order(&[2, 0, 1])]).unwrap();
        assert_eq!(s.as_slice(), &[6, 3, 2]);

        let mut pb = PartialBallot::empty(3);
        pb.place(0, 2).unwrap();
        let s = total_scores(&[order(&[0, 1, 2])], None, &[pb]).unwrap();
        assert_eq!(s.as_slice(), &[2, 1, 2]);
    }

    #[test]
    fn mixed_k_is_rejected() {
        let err = total_scores(&[order(&[0, 1, 2])], None, &[order(&[0, 1])]);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn aggregate_sorts_and_breaks_ties() {
        let tb = TieBreak::canonical(3);
        let s = ScoreVector::new(vec![1, 1, 1]).unwrap();
        assert_eq!(aggregate(&s, &tb).ranking(), &[0, 1, 2]);
        let s = ScoreVector::new(vec![0, 5, 3]).unwrap();
        assert_eq!(aggregate(&s, &tb).ranking(), &[1, 2, 0]);

        let reversed = TieBreak::new(order(&[2, 1, 0]));
        let s = ScoreVector::new(vec![1, 1, 1]).unwrap();
        assert_eq!(aggregate(&s, &reversed).ranking(), &[2, 1, 0]);
    }

    #[test]
    fn reduction_score_shape() {
        // indices: w* = 0, w_1..w_q = 1..q, w_{q+1} = q+1, w_{q+2} = q+2
        let (q, c, z) = (2i64, 10i64, 7i64);
        let x = [3i64, 3];
        let top = 2 * q + 4 + c;
        let s = ScoreVector::new(vec![c, top - x[0], top - x[1], top, z]).unwrap();
        let f = aggregate(&s, &TieBreak::canonical(5));
        assert_eq!(f.ranking(), &[3, 1, 2, 0, 4]);
    }

    #[test]
    fn beats_relation() {
        let tb = TieBreak::canonical(2);
        assert!(beats(0, 3, 1, 2, &tb).unwrap());
        assert!(!beats(1, 2, 0, 2, &tb).unwrap());
        assert!(beats(0, 2, 1, 2, &tb).unwrap());
        assert!(beats(0, 2, 0, 2, &tb).is_err());
    }
}
