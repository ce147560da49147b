//! Solver-versus-oracle sweeps over random instances.

use std::fmt::Write as _;

use crate::error::Result;
use crate::hardness::gen_random;
use crate::model::Side;
use crate::oracle::{brute_coalition, brute_single, OracleBudget};

pub const CSV_HEADER: &str =
    "k,num_voters,num_manipulators,side,trials,solver_successes,oracle_successes,disagreements";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentGrid {
    pub ks: Vec<usize>,
    pub voters: Vec<usize>,
    /// `1` runs the single-manipulator solvers, larger values the coalition
    /// solvers.
    pub manipulators: Vec<usize>,
    pub sides: Vec<Side>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentGrid {
    fn default() -> Self {
        ExperimentGrid {
            ks: vec![2, 3, 4],
            voters: vec![1, 3],
            manipulators: vec![1, 2],
            sides: vec![Side::Men, Side::Women],
            trials: 50,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub k: usize,
    pub num_voters: usize,
    pub num_manipulators: usize,
    pub side: Side,
    pub trials: usize,
    pub solver_successes: usize,
    pub oracle_successes: usize,
    /// Single mode: solver and oracle disagree. Coalition mode: solver says
    /// yes where the oracle says no.
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.k,
                r.num_voters,
                r.num_manipulators,
                r.side,
                r.trials,
                r.solver_successes,
                r.oracle_successes,
                r.disagreements
            );
        }
        out
    }
}

/// Seed of one trial, a splitmix64 step over the grid coordinates.
pub fn trial_seed(seed: u64, k: usize, voters: usize, n: usize, side: Side, trial: usize) -> u64 {
    let mut z = seed
        ^ (k as u64).rotate_left(48)
        ^ (voters as u64).rotate_left(32)
        ^ (n as u64).rotate_left(16)
        ^ ((side == Side::Women) as u64).rotate_left(8)
        ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_experiment(grid: &ExperimentGrid, budget: &OracleBudget) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::default();
    for &k in &grid.ks {
        for &voters in &grid.voters {
            for &n in &grid.manipulators {
                for &side in &grid.sides {
                    let mut row = ExperimentRow {
                        k,
                        num_voters: voters,
                        num_manipulators: n,
                        side,
                        trials: grid.trials,
                        solver_successes: 0,
                        oracle_successes: 0,
                        disagreements: 0,
                    };
                    for trial in 0..grid.trials {
                        let seed = trial_seed(grid.seed, k, voters, n, side, trial);
                        let inst = gen_random(k, voters, n, side, seed)?;
                        let target = inst.target();
                        let (solver, oracle) = if n == 1 {
                            (
                                crate::solve_single(&inst, target)?.is_found(),
                                brute_single(&inst, target, budget)?.is_some(),
                            )
                        } else {
                            (
                                crate::solve_coalition(&inst, target)?.is_found(),
                                brute_coalition(&inst, n, target, budget)?.is_some(),
                            )
                        };
                        row.solver_successes += solver as usize;
                        row.oracle_successes += oracle as usize;
                        let defect = if n == 1 { solver != oracle } else { solver && !oracle };
                        row.disagreements += defect as usize;
                    }
                    report.rows.push(row);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_has_no_disagreements() {
        let grid = ExperimentGrid {
            ks: vec![3],
            voters: vec![2],
            manipulators: vec![1, 2],
            sides: vec![Side::Men, Side::Women],
            trials: 10,
            seed: 5,
        };
        let report = run_experiment(&grid, &OracleBudget::default()).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.rows.iter().all(|r| r.disagreements == 0));
        let csv = report.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 5);
    }
}
