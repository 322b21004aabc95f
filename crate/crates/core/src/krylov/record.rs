use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geneig::RegularizedSolution;
use crate::scalar::Real;

/// Number of consecutive iterations without growth of the retained subspace
/// after which a run is declared exhausted.
pub const STAGNATION_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ConvergedByDelta,
    MaxIterReached,
    SubspaceExhausted,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::ConvergedByDelta => "converged_by_delta",
            Termination::MaxIterReached => "max_iter_reached",
            Termination::SubspaceExhausted => "subspace_exhausted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T: Real> {
    pub iter: usize,
    /// Lowest Ritz value.
    pub e_min: T,
    /// `e_min` minus the exact ground energy, when known.
    pub e_exact_gap: Option<T>,
    pub cond_s: T,
    pub kept_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord<T: Real> {
    pub rows: Vec<ConvergenceRow<T>>,
    /// `None` only while a run is in progress.
    pub status: Option<Termination>,
}

impl<T: Real> ConvergenceRecord<T> {
    pub fn final_row(&self) -> Option<&ConvergenceRow<T>> {
        self.rows.last()
    }

    pub fn final_energy(&self) -> Option<T> {
        self.rows.last().map(|r| r.e_min)
    }

    /// First iteration whose Ritz value lies within `threshold` of the exact
    /// ground energy.
    pub fn first_iter_within(&self, threshold: T) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.e_exact_gap.is_some_and(|g| g.abs() <= threshold))
            .map(|r| r.iter)
    }
}

/// Applies the stopping rules to one GEVP solution per iteration.
#[derive(Debug, Clone)]
pub struct ConvergenceMonitor<T: Real> {
    stop_delta: T,
    max_iter: usize,
    reference: Option<T>,
    stagnant: usize,
    record: ConvergenceRecord<T>,
}

impl<T: Real> ConvergenceMonitor<T> {
    pub fn new(stop_delta: T, max_iter: usize, reference: Option<T>) -> Self {
        Self {
            stop_delta,
            max_iter,
            reference,
            stagnant: 0,
            record: ConvergenceRecord {
                rows: Vec::new(),
                status: None,
            },
        }
    }

    /// Records iteration `iter` (0 for the initial one-vector subspace) and
    /// returns the termination reason if the run should stop.
    pub fn observe(&mut self, iter: usize, sol: &RegularizedSolution<T>) -> Option<Termination> {
        let e_min = sol.lowest();
        let prev = self.record.rows.last().copied();
        self.record.rows.push(ConvergenceRow {
            iter,
            e_min,
            e_exact_gap: self.reference.map(|r| e_min - r),
            cond_s: sol.cond_s,
            kept_dim: sol.kept_dim,
        });
        let status = match prev {
            Some(p) => {
                if sol.kept_dim <= p.kept_dim {
                    self.stagnant += 1;
                } else {
                    self.stagnant = 0;
                }
                if (e_min - p.e_min).abs() < self.stop_delta {
                    Some(Termination::ConvergedByDelta)
                } else if self.stagnant >= STAGNATION_LIMIT {
                    Some(Termination::SubspaceExhausted)
                } else if iter >= self.max_iter {
                    Some(Termination::MaxIterReached)
                } else {
                    None
                }
            }
            None if iter >= self.max_iter => Some(Termination::MaxIterReached),
            None => None,
        };
        if status.is_some() {
            self.record.status = status;
        }
        status
    }

    pub fn record(&self) -> &ConvergenceRecord<T> {
        &self.record
    }

    pub fn into_record(self) -> ConvergenceRecord<T> {
        self.record
    }
}
