//! Solver results, options and errors shared by every decision procedure.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::budget::{Budget, Meter};
use crate::coloring::{verify_certificate, BCertificate, Color, Precoloring};
use crate::graph::Graph;

/// Which procedure produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exact,
    KEqM,
    KEqDelta,
    KEqMMinus1,
    FptDelta,
    FptEll,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Exact,
        Algorithm::KEqM,
        Algorithm::KEqDelta,
        Algorithm::KEqMMinus1,
        Algorithm::FptDelta,
        Algorithm::FptEll,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::KEqM => "m",
            Algorithm::KEqDelta => "delta",
            Algorithm::KEqMMinus1 => "m-minus-1",
            Algorithm::FptDelta => "fpt-delta",
            Algorithm::FptEll => "fpt-ell",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes(BCertificate),
    No,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
    /// Instances where assigning missing colors to a b-vertex's neighbors by
    /// an arbitrary bijection would have produced a monochromatic edge.
    pub naive_bijection_conflicts: u64,
    pub fallback_used: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub answer: Answer,
    pub algorithm: Algorithm,
    pub case_taken: Option<&'static str>,
    pub stats: SolveStats,
    /// Minimal b-precoloring the certificate extends, when one was used.
    pub witness_precoloring: Option<Precoloring>,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }

    pub fn certificate(&self) -> Option<&BCertificate> {
        match &self.answer {
            Answer::Yes(c) => Some(c),
            Answer::No => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// How the exact solver searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExactMode {
    /// Minimal b-precolorings followed by exact extension.
    #[default]
    PrecoloringDriven,
    /// Backtracking over total colorings with b-vertex feasibility pruning.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Worker threads for the enumeration-driven searches; 1 is sequential.
    pub jobs: usize,
    pub exact_mode: ExactMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::unlimited(),
            jobs: 1,
            exact_mode: ExactMode::default(),
        }
    }
}

/// Bookkeeping for one solver invocation.
pub(crate) struct Run {
    pub meter: Meter,
    pub jobs: usize,
    pub exact_mode: ExactMode,
    start: Instant,
    pub naive_bijection_conflicts: u64,
    pub fallback_used: bool,
}

impl Run {
    pub fn new(opts: &SolveOptions) -> Self {
        Run {
            meter: Meter::new(opts.budget),
            jobs: opts.jobs.max(1),
            exact_mode: opts.exact_mode,
            start: Instant::now(),
            naive_bijection_conflicts: 0,
            fallback_used: false,
        }
    }

    pub fn exhausted(&self) -> SolveError {
        SolveError::BudgetExhausted {
            nodes: self.meter.nodes(),
        }
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.meter.nodes(),
            elapsed: self.start.elapsed(),
            naive_bijection_conflicts: self.naive_bijection_conflicts,
            fallback_used: self.fallback_used,
        }
    }

    pub fn no(&self, algorithm: Algorithm, case_taken: Option<&'static str>) -> SolveOutcome {
        SolveOutcome {
            answer: Answer::No,
            algorithm,
            case_taken,
            stats: self.stats(),
            witness_precoloring: None,
        }
    }

    /// Wraps a total coloring into a verified YES outcome.
    pub fn yes(
        &self,
        g: &Graph,
        k: usize,
        colors: Vec<Color>,
        algorithm: Algorithm,
        case_taken: Option<&'static str>,
        witness: Option<Precoloring>,
    ) -> Result<SolveOutcome, SolveError> {
        let cert = BCertificate::from_coloring(g, k, colors.clone()).ok_or_else(|| {
            SolveError::Internal(format!("{algorithm} produced a coloring that is not a b-coloring: {colors:?}"))
        })?;
        let report = verify_certificate(g, k, &cert);
        if !report.passed() {
            return Err(SolveError::Internal(format!(
                "{algorithm} certificate rejected: {:?}",
                report.violations
            )));
        }
        Ok(SolveOutcome {
            answer: Answer::Yes(cert),
            algorithm,
            case_taken,
            stats: self.stats(),
            witness_precoloring: witness,
        })
    }
}
