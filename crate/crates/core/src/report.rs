//! Solver reports shared by the CLI and the verification batches.

use serde::Serialize;

use crate::compression::{FgcInstance, SolveOutcome, SolveStats};
use crate::error::Result;
use crate::reduction::CoverWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Outcome of one solver run. Wall time is reported separately so that
/// serialized reports stay byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub answer: Answer,
    /// Compression steps (FGC runs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<usize>>,
    /// Chosen set indices (exact-cover runs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<Vec<usize>>,
    /// Node counts of every graph along the witness, starting with the input.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub intermediate_sizes: Vec<usize>,
    /// Set when the input is already isomorphic to the target.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub empty_sequence: bool,
    pub states_explored: usize,
    pub memo_hits: usize,
}

impl RunReport {
    pub fn from_fgc(
        instance: &FgcInstance,
        outcome: &SolveOutcome,
        stats: SolveStats,
    ) -> Result<Self> {
        let (answer, steps, sizes) = match outcome {
            SolveOutcome::Yes(w) => (
                Answer::Yes,
                Some(w.steps.clone()),
                w.intermediate_sizes(instance)?,
            ),
            SolveOutcome::No => (Answer::No, Some(Vec::new()), Vec::new()),
            SolveOutcome::Inconclusive => (Answer::Inconclusive, None, Vec::new()),
        };
        Ok(RunReport {
            answer,
            empty_sequence: steps.as_ref().is_some_and(Vec::is_empty) && answer == Answer::Yes,
            steps,
            chosen: None,
            intermediate_sizes: sizes,
            states_explored: stats.states_explored,
            memo_hits: stats.memo_hits,
        })
    }

    pub fn from_xc3(cover: Option<&CoverWitness>) -> Self {
        RunReport {
            answer: if cover.is_some() {
                Answer::Yes
            } else {
                Answer::No
            },
            steps: None,
            chosen: Some(
                cover
                    .map(|c| c.chosen.iter().copied().collect())
                    .unwrap_or_default(),
            ),
            intermediate_sizes: Vec::new(),
            empty_sequence: false,
            states_explored: 0,
            memo_hits: 0,
        }
    }
}
