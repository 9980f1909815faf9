//! Empirical check of the exact-cover reduction: solve both sides, compare
//! answers, and translate witnesses in both directions.

use std::fmt;

use rayon::prelude::*;

use crate::compression::{solve_fgc_with, SolveOutcome, SolverConfig};
use crate::error::Result;
use crate::matcher::MatchMode;
use crate::reduction::{
    cover_to_steps, gen_xc3, solve_xc3_bruteforce, steps_to_cover, xc3_to_fgc, Xc3Instance,
    GENERATOR_NAME,
};
use crate::report::Answer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeCheck {
    pub mode: MatchMode,
    pub answer: Answer,
    pub states_explored: usize,
    /// `None` when there was nothing to translate (a NO answer).
    pub round_trip: Option<std::result::Result<(), String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCheck {
    pub xc3: Answer,
    pub modes: Vec<ModeCheck>,
}

impl InstanceCheck {
    pub fn agrees(&self) -> bool {
        self.modes.iter().all(|m| m.answer == self.xc3)
    }

    pub fn round_trips(&self) -> bool {
        self.modes
            .iter()
            .all(|m| m.round_trip.as_ref().is_none_or(|r| r.is_ok()))
    }

    pub fn ok(&self) -> bool {
        self.agrees() && self.round_trips()
    }
}

impl fmt::Display for InstanceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xc3={}", self.xc3.as_str())?;
        for m in &self.modes {
            write!(f, " {}={}", m.mode, m.answer.as_str())?;
            match &m.round_trip {
                None => {}
                Some(Ok(())) => write!(f, " ({} round-trip ok)", m.mode)?,
                Some(Err(e)) => write!(f, " ({} round-trip FAILED: {e})", m.mode)?,
            }
        }
        if self.agrees() {
            write!(f, " -> agree: {}", self.xc3.as_str())
        } else {
            write!(f, " -> DISAGREE")
        }
    }
}

/// Solves `x` directly and through the reduction in each of `modes`. On a
/// YES answer the brute-force cover is mapped to steps and replayed, the
/// solver's steps are mapped back to a cover, and the cover-to-steps-to-cover
/// round trip must return the brute-force cover.
pub fn verify_instance(
    x: &Xc3Instance,
    modes: &[MatchMode],
    config: SolverConfig,
) -> Result<InstanceCheck> {
    let cover = solve_xc3_bruteforce(x);
    let xc3 = if cover.is_some() {
        Answer::Yes
    } else {
        Answer::No
    };
    let mut checks = Vec::with_capacity(modes.len());
    for &mode in modes {
        let reduced = xc3_to_fgc(x, mode)?;
        let (outcome, stats) = solve_fgc_with(&reduced.instance, config)?;
        let answer = match outcome {
            SolveOutcome::Yes(_) => Answer::Yes,
            SolveOutcome::No => Answer::No,
            SolveOutcome::Inconclusive => Answer::Inconclusive,
        };
        let round_trip = match (&cover, outcome.witness()) {
            (Some(cover), Some(found)) => Some(
                (|| {
                    let steps = cover_to_steps(&reduced, cover)?;
                    let back = steps_to_cover(&reduced, &steps)?;
                    if back != *cover {
                        return Err(crate::Error::InvalidWitness(format!(
                            "cover {:?} came back as {:?}",
                            cover.chosen, back.chosen
                        )));
                    }
                    steps_to_cover(&reduced, found)?;
                    Ok(())
                })()
                .map_err(|e| e.to_string()),
            ),
            _ => None,
        };
        checks.push(ModeCheck {
            mode,
            answer,
            states_explored: stats.states_explored,
            round_trip,
        });
    }
    Ok(InstanceCheck { xc3, modes: checks })
}

/// Parameters of a generated verification batch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatchSpec {
    pub k: usize,
    pub count: usize,
    /// Instance `i` gets `k + (seed_i mod (max_sets - k + 1))` sets.
    pub max_sets: usize,
    pub seed: u64,
}

impl BatchSpec {
    /// Seed, set count, and planting of instance `i`. Even indices are planted.
    pub fn instance_params(&self, i: usize) -> (u64, usize, bool) {
        let seed = self.seed.wrapping_add(i as u64);
        let spread = (self.max_sets.saturating_sub(self.k) + 1) as u64;
        let sets = self.k + (seed % spread) as usize;
        (seed, sets, i.is_multiple_of(2))
    }

    pub fn instance(&self, i: usize) -> Result<Xc3Instance> {
        let (seed, sets, planted) = self.instance_params(i);
        gen_xc3(self.k, sets, seed, planted)
    }
}

#[derive(Clone, Debug)]
pub struct BatchReport {
    pub spec: BatchSpec,
    pub lines: Vec<String>,
    pub checked: usize,
    pub agreed: usize,
    pub failures: usize,
}

impl BatchReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for BatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "batch k={} count={} sets<={} seed={} generator={}",
            self.spec.k, self.spec.count, self.spec.max_sets, self.spec.seed, GENERATOR_NAME
        )?;
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        writeln!(
            f,
            "{}/{} agreement, {} failure(s)",
            self.agreed, self.checked, self.failures
        )
    }
}

/// Generates and verifies `spec.count` instances. Instances run in
/// parallel; lines are reported in instance order.
pub fn run_batch(
    spec: BatchSpec,
    modes: &[MatchMode],
    config: SolverConfig,
) -> Result<BatchReport> {
    let results: Vec<(String, bool, bool)> = (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let (seed, sets, planted) = spec.instance_params(i);
            let x = spec.instance(i)?;
            let check = verify_instance(&x, modes, config)?;
            let tag = if planted { "planted" } else { "random" };
            let line = format!("instance {i} seed={seed} sets={sets} {tag}: {check}");
            Ok((line, check.agrees(), check.ok()))
        })
        .collect::<Result<_>>()?;
    Ok(BatchReport {
        spec,
        checked: results.len(),
        agreed: results.iter().filter(|r| r.1).count(),
        failures: results.iter().filter(|r| !r.2).count(),
        lines: results.into_iter().map(|r| r.0).collect(),
    })
}
