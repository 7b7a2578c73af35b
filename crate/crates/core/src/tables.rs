//! The nine built-in experiment grids.

use serde::Serialize;

use crate::decoder::AssignmentStrategy;
use crate::error::{usage, Result};
use crate::galois::FieldDescriptor;
use crate::rscode::{CodeDescriptor, EvalPoints};
use crate::simulator::{run_trials_with, MessageMode, TrialConfig, TrialReport};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableSpec {
    pub id: u32,
    pub title: &'static str,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub series: Vec<AssignmentStrategy>,
    pub taus: &'static [usize],
}

const COUNT: AssignmentStrategy = AssignmentStrategy::Count;
const B3: AssignmentStrategy = AssignmentStrategy::Threshold { b: 3 };
const B2: AssignmentStrategy = AssignmentStrategy::Threshold { b: 2 };

pub fn table(id: u32) -> Result<TableSpec> {
    let (title, m, n, k, l, series, taus): (_, _, _, _, _, Vec<_>, &'static [usize]) = match id {
        1 => (
            "[315,14,250] repeated code, constituent [63,14,50], count",
            6,
            63,
            14,
            5,
            vec![COUNT],
            &[227, 228, 229, 230, 232, 233, 234],
        ),
        2 => (
            "[315,14,250] repeated code, constituent [63,14,50], threshold",
            6,
            63,
            14,
            5,
            vec![B3, B2],
            &[185, 186, 187, 188, 190, 219, 220],
        ),
        3 => ("[315,14,302] RS code, multiplicity one", 9, 315, 14, 1, vec![COUNT], &[229, 230, 231]),
        4 => (
            "[315,40,120] repeated code, constituent [63,40,24], count",
            6,
            63,
            40,
            5,
            vec![COUNT],
            &[155, 156, 157, 160, 165, 170],
        ),
        5 => (
            "[315,40,120] repeated code, constituent [63,40,24], threshold",
            6,
            63,
            40,
            5,
            vec![B3, B2],
            &[113, 114, 115, 116, 117, 150, 152, 153],
        ),
        6 => ("[315,40,276] RS code, multiplicity one", 9, 315, 40, 1, vec![COUNT], &[175, 176, 177, 178]),
        7 => (
            "[315,54,50] repeated code, constituent [63,54,10], count",
            6,
            63,
            54,
            5,
            vec![COUNT],
            &[95, 96, 98, 100, 105, 110, 111],
        ),
        8 => (
            "[315,54,50] repeated code, constituent [63,54,10], threshold",
            6,
            63,
            54,
            5,
            vec![B3, B2],
            &[60, 61, 64, 65, 88, 89, 90],
        ),
        9 => ("[315,54,262] RS code, multiplicity one", 9, 315, 54, 1, vec![COUNT], &[150, 155, 156, 157]),
        _ => return usage(format!("unknown table id {id}; expected 1..=9")),
    };
    Ok(TableSpec { id, title, m, n, k, l, series, taus })
}

impl TableSpec {
    pub fn code(&self) -> CodeDescriptor {
        CodeDescriptor {
            field: FieldDescriptor { p: 2, m: self.m, modulus: None },
            n: self.n,
            k: self.k,
            eval_points: EvalPoints::default(),
        }
    }

    pub fn config(&self, strategy: AssignmentStrategy, tau: usize, trials: usize, seed: u64) -> TrialConfig {
        TrialConfig {
            code: self.code(),
            l: self.l,
            strategy,
            tau,
            trials,
            seed,
            errors: Default::default(),
            message: MessageMode::Zero,
        }
    }

    /// Every (series, tau) row, series-major.
    pub fn configs(&self, trials: usize, seed: u64) -> Vec<TrialConfig> {
        self.series
            .iter()
            .flat_map(|&s| self.taus.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.config(s, t, trials, seed))
            .collect()
    }

    pub fn run(&self, trials: usize, seed: u64) -> Result<Vec<TrialReport>> {
        let code = crate::decoder::RepeatedCode::new(self.code().build()?, self.l)?;
        self.configs(trials, seed).iter().map(|c| run_trials_with(&code, c)).collect()
    }
}
