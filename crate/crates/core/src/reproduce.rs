//! The circle and helix fitting experiments: sampled data, GT-Bezier and
//! baseline fit problems, and the error tables at fixed checkpoints.
//!
//! The GT-Bezier node set of each experiment uses the printed parameters
//! rescaled to `[0, 1]`. The rational basis only depends on `l (a_j - a_0)`
//! through the ratio `(t - a_0) / (a_n - t)`, so this is the same as keeping the
//! printed nodes with scale `l / (a_n - a_0)`. Baseline Bezier curves live on
//! `[0, n]` and use the same relative parameter spacing.

use std::f64::consts::PI;

use thiserror::Error;

use crate::basis::{binomial, bernstein_equivalent_nodeset, NodeSet, WeightVector};
use crate::curve::ControlPolygon;
use crate::pia::{pia_init, pia_run, FitProblem, PiaError, PiaState};

pub const CIRCLE_CHECKPOINTS: [usize; 4] = [1, 5, 10, 20];
pub const HELIX_CHECKPOINTS: [usize; 4] = [1, 10, 20, 30];

pub const CIRCLE_COEFFICIENTS: [f64; 5] = [1.0, 0.9, 0.8, 0.9, 1.0];
pub const CIRCLE_SCALE: f64 = 4.5;
pub const CIRCLE_WEIGHTS: [f64; 5] = [0.5, 2.51, 5.5, 2.51, 0.22];

pub const HELIX_POINTS: usize = 31;
pub const HELIX_SCALE: f64 = 31.1;

pub const GT_LABEL: &str = "gt-bezier";
pub const BEZIER_LABEL: &str = "bezier";
pub const RATIONAL_LABEL: &str = "rational-bezier";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Circle,
    Helix,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Circle => "circle",
            Experiment::Helix => "helix",
        }
    }

    pub fn checkpoints(self) -> &'static [usize] {
        match self {
            Experiment::Circle => &CIRCLE_CHECKPOINTS,
            Experiment::Helix => &HELIX_CHECKPOINTS,
        }
    }

    /// Iterations needed to reach the last checkpoint.
    pub fn default_iterations(self) -> usize {
        *self.checkpoints().last().unwrap_or(&1)
    }

    /// Sample parameters, which double as the data parameters.
    pub fn params(self) -> Vec<f64> {
        match self {
            Experiment::Circle => {
                let mut t: Vec<f64> = (0..5).map(|i| i as f64 * PI / 4.0).collect();
                t[3] = PI * PI / 4.0;
                t
            }
            Experiment::Helix => {
                let step = 2.0 * PI / 30.0;
                let mut t: Vec<f64> = (0..HELIX_POINTS).map(|i| i as f64 * step).collect();
                t[3] = PI * step;
                t
            }
        }
    }

    /// Data points sampled from the circle `(cos t, sin t)` or the helix
    /// `(cos pi t, sin pi t, t / 6)` at [`Experiment::params`].
    pub fn data(self) -> Vec<Vec<f64>> {
        self.params()
            .into_iter()
            .map(|t| match self {
                Experiment::Circle => vec![t.cos(), t.sin()],
                Experiment::Helix => vec![(PI * t).cos(), (PI * t).sin(), t / 6.0],
            })
            .collect()
    }

    pub fn coefficients(self) -> Vec<f64> {
        match self {
            Experiment::Circle => CIRCLE_COEFFICIENTS.to_vec(),
            Experiment::Helix => vec![1.0 / 900.0; HELIX_POINTS],
        }
    }

    pub fn scale(self) -> f64 {
        match self {
            Experiment::Circle => CIRCLE_SCALE,
            Experiment::Helix => HELIX_SCALE,
        }
    }

    /// GT-Bezier weights. The helix uses `C(31, i)` for `i = 0..=30`, as printed.
    pub fn weights(self) -> Vec<f64> {
        match self {
            Experiment::Circle => CIRCLE_WEIGHTS.to_vec(),
            Experiment::Helix => (0..HELIX_POINTS).map(|i| binomial(31, i)).collect(),
        }
    }

    /// Node set on the printed parameters without rescaling.
    pub fn raw_nodeset(self) -> NodeSet {
        NodeSet::new(self.params(), self.coefficients(), self.scale()).expect("valid experiment nodes")
    }

    /// Node set actually used for the GT-Bezier fit (parameters rescaled to `[0, 1]`).
    pub fn nodeset(self) -> NodeSet {
        NodeSet::new(rescale(&self.params(), 1.0), self.coefficients(), self.scale())
            .expect("valid experiment nodes")
    }

    pub fn gt_problem(self) -> FitProblem {
        let ns = self.nodeset();
        let params = ns.nodes().to_vec();
        let weights = WeightVector::new(self.weights()).expect("positive weights");
        FitProblem::new(self.polygon(), params, ns, weights).expect("consistent experiment")
    }

    pub fn bezier_problem(self) -> FitProblem {
        let n = self.params().len() - 1;
        self.baseline(WeightVector::unit(n + 1))
    }

    pub fn rational_bezier_problem(self) -> FitProblem {
        self.baseline(WeightVector::new(self.weights()).expect("positive weights"))
    }

    fn baseline(self, weights: WeightVector) -> FitProblem {
        let n = self.params().len() - 1;
        let params = rescale(&self.params(), n as f64);
        FitProblem::new(self.polygon(), params, bernstein_equivalent_nodeset(n), weights)
            .expect("consistent experiment")
    }

    fn polygon(self) -> ControlPolygon {
        ControlPolygon::new(&self.data()).expect("finite samples")
    }

    /// The labelled fits compared in this experiment: GT-Bezier first, then baselines.
    pub fn problems(self) -> Vec<(&'static str, FitProblem)> {
        let mut out = vec![(GT_LABEL, self.gt_problem()), (BEZIER_LABEL, self.bezier_problem())];
        if self == Experiment::Circle {
            out.push((RATIONAL_LABEL, self.rational_bezier_problem()));
        }
        out
    }
}

/// Maps `t` affinely onto `[0, length]`, endpoints exact.
pub fn rescale(t: &[f64], length: f64) -> Vec<f64> {
    let (lo, hi) = (t[0], t[t.len() - 1]);
    let last = t.len() - 1;
    t.iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 {
                0.0
            } else if i == last {
                length
            } else {
                length * (v - lo) / (hi - lo)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("checkpoints must be strictly increasing and start at 1: {0:?}")]
    BadCheckpoints(Vec<usize>),
    #[error("row {row} has {actual} values, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        actual: usize,
    },
    #[error("error value {value} in row {row} is negative or not finite")]
    BadValue { row: usize, value: f64 },
    #[error("labels ({labels}) and rows ({rows}) differ in count")]
    LabelCount { labels: usize, rows: usize },
}

/// Fit errors per curve at fixed iteration checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    labels: Vec<String>,
    checkpoints: Vec<usize>,
    errors: Vec<Vec<f64>>,
}

impl ErrorTable {
    pub fn new(labels: Vec<String>, checkpoints: Vec<usize>, errors: Vec<Vec<f64>>) -> Result<Self, TableError> {
        if checkpoints.first().is_some_and(|&c| c == 0) || checkpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(TableError::BadCheckpoints(checkpoints));
        }
        if labels.len() != errors.len() {
            return Err(TableError::LabelCount {
                labels: labels.len(),
                rows: errors.len(),
            });
        }
        for (row, values) in errors.iter().enumerate() {
            if values.len() != checkpoints.len() {
                return Err(TableError::RowLength {
                    row,
                    expected: checkpoints.len(),
                    actual: values.len(),
                });
            }
            if let Some(&value) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(TableError::BadValue { row, value });
            }
        }
        Ok(Self {
            labels,
            checkpoints,
            errors,
        })
    }

    /// Table from finished runs; checkpoints beyond a run's history are dropped.
    pub fn from_runs(runs: &[(String, PiaState)], checkpoints: &[usize]) -> Result<Self, TableError> {
        let reachable: Vec<usize> = checkpoints
            .iter()
            .copied()
            .filter(|&c| runs.iter().all(|(_, s)| s.error_at(c).is_some()))
            .collect();
        let errors = runs
            .iter()
            .map(|(_, s)| reachable.iter().map(|&c| s.error_at(c).unwrap_or(0.0)).collect())
            .collect();
        Self::new(runs.iter().map(|(l, _)| l.clone()).collect(), reachable, errors)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn checkpoints(&self) -> &[usize] {
        &self.checkpoints
    }

    pub fn row(&self, label: &str) -> Option<&[f64]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.errors[i].as_slice())
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.errors.iter().map(Vec::as_slice))
    }
}

/// Outcome of one experiment: every labelled run and its error table.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub experiment: Experiment,
    pub runs: Vec<(String, FitProblem, PiaState)>,
    pub table: ErrorTable,
}

/// Runs every fit of `experiment` for exactly `iterations` steps (`tol = 0`).
/// With zero iterations the states hold the initial curves only.
pub fn run_experiment(experiment: Experiment, iterations: usize) -> Result<ExperimentOutcome, PiaError> {
    let mut runs = Vec::new();
    for (label, problem) in experiment.problems() {
        let state = if iterations == 0 {
            pia_init(&problem)
        } else {
            pia_run(&problem, iterations, 0.0)?
        };
        runs.push((label.to_string(), problem, state));
    }
    let pairs: Vec<(String, PiaState)> = runs.iter().map(|(l, _, s)| (l.clone(), s.clone())).collect();
    let table = ErrorTable::from_runs(&pairs, experiment.checkpoints()).expect("valid checkpoints");
    Ok(ExperimentOutcome {
        experiment,
        runs,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_parameters_are_increasing() {
        for e in [Experiment::Circle, Experiment::Helix] {
            let t = e.params();
            assert!(t.windows(2).all(|w| w[1] > w[0]), "{t:?}");
        }
        let t = Experiment::Circle.params();
        assert!(t[3] > t[2] && t[3] < t[4]);
        assert_eq!(Experiment::Helix.params().len(), 31);
    }

    #[test]
    fn problem_sizes() {
        assert_eq!(pia_init(&Experiment::Circle.gt_problem()).control.len(), 5);
        assert_eq!(pia_init(&Experiment::Helix.gt_problem()).control.len(), 31);
        assert_eq!(Experiment::Circle.problems().len(), 3);
        assert_eq!(Experiment::Helix.problems().len(), 2);
        assert_eq!(Experiment::Helix.weights()[0], 1.0);
        assert_eq!(Experiment::Helix.weights()[30], 31.0);
    }

    #[test]
    fn rescale_keeps_relative_spacing() {
        let r = rescale(&[1.0, 2.0, 5.0], 4.0);
        assert_eq!(r, vec![0.0, 1.0, 4.0]);
    }

    #[test]
    fn table_validation() {
        let labels = vec!["a".to_string()];
        assert!(ErrorTable::new(labels.clone(), vec![1, 5], vec![vec![0.1, 0.01]]).is_ok());
        assert!(matches!(
            ErrorTable::new(labels.clone(), vec![5, 1], vec![vec![0.1, 0.01]]),
            Err(TableError::BadCheckpoints(_))
        ));
        assert!(matches!(
            ErrorTable::new(labels.clone(), vec![1, 5], vec![vec![0.1, -0.01]]),
            Err(TableError::BadValue { .. })
        ));
        assert!(matches!(
            ErrorTable::new(labels, vec![1], vec![vec![0.1, 0.2]]),
            Err(TableError::RowLength { .. })
        ));
    }

    #[test]
    fn table_layouts() {
        let circle = run_experiment(Experiment::Circle, 20).unwrap();
        assert_eq!(circle.table.checkpoints(), &CIRCLE_CHECKPOINTS);
        assert_eq!(circle.table.labels().len(), 3);
        let helix = run_experiment(Experiment::Helix, 30).unwrap();
        assert_eq!(helix.table.checkpoints(), &HELIX_CHECKPOINTS);
        assert_eq!(helix.table.labels().len(), 2);
        let initial = run_experiment(Experiment::Circle, 0).unwrap();
        assert!(initial.table.checkpoints().is_empty());
        assert!(initial.runs.iter().all(|(_, p, s)| &s.control == p.data()));
    }
}
