//! Progressive iterative approximation (PIA) of data points by a GT-Bezier curve.
//!
//! Starting from control points equal to the data, each step moves every control
//! point by its adjustment vector `P_i - C^k(t_i)`. With a normalized totally
//! positive basis the curves converge to the interpolant of the data.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::basis::{NodeSet, WeightVector};
use crate::curve::{combine, ControlPolygon, CurveError, GTBezierCurve};
use crate::matrix::DenseMatrix;
use crate::tp::{rational_collocation_matrix, TpError};

/// A run is declared divergent once the error exceeds this multiple of the first error.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PiaError {
    #[error("count mismatch: {what} has {actual} entries, expected {expected}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("bad fitting parameters: {0}")]
    BadParams(String),
    #[error("iteration count must be at least 1")]
    NoIterations,
    #[error("tolerance must be a non-negative number, got {0}")]
    BadTolerance(f64),
    #[error("PIA diverged at iteration {iteration}: error {error:e} vs initial {initial:e}")]
    Diverged {
        iteration: usize,
        error: f64,
        initial: f64,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Tp(#[from] TpError),
}

pub type Result<T> = std::result::Result<T, PiaError>;

/// Data points, their parameters, and the basis used to fit them.
#[derive(Debug, Clone, PartialEq)]
pub struct FitProblem {
    data: ControlPolygon,
    params: Vec<f64>,
    nodeset: NodeSet,
    weights: WeightVector,
    collocation: DenseMatrix,
}

impl FitProblem {
    pub fn new(
        data: ControlPolygon,
        params: Vec<f64>,
        nodeset: NodeSet,
        weights: WeightVector,
    ) -> Result<Self> {
        let n = nodeset.len();
        for (what, actual) in [
            ("data points", data.len()),
            ("parameters", params.len()),
            ("weights", weights.len()),
        ] {
            if actual != n {
                return Err(PiaError::CountMismatch {
                    what,
                    expected: n,
                    actual,
                });
            }
        }
        let collocation = rational_collocation_matrix(&nodeset, &weights, &params).map_err(|e| match e {
            TpError::UnsortedParams { .. } | TpError::OutOfDomain { .. } => PiaError::BadParams(e.to_string()),
            other => PiaError::Tp(other),
        })?;
        Ok(Self {
            data,
            params,
            nodeset,
            weights,
            collocation,
        })
    }

    pub fn data(&self) -> &ControlPolygon {
        &self.data
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn nodeset(&self) -> &NodeSet {
        &self.nodeset
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Rational collocation matrix at the data parameters.
    pub fn collocation(&self) -> &DenseMatrix {
        &self.collocation
    }

    /// The GT-Bezier curve with the given control points.
    pub fn curve(&self, control: &ControlPolygon) -> Result<GTBezierCurve> {
        Ok(GTBezierCurve::new(
            self.nodeset.clone(),
            self.weights.clone(),
            control.clone(),
        )?)
    }
}

/// Control points after `iteration` steps and the error recorded at each step.
#[derive(Debug, Clone, PartialEq)]
pub struct PiaState {
    pub control: ControlPolygon,
    pub iteration: usize,
    pub error_history: Vec<f64>,
}

impl PiaState {
    /// Error recorded at 1-based checkpoint `k`, i.e. the `k`-th entry of the history.
    pub fn error_at(&self, checkpoint: usize) -> Option<f64> {
        checkpoint
            .checked_sub(1)
            .and_then(|i| self.error_history.get(i).copied())
    }

    pub fn last_error(&self) -> Option<f64> {
        self.error_history.last().copied()
    }
}

pub fn pia_init(p: &FitProblem) -> PiaState {
    PiaState {
        control: p.data.clone(),
        iteration: 0,
        error_history: Vec::new(),
    }
}

/// `P_i - C^k(t_i)` for each data point.
pub fn adjustment_vectors(p: &FitProblem, s: &PiaState) -> Result<Vec<Vec<f64>>> {
    if s.control.len() != p.data.len() || s.control.dim() != p.data.dim() {
        return Err(PiaError::CountMismatch {
            what: "state control points",
            expected: p.data.len(),
            actual: s.control.len(),
        });
    }
    Ok(p.data
        .points()
        .enumerate()
        .map(|(i, target)| {
            let on_curve = combine(&s.control, p.collocation.row(i));
            target.iter().zip(&on_curve).map(|(a, b)| a - b).collect()
        })
        .collect())
}

fn max_norm(vectors: &[Vec<f64>]) -> f64 {
    vectors
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// One PIA step: moves the control points and records `max_i |Delta_i|`.
pub fn pia_step(p: &FitProblem, s: &PiaState) -> Result<PiaState> {
    let deltas = adjustment_vectors(p, s)?;
    let error = max_norm(&deltas);
    let control = s.control.translated(&deltas)?;
    let mut error_history = s.error_history.clone();
    error_history.push(error);
    Ok(PiaState {
        control,
        iteration: s.iteration + 1,
        error_history,
    })
}

/// Iterates until the recorded error is at most `tol` or `max_iter` steps ran.
pub fn pia_run(p: &FitProblem, max_iter: usize, tol: f64) -> Result<PiaState> {
    if max_iter == 0 {
        return Err(PiaError::NoIterations);
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(PiaError::BadTolerance(tol));
    }
    let mut state = pia_init(p);
    while state.iteration < max_iter {
        state = pia_step(p, &state)?;
        let error = state.last_error().unwrap_or(0.0);
        let initial = state.error_history[0];
        if !error.is_finite() || (initial > 0.0 && error > DIVERGENCE_FACTOR * initial) {
            return Err(PiaError::Diverged {
                iteration: state.iteration,
                error,
                initial,
            });
        }
        if error <= tol {
            break;
        }
    }
    Ok(state)
}

/// Spectral radius of `I - C` for the rational collocation matrix `C`.
/// A value below one certifies convergence of the iteration.
pub fn iteration_spectrum(p: &FitProblem) -> f64 {
    spectral_radius_of_complement(&p.collocation)
}

/// `max |1 - lambda|` over the eigenvalues `lambda` of a square matrix.
pub fn spectral_radius_of_complement(c: &DenseMatrix) -> f64 {
    let n = c.rows();
    let m = DMatrix::from_row_slice(n, c.cols(), c.entries());
    m.complex_eigenvalues()
        .iter()
        .map(|lambda| (1.0 - lambda).norm())
        .fold(0.0, f64::max)
}

/// True when `history[k + window] < history[k]` for every admissible `k`.
pub fn is_window_monotone(history: &[f64], window: usize) -> bool {
    history
        .iter()
        .zip(history.iter().skip(window))
        .all(|(early, late)| late < early)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::validate_node_set;
    use approx::assert_abs_diff_eq;

    fn linear_problem(data: &[[f64; 2]]) -> FitProblem {
        let points: Vec<Vec<f64>> = data.iter().map(|p| p.to_vec()).collect();
        FitProblem::new(
            ControlPolygon::new(&points).unwrap(),
            vec![0.0, 1.0],
            validate_node_set(&[0.0, 1.0], &[1.0, 1.0], 1.0).unwrap(),
            WeightVector::unit(2),
        )
        .unwrap()
    }

    fn cubic_problem() -> FitProblem {
        let data = vec![
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            vec![2.0, -1.0],
            vec![3.0, 1.0],
        ];
        FitProblem::new(
            ControlPolygon::new(&data).unwrap(),
            vec![0.0, 0.8, 2.1, 3.0],
            validate_node_set(&[0.0, 1.0, 2.0, 3.0], &[1.0; 4], 1.0).unwrap(),
            WeightVector::new(vec![1.0, 2.0, 1.5, 1.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn problem_validation() {
        let ns = validate_node_set(&[0.0, 1.0], &[1.0, 1.0], 1.0).unwrap();
        let data = ControlPolygon::new(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            FitProblem::new(data.clone(), vec![0.0], ns.clone(), WeightVector::unit(2)),
            Err(PiaError::CountMismatch { what: "parameters", .. })
        ));
        assert!(matches!(
            FitProblem::new(data.clone(), vec![0.5, 0.2], ns.clone(), WeightVector::unit(2)),
            Err(PiaError::BadParams(_))
        ));
        assert!(matches!(
            FitProblem::new(data, vec![0.0, 2.0], ns, WeightVector::unit(2)),
            Err(PiaError::BadParams(_))
        ));
    }

    #[test]
    fn init_copies_data() {
        let p = cubic_problem();
        let s = pia_init(&p);
        assert_eq!(&s.control, p.data());
        assert_eq!(s.iteration, 0);
        assert!(s.error_history.is_empty());
    }

    #[test]
    fn endpoint_data_is_a_fixed_point() {
        let p = linear_problem(&[[0.0, 0.0], [1.0, 1.0]]);
        let s = pia_init(&p);
        let d = adjustment_vectors(&p, &s).unwrap();
        assert!(d.iter().flatten().all(|v| *v == 0.0));
        let next = pia_step(&p, &s).unwrap();
        assert_eq!(next.control, s.control);
        assert_eq!(next.error_history, vec![0.0]);

        let run = pia_run(&p, 50, 0.0).unwrap();
        assert_eq!(run.iteration, 1);
        assert_eq!(run.error_history, vec![0.0]);
    }

    #[test]
    fn step_bookkeeping() {
        let p = cubic_problem();
        let s1 = pia_step(&p, &pia_init(&p)).unwrap();
        let s2 = pia_step(&p, &s1).unwrap();
        assert_eq!(s2.iteration, 2);
        assert_eq!(s2.error_history.len(), 2);
        assert_ne!(s1.control, p.data().clone());
        assert_eq!(s2.error_at(1), Some(s2.error_history[0]));
        assert_eq!(s2.error_at(0), None);
        assert_eq!(s2.error_at(3), None);
    }

    #[test]
    fn step_error_matches_curve_residuals() {
        let p = cubic_problem();
        let mut s = pia_init(&p);
        for _ in 0..5 {
            let curve = p.curve(&s.control).unwrap();
            let expected = p
                .data()
                .points()
                .zip(p.params())
                .map(|(d, &t)| {
                    let c = curve.eval(t).unwrap();
                    d.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
                })
                .fold(0.0, f64::max);
            s = pia_step(&p, &s).unwrap();
            assert_abs_diff_eq!(s.last_error().unwrap(), expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn run_converges_and_respects_arguments() {
        let p = cubic_problem();
        let s = pia_run(&p, 500, 1e-12).unwrap();
        assert!(s.last_error().unwrap() <= 1e-12);
        assert!(s.iteration < 500);
        assert!(is_window_monotone(&s.error_history, 5));
        assert_eq!(pia_run(&p, 0, 1e-3), Err(PiaError::NoIterations));
        assert!(matches!(pia_run(&p, 3, -1.0), Err(PiaError::BadTolerance(_))));
    }

    #[test]
    fn spectrum_examples() {
        let p = linear_problem(&[[0.0, 0.0], [2.0, 1.0]]);
        assert_abs_diff_eq!(iteration_spectrum(&p), 0.0, epsilon = 1e-15);
        assert!(iteration_spectrum(&cubic_problem()) < 1.0);
    }

    #[test]
    fn spectrum_matches_power_iteration() {
        let p = cubic_problem();
        let c = p.collocation();
        let n = c.rows();
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 * 0.37).collect();
        let mut estimate = 0.0;
        for _ in 0..2000 {
            let next: Vec<f64> = (0..n)
                .map(|i| v[i] - c.row(i).iter().zip(&v).map(|(a, b)| a * b).sum::<f64>())
                .collect();
            let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            estimate = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v = next.iter().map(|x| x / norm).collect();
        }
        assert_abs_diff_eq!(iteration_spectrum(&p), estimate, epsilon = 1e-8);
    }

    #[test]
    fn window_monotonicity() {
        assert!(is_window_monotone(&[5.0, 6.0, 4.0, 5.5, 3.0], 2));
        assert!(!is_window_monotone(&[5.0, 6.0, 5.0, 6.5], 2));
        assert!(is_window_monotone(&[1.0, 2.0], 5));
    }
}
