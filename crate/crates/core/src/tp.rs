//! Collocation matrices of the GT-Bernstein basis and total-positivity checks.
//!
//! A matrix is totally positive (TP) when every minor is non-negative and
//! strictly totally positive (STP) when every minor is positive. Minor signs are
//! judged relative to the Hadamard bound of the selected submatrix, so a minor
//! `m` passes the TP test when `m >= -tol * scale` with `scale` the product of the
//! selected row norms.

use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::basis::{BasisError, NodeSet, WeightVector};
use crate::matrix::{DenseMatrix, MatrixError};

/// Relative tolerance for "minor >= 0".
pub const DEFAULT_TP_TOLERANCE: f64 = 1e-9;

/// Largest dimension for which every minor is enumerated.
pub const MAX_EXHAUSTIVE_DIM: usize = 8;

/// Relative margin keeping random interior parameters away from the endpoints.
pub const INTERIOR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TpError {
    #[error("parameters must be strictly increasing (t[{index}] = {value})")]
    UnsortedParams { index: usize, value: f64 },
    #[error("parameter {t} lies outside the admissible range [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("invalid generalized Vandermonde spec: {0}")]
    InvalidSpec(String),
    #[error("exhaustive minor enumeration is capped at dimension {MAX_EXHAUSTIVE_DIM}, got {0}")]
    TooLargeForExhaustive(usize),
    #[error("tolerance must be a non-negative number, got {0}")]
    BadTolerance(f64),
    #[error("suite needs at least one trial")]
    NoTrials,
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub type Result<T> = std::result::Result<T, TpError>;

fn check_params(ns: &NodeSet, params: &[f64]) -> Result<()> {
    if let Some(&t) = params.iter().find(|t| t.is_nan() || **t < ns.start() || **t > ns.end()) {
        return Err(TpError::OutOfDomain {
            t,
            lo: ns.start(),
            hi: ns.end(),
        });
    }
    if let Some(index) = (1..params.len()).find(|&i| params[i] <= params[i - 1]) {
        return Err(TpError::UnsortedParams {
            index,
            value: params[index],
        });
    }
    Ok(())
}

/// `B[i][j] = beta_j(t_i)` for a strictly increasing parameter sequence.
pub fn collocation_matrix(ns: &NodeSet, params: &[f64]) -> Result<DenseMatrix> {
    check_params(ns, params)?;
    let mut entries = Vec::with_capacity(params.len() * ns.len());
    for &t in params {
        entries.extend(ns.eval_all(t)?.values);
    }
    Ok(DenseMatrix::new(params.len(), ns.len(), entries)?)
}

/// `C[i][j] = T_j(t_i)`, the rational basis at each parameter. Rows sum to one.
pub fn rational_collocation_matrix(
    ns: &NodeSet,
    w: &WeightVector,
    params: &[f64],
) -> Result<DenseMatrix> {
    check_params(ns, params)?;
    let mut entries = Vec::with_capacity(params.len() * ns.len());
    for &t in params {
        entries.extend(ns.eval_rational(w, t)?.values);
    }
    Ok(DenseMatrix::new(params.len(), ns.len(), entries)?)
}

/// Power matrix `A[i][j] = x_i^(l k_j)` with `x_i = (t_i - a_0) / (a_n - t_i)` and
/// `k_j = a_j - a_0`. It is TP exactly when the collocation matrix is.
///
/// A parameter at `a_0` gives the border row `(1, 0, ..., 0)` (`0^0 = 1`); one at
/// `a_n` gives the border row with ones in the columns where `k_j` is maximal.
/// With `strict_interior` set, endpoint parameters are rejected.
pub fn power_reduction(ns: &NodeSet, params: &[f64], strict_interior: bool) -> Result<DenseMatrix> {
    check_params(ns, params)?;
    if strict_interior {
        if let Some(&t) = params.iter().find(|&&t| t == ns.start() || t == ns.end()) {
            return Err(TpError::OutOfDomain {
                t,
                lo: ns.start(),
                hi: ns.end(),
            });
        }
    }
    let offsets = ns.offsets();
    let top = offsets[offsets.len() - 1];
    let l = ns.scale();
    let mut entries = Vec::with_capacity(params.len() * ns.len());
    for &t in params {
        if t == ns.end() {
            entries.extend(offsets.iter().map(|&k| if k == top { 1.0 } else { 0.0 }));
            continue;
        }
        let x = (t - ns.start()) / (ns.end() - t);
        entries.extend(offsets.iter().map(|&k| {
            let e = l * k;
            if e == 0.0 {
                1.0
            } else {
                x.powf(e)
            }
        }));
    }
    Ok(DenseMatrix::new(params.len(), ns.len(), entries)?)
}

/// Inputs of a generalized Vandermonde matrix `W(t; alpha)` with sign twists.
#[derive(Debug, Clone, PartialEq)]
pub struct GenVandermondeSpec {
    t: Vec<f64>,
    alpha: Vec<f64>,
    signs: Vec<i8>,
}

impl GenVandermondeSpec {
    /// `signs[j - 1]` is `s_j` for `j = 1..=n`. A `-1` sign relaxes the ordering
    /// `t_j > t_{j-1}` to `t_j >= t_{j-1}`.
    pub fn new(t: Vec<f64>, alpha: Vec<f64>, signs: Vec<i8>) -> Result<Self> {
        let invalid = |msg: String| Err(TpError::InvalidSpec(msg));
        if t.is_empty() || t.len() != alpha.len() {
            return invalid(format!("t ({}) and alpha ({}) must be equally long and non-empty", t.len(), alpha.len()));
        }
        if signs.len() + 1 != t.len() {
            return invalid(format!("expected {} signs, got {}", t.len() - 1, signs.len()));
        }
        if let Some(s) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return invalid(format!("sign {s} is not +1 or -1"));
        }
        if let Some(v) = t.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return invalid(format!("t entry {v} is not positive"));
        }
        if alpha.iter().any(|a| !a.is_finite()) || alpha.windows(2).any(|w| w[1] <= w[0]) {
            return invalid(format!("alpha {alpha:?} is not strictly increasing"));
        }
        for i in 1..t.len() {
            let ok = if signs[i - 1] == 1 {
                t[i] > t[i - 1]
            } else {
                t[i] >= t[i - 1]
            };
            if !ok {
                return invalid(format!(
                    "t[{i}] = {} violates the ordering chain with sign {}",
                    t[i],
                    signs[i - 1]
                ));
            }
        }
        Ok(Self { t, alpha, signs })
    }

    /// All signs `+1`, the plain power matrix.
    pub fn positive(t: Vec<f64>, alpha: Vec<f64>) -> Result<Self> {
        let n = t.len().saturating_sub(1);
        Self::new(t, alpha, vec![1; n])
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }
}

/// `W[i][j] = s_j t_i^alpha_j` above the diagonal and `t_i^alpha_j` on or below it.
pub fn generalized_vandermonde(spec: &GenVandermondeSpec) -> Result<DenseMatrix> {
    let n = spec.dim();
    let mut entries = Vec::with_capacity(n * n);
    for (i, &ti) in spec.t.iter().enumerate() {
        for (j, &aj) in spec.alpha.iter().enumerate() {
            let sign = if j > i { f64::from(spec.signs[j - 1]) } else { 1.0 };
            entries.push(sign * ti.powf(aj));
        }
    }
    Ok(DenseMatrix::new(n, n, entries)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TpMethod {
    /// Minors on consecutive rows and columns only. Certifies STP; advisory for TP.
    Contiguous,
    /// Every minor of every order.
    Exhaustive,
}

impl fmt::Display for TpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TpMethod::Contiguous => "contiguous",
            TpMethod::Exhaustive => "exhaustive",
        })
    }
}

/// A minor with its value relative to the Hadamard bound of its submatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TpReport {
    pub is_tp: bool,
    pub is_stp: bool,
    /// Smallest relative value among the contiguous minors.
    pub min_contiguous_minor: f64,
    /// The minor with the smallest relative value among those checked.
    pub witness: Option<MinorWitness>,
    pub method: TpMethod,
    pub minors_checked: usize,
}

/// Relative minor value `det / scale`; zero when a selected row vanishes.
fn relative_minor(m: &DenseMatrix, rows: &[usize], cols: &[usize]) -> Result<f64> {
    let det = m.minor_det(rows, cols)?;
    let scale = m.minor_scale(rows, cols);
    Ok(if scale > 0.0 { det / scale } else { 0.0 })
}

fn is_contiguous(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Checks total positivity of `m` with relative tolerance `tol`.
pub fn is_totally_positive(m: &DenseMatrix, tol: f64, method: TpMethod) -> Result<TpReport> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(TpError::BadTolerance(tol));
    }
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Err(TpError::Matrix(MatrixError::BadIndexSet(
            "empty matrix".to_string(),
        )));
    }
    if method == TpMethod::Exhaustive && rows.max(cols) > MAX_EXHAUSTIVE_DIM {
        return Err(TpError::TooLargeForExhaustive(rows.max(cols)));
    }

    let mut all_nonneg = true;
    let mut all_pos = true;
    let mut min_contiguous = f64::INFINITY;
    let mut witness: Option<MinorWitness> = None;
    let mut checked = 0usize;

    let mut visit = |r: Vec<usize>, c: Vec<usize>| -> Result<()> {
        let value = relative_minor(m, &r, &c)?;
        checked += 1;
        all_nonneg &= value >= -tol;
        all_pos &= value > tol;
        if is_contiguous(&r) && is_contiguous(&c) {
            min_contiguous = min_contiguous.min(value);
        }
        if witness.as_ref().is_none_or(|w| value < w.value) {
            witness = Some(MinorWitness {
                rows: r,
                cols: c,
                value,
            });
        }
        Ok(())
    };

    for k in 1..=rows.min(cols) {
        match method {
            TpMethod::Exhaustive => {
                for r in (0..rows).combinations(k) {
                    for c in (0..cols).combinations(k) {
                        visit(r.clone(), c)?;
                    }
                }
            }
            TpMethod::Contiguous => {
                for r0 in 0..=rows - k {
                    for c0 in 0..=cols - k {
                        visit((r0..r0 + k).collect(), (c0..c0 + k).collect())?;
                    }
                }
            }
        }
    }

    Ok(TpReport {
        is_tp: all_nonneg,
        is_stp: all_pos,
        min_contiguous_minor: min_contiguous,
        witness,
        method,
        minors_checked: checked,
    })
}

/// Position of a parameter sequence relative to the endpoints `a_0`, `a_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCase {
    Interior,
    LeftTouching,
    RightTouching,
    BothTouching,
}

impl BoundaryCase {
    pub const ALL: [BoundaryCase; 4] = [
        BoundaryCase::Interior,
        BoundaryCase::LeftTouching,
        BoundaryCase::RightTouching,
        BoundaryCase::BothTouching,
    ];

    pub fn for_trial(trial: usize) -> Self {
        Self::ALL[trial % 4]
    }

    fn touches_left(self) -> bool {
        matches!(self, BoundaryCase::LeftTouching | BoundaryCase::BothTouching)
    }

    fn touches_right(self) -> bool {
        matches!(self, BoundaryCase::RightTouching | BoundaryCase::BothTouching)
    }

    pub fn label(self) -> &'static str {
        match self {
            BoundaryCase::Interior => "interior",
            BoundaryCase::LeftTouching => "left",
            BoundaryCase::RightTouching => "right",
            BoundaryCase::BothTouching => "both",
        }
    }
}

impl fmt::Display for BoundaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Draws `count` strictly increasing parameters for the given boundary case.
/// Interior draws are uniform on `[a_0 + eps, a_n - eps]`, `eps = 1e-6 (a_n - a_0)`.
pub fn random_params<R: Rng>(ns: &NodeSet, count: usize, case: BoundaryCase, rng: &mut R) -> Vec<f64> {
    let left = usize::from(case.touches_left());
    let right = usize::from(case.touches_right());
    let inner = count.saturating_sub(left + right);
    let eps = INTERIOR_MARGIN * ns.span();
    let (lo, hi) = (ns.start() + eps, ns.end() - eps);
    loop {
        let mut draws: Vec<f64> = (0..inner).map(|_| rng.random_range(lo..=hi)).collect();
        draws.sort_by(f64::total_cmp);
        let mut params = Vec::with_capacity(count);
        if left == 1 {
            params.push(ns.start());
        }
        params.extend(draws);
        if right == 1 && params.len() < count {
            params.push(ns.end());
        }
        if params.windows(2).all(|w| w[1] > w[0]) {
            return params;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtpTrial {
    pub index: usize,
    pub case: BoundaryCase,
    pub params: Vec<f64>,
    pub report: TpReport,
}

impl NtpTrial {
    pub fn passed(&self) -> bool {
        self.report.is_tp
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NtpSuiteReport {
    pub method: TpMethod,
    pub tolerance: f64,
    pub trials: Vec<NtpTrial>,
}

impl NtpSuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &NtpTrial> {
        self.trials.iter().filter(|t| !t.passed())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn all_passed(&self) -> bool {
        self.failure_count() == 0
    }

    /// `(trials, failures)` for one boundary case.
    pub fn case_counts(&self, case: BoundaryCase) -> (usize, usize) {
        let of_case = self.trials.iter().filter(|t| t.case == case);
        let total = of_case.clone().count();
        (total, of_case.filter(|t| !t.passed()).count())
    }

    /// Trial holding the smallest relative minor over the whole suite.
    pub fn worst(&self) -> Option<&NtpTrial> {
        self.trials
            .iter()
            .filter(|t| t.report.witness.is_some())
            .min_by(|a, b| {
                let va = a.report.witness.as_ref().map_or(f64::INFINITY, |w| w.value);
                let vb = b.report.witness.as_ref().map_or(f64::INFINITY, |w| w.value);
                va.total_cmp(&vb)
            })
    }
}

/// Numerically checks the NTP property of the rational basis: every trial draws
/// an increasing parameter sequence (cycling interior, left-touching,
/// right-touching, both-touching) and tests the rational collocation matrix.
///
/// Deterministic in `seed`; trial `i` uses ChaCha stream `i`.
pub fn verify_ntp_suite(ns: &NodeSet, w: &WeightVector, trials: usize, seed: u64) -> Result<NtpSuiteReport> {
    verify_ntp_suite_with_tolerance(ns, w, trials, seed, DEFAULT_TP_TOLERANCE)
}

pub fn verify_ntp_suite_with_tolerance(
    ns: &NodeSet,
    w: &WeightVector,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<NtpSuiteReport> {
    if trials == 0 {
        return Err(TpError::NoTrials);
    }
    w.check_len(ns.len())?;
    let method = if ns.len() <= MAX_EXHAUSTIVE_DIM {
        TpMethod::Exhaustive
    } else {
        TpMethod::Contiguous
    };
    let results: Result<Vec<NtpTrial>> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let case = BoundaryCase::for_trial(index);
            let params = random_params(ns, ns.len(), case, &mut rng);
            let c = rational_collocation_matrix(ns, w, &params)?;
            let report = is_totally_positive(&c, tol, method)?;
            Ok(NtpTrial {
                index,
                case,
                params,
                report,
            })
        })
        .collect();
    Ok(NtpSuiteReport {
        method,
        tolerance: tol,
        trials: results?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{bernstein_equivalent_nodeset, validate_node_set};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn linear() -> NodeSet {
        validate_node_set(&[0.0, 1.0], &[1.0, 1.0], 1.0).unwrap()
    }

    fn circle() -> (NodeSet, WeightVector) {
        (
            validate_node_set(
                &[0.0, PI / 4.0, PI / 2.0, PI * PI / 4.0, PI],
                &[1.0, 0.9, 0.8, 0.9, 1.0],
                4.5,
            )
            .unwrap(),
            WeightVector::new(vec![0.5, 2.51, 5.5, 2.51, 0.22]).unwrap(),
        )
    }

    fn assert_matrix_eq(m: &DenseMatrix, expected: &[Vec<f64>]) {
        assert_eq!(m.rows(), expected.len());
        for (r, row) in expected.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_abs_diff_eq!(m.get(r, c), *v, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn linear_collocation() {
        let ns = linear();
        let b = collocation_matrix(&ns, &[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert_matrix_eq(&b, &[vec![2.0 / 3.0, 1.0 / 3.0], vec![1.0 / 3.0, 2.0 / 3.0]]);
        let b = collocation_matrix(&ns, &[0.0, 1.0]).unwrap();
        assert_eq!(b, DenseMatrix::identity(2));
    }

    #[test]
    fn collocation_param_errors() {
        let ns = linear();
        assert!(matches!(
            collocation_matrix(&ns, &[0.5, 0.25]),
            Err(TpError::UnsortedParams { index: 1, .. })
        ));
        assert!(matches!(
            collocation_matrix(&ns, &[0.5, 0.5]),
            Err(TpError::UnsortedParams { .. })
        ));
        assert!(matches!(
            collocation_matrix(&ns, &[-0.1, 0.5]),
            Err(TpError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn rational_collocation_examples() {
        let ns = linear();
        let c = rational_collocation_matrix(&ns, &WeightVector::unit(2), &[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert_matrix_eq(&c, &[vec![2.0 / 3.0, 1.0 / 3.0], vec![1.0 / 3.0, 2.0 / 3.0]]);
        let w = WeightVector::new(vec![2.0, 1.0]).unwrap();
        let c = rational_collocation_matrix(&ns, &w, &[0.5]).unwrap();
        assert_matrix_eq(&c, &[vec![2.0 / 3.0, 1.0 / 3.0]]);

        let (ns, w) = circle();
        let params = [0.0, 0.3, 1.1, 2.0, 2.9, PI];
        let c = rational_collocation_matrix(&ns, &w, &params).unwrap();
        for s in c.row_sums() {
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn power_reduction_examples() {
        let ns = linear();
        let a = power_reduction(&ns, &[1.0 / 3.0, 2.0 / 3.0], true).unwrap();
        assert_matrix_eq(&a, &[vec![1.0, 0.5], vec![1.0, 2.0]]);
        assert_abs_diff_eq!(a.determinant().unwrap(), 1.5, epsilon = 1e-14);

        let a1 = power_reduction(&ns, &[0.0, 0.5], false).unwrap();
        assert_matrix_eq(&a1, &[vec![1.0, 0.0], vec![1.0, 1.0]]);
        assert!(matches!(
            power_reduction(&ns, &[0.0, 0.5], true),
            Err(TpError::OutOfDomain { .. })
        ));

        let ns = validate_node_set(&[0.0, 0.4, 1.0], &[1.0; 3], 2.0).unwrap();
        let a = power_reduction(&ns, &[0.0, 0.5, 1.0], false).unwrap();
        assert_matrix_eq(
            &a,
            &[vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], vec![0.0, 0.0, 1.0]],
        );
    }

    #[test]
    fn vandermonde_examples() {
        let w = generalized_vandermonde(&GenVandermondeSpec::positive(vec![1.0, 2.0], vec![0.0, 1.0]).unwrap()).unwrap();
        assert_matrix_eq(&w, &[vec![1.0, 1.0], vec![1.0, 2.0]]);
        assert_abs_diff_eq!(w.determinant().unwrap(), 1.0, epsilon = 1e-14);

        let w = generalized_vandermonde(
            &GenVandermondeSpec::positive(vec![1.0, 2.0, 3.0], vec![0.0, 1.0, 2.0]).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(w.determinant().unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn vandermonde_spec_validation() {
        assert!(GenVandermondeSpec::positive(vec![1.0, 1.0], vec![0.0, 1.0]).is_err());
        assert!(GenVandermondeSpec::positive(vec![1.0, 2.0], vec![1.0, 1.0]).is_err());
        assert!(GenVandermondeSpec::positive(vec![0.0, 2.0], vec![0.0, 1.0]).is_err());
        assert!(GenVandermondeSpec::new(vec![1.0, 2.0], vec![0.0, 1.0], vec![2]).is_err());
        assert!(GenVandermondeSpec::new(vec![1.0, 2.0], vec![0.0, 1.0], vec![]).is_err());
        // a negative sign admits equal consecutive points
        assert!(GenVandermondeSpec::new(vec![1.0, 1.0], vec![0.0, 1.0], vec![-1]).is_ok());
    }

    #[test]
    fn mixed_sign_vandermonde_is_positive() {
        // s = (-1, +1, -1) with equal points where allowed
        let spec = GenVandermondeSpec::new(
            vec![0.5, 0.5, 1.5, 1.5],
            vec![0.0, 0.7, 1.9, 3.2],
            vec![-1, 1, -1],
        )
        .unwrap();
        let w = generalized_vandermonde(&spec).unwrap();
        assert!(w.get(0, 1) < 0.0);
        assert!(w.get(0, 2) > 0.0);
        assert!(w.determinant().unwrap() > 0.0);

        let spec = GenVandermondeSpec::new(
            vec![0.3, 0.9, 0.9, 2.0, 2.5],
            vec![-1.0, 0.2, 0.5, 1.4, 2.0],
            vec![1, -1, 1, -1],
        )
        .unwrap();
        assert!(generalized_vandermonde(&spec).unwrap().determinant().unwrap() > 0.0);
    }

    #[test]
    fn tp_small_examples() {
        let id = DenseMatrix::identity(2);
        for method in [TpMethod::Exhaustive, TpMethod::Contiguous] {
            let r = is_totally_positive(&id, DEFAULT_TP_TOLERANCE, method).unwrap();
            assert!(r.is_tp);
            assert!(!r.is_stp);
        }
        let swap = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = is_totally_positive(&swap, DEFAULT_TP_TOLERANCE, TpMethod::Exhaustive).unwrap();
        assert!(!r.is_tp);
        let w = r.witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![0, 1], vec![0, 1]));
        assert!(w.value < 0.0);
    }

    #[test]
    fn contiguous_misses_a_non_contiguous_negative_minor() {
        // every contiguous minor is non-negative but the corner 2x2 minor
        // on rows {0, 2}, columns {0, 2} is 1*1 - 2*2 < 0
        let m = DenseMatrix::from_rows(&[
            vec![1.0, 0.0, 2.0],
            vec![0.0, 0.0, 0.0],
            vec![2.0, 0.0, 1.0],
        ])
        .unwrap();
        let cont = is_totally_positive(&m, DEFAULT_TP_TOLERANCE, TpMethod::Contiguous).unwrap();
        let exh = is_totally_positive(&m, DEFAULT_TP_TOLERANCE, TpMethod::Exhaustive).unwrap();
        assert!(cont.is_tp);
        assert!(!cont.is_stp);
        assert!(!exh.is_tp);
    }

    #[test]
    fn exhaustive_cap() {
        let m = DenseMatrix::identity(9);
        assert_eq!(
            is_totally_positive(&m, 1e-9, TpMethod::Exhaustive),
            Err(TpError::TooLargeForExhaustive(9))
        );
        assert!(is_totally_positive(&m, 1e-9, TpMethod::Contiguous).unwrap().is_tp);
        assert!(is_totally_positive(&m, -1.0, TpMethod::Contiguous).is_err());
    }

    #[test]
    fn minor_count_matches_binomial_sum() {
        let m = DenseMatrix::identity(5);
        let r = is_totally_positive(&m, 1e-9, TpMethod::Exhaustive).unwrap();
        // sum_k C(5,k)^2 = C(10,5) - 1
        assert_eq!(r.minors_checked, 251);
        let r = is_totally_positive(&m, 1e-9, TpMethod::Contiguous).unwrap();
        assert_eq!(r.minors_checked, 25 + 16 + 9 + 4 + 1);
    }

    #[test]
    fn circle_collocation_on_chebyshev_points() {
        let (ns, w) = circle();
        let params: Vec<f64> = (0..5)
            .rev()
            .map(|k| {
                let x = ((2 * k + 1) as f64 * PI / 10.0).cos();
                ns.start() + (x + 1.0) / 2.0 * ns.span()
            })
            .collect();
        let b = collocation_matrix(&ns, &params).unwrap();
        let cont = is_totally_positive(&b, DEFAULT_TP_TOLERANCE, TpMethod::Contiguous).unwrap();
        assert!(cont.min_contiguous_minor > 0.0);
        let c = rational_collocation_matrix(&ns, &w, &params).unwrap();
        assert!(is_totally_positive(&c, DEFAULT_TP_TOLERANCE, TpMethod::Exhaustive).unwrap().is_tp);
    }

    #[test]
    fn ntp_suite_examples() {
        let ns = bernstein_equivalent_nodeset(3);
        let r = verify_ntp_suite(&ns, &WeightVector::unit(4), 100, 1).unwrap();
        assert_eq!(r.trials.len(), 100);
        assert!(r.all_passed());
        assert_eq!(r.method, TpMethod::Exhaustive);
        for case in BoundaryCase::ALL {
            assert_eq!(r.case_counts(case), (25, 0));
        }

        let (ns, w) = circle();
        let r = verify_ntp_suite(&ns, &w, 100, 42).unwrap();
        assert!(r.all_passed());

        // both-touching on a single node pair is the identity
        let r = verify_ntp_suite(&linear(), &WeightVector::unit(2), 4, 0).unwrap();
        let both = r.trials.iter().find(|t| t.case == BoundaryCase::BothTouching).unwrap();
        assert_eq!(both.params, vec![0.0, 1.0]);
        assert!(r.all_passed());
    }

    #[test]
    fn ntp_suite_is_deterministic() {
        let (ns, w) = circle();
        let a = verify_ntp_suite(&ns, &w, 20, 9).unwrap();
        let b = verify_ntp_suite(&ns, &w, 20, 9).unwrap();
        assert_eq!(a, b);
        let c = verify_ntp_suite(&ns, &w, 20, 10).unwrap();
        assert_ne!(a.trials[0].params, c.trials[0].params);
        assert_eq!(verify_ntp_suite(&ns, &w, 0, 9), Err(TpError::NoTrials));
    }

    #[test]
    fn random_params_respect_cases() {
        let (ns, _) = circle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in BoundaryCase::ALL {
            let p = random_params(&ns, 5, case, &mut rng);
            assert_eq!(p.len(), 5);
            assert!(p.windows(2).all(|w| w[1] > w[0]));
            assert_eq!(p[0] == ns.start(), case.touches_left());
            assert_eq!(p[4] == ns.end(), case.touches_right());
        }
    }
}
