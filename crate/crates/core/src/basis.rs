//! Generalized toric-Bernstein (GT-Bernstein) basis functions on real node sets.
//!
//! For nodes `a_0 <= ... <= a_n` with `a_0 < a_n`, coefficients `c_i > 0` and a
//! scale `l > 0`, the basis function attached to node `a_i` is
//!
//! ```text
//! beta_i(t) = c_i * h0(t)^h0(a_i) * h1(t)^h1(a_i),   h0(t) = l (t - a_0),  h1(t) = l (a_n - t)
//! ```
//!
//! and the rational basis divides `w_i beta_i(t)` by the weighted sum over all
//! nodes. Exponents grow like `l (a_n - a_0)`, so interior values are computed in
//! the log domain. At the two endpoints `0^0` is taken to be `1`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BasisError {
    #[error("a node set needs at least two nodes, got {0}")]
    EmptyNodes(usize),
    #[error("nodes must be non-decreasing (a[{index}] = {value} follows a larger node)")]
    UnsortedNodes { index: usize, value: f64 },
    #[error("degenerate node range: a_0 = a_n = {0}")]
    DegenerateRange(f64),
    #[error("coefficient c[{index}] = {value} is not positive")]
    NonPositiveCoefficient { index: usize, value: f64 },
    #[error("scale l = {0} is not positive")]
    NonPositiveScale(f64),
    #[error("weight w[{index}] = {value} is not positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("non-finite input value {0}")]
    NonFinite(f64),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("parameter {t} lies outside [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("basis index {index} out of range for {len} functions")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("rational basis denominator vanished at t = {0}")]
    ZeroDenominator(f64),
}

pub type Result<T> = std::result::Result<T, BasisError>;

/// Sorted real nodes with their positive coefficients and the common scale `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    nodes: Vec<f64>,
    coefficients: Vec<f64>,
    scale: f64,
}

/// Validates raw node data into a [`NodeSet`]. Nothing is repaired silently.
pub fn validate_node_set(nodes: &[f64], coefficients: &[f64], scale: f64) -> Result<NodeSet> {
    NodeSet::new(nodes.to_vec(), coefficients.to_vec(), scale)
}

impl NodeSet {
    pub fn new(nodes: Vec<f64>, coefficients: Vec<f64>, scale: f64) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(BasisError::EmptyNodes(nodes.len()));
        }
        if let Some(&bad) = nodes.iter().find(|v| !v.is_finite()) {
            return Err(BasisError::NonFinite(bad));
        }
        if coefficients.len() != nodes.len() {
            return Err(BasisError::LengthMismatch {
                expected: nodes.len(),
                actual: coefficients.len(),
            });
        }
        if let Some(index) = (1..nodes.len()).find(|&i| nodes[i] < nodes[i - 1]) {
            return Err(BasisError::UnsortedNodes {
                index,
                value: nodes[index],
            });
        }
        let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
        if first >= last {
            return Err(BasisError::DegenerateRange(first));
        }
        if let Some((index, &value)) = coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.is_finite() && **c > 0.0))
        {
            return Err(BasisError::NonPositiveCoefficient { index, value });
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(BasisError::NonPositiveScale(scale));
        }
        Ok(Self {
            nodes,
            coefficients,
            scale,
        })
    }

    /// Node set with every coefficient equal to one.
    pub fn with_unit_coefficients(nodes: Vec<f64>, scale: f64) -> Result<Self> {
        let coefficients = vec![1.0; nodes.len()];
        Self::new(nodes, coefficients, scale)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Number of basis functions, `n + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Polynomial-like degree `n`.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// `a_n - a_0`.
    pub fn span(&self) -> f64 {
        self.end() - self.start()
    }

    /// Offsets `k_i = a_i - a_0`.
    pub fn offsets(&self) -> Vec<f64> {
        let a0 = self.start();
        self.nodes.iter().map(|a| a - a0).collect()
    }

    /// True when two consecutive nodes coincide.
    pub fn has_repeated_nodes(&self) -> bool {
        self.nodes.windows(2).any(|w| w[0] == w[1])
    }

    pub fn check_domain(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < self.start() || t > self.end() {
            return Err(BasisError::OutOfDomain {
                t,
                lo: self.start(),
                hi: self.end(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(BasisError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Exponents `(h0(a_i), h1(a_i))`.
    fn exponents(&self, i: usize) -> (f64, f64) {
        let l = self.scale;
        (
            l * (self.nodes[i] - self.start()),
            l * (self.end() - self.nodes[i]),
        )
    }

    /// `ln beta_i(t)`, `-inf` where the function vanishes. Assumes `t` is in the domain.
    pub(crate) fn ln_basis_unchecked(&self, i: usize, t: f64) -> f64 {
        let l = self.scale;
        let (e0, e1) = self.exponents(i);
        let h0 = l * (t - self.start());
        let h1 = l * (self.end() - t);
        self.coefficients[i].ln() + ln_power(h0, e0) + ln_power(h1, e1)
    }

    fn basis_unchecked(&self, i: usize, t: f64) -> f64 {
        if t == self.start() || t == self.end() {
            let l = self.scale;
            let (e0, e1) = self.exponents(i);
            let h0 = l * (t - self.start());
            let h1 = l * (self.end() - t);
            self.coefficients[i] * power(h0, e0) * power(h1, e1)
        } else {
            self.ln_basis_unchecked(i, t).exp()
        }
    }

    /// Raw basis value `beta_i(t)`.
    pub fn eval(&self, i: usize, t: f64) -> Result<f64> {
        self.check_index(i)?;
        self.check_domain(t)?;
        Ok(self.basis_unchecked(i, t))
    }

    /// All raw basis values at `t`.
    pub fn eval_all(&self, t: f64) -> Result<BasisValues> {
        self.check_domain(t)?;
        Ok(BasisValues {
            values: (0..self.len()).map(|i| self.basis_unchecked(i, t)).collect(),
            parameter: t,
            normalized: false,
        })
    }

    /// Rational basis values `w_i beta_i(t) / sum_j w_j beta_j(t)`.
    pub fn eval_rational(&self, weights: &WeightVector, t: f64) -> Result<BasisValues> {
        weights.check_len(self.len())?;
        self.check_domain(t)?;
        let values = self.rational_row_unchecked(weights, t)?;
        Ok(BasisValues {
            values,
            parameter: t,
            normalized: true,
        })
    }

    pub(crate) fn rational_row_unchecked(&self, weights: &WeightVector, t: f64) -> Result<Vec<f64>> {
        let logs: Vec<f64> = (0..self.len())
            .map(|i| weights.weights[i].ln() + self.ln_basis_unchecked(i, t))
            .collect();
        let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(BasisError::ZeroDenominator(t));
        }
        let mut values: Vec<f64> = logs.iter().map(|v| (v - max).exp()).collect();
        let total: f64 = values.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(BasisError::ZeroDenominator(t));
        }
        for v in &mut values {
            *v /= total;
        }
        Ok(values)
    }
}

/// `h^e` with `0^0 = 1`.
fn power(h: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        h.powf(e)
    }
}

/// `ln(h^e)` with `0^0 = 1` and `0^e = 0` for `e > 0`.
fn ln_power(h: f64, e: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else if h == 0.0 {
        f64::NEG_INFINITY
    } else {
        e * h.ln()
    }
}

/// Positive weights of the rational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(BasisError::NonPositiveWeight { index, value });
        }
        Ok(Self { weights })
    }

    pub fn unit(len: usize) -> Self {
        Self {
            weights: vec![1.0; len],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.weights.len() != expected {
            return Err(BasisError::LengthMismatch {
                expected,
                actual: self.weights.len(),
            });
        }
        Ok(())
    }
}

/// Basis values at one parameter, raw or rational.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisValues {
    pub values: Vec<f64>,
    pub parameter: f64,
    pub normalized: bool,
}

impl BasisValues {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

pub fn eval_gt_basis(ns: &NodeSet, i: usize, t: f64) -> Result<f64> {
    ns.eval(i, t)
}

pub fn eval_rational_basis(ns: &NodeSet, w: &WeightVector, t: f64) -> Result<BasisValues> {
    ns.eval_rational(w, t)
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Classical Bernstein polynomial `B^n_i(x)`; test oracle for the degeneration.
pub fn bernstein_reference(n: usize, i: usize, x: f64) -> Result<f64> {
    if i > n {
        return Err(BasisError::IndexOutOfRange { index: i, len: n + 1 });
    }
    if x.is_nan() || !(0.0..=1.0).contains(&x) {
        return Err(BasisError::OutOfDomain { t: x, lo: 0.0, hi: 1.0 });
    }
    Ok(binomial(n, i) * x.powi(i as i32) * (1.0 - x).powi((n - i) as i32))
}

/// Integer node set whose GT basis at `t = n x` equals `B^n_i(x)`:
/// nodes `0..=n`, `c_i = C(n, i) / n^n`, `l = 1`.
///
/// Panics if `n == 0`.
pub fn bernstein_equivalent_nodeset(n: usize) -> NodeSet {
    assert!(n >= 1, "Bernstein-equivalent node set needs degree >= 1");
    let norm = (n as f64).powi(n as i32);
    let nodes = (0..=n).map(|i| i as f64).collect();
    let coefficients = (0..=n).map(|i| binomial(n, i) / norm).collect();
    NodeSet::new(nodes, coefficients, 1.0).expect("integer node set is valid")
}
