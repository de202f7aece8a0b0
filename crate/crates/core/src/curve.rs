//! GT-Bezier curves `P(t) = sum_i P_i T_i(t)` and the classical/rational Bezier
//! baselines expressed through the same machinery.

use thiserror::Error;

use crate::basis::{bernstein_equivalent_nodeset, BasisError, NodeSet, WeightVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("a control polygon needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("points must be 2D or 3D, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("point {index} has dimension {actual}, expected {expected}")]
    MixedDimension {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("count mismatch: {what} has {actual} entries, expected {expected}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("polyline sample count must be at least 2, got {0}")]
    BadCount(usize),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

pub type Result<T> = std::result::Result<T, CurveError>;

/// Ordered points of one fixed dimension (2 or 3), stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolygon {
    dim: usize,
    coords: Vec<f64>,
}

impl ControlPolygon {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        if points.len() < 2 {
            return Err(CurveError::TooFewPoints(points.len()));
        }
        let dim = points[0].len();
        if !(2..=3).contains(&dim) {
            return Err(CurveError::UnsupportedDimension(dim));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(CurveError::MixedDimension {
                    index,
                    expected: dim,
                    actual: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(CurveError::NonFinite(index));
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim)
    }

    pub fn to_points(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }

    /// Adds `deltas[i]` to point `i`.
    pub fn translated(&self, deltas: &[Vec<f64>]) -> Result<Self> {
        if deltas.len() != self.len() {
            return Err(CurveError::CountMismatch {
                what: "adjustment vectors",
                expected: self.len(),
                actual: deltas.len(),
            });
        }
        let points: Vec<Vec<f64>> = self
            .points()
            .zip(deltas)
            .map(|(p, d)| p.iter().zip(d).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(&points)
    }

    /// Applies `f` to every point.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let points: Vec<Vec<f64>> = self.points().map(f).collect();
        Self::new(&points)
    }
}

/// Weighted combination of control points; `values` must sum to one.
pub(crate) fn combine(control: &ControlPolygon, values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; control.dim()];
    for (p, &v) in control.points().zip(values) {
        if v != 0.0 {
            for (o, x) in out.iter_mut().zip(p) {
                *o += v * x;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GTBezierCurve {
    nodeset: NodeSet,
    weights: WeightVector,
    control: ControlPolygon,
}

impl GTBezierCurve {
    pub fn new(nodeset: NodeSet, weights: WeightVector, control: ControlPolygon) -> Result<Self> {
        if weights.len() != nodeset.len() {
            return Err(CurveError::CountMismatch {
                what: "weights",
                expected: nodeset.len(),
                actual: weights.len(),
            });
        }
        if control.len() != nodeset.len() {
            return Err(CurveError::CountMismatch {
                what: "control points",
                expected: nodeset.len(),
                actual: control.len(),
            });
        }
        Ok(Self {
            nodeset,
            weights,
            control,
        })
    }

    pub fn nodeset(&self) -> &NodeSet {
        &self.nodeset
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn control(&self) -> &ControlPolygon {
        &self.control
    }

    pub fn dim(&self) -> usize {
        self.control.dim()
    }

    /// Same basis with different control points.
    pub fn with_control(&self, control: ControlPolygon) -> Result<Self> {
        Self::new(self.nodeset.clone(), self.weights.clone(), control)
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let values = self.nodeset.eval_rational(&self.weights, t)?;
        Ok(combine(&self.control, &values.values))
    }

    /// `count` points at uniformly spaced parameters, both endpoints included.
    pub fn sample_polyline(&self, count: usize) -> Result<Vec<Vec<f64>>> {
        uniform_grid(self.nodeset.start(), self.nodeset.end(), count)?
            .into_iter()
            .map(|t| self.eval(t))
            .collect()
    }
}

/// `count >= 2` uniformly spaced values from `lo` to `hi`, endpoints exact.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(CurveError::BadCount(count));
    }
    let last = count - 1;
    Ok((0..count)
        .map(|k| {
            if k == last {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last as f64
            }
        })
        .collect())
}

pub fn eval_curve(c: &GTBezierCurve, t: f64) -> Result<Vec<f64>> {
    c.eval(t)
}

pub fn sample_polyline(c: &GTBezierCurve, count: usize) -> Result<Vec<Vec<f64>>> {
    c.sample_polyline(count)
}

/// Classical Bezier curve of degree `n` on `[0, n]`; `t = n x` maps to the usual `x`.
pub fn classical_bezier(control: ControlPolygon) -> GTBezierCurve {
    let n = control.len() - 1;
    let weights = WeightVector::unit(n + 1);
    GTBezierCurve::new(bernstein_equivalent_nodeset(n), weights, control)
        .expect("counts agree by construction")
}

/// Rational Bezier curve on `[0, n]` with the given weights.
pub fn rational_bezier(control: ControlPolygon, w: WeightVector) -> Result<GTBezierCurve> {
    let n = control.len() - 1;
    GTBezierCurve::new(bernstein_equivalent_nodeset(n), w, control)
}
