//! JSON run configuration shared by the command-line subcommands.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::{NodeSet, WeightVector};
use crate::curve::ControlPolygon;
use crate::error::AppError;
use crate::pia::FitProblem;

pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Fit,
    Eval,
    TpCheck,
}

/// One run of the tool. Missing coefficients and weights default to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub nodes: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    pub scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Data points for `fit`, control points for `eval`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
}

impl RunConfig {
    /// Node set and weights only; everything else unset.
    pub fn for_basis(mode: Mode, ns: &NodeSet, w: &WeightVector) -> Self {
        Self {
            mode,
            nodes: ns.nodes().to_vec(),
            coefficients: Some(ns.coefficients().to_vec()),
            scale: ns.scale(),
            weights: Some(w.as_slice().to_vec()),
            points: None,
            params: None,
            max_iter: None,
            tol: None,
            out_dir: None,
        }
    }

    /// Fit configuration reproducing `problem`.
    pub fn for_fit(problem: &FitProblem, max_iter: usize, tol: f64) -> Self {
        Self {
            points: Some(problem.data().to_points()),
            params: Some(problem.params().to_vec()),
            max_iter: Some(max_iter),
            tol: Some(tol),
            ..Self::for_basis(Mode::Fit, problem.nodeset(), problem.weights())
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, AppError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| AppError::Config(format!("invalid JSON config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = fs::read_to_string(path)
            .map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Runs the validations of every module the configured mode touches.
    pub fn validate(&self) -> Result<(), AppError> {
        let ns = self.nodeset()?;
        self.weights_for(&ns)?;
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(AppError::Config(format!("tol must be non-negative, got {tol}")));
            }
        }
        if self.max_iter == Some(0) {
            return Err(AppError::Config("max_iter must be at least 1".into()));
        }
        match self.mode {
            Mode::Fit => {
                self.fit_problem()?;
            }
            Mode::Eval => {
                if let Some(points) = &self.points {
                    let control = ControlPolygon::new(points).map_err(config_err)?;
                    if control.len() != ns.len() {
                        return Err(AppError::Config(format!(
                            "{} control points for {} nodes",
                            control.len(),
                            ns.len()
                        )));
                    }
                }
            }
            Mode::TpCheck => {}
        }
        Ok(())
    }

    pub fn nodeset(&self) -> Result<NodeSet, AppError> {
        let coefficients = self
            .coefficients
            .clone()
            .unwrap_or_else(|| vec![1.0; self.nodes.len()]);
        NodeSet::new(self.nodes.clone(), coefficients, self.scale).map_err(config_err)
    }

    pub fn weights_for(&self, ns: &NodeSet) -> Result<WeightVector, AppError> {
        let w = match &self.weights {
            Some(w) => WeightVector::new(w.clone()).map_err(config_err)?,
            None => WeightVector::unit(ns.len()),
        };
        if w.len() != ns.len() {
            return Err(AppError::Config(format!(
                "{} weights for {} nodes",
                w.len(),
                ns.len()
            )));
        }
        Ok(w)
    }

    pub fn fit_problem(&self) -> Result<FitProblem, AppError> {
        let ns = self.nodeset()?;
        let w = self.weights_for(&ns)?;
        let points = self
            .points
            .as_ref()
            .ok_or_else(|| AppError::Config("fit mode needs `points`".into()))?;
        let params = self
            .params
            .clone()
            .ok_or_else(|| AppError::Config("fit mode needs `params`".into()))?;
        let data = ControlPolygon::new(points).map_err(config_err)?;
        FitProblem::new(data, params, ns, w).map_err(config_err)
    }

    pub fn max_iter_or_default(&self) -> usize {
        self.max_iter.unwrap_or(DEFAULT_MAX_ITER)
    }

    pub fn tol_or_default(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }
}

fn config_err(e: impl std::fmt::Display) -> AppError {
    AppError::Config(e.to_string())
}
