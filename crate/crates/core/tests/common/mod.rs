#![allow(dead_code)]

use rand::Rng;
use toric_bezier::{DenseMatrix, NodeSet, WeightVector};

/// Product of positive lower and upper elementary bidiagonal factors around a
/// positive diagonal. Every such product is totally positive.
pub fn random_tp_matrix<R: Rng>(n: usize, rng: &mut R) -> DenseMatrix {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = rng.random_range(0.5..2.0);
    }
    let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    for k in (1..n).rev() {
        for j in k..n {
            let x = rng.random_range(0.1..1.5);
            let mut lower: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|c| f64::from(u8::from(i == c))).collect()).collect();
            lower[j][j - 1] = x;
            m = mul(&lower, &m);
            let y = rng.random_range(0.1..1.5);
            let mut upper: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|c| f64::from(u8::from(i == c))).collect()).collect();
            upper[j - 1][j] = y;
            m = mul(&m, &upper);
        }
    }
    DenseMatrix::from_rows(&m).unwrap()
}

/// Random strictly increasing node set with `len` nodes.
pub fn random_nodeset<R: Rng>(len: usize, rng: &mut R) -> NodeSet {
    let mut nodes = vec![rng.random_range(-2.0..2.0)];
    for _ in 1..len {
        let last = *nodes.last().unwrap();
        nodes.push(last + rng.random_range(0.05..1.5));
    }
    let coefficients = (0..len).map(|_| rng.random_range(0.2..3.0)).collect();
    NodeSet::new(nodes, coefficients, rng.random_range(0.3..3.0)).unwrap()
}

pub fn random_weights<R: Rng>(len: usize, rng: &mut R) -> WeightVector {
    WeightVector::new((0..len).map(|_| rng.random_range(0.2..5.0)).collect()).unwrap()
}

/// Random affine map `p -> A p + b` in dimension `dim`.
pub struct Affine {
    pub linear: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
}

impl Affine {
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        Self {
            linear: (0..dim).map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect()).collect(),
            shift: (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect(),
        }
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        self.linear
            .iter()
            .zip(&self.shift)
            .map(|(row, b)| row.iter().zip(p).map(|(a, x)| a * x).sum::<f64>() + b)
            .collect()
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
