//! Small dense row-major matrices and determinants of their minors.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for the given shape, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("matrix entry ({row}, {col}) is not finite: {value}")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("bad minor index set: {0}")]
    BadIndexSet(String),
}

/// Row-major real matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(MatrixError::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
                value: entries[pos],
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equally sized rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::ShapeMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Multiplies row `r` by `factors[r]`.
    pub fn scale_rows(&self, factors: &[f64]) -> Result<Self, MatrixError> {
        let mut entries = self.entries.clone();
        for (r, chunk) in entries.chunks_mut(self.cols).enumerate() {
            chunk.iter_mut().for_each(|v| *v *= factors[r]);
        }
        Self::new(self.rows, self.cols, entries)
    }

    /// Multiplies column `c` by `factors[c]`.
    pub fn scale_cols(&self, factors: &[f64]) -> Result<Self, MatrixError> {
        let mut entries = self.entries.clone();
        for chunk in entries.chunks_mut(self.cols) {
            chunk
                .iter_mut()
                .zip(factors)
                .for_each(|(v, f)| *v *= f);
        }
        Self::new(self.rows, self.cols, entries)
    }

    /// Row sums.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    fn check_indices(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<(), MatrixError> {
        if row_idx.is_empty() || row_idx.len() != col_idx.len() {
            return Err(MatrixError::BadIndexSet(format!(
                "row/column selections must be non-empty and equally long ({} vs {})",
                row_idx.len(),
                col_idx.len()
            )));
        }
        for (idx, bound, what) in [(row_idx, self.rows, "row"), (col_idx, self.cols, "column")] {
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MatrixError::BadIndexSet(format!(
                    "{what} indices {idx:?} are not strictly increasing"
                )));
            }
            if idx.last().is_some_and(|&last| last >= bound) {
                return Err(MatrixError::BadIndexSet(format!(
                    "{what} index {} out of bounds for {bound}",
                    idx[idx.len() - 1]
                )));
            }
        }
        Ok(())
    }

    /// Copies the selected submatrix into a row-major buffer.
    fn gather(&self, row_idx: &[usize], col_idx: &[usize]) -> Vec<f64> {
        let mut buf = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &r in row_idx {
            buf.extend(col_idx.iter().map(|&c| self.get(r, c)));
        }
        buf
    }

    /// Determinant of the minor on the given strictly increasing rows and columns.
    pub fn minor_det(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<f64, MatrixError> {
        self.check_indices(row_idx, col_idx)?;
        let k = row_idx.len();
        let mut buf = self.gather(row_idx, col_idx);
        Ok(det_in_place(&mut buf, k))
    }

    /// Product of the Euclidean norms of the selected rows restricted to the
    /// selected columns. Bounds `|minor|` from above (Hadamard).
    pub fn minor_scale(&self, row_idx: &[usize], col_idx: &[usize]) -> f64 {
        row_idx
            .iter()
            .map(|&r| {
                col_idx
                    .iter()
                    .map(|&c| self.get(r, c).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .product()
    }

    pub fn determinant(&self) -> Result<f64, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(1.0);
        }
        let mut buf = self.entries.clone();
        Ok(det_in_place(&mut buf, self.rows))
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

pub fn minor_det(m: &DenseMatrix, row_idx: &[usize], col_idx: &[usize]) -> Result<f64, MatrixError> {
    m.minor_det(row_idx, col_idx)
}

/// Determinant of a `k x k` row-major buffer. Closed form for `k <= 3`,
/// equilibrated LU with complete pivoting otherwise. The buffer is overwritten.
fn det_in_place(a: &mut [f64], k: usize) -> f64 {
    match k {
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => lu_det(a, k),
    }
}

fn lu_det(a: &mut [f64], k: usize) -> f64 {
    // rows and columns are rescaled by powers of two so that scaling is exact
    let mut log2_scale = 0i32;
    for r in 0..k {
        let max = a[r * k..(r + 1) * k].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return 0.0;
        }
        let e = max.log2().round() as i32;
        log2_scale += e;
        a[r * k..(r + 1) * k].iter_mut().for_each(|v| *v *= (-e as f64).exp2());
    }
    for c in 0..k {
        let max = (0..k).fold(0.0f64, |m, r| m.max(a[r * k + c].abs()));
        if max == 0.0 {
            return 0.0;
        }
        let e = max.log2().round() as i32;
        log2_scale += e;
        (0..k).for_each(|r| a[r * k + c] *= (-e as f64).exp2());
    }

    let mut det = 1.0;
    for d in 0..k {
        let (pr, pc) = (d..k)
            .flat_map(|r| (d..k).map(move |c| (r, c)))
            .max_by(|&(r1, c1), &(r2, c2)| a[r1 * k + c1].abs().total_cmp(&a[r2 * k + c2].abs()))
            .unwrap_or((d, d));
        if a[pr * k + pc] == 0.0 {
            return 0.0;
        }
        if pr != d {
            for j in 0..k {
                a.swap(d * k + j, pr * k + j);
            }
            det = -det;
        }
        if pc != d {
            for r in 0..k {
                a.swap(r * k + d, r * k + pc);
            }
            det = -det;
        }
        let p = a[d * k + d];
        det *= p;
        for r in d + 1..k {
            let factor = a[r * k + d] / p;
            if factor != 0.0 {
                for j in d + 1..k {
                    a[r * k + j] -= factor * a[d * k + j];
                }
            }
        }
    }
    scale_by_pow2(det, log2_scale)
}

/// `x * 2^e` without intermediate overflow for moderate `e`.
fn scale_by_pow2(mut x: f64, mut e: i32) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}
