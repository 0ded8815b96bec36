//! Dense real matrix kernels: LU solve with partial pivoting, cyclic Jacobi
//! eigendecomposition for symmetric matrices, matrix norms, and an orthonormal
//! basis of the transverse space {x : xᵀ1 = 0}.
//!
//! Everything here is self-contained and sized for desk-scale problems
//! (N up to a few hundred); no sparse storage, no complex arithmetic.

use thiserror::Error;

/// Relative pivot threshold below which an LU factorization is declared singular.
pub const SINGULAR_PIVOT_REL: f64 = 1e-13;
/// Relative off-diagonal Frobenius target for Jacobi convergence.
pub const JACOBI_TOL_REL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is singular to working precision (pivot {pivot:.3e}, threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("matrix is not symmetric (max asymmetry {defect:.3e})")]
    NotSymmetric { defect: f64 },
    #[error("Jacobi iteration did not converge within {JACOBI_MAX_SWEEPS} sweeps")]
    NoConvergence,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
}

/// Row-major dense matrix of 64-bit floats. All entries are finite by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(LinalgError::NonFiniteEntry);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let cols = rows[0].len();
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Induced 1-norm: maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Entrywise maximum absolute value.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// (A + Aᵀ)/2, exactly symmetric by construction.
    pub fn symmetrized(&self) -> DenseMatrix {
        assert!(self.is_square());
        let mut s = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            s[(i, i)] = self[(i, i)];
            for j in (i + 1)..self.cols {
                let v = (self[(i, j)] + self[(j, i)]) / 2.0;
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        s
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a symmetric matrix: eigenvalues sorted descending,
/// eigenvectors as the matching orthonormal columns.
#[derive(Debug, Clone)]
pub struct SymmetricSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl SymmetricSpectrum {
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// ‖QΛQᵀ − S‖_max, for residual checks against the source matrix.
    pub fn reconstruction_residual(&self, s: &DenseMatrix) -> f64 {
        let n = s.rows();
        let q = &self.eigenvectors;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += q[(i, k)] * self.eigenvalues[k] * q[(j, k)];
                }
                worst = worst.max((acc - s[(i, j)]).abs());
            }
        }
        worst
    }
}

/// Solve a·x = b by LU factorization with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    assert!(a.is_square(), "lu_solve requires a square matrix");
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let n = a.rows();
    let threshold = SINGULAR_PIVOT_REL * a.one_norm();
    let mut lu = a.clone();
    let mut x: Vec<f64> = b.to_vec();

    for k in 0..n {
        // choose the pivot row
        let mut piv = k;
        for i in (k + 1)..n {
            if lu[(i, k)].abs() > lu[(piv, k)].abs() {
                piv = i;
            }
        }
        let pivot = lu[(piv, k)];
        if pivot.abs() <= threshold {
            return Err(LinalgError::SingularMatrix {
                pivot: pivot.abs(),
                threshold,
            });
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            x.swap(k, piv);
        }
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = factor;
            for j in (k + 1)..n {
                lu[(i, j)] -= factor * lu[(k, j)];
            }
            x[i] -= factor * x[k];
        }
    }
    // back substitution
    for k in (0..n).rev() {
        for j in (k + 1)..n {
            x[k] -= lu[(k, j)] * x[j];
        }
        x[k] /= lu[(k, k)];
    }
    Ok(x)
}

/// Outcome of a pivoted elimination pass that tolerates a rank deficiency:
/// reports which original row carries the smallest pivot instead of failing.
/// Used to locate the dependent row when solving for null vectors.
pub(crate) struct PivotScan {
    /// Original row index holding the smallest pivot encountered.
    pub dependent_row: usize,
    /// Magnitude of that pivot.
    pub min_pivot: f64,
}

pub(crate) fn scan_dependent_row(a: &DenseMatrix) -> PivotScan {
    assert!(a.is_square());
    let n = a.rows();
    let threshold = SINGULAR_PIVOT_REL * a.one_norm();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = PivotScan {
        dependent_row: perm[n - 1],
        min_pivot: f64::INFINITY,
    };

    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if lu[(i, k)].abs() > lu[(piv, k)].abs() {
                piv = i;
            }
        }
        let pivot = lu[(piv, k)].abs();
        if pivot <= best.min_pivot {
            best.min_pivot = pivot;
            best.dependent_row = perm[piv];
        }
        if pivot <= threshold {
            // rank deficiency located; eliminating further would divide by ~0
            return best;
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            perm.swap(k, piv);
        }
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / lu[(k, k)];
            for j in (k + 1)..n {
                lu[(i, j)] -= factor * lu[(k, j)];
            }
            lu[(i, k)] = 0.0;
        }
    }
    best
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps rotate away off-diagonal mass until the off-diagonal Frobenius
/// norm drops below `JACOBI_TOL_REL`·‖S‖_F; eigenvalues come back sorted
/// descending with matching orthonormal eigenvector columns.
pub fn jacobi_eigen(s: &DenseMatrix) -> Result<SymmetricSpectrum, LinalgError> {
    assert!(s.is_square(), "jacobi_eigen requires a square matrix");
    let n = s.rows();

    let defect = s
        .transpose()
        .as_slice()
        .iter()
        .zip(s.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if defect > 1e-12 * s.max_abs() {
        return Err(LinalgError::NotSymmetric { defect });
    }

    let mut a = s.symmetrized();
    let mut q = DenseMatrix::identity(n);
    let target = JACOBI_TOL_REL * s.frobenius_norm();

    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        acc.sqrt()
    };

    let mut converged = n < 2 || off_norm(&a) <= target;
    if !converged {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            for p in 0..(n - 1) {
                for r in (p + 1)..n {
                    let apr = a[(p, r)];
                    if apr == 0.0 {
                        continue;
                    }
                    let theta = (a[(r, r)] - a[(p, p)]) / (2.0 * apr);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let sn = t * c;

                    // rotate rows/columns p and r of A
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akr = a[(k, r)];
                        a[(k, p)] = c * akp - sn * akr;
                        a[(k, r)] = sn * akp + c * akr;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let ark = a[(r, k)];
                        a[(p, k)] = c * apk - sn * ark;
                        a[(r, k)] = sn * apk + c * ark;
                    }
                    // accumulate the rotation into Q
                    for k in 0..n {
                        let qkp = q[(k, p)];
                        let qkr = q[(k, r)];
                        q[(k, p)] = c * qkp - sn * qkr;
                        q[(k, r)] = sn * qkp + c * qkr;
                    }
                }
            }
            if off_norm(&a) <= target {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = q[(k, src)];
        }
    }
    Ok(SymmetricSpectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Spectral norm (largest |eigenvalue|) of a symmetric matrix.
pub fn spectral_norm_symmetric(s: &DenseMatrix) -> Result<f64, LinalgError> {
    let spectrum = jacobi_eigen(s)?;
    Ok(spectrum
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs())))
}

/// Orthonormal basis of the transverse space {x ∈ Rⁿ : xᵀ1 = 0}, returned
/// as the rows of an (n−1)×n matrix Q with QQᵀ = I and Q·1 = 0.
///
/// Built from the Householder reflection that maps 1/√n·1 to e₁; the
/// remaining rows of the reflector span the orthogonal complement.
pub fn transverse_basis(n: usize) -> DenseMatrix {
    assert!(n >= 2, "transverse space needs n >= 2");
    let u = 1.0 / (n as f64).sqrt();
    // v = u·1 − e₁
    let mut v = vec![u; n];
    v[0] -= 1.0;
    let vnorm2: f64 = v.iter().map(|x| x * x).sum();
    let mut q = DenseMatrix::zeros(n - 1, n);
    for i in 1..n {
        for j in 0..n {
            let hij = if i == j { 1.0 } else { 0.0 };
            q[(i - 1, j)] = hij - 2.0 * v[i] * v[j] / vnorm2;
        }
    }
    q
}
