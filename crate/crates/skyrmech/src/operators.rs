//! Dense operator construction and sparse application.
//!
//! Hamiltonians and collapse operators are built dense (all spaces here are
//! small), then compressed to CSR/CSC for the evolution hot loops, which
//! only ever need Y += A*X and Y += X*A with X, Y dense column-major.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Hermiticity verification threshold for the max-norm of H - H^dagger.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A complex square operator with a verified hermiticity flag.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: DMatrix<C64>,
    hermitian: bool,
}

impl OperatorMatrix {
    pub fn new(matrix: DMatrix<C64>) -> Self {
        assert!(matrix.is_square(), "operators must be square");
        let mut dev = 0.0_f64;
        for i in 0..matrix.nrows() {
            for j in 0..=i {
                dev = dev.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
            }
        }
        Self {
            hermitian: dev < HERMITICITY_TOL,
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    /// Eigen-decomposition; panics unless hermitian.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C64>) {
        assert!(self.hermitian, "eigen() requires a hermitian operator");
        let eig = self.matrix.clone().symmetric_eigen();
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vecs = DMatrix::<C64>::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            vecs.set_column(col, &eig.eigenvectors.column(i));
        }
        (vals, vecs)
    }

    pub fn to_csr(&self) -> CsMatrix {
        CsMatrix::from_dense(&self.matrix)
    }
}

/// Annihilation operator on an n-level Fock space.
pub fn annihilation(n: usize) -> DMatrix<C64> {
    let mut a = DMatrix::<C64>::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// Number operator on an n-level Fock space.
pub fn number(n: usize) -> DMatrix<C64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |k, _| {
        C64::new(k as f64, 0.0)
    }))
}

/// Identity.
pub fn identity(n: usize) -> DMatrix<C64> {
    DMatrix::identity(n, n)
}

/// Qubit basis convention: index 0 = ground, index 1 = excited.
pub fn sigma_z() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[(-1.0).into(), 0.0.into(), 0.0.into(), 1.0.into()])
}

pub fn sigma_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[0.0.into(), 1.0.into(), 1.0.into(), 0.0.into()])
}

/// sigma_plus = |e><g|.
pub fn sigma_plus() -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(2, 2);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

/// sigma_minus = |g><e|.
pub fn sigma_minus() -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(2, 2);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m
}

/// Kronecker product of a factor list, first factor slowest.
pub fn kron_all(factors: &[&DMatrix<C64>]) -> DMatrix<C64> {
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = out.kronecker(f);
    }
    out
}

/// Embed `op` at position `slot` of a tensor product whose factor dimensions
/// are `dims`, identity elsewhere.
pub fn embed(op: &DMatrix<C64>, slot: usize, dims: &[usize]) -> DMatrix<C64> {
    let mut out = DMatrix::<C64>::identity(1, 1);
    for (i, &d) in dims.iter().enumerate() {
        if i == slot {
            assert_eq!(op.nrows(), d);
            out = out.kronecker(op);
        } else {
            out = out.kronecker(&identity(d));
        }
    }
    out
}

/// Compressed sparse form holding both row-major (CSR, for A*X) and
/// column-major (CSC, for X*A) layouts.
#[derive(Debug, Clone)]
pub struct CsMatrix {
    pub n: usize,
    // CSR
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    row_vals: Vec<C64>,
    // CSC
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    col_vals: Vec<C64>,
}

impl CsMatrix {
    pub fn from_dense(m: &DMatrix<C64>) -> Self {
        let n = m.nrows();
        assert_eq!(n, m.ncols());
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::new();
        let mut row_vals = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = m[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    col_idx.push(c);
                    row_vals.push(v);
                }
            }
            row_ptr[r + 1] = col_idx.len();
        }
        let mut col_ptr = vec![0usize; n + 1];
        let mut row_idx = Vec::new();
        let mut col_vals = Vec::new();
        for c in 0..n {
            for r in 0..n {
                let v = m[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    row_idx.push(r);
                    col_vals.push(v);
                }
            }
            col_ptr[c + 1] = row_idx.len();
        }
        Self {
            n,
            row_ptr,
            col_idx,
            row_vals,
            col_ptr,
            row_idx,
            col_vals,
        }
    }

    pub fn nnz(&self) -> usize {
        self.row_vals.len()
    }

    /// y += scale * A x  (vectors).
    pub fn axpy_vec(&self, scale: C64, x: &[C64], y: &mut [C64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        for r in 0..self.n {
            let mut acc = C64::new(0.0, 0.0);
            for i in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.row_vals[i] * x[self.col_idx[i]];
            }
            y[r] += scale * acc;
        }
    }

    /// Y += scale * A X, X and Y dense n x n column-major slices.
    pub fn axpy_left(&self, scale: C64, x: &[C64], y: &mut [C64]) {
        let n = self.n;
        debug_assert_eq!(x.len(), n * n);
        debug_assert_eq!(y.len(), n * n);
        for c in 0..n {
            let xc = &x[c * n..(c + 1) * n];
            let yc = &mut y[c * n..(c + 1) * n];
            for r in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for i in self.row_ptr[r]..self.row_ptr[r + 1] {
                    acc += self.row_vals[i] * xc[self.col_idx[i]];
                }
                yc[r] += scale * acc;
            }
        }
    }

    /// Y += scale * X A, X and Y dense n x n column-major slices.
    pub fn axpy_right(&self, scale: C64, x: &[C64], y: &mut [C64]) {
        let n = self.n;
        debug_assert_eq!(x.len(), n * n);
        debug_assert_eq!(y.len(), n * n);
        for c in 0..n {
            let yc = &mut y[c * n..(c + 1) * n];
            for i in self.col_ptr[c]..self.col_ptr[c + 1] {
                let k = self.row_idx[i];
                let v = scale * self.col_vals[i];
                let xk = &x[k * n..(k + 1) * n];
                for r in 0..n {
                    yc[r] += v * xk[r];
                }
            }
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut dense = DMatrix::<C64>::zeros(n, n);
        for r in 0..n {
            for i in self.row_ptr[r]..self.row_ptr[r + 1] {
                dense[(self.col_idx[i], r)] = self.row_vals[i].conj();
            }
        }
        Self::from_dense(&dense)
    }
}

/// Expectation value <psi|O|psi> (real part; O hermitian in every use here).
pub fn expect_vec(op: &CsMatrix, psi: &[C64]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..op.n {
        let mut row = C64::new(0.0, 0.0);
        for i in op.row_ptr[r]..op.row_ptr[r + 1] {
            row += op.row_vals[i] * psi[op.col_idx[i]];
        }
        acc += psi[r].conj() * row;
    }
    acc.re
}

/// tr(O rho) for rho dense column-major (real part).
pub fn expect_rho(op: &CsMatrix, rho: &[C64]) -> f64 {
    // tr(O rho) = sum_r sum_k O[r,k] rho[k,r]
    let n = op.n;
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..n {
        for i in op.row_ptr[r]..op.row_ptr[r + 1] {
            let k = op.col_idx[i];
            acc += op.row_vals[i] * rho[r * n + k];
        }
    }
    acc.re
}

/// tr(rho) for rho dense column-major.
pub fn trace(rho: &[C64], n: usize) -> C64 {
    (0..n).map(|i| rho[i * n + i]).sum()
}
