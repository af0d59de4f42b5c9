//! Dense complex linear algebra for dimensions ≤ 64.
//!
//! Everything here is a pure function of its inputs. The global index
//! convention is row-major with the A index major: a bipartite state on
//! dims (d_A, d_B) stores |ij⟩ at index `i * d_B + j`, and tensor products
//! follow the same order (entry (r, c) of the left factor scales a whole
//! block of the right factor).
//!
//! The eigensolver is a cyclic Jacobi iteration on Hermitian matrices. It
//! caps at 100 sweeps and declares convergence when the off-diagonal
//! Frobenius norm drops below 1e-12.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hard cap on any matrix dimension handled by this kernel.
pub const DIM_BUDGET: usize = 64;

/// Maximum sweeps for the Jacobi eigensolver.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-12;

/// Hermiticity asymmetry tolerated by [`herm_eig`]; callers hermitize first.
const HERM_ASYMMETRY_TOL: f64 = 1e-8;

/// Which side of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// The other side.
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(format!("expected side A or B, got {other:?}")),
        }
    }
}

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries, checking shape and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
                context: "entry count",
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
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

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Real scalar multiple.
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Trace (square matrices).
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖m − m†‖_F, zero for exactly Hermitian matrices.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let d = self[(r, c)] - self[(c, r)].conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// (m + m†)/2.
    pub fn hermitized(&self) -> Self {
        assert!(self.is_square());
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = (self[(r, c)] + self[(c, r)].conj()).scale(0.5);
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// Result of a Hermitian eigendecomposition: `m = V diag(λ) V†` with the
/// eigenvalues ascending and the columns of `V` orthonormal.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// ‖V diag(λ) V† − m‖_F, the reconstruction defect against `m`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let v = &self.eigenvectors;
        let lam = ComplexMatrix::diag(&self.eigenvalues);
        v.mul(&lam).mul(&v.dagger()).sub(m).frobenius_norm()
    }

    /// ‖V†V − I‖_F.
    pub fn unitarity_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        let n = v.rows();
        v.dagger().mul(v).sub(&ComplexMatrix::identity(n)).frobenius_norm()
    }
}

fn offdiag_frobenius(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Core cyclic Jacobi loop. Rotates away off-diagonal entries until the
/// off-diagonal Frobenius norm drops below [`JACOBI_OFF_TOL`]; accumulates
/// eigenvectors only when `want_vectors` is set.
fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = m.rows();
    let mut a = m.hermitized();
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    let mut residual = offdiag_frobenius(&a);
    let mut converged = residual <= JACOBI_OFF_TOL;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let beta_abs = beta.norm();
                if beta_abs == 0.0 {
                    continue;
                }
                let phase = beta / beta_abs; // e^{iφ} with A_pq = |β| e^{iφ}
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;

                // Smaller-angle root of t² − ((α−γ)/|β|) t − 1 = 0, computed
                // without cancellation.
                let tau = (alpha - gamma) / (2.0 * beta_abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Plane rotation J: J_pp = c, J_pq = s, J_qp = -s e^{-iφ},
                // J_qq = c e^{-iφ}; A ← J† A J zeroes A_pq.
                let jpq = Complex64::new(s, 0.0);
                let jqp = phase.conj() * (-s);
                let jqq = phase.conj() * c;

                // Column update A ← A J.
                for r in 0..n {
                    let ap = a[(r, p)];
                    let aq = a[(r, q)];
                    a[(r, p)] = ap * c + aq * jqp;
                    a[(r, q)] = ap * jpq + aq * jqq;
                }
                // Row update A ← J† A.
                for col in 0..n {
                    let ap = a[(p, col)];
                    let aq = a[(q, col)];
                    a[(p, col)] = ap * c + aq * jqp.conj();
                    a[(q, col)] = ap * jpq.conj() + aq * jqq.conj();
                }
                // Rotations keep the diagonal real; scrub rounding dust.
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                if let Some(vm) = v.as_mut() {
                    for r in 0..n {
                        let vp = vm[(r, p)];
                        let vq = vm[(r, q)];
                        vm[(r, p)] = vp * c + vq * jqp;
                        vm[(r, q)] = vp * jpq + vq * jqq;
                    }
                }
            }
        }
        residual = offdiag_frobenius(&a);
        converged = residual <= JACOBI_OFF_TOL;
    }
    if !converged {
        return Err(Error::EigConvergence { dim: n, residual });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|vm| {
        let mut sorted = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, new_col)] = vm[(r, old_col)];
            }
        }
        sorted
    });
    Ok((eigenvalues, vectors))
}

fn check_herm_input(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let residual = m.hermiticity_residual();
    if residual > HERM_ASYMMETRY_TOL {
        return Err(Error::NotHermitian { residual, tol: HERM_ASYMMETRY_TOL });
    }
    Ok(())
}

/// Full Hermitian eigendecomposition with eigenvalues sorted ascending.
///
/// The input must be Hermitian within 1e-8 in Frobenius norm; callers that
/// may carry numerical noise should pass (m + m†)/2 themselves.
pub fn herm_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    check_herm_input(m)?;
    let (eigenvalues, vectors) = jacobi(m, true)?;
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_herm_input(m)?;
    let (eigenvalues, _) = jacobi(m, false)?;
    Ok(eigenvalues)
}

/// Kronecker product with block order: entry (r, c) of `a` scales block `b`,
/// so |ij⟩ = |i⟩⊗|j⟩ with the left factor's index major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ra in 0..a.rows() {
        for ca in 0..a.cols() {
            let f = a[(ra, ca)];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for rb in 0..b.rows() {
                for cb in 0..b.cols() {
                    out[(ra * b.rows() + rb, ca * b.cols() + cb)] = f * b[(rb, cb)];
                }
            }
        }
    }
    out
}

/// Partial trace of a square matrix on dims (d_A, d_B), keeping one side.
///
/// With the global index convention |ij⟩ = i·d_B + j:
/// keep = A returns ϱ_A with (ϱ_A)_{ii'} = Σ_j m_{(i,j),(i',j)};
/// keep = B returns ϱ_B with (ϱ_B)_{jj'} = Σ_i m_{(i,j),(i,j')}.
pub fn partial_trace(m: &ComplexMatrix, dims: (usize, usize), keep: Side) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            got: m.rows(),
            context: "partial trace dims",
        });
    }
    match keep {
        Side::A => {
            let mut out = ComplexMatrix::zeros(da, da);
            for i in 0..da {
                for ip in 0..da {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..db {
                        acc += m[(i * db + j, ip * db + j)];
                    }
                    out[(i, ip)] = acc;
                }
            }
            Ok(out)
        }
        Side::B => {
            let mut out = ComplexMatrix::zeros(db, db);
            for j in 0..db {
                for jp in 0..db {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..da {
                        acc += m[(i * db + j, i * db + jp)];
                    }
                    out[(j, jp)] = acc;
                }
            }
            Ok(out)
        }
    }
}

/// Whether a Hermitian matrix has minimum eigenvalue ≥ −tol.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

/// Minimum eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    let eigs = herm_eigenvalues(m)?;
    Ok(eigs.first().copied().unwrap_or(0.0))
}

/// Trace distance ½‖a − b‖₁ between two Hermitian matrices of equal
/// dimension, via the eigenvalues of a − b.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.rows(),
            context: "trace distance",
        });
    }
    let eigs = herm_eigenvalues(&a.sub(b))?;
    Ok(0.5 * eigs.iter().map(|l| l.abs()).sum::<f64>())
}
