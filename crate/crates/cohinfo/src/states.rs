//! Bipartite states: construction, sampling, purification, and twirling.
//!
//! A [`DensityMatrix`] is a trace-one PSD matrix together with its bipartite
//! dimensions (d_A, d_B); single-system states use the convention (1, d).
//! Constructors validate Hermiticity (1e-10), trace (1e-9), and positivity
//! (1e-9) on every output.
//!
//! Randomness never comes from ambient state: every sampling operation takes
//! an explicit seed (or an explicit RNG) and is reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qla::{self, ComplexMatrix, Side};
use crate::{Error, Result};

/// Hermiticity tolerance for valid density matrices.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Trace tolerance for valid density matrices.
pub const TRACE_TOL: f64 = 1e-9;
/// Positivity tolerance for valid density matrices.
pub const PSD_TOL: f64 = 1e-9;
/// Norm tolerance for pure-state amplitude vectors.
pub const NORM_TOL: f64 = 1e-10;

/// Trace-one positive-semidefinite matrix with bipartite dimension metadata.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a density operator on dims (d_A, d_B).
    pub fn new(mat: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let (da, db) = dims;
        if !mat.is_square() {
            return Err(Error::NotSquare { rows: mat.rows(), cols: mat.cols() });
        }
        if mat.rows() != da * db {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                got: mat.rows(),
                context: "density matrix dims",
            });
        }
        let herm = mat.hermiticity_residual();
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian { residual: herm, tol: HERMITICITY_TOL });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: tr.re, tol: TRACE_TOL });
        }
        let min_eig = qla::min_eigenvalue(&mat)?;
        if min_eig < -PSD_TOL {
            return Err(Error::NotPsd { min_eigenvalue: min_eig, tol: PSD_TOL });
        }
        Ok(Self { mat, dims })
    }

    /// Wrap without the O(n³) positivity check. For internal construction
    /// paths that are PSD by algebra (e.g. G G†/Tr normalizations).
    pub(crate) fn from_parts_unchecked(mat: ComplexMatrix, dims: (usize, usize)) -> Self {
        debug_assert_eq!(mat.rows(), dims.0 * dims.1);
        debug_assert!(mat.hermiticity_residual() <= HERMITICITY_TOL);
        Self { mat, dims }
    }

    /// Maximally mixed state I/(d_A d_B) on the given dims.
    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let d = dims.0 * dims.1;
        Self::from_parts_unchecked(ComplexMatrix::identity(d).scale_re(1.0 / d as f64), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn d_a(&self) -> usize {
        self.dims.0
    }

    pub fn d_b(&self) -> usize {
        self.dims.1
    }

    /// Total Hilbert-space dimension d_A·d_B.
    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// Reduction onto one side, as a bare matrix.
    pub fn reduction(&self, keep: Side) -> ComplexMatrix {
        qla::partial_trace(&self.mat, self.dims, keep).expect("dims consistent by construction")
    }

    /// Reinterpret the same matrix under a different bipartite split.
    pub fn reinterpret_dims(&self, dims: (usize, usize)) -> Result<Self> {
        if dims.0 * dims.1 != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: dims.0 * dims.1,
                context: "reinterpret dims",
            });
        }
        Ok(Self { mat: self.mat.clone(), dims })
    }

    /// Trace distance ½‖ϱ − σ‖₁.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        qla::trace_distance(&self.mat, &other.mat)
    }

    /// Overlap Tr[ϱ P₊] with the maximally entangled state, for square dims.
    ///
    /// Equals (1/d) Σ_{i,i'} ⟨ii|ϱ|i'i'⟩ under the row-major convention.
    pub fn fidelity_with_max_entangled(&self) -> Result<f64> {
        let (da, db) = self.dims;
        if da != db {
            return Err(Error::NotSquareBipartite { d_a: da, d_b: db });
        }
        let d = da;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for ip in 0..d {
                acc += self.mat[(i * d + i, ip * d + ip)];
            }
        }
        Ok(acc.re / d as f64)
    }

    /// Conjugate by a product unitary: (U⊗V) ϱ (U⊗V)†.
    pub fn apply_product_unitary(&self, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.d_a() || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.d_a(),
                got: u.rows(),
                context: "product unitary A side",
            });
        }
        if v.rows() != self.d_b() || !v.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.d_b(),
                got: v.rows(),
                context: "product unitary B side",
            });
        }
        let w = qla::tensor(u, v);
        let rotated = w.mul(&self.mat).mul(&w.dagger()).hermitized();
        Ok(Self::from_parts_unchecked(rotated, self.dims))
    }
}

/// Pure bipartite state as an amplitude vector on dims (d_A, d_B).
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: (usize, usize),
}

impl PureState {
    /// Validate and wrap an amplitude vector (unit norm within 1e-10).
    pub fn new(amplitudes: Vec<Complex64>, dims: (usize, usize)) -> Result<Self> {
        if amplitudes.len() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                got: amplitudes.len(),
                context: "pure state amplitudes",
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidNorm { norm, tol: NORM_TOL });
        }
        Ok(Self { amplitudes, dims })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Projector |ψ⟩⟨ψ| as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let n = self.amplitudes.len();
        let mut mat = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                mat[(r, c)] = self.amplitudes[r] * self.amplitudes[c].conj();
            }
        }
        DensityMatrix::from_parts_unchecked(mat, self.dims)
    }

    /// Apply a unitary to one side: (U⊗I)|ψ⟩ or (I⊗U)|ψ⟩.
    pub fn local_unitary(&self, u: &ComplexMatrix, side: Side) -> Result<PureState> {
        let (da, db) = self.dims;
        let expected = match side {
            Side::A => da,
            Side::B => db,
        };
        if u.rows() != expected || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected,
                got: u.rows(),
                context: "local unitary",
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); da * db];
        match side {
            Side::A => {
                for a in 0..da {
                    for ap in 0..da {
                        let f = u[(a, ap)];
                        if f.re == 0.0 && f.im == 0.0 {
                            continue;
                        }
                        for b in 0..db {
                            out[a * db + b] += f * self.amplitudes[ap * db + b];
                        }
                    }
                }
            }
            Side::B => {
                for b in 0..db {
                    for bp in 0..db {
                        let f = u[(b, bp)];
                        if f.re == 0.0 && f.im == 0.0 {
                            continue;
                        }
                        for a in 0..da {
                            out[a * db + b] += f * self.amplitudes[a * db + bp];
                        }
                    }
                }
            }
        }
        PureState::new(out, self.dims)
    }
}

/// Parameters of the isotropic family ϱ(F, d) = p P₊ + (1−p) I/d².
///
/// F is the overlap with P₊; the mixing weight p = (F − 1/d²)/(1 − 1/d²)
/// must lie in [0, 1], i.e. F ∈ [1/d², 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParams {
    f: f64,
    d: usize,
}

impl IsotropicParams {
    pub fn new(f: f64, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { dim: d, min: 2 });
        }
        let lo = 1.0 / (d * d) as f64;
        if !f.is_finite() || f < lo || f > 1.0 {
            return Err(Error::ParamOutOfRange { name: "F", value: f, lo, hi: 1.0 });
        }
        Ok(Self { f, d })
    }

    pub fn fidelity(&self) -> f64 {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Mixing weight p with ϱ = p P₊ + (1−p) I/d².
    pub fn mixing_weight(&self) -> f64 {
        let inv = 1.0 / (self.d * self.d) as f64;
        (self.f - inv) / (1.0 - inv)
    }
}

/// Weighted list {p_i, ϱ_i} of density matrices with equal dims.
#[derive(Debug, Clone)]
pub struct Ensemble {
    weights: Vec<f64>,
    members: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, members: Vec<DensityMatrix>) -> Result<Self> {
        if weights.is_empty() || weights.len() != members.len() {
            return Err(Error::InvalidProbabilities {
                reason: format!(
                    "{} weights for {} members",
                    weights.len(),
                    members.len()
                ),
            });
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidProbabilities {
                reason: "negative or non-finite weight".into(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidProbabilities {
                reason: format!("weights sum to {sum}"),
            });
        }
        let dims = members[0].dims();
        if members.iter().any(|m| m.dims() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                got: 0,
                context: "ensemble member dims differ",
            });
        }
        Ok(Self { weights, members })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[DensityMatrix] {
        &self.members
    }
}

/// ψ₊ = (1/√d) Σ |ii⟩ on dims (d, d).
pub fn max_entangled(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let w = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        amps[i * d + i] = Complex64::new(w, 0.0);
    }
    PureState::new(amps, (d, d))
}

/// The four Bell-state amplitude vectors, in the fixed order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_basis() -> [Vec<Complex64>; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let p = Complex64::new(h, 0.0);
    let m = Complex64::new(-h, 0.0);
    [
        vec![p, z, z, p], // Φ⁺ = (|00⟩ + |11⟩)/√2
        vec![p, z, z, m], // Φ⁻ = (|00⟩ − |11⟩)/√2
        vec![z, p, p, z], // Ψ⁺ = (|01⟩ + |10⟩)/√2
        vec![z, p, m, z], // Ψ⁻ = (|01⟩ − |10⟩)/√2
    ]
}

/// One of the four Bell states as a pure state on (2, 2).
pub fn bell_state(k: usize) -> Result<PureState> {
    if k >= 4 {
        return Err(Error::ParamOutOfRange { name: "bell index", value: k as f64, lo: 0.0, hi: 3.0 });
    }
    PureState::new(bell_basis()[k].clone(), (2, 2))
}

/// Build the isotropic-family matrix for any overlap F ∈ [0, 1]. The
/// spectrum is {F} ∪ {(1−F)/(d²−1)}^(d²−1), so positivity needs only
/// F ∈ [0, 1]; the Eq.-style mixing form restricts further to F ≥ 1/d².
fn isotropic_matrix(f: f64, d: usize) -> DensityMatrix {
    let dd = d * d;
    let rest = (1.0 - f) / (dd - 1) as f64;
    let p_plus = max_entangled(d).expect("d ≥ 2").to_density();
    let mat = p_plus
        .matrix()
        .scale_re(f - rest)
        .add(&ComplexMatrix::identity(dd).scale_re(rest));
    DensityMatrix::from_parts_unchecked(mat, (d, d))
}

/// Isotropic state ϱ(F, d) = p P₊ + (1−p) I/d² with Tr[ϱ P₊] = F.
pub fn isotropic(params: IsotropicParams) -> DensityMatrix {
    isotropic_matrix(params.fidelity(), params.dim())
}

/// Mixture of the four Bell states with the given probabilities, in the
/// fixed order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_diagonal(probs: [f64; 4]) -> Result<DensityMatrix> {
    if probs.iter().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::InvalidProbabilities {
            reason: "negative or non-finite probability".into(),
        });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbabilities {
            reason: format!("probabilities sum to {sum}"),
        });
    }
    let basis = bell_basis();
    let mut mat = ComplexMatrix::zeros(4, 4);
    for (k, amps) in basis.iter().enumerate() {
        for r in 0..4 {
            for c in 0..4 {
                mat[(r, c)] += amps[r] * amps[c].conj() * probs[k];
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(mat, (2, 2)))
}

/// Purify a state treated as a single system of dimension d: the result is
/// ψ = Σ_k √λ_k |k⟩⊗|e_k⟩ on dims (d, d), with the ancilla on the A side in
/// the computational basis indexed by eigenvalue rank (descending), and the
/// B-side reduction equal to the input.
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    let d = rho.dim();
    let eig = qla::herm_eig(rho.matrix())?;
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    // Solver returns ascending order; rank 0 is the largest eigenvalue.
    for rank in 0..d {
        let col = d - 1 - rank;
        let lam = eig.eigenvalues[col];
        if lam < -PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: lam });
        }
        let w = lam.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for b in 0..d {
            amps[rank * d + b] = eig.eigenvectors[(b, col)].scale(w);
        }
    }
    PureState::new(amps, (d, d))
}

fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[(r, c)] = Complex64::new(re, im);
        }
    }
    m
}

/// Hilbert–Schmidt random state on the given dims, drawing from an RNG.
pub fn random_density_with(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> DensityMatrix {
    let d = dims.0 * dims.1;
    let g = ginibre(rng, d, d);
    let gg = g.mul(&g.dagger()).hermitized();
    let tr = gg.trace().re;
    DensityMatrix::from_parts_unchecked(gg.scale_re(1.0 / tr), dims)
}

/// Hilbert–Schmidt random state ϱ = G G†/Tr(G G†) of dimension d,
/// deterministic per seed. Uses the single-system convention dims = (1, d).
pub fn random_density(d: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_with(&mut rng, (1, d))
}

/// Hilbert–Schmidt random bipartite state on dims (d_A, d_B), per seed.
pub fn random_bipartite(dims: (usize, usize), seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_with(&mut rng, dims)
}

/// Random pure state with Ginibre amplitudes, drawing from an RNG.
pub fn random_pure_with(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> PureState {
    let n = dims.0 * dims.1;
    let mut amps: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    PureState::new(amps, dims).expect("normalized by construction")
}

/// Haar-random unitary via Gram–Schmidt QR of a Ginibre matrix with the
/// R diagonal fixed positive, drawing from an RNG.
pub fn random_unitary_with(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let mut q = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|r| g[(r, j)]).collect();
        // Two orthogonalization passes keep ‖Q†Q − I‖ at rounding level.
        for _ in 0..2 {
            for i in 0..j {
                let mut overlap = Complex64::new(0.0, 0.0);
                for r in 0..d {
                    overlap += q[(r, i)].conj() * v[r];
                }
                for r in 0..d {
                    let qe = q[(r, i)];
                    v[r] -= overlap * qe;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        debug_assert!(norm > 1e-12, "Ginibre column collapsed");
        for r in 0..d {
            q[(r, j)] = v[r] / norm;
        }
    }
    q
}

/// Haar-random unitary of dimension d, deterministic per seed.
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_with(&mut rng, d)
}

/// Closed-form U⊗U* twirl: projects onto the isotropic family while
/// preserving the overlap F = Tr[σ P₊] exactly.
pub fn twirl_closed_form(sigma: &DensityMatrix) -> Result<DensityMatrix> {
    let (da, db) = sigma.dims();
    if da != db {
        return Err(Error::NotSquareBipartite { d_a: da, d_b: db });
    }
    let f = sigma.fidelity_with_max_entangled()?;
    if !(-1e-9..=1.0 + 1e-9).contains(&f) {
        return Err(Error::ParamOutOfRange { name: "F", value: f, lo: 0.0, hi: 1.0 });
    }
    Ok(isotropic_matrix(f.clamp(0.0, 1.0), da))
}

/// Monte-Carlo U⊗U* twirl: empirical mean of (U⊗U*) σ (U⊗U*)† over Haar
/// samples, re-hermitized and renormalized. Converges to
/// [`twirl_closed_form`] as the sample count grows.
pub fn twirl_monte_carlo(sigma: &DensityMatrix, samples: usize, seed: u64) -> Result<DensityMatrix> {
    let (da, db) = sigma.dims();
    if da != db {
        return Err(Error::NotSquareBipartite { d_a: da, d_b: db });
    }
    if samples == 0 {
        return Err(Error::ParamOutOfRange { name: "samples", value: 0.0, lo: 1.0, hi: f64::INFINITY });
    }
    let d = da;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for _ in 0..samples {
        let u = random_unitary_with(&mut rng, d);
        let w = qla::tensor(&u, &u.conj());
        acc = acc.add(&w.mul(sigma.matrix()).mul(&w.dagger()));
    }
    let mean = acc.scale_re(1.0 / samples as f64).hermitized();
    let tr = mean.trace().re;
    DensityMatrix::new(mean.scale_re(1.0 / tr), (d, d))
}

/// Mixture ϱ = Σ p_i ϱ_i of an ensemble.
pub fn mix(ensemble: &Ensemble) -> DensityMatrix {
    let dims = ensemble.members()[0].dims();
    let d = dims.0 * dims.1;
    let mut mat = ComplexMatrix::zeros(d, d);
    for (w, member) in ensemble.weights().iter().zip(ensemble.members()) {
        mat = mat.add(&member.matrix().scale_re(*w));
    }
    DensityMatrix::from_parts_unchecked(mat.hermitized(), dims)
}

/// Tensor product of two bipartite states with the joint split
/// (A₁A₂ | B₁B₂), i.e. the indices are re-interleaved so the result is a
/// bipartite state on (d_A₁·d_A₂, d_B₁·d_B₂).
pub fn tensor_bipartite(rho: &DensityMatrix, sigma: &DensityMatrix) -> DensityMatrix {
    let (a1, b1) = rho.dims();
    let (a2, b2) = sigma.dims();
    let (ja, jb) = (a1 * a2, b1 * b2);
    let mut mat = ComplexMatrix::zeros(ja * jb, ja * jb);
    for i1 in 0..a1 {
        for j1 in 0..b1 {
            for i1p in 0..a1 {
                for j1p in 0..b1 {
                    let x = rho.matrix()[(i1 * b1 + j1, i1p * b1 + j1p)];
                    if x.re == 0.0 && x.im == 0.0 {
                        continue;
                    }
                    for i2 in 0..a2 {
                        for j2 in 0..b2 {
                            for i2p in 0..a2 {
                                for j2p in 0..b2 {
                                    let y = sigma.matrix()[(i2 * b2 + j2, i2p * b2 + j2p)];
                                    let row = (i1 * a2 + i2) * jb + (j1 * b2 + j2);
                                    let col = (i1p * a2 + i2p) * jb + (j1p * b2 + j2p);
                                    mat[(row, col)] += x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    DensityMatrix::from_parts_unchecked(mat.hermitized(), (ja, jb))
}
