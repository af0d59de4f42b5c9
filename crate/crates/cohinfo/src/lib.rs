//! # cohinfo
//!
//! Coherent information for bipartite states and quantum channels, finite-n
//! channel-capacity lower bounds by numerical optimization, and executable
//! verification of the entropy inequalities that connect them.
//!
//! The crate is organized as a small stack:
//!
//! - [`qla`]: dense complex linear algebra for dimensions ≤ 64: Hermitian
//!   eigendecomposition (cyclic Jacobi), tensor products, partial traces,
//!   positivity tests, trace distance.
//! - [`states`]: bipartite state constructors: maximally entangled states,
//!   isotropic states, Bell-diagonal states, purifications, Ginibre sampling,
//!   Haar unitaries, U⊗U* twirling (closed form and Monte Carlo), ensembles.
//! - [`channels`]: CPTP maps as Kraus families: standard qubit noise models,
//!   channel application, I⊗Λ extension, tensor powers, Choi states.
//! - [`coherent`]: von Neumann entropy and coherent information
//!   I^X(ϱ) = S(ϱ_X) − S(ϱ), the channel quantity I(σ,Λ) via purification,
//!   the isotropic closed form, and the Bell-diagonal hashing rate 1 − S(ϱ).
//! - [`capopt`]: multi-restart gradient ascent of I(ϱ, Λ^⊗n) over input
//!   states, with an independent diagonal grid-search oracle. All values are
//!   finite-n lower bounds on the asymptotic capacity.
//! - [`verify`]: seeded, reproducible numerical checks of the continuity
//!   lemma, capacity-vs-hashing spot checks, hashing-inequality instances,
//!   the reduction-criterion consequence, the information-loss inequality,
//!   and the convexity/invariance/additivity properties of I^X.
//! - [`cli`]: file formats (state/channel/report JSON, sweep CSV) and the
//!   subcommand frontend used by the `cohinfo` binary.
//!
//! Every random operation takes an explicit seed; identical inputs produce
//! identical outputs regardless of execution order. All entropies are in bits
//! (log base 2).
//!
//! See the `examples/` directory for one runnable example per capability:
//!
//! ```bash
//! cargo run --example coherent_information
//! cargo run --example channel_capacity
//! cargo run --example twirling
//! cargo run --example lemma_limit
//! cargo run --example hashing_bound
//! cargo run --example verification_suites
//! cargo run --example noise_sweep
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod capopt;
pub mod channels;
pub mod cli;
pub mod coherent;
pub mod qla;
pub mod states;
pub mod verify;

pub use capopt::{OptConfig, OptResult};
pub use channels::KrausChannel;
pub use coherent::CIValue;
pub use qla::{ComplexMatrix, EigenDecomposition, Side};
pub use states::{DensityMatrix, Ensemble, IsotropicParams, PureState};
pub use verify::VerificationReport;

/// Errors for state, channel, and entropy computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("not Hermitian: asymmetry ‖m − m†‖_F = {residual:e} exceeds {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("eigensolver did not converge for dimension {dim}: off-diagonal residual {residual:e}")]
    EigConvergence { dim: usize, residual: f64 },

    #[error("trace is {trace}, expected 1 within {tol:e}")]
    InvalidTrace { trace: f64, tol: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:e} below -{tol:e}")]
    NotPsd { min_eigenvalue: f64, tol: f64 },

    #[error("state norm is {norm}, expected 1 within {tol:e}")]
    InvalidNorm { norm: f64, tol: f64 },

    #[error("eigenvalue {value:e} below -1e-9 signals an invalid density matrix")]
    NegativeEigenvalue { value: f64 },

    #[error("invalid probability vector: {reason}")]
    InvalidProbabilities { reason: String },

    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("dimension {dim} too small: need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("bipartite dimensions ({d_a}, {d_b}) must be equal here")]
    NotSquareBipartite { d_a: usize, d_b: usize },

    #[error("Kraus family not trace preserving: ‖ΣK†K − I‖_F = {residual:e}")]
    KrausIncomplete { residual: f64 },

    #[error("empty Kraus family")]
    EmptyKraus,

    #[error("joint dimension {dim} exceeds the dense-kernel budget of {max}")]
    BudgetExceeded { dim: usize, max: usize },

    #[error("state is not Bell diagonal: off-diagonal magnitude {residual:e} exceeds {tol:e}")]
    NotBellDiagonal { residual: f64, tol: f64 },

    #[error("unknown channel kind {0:?}")]
    UnknownChannelKind(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
