//! Quantum channels as Kraus families.
//!
//! A [`KrausChannel`] holds operators K_j of shape d_out × d_in with
//! Σ K†K = I (trace preservation, checked to 1e-9 in Frobenius norm).
//! Besides direct application, channels can be extended to act on the B side
//! of a bipartite state as I⊗Λ, raised to tensor powers Λ^⊗n, and turned
//! into their Choi state (I⊗Λ)(P₊).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qla::{self, ComplexMatrix, DIM_BUDGET};
use crate::states::{max_entangled, DensityMatrix};
use crate::{Error, Result};

/// Completeness tolerance ‖ΣK†K − I‖_F for valid channels.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Completely positive trace-preserving map as a list of Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    kraus_ops: Vec<ComplexMatrix>,
    d_in: usize,
    d_out: usize,
}

/// The standard single-qubit noise families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    /// {√(1−p) I, √p Z}.
    Dephasing,
    /// Λ(ϱ) = (1−p)ϱ + p I/2, via Pauli Kraus weights {1−3p/4, p/4, p/4, p/4}.
    Depolarizing,
    /// Decay |1⟩→|0⟩ with probability γ.
    AmplitudeDamping,
    /// Qubit → qutrit with flag state |2⟩ reached with probability p.
    Erasure,
    /// The identity channel (dephasing at p = 0; listed for convenience).
    Identity,
}

impl StandardKind {
    /// Parse a kind name as used by the CLI (`dephasing`, `depolarizing`,
    /// `amplitude_damping`, `erasure`, `identity`).
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dephasing" => Ok(Self::Dephasing),
            "depolarizing" => Ok(Self::Depolarizing),
            "amplitude_damping" => Ok(Self::AmplitudeDamping),
            "erasure" => Ok(Self::Erasure),
            "identity" => Ok(Self::Identity),
            other => Err(Error::UnknownChannelKind(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Dephasing => "dephasing",
            Self::Depolarizing => "depolarizing",
            Self::AmplitudeDamping => "amplitude_damping",
            Self::Erasure => "erasure",
            Self::Identity => "identity",
        }
    }
}

impl KrausChannel {
    /// Validate and wrap a Kraus family.
    pub fn new(kraus_ops: Vec<ComplexMatrix>, d_in: usize, d_out: usize) -> Result<Self> {
        if kraus_ops.is_empty() {
            return Err(Error::EmptyKraus);
        }
        for k in &kraus_ops {
            if k.rows() != d_out || k.cols() != d_in {
                return Err(Error::DimensionMismatch {
                    expected: d_out * d_in,
                    got: k.rows() * k.cols(),
                    context: "Kraus operator shape",
                });
            }
        }
        let channel = Self { kraus_ops, d_in, d_out };
        let residual = channel.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::KrausIncomplete { residual });
        }
        Ok(channel)
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// ‖Σ K†K − I‖_F.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.d_in, self.d_in);
        for k in &self.kraus_ops {
            acc = acc.add(&k.dagger().mul(k));
        }
        acc.sub(&ComplexMatrix::identity(self.d_in)).frobenius_norm()
    }

    /// Apply the channel to a state of dimension d_in (any bipartite split of
    /// the input is ignored; the output uses the single-system convention).
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                got: rho.dim(),
                context: "channel input",
            });
        }
        let mut out = ComplexMatrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus_ops {
            out = out.add(&k.mul(rho.matrix()).mul(&k.dagger()));
        }
        Ok(DensityMatrix::from_parts_unchecked(out.hermitized(), (1, self.d_out)))
    }

    /// Apply I⊗Λ to a bipartite state on (d_A, d_in), giving (d_A, d_out).
    pub fn extend_apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let (da, db) = rho.dims();
        if db != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                got: db,
                context: "extended channel B side",
            });
        }
        let eye = ComplexMatrix::identity(da);
        let mut out = ComplexMatrix::zeros(da * self.d_out, da * self.d_out);
        for k in &self.kraus_ops {
            let ext = qla::tensor(&eye, k);
            out = out.add(&ext.mul(rho.matrix()).mul(&ext.dagger()));
        }
        Ok(DensityMatrix::from_parts_unchecked(out.hermitized(), (da, self.d_out)))
    }

    /// Λ^⊗n with Kraus operators enumerated lexicographically over factor
    /// indices. Errors when the purified-and-channeled joint state would
    /// exceed the dense-kernel dimension budget.
    pub fn tensor_power(&self, n: usize) -> Result<KrausChannel> {
        if n == 0 {
            return Err(Error::ParamOutOfRange { name: "n", value: 0.0, lo: 1.0, hi: f64::INFINITY });
        }
        let joint = checked_pow(self.d_in * self.d_out, n)?;
        if joint > DIM_BUDGET {
            return Err(Error::BudgetExceeded { dim: joint, max: DIM_BUDGET });
        }
        let mut ops: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(1)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(ops.len() * self.kraus_ops.len());
            for prefix in &ops {
                for k in &self.kraus_ops {
                    next.push(qla::tensor(prefix, k));
                }
            }
            ops = next;
        }
        KrausChannel::new(ops, self.d_in.pow(n as u32), self.d_out.pow(n as u32))
    }

    /// Choi state (I⊗Λ)(P₊(d_in)): half of a maximally entangled pair sent
    /// through the channel.
    pub fn choi_state(&self) -> Result<DensityMatrix> {
        let p_plus = max_entangled(self.d_in)?.to_density();
        self.extend_apply(&p_plus)
    }
}

fn checked_pow(base: usize, n: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(base)
            .ok_or(Error::BudgetExceeded { dim: usize::MAX, max: DIM_BUDGET })?;
    }
    Ok(acc)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Build one of the standard noise channels with parameter in [0, 1].
pub fn standard_channel(kind: StandardKind, param: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&param) || !param.is_finite() {
        return Err(Error::ParamOutOfRange { name: "param", value: param, lo: 0.0, hi: 1.0 });
    }
    match kind {
        StandardKind::Identity => {
            KrausChannel::new(vec![ComplexMatrix::identity(2)], 2, 2)
        }
        StandardKind::Dephasing => {
            let p = param;
            let k0 = ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt());
            let mut z = ComplexMatrix::zeros(2, 2);
            z[(0, 0)] = c(p.sqrt());
            z[(1, 1)] = c(-p.sqrt());
            KrausChannel::new(vec![k0, z], 2, 2)
        }
        StandardKind::Depolarizing => {
            let p = param;
            let mut x = ComplexMatrix::zeros(2, 2);
            x[(0, 1)] = c(1.0);
            x[(1, 0)] = c(1.0);
            let mut y = ComplexMatrix::zeros(2, 2);
            y[(0, 1)] = Complex64::new(0.0, -1.0);
            y[(1, 0)] = Complex64::new(0.0, 1.0);
            let mut z = ComplexMatrix::zeros(2, 2);
            z[(0, 0)] = c(1.0);
            z[(1, 1)] = c(-1.0);
            let w_i = (1.0 - 3.0 * p / 4.0).sqrt();
            let w_p = (p / 4.0).sqrt();
            KrausChannel::new(
                vec![
                    ComplexMatrix::identity(2).scale_re(w_i),
                    x.scale_re(w_p),
                    y.scale_re(w_p),
                    z.scale_re(w_p),
                ],
                2,
                2,
            )
        }
        StandardKind::AmplitudeDamping => {
            let gamma = param;
            let mut k0 = ComplexMatrix::zeros(2, 2);
            k0[(0, 0)] = c(1.0);
            k0[(1, 1)] = c((1.0 - gamma).sqrt());
            let mut k1 = ComplexMatrix::zeros(2, 2);
            k1[(0, 1)] = c(gamma.sqrt());
            KrausChannel::new(vec![k0, k1], 2, 2)
        }
        StandardKind::Erasure => {
            let p = param;
            // Qubit in, qutrit out: keep with √(1−p), flag |2⟩ with √p.
            let mut keep = ComplexMatrix::zeros(3, 2);
            keep[(0, 0)] = c((1.0 - p).sqrt());
            keep[(1, 1)] = c((1.0 - p).sqrt());
            let mut flag0 = ComplexMatrix::zeros(3, 2);
            flag0[(2, 0)] = c(p.sqrt());
            let mut flag1 = ComplexMatrix::zeros(3, 2);
            flag1[(2, 1)] = c(p.sqrt());
            KrausChannel::new(vec![keep, flag0, flag1], 2, 3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qla::Side;
    use crate::states::{bell_state, random_bipartite, random_density};

    #[test]
    fn identity_channel_is_identity() {
        let id = standard_channel(StandardKind::Identity, 0.0).unwrap();
        let rho = random_density(2, 4);
        let out = id.apply(&rho).unwrap();
        assert!(out.matrix().sub(rho.matrix()).frobenius_norm() < 1e-14);

        let deph0 = standard_channel(StandardKind::Dephasing, 0.0).unwrap();
        let out = deph0.apply(&rho).unwrap();
        assert!(out.matrix().sub(rho.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn fully_depolarizing_outputs_maximally_mixed() {
        let ch = standard_channel(StandardKind::Depolarizing, 1.0).unwrap();
        for seed in 0..5u64 {
            let rho = random_density(2, seed);
            let out = ch.apply(&rho).unwrap();
            let target = ComplexMatrix::identity(2).scale_re(0.5);
            assert!(out.matrix().sub(&target).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn channels_preserve_trace_and_positivity() {
        let channels = [
            standard_channel(StandardKind::Dephasing, 0.3).unwrap(),
            standard_channel(StandardKind::Depolarizing, 0.6).unwrap(),
            standard_channel(StandardKind::AmplitudeDamping, 0.45).unwrap(),
            standard_channel(StandardKind::Erasure, 0.25).unwrap(),
        ];
        for (i, ch) in channels.iter().enumerate() {
            assert!(ch.completeness_residual() <= COMPLETENESS_TOL);
            for seed in 0..5u64 {
                let rho = random_density(2, 100 * i as u64 + seed);
                let out = ch.apply(&rho).unwrap();
                assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
                let min = qla::min_eigenvalue(out.matrix()).unwrap();
                assert!(min > -1e-9, "min eigenvalue {min}");
            }
        }
    }

    #[test]
    fn erasure_flag_population_equals_p() {
        let p = 0.37;
        let ch = standard_channel(StandardKind::Erasure, p).unwrap();
        for seed in 0..5u64 {
            let out = ch.apply(&random_density(2, seed)).unwrap();
            let flag = out.matrix()[(2, 2)].re;
            assert!((flag - p).abs() < 1e-12);
        }
    }

    #[test]
    fn extend_apply_identity_fixes_p_plus() {
        let id = standard_channel(StandardKind::Identity, 0.0).unwrap();
        let p_plus = bell_state(0).unwrap().to_density();
        let out = id.extend_apply(&p_plus).unwrap();
        assert!(out.matrix().sub(p_plus.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn fully_dephasing_p_plus_gives_classical_mixture() {
        // p = 1/2 is the fully decohering point of {√(1−p)I, √p Z}:
        // (I⊗Λ)(P₊) = ½Φ⁺ + ½Φ⁻ = ½(|00⟩⟨00| + |11⟩⟨11|).
        let ch = standard_channel(StandardKind::Dephasing, 0.5).unwrap();
        let p_plus = bell_state(0).unwrap().to_density();
        let out = ch.extend_apply(&p_plus).unwrap();
        let expect = ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(out.matrix().sub(&expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn extend_apply_preserves_a_reduction() {
        let ch = standard_channel(StandardKind::AmplitudeDamping, 0.3).unwrap();
        for seed in 0..5u64 {
            let rho = random_bipartite((2, 2), seed);
            let out = ch.extend_apply(&rho).unwrap();
            let before = rho.reduction(Side::A);
            let after = out.reduction(Side::A);
            assert!(before.sub(&after).frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn tensor_power_basics() {
        let ch = standard_channel(StandardKind::Dephasing, 0.2).unwrap();
        let one = ch.tensor_power(1).unwrap();
        assert_eq!(one.kraus_ops().len(), 2);
        assert_eq!(one.d_in(), 2);

        let two = ch.tensor_power(2).unwrap();
        assert_eq!(two.kraus_ops().len(), 4);
        assert_eq!(two.d_in(), 4);
        assert!(two.completeness_residual() <= COMPLETENESS_TOL);

        let id = standard_channel(StandardKind::Identity, 0.0).unwrap();
        let id3 = id.tensor_power(3).unwrap();
        let rho = random_density(8, 2);
        let out = id3.apply(&rho).unwrap();
        assert!(out.matrix().sub(rho.matrix()).frobenius_norm() < 1e-13);
    }

    #[test]
    fn tensor_power_budget_errors() {
        let ch = standard_channel(StandardKind::Dephasing, 0.2).unwrap();
        // (d_in·d_out)^n = 4^n: n = 3 is the last admissible power.
        assert!(ch.tensor_power(3).is_ok());
        assert!(matches!(ch.tensor_power(4), Err(Error::BudgetExceeded { .. })));

        let er = standard_channel(StandardKind::Erasure, 0.5).unwrap();
        assert!(er.tensor_power(2).is_ok()); // 6² = 36
        assert!(matches!(er.tensor_power(3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn choi_of_identity_is_p_plus() {
        let id = standard_channel(StandardKind::Identity, 0.0).unwrap();
        let choi = id.choi_state().unwrap();
        let p_plus = bell_state(0).unwrap().to_density();
        assert!(choi.matrix().sub(p_plus.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn choi_of_depolarizing_is_isotropic() {
        use crate::states::{isotropic, IsotropicParams};
        for p in [0.1, 0.4, 0.8] {
            let ch = standard_channel(StandardKind::Depolarizing, p).unwrap();
            let choi = ch.choi_state().unwrap();
            assert!((choi.matrix().trace().re - 1.0).abs() < 1e-12);
            let f = 1.0 - 3.0 * p / 4.0;
            let iso = isotropic(IsotropicParams::new(f, 2).unwrap());
            assert!(
                choi.matrix().sub(iso.matrix()).frobenius_norm() < 1e-12,
                "choi of depolarizing p={p} is not isotropic F={f}"
            );
            assert!((choi.fidelity_with_max_entangled().unwrap() - f).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_channel_rejects_bad_params() {
        assert!(standard_channel(StandardKind::Dephasing, -0.1).is_err());
        assert!(standard_channel(StandardKind::Erasure, 1.5).is_err());
        assert!(StandardKind::parse("bogus").is_err());
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let ch = standard_channel(StandardKind::Dephasing, 0.2).unwrap();
        let qutrit = random_density(3, 0);
        assert!(matches!(ch.apply(&qutrit), Err(Error::DimensionMismatch { .. })));

        let wrong_b = random_bipartite((2, 3), 0);
        assert!(matches!(ch.extend_apply(&wrong_b), Err(Error::DimensionMismatch { .. })));
    }
}
