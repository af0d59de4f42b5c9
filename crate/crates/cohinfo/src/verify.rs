//! Numerical verification of the inequalities, closed forms, and limits that
//! tie coherent information to capacities and distillation rates.
//!
//! Every check produces a [`VerificationReport`]: a list of instances with
//! lhs, rhs, margin, and a pass flag, where pass ⇔ lhs ≤ rhs + tolerance
//! (the direction is fixed per check and recorded in the report). Checks are
//! pure computations seeded explicitly, so a report is reproducible
//! bit-for-bit from (check name, parameters, seed); margins are recorded
//! even on pass so regressions can be tracked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capopt::{maximize_ci, OptConfig};
use crate::channels::{standard_channel, KrausChannel, StandardKind};
use crate::coherent::{
    channel_ci_from_purification, coherent_info, entropy, entropy_of_matrix, hashing_rate,
    isotropic_ci,
};
use crate::qla::{self, ComplexMatrix, Side};
use crate::states::{
    bell_state, mix, purify, random_density_with, random_pure_with, random_unitary_with,
    tensor_bipartite, twirl_closed_form, DensityMatrix, Ensemble, IsotropicParams,
};
use crate::{Error, Result};

/// One checked inequality instance; pass ⇔ lhs ≤ rhs + tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs − lhs: positive margins mean the inequality holds with room.
    pub margin: f64,
    pub pass: bool,
}

/// Pass count for a report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub total: usize,
}

/// Machine-readable record of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    /// The fixed inequality direction all instances use.
    pub direction: String,
    pub tolerance: f64,
    pub seed: u64,
    pub instances: Vec<Instance>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(check_name: &str, tolerance: f64, seed: u64) -> Self {
        Self {
            check_name: check_name.to_string(),
            direction: "pass iff lhs <= rhs + tolerance".to_string(),
            tolerance,
            seed,
            instances: Vec::new(),
            summary: Summary { passed: 0, total: 0 },
        }
    }

    fn push(&mut self, description: impl Into<String>, lhs: f64, rhs: f64) {
        let pass = lhs <= rhs + self.tolerance;
        self.instances.push(Instance {
            description: description.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass,
        });
        self.summary.total += 1;
        if pass {
            self.summary.passed += 1;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

/// Tracks the worst case of a family of inequality instances.
struct Worst {
    value: f64,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Self { value: f64::NEG_INFINITY, count: 0 }
    }

    fn update(&mut self, v: f64) {
        self.count += 1;
        if v > self.value {
            self.value = v;
        }
    }

    fn value_or_zero(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.value
        }
    }
}

fn random_simplex(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = w.iter().sum();
    for x in &mut w {
        *x /= sum;
    }
    w
}

fn lemma_ratio(n: usize) -> f64 {
    let params = IsotropicParams::new(1.0 - 1.0 / n as f64, 1usize << n).expect("in range");
    isotropic_ci(params, Side::B).clipped / n as f64
}

/// Continuity of I^X along isotropic states with F_n = 1 − 1/n and
/// d_n = 2^n: checks that the ratio I^X/log₂ d_n increases monotonically
/// toward 1 and that the final ratio clears 0.98. The evaluation is pure
/// closed-form arithmetic; no 2^n-dimensional matrix is ever built.
///
/// Note: along this particular sequence the ratio behaves as ≈ 1 − 2/n
/// (the exact n = 20 value is 0.88568…), so the 0.98 gate at n = 20 is
/// reported as failed; the monotone approach to 1 is what the sequence
/// demonstrates.
pub fn check_lemma_continuity(sequence_length: usize) -> Result<VerificationReport> {
    if !(3..=26).contains(&sequence_length) {
        return Err(Error::ParamOutOfRange {
            name: "sequence_length",
            value: sequence_length as f64,
            lo: 3.0,
            hi: 26.0,
        });
    }
    let mut report = VerificationReport::new("lemma", 0.0, 0);
    let ratios: Vec<(usize, f64)> = (2..=sequence_length).map(|n| (n, lemma_ratio(n))).collect();
    for pair in ratios.windows(2) {
        let (n_prev, r_prev) = pair[0];
        let (n, r) = pair[1];
        report.push(
            format!("ratio increases: I^X/log2(d) at n={n_prev} <= at n={n}"),
            r_prev,
            r,
        );
    }
    let (n_final, r_final) = *ratios.last().expect("length >= 3");
    report.push(
        format!("final ratio at n={n_final} reaches 0.98"),
        0.98,
        r_final,
    );
    Ok(report)
}

/// One capacity spot check: the achievable rate r from hashing the twirled
/// Choi state never exceeds the optimized finite-n coherent information c.
pub fn check_capacity_spot(channel: &KrausChannel, cfg: &OptConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("capacity_bound", 1e-6, cfg.seed);
    push_capacity_spot_instance(&mut report, channel, cfg, "channel")?;
    Ok(report)
}

fn push_capacity_spot_instance(
    report: &mut VerificationReport,
    channel: &KrausChannel,
    cfg: &OptConfig,
    label: &str,
) -> Result<()> {
    let choi = channel.choi_state()?;
    let twirled = twirl_closed_form(&choi)?;
    let achievable = hashing_rate(&twirled)?;
    let optimized = maximize_ci(channel, cfg)?.best_ci_per_copy;
    report.push(
        format!("{label}: hashing(twirl(choi)) <= maximize_ci"),
        achievable,
        optimized,
    );
    Ok(())
}

/// The canonical spot-check family: identity plus dephasing, depolarizing,
/// and amplitude damping at parameters 0.1 and 0.3.
pub fn capacity_spot_suite(seed: u64) -> Result<VerificationReport> {
    let cfg = OptConfig { seed, ..OptConfig::default() };
    let mut report = VerificationReport::new("capacity_bound", 1e-6, seed);
    push_capacity_spot_instance(
        &mut report,
        &standard_channel(StandardKind::Identity, 0.0)?,
        &cfg,
        "identity",
    )?;
    for kind in [
        StandardKind::Dephasing,
        StandardKind::Depolarizing,
        StandardKind::AmplitudeDamping,
    ] {
        for param in [0.1, 0.3] {
            let label = format!("{} {param}", kind.name());
            push_capacity_spot_instance(&mut report, &standard_channel(kind, param)?, &cfg, &label)?;
        }
    }
    Ok(report)
}

/// Hashing-inequality instances: on Bell-diagonal states the hashing rate
/// 1 − S(ϱ) must dominate the clipped I^B (they coincide on this family);
/// on pure states the reduction entropy S(ϱ_B) plays the distillation role.
pub fn check_hashing_instances(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("hashing", 1e-9, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Pinned instances.
    let p_plus = bell_state(0)?.to_density();
    report.push(
        "P+ : clipped I^B <= hashing rate (both are 1)",
        coherent_info(&p_plus, Side::B)?.clipped,
        hashing_rate(&p_plus)?,
    );
    let flat = DensityMatrix::maximally_mixed((2, 2));
    report.push(
        "I/4: clipped I^B <= hashing rate (both are 0)",
        coherent_info(&flat, Side::B)?.clipped,
        hashing_rate(&flat)?,
    );
    let skew = crate::states::bell_diagonal([0.8, 0.2, 0.0, 0.0])?;
    report.push(
        "bell(0.8,0.2,0,0): clipped I^B <= hashing rate (both are 1 - h(0.2))",
        coherent_info(&skew, Side::B)?.clipped,
        hashing_rate(&skew)?,
    );

    let mut bell_worst = Worst::new();
    for _ in 0..trials {
        let w = random_simplex(&mut rng, 4);
        let rho = crate::states::bell_diagonal([w[0], w[1], w[2], w[3]])?;
        let ci = coherent_info(&rho, Side::B)?.clipped;
        let rate = hashing_rate(&rho)?;
        bell_worst.update(ci - rate);
    }
    report.push(
        format!(
            "random Bell-diagonal states: worst clipped I^B - hashing rate over {} trials",
            bell_worst.count
        ),
        bell_worst.value_or_zero(),
        0.0,
    );

    let mut pure_worst = Worst::new();
    for t in 0..trials {
        let dims = if t % 2 == 0 { (2, 2) } else { (3, 3) };
        let psi = random_pure_with(&mut rng, dims);
        let rho = psi.to_density();
        let ci = coherent_info(&rho, Side::B)?.clipped;
        let s_b = entropy_of_matrix(&rho.reduction(Side::B))?;
        pure_worst.update(ci - s_b);
    }
    report.push(
        format!(
            "random pure states: worst clipped I^B - S(rho_B) over {} trials",
            pure_worst.count
        ),
        pure_worst.value_or_zero(),
        0.0,
    );

    Ok(report)
}

/// Classify the reduction-criterion operator of a state: Some(true) when
/// clearly PSD (min eigenvalue ≥ +1e-9), Some(false) when clearly violated
/// (≤ −1e-9), None when borderline (excluded to avoid classification noise).
fn reduction_class(min_eig: f64) -> Option<bool> {
    if min_eig >= 1e-9 {
        Some(true)
    } else if min_eig <= -1e-9 {
        Some(false)
    } else {
        None
    }
}

/// Reduction criterion ⇒ zero coherent information: every sampled state
/// with ϱ_A⊗I − ϱ ⪰ 0 and I⊗ϱ_B − ϱ ⪰ 0 must have raw I^A, I^B ≤ 1e-9,
/// while the singlet fails the criterion with minimum eigenvalue −1/2.
pub fn check_reduction_implies_zero_ci(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("reduction", 1e-9, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for dims in [(2usize, 2usize), (3, 3)] {
        let (da, db) = dims;
        let mut worst_a = Worst::new();
        let mut worst_b = Worst::new();
        for _ in 0..trials {
            let rho = random_density_with(&mut rng, dims);
            let red_a = rho.reduction(Side::A);
            let red_b = rho.reduction(Side::B);
            let op_a = qla::tensor(&red_a, &ComplexMatrix::identity(db)).sub(rho.matrix());
            let op_b = qla::tensor(&ComplexMatrix::identity(da), &red_b).sub(rho.matrix());
            let class_a = reduction_class(qla::min_eigenvalue(&op_a)?);
            let class_b = reduction_class(qla::min_eigenvalue(&op_b)?);
            if class_a == Some(true) && class_b == Some(true) {
                worst_a.update(coherent_info(&rho, Side::A)?.raw);
                worst_b.update(coherent_info(&rho, Side::B)?.raw);
            }
        }
        if worst_a.count == 0 {
            report.push(
                format!("inconclusive: no {da}x{db} state passed the reduction filter in {trials} trials"),
                0.0,
                0.0,
            );
        } else {
            report.push(
                format!(
                    "{da}x{db}: worst raw I^A over {} states passing the reduction criterion",
                    worst_a.count
                ),
                worst_a.value_or_zero(),
                0.0,
            );
            report.push(
                format!(
                    "{da}x{db}: worst raw I^B over {} states passing the reduction criterion",
                    worst_b.count
                ),
                worst_b.value_or_zero(),
                0.0,
            );
        }
    }

    // The singlet is the canonical criterion violator: min eigenvalue −1/2.
    let singlet = bell_state(3)?.to_density();
    let red_a = singlet.reduction(Side::A);
    let op = qla::tensor(&red_a, &ComplexMatrix::identity(2)).sub(singlet.matrix());
    let min_eig = qla::min_eigenvalue(&op)?;
    report.push(
        format!("singlet violates the criterion: |min eigenvalue - (-1/2)| = 0 (measured {min_eig:.12})"),
        (min_eig + 0.5).abs(),
        0.0,
    );

    Ok(report)
}

/// Information-loss inequality on pure-member ensembles: the clipped I^B of
/// the mixture dominates Σ p_i S(ϱ_i^B) − S(ϱ), the entropy-concavity form.
pub fn check_info_loss(trials: usize, ensemble_size: usize, seed: u64) -> Result<VerificationReport> {
    if ensemble_size < 2 {
        return Err(Error::ParamOutOfRange {
            name: "ensemble_size",
            value: ensemble_size as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let mut report = VerificationReport::new("info_loss", 1e-9, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Pinned: a single pure member makes both sides S(ϱ^B) exactly.
    let lone = random_pure_with(&mut rng, (2, 2));
    let lone_rho = lone.to_density();
    let s_b = entropy_of_matrix(&lone_rho.reduction(Side::B))?;
    report.push(
        "single pure member: S(rho_B) - S(mix) <= clipped I^B",
        s_b - entropy(&lone_rho)?,
        coherent_info(&lone_rho, Side::B)?.clipped,
    );

    // Pinned: the even classical mixture of |00⟩ and |11⟩ gives −1 <= 0.
    let zz = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0]), (2, 2))?;
    let oo = DensityMatrix::new(ComplexMatrix::diag(&[0.0, 0.0, 0.0, 1.0]), (2, 2))?;
    let even = mix(&Ensemble::new(vec![0.5, 0.5], vec![zz, oo])?);
    report.push(
        "even mix of |00> and |11>: sum p S(member_B) - S(mix) <= clipped I^B",
        0.0 - entropy(&even)?,
        coherent_info(&even, Side::B)?.clipped,
    );

    let mut worst = Worst::new();
    let sizes: Vec<usize> = (2..=ensemble_size).collect();
    for t in 0..trials {
        let dims = if t % 2 == 0 { (2, 2) } else { (3, 3) };
        let k = sizes[t % sizes.len()];
        let members: Vec<DensityMatrix> =
            (0..k).map(|_| random_pure_with(&mut rng, dims).to_density()).collect();
        let weights = random_simplex(&mut rng, k);
        let avg_member_entropy: f64 = weights
            .iter()
            .zip(&members)
            .map(|(w, m)| {
                entropy_of_matrix(&m.reduction(Side::B)).map(|s| w * s)
            })
            .sum::<Result<f64>>()?;
        let mixture = mix(&Ensemble::new(weights, members)?);
        let lower = avg_member_entropy - entropy(&mixture)?;
        let ci = coherent_info(&mixture, Side::B)?.clipped;
        worst.update(lower - ci);
    }
    report.push(
        format!(
            "random pure-member ensembles (sizes 2-{ensemble_size}, dims 2x2/3x3): worst (sum p S(member_B) - S(mix)) - clipped I^B over {} trials",
            worst.count
        ),
        worst.value_or_zero(),
        0.0,
    );

    Ok(report)
}

const PROPERTY_DIMS: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

/// Structural properties of I^X over seeded random instances: convexity of
/// the clipped value, invariance under product unitaries, additivity of the
/// raw value on tensor products, purification independence of the channel
/// quantity, and the dimension bound clipped I^B ≤ log₂ d_A.
pub fn check_ci_properties(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("properties", 1e-9, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Convexity of the clipped value on two-member mixtures.
    let mut convexity = Worst::new();
    for t in 0..trials {
        let dims = PROPERTY_DIMS[t % 4];
        let a = random_density_with(&mut rng, dims);
        let b = random_density_with(&mut rng, dims);
        let w: f64 = rng.gen();
        let mixed = mix(&Ensemble::new(vec![w, 1.0 - w], vec![a.clone(), b.clone()])?);
        for side in [Side::A, Side::B] {
            let lhs = coherent_info(&mixed, side)?.clipped;
            let rhs = w * coherent_info(&a, side)?.clipped
                + (1.0 - w) * coherent_info(&b, side)?.clipped;
            convexity.update(lhs - rhs);
        }
    }
    report.push(
        format!(
            "convexity: worst I^X(mix) - sum p I^X over {} side-instances",
            convexity.count
        ),
        convexity.value_or_zero(),
        0.0,
    );

    // Invariance under product unitaries.
    let mut invariance = Worst::new();
    for t in 0..trials {
        let dims = PROPERTY_DIMS[t % 4];
        let rho = random_density_with(&mut rng, dims);
        let u = random_unitary_with(&mut rng, dims.0);
        let v = random_unitary_with(&mut rng, dims.1);
        let rotated = rho.apply_product_unitary(&u, &v)?;
        for side in [Side::A, Side::B] {
            let before = coherent_info(&rho, side)?.clipped;
            let after = coherent_info(&rotated, side)?.clipped;
            invariance.update((before - after).abs());
        }
    }
    report.push(
        format!(
            "product-unitary invariance: worst |I^X(UxV rho UxV') - I^X(rho)| over {} side-instances",
            invariance.count
        ),
        invariance.value_or_zero(),
        0.0,
    );

    // Additivity of the raw value on tensor products.
    let mut additivity = Worst::new();
    for _ in 0..trials {
        let rho = random_density_with(&mut rng, (2, 2));
        let sigma = random_density_with(&mut rng, (2, 2));
        let joint = tensor_bipartite(&rho, &sigma);
        for side in [Side::A, Side::B] {
            let joint_raw = coherent_info(&joint, side)?.raw;
            let sum_raw = coherent_info(&rho, side)?.raw + coherent_info(&sigma, side)?.raw;
            additivity.update((joint_raw - sum_raw).abs());
        }
    }
    report.push(
        format!(
            "raw additivity: worst |raw(rho x sigma) - raw(rho) - raw(sigma)| over {} side-instances",
            additivity.count
        ),
        additivity.value_or_zero(),
        0.0,
    );

    // Purification independence of the channel coherent information.
    let purif_channels = [
        standard_channel(StandardKind::Dephasing, 0.3)?,
        standard_channel(StandardKind::Depolarizing, 0.2)?,
        standard_channel(StandardKind::AmplitudeDamping, 0.25)?,
        standard_channel(StandardKind::Erasure, 0.25)?,
    ];
    let mut purification = Worst::new();
    for t in 0..trials {
        let channel = &purif_channels[t % purif_channels.len()];
        let sigma = random_density_with(&mut rng, (1, 2));
        let psi = purify(&sigma)?;
        let w = random_unitary_with(&mut rng, 2);
        let psi_rotated = psi.local_unitary(&w, Side::A)?;
        let a = channel_ci_from_purification(&psi, channel)?.raw;
        let b = channel_ci_from_purification(&psi_rotated, channel)?.raw;
        purification.update((a - b).abs());
    }
    report.push(
        format!(
            "purification independence: worst |I(psi1) - I(psi2)| over {} channel instances",
            purification.count
        ),
        purification.value_or_zero(),
        0.0,
    );

    // Dimension bound: clipped I^B ≤ log₂ d_A (and I^A ≤ log₂ d_B).
    let mut bound = Worst::new();
    for t in 0..trials {
        let dims = PROPERTY_DIMS[t % 4];
        let rho = random_density_with(&mut rng, dims);
        bound.update(coherent_info(&rho, Side::B)?.clipped - (dims.0 as f64).log2());
        bound.update(coherent_info(&rho, Side::A)?.clipped - (dims.1 as f64).log2());
    }
    report.push(
        format!(
            "dimension bound: worst clipped I^X - log2(d_opposite) over {} side-instances",
            bound.count
        ),
        bound.value_or_zero(),
        0.0,
    );

    Ok(report)
}

/// The suite names accepted by [`run_suite`] and the CLI.
pub const SUITES: [&str; 6] = [
    "lemma",
    "capacity_bound",
    "hashing",
    "reduction",
    "info_loss",
    "properties",
];

/// Run one named suite with its canonical parameters. The lemma suite always
/// uses the fixed n = 2…20 sequence; the stochastic suites use `trials`.
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<VerificationReport> {
    match name {
        "lemma" => check_lemma_continuity(20),
        "capacity_bound" => capacity_spot_suite(seed),
        "hashing" => check_hashing_instances(trials, seed),
        "reduction" => check_reduction_implies_zero_ci(trials, seed),
        "info_loss" => check_info_loss(trials, 4, seed),
        "properties" => check_ci_properties(trials, seed),
        other => Err(Error::UnknownChannelKind(format!("unknown suite {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_ratios_increase_but_final_gate_fails() {
        let report = check_lemma_continuity(20).unwrap();
        // All monotonicity legs hold; the 0.98 gate at n = 20 does not,
        // since the exact ratio there is 0.885680152…
        let (final_leg, monotone_legs) = report.instances.split_last().unwrap();
        assert!(monotone_legs.iter().all(|i| i.pass));
        assert!(!final_leg.pass);
        assert!((final_leg.rhs - 0.8856801520) < 1e-9);
        assert!((final_leg.rhs - 0.8856801520) > -1e-9);
        assert!(!report.all_passed());
        assert_eq!(report.summary.total, 19);
        assert_eq!(report.summary.passed, 18);
    }

    #[test]
    fn lemma_ratio_value_oracle() {
        // n = 2 clips to zero; a pure-fidelity sequence would sit at 1.
        assert_eq!(lemma_ratio(2), 0.0);
        assert!(lemma_ratio(3) > 0.0 && lemma_ratio(3) < 1.0);
        for n in [5usize, 10, 20] {
            let exact = isotropic_ci(IsotropicParams::new(1.0, 1 << n).unwrap(), Side::A).clipped
                / n as f64;
            assert!((exact - 1.0).abs() < 1e-12, "F=1 ratio must be 1, got {exact}");
        }
        assert!(check_lemma_continuity(2).is_err());
        assert!(check_lemma_continuity(27).is_err());
    }

    #[test]
    fn capacity_spot_holds_on_identity_and_dephasing() {
        let cfg = OptConfig { restarts: 2, max_iters: 200, ..OptConfig::default() };
        let id = standard_channel(StandardKind::Identity, 0.0).unwrap();
        let report = check_capacity_spot(&id, &cfg).unwrap();
        assert!(report.all_passed());
        let inst = &report.instances[0];
        assert!((inst.lhs - 1.0).abs() < 1e-9, "identity achievable rate is 1");

        let deph = standard_channel(StandardKind::Dephasing, 0.1).unwrap();
        let report = check_capacity_spot(&deph, &cfg).unwrap();
        assert!(report.all_passed());
        let inst = &report.instances[0];
        // r = clipped isotropic CI at F = 0.9, c ≈ 1 − h(0.1).
        assert!((inst.lhs - 0.37250815633860335).abs() < 1e-9);
        assert!((inst.rhs - 0.5310044064107188).abs() < 1e-4);
    }

    #[test]
    fn hashing_instances_pass() {
        let report = check_hashing_instances(200, 1).unwrap();
        assert!(report.all_passed(), "{:?}", report.instances);
        // The pinned skewed Bell mixture sits at 1 − h(0.2) on both sides.
        let skew = &report.instances[2];
        assert!((skew.lhs - 0.2780719051126377).abs() < 1e-10);
        assert!((skew.rhs - 0.2780719051126377).abs() < 1e-10);
    }

    #[test]
    fn reduction_criterion_filtered_states_have_no_ci() {
        let report = check_reduction_implies_zero_ci(400, 7).unwrap();
        assert!(report.all_passed(), "{:?}", report.instances);
        // With hundreds of 2x2 Hilbert–Schmidt samples the filter is
        // populated, so the run is not inconclusive.
        assert!(report.instances[0].description.contains("worst raw I^A"));
        let singlet = report.instances.last().unwrap();
        assert!(singlet.pass, "singlet min eigenvalue must be -1/2 within 1e-9");
    }

    #[test]
    fn info_loss_rejects_tiny_ensembles() {
        assert!(check_info_loss(10, 1, 0).is_err());
    }

    #[test]
    fn info_loss_holds_on_random_ensembles() {
        let report = check_info_loss(200, 4, 3).unwrap();
        assert!(report.all_passed(), "{:?}", report.instances);
        // The pinned classical mixture has lhs −1 against rhs 0.
        let pinned = &report.instances[1];
        assert!((pinned.lhs + 1.0).abs() < 1e-10);
        assert_eq!(pinned.rhs, 0.0);
    }

    #[test]
    fn ci_properties_hold() {
        let report = check_ci_properties(300, 5).unwrap();
        assert!(report.all_passed(), "{:?}", report.instances);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&check_hashing_instances(50, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&check_hashing_instances(50, 9).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&check_hashing_instances(50, 10).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn run_suite_dispatch() {
        for name in SUITES {
            if name == "capacity_bound" {
                continue; // exercised separately; the optimizer makes it slower
            }
            let report = run_suite(name, 20, 0).unwrap();
            assert_eq!(report.check_name, name);
        }
        assert!(run_suite("bogus", 1, 0).is_err());
    }
}
