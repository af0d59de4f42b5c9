//! Coherent information of bipartite states:
//! I^X(ϱ) = S(ϱ_X) − S(ϱ), clipped at zero.
//!
//! ```bash
//! cargo run --example coherent_information
//! ```

use cohinfo::coherent::{coherent_info, entropy, isotropic_ci};
use cohinfo::qla::Side;
use cohinfo::states::{bell_state, isotropic, random_bipartite, DensityMatrix, IsotropicParams};

fn main() -> cohinfo::Result<()> {
    println!("{:<34} {:>10} {:>10} {:>10}", "state", "S(rho)", "raw I^B", "clipped");

    let names = ["Phi+", "Phi-", "Psi+", "Psi-"];
    for (k, name) in names.iter().enumerate() {
        let rho = bell_state(k)?.to_density();
        let ci = coherent_info(&rho, Side::B)?;
        println!("{:<34} {:>10.6} {:>10.6} {:>10.6}", *name, entropy(&rho)?, ci.raw, ci.clipped);
    }

    let mixed = DensityMatrix::maximally_mixed((2, 2));
    let ci = coherent_info(&mixed, Side::B)?;
    println!("{:<34} {:>10.6} {:>10.6} {:>10.6}", "I/4 (two qubits)", entropy(&mixed)?, ci.raw, ci.clipped);

    for f in [0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        let params = IsotropicParams::new(f, 2)?;
        let rho = isotropic(params);
        let ci = coherent_info(&rho, Side::B)?;
        let closed = isotropic_ci(params, Side::B);
        println!(
            "{:<34} {:>10.6} {:>10.6} {:>10.6}   closed form {:+.6}",
            format!("isotropic F={f} d=2"),
            entropy(&rho)?,
            ci.raw,
            ci.clipped,
            closed.raw,
        );
    }

    for seed in 0..3u64 {
        let rho = random_bipartite((2, 2), seed);
        let a = coherent_info(&rho, Side::A)?;
        let b = coherent_info(&rho, Side::B)?;
        println!(
            "{:<34} {:>10.6} {:>10.6} {:>10.6}   (I^A raw {:+.6})",
            format!("Hilbert-Schmidt random, seed {seed}"),
            entropy(&rho)?,
            b.raw,
            b.clipped,
            a.raw,
        );
    }

    Ok(())
}
