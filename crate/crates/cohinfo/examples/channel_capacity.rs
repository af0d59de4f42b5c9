//! Finite-n lower bounds on channel capacity: maximize I(ϱ, Λ^⊗n)/n over
//! input states and compare against closed forms and the diagonal grid
//! oracle.
//!
//! ```bash
//! cargo run --release --example channel_capacity
//! ```

use cohinfo::capopt::{grid_oracle_diag, maximally_mixed_ci, maximize_ci, OptConfig};
use cohinfo::channels::{standard_channel, StandardKind};
use cohinfo::coherent::binary_entropy;

fn main() -> cohinfo::Result<()> {
    let cfg = OptConfig::default();
    println!("all values in bits per channel use; every entry is a finite-n lower bound\n");
    println!(
        "{:<26} {:>12} {:>12} {:>12} {:>12}",
        "channel", "optimized", "mixed input", "grid oracle", "closed form"
    );

    for p in [0.0, 0.1, 0.25] {
        let ch = standard_channel(StandardKind::Dephasing, p)?;
        let best = maximize_ci(&ch, &cfg)?.best_ci_per_copy;
        let mm = maximally_mixed_ci(&ch, 1)?;
        let grid = grid_oracle_diag(&ch, 2_000)?;
        println!(
            "{:<26} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            format!("dephasing p={p}"),
            best,
            mm,
            grid,
            1.0 - binary_entropy(p)
        );
    }

    for gamma in [0.1, 0.25, 0.4, 0.6] {
        let ch = standard_channel(StandardKind::AmplitudeDamping, gamma)?;
        let best = maximize_ci(&ch, &cfg)?.best_ci_per_copy;
        let mm = maximally_mixed_ci(&ch, 1)?;
        let grid = grid_oracle_diag(&ch, 10_000)?;
        println!(
            "{:<26} {:>12.8} {:>12.8} {:>12.8} {:>12}",
            format!("amplitude damping {gamma}"),
            best,
            mm,
            grid,
            "-"
        );
    }

    for p in [0.25, 0.5] {
        let ch = standard_channel(StandardKind::Erasure, p)?;
        let best = maximize_ci(&ch, &cfg)?.best_ci_per_copy;
        let mm = maximally_mixed_ci(&ch, 1)?;
        println!(
            "{:<26} {:>12.8} {:>12.8} {:>12} {:>12.8}",
            format!("erasure p={p}"),
            best,
            mm,
            "-",
            (1.0 - 2.0 * p).max(0.0)
        );
    }

    // Two copies of a dephasing channel: the per-copy value is stable,
    // as expected from additivity on this family.
    let p = 0.1;
    let ch = standard_channel(StandardKind::Dephasing, p)?;
    let cfg2 = OptConfig { n: 2, restarts: 2, max_iters: 150, ..OptConfig::default() };
    let two = maximize_ci(&ch, &cfg2)?;
    println!(
        "\ndephasing p={p} at n=2: per-copy {:.8} (n=1 closed form {:.8})",
        two.best_ci_per_copy,
        1.0 - binary_entropy(p)
    );

    Ok(())
}
