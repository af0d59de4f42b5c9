//! Capacity-vs-noise table for the dephasing family, printed in the same
//! column layout the `sweep` subcommand writes to CSV.
//!
//! ```bash
//! cargo run --release --example noise_sweep
//! ```

use cohinfo::capopt::{maximally_mixed_ci, maximize_ci, OptConfig};
use cohinfo::channels::{standard_channel, StandardKind};
use cohinfo::coherent::hashing_rate;
use cohinfo::states::twirl_closed_form;

fn main() -> cohinfo::Result<()> {
    let cfg = OptConfig { restarts: 4, ..OptConfig::default() };
    println!("param,maximize_ci,maximally_mixed_ci,twirled_choi_hashing_rate");
    for i in 0..=10 {
        let p = i as f64 * 0.05;
        let ch = standard_channel(StandardKind::Dephasing, p)?;
        let best = maximize_ci(&ch, &cfg)?.best_ci_per_copy;
        let mm = maximally_mixed_ci(&ch, 1)?;
        let hashing = hashing_rate(&twirl_closed_form(&ch.choi_state()?)?)?;
        println!("{p:.2},{best:.10},{mm:.10},{hashing:.10}");
    }
    Ok(())
}
