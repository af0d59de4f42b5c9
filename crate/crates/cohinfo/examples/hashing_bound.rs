//! The hashing rate 1 − S(ϱ) of Bell-diagonal states coincides with the
//! clipped I^B on that family, and hashing the twirled Choi state gives an
//! achievable rate that stays below the optimized channel CI.
//!
//! ```bash
//! cargo run --release --example hashing_bound
//! ```

use cohinfo::capopt::{maximize_ci, OptConfig};
use cohinfo::channels::{standard_channel, StandardKind};
use cohinfo::coherent::{coherent_info, hashing_rate};
use cohinfo::qla::Side;
use cohinfo::states::{bell_diagonal, twirl_closed_form};

fn main() -> cohinfo::Result<()> {
    println!("{:<34} {:>14} {:>14}", "Bell-diagonal state", "hashing rate", "clipped I^B");
    for probs in [
        [1.0, 0.0, 0.0, 0.0],
        [0.8, 0.2, 0.0, 0.0],
        [0.7, 0.1, 0.1, 0.1],
        [0.25, 0.25, 0.25, 0.25],
    ] {
        let rho = bell_diagonal(probs)?;
        println!(
            "{:<34} {:>14.8} {:>14.8}",
            format!("{probs:?}"),
            hashing_rate(&rho)?,
            coherent_info(&rho, Side::B)?.clipped
        );
    }

    println!("\n{:<26} {:>16} {:>16}", "channel", "hash(twirl Choi)", "optimized CI");
    let cfg = OptConfig::default();
    for (kind, param) in [
        (StandardKind::Dephasing, 0.1),
        (StandardKind::Depolarizing, 0.1),
        (StandardKind::AmplitudeDamping, 0.1),
        (StandardKind::AmplitudeDamping, 0.3),
    ] {
        let ch = standard_channel(kind, param)?;
        let achievable = hashing_rate(&twirl_closed_form(&ch.choi_state()?)?)?;
        let optimized = maximize_ci(&ch, &cfg)?.best_ci_per_copy;
        println!(
            "{:<26} {:>16.8} {:>16.8}",
            format!("{} {param}", kind.name()),
            achievable,
            optimized
        );
    }
    Ok(())
}
