//! Continuity of I^X on isotropic states: along F_n = 1 − 1/n, d_n = 2^n
//! the ratio I^X/log₂ d_n climbs monotonically toward 1 (the exact rate is
//! about 1 − 2/n, so the approach is slow). Everything is closed-form
//! arithmetic; no 2^n-dimensional matrix is built.
//!
//! ```bash
//! cargo run --example lemma_limit
//! ```

use cohinfo::coherent::isotropic_ci;
use cohinfo::qla::Side;
use cohinfo::states::IsotropicParams;

fn main() -> cohinfo::Result<()> {
    println!("{:>4} {:>12} {:>14} {:>14}", "n", "F = 1-1/n", "I^X (bits)", "I^X / log2 d");
    for n in 2..=20usize {
        let f = 1.0 - 1.0 / n as f64;
        let ci = isotropic_ci(IsotropicParams::new(f, 1usize << n)?, Side::B);
        println!("{:>4} {:>12.6} {:>14.6} {:>14.9}", n, f, ci.clipped, ci.clipped / n as f64);
    }
    println!("\nwith F fixed at 1 the ratio sits at 1 for every n:");
    for n in [5usize, 10, 20] {
        let ci = isotropic_ci(IsotropicParams::new(1.0, 1usize << n)?, Side::B);
        println!("  n={n:<3} ratio {:.12}", ci.clipped / n as f64);
    }
    Ok(())
}
