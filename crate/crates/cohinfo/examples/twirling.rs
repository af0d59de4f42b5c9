//! U⊗U* twirling: the closed-form isotropic projection preserves the
//! overlap with P₊ exactly, and the Monte-Carlo average converges to it.
//!
//! ```bash
//! cargo run --release --example twirling
//! ```

use cohinfo::states::{random_bipartite, twirl_closed_form, twirl_monte_carlo};

fn main() -> cohinfo::Result<()> {
    let sigma = random_bipartite((2, 2), 42);
    let f_in = sigma.fidelity_with_max_entangled()?;
    let exact = twirl_closed_form(&sigma)?;
    println!("input fidelity with P+:   {f_in:.10}");
    println!("twirled fidelity with P+: {:.10}", exact.fidelity_with_max_entangled()?);
    println!();
    println!("{:>8} {:>16}", "samples", "trace distance");
    for samples in [10, 100, 1_000, 10_000] {
        let approx = twirl_monte_carlo(&sigma, samples, 7)?;
        println!("{:>8} {:>16.8}", samples, approx.trace_distance(&exact)?);
    }
    Ok(())
}
