//! Run every verification suite and print a one-line summary per suite plus
//! any failing instance. The lemma suite's 0.98 gate at n = 20 is expected
//! to report a failure: the exact ratio there is 0.8857 for the hard-coded
//! F_n = 1 − 1/n sequence.
//!
//! ```bash
//! cargo run --release --example verification_suites
//! ```

use cohinfo::verify::{run_suite, SUITES};

fn main() -> cohinfo::Result<()> {
    let trials = 500;
    let seed = 0;
    for name in SUITES {
        let report = run_suite(name, trials, seed)?;
        println!(
            "suite {:<11} {}/{} passed (tolerance {:e})",
            name, report.summary.passed, report.summary.total, report.tolerance
        );
        for instance in report.instances.iter().filter(|i| !i.pass) {
            println!("    FAIL {} (lhs {:.9}, rhs {:.9})", instance.description, instance.lhs, instance.rhs);
        }
    }
    Ok(())
}
