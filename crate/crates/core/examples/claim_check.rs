//! Runs the claim suite and prints one line per claim, with a re-check of
//! each certificate.
//!
//!     cargo run --release --example claim_check

use torus_cancel::claims::{run_all, CheckOptions};

fn main() {
    for (id, r) in run_all(&CheckOptions::default()) {
        match r {
            Ok(rep) => println!(
                "{id}: {} (certificate re-checks: {})\n    {}",
                rep.status,
                rep.certificate.verify(),
                rep.summary
            ),
            Err(e) => println!("{id}: error: {e}"),
        }
    }
}
