//! Classes in `Z/d` that generate the same subgroup but lie in different
//! `GL_n(Z)`-orbits: the source of non-isomorphic bundles with isomorphic
//! cylinders.
//!
//!     cargo run --example noncancel_search -- 7

use torus_cancel::bundles::{
    counterexample_search, orbit, AutAction, BundleClass, DEFAULT_STATE_BUDGET,
};
use torus_cancel::intmat::FinAbGroup;

fn main() -> torus_cancel::Result<()> {
    let d: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("modulus"))
        .unwrap_or(7);
    let g = FinAbGroup::cyclic(d)?;
    let aut = AutAction::trivial(&g);

    let one = BundleClass::cyclic(d, &[1])?;
    let orb: Vec<String> = orbit(&one, &aut, DEFAULT_STATE_BUDGET)?
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("orbit of (1) in Z/{d}: {}", orb.join(" "));

    let pairs = counterexample_search(&g, 1, &aut, DEFAULT_STATE_BUDGET)?;
    println!(
        "{} pair(s) of distinct orbits with equal subgroups:",
        pairs.len()
    );
    for (p, q) in pairs {
        println!("  {p} vs {q}");
    }
    Ok(())
}
