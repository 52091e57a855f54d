//! Orbit decision for the rank-two classes `(21,15)` and `(7,30)` over
//! `Z/35`, and the hand-derived witness matrix.
//!
//!     cargo run --release --example higher_tori_orbits

use torus_cancel::bundles::{act, orbit_decide, AutAction, BundleClass, OrbitVerdict};
use torus_cancel::claims::desk_witness;

fn main() -> torus_cancel::Result<()> {
    let p = BundleClass::cyclic(35, &[21, 15])?;
    let q = BundleClass::cyclic(35, &[7, 30])?;
    let aut = AutAction::trivial(p.group());

    let budget = 35usize.pow(4);
    match orbit_decide(&p, &q, &aut, budget)? {
        OrbitVerdict::Equivalent { witness, explored } => {
            println!("{p} ~ {q}: {} (explored {explored} states)", witness.matrix);
        }
        OrbitVerdict::Distinct { orbit_size } => {
            println!("{p} and {q} are in distinct orbits; |orbit| = {orbit_size}");
        }
    }

    let w = desk_witness();
    println!(
        "hand witness {w}: det {}, image {}",
        w.determinant(),
        act(&w, &p)?
    );
    Ok(())
}
