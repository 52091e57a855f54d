//! Matrices `A`, `B` identifying the padded classes `(c1, 0)` and `(c2, 0)`
//! with the joint class `(c1, c2)`.
//!
//!     cargo run --example cylinder_witnesses

use torus_cancel::bundles::{act, cylinder_witnesses, pad, BundleClass};

fn show(d: i64, c1: &[i64], c2: &[i64]) -> torus_cancel::Result<()> {
    let p = BundleClass::cyclic(d, c1)?;
    let q = BundleClass::cyclic(d, c2)?;
    let w = cylinder_witnesses(&p, &q)?;
    let n = p.n();
    println!("Z/{d}: {p} and {q}");
    println!(
        "  A = {}  A·{} = {}",
        w.a,
        pad(&p, n),
        act(&w.a, &pad(&p, n))?
    );
    println!(
        "  B = {}  B·{} = {}",
        w.b,
        pad(&q, n),
        act(&w.b, &pad(&q, n))?
    );
    println!("  verified: {}", w.verify(&p, &q));
    Ok(())
}

fn main() -> torus_cancel::Result<()> {
    show(7, &[1], &[2])?;
    show(35, &[21, 15], &[7, 30])?;
    show(385, &[1, 2, 3], &[2, 4, 6])
}
