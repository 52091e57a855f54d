//! The monomial automorphism `(t, u) ↦ (t^k·u, t^(b·d)·u^a)` of the
//! two-torus, which intertwines the `μ_d`-weights `(1, 0)` and `(k, 0)`.
//!
//!     cargo run --example explicit_isomorphism -- 7 3

use torus_cancel::monomial::{explicit_isomorphism, invert, is_equivariant, DiagonalWeightAction};

fn main() -> torus_cancel::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<i64>().expect("integer"));
    let d = args.next().unwrap_or(7);
    let k = args.next().unwrap_or(3);

    let iso = explicit_isomorphism(d, k)?;
    println!("d = {d}, k = {k}: a = {}, b = {}", iso.a, iso.b);
    println!(
        "exponent matrix {} (det {})",
        iso.map.exponents(),
        iso.map.exponents().determinant()
    );
    println!("inverse exponents {}", invert(&iso.map)?.exponents());

    let src = DiagonalWeightAction::new(d, vec![1, 0])?;
    let tgt = DiagonalWeightAction::new(d, vec![k, 0])?;
    println!("equivariant: {}", is_equivariant(&iso.map, &src, &tgt)?);
    Ok(())
}
