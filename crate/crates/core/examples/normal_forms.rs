//! Smith and Hermite normal forms of a small integer matrix.
//!
//!     cargo run --example normal_forms

use torus_cancel::int_matrix;
use torus_cancel::intmat::{hermite_normal_form, smith_normal_form};

fn main() {
    let a = int_matrix![[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
    println!("A = {a}");

    let d = smith_normal_form(&a);
    println!("S = {}", d.s);
    println!("U = {}", d.u);
    println!("V = {}", d.v);
    let back =
        d.u.as_matrix()
            .mul(&d.s)
            .unwrap()
            .mul(d.v.as_matrix())
            .unwrap();
    assert_eq!(back, a);
    let factors: Vec<String> = d
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("invariant factors: {}", factors.join(", "));

    let (h, u) = hermite_normal_form(&a);
    println!("H = {h}  (H = U·A with U = {u})");
}
