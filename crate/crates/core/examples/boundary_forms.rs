//! Builds the two boundary configurations from the resolution graphs by
//! contraction and compares their intersection forms.
//!
//!     cargo run --example boundary_forms

use torus_cancel::sncgraph::{form_invariants, forms_isomorphic, load_fixture, FormComparison};

fn main() -> torus_cancel::Result<()> {
    let fig1 = load_fixture("fig1")?;
    println!("first resolution: {} curves", fig1.vertex_count());
    let contracted = fig1.contract("L_z")?;
    println!(
        "after contracting L_z: E_inf_2 {} , L_y {}",
        contracted.weight("E_inf_2")?,
        contracted.weight("L_y")?
    );

    let b1 = load_fixture("B1")?.intersection_form();
    let b2 = load_fixture("B2")?.intersection_form();
    for (name, f) in [("B1", &b1), ("B2", &b2)] {
        let inv = form_invariants(f);
        println!(
            "{name}: {} components, Gram rank {}, det {}, Smith {:?}",
            inv.dimension,
            inv.rank,
            inv.determinant,
            inv.smith
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
    }
    match forms_isomorphic(&b1, &b2) {
        FormComparison::NotIsomorphic(o) => println!("not isomorphic: {o}"),
        FormComparison::Isomorphic { bijection } => println!("isomorphic via {bijection:?}"),
    }
    Ok(())
}
