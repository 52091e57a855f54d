//! Blow-ups and contractions on a small chain, and the round trip back.
//!
//!     cargo run --example blowup_calculus

use torus_cancel::sncgraph::parse_graph;

fn main() -> torus_cancel::Result<()> {
    let g = parse_graph("u 0\nw 0\nu w\n")?;
    let (h, e) = g.blow_up_edge("u", "w")?;
    print!("blow up u--w:\n{h}");
    let (h2, f) = h.blow_up_point(&e)?;
    print!("blow up a point on {e}:\n{h2}");
    let back = h2.contract(&f)?.contract(&e)?;
    print!("contract {f}, then {e}:\n{back}");
    assert_eq!(back, g);
    Ok(())
}
