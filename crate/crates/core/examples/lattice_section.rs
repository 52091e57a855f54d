//! A section of a lattice surjection and a basis of the complement.
//!
//!     cargo run --example lattice_section

use torus_cancel::int_matrix;
use torus_cancel::lattice::{is_surjective, section_and_quotient, LatticeSurjection};

fn main() -> torus_cancel::Result<()> {
    for m in [
        int_matrix![[2, 3]],
        int_matrix![[6, 10, 15]],
        int_matrix![[1, 2, 3], [0, 1, 4]],
        int_matrix![[2, 4]],
    ] {
        let s = LatticeSurjection::new(m)?;
        print!("{}: ", s.matrix());
        if !is_surjective(&s) {
            println!("not surjective");
            continue;
        }
        let data = section_and_quotient(&s)?;
        println!(
            "section {}, complement {}, [section|complement] det {}",
            data.tau,
            data.quotient_basis,
            data.assembled().determinant()
        );
    }
    Ok(())
}
