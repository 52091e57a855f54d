//! Text grammar for groups, classes and automorphisms.
//!
//! - group: `Z7`, `Z2xZ4`, `Z2xZ3xZ5` (cyclic factors joined by `x`)
//! - class: components separated by `,`; inside a component, one residue
//!   per cyclic factor separated by `:` (so `1:0,0:3` over `Z2xZ4`)
//! - automorphisms: generators separated by `;`, each a matrix with rows
//!   separated by `/` and entries by `,`, acting on invariant-factor
//!   coordinates (`2` on `Z7`, `1,0/0,3` on `Z2xZ4`)

use num_bigint::BigInt;

use crate::bundles::{AutAction, BundleClass};
use crate::error::{Error, Result};
use crate::intmat::{GroupPresentation, IntMatrix};

fn int(tok: &str) -> Result<BigInt> {
    tok.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
}

pub fn parse_group(spec: &str) -> Result<GroupPresentation> {
    let orders = spec
        .split('x')
        .map(|f| {
            let f = f.trim();
            let digits = f
                .strip_prefix('Z')
                .ok_or_else(|| Error::Parse(format!("group factor `{f}` must look like Z<d>")))?;
            int(digits)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::new(orders)
}

pub fn parse_class(group: &GroupPresentation, spec: &str) -> Result<BundleClass> {
    let factors = group.orders().len();
    let comps = spec
        .split(',')
        .map(|c| {
            let residues = c.split(':').map(int).collect::<Result<Vec<_>>>()?;
            if residues.len() != factors {
                return Err(Error::Parse(format!(
                    "component `{c}` has {} residues, the group has {factors} factors",
                    residues.len()
                )));
            }
            group.element(&residues)
        })
        .collect::<Result<Vec<_>>>()?;
    BundleClass::new(group.group().clone(), comps)
}

pub fn parse_matrix(spec: &str) -> Result<IntMatrix> {
    let rows = spec
        .split('/')
        .map(|r| r.split(',').map(int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

pub fn parse_aut(group: &GroupPresentation, spec: Option<&str>) -> Result<AutAction> {
    match spec.map(str::trim) {
        None | Some("") => Ok(AutAction::trivial(group.group())),
        Some(s) => {
            let gens = s.split(';').map(parse_matrix).collect::<Result<Vec<_>>>()?;
            AutAction::new(group.group(), gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int_matrix;

    #[test]
    fn groups() {
        assert_eq!(parse_group("Z7").unwrap().group().to_string(), "Z7");
        assert_eq!(parse_group("Z5xZ7").unwrap().group().to_string(), "Z35");
        assert_eq!(parse_group("Z4xZ2").unwrap().group().to_string(), "Z2xZ4");
        assert!(parse_group("7").is_err());
        assert!(parse_group("Zx").is_err());
        assert!(parse_group("Z0").is_err());
    }

    #[test]
    fn classes() {
        let g = parse_group("Z35").unwrap();
        assert_eq!(
            parse_class(&g, "21,15").unwrap(),
            BundleClass::cyclic(35, &[21, 15]).unwrap()
        );
        assert_eq!(
            parse_class(&g, "-1").unwrap(),
            BundleClass::cyclic(35, &[34]).unwrap()
        );
        assert!(parse_class(&g, "1:2").is_err());
        assert!(parse_class(&g, "a").is_err());
        let p = parse_group("Z2xZ4").unwrap();
        let c = parse_class(&p, "1:0,0:1").unwrap();
        assert_eq!(c.n(), 2);
    }

    #[test]
    fn automorphisms() {
        let g = parse_group("Z7").unwrap();
        let a = parse_aut(&g, Some("2;3")).unwrap();
        assert_eq!(a.generators(), &[int_matrix![[2]], int_matrix![[3]]]);
        assert!(parse_aut(&g, Some("7")).is_err());
        assert!(parse_aut(&g, None).unwrap().generators().is_empty());
        assert_eq!(
            parse_matrix("1,0/0,3").unwrap(),
            int_matrix![[1, 0], [0, 3]]
        );
        assert!(parse_matrix("1,0/0").is_err());
    }
}
