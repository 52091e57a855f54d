use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{act, pad, same_subgroup, BundleClass};
use crate::error::{Error, Result};
use crate::intmat::{mod_inverse, IntMatrix, UnimodularMatrix};

/// Unimodular matrices carrying both padded classes onto the joint class of
/// the fiber product: `A·(c₁, 0) = (c₁, c₂) = B·(c₂, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderWitnesses {
    pub a: UnimodularMatrix,
    pub b: UnimodularMatrix,
    /// `c₂ᵢ = kᵢ·c₁ᵢ`
    pub scalars: Vec<BigInt>,
    /// `aᵢ·kᵢ ≡ 1 (mod ord(c₁ᵢ))`
    pub inverses: Vec<BigInt>,
    pub joint: BundleClass,
}

impl CylinderWitnesses {
    pub fn verify(&self, c1: &BundleClass, c2: &BundleClass) -> bool {
        let n = c1.n();
        let ok = |m: &UnimodularMatrix, c: &BundleClass| {
            act(m, &pad(c, n)).is_ok_and(|x| x == self.joint)
        };
        c1.join(c2).is_ok_and(|j| j == self.joint)
            && self.a.determinant().abs().is_one()
            && self.b.determinant().abs().is_one()
            && ok(&self.a, c1)
            && ok(&self.b, c2)
    }
}

/// Builds `A = [[I, 0], [diag(k), I]]` and `B = [[diag(a), I], [I, 0]]`.
///
/// Requires `c₂ᵢ ∈ ⟨c₁ᵢ⟩` with a multiplier `kᵢ` that is a unit modulo the
/// order of `c₁ᵢ`. Other same-subgroup pairs are rejected; use
/// [`orbit_decide`](super::orbit_decide) on the padded classes for those.
pub fn cylinder_witnesses(c1: &BundleClass, c2: &BundleClass) -> Result<CylinderWitnesses> {
    if c1.n() != c2.n() {
        return Err(Error::Shape(format!(
            "classes of torus dimension {} and {}",
            c1.n(),
            c2.n()
        )));
    }
    if !same_subgroup(c1, c2)? {
        return Err(Error::Hypothesis(format!(
            "{c1} and {c2} do not generate the same subgroup"
        )));
    }
    let g = c1.group();
    let n = c1.n();
    let mut scalars = Vec::with_capacity(n);
    let mut inverses = Vec::with_capacity(n);
    for (i, (x, y)) in c1.components().iter().zip(c2.components()).enumerate() {
        let Some((mut k, ord)) = g.solve_multiple(x, y) else {
            return Err(Error::Hypothesis(format!(
                "component {i}: {y} is not a multiple of {x}"
            )));
        };
        if k.is_zero() && ord.is_one() {
            k = BigInt::one();
        }
        let Some(mut a) = mod_inverse(&k, &ord) else {
            return Err(Error::Hypothesis(format!(
                "component {i}: multiplier {k} is not a unit modulo {ord}"
            )));
        };
        if a.is_zero() {
            a = BigInt::one();
        }
        scalars.push(k);
        inverses.push(a);
    }

    let mut am = IntMatrix::identity(2 * n);
    let mut bm = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        am[(n + i, i)] = scalars[i].clone();
        bm[(i, i)] = inverses[i].clone();
        bm[(i, n + i)] = BigInt::one();
        bm[(n + i, i)] = BigInt::one();
    }
    let w = CylinderWitnesses {
        a: UnimodularMatrix::new(am)?,
        b: UnimodularMatrix::new(bm)?,
        scalars,
        inverses,
        joint: c1.join(c2)?,
    };
    if !w.verify(c1, c2) {
        return Err(Error::Hypothesis(
            "constructed witnesses failed verification".into(),
        ));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int_matrix;

    fn cls(d: i64, r: &[i64]) -> BundleClass {
        BundleClass::cyclic(d, r).unwrap()
    }

    #[test]
    fn z7_one_two() {
        let w = cylinder_witnesses(&cls(7, &[1]), &cls(7, &[2])).unwrap();
        assert_eq!(w.a.as_matrix(), &int_matrix![[1, 0], [2, 1]]);
        assert_eq!(w.b.as_matrix(), &int_matrix![[4, 1], [1, 0]]);
        assert_eq!(w.a.determinant(), BigInt::from(1));
        assert_eq!(w.b.determinant(), BigInt::from(-1));
        assert_eq!(w.joint, cls(7, &[1, 2]));
    }

    #[test]
    fn equal_classes_give_identity_shape() {
        let c = cls(7, &[3]);
        let w = cylinder_witnesses(&c, &c).unwrap();
        assert_eq!(w.scalars, vec![BigInt::from(1)]);
        assert_eq!(w.inverses, vec![BigInt::from(1)]);
        let z = cls(7, &[0]);
        let w = cylinder_witnesses(&z, &z).unwrap();
        assert_eq!(w.a.as_matrix(), &int_matrix![[1, 0], [1, 1]]);
    }

    #[test]
    fn z35_crt_classes() {
        let w = cylinder_witnesses(&cls(35, &[21, 15]), &cls(35, &[7, 30])).unwrap();
        assert_eq!(
            w.a.as_matrix(),
            &int_matrix![[1, 0, 0, 0], [0, 1, 0, 0], [2, 0, 1, 0], [0, 2, 0, 1]]
        );
        assert_eq!(
            act(&w.a, &cls(35, &[21, 15, 0, 0])).unwrap(),
            cls(35, &[21, 15, 7, 30])
        );
        assert_eq!(w.inverses, vec![BigInt::from(3), BigInt::from(4)]);
    }

    #[test]
    fn hypotheses_unmet() {
        assert!(matches!(
            cylinder_witnesses(&cls(7, &[1]), &cls(7, &[0])),
            Err(Error::Hypothesis(_))
        ));
        // same subgroup overall but not componentwise multiples
        assert!(matches!(
            cylinder_witnesses(&cls(35, &[21, 15]), &cls(35, &[15, 21])),
            Err(Error::Hypothesis(_))
        ));
    }
}
