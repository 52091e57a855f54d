//! Classes of torus bundles over a base with finite Picard group.
//!
//! A class is an `n`-tuple of elements of the Picard group `G`. Unimodular
//! matrices act in column convention: `(M·c)ᵢ = Σⱼ M[i][j]·cⱼ`.

mod cylinder;
mod orbit;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intmat::{
    quotient_group, subgroup_generated, subgroups_equal, FinAbGroup, GroupElement, Subgroup,
    UnimodularMatrix,
};

pub use cylinder::{cylinder_witnesses, CylinderWitnesses};
pub use orbit::{
    counterexample_search, orbit, orbit_decide, AutAction, OrbitVerdict, OrbitWitness,
    DEFAULT_STATE_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleClass {
    group: FinAbGroup,
    components: Vec<GroupElement>,
}

impl BundleClass {
    pub fn new(group: FinAbGroup, components: Vec<GroupElement>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Shape("torus dimension must be at least 1".into()));
        }
        for c in &components {
            group.check(c)?;
        }
        Ok(BundleClass { group, components })
    }

    /// Class in a cyclic group `ℤ/d` from residues.
    pub fn cyclic(d: i64, residues: &[i64]) -> Result<Self> {
        let g = FinAbGroup::cyclic(d)?;
        let comps = residues
            .iter()
            .map(|&r| g.element(if g.is_trivial() { vec![] } else { vec![r] }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, comps)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn components(&self) -> &[GroupElement] {
        &self.components
    }

    /// Torus dimension.
    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn subgroup(&self) -> Subgroup {
        subgroup_generated(&self.group, &self.components).expect("components lie in the group")
    }

    /// `(c₁,…,cₙ, d₁,…,d_m)`
    pub fn join(&self, other: &BundleClass) -> Result<BundleClass> {
        self.same_group(other)?;
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        Ok(BundleClass {
            group: self.group.clone(),
            components: comps,
        })
    }

    fn same_group(&self, other: &BundleClass) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "classes over {} and {}",
                self.group, other.group
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn act(m: &UnimodularMatrix, c: &BundleClass) -> Result<BundleClass> {
    if m.dim() != c.n() {
        return Err(Error::Shape(format!(
            "{}x{} matrix acting on a class of dimension {}",
            m.dim(),
            m.dim(),
            c.n()
        )));
    }
    let mat = m.as_matrix();
    let components = (0..c.n())
        .map(|i| {
            let terms: Vec<(BigInt, &GroupElement)> = mat
                .row(i)
                .iter()
                .cloned()
                .zip(c.components.iter())
                .collect();
            c.group.combine(&terms)
        })
        .collect();
    Ok(BundleClass {
        group: c.group.clone(),
        components,
    })
}

/// Appends `m` trivial components.
pub fn pad(c: &BundleClass, m: usize) -> BundleClass {
    let mut components = c.components.clone();
    components.extend(std::iter::repeat_n(c.group.zero(), m));
    BundleClass {
        group: c.group.clone(),
        components,
    }
}

pub fn same_subgroup(c1: &BundleClass, c2: &BundleClass) -> Result<bool> {
    c1.same_group(c2)?;
    subgroups_equal(&c1.subgroup(), &c2.subgroup())
}

/// Picard group of the total space: `G / ⟨c₁,…,cₙ⟩`.
pub fn total_space_picard(c: &BundleClass) -> FinAbGroup {
    quotient_group(&c.group, &c.subgroup()).expect("subgroup of its own ambient group")
}
