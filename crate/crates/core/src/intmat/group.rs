//! Finite abelian groups in invariant-factor form and their subgroups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::ext_gcd;
use super::hermite::row_lattice_basis;
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// `ℤ/f₁ ⊕ … ⊕ ℤ/f_r` with `f₁ | f₂ | … | f_r`, every `fᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<BigInt>,
}

/// Coordinates with respect to the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(":"))
        }
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    /// `ℤ/d`; `d = 1` gives the trivial group.
    pub fn cyclic(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if !d.is_positive() {
            return Err(Error::Parse(format!(
                "cyclic order must be positive, got {d}"
            )));
        }
        Ok(if d.is_one() {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![d] }
        })
    }

    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| *f < &BigInt::from(2)) {
            return Err(Error::GroupMismatch(format!("invariant factor {f} < 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::GroupMismatch(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// Reduces `coords` modulo the invariant factors.
    pub fn element<T: Into<BigInt>>(&self, coords: Vec<T>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::NotInGroup(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .into_iter()
                .zip(&self.factors)
                .map(|(c, f)| c.into().mod_floor(f))
                .collect(),
        })
    }

    /// Generator `i` of the invariant-factor decomposition.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[i] = BigInt::one();
        e
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.rank()
            && x.coords
                .iter()
                .zip(&self.factors)
                .all(|(c, f)| !c.is_negative() && c < f)
    }

    pub(crate) fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInGroup(format!("{x} in {self}")))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.combine(&[(BigInt::one(), x), (BigInt::one(), y)])
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.scale(&BigInt::from(-1), x)
    }

    pub fn scale(&self, k: &BigInt, x: &GroupElement) -> GroupElement {
        self.combine(&[(k.clone(), x)])
    }

    /// `Σ kᵢ·xᵢ`, reduced.
    pub fn combine(&self, terms: &[(BigInt, &GroupElement)]) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.rank()];
        for (k, x) in terms {
            for (c, xc) in coords.iter_mut().zip(&x.coords) {
                *c += k * xc;
            }
        }
        GroupElement {
            coords: coords
                .into_iter()
                .zip(&self.factors)
                .map(|(c, f)| c.mod_floor(f))
                .collect(),
        }
    }

    pub fn order_of(&self, x: &GroupElement) -> BigInt {
        x.coords
            .iter()
            .zip(&self.factors)
            .map(|(c, f)| f / c.gcd(f))
            .fold(BigInt::one(), |acc, o| acc.lcm(&o))
    }

    /// The unique `k ∈ [0, ord(x))` with `k·x = target`, paired with `ord(x)`,
    /// or `None` when `target ∉ ⟨x⟩`.
    pub fn solve_multiple(
        &self,
        x: &GroupElement,
        target: &GroupElement,
    ) -> Option<(BigInt, BigInt)> {
        // k ≡ rᵢ (mod mᵢ) for each coordinate, merged by generalized CRT
        let mut r = BigInt::zero();
        let mut m = BigInt::one();
        for ((c, t), f) in x.coords.iter().zip(&target.coords).zip(&self.factors) {
            let g = c.gcd(f);
            if !t.is_multiple_of(&g) {
                return None;
            }
            let mi = f / &g;
            let ri = if mi.is_one() {
                BigInt::zero()
            } else {
                let (_, inv, _) = ext_gcd(&(c / &g), &mi);
                ((t / &g) * inv).mod_floor(&mi)
            };
            let (r2, m2) = crt_merge(&r, &m, &ri, &mi)?;
            r = r2;
            m = m2;
        }
        Some((r, m))
    }

    /// All elements in lexicographic coordinate order. Intended for small
    /// groups; the caller bounds `order()`.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (i, f) in self.factors.iter().enumerate() {
            let f = f.to_u64().expect("enumerated groups are small");
            let mut next = Vec::with_capacity(out.len() * f as usize);
            for e in &out {
                for v in 0..f {
                    let mut e2 = e.clone();
                    e2.coords[i] = BigInt::from(v);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// `ℤ^r` relation rows `fᵢ·eᵢ`.
    fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.factors.clone())
    }
}

fn crt_merge(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let (g, p, _) = ext_gcd(m1, m2);
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let lcm = m1 / &g * m2;
    let step = (&diff / &g * p).mod_floor(&(m2 / &g));
    Some(((r1 + m1 * step).mod_floor(&lcm), lcm))
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A subgroup, stored canonically as the Hermite basis of its preimage
/// lattice in `ℤ^rank` (the relation rows are part of that lattice).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: FinAbGroup,
    basis: IntMatrix,
    order: BigInt,
}

impl Subgroup {
    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Index of the subgroup in its ambient group.
    pub fn index(&self) -> BigInt {
        self.ambient.order() / &self.order
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.ambient.order()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if !self.ambient.contains(x) {
            return false;
        }
        // the basis is square upper triangular: back-substitute
        let r = self.ambient.rank();
        let mut rest: Vec<BigInt> = x.coords.clone();
        for i in 0..r {
            let p = &self.basis[(i, i)];
            if !rest[i].is_multiple_of(p) {
                return false;
            }
            let q = &rest[i] / p;
            for (j, v) in rest.iter_mut().enumerate().skip(i) {
                *v -= &q * &self.basis[(i, j)];
            }
        }
        true
    }
}

pub fn subgroup_generated(g: &FinAbGroup, gens: &[GroupElement]) -> Result<Subgroup> {
    for x in gens {
        g.check(x)?;
    }
    let r = g.rank();
    if r == 0 {
        return Ok(Subgroup {
            ambient: g.clone(),
            basis: IntMatrix::zeros(0, 0),
            order: BigInt::one(),
        });
    }
    let gen_rows = IntMatrix::from_rows(gens.iter().map(|x| x.coords.clone()).collect())?;
    let stacked = if gens.is_empty() {
        g.relation_matrix()
    } else {
        gen_rows.vstack(&g.relation_matrix())?
    };
    let basis = row_lattice_basis(&stacked);
    debug_assert_eq!(basis.rows(), r);
    let index: BigInt = (0..r).map(|i| basis[(i, i)].clone()).product();
    Ok(Subgroup {
        ambient: g.clone(),
        order: g.order() / index,
        basis,
    })
}

pub fn subgroups_equal(s1: &Subgroup, s2: &Subgroup) -> Result<bool> {
    if s1.ambient != s2.ambient {
        return Err(Error::GroupMismatch(format!(
            "subgroups of {} and {}",
            s1.ambient, s2.ambient
        )));
    }
    Ok(s1.basis == s2.basis)
}

pub fn quotient_group(g: &FinAbGroup, s: &Subgroup) -> Result<FinAbGroup> {
    if &s.ambient != g {
        return Err(Error::GroupMismatch(format!(
            "subgroup of {} is not a subgroup of {g}",
            s.ambient
        )));
    }
    let d = smith_normal_form(&s.basis);
    let factors = d
        .diagonal()
        .into_iter()
        .filter(|x| x > &BigInt::one())
        .collect();
    FinAbGroup::from_invariant_factors(factors)
}

/// `ℤ/n₁ × … × ℤ/n_k` as written by a user, with the isomorphism onto its
/// invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    orders: Vec<BigInt>,
    group: FinAbGroup,
    /// rank(group) × k; maps product coordinates to invariant coordinates.
    to_invariant: IntMatrix,
}

impl GroupPresentation {
    pub fn new(orders: Vec<BigInt>) -> Result<Self> {
        if let Some(o) = orders.iter().find(|o| !o.is_positive()) {
            return Err(Error::Parse(format!(
                "factor order must be positive, got {o}"
            )));
        }
        let k = orders.len();
        let d = smith_normal_form(&IntMatrix::diagonal(orders.clone()));
        // D = U·S·V, so x ↦ U⁻¹·x carries D·ℤᵏ onto S·ℤᵏ
        let u_inv = d.u.inverse().into_inner();
        let diag = d.diagonal();
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > BigInt::one()).collect();
        let rows: Vec<Vec<BigInt>> = keep.iter().map(|&i| u_inv.row(i).to_vec()).collect();
        let to_invariant = if rows.is_empty() {
            IntMatrix::zeros(0, k)
        } else {
            IntMatrix::from_rows(rows)?
        };
        let group =
            FinAbGroup::from_invariant_factors(keep.iter().map(|&i| diag[i].clone()).collect())?;
        Ok(GroupPresentation {
            orders,
            group,
            to_invariant,
        })
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Element given by residues in the product coordinates.
    pub fn element(&self, residues: &[BigInt]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(Error::NotInGroup(format!(
                "{} residues for a product of {} cyclic factors",
                residues.len(),
                self.orders.len()
            )));
        }
        let x = IntMatrix::column(residues.to_vec());
        let y = self.to_invariant.mul(&x)?;
        self.group
            .element((0..y.rows()).map(|i| y[(i, 0)].clone()).collect())
    }
}
