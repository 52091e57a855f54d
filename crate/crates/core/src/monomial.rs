//! Laurent-monomial maps of tori and diagonal actions of `μ_d`.
//!
//! A map is stored by its exponent matrix `E`: target coordinate `j` is
//! `Πᵢ xᵢ^E[j][i]`. Composition multiplies exponent matrices, and a map is a
//! torus automorphism exactly when `E` is unimodular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::intmat::{mod_inverse, IntMatrix, UnimodularMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    exponents: IntMatrix,
}

impl MonomialMap {
    pub fn new(exponents: IntMatrix) -> Result<Self> {
        if !exponents.is_square() {
            return Err(Error::Shape(format!(
                "exponent matrix must be square, got {}x{}",
                exponents.rows(),
                exponents.cols()
            )));
        }
        Ok(MonomialMap { exponents })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            exponents: IntMatrix::identity(n),
        }
    }

    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.rows()
    }

    pub fn is_automorphism(&self) -> bool {
        self.exponents.determinant().abs().is_one()
    }

    /// Evaluates the map at a point of the torus with rational coordinates
    /// given as `(numerator, denominator)` pairs. Used for spot checks.
    pub fn eval(&self, point: &[(BigInt, BigInt)]) -> Vec<(BigInt, BigInt)> {
        (0..self.dim())
            .map(|j| {
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for (i, (p, q)) in point.iter().enumerate() {
                    let e = &self.exponents[(j, i)];
                    let k: u32 = e.abs().try_into().expect("small exponent");
                    if e.is_negative() {
                        num *= q.pow(k);
                        den *= p.pow(k);
                    } else {
                        num *= p.pow(k);
                        den *= q.pow(k);
                    }
                }
                let g = num.gcd(&den);
                (num / &g, den / g)
            })
            .collect()
    }
}

/// `f ∘ g`: apply `g`, then `f`.
pub fn compose(f: &MonomialMap, g: &MonomialMap) -> Result<MonomialMap> {
    if f.dim() != g.dim() {
        return Err(Error::Shape(format!(
            "composing maps of dimension {} and {}",
            f.dim(),
            g.dim()
        )));
    }
    MonomialMap::new(f.exponents.mul(&g.exponents)?)
}

pub fn invert(f: &MonomialMap) -> Result<MonomialMap> {
    let u = UnimodularMatrix::new(f.exponents.clone())?;
    MonomialMap::new(u.inverse().into_inner())
}

/// `ε·(x₁,…,xₙ) = (ε^w₁ x₁, …, ε^wₙ xₙ)` for `ε ∈ μ_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalWeightAction {
    modulus: BigInt,
    weights: Vec<BigInt>,
}

impl DiagonalWeightAction {
    pub fn new<T: Into<BigInt>>(modulus: impl Into<BigInt>, weights: Vec<T>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::one() {
            return Err(Error::Parse(format!(
                "modulus must be at least 1, got {modulus}"
            )));
        }
        let weights = weights
            .into_iter()
            .map(|w| w.into().mod_floor(&modulus))
            .collect();
        Ok(DiagonalWeightAction { modulus, weights })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }
}

/// Whether `f` intertwines the two actions: `E·w_src ≡ w_tgt (mod d)`.
pub fn is_equivariant(
    f: &MonomialMap,
    src: &DiagonalWeightAction,
    tgt: &DiagonalWeightAction,
) -> Result<bool> {
    if src.modulus != tgt.modulus {
        return Err(Error::GroupMismatch(format!(
            "actions of μ_{} and μ_{}",
            src.modulus, tgt.modulus
        )));
    }
    if src.weights.len() != f.dim() || tgt.weights.len() != f.dim() {
        return Err(Error::Shape(format!(
            "map of dimension {} with {} source and {} target weights",
            f.dim(),
            src.weights.len(),
            tgt.weights.len()
        )));
    }
    let w = f.exponents.mul(&IntMatrix::column(src.weights.clone()))?;
    Ok((0..f.dim()).all(|j| (&w[(j, 0)] - &tgt.weights[j]).is_multiple_of(&src.modulus)))
}

/// The isomorphism `(t, u) ↦ (tᵏ·u, t^{b·d}·uᵃ)` of `𝐓²`, intertwining weight
/// `(1, 0)` with weight `(k, 0)` modulo `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitIsomorphism {
    pub map: MonomialMap,
    pub a: BigInt,
    pub b: BigInt,
}

/// `a ∈ [1, d)` is the inverse of `k` modulo `d` and `b = (a·k − 1)/d`, so
/// `a·k − b·d = 1`.
pub fn explicit_isomorphism(d: i64, k: i64) -> Result<ExplicitIsomorphism> {
    if d < 2 {
        return Err(Error::Parse(format!("modulus must be at least 2, got {d}")));
    }
    let (dd, kk) = (BigInt::from(d), BigInt::from(k));
    let a = mod_inverse(&kk, &dd).ok_or_else(|| Error::NotAUnit(k.to_string(), d.to_string()))?;
    let b = (&a * &kk - 1) / &dd;
    let map = MonomialMap::new(IntMatrix::from_rows(vec![
        vec![kk, BigInt::one()],
        vec![&b * &dd, a.clone()],
    ])?)?;
    debug_assert!(map.is_automorphism());
    Ok(ExplicitIsomorphism { map, a, b })
}
