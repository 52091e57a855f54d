use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended gcd with a canonical Bézout pair.
///
/// Returns `(g, x, y)` with `g = gcd(a, b) ≥ 0` and `a·x + b·y = g`. Among all
/// solutions `x` has minimal absolute value, ties resolved toward `x ≥ 0`.
/// `ext_gcd(0, 0) = (0, 0, 0)`; when `b = 0` the coefficient `y` is 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    // iterative Euclid on (a, b)
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.is_negative() {
        r0 = -r0;
        s0 = -s0;
    }
    let g = r0;
    if b.is_zero() {
        return (g, a.signum(), BigInt::zero());
    }
    // x ranges over s0 + t·(b/g); pick the representative of least magnitude
    let step = (b / &g).abs();
    let mut x = s0.mod_floor(&step);
    let alt = &x - &step;
    if alt.abs() < x.abs() {
        x = alt;
    }
    let y = (&g - a * &x) / b;
    (g, x, y)
}

/// Inverse of `k` modulo `m` in `[0, m)`, or `None` when `gcd(k, m) ≠ 1`.
pub fn mod_inverse(k: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let (g, x, _) = ext_gcd(&k.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eg(a: i64, b: i64) -> (i64, i64, i64) {
        let (g, x, y) = ext_gcd(&a.into(), &b.into());
        (
            g.try_into().unwrap(),
            x.try_into().unwrap(),
            y.try_into().unwrap(),
        )
    }

    #[test]
    fn small_cases() {
        assert_eq!(eg(2, 5), (1, -2, 1));
        assert_eq!(eg(0, 0), (0, 0, 0));
        // |x| = 3 beats x = 4
        assert_eq!(eg(2, 7), (1, -3, 1));
        assert_eq!(eg(0, 7), (7, 0, 1));
        assert_eq!(eg(7, 0), (7, 1, 0));
        assert_eq!(eg(-4, 6), (2, 1, 1));
        assert_eq!(eg(12, -18), (6, -1, -1));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(&2.into(), &7.into()), Some(4.into()));
        assert_eq!(mod_inverse(&3.into(), &7.into()), Some(5.into()));
        assert_eq!(mod_inverse(&2.into(), &5.into()), Some(3.into()));
        assert_eq!(mod_inverse(&4.into(), &10.into()), None);
    }

    proptest! {
        #[test]
        fn bezout_identity_and_minimality(a in -500i64..500, b in -500i64..500) {
            let (g, x, y) = eg(a, b);
            prop_assert_eq!(g, num_integer::gcd(a, b));
            prop_assert_eq!(a * x + b * y, g);
            if b != 0 {
                // brute-force the minimal |x| over the solution coset
                let step = (b / g).abs();
                let best = (-step..=step)
                    .map(|t| x + t * step)
                    .filter(|&c| (g - a * c) % b == 0)
                    .min_by_key(|&c| (c.abs(), c < 0))
                    .unwrap();
                prop_assert_eq!(x, best);
            }
        }
    }
}
