//! Orbit decision under `Aut × GL_n(ℤ)` by breadth-first closure.
//!
//! The GL generators are tried in a fixed order (transvections `E_ij(+1)`,
//! `E_ij(-1)` for `i ≠ j` in row-major order, then swaps `(i, j)` with
//! `i < j`, then negation of the first coordinate), followed by the
//! automorphism generators. The queue is FIFO, so the first path found is a
//! shortest one and the returned witness is reproducible.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{act, BundleClass};
use crate::error::{Error, Result};
use crate::intmat::{subgroup_generated, FinAbGroup, IntMatrix, UnimodularMatrix};

pub const DEFAULT_STATE_BUDGET: usize = 5_000_000;

/// Finitely many automorphisms of the Picard group, each an integer matrix
/// on invariant-factor coordinates. Acts on classes componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutAction {
    group: FinAbGroup,
    generators: Vec<IntMatrix>,
}

impl AutAction {
    pub fn trivial(group: &FinAbGroup) -> Self {
        AutAction {
            group: group.clone(),
            generators: vec![],
        }
    }

    pub fn new(group: &FinAbGroup, generators: Vec<IntMatrix>) -> Result<Self> {
        let r = group.rank();
        let f = group.invariant_factors();
        for (idx, t) in generators.iter().enumerate() {
            if t.rows() != r || t.cols() != r {
                return Err(Error::InvalidAutomorphism(format!(
                    "generator {idx} is {}x{}, group has rank {r}",
                    t.rows(),
                    t.cols()
                )));
            }
            // well defined: T maps the relation lattice into itself
            for i in 0..r {
                for j in 0..r {
                    if !num_integer::Integer::is_multiple_of(&(&t[(i, j)] * &f[j]), &f[i]) {
                        return Err(Error::InvalidAutomorphism(format!(
                            "generator {idx} does not respect the relations of {group}"
                        )));
                    }
                }
            }
        }
        let aut = AutAction {
            group: group.clone(),
            generators,
        };
        if !aut.generators.is_empty() {
            let order = group
                .order()
                .to_usize()
                .filter(|&o| o <= DEFAULT_STATE_BUDGET);
            if order.is_none() {
                return Err(Error::BudgetExceeded {
                    budget: DEFAULT_STATE_BUDGET,
                });
            }
            let elements = group.elements();
            for idx in 0..aut.generators.len() {
                let mut image: Vec<_> = elements
                    .iter()
                    .map(|x| aut.apply_element(idx, x.coords()))
                    .collect();
                image.sort();
                image.dedup();
                if image.len() != elements.len() {
                    return Err(Error::InvalidAutomorphism(format!(
                        "generator {idx} is not a bijection of {group}"
                    )));
                }
            }
        }
        Ok(aut)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    fn apply_element(&self, idx: usize, coords: &[BigInt]) -> Vec<BigInt> {
        let t = &self.generators[idx];
        let f = self.group.invariant_factors();
        (0..coords.len())
            .map(|i| {
                let s: BigInt = (0..coords.len()).map(|j| &t[(i, j)] * &coords[j]).sum();
                num_integer::Integer::mod_floor(&s, &f[i])
            })
            .collect()
    }

    /// Applies generator `idx` to every component.
    pub fn apply(&self, idx: usize, c: &BundleClass) -> BundleClass {
        let comps = c
            .components()
            .iter()
            .map(|x| {
                self.group
                    .element(self.apply_element(idx, x.coords()))
                    .expect("rank preserved")
            })
            .collect();
        BundleClass {
            group: c.group.clone(),
            components: comps,
        }
    }

    pub fn apply_word(&self, word: &[usize], c: &BundleClass) -> BundleClass {
        word.iter()
            .fold(c.clone(), |acc, &idx| self.apply(idx, &acc))
    }
}

/// `target = M · φ(source)` where `φ` applies `aut_word` left to right.
/// The two parts commute since automorphisms are additive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub matrix: UnimodularMatrix,
    pub aut_word: Vec<usize>,
}

impl OrbitWitness {
    pub fn verify(&self, source: &BundleClass, target: &BundleClass, aut: &AutAction) -> bool {
        if self.aut_word.iter().any(|&i| i >= aut.generators.len()) {
            return false;
        }
        let moved = aut.apply_word(&self.aut_word, source);
        act(&self.matrix, &moved).is_ok_and(|c| &c == target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    Equivalent {
        witness: OrbitWitness,
        explored: usize,
    },
    Distinct {
        orbit_size: usize,
    },
}

impl OrbitVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, OrbitVerdict::Equivalent { .. })
    }

    pub fn witness(&self) -> Option<&OrbitWitness> {
        match self {
            OrbitVerdict::Equivalent { witness, .. } => Some(witness),
            OrbitVerdict::Distinct { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Transvection { i: usize, j: usize, s: i64 },
    Swap { i: usize, j: usize },
    Negate,
    Aut(usize),
}

fn moves(n: usize, aut_count: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Move::Transvection { i, j, s: 1 });
                out.push(Move::Transvection { i, j, s: -1 });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(Move::Swap { i, j });
        }
    }
    out.push(Move::Negate);
    out.extend((0..aut_count).map(Move::Aut));
    out
}

/// Compact state: residues, component-major.
struct Space {
    n: usize,
    factors: Vec<u64>,
    aut: Vec<Vec<Vec<u64>>>,
}

impl Space {
    fn new(group: &FinAbGroup, n: usize, aut: &AutAction, budget: usize) -> Result<Self> {
        let too_big = Error::BudgetExceeded { budget };
        let factors = group
            .invariant_factors()
            .iter()
            .map(|f| f.to_u64().ok_or(too_big.clone()))
            .collect::<Result<Vec<_>>>()?;
        let aut = aut
            .generators
            .iter()
            .map(|t| {
                (0..t.rows())
                    .map(|i| {
                        (0..t.cols())
                            .map(|j| {
                                let f = BigInt::from(factors[i]);
                                num_integer::Integer::mod_floor(&t[(i, j)], &f)
                                    .to_u64()
                                    .expect("reduced")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Space { n, factors, aut })
    }

    fn rank(&self) -> usize {
        self.factors.len()
    }

    fn encode(&self, c: &BundleClass) -> Vec<u64> {
        c.components()
            .iter()
            .flat_map(|x| x.coords().iter().map(|v| v.to_u64().expect("reduced")))
            .collect()
    }

    fn decode(&self, group: &FinAbGroup, s: &[u64]) -> BundleClass {
        let r = self.rank();
        let comps = (0..self.n)
            .map(|i| {
                group
                    .element(s[i * r..(i + 1) * r].to_vec())
                    .expect("in range")
            })
            .collect();
        BundleClass {
            group: group.clone(),
            components: comps,
        }
    }

    fn step(&self, s: &[u64], mv: Move) -> Vec<u64> {
        let r = self.rank();
        let mut t = s.to_vec();
        match mv {
            Move::Transvection { i, j, s: sign } => {
                for k in 0..r {
                    let f = self.factors[k];
                    let cj = s[j * r + k];
                    let ci = s[i * r + k];
                    t[i * r + k] = if sign > 0 {
                        (ci + cj) % f
                    } else {
                        (ci + f - cj) % f
                    };
                }
            }
            Move::Swap { i, j } => {
                for k in 0..r {
                    t.swap(i * r + k, j * r + k);
                }
            }
            Move::Negate => {
                for k in 0..r {
                    let f = self.factors[k];
                    t[k] = (f - s[k]) % f;
                }
            }
            Move::Aut(idx) => {
                let m = &self.aut[idx];
                for c in 0..self.n {
                    for k in 0..r {
                        let f = self.factors[k] as u128;
                        let v: u128 = (0..r)
                            .map(|l| m[k][l] as u128 * s[c * r + l] as u128 % f)
                            .sum();
                        t[c * r + k] = (v % f) as u64;
                    }
                }
            }
        }
        t
    }
}

fn check_inputs(c1: &BundleClass, c2: &BundleClass, aut: &AutAction) -> Result<()> {
    c1.same_group(c2)?;
    if c1.n() != c2.n() {
        return Err(Error::Shape(format!(
            "classes of torus dimension {} and {}",
            c1.n(),
            c2.n()
        )));
    }
    if aut.group != c1.group {
        return Err(Error::GroupMismatch(format!(
            "automorphisms of {} acting on classes over {}",
            aut.group, c1.group
        )));
    }
    Ok(())
}

/// Each discovered state with the state and move it was first reached from.
type ParentMap = HashMap<Vec<u64>, Option<(Vec<u64>, Move)>>;

/// Breadth-first closure from `start`; stops early once `target` is seen.
fn explore(
    space: &Space,
    start: Vec<u64>,
    target: Option<&[u64]>,
    moves: &[Move],
    budget: usize,
) -> Result<(ParentMap, bool)> {
    let mut parent: ParentMap = HashMap::new();
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget });
    }
    let found = target == Some(start.as_slice());
    parent.insert(start.clone(), None);
    if found {
        return Ok((parent, true));
    }
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for &mv in moves {
            let t = space.step(&s, mv);
            if parent.contains_key(&t) {
                continue;
            }
            if parent.len() >= budget {
                return Err(Error::BudgetExceeded { budget });
            }
            parent.insert(t.clone(), Some((s.clone(), mv)));
            if target == Some(t.as_slice()) {
                return Ok((parent, true));
            }
            queue.push_back(t);
        }
    }
    Ok((parent, false))
}

fn move_matrix(n: usize, mv: Move) -> Option<UnimodularMatrix> {
    match mv {
        Move::Transvection { i, j, s } => Some(UnimodularMatrix::transvection(n, i, j, s)),
        Move::Swap { i, j } => Some(UnimodularMatrix::swap(n, i, j)),
        Move::Negate => Some(UnimodularMatrix::negation(n, 0)),
        Move::Aut(_) => None,
    }
}

/// Decides whether `c2` lies in the `Aut × GL_n(ℤ)`-orbit of `c1`.
///
/// An `Equivalent` verdict carries a witness that has been re-applied to
/// `c1`; a `Distinct` verdict reports the size of the fully enumerated
/// orbit. Exceeding `budget` stored states is an error, never a guess.
pub fn orbit_decide(
    c1: &BundleClass,
    c2: &BundleClass,
    aut: &AutAction,
    budget: usize,
) -> Result<OrbitVerdict> {
    check_inputs(c1, c2, aut)?;
    let n = c1.n();
    let space = Space::new(&c1.group, n, aut, budget)?;
    let mv = moves(n, aut.generators.len());
    let start = space.encode(c1);
    let goal = space.encode(c2);
    let (parent, found) = explore(&space, start, Some(&goal), &mv, budget)?;
    if !found {
        return Ok(OrbitVerdict::Distinct {
            orbit_size: parent.len(),
        });
    }

    let mut path = Vec::new();
    let mut cur = goal;
    while let Some(Some((prev, m))) = parent.get(&cur) {
        path.push(*m);
        cur = prev.clone();
    }
    path.reverse();

    let mut matrix = UnimodularMatrix::identity(n);
    let mut aut_word = Vec::new();
    for m in path {
        match move_matrix(n, m) {
            Some(g) => matrix = g.mul(&matrix)?,
            None => {
                if let Move::Aut(idx) = m {
                    aut_word.push(idx);
                }
            }
        }
    }
    let witness = OrbitWitness { matrix, aut_word };
    assert!(
        witness.verify(c1, c2, aut),
        "orbit witness failed re-verification"
    );
    Ok(OrbitVerdict::Equivalent {
        witness,
        explored: parent.len(),
    })
}

/// The full orbit of `c`, sorted lexicographically.
pub fn orbit(c: &BundleClass, aut: &AutAction, budget: usize) -> Result<Vec<BundleClass>> {
    check_inputs(c, c, aut)?;
    let space = Space::new(&c.group, c.n(), aut, budget)?;
    let mv = moves(c.n(), aut.generators.len());
    let (parent, _) = explore(&space, space.encode(c), None, &mv, budget)?;
    let mut states: Vec<Vec<u64>> = parent.into_keys().collect();
    states.sort();
    Ok(states.iter().map(|s| space.decode(&c.group, s)).collect())
}

/// Lexicographic successor in the mixed-radix box, last coordinate fastest.
/// Returns false after the last state.
fn next_state(state: &mut [u64], dims: &[u64]) -> bool {
    for k in (0..dims.len()).rev() {
        state[k] += 1;
        if state[k] < dims[k] {
            return true;
        }
        state[k] = 0;
    }
    false
}

/// All unordered pairs of distinct orbits whose members generate the same
/// subgroup, each orbit represented by its lexicographically least member.
/// Pairs are sorted.
pub fn counterexample_search(
    group: &FinAbGroup,
    n: usize,
    aut: &AutAction,
    budget: usize,
) -> Result<Vec<(BundleClass, BundleClass)>> {
    if n == 0 {
        return Err(Error::Shape("torus dimension must be at least 1".into()));
    }
    if &aut.group != group {
        return Err(Error::GroupMismatch(format!(
            "automorphisms of {} acting on classes over {group}",
            aut.group
        )));
    }
    let total = group.order().pow(n as u32);
    if total > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { budget });
    }
    let space = Space::new(group, n, aut, budget)?;
    let mv = moves(n, aut.generators.len());
    let dims: Vec<u64> = (0..n).flat_map(|_| space.factors.iter().copied()).collect();

    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut reps: Vec<Vec<u64>> = Vec::new();
    let mut state = vec![0u64; dims.len()];
    loop {
        if !seen.contains_key(&state) {
            let id = reps.len();
            let (parent, _) = explore(&space, state.clone(), None, &mv, budget)?;
            for s in parent.into_keys() {
                seen.insert(s, id);
            }
            reps.push(state.clone());
        }
        if !next_state(&mut state, &dims) {
            break;
        }
    }

    let classes: Vec<BundleClass> = reps.iter().map(|s| space.decode(group, s)).collect();
    let mut by_subgroup: BTreeMap<Vec<Vec<BigInt>>, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        let s = subgroup_generated(group, c.components())?;
        by_subgroup.entry(s.basis().row_vecs()).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for ids in by_subgroup.values() {
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort();
    Ok(pairs
        .into_iter()
        .map(|(i, j)| (classes[i].clone(), classes[j].clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::same_subgroup;
    use crate::int_matrix;
    use proptest::prelude::*;

    fn cls(d: i64, r: &[i64]) -> BundleClass {
        BundleClass::cyclic(d, r).unwrap()
    }

    fn trivial(d: i64) -> AutAction {
        AutAction::trivial(&FinAbGroup::cyclic(d).unwrap())
    }

    #[test]
    fn z7_distinct() {
        let v = orbit_decide(
            &cls(7, &[1]),
            &cls(7, &[2]),
            &trivial(7),
            DEFAULT_STATE_BUDGET,
        )
        .unwrap();
        assert_eq!(v, OrbitVerdict::Distinct { orbit_size: 2 });
        let o = orbit(&cls(7, &[1]), &trivial(7), 100).unwrap();
        assert_eq!(o, vec![cls(7, &[1]), cls(7, &[6])]);
    }

    #[test]
    fn z7_negation() {
        let v = orbit_decide(
            &cls(7, &[1]),
            &cls(7, &[6]),
            &trivial(7),
            DEFAULT_STATE_BUDGET,
        )
        .unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.matrix.as_matrix(), &int_matrix![[-1]]);
        assert!(w.aut_word.is_empty());
    }

    #[test]
    fn same_class_needs_no_moves() {
        let v = orbit_decide(&cls(7, &[3]), &cls(7, &[3]), &trivial(7), 1).unwrap();
        assert_eq!(v.witness().unwrap().matrix, UnimodularMatrix::identity(1));
    }

    #[test]
    fn z35_pair_is_equivalent() {
        let c1 = cls(35, &[21, 15]);
        let c2 = cls(35, &[7, 30]);
        let v = orbit_decide(&c1, &c2, &trivial(35), 35usize.pow(4)).unwrap();
        let w = v.witness().expect("equivalent");
        assert!(w.verify(&c1, &c2, &trivial(35)));
        let desk = OrbitWitness {
            matrix: UnimodularMatrix::new(int_matrix![[32, 7], [105, 23]]).unwrap(),
            aut_word: vec![],
        };
        assert!(desk.verify(&c1, &c2, &trivial(35)));
        // deterministic
        let again = orbit_decide(&c1, &c2, &trivial(35), 35usize.pow(4)).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn budget_is_enforced() {
        let r = orbit_decide(&cls(35, &[21, 15]), &cls(35, &[7, 30]), &trivial(35), 10);
        assert_eq!(r, Err(Error::BudgetExceeded { budget: 10 }));
        assert!(
            counterexample_search(&FinAbGroup::cyclic(7).unwrap(), 2, &trivial(7), 48).is_err()
        );
    }

    #[test]
    fn mismatched_inputs() {
        assert!(orbit_decide(&cls(7, &[1]), &cls(5, &[1]), &trivial(7), 100).is_err());
        assert!(orbit_decide(&cls(7, &[1]), &cls(7, &[1, 1]), &trivial(7), 100).is_err());
        assert!(orbit_decide(&cls(7, &[1]), &cls(7, &[2]), &trivial(5), 100).is_err());
    }

    #[test]
    fn automorphism_merges_orbits() {
        let g = FinAbGroup::cyclic(7).unwrap();
        // multiplication by 3 generates all units of ℤ/7
        let aut = AutAction::new(&g, vec![int_matrix![[3]]]).unwrap();
        let v = orbit_decide(&cls(7, &[1]), &cls(7, &[2]), &aut, 100).unwrap();
        let w = v.witness().unwrap();
        assert!(!w.aut_word.is_empty());
        assert!(w.verify(&cls(7, &[1]), &cls(7, &[2]), &aut));
        assert!(counterexample_search(&g, 1, &aut, 100).unwrap().is_empty());
    }

    #[test]
    fn invalid_automorphisms() {
        let g = FinAbGroup::cyclic(6).unwrap();
        assert!(AutAction::new(&g, vec![int_matrix![[2]]]).is_err());
        assert!(AutAction::new(&g, vec![int_matrix![[1, 0], [0, 1]]]).is_err());
        let g = FinAbGroup::from_invariant_factors(vec![2.into(), 4.into()]).unwrap();
        // e₁ (order 2) cannot map to e₁ + e₂ (order 4)
        assert!(AutAction::new(&g, vec![int_matrix![[1, 0], [1, 1]]]).is_err());
        assert!(AutAction::new(&g, vec![int_matrix![[1, 1], [0, 1]]]).is_ok());
    }

    #[test]
    fn search_examples() {
        let search = |d: i64| {
            counterexample_search(
                &FinAbGroup::cyclic(d).unwrap(),
                1,
                &trivial(d),
                DEFAULT_STATE_BUDGET,
            )
            .unwrap()
        };
        let p7 = search(7);
        assert_eq!(
            p7,
            vec![
                (cls(7, &[1]), cls(7, &[2])),
                (cls(7, &[1]), cls(7, &[3])),
                (cls(7, &[2]), cls(7, &[3])),
            ]
        );
        assert_eq!(search(5), vec![(cls(5, &[1]), cls(5, &[2]))]);
        assert!(search(4).is_empty());
    }

    #[test]
    fn non_cyclic_group() {
        let g = FinAbGroup::from_invariant_factors(vec![2.into(), 2.into()]).unwrap();
        let e1 = g.element(vec![1, 0]).unwrap();
        let e2 = g.element(vec![0, 1]).unwrap();
        let e3 = g.element(vec![1, 1]).unwrap();
        let a = BundleClass::new(g.clone(), vec![e1.clone(), e2]).unwrap();
        let b = BundleClass::new(g.clone(), vec![e3, e1]).unwrap();
        let v = orbit_decide(&a, &b, &AutAction::trivial(&g), 1000).unwrap();
        assert!(v.witness().unwrap().verify(&a, &b, &AutAction::trivial(&g)));
    }

    /// Oracle for n = 1, G = ℤ/d: the orbit of k is {k, d−k}.
    fn brute_orbit_1d(d: i64, k: i64) -> Vec<i64> {
        let mut v = vec![k.rem_euclid(d), (d - k).rem_euclid(d)];
        v.sort();
        v.dedup();
        v
    }

    proptest! {
        #[test]
        fn one_dimensional_orbits(d in 2i64..60, k in 0i64..60) {
            let k = k % d;
            let o = orbit(&cls(d, &[k]), &trivial(d), 1000).unwrap();
            let got: Vec<i64> = o.iter().map(|c| c.components()[0].coords()[0].clone().try_into().unwrap()).collect();
            prop_assert_eq!(got, brute_orbit_1d(d, k));
        }

        #[test]
        fn verdict_is_symmetric(d in 2i64..14, a in proptest::collection::vec(0i64..14, 2), b in proptest::collection::vec(0i64..14, 2)) {
            let c1 = cls(d, &a);
            let c2 = cls(d, &b);
            let aut = trivial(d);
            let v12 = orbit_decide(&c1, &c2, &aut, 10_000).unwrap();
            let v21 = orbit_decide(&c2, &c1, &aut, 10_000).unwrap();
            prop_assert_eq!(v12.is_equivalent(), v21.is_equivalent());
            if let Some(w) = v12.witness() {
                prop_assert!(w.verify(&c1, &c2, &aut));
            }
            // equivalence implies equal generated subgroups
            if v12.is_equivalent() {
                prop_assert!(same_subgroup(&c1, &c2).unwrap());
            }
        }
    }
}
