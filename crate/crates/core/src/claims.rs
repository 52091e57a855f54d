//! Registry of checkable claims, each run at fixed desk-scale parameters
//! and reported with a certificate that can be re-checked independently.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::bundles::{
    cylinder_witnesses, orbit, orbit_decide, same_subgroup, total_space_picard, AutAction,
    BundleClass, CylinderWitnesses, OrbitVerdict, OrbitWitness,
};
use crate::error::{Error, Result};
use crate::intmat::{FinAbGroup, IntMatrix, UnimodularMatrix};
use crate::json;
use crate::lattice::{section_and_quotient, LatticeSurjection, SectionData};
use crate::monomial::{
    explicit_isomorphism, is_equivariant, DiagonalWeightAction, ExplicitIsomorphism,
};
use crate::sncgraph::{
    form_invariants, forms_isomorphic, load_fixture_from, FormComparison, FormInvariants,
    FormObstruction,
};

pub const CLAIM_IDS: [&str; 7] = [
    "noncancel-gm",
    "monomial-equivariance",
    "higher-tori-witnesses",
    "higher-tori-distinct",
    "bundle-pic",
    "lattice-section",
    "boundary-forms",
];

/// Hand-derived element of `GL₂(ℤ)` carrying `(21,15)` to `(7,30)` over `ℤ/35`.
pub fn desk_witness() -> UnimodularMatrix {
    UnimodularMatrix::new(IntMatrix::from_rows(vec![vec![32, 7], vec![105, 23]]).unwrap())
        .expect("determinant 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Verified,
    Refuted,
    /// Only ever produced by an exhausted search budget.
    Undecided,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ClaimStatus::Verified => "VERIFIED",
            ClaimStatus::Refuted => "REFUTED",
            ClaimStatus::Undecided => "UNDECIDED",
        })
    }
}

/// Two classes generating the same subgroup, in distinct orbits, whose
/// padded versions are related by explicit witnesses.
#[derive(Clone, Debug)]
pub struct NonCancelCase {
    pub first: BundleClass,
    pub second: BundleClass,
    pub orbit: Vec<BundleClass>,
    pub witnesses: CylinderWitnesses,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    NonCancellation(Vec<NonCancelCase>),
    Equivariance(Vec<(i64, i64, ExplicitIsomorphism)>),
    Witnesses(Vec<(BundleClass, BundleClass, CylinderWitnesses)>),
    SameOrbit {
        source: BundleClass,
        target: BundleClass,
        witness: OrbitWitness,
        explored: usize,
        desk_witness_accepted: bool,
    },
    DistinctOrbits {
        source: BundleClass,
        target: BundleClass,
        orbit_size: usize,
    },
    Picard(Vec<(BundleClass, FinAbGroup)>),
    Sections(Vec<(LatticeSurjection, SectionData)>),
    Forms {
        first: FormInvariants,
        second: FormInvariants,
        obstruction: FormObstruction,
    },
    BudgetExhausted {
        source: BundleClass,
        target: BundleClass,
        budget: usize,
    },
}

impl Certificate {
    /// Re-checks the certificate through the library, independently of the
    /// run that produced it.
    pub fn verify(&self) -> bool {
        let trivial = |c: &BundleClass| AutAction::trivial(c.group());
        match self {
            Certificate::NonCancellation(cases) => cases.iter().all(|c| {
                same_subgroup(&c.first, &c.second).unwrap_or(false)
                    && c.orbit.contains(&c.first)
                    && !c.orbit.contains(&c.second)
                    && orbit(&c.first, &trivial(&c.first), c.orbit.len())
                        .is_ok_and(|o| o == c.orbit)
                    && c.witnesses.verify(&c.first, &c.second)
            }),
            Certificate::Equivariance(cases) => cases.iter().all(|(d, k, iso)| {
                let src = DiagonalWeightAction::new(*d, vec![1, 0]).unwrap();
                let tgt = DiagonalWeightAction::new(*d, vec![*k, 0]).unwrap();
                iso.map.exponents().determinant().is_one()
                    && &iso.a * BigInt::from(*k) - &iso.b * BigInt::from(*d) == BigInt::one()
                    && is_equivariant(&iso.map, &src, &tgt).unwrap_or(false)
            }),
            Certificate::Witnesses(cases) => cases.iter().all(|(p, q, w)| w.verify(p, q)),
            Certificate::SameOrbit {
                source,
                target,
                witness,
                ..
            } => witness.verify(source, target, &trivial(source)),
            Certificate::DistinctOrbits {
                source,
                target,
                orbit_size,
            } => orbit(source, &trivial(source), *orbit_size)
                .is_ok_and(|o| o.len() == *orbit_size && !o.contains(target)),
            Certificate::Picard(cases) => cases.iter().all(|(c, g)| &total_space_picard(c) == g),
            Certificate::Sections(cases) => cases.iter().all(|(s, data)| data.verify(s)),
            Certificate::Forms {
                first,
                second,
                obstruction,
            } => {
                // screening order: the reported invariant is the first to differ
                let expected = if first.dimension != second.dimension {
                    FormObstruction::Dimension(first.dimension, second.dimension)
                } else if first.rank != second.rank {
                    FormObstruction::GramRank(first.rank, second.rank)
                } else if first.determinant != second.determinant {
                    FormObstruction::Determinant(
                        first.determinant.clone(),
                        second.determinant.clone(),
                    )
                } else if first.smith != second.smith {
                    FormObstruction::Smith(first.smith.clone(), second.smith.clone())
                } else {
                    return false;
                };
                &expected == obstruction
            }
            Certificate::BudgetExhausted {
                source,
                target,
                budget,
            } => matches!(
                orbit_decide(source, target, &trivial(source), *budget),
                Err(Error::BudgetExceeded { .. })
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::NonCancellation(cases) => json!({
                "kind": "non-cancellation",
                "cases": cases.iter().map(|c| json!({
                    "first": json::class(&c.first),
                    "second": json::class(&c.second),
                    "group": json::group(c.first.group()),
                    "orbit_of_first": c.orbit.iter().map(json::class).collect::<Vec<_>>(),
                    "a": json::unimodular(&c.witnesses.a),
                    "b": json::unimodular(&c.witnesses.b),
                })).collect::<Vec<_>>(),
            }),
            Certificate::Equivariance(cases) => json!({
                "kind": "equivariant-monomial-isomorphisms",
                "cases": cases.iter().map(|(d, k, iso)| json!({
                    "d": d, "k": k,
                    "a": json::int(&iso.a), "b": json::int(&iso.b),
                    "exponents": json::matrix(iso.map.exponents()),
                })).collect::<Vec<_>>(),
            }),
            Certificate::Witnesses(cases) => json!({
                "kind": "cylinder-witnesses",
                "cases": cases.iter().map(|(p, q, w)| json!({
                    "group": json::group(p.group()),
                    "first": json::class(p),
                    "second": json::class(q),
                    "a": json::unimodular(&w.a),
                    "b": json::unimodular(&w.b),
                    "joint": json::class(&w.joint),
                })).collect::<Vec<_>>(),
            }),
            Certificate::SameOrbit {
                source,
                target,
                witness,
                explored,
                desk_witness_accepted,
            } => json!({
                "kind": "same-orbit",
                "group": json::group(source.group()),
                "source": json::class(source),
                "target": json::class(target),
                "matrix": json::unimodular(&witness.matrix),
                "explored_states": explored,
                "desk_witness": json::unimodular(&desk_witness()),
                "desk_witness_accepted": desk_witness_accepted,
            }),
            Certificate::DistinctOrbits {
                source,
                target,
                orbit_size,
            } => json!({
                "kind": "distinct-orbits",
                "group": json::group(source.group()),
                "source": json::class(source),
                "target": json::class(target),
                "orbit_size": orbit_size,
            }),
            Certificate::Picard(cases) => json!({
                "kind": "total-space-picard",
                "cases": cases.iter().map(|(c, g)| json!({
                    "group": json::group(c.group()),
                    "class": json::class(c),
                    "picard": json::group(g),
                })).collect::<Vec<_>>(),
            }),
            Certificate::Sections(cases) => json!({
                "kind": "lattice-sections",
                "cases": cases.iter().map(|(s, d)| json!({
                    "surjection": json::matrix(s.matrix()),
                    "section": json::matrix(&d.tau),
                    "quotient_basis": json::matrix(&d.quotient_basis),
                })).collect::<Vec<_>>(),
            }),
            Certificate::Forms {
                first,
                second,
                obstruction,
            } => json!({
                "kind": "intersection-forms",
                "first": json::form_invariants(first),
                "second": json::form_invariants(second),
                "obstruction": obstruction.to_string(),
            }),
            Certificate::BudgetExhausted {
                source,
                target,
                budget,
            } => json!({
                "kind": "budget-exhausted",
                "group": json::group(source.group()),
                "source": json::class(source),
                "target": json::class(target),
                "budget": budget,
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub id: &'static str,
    pub claim: &'static str,
    pub status: ClaimStatus,
    pub summary: String,
    pub certificate: Certificate,
}

impl ClaimReport {
    pub fn to_json(&self) -> Value {
        json!({
            "claim_id": self.id,
            "claim": self.claim,
            "status": self.status.to_string(),
            "summary": self.summary,
            "certificate_verified": self.certificate.verify(),
            "certificate": self.certificate.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub budget: usize,
    /// Directory holding `fig1.graph` / `fig2.graph`; `None` uses the
    /// copies compiled into the crate.
    pub fixture_dir: Option<std::path::PathBuf>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: crate::bundles::DEFAULT_STATE_BUDGET,
            fixture_dir: None,
        }
    }
}

/// Runs one registered claim. Budget exhaustion becomes an `UNDECIDED`
/// report; any other failure is an error.
pub fn run_claim(id: &str, opts: &CheckOptions) -> Result<ClaimReport> {
    match id {
        "noncancel-gm" => noncancel(opts.budget),
        "monomial-equivariance" => equivariance(),
        "higher-tori-witnesses" => higher_witnesses(),
        "higher-tori-distinct" => higher_distinct(opts.budget),
        "bundle-pic" => bundle_pic(),
        "lattice-section" => lattice_section(),
        "boundary-forms" => boundary_forms(opts),
        other => Err(Error::Parse(format!(
            "unknown claim `{other}`; known: {}",
            CLAIM_IDS.join(", ")
        ))),
    }
}

pub fn run_all(opts: &CheckOptions) -> Vec<(&'static str, Result<ClaimReport>)> {
    CLAIM_IDS
        .iter()
        .map(|&id| (id, run_claim(id, opts)))
        .collect()
}

fn undecided(
    id: &'static str,
    claim: &'static str,
    source: BundleClass,
    target: BundleClass,
    budget: usize,
) -> ClaimReport {
    ClaimReport {
        id,
        claim,
        status: ClaimStatus::Undecided,
        summary: format!("orbit search for {source} vs {target} exceeded {budget} states"),
        certificate: Certificate::BudgetExhausted {
            source,
            target,
            budget,
        },
    }
}

fn units(d: i64) -> impl Iterator<Item = i64> {
    (2..=d - 2).filter(move |&k| num_integer::Integer::gcd(&k, &d) == 1)
}

fn noncancel(budget: usize) -> Result<ClaimReport> {
    const ID: &str = "noncancel-gm";
    const CLAIM: &str =
        "classes (1) and (k) over Z/d give non-isomorphic bundles with isomorphic cylinders";
    let d = 7;
    let aut = AutAction::trivial(&FinAbGroup::cyclic(d)?);
    let mut cases = Vec::new();
    let mut ok = true;
    for k in units(d) {
        let first = BundleClass::cyclic(d, &[1])?;
        let second = BundleClass::cyclic(d, &[k])?;
        let verdict = match orbit_decide(&first, &second, &aut, budget) {
            Err(Error::BudgetExceeded { budget }) => {
                return Ok(undecided(ID, CLAIM, first, second, budget))
            }
            v => v?,
        };
        let orb = orbit(&first, &aut, budget)?;
        ok &= !verdict.is_equivalent() && same_subgroup(&first, &second)?;
        let witnesses = cylinder_witnesses(&first, &second)?;
        cases.push(NonCancelCase {
            first,
            second,
            orbit: orb,
            witnesses,
        });
    }
    let summary = format!(
        "Z/{d}, k in {{{}}}: distinct orbits of size 2, cylinder witnesses verified",
        units(d)
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(ClaimReport {
        id: ID,
        claim: CLAIM,
        status: if ok {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Refuted
        },
        summary,
        certificate: Certificate::NonCancellation(cases),
    })
}

fn equivariance() -> Result<ClaimReport> {
    let mut cases = Vec::new();
    for d in 5..=13 {
        for k in units(d) {
            cases.push((d, k, explicit_isomorphism(d, k)?));
        }
    }
    let certificate = Certificate::Equivariance(cases);
    let ok = certificate.verify();
    Ok(ClaimReport {
        id: "monomial-equivariance",
        claim: "(t,u) -> (t^k u, t^(bd) u^a) is a torus automorphism intertwining weights (1,0) and (k,0)",
        status: if ok { ClaimStatus::Verified } else { ClaimStatus::Refuted },
        summary: "all units 2 <= k <= d-2 for 5 <= d <= 13: det 1 and equivariant".into(),
        certificate,
    })
}

fn higher_witnesses() -> Result<ClaimReport> {
    let p = BundleClass::cyclic(35, &[21, 15])?;
    let q = BundleClass::cyclic(35, &[7, 30])?;
    let w = cylinder_witnesses(&p, &q)?;
    Ok(ClaimReport {
        id: "higher-tori-witnesses",
        claim:
            "padded classes p and q are both carried to the joint class (p,q) by unimodular A, B",
        status: ClaimStatus::Verified,
        summary: format!("Z/35, p={p}, q={q}: A, B in GL_4(Z) verified"),
        certificate: Certificate::Witnesses(vec![(p, q, w)]),
    })
}

fn higher_distinct(budget: usize) -> Result<ClaimReport> {
    const ID: &str = "higher-tori-distinct";
    const CLAIM: &str =
        "the CRT classes p=(21,15) and q=(7,30) over Z/35 lie in distinct GL_2(Z)-orbits";
    let source = BundleClass::cyclic(35, &[21, 15])?;
    let target = BundleClass::cyclic(35, &[7, 30])?;
    let aut = AutAction::trivial(source.group());
    let desk = OrbitWitness {
        matrix: desk_witness(),
        aut_word: vec![],
    };
    let desk_witness_accepted = desk.verify(&source, &target, &aut);
    let verdict = match orbit_decide(&source, &target, &aut, budget) {
        Err(Error::BudgetExceeded { budget }) => {
            return Ok(undecided(ID, CLAIM, source, target, budget))
        }
        v => v?,
    };
    Ok(match verdict {
        OrbitVerdict::Equivalent { witness, explored } => ClaimReport {
            id: ID,
            claim: CLAIM,
            status: ClaimStatus::Refuted,
            summary: format!(
                "same orbit: {} maps {source} to {target} (explored {explored} states)",
                witness.matrix
            ),
            certificate: Certificate::SameOrbit {
                source,
                target,
                witness,
                explored,
                desk_witness_accepted,
            },
        },
        OrbitVerdict::Distinct { orbit_size } => ClaimReport {
            id: ID,
            claim: CLAIM,
            status: ClaimStatus::Verified,
            summary: format!("orbit of {source} has {orbit_size} elements and misses {target}"),
            certificate: Certificate::DistinctOrbits {
                source,
                target,
                orbit_size,
            },
        },
    })
}

fn bundle_pic() -> Result<ClaimReport> {
    let mut cases = Vec::new();
    let mut ok = true;
    for d in 1..=50 {
        let c = BundleClass::cyclic(d, &[1])?;
        let g = total_space_picard(&c);
        ok &= g.is_trivial();
        cases.push((c, g));
    }
    let c = BundleClass::cyclic(10, &[4])?;
    let g = total_space_picard(&c);
    ok &= g == FinAbGroup::cyclic(2)?;
    cases.push((c, g));
    Ok(ClaimReport {
        id: "bundle-pic",
        claim:
            "Pic of the total space is Pic of the base modulo the subgroup generated by the class",
        status: if ok {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Refuted
        },
        summary: "(1) over Z/d trivial for d <= 50; (4) over Z/10 gives Z2".into(),
        certificate: Certificate::Picard(cases),
    })
}

fn lattice_section() -> Result<ClaimReport> {
    let surjections = [
        IntMatrix::from_rows(vec![vec![2, 3]])?,
        IntMatrix::from_rows(vec![vec![6, 10, 15]])?,
        IntMatrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 4]])?,
        IntMatrix::from_rows(vec![vec![3, 5, 0, 7], vec![2, 0, 9, 1]])?,
    ];
    let mut cases = Vec::new();
    for m in surjections {
        let s = LatticeSurjection::new(m)?;
        let data = section_and_quotient(&s)?;
        cases.push((s, data));
    }
    Ok(ClaimReport {
        id: "lattice-section",
        claim: "a surjection of lattices admits a section with a complementary sublattice",
        status: ClaimStatus::Verified,
        summary: format!(
            "{} surjections: sigma*tau = I and [tau|complement] unimodular",
            cases.len()
        ),
        certificate: Certificate::Sections(cases),
    })
}

fn boundary_forms(opts: &CheckOptions) -> Result<ClaimReport> {
    let dir = opts.fixture_dir.as_deref();
    let f1 = load_fixture_from(dir, "B1")?.intersection_form();
    let f2 = load_fixture_from(dir, "B2")?.intersection_form();
    let (i1, i2) = (form_invariants(&f1), form_invariants(&f2));
    let (status, obstruction) = match forms_isomorphic(&f1, &f2) {
        FormComparison::NotIsomorphic(o) => (ClaimStatus::Verified, o),
        FormComparison::Isomorphic { .. } => (ClaimStatus::Refuted, FormObstruction::NoBijection),
    };
    let smith_differ = i1.smith != i2.smith;
    let status = if smith_differ {
        status
    } else {
        ClaimStatus::Refuted
    };
    Ok(ClaimReport {
        id: "boundary-forms",
        claim: "the intersection forms of the two boundary divisors are not isomorphic",
        status,
        summary: format!("not isomorphic: {obstruction}; Smith invariants differ: {smith_differ}"),
        certificate: Certificate::Forms {
            first: i1,
            second: i2,
            obstruction,
        },
    })
}

/// Plain-text table, one row per claim.
pub fn render_table(results: &[(&'static str, Result<ClaimReport>)]) -> String {
    let mut out = format!("{:<24} {:<10} {}\n", "CLAIM", "STATUS", "DETAILS");
    for (id, r) in results {
        match r {
            Ok(rep) => {
                let flag = if rep.status == ClaimStatus::Refuted {
                    "  <-- claim refuted"
                } else {
                    ""
                };
                out.push_str(&format!(
                    "{:<24} {:<10} {}{flag}\n",
                    id, rep.status, rep.summary
                ));
            }
            Err(e) => out.push_str(&format!("{:<24} {:<10} {e}\n", id, "ERROR")),
        }
    }
    out
}

pub fn render_json(results: &[(&'static str, Result<ClaimReport>)]) -> Vec<Value> {
    results
        .iter()
        .map(|(id, r)| match r {
            Ok(rep) => rep.to_json(),
            Err(e) => json!({"claim_id": id, "status": "ERROR", "error": e.to_string()}),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_witness_maps_classes() {
        let w = desk_witness();
        assert_eq!(w.determinant(), BigInt::one());
        let p = BundleClass::cyclic(35, &[21, 15]).unwrap();
        let q = BundleClass::cyclic(35, &[7, 30]).unwrap();
        assert_eq!(crate::bundles::act(&w, &p).unwrap(), q);
    }

    #[test]
    fn cheap_claims_verify() {
        let opts = CheckOptions::default();
        for id in [
            "noncancel-gm",
            "monomial-equivariance",
            "higher-tori-witnesses",
            "bundle-pic",
            "lattice-section",
            "boundary-forms",
        ] {
            let r = run_claim(id, &opts).unwrap();
            assert_eq!(r.status, ClaimStatus::Verified, "{id}");
            assert!(r.certificate.verify(), "{id}");
        }
    }

    #[test]
    fn small_budget_is_undecided() {
        let opts = CheckOptions {
            budget: 10,
            ..Default::default()
        };
        let r = run_claim("higher-tori-distinct", &opts).unwrap();
        assert_eq!(r.status, ClaimStatus::Undecided);
        assert!(r.certificate.verify());
    }

    #[test]
    fn unknown_claim() {
        assert!(run_claim("nope", &CheckOptions::default()).is_err());
    }

    #[test]
    fn forged_certificates_fail() {
        let p = BundleClass::cyclic(7, &[1]).unwrap();
        let q = BundleClass::cyclic(7, &[2]).unwrap();
        let bad = Certificate::DistinctOrbits {
            source: p.clone(),
            target: BundleClass::cyclic(7, &[6]).unwrap(),
            orbit_size: 2,
        };
        assert!(!bad.verify());
        let good = Certificate::DistinctOrbits {
            source: p,
            target: q,
            orbit_size: 2,
        };
        assert!(good.verify());
        let zero = BundleClass::cyclic(10, &[0]).unwrap();
        assert!(!Certificate::Picard(vec![(zero, FinAbGroup::trivial())]).verify());
    }
}
