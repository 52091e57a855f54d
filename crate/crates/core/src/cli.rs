//! Command-line front end. The binary only forwards its arguments to [`run`].
//!
//! Every command produces a plain-text report and, behind `--json`, a single
//! document `{command, inputs, verdict, certificate, versions}`. Exit codes:
//! 0 for a positive verdict (equivalent, verified, isomorphic, claim suite
//! ran), 1 for a negative one (distinct, not isomorphic), 2 for errors and
//! undecided searches.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bundles::{
    counterexample_search, cylinder_witnesses, orbit_decide, total_space_picard, OrbitVerdict,
    DEFAULT_STATE_BUDGET,
};
use crate::claims::{self, CheckOptions, ClaimStatus};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{quotient_lattice_structure, section_and_quotient, LatticeSurjection};
use crate::monomial::{explicit_isomorphism, is_equivariant, DiagonalWeightAction};
use crate::parse::{parse_aut, parse_class, parse_group, parse_matrix};
use crate::sncgraph::{
    form_invariants, forms_isomorphic, load_fixture_from, FormComparison, FormObstruction,
    WeightedDualGraph,
};

/// Environment variable naming a directory with `fig1.graph` and `fig2.graph`.
pub const FIXTURE_DIR_VAR: &str = "TORUS_CANCEL_FIXTURES";

#[derive(Parser, Debug)]
#[command(
    name = "torus-cancel",
    version,
    about = "Exact checks for torus-bundle cancellation"
)]
struct Cli {
    /// Print a structured JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group such as Z7 or Z2xZ4.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two classes lie in the same orbit.
    Orbit {
        #[command(flatten)]
        group: GroupArgs,
        /// Torus dimension; checked against the classes when given.
        #[arg(long)]
        n: Option<usize>,
        class1: String,
        class2: String,
        /// Automorphism generators, e.g. "2;3" on Z7.
        #[arg(long)]
        aut: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Build and verify the cylinder witnesses A, B for two classes.
    Witness {
        #[command(flatten)]
        group: GroupArgs,
        class1: String,
        class2: String,
    },
    /// Enumerate same-subgroup pairs in distinct orbits.
    Search {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        aut: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Picard group of the total space of a bundle.
    Picard {
        #[command(flatten)]
        group: GroupArgs,
        class: String,
    },
    /// Section and complement of a lattice surjection, e.g. "2,3" or "1,2,3/0,1,4".
    Section { matrix: String },
    /// The explicit equivariant monomial isomorphism for modulus d and unit k.
    Monomial {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
    },
    /// Dual-graph operations on fixtures (fig1, fig2, B1, B2) or graph files.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Run the claim suite.
    Check {
        /// Run a single claim.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GraphOp {
    /// Blow up a point on one curve, or an intersection point of two.
    Blowup {
        graph: String,
        vertex: String,
        other: Option<String>,
    },
    /// Contract (−1)-curves, in the order given.
    Contract {
        graph: String,
        #[arg(required = true)]
        vertices: Vec<String>,
    },
    /// Gram matrix and invariants, optionally on a subset of curves.
    Form { graph: String, labels: Vec<String> },
    /// Compare the intersection forms of two graphs.
    Compare { first: String, second: String },
}

/// Result of one command before rendering.
struct Outcome {
    command: &'static str,
    inputs: Value,
    verdict: String,
    certificate: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn document(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "versions": { "torus-cancel": env!("CARGO_PKG_VERSION") },
        })
    }
}

/// Parses `args` (including the program name), runs the command, prints its
/// report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let as_json = cli.json;
    match execute(cli.command) {
        Ok(out) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.document()).unwrap());
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            if as_json {
                let doc = json!({
                    "command": null,
                    "inputs": null,
                    "verdict": "error",
                    "certificate": { "error": e.to_string() },
                    "versions": { "torus-cancel": env!("CARGO_PKG_VERSION") },
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}

fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_DIR_VAR).map(PathBuf::from)
}

fn load_graph(name: &str) -> Result<WeightedDualGraph> {
    load_fixture_from(fixture_dir().as_deref(), name)
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Orbit {
            group,
            n,
            class1,
            class2,
            aut,
            budget,
        } => cmd_orbit(&group.group, n, &class1, &class2, aut.as_deref(), budget),
        Command::Witness {
            group,
            class1,
            class2,
        } => cmd_witness(&group.group, &class1, &class2),
        Command::Search {
            group,
            n,
            aut,
            budget,
        } => cmd_search(&group.group, n, aut.as_deref(), budget),
        Command::Picard { group, class } => cmd_picard(&group.group, &class),
        Command::Section { matrix } => cmd_section(&matrix),
        Command::Monomial { d, k } => cmd_monomial(d, k),
        Command::Graph { op } => cmd_graph(op),
        Command::Check { only, budget } => cmd_check(only.as_deref(), budget),
    }
}

fn cmd_orbit(
    group: &str,
    n: Option<usize>,
    class1: &str,
    class2: &str,
    aut: Option<&str>,
    budget: usize,
) -> Result<Outcome> {
    let g = parse_group(group)?;
    let c1 = parse_class(&g, class1)?;
    let c2 = parse_class(&g, class2)?;
    if let Some(n) = n {
        if c1.n() != n || c2.n() != n {
            return Err(Error::Shape(format!(
                "--n {n} but the classes have {} and {} components",
                c1.n(),
                c2.n()
            )));
        }
    }
    let action = parse_aut(&g, aut)?;
    let inputs = json!({
        "group": json::group(g.group()), "class1": json::class(&c1), "class2": json::class(&c2),
        "aut": action.generators().iter().map(json::matrix).collect::<Vec<_>>(), "budget": budget,
    });
    let verdict = match orbit_decide(&c1, &c2, &action, budget) {
        Err(Error::BudgetExceeded { budget }) => {
            return Ok(Outcome {
                command: "orbit",
                inputs,
                verdict: "UNDECIDED".into(),
                certificate: json!({ "budget": budget }),
                text: format!("UNDECIDED: state budget of {budget} exhausted\n"),
                code: 2,
            })
        }
        v => v?,
    };
    Ok(match verdict {
        OrbitVerdict::Equivalent { witness, explored } => Outcome {
            command: "orbit",
            inputs,
            verdict: "Equivalent".into(),
            certificate: json!({
                "matrix": json::unimodular(&witness.matrix),
                "aut_word": witness.aut_word,
                "explored_states": explored,
            }),
            text: format!(
                "Equivalent\nwitness matrix: {}\naut word: {:?}\nexplored states: {explored}\n",
                witness.matrix, witness.aut_word
            ),
            code: 0,
        },
        OrbitVerdict::Distinct { orbit_size } => Outcome {
            command: "orbit",
            inputs,
            verdict: "Distinct".into(),
            certificate: json!({ "orbit_size": orbit_size }),
            text: format!("Distinct\norbit size: {orbit_size}\n"),
            code: 1,
        },
    })
}

fn cmd_witness(group: &str, class1: &str, class2: &str) -> Result<Outcome> {
    let g = parse_group(group)?;
    let c1 = parse_class(&g, class1)?;
    let c2 = parse_class(&g, class2)?;
    let w = cylinder_witnesses(&c1, &c2)?;
    let verified = w.verify(&c1, &c2);
    let n = c1.n();
    let text = format!(
        "A = {}\nB = {}\nscalars k = {:?}, inverses a = {:?}\n\
         A·{} = {}\nB·{} = {}\ndet A = {}, det B = {}\n{}\n",
        w.a,
        w.b,
        w.scalars
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        w.inverses
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        crate::bundles::pad(&c1, n),
        w.joint,
        crate::bundles::pad(&c2, n),
        w.joint,
        w.a.determinant(),
        w.b.determinant(),
        if verified {
            "verified"
        } else {
            "VERIFICATION FAILED"
        }
    );
    Ok(Outcome {
        command: "witness",
        inputs: json!({"group": json::group(g.group()), "class1": json::class(&c1), "class2": json::class(&c2)}),
        verdict: if verified { "verified" } else { "failed" }.into(),
        certificate: json!({
            "a": json::unimodular(&w.a),
            "b": json::unimodular(&w.b),
            "scalars": json::ints(&w.scalars),
            "inverses": json::ints(&w.inverses),
            "joint": json::class(&w.joint),
        }),
        text,
        code: if verified { 0 } else { 2 },
    })
}

fn cmd_search(group: &str, n: usize, aut: Option<&str>, budget: usize) -> Result<Outcome> {
    let g = parse_group(group)?;
    let action = parse_aut(&g, aut)?;
    let pairs = counterexample_search(g.group(), n, &action, budget)?;
    let mut text = format!(
        "{} pair(s) of distinct orbits with equal subgroups\n",
        pairs.len()
    );
    for (p, q) in &pairs {
        text.push_str(&format!("{p} {q}\n"));
    }
    Ok(Outcome {
        command: "search",
        inputs: json!({"group": json::group(g.group()), "n": n, "budget": budget}),
        verdict: format!("{} pairs", pairs.len()),
        certificate: json!(pairs
            .iter()
            .map(|(p, q)| json!([json::class(p), json::class(q)]))
            .collect::<Vec<_>>()),
        text,
        code: 0,
    })
}

fn cmd_picard(group: &str, class: &str) -> Result<Outcome> {
    let g = parse_group(group)?;
    let c = parse_class(&g, class)?;
    let pic = total_space_picard(&c);
    Ok(Outcome {
        command: "picard",
        inputs: json!({"group": json::group(g.group()), "class": json::class(&c)}),
        verdict: pic.to_string(),
        certificate: json::group(&pic),
        text: format!("Pic of total space: {pic}\n"),
        code: 0,
    })
}

fn cmd_section(matrix: &str) -> Result<Outcome> {
    let s = LatticeSurjection::new(parse_matrix(matrix)?)?;
    let data = section_and_quotient(&s)?;
    let (free, torsion) = quotient_lattice_structure(&data);
    Ok(Outcome {
        command: "section",
        inputs: json!({"surjection": json::matrix(s.matrix())}),
        verdict: if data.verify(&s) {
            "verified"
        } else {
            "failed"
        }
        .into(),
        certificate: json!({
            "section": json::matrix(&data.tau),
            "quotient_basis": json::matrix(&data.quotient_basis),
            "cokernel_free_rank": free,
            "cokernel_torsion": json::ints(&torsion),
        }),
        text: format!(
            "section: {}\nquotient basis: {}\nZ^n / image: free rank {free}, torsion {:?}\n",
            data.tau,
            data.quotient_basis,
            torsion.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
        code: 0,
    })
}

fn cmd_monomial(d: i64, k: i64) -> Result<Outcome> {
    let iso = explicit_isomorphism(d, k)?;
    let src = DiagonalWeightAction::new(d, vec![1, 0])?;
    let tgt = DiagonalWeightAction::new(d, vec![k, 0])?;
    let eq = is_equivariant(&iso.map, &src, &tgt)?;
    let det: BigInt = iso.map.exponents().determinant();
    Ok(Outcome {
        command: "monomial",
        inputs: json!({"d": d, "k": k}),
        verdict: if eq { "equivariant" } else { "not equivariant" }.into(),
        certificate: json!({
            "exponents": json::matrix(iso.map.exponents()),
            "a": json::int(&iso.a),
            "b": json::int(&iso.b),
            "determinant": json::int(&det),
        }),
        text: format!(
            "exponents: {}\na = {}, b = {} (a·k − b·d = 1)\ndet = {det}\nequivariant (1,0) -> ({k},0) mod {d}: {eq}\n",
            iso.map.exponents(),
            iso.a,
            iso.b
        ),
        code: if eq { 0 } else { 1 },
    })
}

/// `rank 9 ≠ 10` for the component-count obstruction, the obstruction's
/// own wording otherwise.
fn obstruction_line(o: &FormObstruction) -> String {
    match o {
        FormObstruction::Dimension(a, b) => format!("rank {a} ≠ {b}"),
        other => other.to_string(),
    }
}

fn cmd_graph(op: GraphOp) -> Result<Outcome> {
    match op {
        GraphOp::Blowup {
            graph,
            vertex,
            other,
        } => {
            let g = load_graph(&graph)?;
            let (h, new) = match &other {
                Some(w) => g.blow_up_edge(&vertex, w)?,
                None => g.blow_up_point(&vertex)?,
            };
            Ok(Outcome {
                command: "graph blowup",
                inputs: json!({"graph": graph, "vertex": vertex, "other": other}),
                verdict: new.clone(),
                certificate: json::graph(&h),
                text: format!("# exceptional curve: {new}\n{h}"),
                code: 0,
            })
        }
        GraphOp::Contract { graph, vertices } => {
            let mut g = load_graph(&graph)?;
            for v in &vertices {
                g = g.contract(v)?;
            }
            Ok(Outcome {
                command: "graph contract",
                inputs: json!({"graph": graph, "vertices": vertices}),
                verdict: "contracted".into(),
                certificate: json::graph(&g),
                text: g.to_string(),
                code: 0,
            })
        }
        GraphOp::Form { graph, labels } => {
            let g = load_graph(&graph)?;
            let f = if labels.is_empty() {
                g.intersection_form()
            } else {
                let l: Vec<&str> = labels.iter().map(String::as_str).collect();
                g.intersection_matrix(&l)?
            };
            let inv = form_invariants(&f);
            let mut text = format!("basis: {}\n", f.labels.join(" "));
            for i in 0..f.gram.rows() {
                let row: Vec<String> = f.gram.row(i).iter().map(|x| format!("{x:>3}")).collect();
                text.push_str(&format!("{}\n", row.join(" ")));
            }
            text.push_str(&format!(
                "components: {}\nGram rank: {}\ndeterminant: {}\nSmith invariants: {:?}\n",
                inv.dimension,
                inv.rank,
                inv.determinant,
                inv.smith
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            ));
            Ok(Outcome {
                command: "graph form",
                inputs: json!({"graph": graph, "labels": f.labels}),
                verdict: "computed".into(),
                certificate: json!({"gram": json::matrix(&f.gram), "invariants": json::form_invariants(&inv)}),
                text,
                code: 0,
            })
        }
        GraphOp::Compare { first, second } => {
            let f1 = load_graph(&first)?.intersection_form();
            let f2 = load_graph(&second)?.intersection_form();
            let inputs = json!({"first": first, "second": second});
            Ok(match forms_isomorphic(&f1, &f2) {
                FormComparison::Isomorphic { bijection } => {
                    let pairs: Vec<(String, String)> = bijection
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (f1.labels[i].clone(), f2.labels[j].clone()))
                        .collect();
                    let mut text = "isomorphic\n".to_string();
                    for (a, b) in &pairs {
                        text.push_str(&format!("{a} -> {b}\n"));
                    }
                    Outcome {
                        command: "graph compare",
                        inputs,
                        verdict: "isomorphic".into(),
                        certificate: json!({ "bijection": pairs }),
                        text,
                        code: 0,
                    }
                }
                FormComparison::NotIsomorphic(o) => Outcome {
                    command: "graph compare",
                    inputs,
                    verdict: "not isomorphic".into(),
                    certificate: json!({
                        "obstruction": o.to_string(),
                        "first": json::form_invariants(&form_invariants(&f1)),
                        "second": json::form_invariants(&form_invariants(&f2)),
                    }),
                    text: format!("not isomorphic: {}\n", obstruction_line(&o)),
                    code: 1,
                },
            })
        }
    }
}

fn cmd_check(only: Option<&str>, budget: usize) -> Result<Outcome> {
    let opts = CheckOptions {
        budget,
        fixture_dir: fixture_dir(),
    };
    let results = match only {
        Some(id) => {
            if !claims::CLAIM_IDS.contains(&id) {
                return Err(Error::Parse(format!(
                    "unknown claim `{id}`; known: {}",
                    claims::CLAIM_IDS.join(", ")
                )));
            }
            let id = claims::CLAIM_IDS
                .iter()
                .copied()
                .find(|c| *c == id)
                .unwrap();
            vec![(id, claims::run_claim(id, &opts))]
        }
        None => claims::run_all(&opts),
    };
    let errored = results.iter().any(|(_, r)| r.is_err());
    let undecided = results
        .iter()
        .any(|(_, r)| matches!(r, Ok(rep) if rep.status == ClaimStatus::Undecided));
    let refuted = results
        .iter()
        .filter(|(_, r)| matches!(r, Ok(rep) if rep.status == ClaimStatus::Refuted))
        .count();
    let unverifiable = results
        .iter()
        .any(|(_, r)| matches!(r, Ok(rep) if !rep.certificate.verify()));
    let mut text = claims::render_table(&results);
    if refuted > 0 {
        text.push_str(&format!(
            "\n!! {refuted} claim(s) REFUTED, see certificates (--json)\n"
        ));
    }
    let verdict = if errored || unverifiable {
        "error"
    } else if undecided {
        "undecided"
    } else {
        "complete"
    };
    Ok(Outcome {
        command: "check",
        inputs: json!({"only": only, "budget": budget}),
        verdict: verdict.into(),
        certificate: Value::Array(claims::render_json(&results)),
        text,
        code: if verdict == "complete" { 0 } else { 2 },
    })
}
