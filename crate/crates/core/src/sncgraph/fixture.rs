use std::path::Path;

use super::WeightedDualGraph;
use crate::error::{Error, Result};

pub const FIXTURE_NAMES: [&str; 4] = ["fig1", "fig2", "B1", "B2"];

/// Boundary components of the first surface after contracting `L_z`.
pub const B1_COMPONENTS: [&str; 9] = [
    "D_1", "H_inf_1", "H_0_1", "E_inf_3", "E_inf_1", "E_0_1", "E_0_2", "E_inf_2", "E_0_3",
];

/// Boundary components of the second surface after its contraction sequence.
pub const B2_COMPONENTS: [&str; 10] = [
    "D_2", "H_inf_2", "H_0_2", "E_inf_1", "E_0_5", "C_0", "E_0_6", "E_0_7", "E_0_8", "E_0_9",
];

const B2_CONTRACTIONS: [&str; 5] = ["C_1", "E_0_4", "E_0_3", "E_0_2", "E_0_1"];

const FIG1: &str = include_str!("../../fixtures/fig1.graph");
const FIG2: &str = include_str!("../../fixtures/fig2.graph");

/// Parses the fixture format: `label weight` vertex lines, `u w [mult]`
/// edge lines, `#` comments. Vertices must precede edges that use them.
pub fn parse_graph(text: &str) -> Result<WeightedDualGraph> {
    let mut g = WeightedDualGraph::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", no + 1));
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [label, w] if w.parse::<i64>().is_ok() => {
                g.add_vertex(label, w.parse().unwrap())
                    .map_err(|e| err(e.to_string()))?;
            }
            [u, w] => g.add_edge(u, w, 1).map_err(|e| err(e.to_string()))?,
            [u, w, m] => {
                let m: u32 = m
                    .parse()
                    .map_err(|_| err(format!("bad multiplicity `{m}`")))?;
                if m == 0 {
                    return Err(err("multiplicity must be at least 1".into()));
                }
                g.add_edge(u, w, m).map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("cannot parse `{line}`"))),
        }
    }
    Ok(g)
}

pub fn boundary_b1(fig1: &WeightedDualGraph) -> Result<WeightedDualGraph> {
    fig1.contract("L_z")?.restrict(&B1_COMPONENTS)
}

pub fn boundary_b2(fig2: &WeightedDualGraph) -> Result<WeightedDualGraph> {
    let mut g = fig2.clone();
    for v in B2_CONTRACTIONS {
        g = g.contract(v)?;
    }
    g.restrict(&B2_COMPONENTS)
}

/// Loads a shipped fixture by name.
pub fn load_fixture(name: &str) -> Result<WeightedDualGraph> {
    load_fixture_from(None, name)
}

/// Like [`load_fixture`], but reads `fig1.graph` / `fig2.graph` from `dir`
/// when given. A name that is a path to an existing file is parsed directly.
pub fn load_fixture_from(dir: Option<&Path>, name: &str) -> Result<WeightedDualGraph> {
    let figure = |file: &str, builtin: &str| -> Result<WeightedDualGraph> {
        match dir {
            Some(d) => parse_graph(&std::fs::read_to_string(d.join(file))?),
            None => parse_graph(builtin),
        }
    };
    match name {
        "fig1" => figure("fig1.graph", FIG1),
        "fig2" => figure("fig2.graph", FIG2),
        "B1" => boundary_b1(&figure("fig1.graph", FIG1)?),
        "B2" => boundary_b2(&figure("fig2.graph", FIG2)?),
        other if Path::new(other).is_file() => parse_graph(&std::fs::read_to_string(other)?),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}
