//! Weighted dual graphs of SNC curve configurations.
//!
//! Vertices are curves labelled by name and weighted by self-intersection;
//! an edge of multiplicity `m` records `m` transversal intersection points.
//! Blow-ups and contractions follow the usual local rules.

mod fixture;
mod form;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

pub use fixture::{
    boundary_b1, boundary_b2, load_fixture, load_fixture_from, parse_graph, B1_COMPONENTS,
    B2_COMPONENTS, FIXTURE_NAMES,
};
pub use form::{
    form_invariants, forms_isomorphic, verify_bijection, FormComparison, FormInvariants,
    FormObstruction, IntersectionForm,
};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedDualGraph {
    vertices: Vec<(String, i64)>,
    edges: BTreeMap<(String, String), u32>,
}

fn edge_key(u: &str, w: &str) -> (String, String) {
    if u <= w {
        (u.to_string(), w.to_string())
    } else {
        (w.to_string(), u.to_string())
    }
}

impl WeightedDualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str, weight: i64) -> Result<()> {
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::InvalidGraph(format!("bad label `{label}`")));
        }
        if label.parse::<i64>().is_ok() {
            return Err(Error::InvalidGraph(format!(
                "label `{label}` looks like a number"
            )));
        }
        if self.contains(label) {
            return Err(Error::InvalidGraph(format!("duplicate label `{label}`")));
        }
        self.vertices.push((label.to_string(), weight));
        Ok(())
    }

    /// Adds `multiplicity` intersection points between `u` and `w`.
    pub fn add_edge(&mut self, u: &str, w: &str, multiplicity: u32) -> Result<()> {
        if u == w {
            return Err(Error::InvalidGraph(format!("loop at `{u}`")));
        }
        self.index(u)?;
        self.index(w)?;
        if multiplicity > 0 {
            *self.edges.entry(edge_key(u, w)).or_insert(0) += multiplicity;
        }
        Ok(())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.vertices.iter().any(|(l, _)| l == label)
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|(l, _)| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.vertices.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn vertices(&self) -> &[(String, i64)] {
        &self.vertices
    }

    /// Edges as `(u, w, multiplicity)` with `u < w`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        self.edges
            .iter()
            .map(|((u, w), &m)| (u.as_str(), w.as_str(), m))
    }

    pub fn weight(&self, label: &str) -> Result<i64> {
        Ok(self.vertices[self.index(label)?].1)
    }

    fn set_weight(&mut self, label: &str, weight: i64) -> Result<()> {
        let i = self.index(label)?;
        self.vertices[i].1 = weight;
        Ok(())
    }

    pub fn multiplicity(&self, u: &str, w: &str) -> u32 {
        self.edges.get(&edge_key(u, w)).copied().unwrap_or(0)
    }

    /// Neighbours with multiplicities, in vertex order.
    pub fn neighbors(&self, label: &str) -> Result<Vec<(String, u32)>> {
        self.index(label)?;
        Ok(self
            .vertices
            .iter()
            .filter_map(|(l, _)| {
                let m = self.multiplicity(label, l);
                (m > 0 && l != label).then(|| (l.clone(), m))
            })
            .collect())
    }

    /// Smallest unused label of the form `X<k>`.
    pub fn fresh_label(&self) -> String {
        (1..)
            .map(|k| format!("X{k}"))
            .find(|l| !self.contains(l))
            .expect("unbounded")
    }

    fn remove_vertex(&mut self, label: &str) -> Result<()> {
        let i = self.index(label)?;
        self.vertices.remove(i);
        self.edges.retain(|(u, w), _| u != label && w != label);
        Ok(())
    }

    /// Induced subgraph on `labels`, vertices in the given order.
    pub fn restrict(&self, labels: &[&str]) -> Result<WeightedDualGraph> {
        let mut g = WeightedDualGraph::new();
        for &l in labels {
            g.add_vertex(l, self.weight(l)?)?;
        }
        for ((u, w), &m) in &self.edges {
            if g.contains(u) && g.contains(w) {
                g.edges.insert((u.clone(), w.clone()), m);
            }
        }
        Ok(g)
    }

    /// Blow-up of a general point on `v`. Returns the new graph and the
    /// label of the exceptional curve.
    pub fn blow_up_point(&self, v: &str) -> Result<(WeightedDualGraph, String)> {
        let mut g = self.clone();
        let w = g.weight(v)?;
        g.set_weight(v, w - 1)?;
        let e = g.fresh_label();
        g.add_vertex(&e, -1)?;
        g.add_edge(v, &e, 1)?;
        Ok((g, e))
    }

    /// Blow-up of one intersection point of `u` and `w`.
    pub fn blow_up_edge(&self, u: &str, w: &str) -> Result<(WeightedDualGraph, String)> {
        self.index(u)?;
        self.index(w)?;
        let key = edge_key(u, w);
        let mut g = self.clone();
        match g.edges.get_mut(&key) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                g.edges.remove(&key);
            }
            None => return Err(Error::UnknownEdge(u.to_string(), w.to_string())),
        }
        let e = g.fresh_label();
        g.add_vertex(&e, -1)?;
        for x in [u, w] {
            let wt = g.weight(x)?;
            g.set_weight(x, wt - 1)?;
            g.add_edge(x, &e, 1)?;
        }
        Ok((g, e))
    }

    /// Contraction of the (−1)-curve `v`.
    pub fn contract(&self, v: &str) -> Result<WeightedDualGraph> {
        let wv = self.weight(v)?;
        if wv != -1 {
            return Err(Error::NotContractible(v.to_string(), wv));
        }
        let nbrs = self.neighbors(v)?;
        let mut g = self.clone();
        g.remove_vertex(v)?;
        for (i, (u, mu)) in nbrs.iter().enumerate() {
            let wu = g.weight(u)?;
            g.set_weight(u, wu + i64::from(mu * mu))?;
            for (x, mx) in &nbrs[i + 1..] {
                g.add_edge(u, x, mu * mx)?;
            }
        }
        Ok(g)
    }

    pub fn intersection_matrix(&self, subset: &[&str]) -> Result<IntersectionForm> {
        let idx = subset
            .iter()
            .map(|l| self.index(l))
            .collect::<Result<Vec<_>>>()?;
        let n = idx.len();
        let mut gram = IntMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let (la, lb) = (subset[a], subset[b]);
                gram[(a, b)] = if a == b {
                    self.vertices[idx[a]].1.into()
                } else if la == lb {
                    // repeated label: self-intersection again
                    self.vertices[idx[a]].1.into()
                } else {
                    self.multiplicity(la, lb).into()
                };
            }
        }
        IntersectionForm::new(gram, subset.iter().map(|s| s.to_string()).collect())
    }

    /// Form on all vertices, in vertex order.
    pub fn intersection_form(&self) -> IntersectionForm {
        let labels = self.labels();
        self.intersection_matrix(&labels).expect("own labels exist")
    }
}

/// Fixture-file rendering: vertices, then edges.
impl fmt::Display for WeightedDualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, w) in &self.vertices {
            writeln!(f, "{l} {w}")?;
        }
        for (u, w, m) in self.edges() {
            if m == 1 {
                writeln!(f, "{u} {w}")?;
            } else {
                writeln!(f, "{u} {w} {m}")?;
            }
        }
        Ok(())
    }
}
