//! Conversions of library values into `serde_json` values for the
//! structured output documents.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bundles::BundleClass;
use crate::intmat::{FinAbGroup, IntMatrix, UnimodularMatrix};
use crate::sncgraph::{FormInvariants, WeightedDualGraph};

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn unimodular(m: &UnimodularMatrix) -> Value {
    matrix(m.as_matrix())
}

pub fn group(g: &FinAbGroup) -> Value {
    json!({ "name": g.to_string(), "invariant_factors": ints(g.invariant_factors()) })
}

/// Components in invariant-factor coordinates.
pub fn class(c: &BundleClass) -> Value {
    Value::Array(c.components().iter().map(|x| ints(x.coords())).collect())
}

pub fn form_invariants(i: &FormInvariants) -> Value {
    json!({
        "dimension": i.dimension,
        "gram_rank": i.rank,
        "determinant": int(&i.determinant),
        "smith": ints(&i.smith),
    })
}

pub fn graph(g: &WeightedDualGraph) -> Value {
    json!({
        "vertices": g.vertices().iter().map(|(l, w)| json!({"label": l, "weight": w})).collect::<Vec<_>>(),
        "edges": g.edges().map(|(u, w, m)| json!([u, w, m])).collect::<Vec<_>>(),
    })
}
