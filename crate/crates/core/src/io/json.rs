use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::complex::Simplex;
use crate::homology::{FgAbGroup, HomologyGroup};

/// An integer as a JSON number when it fits in 64 bits, else as a decimal
/// string.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn simplex_json(s: &Simplex) -> Value {
    json!(s.vertices().iter().map(|v| v.0).collect::<Vec<_>>())
}

/// `{"rank": r, "torsion": [t1, ...]}`.
pub fn group_json(g: &FgAbGroup) -> Value {
    json!({
        "rank": g.rank,
        "torsion": g.torsion.iter().map(int_json).collect::<Vec<_>>(),
    })
}

/// The group together with one generating cycle per generator, each a
/// list of `[coefficient, simplex]` pairs.
pub fn homology_json(h: &HomologyGroup) -> Value {
    let generators: Vec<Value> = h
        .generator_chains()
        .iter()
        .map(|chain| Value::Array(chain.iter().map(|(c, s)| json!([int_json(c), simplex_json(s)])).collect()))
        .collect();
    let mut v = group_json(&h.group);
    v["generators"] = Value::Array(generators);
    v
}
