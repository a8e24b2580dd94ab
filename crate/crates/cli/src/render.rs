//! JSON and text renderings of library values.

use kmf::{render_rational, CartanMatrix, Exponent, NodeSet, PvIndex, QSeries, Rational};
use serde_json::{json, Map, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(render_rational(q))
}

pub fn exponent(e: &Exponent) -> Value {
    json!(e.coords())
}

pub fn series(s: &QSeries) -> Value {
    let terms: Vec<Value> = s.terms().map(|(e, c)| json!([exponent(e), rational(c)])).collect();
    json!({ "nvars": s.nvars(), "degree": s.cap(), "terms": terms })
}

pub fn nodes(set: &NodeSet) -> Value {
    json!(set.one_based())
}

pub fn pv(p: &PvIndex) -> Value {
    let mut lam = Map::new();
    for (i, v) in p.pairings() {
        lam.insert((i + 1).to_string(), json!(v));
    }
    json!({ "I": nodes(p.nodes()), "lam": lam })
}

/// `(I={a,b}, lam={a:0,b:1})` with node labels.
pub fn pv_text(cm: &CartanMatrix, p: &PvIndex) -> String {
    let lam: Vec<String> = p.pairings().iter().map(|(&i, v)| format!("{}:{v}", cm.label(i))).collect();
    format!("(I={}, lam={{{}}})", cm.render_set(p.nodes()), lam.join(","))
}
