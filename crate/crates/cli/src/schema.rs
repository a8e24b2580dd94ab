//! Reading job documents. Every malformed field is reported with the JSON
//! pointer of the offending value.

use std::collections::BTreeMap;

use kmf::{
    check_automorphism, orbit_partition, parse_rational, CartanMatrix, Exponent, NodeSet, Partition, PvIndex, QSeries,
};
use serde_json::{Map, Value};

use crate::CliError;

pub type Result<T> = std::result::Result<T, CliError>;

fn schema(pointer: &str, message: impl Into<String>) -> CliError {
    CliError::Schema { pointer: pointer.to_string(), message: message.into() }
}

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    format!("{pointer}/{key}")
}

pub fn object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(pointer, "expected an object"))
}

pub fn array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(pointer, "expected an array"))
}

pub fn required<'a>(obj: &'a Map<String, Value>, pointer: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(&child(pointer, key), "missing field"))
}

pub fn int(v: &Value, pointer: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(pointer, "expected an integer"))
}

pub fn uint(v: &Value, pointer: &str) -> Result<u32> {
    v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| schema(pointer, "expected a non-negative integer"))
}

fn int_list(v: &Value, pointer: &str) -> Result<Vec<i64>> {
    array(v, pointer)?.iter().enumerate().map(|(k, x)| int(x, &child(pointer, k))).collect()
}

fn index_list(v: &Value, pointer: &str) -> Result<Vec<usize>> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(k, x)| uint(x, &child(pointer, k)).map(|u| u as usize))
        .collect()
}

/// The matrix block: either the document itself or its `gcm` member.
pub fn gcm(root: &Value) -> Result<CartanMatrix> {
    let obj = object(root, "")?;
    let (block, pointer) = match obj.get("gcm") {
        Some(g) => (object(g, "/gcm")?, "/gcm".to_string()),
        None => (obj, String::new()),
    };
    let mpath = child(&pointer, "matrix");
    let rows = array(required(block, &pointer, "matrix")?, &mpath)?;
    let matrix = rows
        .iter()
        .enumerate()
        .map(|(i, r)| int_list(r, &child(&mpath, i)))
        .collect::<Result<Vec<_>>>()?;
    let labels = match block.get("labels") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let lpath = child(&pointer, "labels");
            let names = array(l, &lpath)?
                .iter()
                .enumerate()
                .map(|(k, x)| x.as_str().map(str::to_string).ok_or_else(|| schema(&child(&lpath, k), "expected a string")))
                .collect::<Result<Vec<_>>>()?;
            Some(names)
        }
    };
    Ok(CartanMatrix::new(matrix, labels)?)
}

/// `degree` from the document, overridden by `--degree`.
pub fn degree(root: &Value, cli: Option<u32>) -> Result<u32> {
    if let Some(d) = cli {
        return Ok(d);
    }
    let obj = object(root, "")?;
    uint(required(obj, "", "degree")?, "/degree")
}

pub fn node_set(v: &Value, pointer: &str, cm: &CartanMatrix) -> Result<NodeSet> {
    Ok(cm.node_set(&index_list(v, pointer)?)?)
}

/// `{"I": [1-based nodes], "lam": {"node": value}}`; a missing `lam` means all zeros.
pub fn pv_index(v: &Value, pointer: &str, cm: &CartanMatrix) -> Result<PvIndex> {
    let obj = object(v, pointer)?;
    let nodes = node_set(required(obj, pointer, "I")?, &child(pointer, "I"), cm)?;
    let pairs: Vec<(usize, i64)> = match obj.get("lam") {
        None => nodes.iter().map(|&i| (i, 0)).collect(),
        Some(l) => {
            let lpath = child(pointer, "lam");
            object(l, &lpath)?
                .iter()
                .map(|(key, x)| {
                    let node: usize = key
                        .parse()
                        .map_err(|_| schema(&child(&lpath, key), "keys must be 1-based node numbers"))?;
                    if node == 0 || node > cm.n() {
                        return Err(kmf::Error::NodeOutOfRange { node, n: cm.n() }.into());
                    }
                    Ok((node - 1, int(x, &child(&lpath, key))?))
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(PvIndex::new(nodes, pairs)?)
}

pub fn pv_list(root: &Value, key: &str, cm: &CartanMatrix) -> Result<Vec<PvIndex>> {
    let pointer = child("", key);
    array(required(object(root, "")?, "", key)?, &pointer)?
        .iter()
        .enumerate()
        .map(|(k, v)| pv_index(v, &child(&pointer, k), cm))
        .collect()
}

/// A single index given inline as `I` / `lam` on the document.
pub fn inline_pv(root: &Value, cm: &CartanMatrix) -> Result<PvIndex> {
    pv_index(root, "", cm)
}

pub fn offsets(v: &Value, pointer: &str) -> Result<Vec<Vec<i64>>> {
    array(v, pointer)?.iter().enumerate().map(|(k, x)| int_list(x, &child(pointer, k))).collect()
}

pub fn offset(root: &Value, n: usize) -> Result<Vec<i64>> {
    match object(root, "")?.get("offset") {
        None => Ok(vec![0; n]),
        Some(v) => {
            let o = int_list(v, "/offset")?;
            if o.len() != n {
                return Err(schema("/offset", format!("expected {n} entries")));
            }
            Ok(o)
        }
    }
}

/// `classes` (1-based node lists) or `automorphisms` (1-based permutations).
pub fn partition(root: &Value, cm: &CartanMatrix) -> Result<Partition> {
    let obj = object(root, "")?;
    if let Some(c) = obj.get("classes") {
        let classes = array(c, "/classes")?
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let p = child("/classes", k);
                index_list(v, &p)?
                    .into_iter()
                    .map(|i| {
                        if i == 0 || i > cm.n() {
                            Err(kmf::Error::NodeOutOfRange { node: i, n: cm.n() }.into())
                        } else {
                            Ok(i - 1)
                        }
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Partition::from_classes(cm.n(), classes)?);
    }
    if let Some(a) = obj.get("automorphisms") {
        let gens = array(a, "/automorphisms")?
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let perm = index_list(v, &child("/automorphisms", k))?;
                if perm.contains(&0) {
                    return Err(kmf::Error::InvalidPermutation(cm.n()).into());
                }
                Ok(check_automorphism(cm, perm.into_iter().map(|i| i - 1).collect())?)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(orbit_partition(cm, &gens));
    }
    Err(schema("", "expected a `classes` or `automorphisms` field"))
}

/// `[[exponent, "p/q"], ...]` over `nvars` variables, all of degree at most `cap`.
pub fn series(v: &Value, pointer: &str, nvars: usize, cap: u32) -> Result<QSeries> {
    let mut terms = BTreeMap::new();
    for (k, t) in array(v, pointer)?.iter().enumerate() {
        let tp = child(pointer, k);
        let pair = array(t, &tp)?;
        if pair.len() != 2 {
            return Err(schema(&tp, "expected [exponent, coefficient]"));
        }
        let ep = child(&tp, 0);
        let coords = array(&pair[0], &ep)?
            .iter()
            .enumerate()
            .map(|(j, x)| uint(x, &child(&ep, j)))
            .collect::<Result<Vec<u32>>>()?;
        if coords.len() != nvars {
            return Err(schema(&ep, format!("expected {nvars} coordinates")));
        }
        let e = Exponent::new(coords);
        if e.degree() > cap {
            return Err(schema(&ep, format!("degree {} exceeds {cap}", e.degree())));
        }
        let cp = child(&tp, 1);
        let c = match &pair[1] {
            Value::String(s) => parse_rational(s).ok_or_else(|| schema(&cp, "expected \"p\" or \"p/q\""))?,
            Value::Number(n) => n
                .as_i64()
                .map(|x| kmf::Rational::from_integer(x.into()))
                .ok_or_else(|| schema(&cp, "expected an integer or a \"p/q\" string"))?,
            _ => return Err(schema(&cp, "expected \"p\" or \"p/q\"")),
        };
        if terms.insert(e, c).is_some() {
            return Err(schema(&ep, "repeated exponent"));
        }
    }
    Ok(QSeries::from_terms(nvars, cap, terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn pointer_of(e: CliError) -> String {
        match e {
            CliError::Schema { pointer, .. } => pointer,
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    #[test]
    fn gcm_block_or_top_level() {
        let top = gcm(&json!({ "matrix": [[2, -1], [-1, 2]] })).unwrap();
        let nested = gcm(&json!({ "gcm": { "matrix": [[2, -1], [-1, 2]], "labels": ["a", "b"] } })).unwrap();
        assert_eq!(top.entries(), nested.entries());
        assert_eq!(nested.label(1), "b");
        assert_eq!(pointer_of(gcm(&json!({ "gcm": { "matrix": [[2], ["x"]] } })).unwrap_err()), "/gcm/matrix/1/0");
        assert_eq!(pointer_of(gcm(&json!({ "labels": [] })).unwrap_err()), "/matrix");
    }

    #[test]
    fn degree_override_wins() {
        assert_eq!(degree(&json!({ "degree": 4 }), None).unwrap(), 4);
        assert_eq!(degree(&json!({ "degree": 4 }), Some(9)).unwrap(), 9);
        assert_eq!(pointer_of(degree(&json!({ "degree": -1 }), None).unwrap_err()), "/degree");
    }

    #[test]
    fn pv_defaults_to_zero_pairings() {
        let cm = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]], None).unwrap();
        let pv = pv_index(&json!({ "I": [2, 1] }), "", &cm).unwrap();
        assert_eq!(pv, PvIndex::uniform(cm.all_nodes(), 0));
        let err = pv_index(&json!({ "I": [1], "lam": { "1": "x" } }), "/log_sum_of/0", &cm).unwrap_err();
        assert_eq!(pointer_of(err), "/log_sum_of/0/lam/1");
    }

    #[test]
    fn series_terms() {
        let s = series(&json!([[[1, 0], "1/2"], [[0, 2], 3]]), "/series", 2, 3).unwrap();
        assert_eq!(s.render("x"), "1/2*x1^1 + 3*x2^2");
        let err = series(&json!([[[1, 0], "1"], [[1, 0], "2"]]), "/series", 2, 3).unwrap_err();
        assert_eq!(pointer_of(err), "/series/1/0");
        let err = series(&json!([[[1, 0]]]), "/series", 2, 3).unwrap_err();
        assert_eq!(pointer_of(err), "/series/0");
    }

    #[test]
    fn partitions_from_classes_or_automorphisms() {
        let cm = CartanMatrix::new(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], None).unwrap();
        let a = partition(&json!({ "classes": [[2], [3, 1]] }), &cm).unwrap();
        let b = partition(&json!({ "automorphisms": [[3, 2, 1]] }), &cm).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            partition(&json!({ "automorphisms": [[0, 2, 1]] }), &cm),
            Err(CliError::Domain(kmf::Error::InvalidPermutation(3)))
        ));
    }
}
