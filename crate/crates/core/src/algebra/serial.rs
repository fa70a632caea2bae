//! JSON forms shared by the CLI and the cache.

use serde_json::{json, Map, Value};

use super::basis::BasisTable;
use super::generator::{Bidegree, Generator};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

pub fn bidegree_json(b: Bidegree) -> Value {
    json!({"degree": b.degree, "weight": b.weight})
}

pub fn monomial_json(m: &Monomial) -> Value {
    Value::Array(
        m.factors()
            .iter()
            .map(|&(g, e)| match g {
                Generator::E(i) => json!({"gen": "e", "i": i, "exp": e}),
                Generator::M(i, j) => json!({"gen": "mbar", "i": i, "j": j, "exp": e}),
            })
            .collect(),
    )
}

pub fn polynomial_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({"coeff": format_rational(c), "mono": monomial_json(m)}))
        .collect();
    json!({ "terms": terms })
}

fn field_u32(o: &Map<String, Value>, k: &str) -> Result<u32> {
    o.get(k)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Spec(format!("missing or invalid field {k:?}")))
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let arr = v.as_array().ok_or_else(|| Error::Spec("monomial must be an array".into()))?;
    let mut pairs = Vec::new();
    for f in arr {
        let o = f.as_object().ok_or_else(|| Error::Spec("factor must be an object".into()))?;
        let exp = field_u32(o, "exp")?;
        let g = match o.get("gen").and_then(Value::as_str) {
            Some("e") => Generator::mbar(field_u32(o, "i")? + 1, 0)?,
            Some("mbar") => Generator::mbar(field_u32(o, "i")?, field_u32(o, "j")?)?,
            _ => return Err(Error::Spec("unknown generator kind".into())),
        };
        pairs.push((g, exp));
    }
    Ok(Monomial::from_pairs(pairs))
}

pub fn polynomial_from_json(v: &Value) -> Result<Polynomial> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Spec("missing \"terms\"".into()))?;
    let mut p = Polynomial::zero();
    for t in terms {
        let c = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Spec("missing \"coeff\"".into()))?;
        let m = t.get("mono").ok_or_else(|| Error::Spec("missing \"mono\"".into()))?;
        p.add_term(monomial_from_json(m)?, parse_rational(c)?);
    }
    Ok(p)
}

pub fn basis_json(t: &BasisTable) -> Value {
    json!({
        "bidegree": bidegree_json(t.bidegree),
        "hash": t.hash(),
        "size": t.len(),
        "monomials": t.monomials().iter().map(monomial_json).collect::<Vec<_>>(),
    })
}
