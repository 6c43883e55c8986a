//! JSON encodings of complexes, cochains, chains, maps, lattices and
//! cohomology groups.
//!
//! Rationals are written as strings, `"p/q"` or `"p"`; numbers are accepted
//! on input. Objects are emitted with sorted keys.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::cohomology::CohomologyGroup;
use crate::error::{GerbeError, Result};
use crate::exactalg::{Integer, Lattice, Rational};
use crate::simplicial::{build_complex, Chain, Cochain, Coefficients, Complex, Simplex, SimplicialMap};

fn bad(msg: impl Into<String>) -> GerbeError {
    GerbeError::MalformedInput(msg.into())
}

pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(rational_to_string(x))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Integer = num.parse().map_err(|_| bad(format!("`{s}` is not a rational")))?;
    let den: Integer = den.parse().map_err(|_| bad(format!("`{s}` is not a rational")))?;
    if den.is_zero() {
        return Err(bad(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(bad(format!("{n} is not an exact rational; write it as \"p/q\"")))
            }
        }
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn integer_from_json(v: &Value) -> Result<Integer> {
    let x = rational_from_json(v)?;
    if !x.is_integer() {
        return Err(bad(format!("expected an integer, got {x}")));
    }
    Ok(x.to_integer())
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn vertex_list(v: &Value) -> Result<Vec<usize>> {
    array(v, "a simplex")?.iter().map(|x| usize_from_json(x, "a vertex")).collect()
}

fn simplex_to_json(s: &Simplex) -> Value {
    json!(s.vertices())
}

// ----- complexes

pub fn complex_to_json(k: &Complex) -> Value {
    let maximal: Vec<Value> = k.maximal_simplices().iter().map(simplex_to_json).collect();
    json!({ "maximal_simplices": maximal })
}

pub fn complex_from_json(v: &Value) -> Result<Complex> {
    let gens = array(field(v, "maximal_simplices")?, "`maximal_simplices`")?
        .iter()
        .map(vertex_list)
        .collect::<Result<Vec<_>>>()?;
    build_complex(&gens)
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    complex_from_json(&serde_json::from_str(text)?)
}

// ----- lattices

pub fn lattice_to_json(l: &Lattice) -> Value {
    let generators: Value = match l.basis() {
        None => Value::Null,
        Some(b) => Value::Array(
            b.iter()
                .map(|row| Value::Array(row.iter().map(rational_to_json).collect()))
                .collect(),
        ),
    };
    json!({ "dim": l.dim(), "kind": l.kind().tag(), "generators": generators })
}

pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    let dim = usize_from_json(field(v, "dim")?, "`dim`")?;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("fg");
    match kind {
        "divisible" => Ok(Lattice::divisible(dim)),
        "Zl" => Ok(Lattice::integral(dim)),
        "fg" => {
            let gens = array(field(v, "generators")?, "`generators`")?
                .iter()
                .map(|g| array(g, "a generator")?.iter().map(rational_from_json).collect())
                .collect::<Result<Vec<Vec<Rational>>>>()?;
            Lattice::generated(dim, &gens)
        }
        other => Err(bad(format!("unknown lattice kind `{other}`"))),
    }
}

// ----- coefficients

pub fn coefficients_to_json(c: &Coefficients) -> Value {
    match c {
        Coefficients::Integer => json!("Z"),
        Coefficients::Rational => json!("Q"),
        Coefficients::Vector(l) => json!({ "vector": l }),
        Coefficients::Lattice(lat) => json!({ "lattice": lattice_to_json(lat) }),
        Coefficients::Quotient(lat) => json!({ "quotient": lattice_to_json(lat) }),
    }
}

pub fn coefficients_from_json(v: &Value) -> Result<Coefficients> {
    match v {
        Value::String(s) if s == "Z" => Ok(Coefficients::Integer),
        Value::String(s) if s == "Q" => Ok(Coefficients::Rational),
        Value::String(s) if s == "Q/Z" => Ok(Coefficients::Quotient(Lattice::integral(1))),
        Value::Object(m) => {
            if let Some(l) = m.get("vector") {
                return Ok(Coefficients::Vector(usize_from_json(l, "`vector`")?));
            }
            if let Some(l) = m.get("lattice") {
                return Ok(Coefficients::Lattice(lattice_from_json(l)?));
            }
            if let Some(l) = m.get("quotient") {
                return Ok(Coefficients::Quotient(lattice_from_json(l)?));
            }
            Err(bad("unknown coefficient object"))
        }
        other => Err(bad(format!("unknown coefficients {other}"))),
    }
}

// ----- cochains

fn value_to_json(c: &Coefficients, v: &[Rational]) -> Value {
    if c.is_scalar() {
        rational_to_json(&v[0])
    } else {
        Value::Array(v.iter().map(rational_to_json).collect())
    }
}

/// Sparse encoding: only nonzero values are listed.
pub fn cochain_to_json(c: &Cochain) -> Value {
    let values: Vec<Value> = c
        .entries()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(s, v)| json!([simplex_to_json(s), value_to_json(c.coefficients(), v)]))
        .collect();
    json!({
        "degree": c.degree(),
        "coefficients": coefficients_to_json(c.coefficients()),
        "values": values,
    })
}

pub fn cochain_from_json(v: &Value, k: &Complex) -> Result<Cochain> {
    let degree = usize_from_json(field(v, "degree")?, "`degree`")?;
    let coeffs = match v.get("coefficients") {
        Some(c) => coefficients_from_json(c)?,
        None => Coefficients::Rational,
    };
    let w = coeffs.width();
    let mut entries = Vec::new();
    for e in array(field(v, "values")?, "`values`")? {
        let pair = array(e, "a cochain entry")?;
        if pair.len() != 2 {
            return Err(bad("a cochain entry is [simplex, value]"));
        }
        let s = Simplex::new(vertex_list(&pair[0])?)?;
        let value = if coeffs.is_scalar() || (w == 1 && !pair[1].is_array()) {
            vec![rational_from_json(&pair[1])?]
        } else {
            let xs = array(&pair[1], "a vector value")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            if xs.len() != w {
                return Err(bad(format!("value for {s} has {} components, expected {w}", xs.len())));
            }
            xs
        };
        entries.push((s, value));
    }
    Cochain::from_entries(k, degree, coeffs, entries)
}

pub fn parse_cochain(text: &str, k: &Complex) -> Result<Cochain> {
    cochain_from_json(&serde_json::from_str(text)?, k)
}

// ----- chains

pub fn chain_to_json(c: &Chain) -> Value {
    let values: Vec<Value> = c
        .entries()
        .filter(|(_, n)| !n.is_zero())
        .map(|(s, n)| json!([simplex_to_json(s), n.to_string()]))
        .collect();
    json!({ "degree": c.degree(), "values": values })
}

pub fn chain_from_json(v: &Value, k: &Complex) -> Result<Chain> {
    let degree = usize_from_json(field(v, "degree")?, "`degree`")?;
    let mut entries = Vec::new();
    for e in array(field(v, "values")?, "`values`")? {
        let pair = array(e, "a chain entry")?;
        if pair.len() != 2 {
            return Err(bad("a chain entry is [simplex, coefficient]"));
        }
        entries.push((Simplex::new(vertex_list(&pair[0])?)?, integer_from_json(&pair[1])?));
    }
    Chain::from_entries(k, degree, entries)
}

pub fn parse_chain(text: &str, k: &Complex) -> Result<Chain> {
    chain_from_json(&serde_json::from_str(text)?, k)
}

// ----- maps

pub fn map_to_json(f: &SimplicialMap) -> Value {
    let pairs: Vec<Value> = f.vertex_map().iter().map(|(s, t)| json!([s, t])).collect();
    json!({ "vertex_map": pairs })
}

pub fn map_from_json(v: &Value, source: &Complex, target: &Complex) -> Result<SimplicialMap> {
    let malformed = |m: &str| GerbeError::MalformedMap(m.to_string());
    let pairs = v
        .get("vertex_map")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing array `vertex_map`"))?;
    let mut map = BTreeMap::new();
    for p in pairs {
        let pair = p
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| malformed("entries are [source, target] pairs"))?;
        let s = usize_from_json(&pair[0], "a vertex").map_err(|_| malformed("vertex labels are integers"))?;
        let t = usize_from_json(&pair[1], "a vertex").map_err(|_| malformed("vertex labels are integers"))?;
        if map.insert(s, t).is_some() {
            return Err(malformed(&format!("vertex {s} is mapped twice")));
        }
    }
    SimplicialMap::new(source, target, map)
}

// ----- cohomology

pub fn cohomology_group_to_json(h: &CohomologyGroup) -> Value {
    let free: Vec<Value> = h.free_generators.iter().map(cochain_to_json).collect();
    let torsion: Vec<Value> = h
        .torsion_generators
        .iter()
        .map(|(g, m)| json!({ "order": m.to_string(), "cochain": cochain_to_json(g) }))
        .collect();
    let factors: Vec<Value> = h
        .torsion
        .iter()
        .map(|t| t.to_u64().map_or_else(|| Value::String(t.to_string()), Value::from))
        .collect();
    json!({
        "degree": h.degree,
        "free_rank": h.free_rank,
        "torsion": factors,
        "generators": { "free": free, "torsion": torsion },
    })
}

/// Serialises with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered, so keys come out sorted
    let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("serialisable value");
    s.push('\n');
    s
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<&String, Value> = m.iter().map(|(k, x)| (k, sort_keys(x))).collect();
            Value::Object(sorted.into_iter().map(|(k, x)| (k.clone(), x)).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn s2() -> Complex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(rational_to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&rat(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(rational_from_json(&json!(0.5)).is_err());
        assert_eq!(rational_from_json(&json!(7)).unwrap(), rat(7, 1));
    }

    #[test]
    fn complex_round_trip() {
        let k = s2();
        let back = complex_from_json(&complex_to_json(&k)).unwrap();
        assert_eq!(*back, *k);
        assert!(parse_complex("{\"maximal_simplices\": [[0, 0]]}").is_err());
        assert!(parse_complex("{}").is_err());
    }

    #[test]
    fn cochain_round_trip() {
        let k = s2();
        let c = Cochain::rational_from_fn(&k, 1, |s| rat(s.vertices()[1] as i64, 3));
        assert_eq!(cochain_from_json(&cochain_to_json(&c), &k).unwrap(), c);
        let q = c.with_coefficients(Coefficients::Quotient(Lattice::integral(1))).unwrap();
        assert_eq!(cochain_from_json(&cochain_to_json(&q), &k).unwrap(), q);
        let bad = json!({"degree": 1, "coefficients": "Z", "values": [[[0, 1], "1/2"]]});
        assert!(cochain_from_json(&bad, &k).is_err());
    }

    #[test]
    fn maps_and_lattices() {
        let k = s2();
        let f = map_from_json(&json!({"vertex_map": [[0, 1], [1, 0], [2, 2], [3, 3]]}), &k, &k).unwrap();
        assert_eq!(map_from_json(&map_to_json(&f), &k, &k).unwrap().vertex_map(), f.vertex_map());
        let err = map_from_json(&json!({"vertex_map": [[0, 1]]}), &k, &k).unwrap_err();
        assert!(matches!(err, GerbeError::MalformedMap(_)));
        let l = Lattice::generated(2, &[vec![rat(1, 2), rat(0, 1)], vec![rat(1, 1), rat(3, 1)]]).unwrap();
        assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap(), l);
        assert_eq!(lattice_from_json(&lattice_to_json(&Lattice::divisible(3))).unwrap(), Lattice::divisible(3));
    }

    #[test]
    fn canonical_output_sorts_keys() {
        let s = to_canonical_string(&json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
    }
}
