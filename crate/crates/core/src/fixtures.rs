//! Reference triangulations with their expected invariants, re-derived
//! whenever a fixture is loaded.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed};
use serde_json::Value;

use crate::cohomology::cohomology_group;
use crate::error::{GerbeError, Result};
use crate::exactalg::{Integer, Ring};
use crate::io::complex_from_json;
use crate::simplicial::{product_complex, Chain, Complex};

pub const FIXTURE_NAMES: [&str; 7] = ["point", "S1", "S2", "T2", "RP2", "S3", "T2xS1"];

const EXPECTED: &str = include_str!("../data/fixtures/expected.json");

fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "point" => include_str!("../data/fixtures/point.json"),
        "S1" => include_str!("../data/fixtures/S1.json"),
        "S2" => include_str!("../data/fixtures/S2.json"),
        "T2" => include_str!("../data/fixtures/T2.json"),
        "RP2" => include_str!("../data/fixtures/RP2.json"),
        "S3" => include_str!("../data/fixtures/S3.json"),
        _ => return None,
    })
}

/// Claimed invariants of a fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub euler: i64,
    pub betti: Vec<usize>,
    /// Integral cohomology torsion per degree.
    pub torsion: Vec<Vec<Integer>>,
    pub orientable: bool,
    pub f_vector: Option<Vec<usize>>,
    /// Names of the two factors for product-built fixtures.
    pub product: Option<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: Complex,
    pub expected: Expected,
}

/// One recomputed invariant.
#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub property: String,
    pub expected: String,
    pub actual: String,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn bad(name: &str, what: &str) -> GerbeError {
    GerbeError::MalformedInput(format!("fixture data for {name}: {what}"))
}

fn parse_expected(name: &str, v: &Value) -> Result<Expected> {
    let e = v.get(name).ok_or_else(|| GerbeError::UnknownFixture(name.to_string()))?;
    let usizes = |key: &str| -> Result<Option<Vec<usize>>> {
        match e.get(key) {
            None => Ok(None),
            Some(a) => a
                .as_array()
                .ok_or_else(|| bad(name, key))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad(name, key)))
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    };
    let torsion = e
        .get("torsion")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(name, "torsion"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad(name, "torsion"))?
                .iter()
                .map(|x| x.as_u64().map(Integer::from).ok_or_else(|| bad(name, "torsion")))
                .collect()
        })
        .collect::<Result<Vec<Vec<Integer>>>>()?;
    let product = match e.get("product").and_then(Value::as_array) {
        Some(p) if p.len() == 2 => Some((
            p[0].as_str().ok_or_else(|| bad(name, "product"))?.to_string(),
            p[1].as_str().ok_or_else(|| bad(name, "product"))?.to_string(),
        )),
        Some(_) => return Err(bad(name, "product")),
        None => None,
    };
    Ok(Expected {
        euler: e.get("euler").and_then(Value::as_i64).ok_or_else(|| bad(name, "euler"))?,
        betti: usizes("betti")?.ok_or_else(|| bad(name, "betti"))?,
        torsion,
        orientable: e.get("orientable").and_then(Value::as_bool).ok_or_else(|| bad(name, "orientable"))?,
        f_vector: usizes("f_vector")?,
        product,
    })
}

/// Reads a fixture without checking it, from `dir` when given and from the
/// embedded copies otherwise.
pub fn read_fixture(name: &str, dir: Option<&Path>) -> Result<Fixture> {
    if !FIXTURE_NAMES.contains(&name) {
        return Err(GerbeError::UnknownFixture(name.to_string()));
    }
    let expected_text = match dir {
        Some(d) => std::fs::read_to_string(d.join("expected.json"))?,
        None => EXPECTED.to_string(),
    };
    let expected = parse_expected(name, &serde_json::from_str(&expected_text)?)?;
    let complex = match &expected.product {
        Some((a, b)) => {
            let left = read_fixture(a, dir)?.complex;
            let right = read_fixture(b, dir)?.complex;
            product_complex(&left, &right).complex
        }
        None => {
            let text = match dir {
                Some(d) => std::fs::read_to_string(d.join(format!("{name}.json")))?,
                None => embedded(name).expect("embedded fixture").to_string(),
            };
            complex_from_json(&serde_json::from_str(&text)?)?
        }
    };
    Ok(Fixture {
        name: name.to_string(),
        complex,
        expected,
    })
}

/// A top-dimensional ±1 cycle, if the complex carries one.
pub fn orientation_cycle(k: &Complex) -> Option<Chain> {
    let n = k.dim();
    let kernel = k.boundary(n).smith.kernel_basis();
    kernel
        .into_iter()
        .find(|z| z.iter().all(|x| x.abs().is_one()))
        .and_then(|z| Chain::from_coefficients(k, n, z).ok())
}

/// Recomputes every claimed invariant.
pub fn check_fixture(f: &Fixture) -> Vec<FixtureCheck> {
    let k = &f.complex;
    let e = &f.expected;
    let mut out = Vec::new();
    let mut push = |property: &str, expected: String, actual: String| {
        out.push(FixtureCheck {
            property: property.to_string(),
            expected,
            actual,
        })
    };
    push("euler", e.euler.to_string(), k.euler_characteristic().to_string());
    if let Some(fv) = &e.f_vector {
        push("f_vector", format!("{fv:?}"), format!("{:?}", k.f_vector()));
    }
    let betti: Vec<usize> = (0..=k.dim())
        .map(|d| cohomology_group(k, d, Ring::Rationals).free_rank)
        .collect();
    push("betti", format!("{:?}", e.betti), format!("{betti:?}"));
    let torsion: Vec<Vec<String>> = (0..=k.dim())
        .map(|d| {
            cohomology_group(k, d, Ring::Integers)
                .torsion
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();
    let claimed: Vec<Vec<String>> = e
        .torsion
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    push("torsion", format!("{claimed:?}"), format!("{torsion:?}"));
    push(
        "orientable",
        e.orientable.to_string(),
        orientation_cycle(k).is_some_and(|c| c.is_cycle()).to_string(),
    );
    out
}

fn cache() -> &'static Mutex<BTreeMap<String, Complex>> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Complex>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn verified(f: Fixture) -> Result<Complex> {
    if let Some(c) = check_fixture(&f).into_iter().find(|c| !c.passed()) {
        return Err(GerbeError::Internal(format!(
            "fixture {} claims {} = {} but it is {}",
            f.name, c.property, c.expected, c.actual
        )));
    }
    Ok(f.complex)
}

/// The named fixture, verified against its claimed invariants.
pub fn load_fixture(name: &str) -> Result<Complex> {
    if let Some(k) = cache().lock().expect("fixture cache").get(name) {
        return Ok(k.clone());
    }
    let k = verified(read_fixture(name, None)?)?;
    cache().lock().expect("fixture cache").insert(name.to_string(), k.clone());
    Ok(k)
}

/// As [`load_fixture`], reading from a data directory.
pub fn load_fixture_from(dir: &Path, name: &str) -> Result<Complex> {
    verified(read_fixture(name, Some(dir))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_checks_out() {
        for name in FIXTURE_NAMES {
            let f = read_fixture(name, None).unwrap();
            for c in check_fixture(&f) {
                assert!(c.passed(), "{name}: {c:?}");
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(load_fixture("K3"), Err(GerbeError::UnknownFixture(_))));
    }

    #[test]
    fn wrong_claims_are_caught() {
        let mut f = read_fixture("RP2", None).unwrap();
        f.expected.torsion[2] = vec![];
        assert!(check_fixture(&f).iter().any(|c| !c.passed()));
        assert!(verified(f).is_err());
    }

    #[test]
    fn projective_plane_has_no_orientation_cycle() {
        assert!(orientation_cycle(&load_fixture("RP2").unwrap()).is_none());
        assert!(orientation_cycle(&load_fixture("T2").unwrap()).is_some());
    }
}
