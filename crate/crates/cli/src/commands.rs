use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use gerbe_core::cohomology::{class_equal, class_order, cohomology_group, connecting_hom, periods, CoefficientSES};
use gerbe_core::exactalg::{Lattice, Ring};
use gerbe_core::fixtures::{check_fixture, load_fixture, load_fixture_from, read_fixture, FIXTURE_NAMES};
use gerbe_core::gerbe_builder::{
    integrality_test, kostant_weil, zigzag_gerbe, zigzag_two_gerbe, IntegralityCertificate,
};
use gerbe_core::holonomy::{bounding_chain, canonical_connection, loop_holonomy, surface_holonomy, Surface};
use gerbe_core::io::{
    chain_to_json, cochain_from_json, cochain_to_json, complex_from_json, lattice_from_json, lattice_to_json,
    map_from_json, parse_chain, parse_cochain, rational_to_json,
};
use gerbe_core::prequant::{commutator_identity, parse_poly, poisson_bracket, prequant_op, PrequantOp};
use gerbe_core::reduction::{chern_class, extension_delta, has_reduction, torsion_vanishing, QuotientCocycle};
use gerbe_core::simplicial::{product_complex, Cochain, Coefficients, Complex, SimplicialMap, StarCover};
use gerbe_core::verify::run_suite;
use gerbe_core::{GerbeError, Result};

use crate::args::*;

pub const DATA_DIR_VAR: &str = "GERBE_DATA_DIR";

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| GerbeError::MalformedInput(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| GerbeError::MalformedInput(format!("{} is not JSON: {e}", path.display())))
}

fn fixture(name: &str) -> Result<Complex> {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => load_fixture_from(Path::new(&dir), name),
        None => load_fixture(name),
    }
}

fn space(s: &Space) -> Result<Complex> {
    match (&s.fixture, &s.complex) {
        (Some(name), _) => fixture(name),
        (None, Some(path)) => complex_from_json(&read_json(path)?),
        (None, None) => Err(GerbeError::MalformedInput("give --fixture or --complex".into())),
    }
}

fn fixture_or_file(name_or_path: &str) -> Result<Complex> {
    if FIXTURE_NAMES.contains(&name_or_path) {
        fixture(name_or_path)
    } else {
        complex_from_json(&read_json(&PathBuf::from(name_or_path))?)
    }
}

pub fn run(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Cohomology(a) => cohomology(a),
        Command::Classify(a) => classify(a),
        Command::Integrality(a) => integrality(a),
        Command::LineBundle(a) => line_bundle(a),
        Command::TwoGerbe(a) => two_gerbe(a),
        Command::Connecting(a) => connecting(a),
        Command::Holonomy(a) => holonomy(a),
        Command::LoopHolonomy(a) => loop_hol(a),
        Command::Periods(a) => period_group(a),
        Command::Reduce(a) => reduce(a),
        Command::ExtensionDelta(a) => extension(a),
        Command::Prequant(a) => prequant(a),
        Command::Fixtures(a) => fixtures(a),
        Command::Verify(a) => verify(a),
    }
}

fn cohomology(a: &CohomologyArgs) -> Result<Value> {
    let k = space(&a.space)?;
    let ring = match a.ring {
        RingArg::Z => Ring::Integers,
        RingArg::Q => Ring::Rationals,
    };
    let h = cohomology_group(&k, a.degree, ring);
    Ok(gerbe_core::io::cohomology_group_to_json(&h))
}

fn cochain_input(a: &CochainArgs) -> Result<(Complex, Cochain)> {
    let k = space(&a.space)?;
    let c = parse_cochain(&read(&a.cochain)?, &k)?;
    Ok((k, c))
}

fn indexed(k: &Complex, dim: usize, key: &str, cochains: &[Cochain]) -> Vec<Value> {
    k.simplices(dim)
        .iter()
        .zip(cochains)
        .map(|(s, c)| json!({ key: s.vertices(), "cochain": cochain_to_json(c) }))
        .collect()
}

fn classify(a: &ClassifyArgs) -> Result<Value> {
    let k = space(&a.space)?;
    let w = parse_cochain(&read(&a.cochain)?, &k)?;
    let degree = match a.degree {
        Some(d) => d as usize,
        None if w.degree() == 3 => 3,
        None => 2,
    };
    let (transcript, c) = if degree == 2 {
        let g = zigzag_gerbe(&k, &w)?;
        g.verify()?;
        let t = json!({
            "alpha": indexed(&k, 0, "vertex", &g.alpha),
            "u": indexed(&k, 1, "edge", &g.u),
        });
        (t, g.c)
    } else {
        let g = zigzag_two_gerbe(&k, &w)?;
        g.verify()?;
        let t = json!({
            "alpha": indexed(&k, 0, "vertex", &g.alpha),
            "u": indexed(&k, 1, "edge", &g.u),
            "v": indexed(&k, 2, "triangle", &g.v),
        });
        (t, g.c)
    };
    Ok(json!({
        "degree": degree,
        "transcript": transcript,
        "classifying": cochain_to_json(&c),
        "verdicts": {
            "transcript_verified": true,
            "class_equal": class_equal(&c, &w)?,
            "integral": integrality_test(&w)?.integral,
        },
    }))
}

fn two_gerbe(a: &CochainArgs) -> Result<Value> {
    let (k, w) = cochain_input(a)?;
    let g = zigzag_two_gerbe(&k, &w)?;
    g.verify()?;
    Ok(json!({
        "classifying": cochain_to_json(&g.c),
        "class_equal": class_equal(&g.c, &g.omega)?,
    }))
}

fn integrality(a: &CochainArgs) -> Result<Value> {
    let (_, w) = cochain_input(a)?;
    let v = integrality_test(&w)?;
    let certificate = match &v.certificate {
        IntegralityCertificate::Decomposition { integral, primitive } => json!({
            "integral_part": cochain_to_json(integral),
            "primitive": cochain_to_json(primitive),
        }),
        IntegralityCertificate::PeriodWitness { cycle, period } => json!({
            "cycle": chain_to_json(cycle),
            "period": rational_to_json(period),
        }),
    };
    Ok(json!({ "integral": v.integral, "certificate": certificate }))
}

fn line_bundle(a: &CochainArgs) -> Result<Value> {
    let (k, w) = cochain_input(a)?;
    let v = integrality_test(&w)?;
    let g = zigzag_gerbe(&k, &w)?;
    let bundle = kostant_weil(&g, &v)?;
    bundle.verify()?;
    let transitions: Vec<Value> = k
        .simplices(1)
        .iter()
        .zip(&bundle.transitions)
        .map(|(e, t)| json!({ "edge": e.vertices(), "lift": cochain_to_json(t) }))
        .collect();
    Ok(json!({
        "shift": cochain_to_json(&bundle.shift),
        "transitions": transitions,
        "certificate": cochain_to_json(&bundle.certificate),
        "trivial": bundle.is_trivial(),
    }))
}

fn connecting(a: &CochainArgs) -> Result<Value> {
    let (_, c) = cochain_input(a)?;
    let ses = match c.coefficients() {
        Coefficients::Quotient(l) if *l == Lattice::integral(1) => CoefficientSES::integers(),
        Coefficients::Quotient(l) => CoefficientSES::lattice(l.clone()),
        other => {
            return Err(GerbeError::Precondition(format!(
                "the connecting map needs quotient coefficients, got {}",
                other.label()
            )))
        }
    };
    let class = connecting_hom(&ses, &c)?;
    let order = class_order(class.representative());
    Ok(json!({
        "class": cochain_to_json(class.representative()),
        "zero": class.is_zero(),
        "order": order.map(|o| o.to_string()),
    }))
}

fn holonomy(a: &HolonomyArgs) -> Result<Value> {
    let k = space(&a.space)?;
    let w = parse_cochain(&read(&a.cochain)?, &k)?;
    let surface_complex = match &a.surface {
        Some(p) => complex_from_json(&read_json(p)?)?,
        None => k.clone(),
    };
    let surface = Surface::new(&surface_complex)?;
    let f = match &a.map {
        Some(p) => map_from_json(&read_json(p)?, &surface_complex, &k)?,
        None if *surface_complex == *k => SimplicialMap::identity(&k),
        None => return Err(GerbeError::MalformedMap("a surface other than the base needs --map".into())),
    };
    let g = zigzag_gerbe(&k, &w)?;
    let h = surface_holonomy(&surface, &f, &canonical_connection(&g)?)?;
    Ok(json!({ "value": rational_to_json(&h) }))
}

fn loop_hol(a: &LoopArgs) -> Result<Value> {
    let k = space(&a.space)?;
    let w = parse_cochain(&read(&a.cochain)?, &k)?;
    let gamma = parse_chain(&read(&a.loop_chain)?, &k)?;
    let d = match &a.chain {
        Some(p) => parse_chain(&read(p)?, &k)?,
        None => bounding_chain(&gamma)?,
    };
    let g = zigzag_gerbe(&k, &w)?;
    let h = loop_holonomy(&gamma, &d, &g)?;
    Ok(json!({
        "value": rational_to_json(&h.value),
        "raw": rational_to_json(&h.raw),
        "period_lattice": lattice_to_json(&h.period_lattice),
        "bounding_chain": chain_to_json(&d),
    }))
}

fn period_group(a: &CochainArgs) -> Result<Value> {
    let (_, w) = cochain_input(a)?;
    Ok(json!({ "periods": lattice_to_json(&periods(&w)?) }))
}

fn reduce(a: &ReduceArgs) -> Result<Value> {
    let k = space(&a.space)?;
    let v = read_json(&a.qcocycle)?;
    let malformed = |m: &str| GerbeError::MalformedCocycle(m.to_string());
    let lattice = lattice_from_json(v.get("lattice").ok_or_else(|| malformed("missing `lattice`"))?)?;
    let values = cochain_from_json(v.get("values").ok_or_else(|| malformed("missing `values`"))?, &k)?;
    let cover = std::sync::Arc::new(StarCover::new(&k));
    let q = QuotientCocycle::from_constants(&cover, lattice, &values)?;
    let c = chern_class(&q)?;
    let t = torsion_vanishing(&c)?;
    Ok(json!({
        "chern": cochain_to_json(c.class.representative()),
        "reducible": has_reduction(&q)?,
        "torsion_order": c.torsion_order.as_ref().map(|o| json!(o.to_string().parse::<u64>().ok())),
        "torsion_argument": {
            "order": t.order.map(|o| o.to_string()),
            "zero": t.is_zero,
            "primitive": t.primitive.as_ref().map(cochain_to_json),
        },
    }))
}

fn extension(a: &ExtensionArgs) -> Result<Value> {
    let base = fixture_or_file(&a.base)?;
    let fibre = fixture_or_file(&a.fibre)?;
    let p = product_complex(&base, &fibre);
    let omega = parse_cochain(&read(&a.omega)?, &p.complex)?;
    let omega_prime = parse_cochain(&read(&a.omega_prime)?, &p.complex)?;
    let point = match a.point {
        Some(x) => x,
        None => fibre.vertices()[0],
    };
    let class = extension_delta(&p, &omega, &omega_prime, point)?;
    Ok(json!({
        "class": cochain_to_json(class.representative()),
        "zero": class.is_zero(),
    }))
}

fn op_json(l: &PrequantOp) -> Value {
    json!({ "dx": l.a.to_string(), "dy": l.b.to_string(), "scalar": l.m.to_string() })
}

fn prequant(a: &PrequantArgs) -> Result<Value> {
    let f = parse_poly(&a.f)?;
    let g = parse_poly(&a.g)?;
    Ok(json!({
        "bracket": poisson_bracket(&f, &g)?.to_string(),
        "identity_holds": commutator_identity(&f, &g)?,
        "L_f": op_json(&prequant_op(&f)?),
        "L_g": op_json(&prequant_op(&g)?),
    }))
}

fn fixtures(a: &FixturesArgs) -> Result<Value> {
    let names: Vec<&str> = match &a.name {
        Some(n) => vec![n.as_str()],
        None => FIXTURE_NAMES.to_vec(),
    };
    let dir = std::env::var_os(DATA_DIR_VAR).map(PathBuf::from);
    let mut out = serde_json::Map::new();
    for name in names {
        let f = read_fixture(name, dir.as_deref())?;
        let checks: Vec<Value> = check_fixture(&f)
            .iter()
            .map(|c| {
                json!({
                    "property": c.property,
                    "expected": c.expected,
                    "actual": c.actual,
                    "passed": c.passed(),
                })
            })
            .collect();
        out.insert(
            name.to_string(),
            json!({ "f_vector": f.complex.f_vector(), "checks": checks }),
        );
    }
    Ok(Value::Object(out))
}

fn verify(a: &VerifyArgs) -> Result<Value> {
    let results = run_suite(a.seed);
    let all = results.iter().all(|r| r.passed);
    let props: Vec<Value> = results
        .iter()
        .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
        .collect();
    let report = json!({ "properties": props, "all_passed": all });
    if all {
        Ok(report)
    } else {
        Err(GerbeError::Internal(report.to_string()))
    }
}
