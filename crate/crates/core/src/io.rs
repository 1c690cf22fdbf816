//! JSON import and export: algebra specs, character specs, matrices
//! (`{"basis", "degrees", "ops"}` with `[row, col, value]` triplets), systems
//! of imprimitivity (the matrix schema plus `"projections"`), and reports.
//!
//! Exact scalars are strings (`"3/4"`, `"1/2*sqrt(3)"`, `"(1/2+1/3i)"`);
//! approximate reals are JSON numbers in shortest round-trip form, and
//! approximate complex values are `{"re", "im"}`. Object keys are sorted, so
//! equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::algebra::{Adjoint, Family, Generator, GradedAlgebraSpec};
use crate::character::{dyn_extend_orbit, BranchPolicy, Character, ExtendOptions, FiniteGroupCharacter, Sl2Character, Sl2Kind};
use crate::group::{FiniteGroup, GroupElem, GroupKind, GroupSpec, Subgroup};
use crate::imprimitivity::ImprimitivitySystem;
use crate::induction::{InducedRep, Label, Origin, Truncation};
use crate::matrix::SparseMatrix;
use crate::poly::{QPoly, RationalFunction};
use crate::scalar::{parse_q, parse_surd, Q};
use crate::verify::{Status, VerificationReport};
use crate::{Error, Result, Scalar};

fn schema(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("field `{field}`: {msg}"))
}

/// Parse JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(&format!("{path}{key}"), "missing"))
}

fn get_str<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a str> {
    get(v, key, path)?.as_str().ok_or_else(|| schema(&format!("{path}{key}"), "expected a string"))
}

fn get_u64(v: &Value, key: &str, path: &str, default: u64) -> Result<u64> {
    match v.get(key) {
        None => Ok(default),
        Some(x) => x.as_u64().ok_or_else(|| schema(&format!("{path}{key}"), "expected a nonnegative integer")),
    }
}

// ---------------------------------------------------------------- scalars

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Exact(s) => Value::String(s.to_string()),
        Scalar::Approx(z) if z.im == 0.0 => float(z.re),
        Scalar::Approx(z) => json!({"re": float(z.re), "im": float(z.im)}),
    }
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(format!("{x}")), Value::Number)
}

pub fn scalar_from_json(v: &Value, field: &str) -> Result<Scalar> {
    let num = |x: &Value| x.as_f64().ok_or_else(|| schema(field, "expected a number"));
    match v {
        Value::String(s) => match s.as_str() {
            "NaN" | "inf" | "-inf" => Ok(Scalar::approx(s.parse().unwrap())),
            _ => parse_surd(s).map(Scalar::Exact).map_err(|e| schema(field, e)),
        },
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::int(i))
            } else {
                Ok(Scalar::approx(n.as_f64().unwrap()))
            }
        }
        Value::Object(o) => {
            let re = num(o.get("re").ok_or_else(|| schema(field, "complex value needs \"re\""))?)?;
            let im = num(o.get("im").ok_or_else(|| schema(field, "complex value needs \"im\""))?)?;
            Ok(Scalar::Approx(Complex64::new(re, im)))
        }
        _ => Err(schema(field, "expected a scalar string, number or {\"re\",\"im\"}")),
    }
}

fn rational(v: &Value, field: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|e| schema(field, e)),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(schema(field, "expected an exact rational string such as \"3/4\"")),
    }
}

fn q_string(x: &Q) -> Value {
    Value::String(Scalar::from_q(x.clone()).to_string())
}

fn qpoly(v: &Value, field: &str) -> Result<QPoly> {
    let arr = v.as_array().ok_or_else(|| schema(field, "expected an array of coefficients"))?;
    let c = arr.iter().enumerate().map(|(i, x)| rational(x, &format!("{field}[{i}]"))).collect::<Result<Vec<_>>>()?;
    Ok(QPoly::new(c))
}

fn qpoly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(q_string).collect())
}

// ---------------------------------------------------------------- groups

fn finite_group_from_json(v: &Value, path: &str) -> Result<FiniteGroup> {
    let kind = get_str(v, "kind", path)?;
    let n = || get_u64(v, "n", path, 0).map(|n| n as usize);
    match kind {
        "symmetric" => Ok(FiniteGroup::symmetric(n()?)),
        "cyclic" => Ok(FiniteGroup::cyclic(n()?)),
        "finite" => {
            let table = get(v, "table", path)?
                .as_array()
                .ok_or_else(|| schema(&format!("{path}table"), "expected an array of rows"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .and_then(|r| r.iter().map(|x| x.as_u64().map(|x| x as usize)).collect::<Option<Vec<_>>>())
                        .ok_or_else(|| schema(&format!("{path}table"), "rows must be arrays of indices"))
                })
                .collect::<Result<Vec<_>>>()?;
            let names = match v.get("names") {
                Some(ns) => ns
                    .as_array()
                    .and_then(|a| a.iter().map(|x| x.as_str().map(String::from)).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| schema(&format!("{path}names"), "expected an array of strings"))?,
                None => (0..table.len()).map(|i| format!("g{i}")).collect(),
            };
            FiniteGroup::new(names, table).map_err(|e| schema(&format!("{path}table"), e))
        }
        other => Err(schema(&format!("{path}kind"), format!("unknown finite group kind {other:?}"))),
    }
}

pub fn group_from_json(v: &Value, path: &str) -> Result<GroupSpec> {
    match get_str(v, "kind", path)? {
        "Z" | "integers" => Ok(GroupSpec::integers()),
        "lattice" | "free_abelian" => Ok(GroupSpec::lattice(get_u64(v, "rank", path, 1)? as usize)),
        _ => Ok(GroupSpec::finite(finite_group_from_json(v, path)?)),
    }
}

fn finite_group_json(g: &FiniteGroup) -> Value {
    json!({"kind": "finite", "names": g.names(), "table": g.table()})
}

pub fn group_to_json(g: &GroupSpec) -> Value {
    match &g.kind {
        GroupKind::FreeAbelian { rank: 1 } => json!({"kind": "Z"}),
        GroupKind::FreeAbelian { rank } => json!({"kind": "lattice", "rank": rank}),
        GroupKind::Finite(f) => finite_group_json(f),
    }
}

pub fn elem_to_json(g: &GroupSpec, x: &GroupElem) -> Value {
    match (x, &g.kind) {
        (GroupElem::Lattice(v), _) if v.len() == 1 => json!(v[0]),
        (GroupElem::Lattice(v), _) => json!(v),
        (GroupElem::Finite(i), GroupKind::Finite(f)) => json!(f.name(*i)),
        (GroupElem::Finite(i), _) => json!(i),
    }
}

pub fn elem_from_json(g: &GroupSpec, v: &Value, field: &str) -> Result<GroupElem> {
    let x = match (&g.kind, v) {
        (GroupKind::FreeAbelian { .. }, Value::Number(n)) => {
            GroupElem::int(n.as_i64().ok_or_else(|| schema(field, "expected an integer degree"))?)
        }
        (GroupKind::FreeAbelian { .. }, Value::Array(a)) => GroupElem::Lattice(
            a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>().ok_or_else(|| schema(field, "expected integers"))?,
        ),
        (GroupKind::FreeAbelian { .. }, Value::String(s)) => {
            GroupElem::int(s.trim().parse().map_err(|_| schema(field, format!("bad degree {s:?}")))?)
        }
        (GroupKind::Finite(f), Value::String(s)) => {
            GroupElem::Finite(f.find(s).ok_or_else(|| schema(field, format!("no group element named {s:?}")))?)
        }
        (GroupKind::Finite(_), Value::Number(n)) => {
            GroupElem::Finite(n.as_u64().ok_or_else(|| schema(field, "expected an element index"))? as usize)
        }
        _ => return Err(schema(field, "degree does not match the group kind")),
    };
    g.check(&x).map_err(|e| schema(field, e))?;
    Ok(x)
}

fn elem_key(g: &GroupSpec, x: &GroupElem) -> String {
    match elem_to_json(g, x) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn elem_from_key(g: &GroupSpec, key: &str, field: &str) -> Result<GroupElem> {
    match &g.kind {
        GroupKind::Finite(_) => elem_from_json(g, &Value::String(key.into()), field),
        GroupKind::FreeAbelian { .. } => elem_from_json(g, &parse_json(key)?, field),
    }
}

pub fn subgroup_to_json(g: &GroupSpec, h: &Subgroup) -> Value {
    match h {
        Subgroup::Lattice { basis, .. } => {
            json!({"generators": basis.iter().map(|b| elem_to_json(g, &GroupElem::Lattice(b.clone()))).collect::<Vec<_>>()})
        }
        Subgroup::Finite { members, .. } => {
            json!({"generators": members.iter().map(|&m| elem_to_json(g, &GroupElem::Finite(m))).collect::<Vec<_>>()})
        }
    }
}

pub fn subgroup_from_json(g: &GroupSpec, v: &Value, path: &str) -> Result<Subgroup> {
    let field = format!("{path}generators");
    let gens = get(v, "generators", path)?.as_array().ok_or_else(|| schema(&field, "expected an array"))?;
    let gens = gens
        .iter()
        .enumerate()
        .map(|(i, x)| elem_from_json(g, x, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    g.subgroup(&gens).map_err(|e| schema(&field, e))
}

// ---------------------------------------------------------------- specs

/// Build a spec from its JSON description (see the crate README for the
/// fields each family takes).
pub fn spec_from_json(v: &Value) -> Result<GradedAlgebraSpec> {
    let family = get_str(v, "family", "")?;
    let spec = match family {
        "weyl" => GradedAlgebraSpec::weyl(),
        "dynamical" => {
            let num = qpoly(get(v, "f_num", "")?, "f_num")?;
            let den = match v.get("f_den") {
                Some(d) => qpoly(d, "f_den")?,
                None => QPoly::new(vec![Q::from_integer(1.into())]),
            };
            GradedAlgebraSpec::dynamical(RationalFunction::new(num, den).map_err(|e| schema("f_den", e))?)
        }
        "quantum_disk" => GradedAlgebraSpec::quantum_disk(rational(get(v, "mu", "")?, "mu")?, rational(get(v, "q", "")?, "q")?)?,
        "su2" => GradedAlgebraSpec::su2(),
        "su11" => GradedAlgebraSpec::su11(),
        "virasoro_density" => GradedAlgebraSpec::virasoro_density(get_u64(v, "k_range", "", 5)? as i64),
        "group_algebra" => {
            let g = Arc::new(finite_group_from_json(get(v, "algebra_group", "")?, "algebra_group.")?);
            match v.get("grading") {
                None => GradedAlgebraSpec::group_algebra_self_graded(g),
                Some(Value::String(s)) if s == "self" => GradedAlgebraSpec::group_algebra_self_graded(g),
                Some(Value::Array(images)) => {
                    let gs = group_from_json(get(v, "group", "")?, "group.")?;
                    let imgs = images
                        .iter()
                        .enumerate()
                        .map(|(i, x)| elem_from_json(&gs, x, &format!("grading[{i}]")))
                        .collect::<Result<Vec<_>>>()?;
                    GradedAlgebraSpec::group_algebra(g, gs, imgs)?
                }
                Some(_) => return Err(schema("grading", "expected \"self\" or an array of degrees")),
            }
        }
        "custom" => custom_from_json(v)?,
        other => return Err(schema("family", format!("unknown family {other:?}"))),
    };
    Ok(spec)
}

fn custom_from_json(v: &Value) -> Result<GradedAlgebraSpec> {
    let group = group_from_json(get(v, "group", "")?, "group.")?;
    let gens = get(v, "generators", "")?.as_array().ok_or_else(|| schema("generators", "expected an array"))?;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let p = format!("generators[{i}].");
        names.push(get_str(g, "name", &p)?.to_string());
        degrees.push(elem_from_json(&group, get(g, "degree", &p)?, &format!("{p}degree"))?);
    }
    let mut generators = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let p = format!("generators[{i}].adjoint");
        let adjoint = match g.get("adjoint") {
            None => Adjoint::Star,
            Some(Value::String(s)) if s == "star" => Adjoint::Star,
            Some(a) => {
                let t = a
                    .get("target")
                    .and_then(Value::as_str)
                    .ok_or_else(|| schema(&p, "expected \"star\" or {\"target\", \"sign\"}"))?;
                let target = names.iter().position(|n| n == t).ok_or_else(|| schema(&p, format!("unknown generator {t:?}")))?;
                let sign = match a.get("sign") {
                    Some(s) => scalar_from_json(s, &format!("{p}.sign"))?,
                    None => Scalar::one(),
                };
                Adjoint::Gen { target, sign }
            }
        };
        generators.push(Generator { name: names[i].clone(), degree: degrees[i].clone(), adjoint });
    }
    let shell = GradedAlgebraSpec { group: group.clone(), generators: generators.clone(), relations: vec![], family: Family::Custom };
    let rels = match v.get("relations") {
        None => vec![],
        Some(r) => r.as_array().ok_or_else(|| schema("relations", "expected an array of strings"))?.clone(),
    };
    let mut relations = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        let s = r.as_str().ok_or_else(|| schema(&format!("relations[{i}]"), "expected a string"))?;
        relations.push(shell.parse_polynomial(s).map_err(|e| schema(&format!("relations[{i}]"), e))?);
    }
    GradedAlgebraSpec::new(group, generators, relations, Family::Custom).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("field `relations`: {m}")),
        e => e,
    })
}

pub fn spec_to_json(spec: &GradedAlgebraSpec) -> Value {
    let mut m = Map::new();
    m.insert("family".into(), json!(spec.family.tag()));
    match &spec.family {
        Family::Dynamical(f) => {
            m.insert("f_num".into(), qpoly_json(&f.num));
            m.insert("f_den".into(), qpoly_json(&f.den));
        }
        Family::QuantumDisk { mu, q, .. } => {
            m.insert("mu".into(), q_string(mu));
            m.insert("q".into(), q_string(q));
        }
        Family::VirasoroDensity { k_range } => {
            m.insert("k_range".into(), json!(k_range));
        }
        Family::GroupAlgebra(g) => {
            m.insert("algebra_group".into(), finite_group_json(g));
            m.insert("group".into(), group_to_json(&spec.group));
            let imgs: Vec<Value> = spec.generators.iter().map(|x| elem_to_json(&spec.group, &x.degree)).collect();
            m.insert("grading".into(), Value::Array(imgs));
        }
        Family::Custom => {
            m.insert("group".into(), group_to_json(&spec.group));
            let gens: Vec<Value> = spec
                .generators
                .iter()
                .map(|g| {
                    let adjoint = match &g.adjoint {
                        Adjoint::Star => json!("star"),
                        Adjoint::Gen { target, sign } => {
                            json!({"target": spec.generators[*target].name, "sign": scalar_to_json(sign)})
                        }
                    };
                    json!({"name": g.name, "degree": elem_to_json(&spec.group, &g.degree), "adjoint": adjoint})
                })
                .collect();
            m.insert("generators".into(), Value::Array(gens));
            let rels: Vec<Value> = spec.relations.iter().map(|r| json!(spec.poly_string(r))).collect();
            m.insert("relations".into(), Value::Array(rels));
        }
        Family::Weyl | Family::EnvSU2 | Family::EnvSU11 => {}
    }
    Value::Object(m)
}

// ---------------------------------------------------------------- characters

/// `{"kind":"dyn","seed":"1/4","back":50,"fwd":50,"branches":"principal"}`,
/// `{"kind":"sl2","algebra":"su11","s":"-1","t":"0"}`, or
/// `{"kind":"group","values":{"e":"1","(123)":"(-1/2+…i)",…}}`.
/// Dynamical seeds may yield several branches; all are returned.
pub fn characters_from_json(v: &Value, spec: &GradedAlgebraSpec) -> Result<Vec<Character>> {
    match get_str(v, "kind", "")? {
        "dyn" => {
            let f = spec.family.dyn_function().ok_or_else(|| schema("kind", "dyn characters need a one-generator dynamical family"))?;
            let seed = scalar_from_json(get(v, "seed", "")?, "seed")?;
            let policy = match v.get("branches").and_then(Value::as_str).unwrap_or("principal") {
                "principal" => BranchPolicy::Principal,
                "all" => BranchPolicy::All,
                other => return Err(schema("branches", format!("expected \"principal\" or \"all\", got {other:?}"))),
            };
            let opts = ExtendOptions {
                policy,
                ..ExtendOptions::steps(get_u64(v, "back", "", 50)? as usize, get_u64(v, "fwd", "", 50)? as usize)
            };
            Ok(dyn_extend_orbit(&f, &seed, &opts)?.into_iter().map(Character::Dyn).collect())
        }
        "sl2" => {
            let kind = match v.get("algebra").and_then(Value::as_str).unwrap_or(spec.family.tag()) {
                "su2" => Sl2Kind::Su2,
                "su11" => Sl2Kind::Su11,
                other => return Err(schema("algebra", format!("expected \"su2\" or \"su11\", got {other:?}"))),
            };
            let s = rational(get(v, "s", "")?, "s")?;
            let t = rational(get(v, "t", "")?, "t")?;
            Ok(vec![Character::Sl2(Sl2Character::new(kind, s, t))])
        }
        "group" => {
            let Family::GroupAlgebra(g) = &spec.family else {
                return Err(schema("kind", "group characters need a group_algebra spec"));
            };
            let vals = get(v, "values", "")?.as_object().ok_or_else(|| schema("values", "expected an object"))?;
            let mut values = BTreeMap::new();
            for (name, x) in vals {
                let f = format!("values.{name}");
                let h = g.find(name).ok_or_else(|| schema(&f, "no such group element"))?;
                values.insert(h, scalar_from_json(x, &f)?);
            }
            Ok(vec![Character::Finite(FiniteGroupCharacter::new(g.clone(), values)?)])
        }
        other => Err(schema("kind", format!("unknown character kind {other:?}"))),
    }
}

// ---------------------------------------------------------------- matrices

pub fn matrix_to_json(m: &SparseMatrix) -> Value {
    Value::Array(m.entries().map(|(r, c, x)| json!([r, c, scalar_to_json(x)])).collect())
}

pub fn matrix_from_json(v: &Value, n: usize, field: &str) -> Result<SparseMatrix> {
    let arr = v.as_array().ok_or_else(|| schema(field, "expected an array of [row, col, value] triplets"))?;
    let mut m = SparseMatrix::square(n);
    for (i, t) in arr.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| schema(&f, "expected [row, col, value]"))?;
        let idx = |x: &Value| x.as_u64().map(|x| x as usize).filter(|&x| x < n);
        let (r, c) = match (idx(&t[0]), idx(&t[1])) {
            (Some(r), Some(c)) => (r, c),
            _ => return Err(schema(&f, format!("indices must be integers below {n}"))),
        };
        m.set(r, c, scalar_from_json(&t[2], &format!("{f}[2]"))?);
    }
    Ok(m)
}

fn label_json(l: &Label) -> Value {
    match l {
        Label::Int(k) => json!(k),
        Label::Text(s) => json!(s),
    }
}

/// Export with the generating spec embedded under `"spec"`.
pub fn rep_to_json(rep: &InducedRep, spec: &GradedAlgebraSpec) -> Value {
    let ops: Map<String, Value> = rep.ops.iter().map(|(k, m)| (k.clone(), matrix_to_json(m))).collect();
    json!({
        "basis": rep.labels.iter().map(label_json).collect::<Vec<_>>(),
        "degrees": rep.degrees.iter().map(|d| elem_to_json(&spec.group, d)).collect::<Vec<_>>(),
        "ops": ops,
        "spec": spec_to_json(spec),
        "truncation": {"lo": rep.truncation.cut_lo, "hi": rep.truncation.cut_hi},
    })
}

/// Import a matrix export; the spec comes from `"spec"` unless given.
pub fn rep_from_json(v: &Value, spec: Option<&GradedAlgebraSpec>) -> Result<(InducedRep, GradedAlgebraSpec)> {
    let spec = match spec {
        Some(s) => s.clone(),
        None => spec_from_json(get(v, "spec", "")?)?,
    };
    let basis = get(v, "basis", "")?.as_array().ok_or_else(|| schema("basis", "expected an array of labels"))?;
    let labels = basis
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Value::Number(n) if n.is_i64() => Ok(Label::Int(n.as_i64().unwrap())),
            Value::String(s) => Ok(Label::Text(s.clone())),
            _ => Err(schema(&format!("basis[{i}]"), "expected an integer or string label")),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = labels.len();
    let degrees = match v.get("degrees") {
        Some(Value::Array(ds)) if ds.len() == n => ds
            .iter()
            .enumerate()
            .map(|(i, d)| elem_from_json(&spec.group, d, &format!("degrees[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(schema("degrees", format!("expected an array of {n} degrees"))),
        None => labels
            .iter()
            .map(|l| match l {
                Label::Int(k) => Ok(GroupElem::int(*k)),
                Label::Text(_) => Err(schema("degrees", "required when labels are not integers")),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let ops_v = get(v, "ops", "")?.as_object().ok_or_else(|| schema("ops", "expected an object"))?;
    let mut ops = BTreeMap::new();
    for (k, m) in ops_v {
        ops.insert(k.clone(), matrix_from_json(m, n, &format!("ops.{k}"))?);
    }
    let truncation = match v.get("truncation") {
        Some(t) => Truncation {
            cut_lo: t.get("lo").and_then(Value::as_bool).unwrap_or(false),
            cut_hi: t.get("hi").and_then(Value::as_bool).unwrap_or(false),
        },
        None => Truncation::default(),
    };
    Ok((InducedRep { labels, degrees, ops, truncation, origin: Origin::Explicit }, spec))
}

pub fn system_to_json(sys: &ImprimitivitySystem, spec: &GradedAlgebraSpec) -> Value {
    let mut v = rep_to_json(&sys.rep, spec);
    let proj: Map<String, Value> =
        sys.projections.iter().map(|(t, e)| (elem_key(&spec.group, t), matrix_to_json(e))).collect();
    v["projections"] = Value::Object(proj);
    v["subgroup"] = subgroup_to_json(&spec.group, &sys.subgroup);
    v
}

pub fn system_from_json(v: &Value, spec: Option<&GradedAlgebraSpec>) -> Result<(ImprimitivitySystem, GradedAlgebraSpec)> {
    let (rep, spec) = rep_from_json(v, spec)?;
    let subgroup = subgroup_from_json(&spec.group, get(v, "subgroup", "")?, "subgroup.")?;
    let pv = get(v, "projections", "")?.as_object().ok_or_else(|| schema("projections", "expected an object"))?;
    let mut projections = BTreeMap::new();
    for (k, m) in pv {
        let f = format!("projections.{k}");
        let t = elem_from_key(&spec.group, k, &f)?;
        projections.insert(subgroup.coset(&t), matrix_from_json(m, rep.dim(), &f)?);
    }
    Ok((ImprimitivitySystem { rep, subgroup, projections }, spec))
}

// ---------------------------------------------------------------- reports

pub fn report_to_json(r: &VerificationReport) -> Value {
    json!({
        "check": r.check,
        "status": r.status.to_string(),
        "residual": scalar_to_json(&r.residual),
        "tolerance": float(r.tolerance),
        "witness": r.witness,
    })
}

pub fn reports_to_json(rs: &[VerificationReport]) -> Value {
    Value::Array(rs.iter().map(report_to_json).collect())
}

pub fn status_from_str(s: &str) -> Option<Status> {
    match s {
        "pass" => Some(Status::Pass),
        "fail" => Some(Status::Fail),
        "inconclusive" => Some(Status::Inconclusive),
        _ => None,
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::imprimitivity::build_induced_system;
    use crate::induction::{finite_group_induce, su2_spin_rep};

    #[test]
    fn scalars_round_trip() {
        let xs = [
            Scalar::rat(-3, 4),
            Scalar::int(2).sqrt().unwrap(),
            Scalar::root_of_unity(8, 3),
            Scalar::approx(0.1),
            Scalar::Approx(Complex64::new(1.5, -2.25)),
        ];
        for x in xs {
            assert_eq!(scalar_from_json(&scalar_to_json(&x), "x").unwrap(), x);
        }
        assert_eq!(scalar_to_json(&Scalar::approx(0.1)).to_string(), "0.1");
    }

    #[test]
    fn spin_rep_and_system_round_trip() {
        let spec = GradedAlgebraSpec::su2();
        let rep = su2_spin_rep(2);
        let text = to_pretty(&rep_to_json(&rep, &spec));
        let (back, spec2) = rep_from_json(&parse_json(&text).unwrap(), None).unwrap();
        assert_eq!(spec2, spec);
        assert_eq!((back.labels.clone(), back.degrees.clone(), back.ops.clone()), (rep.labels.clone(), rep.degrees.clone(), rep.ops.clone()));
        assert_eq!(to_pretty(&rep_to_json(&back, &spec2)), text);
        let sys = build_induced_system(&rep, &spec, &Subgroup::multiples(0)).unwrap();
        let (s2, _) = system_from_json(&system_to_json(&sys, &spec), None).unwrap();
        assert_eq!(s2.projections, sys.projections);
    }

    #[test]
    fn finite_specs_and_systems() {
        let (spec, s3) = GradedAlgebraSpec::s3_over_a3();
        let back = spec_from_json(&spec_to_json(&spec)).unwrap();
        assert_eq!(back, spec);
        let a3 = s3.closure(&[s3.find("(123)").unwrap()]);
        let rho = a3.iter().map(|&h| (h, SparseMatrix::identity(1))).collect();
        let rep = finite_group_induce(&s3, &a3, &rho).unwrap();
        let self_spec = GradedAlgebraSpec::group_algebra_self_graded(s3.clone());
        let h = self_spec.group.subgroup(&a3.iter().map(|&x| GroupElem::Finite(x)).collect::<Vec<_>>()).unwrap();
        let sys = build_induced_system(&rep, &self_spec, &h).unwrap();
        let (s2, _) = system_from_json(&system_to_json(&sys, &self_spec), None).unwrap();
        assert_eq!(s2.projections, sys.projections);
        assert_eq!(s2.subgroup, sys.subgroup);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let bad = parse_json(r#"{"family":"dynamical","f_num":["1","x"]}"#).unwrap();
        let e = spec_from_json(&bad).unwrap_err().to_string();
        assert!(e.contains("f_num[1]"), "{e}");
        let mixed = parse_json(
            r#"{"family":"custom","group":{"kind":"Z"},"generators":[{"name":"a","degree":1}],"relations":["a - a*a"]}"#,
        )
        .unwrap();
        let e = spec_from_json(&mixed).unwrap_err().to_string();
        assert!(e.contains("mixes degrees"), "{e}");
        let disk = parse_json(r#"{"family":"quantum_disk","mu":"0","q":"1"}"#).unwrap();
        assert!(spec_from_json(&disk).is_err());
        let e = parse_json("{\n  \"family\": \n}").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }

    #[test]
    fn custom_spec_round_trip() {
        let src = r#"{"family":"custom","group":{"kind":"Z"},
            "generators":[{"name":"a","degree":1}],"relations":["aa* - a*a - 1"]}"#;
        let spec = spec_from_json(&parse_json(src).unwrap()).unwrap();
        let again = spec_from_json(&spec_to_json(&spec)).unwrap();
        assert_eq!(again, spec);
    }
}
