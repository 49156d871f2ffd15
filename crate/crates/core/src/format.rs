//! JSON documents for groups, elements and reports.
//!
//! Malformed JSON is reported with a line and column; well-formed documents
//! that do not fit the expected shape are reported with a path such as
//! `recursions.b.states[1]`. Objects are emitted with sorted keys.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::abelian::{AbClass, FinAbPresentation};
use crate::embed::PipelineReport;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rovernek::VElement;
use crate::ssgroup::{Portrait, SSPresentation, WreathRecursion};
use crate::tree::{Degree, Vertex};
use crate::virtend::{AffineElem, CrosscheckReport, RelatorReport, Ring, RingElem, VirtEndSpec};
use crate::word::GroupWord;

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

fn child_path(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| Error::schema(path_or_root(path), "expected an object"))?;
    obj.get(key).ok_or_else(|| Error::schema(child_path(path, key), "missing field"))
}

fn path_or_root(path: &str) -> String {
    if path.is_empty() {
        "$".into()
    } else {
        path.into()
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value]> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| Error::schema(path_or_root(path), "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::schema(path_or_root(path), "expected a non-negative integer"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(path_or_root(path), "expected a string"))
}

fn bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s.parse().map_err(|_| Error::schema(path, format!("bad integer {s:?}"))),
        _ => Err(Error::schema(path_or_root(path), "expected an integer")),
    }
}

pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

pub fn vertex_value(v: &Vertex) -> Value {
    json!(v.letters())
}

pub fn vertex_from_value(v: &Value, path: &str) -> Result<Vertex> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            uint(x, &p).and_then(|l| u32::try_from(l).map_err(|_| Error::schema(p, "letter too large")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Vertex::from_letters)
}

pub fn word_value(g: &SSPresentation, w: &GroupWord) -> Value {
    json!(g.word_tokens(w))
}

/// A word is an array of tokens (`g`, `g^-1`, `g^k`) or a string of
/// whitespace- or comma-separated tokens.
pub fn word_from_value(g: &SSPresentation, v: &Value, path: &str) -> Result<GroupWord> {
    let relabel = |e: Error, p: String| match e {
        Error::UnknownGenerator(name) => Error::schema(p, format!("unknown generator {name:?}")),
        Error::Schema { message, .. } => Error::schema(p, message),
        e => e,
    };
    match v {
        Value::String(s) => g.parse_word(s).map_err(|e| relabel(e, path.to_string())),
        Value::Array(tokens) => {
            let mut w = GroupWord::identity();
            for (i, t) in tokens.iter().enumerate() {
                let p = format!("{path}[{i}]");
                let s = g.parse_token(string(t, &p)?).map_err(|e| relabel(e, p))?;
                w.push(s);
            }
            Ok(w)
        }
        _ => Err(Error::schema(path_or_root(path), "expected a word")),
    }
}

pub fn parse_group(text: &str) -> Result<SSPresentation> {
    group_from_value(&parse_json(text)?)
}

pub fn group_from_value(v: &Value) -> Result<SSPresentation> {
    let d = uint(field(v, "degree", "")?, "degree")?;
    let degree = Degree::new(d as usize).map_err(|e| Error::schema("degree", e.to_string()))?;
    let names = array(field(v, "generators", "")?, "generators")?
        .iter()
        .enumerate()
        .map(|(i, n)| string(n, &format!("generators[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let recs = field(v, "recursions", "")?
        .as_object()
        .ok_or_else(|| Error::schema("recursions", "expected an object"))?;
    if let Some(extra) = recs.keys().find(|k| !names.contains(k)) {
        return Err(Error::schema(format!("recursions.{extra}"), "not a listed generator"));
    }
    // validates names; used to parse state tokens
    let bare = SSPresentation::new(
        degree,
        names.clone(),
        vec![WreathRecursion::identity(degree); names.len()],
        Vec::new(),
    )?;
    let mut recursions = Vec::with_capacity(names.len());
    for name in &names {
        let path = format!("recursions.{name}");
        let rec = recs.get(name).ok_or_else(|| Error::schema(path.clone(), "missing recursion"))?;
        let perm_path = format!("{path}.perm");
        let images = array(field(rec, "perm", &path)?, &perm_path)?
            .iter()
            .enumerate()
            .map(|(i, x)| uint(x, &format!("{perm_path}[{i}]")).map(|x| x as u32))
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree.get() {
            return Err(Error::schema(perm_path, format!("expected {} images", degree)));
        }
        let perm = Perm::from_images(images).map_err(|e| match e {
            Error::Schema { message, .. } => Error::schema(perm_path.clone(), message),
            e => e,
        })?;
        let states_path = format!("{path}.states");
        let states = array(field(rec, "states", &path)?, &states_path)?;
        if states.len() != degree.get() {
            return Err(Error::schema(states_path, format!("expected {} states", degree)));
        }
        let states = states
            .iter()
            .enumerate()
            .map(|(i, s)| word_from_value(&bare, s, &format!("{states_path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        recursions.push(WreathRecursion { perm, states });
    }
    let relators = match v.get("relators") {
        None => Vec::new(),
        Some(r) => array(r, "relators")?
            .iter()
            .enumerate()
            .map(|(i, w)| word_from_value(&bare, w, &format!("relators[{i}]")))
            .collect::<Result<Vec<_>>>()?,
    };
    SSPresentation::new(degree, names, recursions, relators)
}

pub fn group_value(g: &SSPresentation) -> Value {
    let recursions: Map<String, Value> = g
        .gen_names()
        .iter()
        .zip(g.recursions())
        .map(|(name, rec)| {
            let states: Vec<Value> = rec.states.iter().map(|s| word_value(g, s)).collect();
            (name.clone(), json!({ "perm": rec.perm.images(), "states": states }))
        })
        .collect();
    let relators: Vec<Value> = g.relators().iter().map(|r| word_value(g, r)).collect();
    json!({
        "degree": g.degree().get(),
        "generators": g.gen_names(),
        "recursions": recursions,
        "relators": relators,
    })
}

pub fn velement_value(e: &VElement) -> Value {
    let g = e.group();
    json!({
        "domain": e.pairs().iter().map(|p| vertex_value(&p.domain)).collect::<Vec<_>>(),
        "range": e.pairs().iter().map(|p| vertex_value(&p.range)).collect::<Vec<_>>(),
        "decorations": e.pairs().iter().map(|p| word_value(g, &p.decoration)).collect::<Vec<_>>(),
    })
}

pub fn parse_velement(text: &str, group: Arc<SSPresentation>) -> Result<VElement> {
    velement_from_value(&parse_json(text)?, group)
}

pub fn velement_from_value(v: &Value, group: Arc<SSPresentation>) -> Result<VElement> {
    let cones = |key: &str| -> Result<Vec<Vertex>> {
        array(field(v, key, "")?, key)?
            .iter()
            .enumerate()
            .map(|(i, c)| vertex_from_value(c, &format!("{key}[{i}]")))
            .collect()
    };
    let domain = cones("domain")?;
    let range = cones("range")?;
    let decorations = array(field(v, "decorations", "")?, "decorations")?
        .iter()
        .enumerate()
        .map(|(i, w)| word_from_value(&group, w, &format!("decorations[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    VElement::new(group, domain, range, decorations)
}

pub fn class_value(c: &AbClass) -> Value {
    Value::Array(c.0.iter().map(bigint_value).collect())
}

pub fn fin_ab_value(q: &FinAbPresentation) -> Value {
    let images: Map<String, Value> =
        q.gen_names.iter().zip(&q.gen_images).map(|(n, c)| (n.clone(), class_value(c))).collect();
    let mut out = json!({
        "factors": q.group.factors.iter().map(bigint_value).collect::<Vec<_>>(),
        "rank": q.group.rank,
        "images": images,
    });
    if let Some(s) = &q.sign_image {
        out["sign"] = class_value(s);
    }
    out
}

/// Leaves of the truncation are `null`.
pub fn portrait_value(p: &Portrait) -> Value {
    match p {
        Portrait::Leaf => Value::Null,
        Portrait::Node { perm, children } => json!({
            "perm": perm.images(),
            "children": children.iter().map(portrait_value).collect::<Vec<_>>(),
        }),
    }
}

pub fn pipeline_report_value(r: &PipelineReport, g: &SSPresentation) -> Value {
    json!({
        "d_prime": r.d_prime,
        "m": r.m,
        "Q": fin_ab_value(&r.q),
        "index_H": r.index_h,
        "transversal": r.transversal.iter().map(|t| word_value(g, t)).collect::<Vec<_>>(),
    })
}

pub fn parse_virtend_spec(text: &str) -> Result<VirtEndSpec> {
    virtend_spec_from_value(&parse_json(text)?)
}

pub fn virtend_spec_from_value(v: &Value) -> Result<VirtEndSpec> {
    let m = uint(field(v, "m", "")?, "m")?;
    let p = uint(field(v, "p", "")?, "p")?;
    let n = uint(field(v, "n", "")?, "n")?;
    VirtEndSpec::new(m, p, n as usize)
}

pub fn virtend_spec_value(s: &VirtEndSpec) -> Value {
    json!({ "m": s.ring.m(), "p": s.p, "n": s.n })
}

/// `{"num": …, "exp": …}`; a bare integer is accepted as `exp = 0`.
pub fn ring_elem_from_value(ring: &Ring, v: &Value, path: &str) -> Result<RingElem> {
    if v.is_object() {
        let num = bigint(field(v, "num", path)?, &child_path(path, "num"))?;
        let exp = match v.get("exp") {
            None => 0,
            Some(e) => u32::try_from(uint(e, &child_path(path, "exp"))?)
                .map_err(|_| Error::schema(child_path(path, "exp"), "exponent too large"))?,
        };
        Ok(ring.elem(num, exp))
    } else {
        Ok(ring.elem(bigint(v, path)?, 0))
    }
}

pub fn ring_elem_value(x: &RingElem) -> Value {
    json!({ "num": bigint_value(&x.num), "exp": x.exp })
}

pub fn affine_from_value(ring: &Ring, v: &Value, path: &str) -> Result<AffineElem> {
    let a_path = child_path(path, "a");
    let a = array(field(v, "a", path)?, &a_path)?
        .iter()
        .enumerate()
        .map(|(i, x)| ring_elem_from_value(ring, x, &format!("{a_path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let g_path = child_path(path, "gamma");
    let gamma = array(field(v, "gamma", path)?, &g_path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let r_path = format!("{g_path}[{i}]");
            array(row, &r_path)?
                .iter()
                .enumerate()
                .map(|(j, x)| ring_elem_from_value(ring, x, &format!("{r_path}[{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    AffineElem::new(ring, a, gamma)
}

pub fn affine_value(e: &AffineElem) -> Value {
    json!({
        "a": e.a.iter().map(ring_elem_value).collect::<Vec<_>>(),
        "gamma": e.gamma.iter().map(|r| r.iter().map(ring_elem_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn crosscheck_value(r: &CrosscheckReport) -> Value {
    json!({
        "depth": r.depth,
        "vertices_checked": r.vertices_checked,
        "passed": r.passed(),
        "mismatches": r.mismatches.iter().map(|m| json!({
            "generator": m.generator,
            "vertex": vertex_value(&m.vertex),
            "affine": vertex_value(&m.affine),
            "symbolic": vertex_value(&m.symbolic),
        })).collect::<Vec<_>>(),
    })
}

pub fn relator_report_value(r: &RelatorReport) -> Value {
    json!({
        "all_identity": r.all_identity(),
        "checks": r.checks.iter().map(|c| json!({
            "family": c.family,
            "relator": c.label,
            "identity": c.identity,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize_v;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for g in [fixtures::odometer(), fixtures::grigorchuk(), fixtures::dinf(), fixtures::odometer_mirrored()] {
            let text = group_value(&g).to_string();
            assert_eq!(parse_group(&text).unwrap(), g);
        }
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad_perm = r#"{"degree":2,"generators":["a"],"recursions":{"a":{"perm":[1,1],"states":[[],[]]}},"relators":[]}"#;
        match parse_group(bad_perm) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "recursions.a.perm"),
            other => panic!("{other:?}"),
        }
        let bad_state = r#"{"degree":2,"generators":["a"],"recursions":{"a":{"perm":[2,1],"states":[[],["q"]]}}}"#;
        match parse_group(bad_state) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "recursions.a.states[1][0]"),
            other => panic!("{other:?}"),
        }
        let missing = r#"{"degree":2,"generators":["a"]}"#;
        assert!(matches!(parse_group(missing), Err(Error::Schema { path, .. }) if path == "recursions"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_group("{\n  \"degree\": 2,\n  oops\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn velement_round_trip() {
        let g = Arc::new(fixtures::dinf());
        let e = VElement::new(
            g.clone(),
            vec![Vertex::from_letters(vec![1]), Vertex::from_letters(vec![2])],
            vec![Vertex::from_letters(vec![2]), Vertex::from_letters(vec![1])],
            vec![g.parse_word("a s").unwrap(), GroupWord::identity()],
        )
        .unwrap();
        let back = velement_from_value(&velement_value(&e), g).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn abelian_documents() {
        let v = fin_ab_value(&abelianize_v(&fixtures::odometer()));
        assert_eq!(v, json!({"factors": [], "rank": 1, "images": {"a": [1]}}));
    }

    #[test]
    fn affine_round_trip() {
        let spec = parse_virtend_spec(r#"{"m": 6, "p": 5, "n": 2}"#).unwrap();
        let text = r#"{"a": [{"num": 1, "exp": 1}, 3], "gamma": [[{"num": 1, "exp": 0}, 2], [0, {"num": 1, "exp": 1}]]}"#;
        let e = affine_from_value(&spec.ring, &parse_json(text).unwrap(), "").unwrap();
        assert_eq!(affine_from_value(&spec.ring, &affine_value(&e), "").unwrap(), e);
        let singular = r#"{"a": [0, 0], "gamma": [[1, 2], [2, 4]]}"#;
        assert!(matches!(
            affine_from_value(&spec.ring, &parse_json(singular).unwrap(), ""),
            Err(Error::NotInvertible(_))
        ));
    }
}
