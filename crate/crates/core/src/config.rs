//! JSON documents: group configuration, derivation tuples, automorphism
//! words and cocycles. Every number is an exact string.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{Element, Window};
use crate::automorphisms::{AutoGen, Character, FactoredAutomorphism, HomToInt, MShearData};
use crate::cohomology::{Cocycle, LinearFunctional, Reduction};
use crate::derivations::{CanonicalDerivation, GFunction, HomToLaurent};
use crate::error::{Error, Result};
use crate::parse::{parse_element, parse_key, parse_laurent, parse_scalar};
use crate::scalars::{Field, GroupData, LaurentPoly, Scalar};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldSpec {
    /// `"Q"`, or `"Q_sqrt"` with a sibling `"d"`.
    Name(String),
    /// `{"Q_sqrt": d}`.
    Quadratic {
        #[serde(rename = "Q_sqrt")]
        d: u32,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub gamma_generators: Vec<String>,
    pub s: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
}

impl GroupConfig {
    pub fn field(&self) -> Result<Field> {
        match (&self.field, self.d) {
            (FieldSpec::Name(n), None) if n == "Q" => Ok(Field::Rational),
            (FieldSpec::Name(n), Some(d)) if n == "Q_sqrt" => Field::quadratic(d),
            (FieldSpec::Quadratic { d }, None) => Field::quadratic(*d),
            (f, d) => Err(Error::Config(format!("unrecognized field {f:?} (d = {d:?})"))),
        }
    }

    pub fn group(&self) -> Result<GroupData> {
        let field = self.field()?;
        let gens = self
            .gamma_generators
            .iter()
            .map(|g| parse_scalar(g))
            .collect::<Result<Vec<_>>>()?;
        let s = parse_scalar(&self.s)?;
        GroupData::new(field, gens, s)
    }
}

/// Group and default window from a config file.
pub fn load_config(path: &Path) -> Result<(GroupData, Window)> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        e => e,
    })
}

/// Same as [`load_config`] for a JSON string.
pub fn parse_config(text: &str) -> Result<(GroupData, Window)> {
    let cfg: GroupConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    Ok((cfg.group()?, cfg.window.unwrap_or_default()))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn str_of(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Config(format!("{what}: expected an exact string, found {v}"))),
    }
}

fn scalar_of(v: &Value, what: &str) -> Result<Scalar> {
    parse_scalar(&str_of(v, what)?)
}

fn laurent_of(v: Option<&Value>, what: &str) -> Result<LaurentPoly> {
    match v {
        None | Some(Value::Null) => Ok(LaurentPoly::zero()),
        Some(v) => parse_laurent(&str_of(v, what)?),
    }
}

fn int_of(v: &Value, what: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| Error::Config(format!("{what}: {n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Config(format!("{what}: {s} is not an integer"))),
        _ => Err(Error::Config(format!("{what}: expected an integer, found {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Config(format!("{what}: expected an array, found {v}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Config(format!("{what}: expected an object, found {v}")))
}

/// `{"rho", "f": [..], "g": {"affine": [u, v]} | {"table": {alpha: laurent}}, "b", "inner"}`;
/// missing fields are zero.
pub fn derivation_from_json(group: &GroupData, v: &Value) -> Result<CanonicalDerivation> {
    let o = object(v, "derivation")?;
    for k in o.keys() {
        if !["rho", "f", "g", "b", "inner"].contains(&k.as_str()) {
            return Err(Error::Config(format!("derivation: unknown field {k}")));
        }
    }
    let rho = laurent_of(o.get("rho"), "rho")?;
    let f = match o.get("f") {
        None | Some(Value::Null) => HomToLaurent::zero(group),
        Some(v) => {
            let images = array(v, "f")?.iter().map(|p| laurent_of(Some(p), "f")).collect::<Result<Vec<_>>>()?;
            if images.len() != group.t_rank() {
                return Err(Error::Config(format!("f: expected {} images, one per T-basis element", group.t_rank())));
            }
            HomToLaurent::new(images)
        }
    };
    let g = match o.get("g") {
        None | Some(Value::Null) => GFunction::default(),
        Some(v) => {
            let g = object(v, "g")?;
            if let Some(uv) = g.get("affine") {
                let uv = array(uv, "g.affine")?;
                if uv.len() != 2 {
                    return Err(Error::Config("g.affine: expected [u, v]".into()));
                }
                GFunction::affine(laurent_of(Some(&uv[0]), "g.affine")?, laurent_of(Some(&uv[1]), "g.affine")?)
            } else if let Some(t) = g.get("table") {
                let mut values = BTreeMap::new();
                for (a, p) in object(t, "g.table")? {
                    values.insert(parse_scalar(a)?, laurent_of(Some(p), "g.table")?);
                }
                GFunction::table(values)?
            } else {
                return Err(Error::Config("g: expected \"affine\" or \"table\"".into()));
            }
        }
    };
    let b = laurent_of(o.get("b"), "b")?;
    let inner = match o.get("inner") {
        None | Some(Value::Null) => Element::zero(),
        Some(v) => parse_element(group, &str_of(v, "inner")?)?,
    };
    Ok(CanonicalDerivation { rho, f, g, b, inner })
}

pub fn derivation_to_json(d: &CanonicalDerivation) -> Value {
    let g = match &d.g {
        GFunction::Affine { u, v } => json!({"affine": [u.to_string(), v.to_string()]}),
        GFunction::Table(t) => {
            let m: Map<String, Value> = t.iter().map(|(a, p)| (a.to_string(), Value::String(p.to_string()))).collect();
            json!({ "table": m })
        }
    };
    json!({
        "rho": d.rho.to_string(),
        "f": d.f.images.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "g": g,
        "b": d.b.to_string(),
        "inner": d.inner.to_string(),
    })
}

fn shear_from_json(v: &Value) -> Result<MShearData> {
    let o = object(v, "m_shear")?;
    if let Some(c) = o.get("canonical") {
        let mut entries = Vec::new();
        for (d, uv) in object(c, "m_shear.canonical")? {
            let d: i64 = d.parse().map_err(|_| Error::Config(format!("m_shear: {d} is not an integer")))?;
            let uv = array(uv, "m_shear.canonical")?;
            if uv.len() != 2 {
                return Err(Error::Config("m_shear.canonical: expected [u, v]".into()));
            }
            entries.push((d, (scalar_of(&uv[0], "u")?, scalar_of(&uv[1], "v")?)));
        }
        Ok(MShearData::canonical(entries))
    } else if let Some(t) = o.get("table") {
        let mut rows = BTreeMap::new();
        for r in array(t, "m_shear.table")? {
            let r = object(r, "m_shear.table row")?;
            let get = |k: &str| r.get(k).ok_or_else(|| Error::Config(format!("m_shear.table row: missing {k}")));
            let alpha = scalar_of(get("alpha")?, "alpha")?;
            let i = int_of(get("i")?, "i")?;
            let mut row = BTreeMap::new();
            for (k, x) in object(get("row")?, "row")? {
                let k: i64 = k.parse().map_err(|_| Error::Config(format!("row: {k} is not an integer")))?;
                row.insert(k, scalar_of(x, "row")?);
            }
            rows.insert((alpha, i), row);
        }
        MShearData::table(rows)
    } else {
        Err(Error::Config("m_shear: expected \"canonical\" or \"table\"".into()))
    }
}

pub fn shear_to_json(e: &MShearData) -> Value {
    match e {
        MShearData::Canonical(m) => {
            let c: Map<String, Value> =
                m.iter().map(|(d, (u, v))| (d.to_string(), json!([u.to_string(), v.to_string()]))).collect();
            json!({ "canonical": c })
        }
        MShearData::Table(t) => {
            let rows: Vec<Value> = t
                .iter()
                .map(|((a, i), row)| {
                    let r: Map<String, Value> = row.iter().map(|(k, x)| (k.to_string(), Value::String(x.to_string()))).collect();
                    json!({"alpha": a.to_string(), "i": i, "row": r})
                })
                .collect();
            json!({ "table": rows })
        }
    }
}

fn generator_from_json(group: &GroupData, v: &Value) -> Result<AutoGen> {
    let o = object(v, "generator")?;
    if o.len() != 1 {
        return Err(Error::Config(format!("generator: expected one tagged field, found {v}")));
    }
    let (tag, x) = o.iter().next().expect("one field");
    let g = match tag.as_str() {
        "scale" => AutoGen::Scale(scalar_of(x, "scale")?),
        "loop_shift" => AutoGen::LoopShift(HomToInt::new(
            array(x, "loop_shift")?.iter().map(|n| int_of(n, "loop_shift")).collect::<Result<_>>()?,
        )),
        "char_twist" => {
            let t = object(x, "char_twist")?;
            let chi = t.get("chi").ok_or_else(|| Error::Config("char_twist: missing chi".into()))?;
            let chi = array(chi, "chi")?.iter().map(|c| scalar_of(c, "chi")).collect::<Result<_>>()?;
            let r = t.get("r").map(|r| scalar_of(r, "r")).transpose()?.unwrap_or_else(Scalar::one);
            AutoGen::CharTwist { chi: Character::new(chi), r }
        }
        "z_flip" => AutoGen::ZFlip(int_of(x, "z_flip")?),
        "loop_scale" => AutoGen::LoopScale(scalar_of(x, "loop_scale")?),
        "m_shear" => AutoGen::MShear(shear_from_json(x)?),
        "inner" => AutoGen::Inner(parse_element(group, &str_of(x, "inner")?)?),
        _ => return Err(Error::Config(format!("unknown generator {tag}"))),
    };
    g.validate(group)?;
    Ok(g)
}

/// An ordered list of tagged generators; the first acts first.
pub fn word_from_json(group: &GroupData, v: &Value) -> Result<Vec<AutoGen>> {
    array(v, "word")?.iter().map(|g| generator_from_json(group, g)).collect()
}

pub fn generator_to_json(g: &AutoGen) -> Value {
    match g {
        AutoGen::Scale(a) => json!({"scale": a.to_string()}),
        AutoGen::LoopShift(phi) => json!({"loop_shift": phi.images}),
        AutoGen::CharTwist { chi, r } => json!({"char_twist": {
            "chi": chi.images.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "r": r.to_string(),
        }}),
        AutoGen::ZFlip(e) => json!({"z_flip": e}),
        AutoGen::LoopScale(b) => json!({"loop_scale": b.to_string()}),
        AutoGen::MShear(e) => json!({"m_shear": shear_to_json(e)}),
        AutoGen::Inner(x) => json!({"inner": x.to_string()}),
    }
}

pub fn factor_to_json(f: &FactoredAutomorphism) -> Value {
    let p = &f.params;
    json!({
        "a": p.a.to_string(),
        "phi": p.phi.images,
        "chi": p.chi.images.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "r": p.r.to_string(),
        "eps": p.eps,
        "b": p.b.to_string(),
        "e": shear_to_json(&f.e),
        "inner": f.inner.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "residual": "0",
    })
}

/// `{"classes": {k: c}, "f": {key: c}}` or `{"table": [[key, key, c], ...]}`; a
/// table is read against `window`.
pub fn cocycle_from_json(group: &GroupData, window: &Window, v: &Value) -> Result<Cocycle> {
    let o = object(v, "cocycle")?;
    if let Some(t) = o.get("table") {
        if o.len() != 1 {
            return Err(Error::Config("cocycle: a table cocycle has no other fields".into()));
        }
        let mut entries = Vec::new();
        for row in array(t, "table")? {
            let row = array(row, "table row")?;
            if row.len() != 3 {
                return Err(Error::Config("table row: expected [key, key, scalar]".into()));
            }
            let x = parse_key(group, &str_of(&row[0], "key")?)?;
            let y = parse_key(group, &str_of(&row[1], "key")?)?;
            for k in [&x, &y] {
                if !window.contains(group, k) {
                    return Err(Error::WindowTooSmall(format!("table key {k} lies outside the window")));
                }
            }
            entries.push((x, y, scalar_of(&row[2], "value")?));
        }
        return Cocycle::table(*window, entries);
    }
    for k in o.keys() {
        if k != "classes" && k != "f" {
            return Err(Error::Config(format!("cocycle: unknown field {k}")));
        }
    }
    let mut classes = BTreeMap::new();
    if let Some(c) = o.get("classes") {
        for (k, x) in object(c, "classes")? {
            let k: i64 = k.parse().map_err(|_| Error::Config(format!("classes: {k} is not an integer")))?;
            classes.insert(k, scalar_of(x, "classes")?);
        }
    }
    let mut f = Vec::new();
    if let Some(t) = o.get("f") {
        for (k, x) in object(t, "f")? {
            f.push((parse_key(group, k)?, scalar_of(x, "f")?));
        }
    }
    Ok(Cocycle::structured(classes, LinearFunctional::table(f)))
}

pub fn classes_to_json(classes: &BTreeMap<i64, Scalar>) -> Value {
    Value::Object(classes.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect())
}

/// `{"classes", "residual"}` plus `"f"` on the window keys when asked.
pub fn reduction_to_json(r: &Reduction, group: &GroupData, window: &Window, with_f: bool) -> Value {
    let mut out = Map::new();
    if with_f {
        let f = r.f.restrict(&window.keys(group));
        out.insert(
            "f".into(),
            Value::Object(f.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect()),
        );
    }
    out.insert("classes".into(), classes_to_json(&r.classes));
    let residual = if r.residual.is_zero() {
        Value::String("0".into())
    } else {
        Value::Array(
            r.residual
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "pair": [e.x.to_string(), e.y.to_string()],
                        "value": e.value.to_string(),
                        "component": e.component(),
                        "boundary": e.on_boundary,
                    })
                })
                .collect(),
        )
    };
    out.insert("residual".into(), residual);
    if let Some((p, bad)) = &r.cross_check {
        if !bad.is_empty() {
            out.insert("cross_check".into(), json!({"pivot": p.to_string(), "disagree": bad}));
        }
    }
    Value::Object(out)
}
