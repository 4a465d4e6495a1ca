//! JSON views of results. Object keys are emitted sorted; arrays follow the
//! internal (deterministic) object order.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::oracle::{Certificate, Counterexample, GeneratingCertificate, Verdict};
use crate::qcat::{QCategory, QFunctor};
use crate::qchu::{ChuTransform, Lift, Separation};
use crate::qdist::QDistributor;
use crate::quantaloid::Quantaloid;

/// Explicit tables, in the same shape the bundle parser accepts.
pub fn quantaloid(q: &Quantaloid) -> Value {
    let names = q.object_names();
    let mut homs = Map::new();
    let mut compose = Map::new();
    let mut identities = Map::new();
    for a in q.objects() {
        identities.insert(names[a].clone(), json!(q.hom(a, a).name(q.identity(a))));
        for b in q.objects() {
            let h = q.hom(a, b);
            let leq: Vec<Value> = h
                .covers()
                .into_iter()
                .map(|(x, y)| json!([h.name(x), h.name(y)]))
                .collect();
            homs.insert(
                format!("{}->{}", names[a], names[b]),
                json!({ "elements": h.names(), "leq": leq }),
            );
            for c in q.objects() {
                let (hf, hg, hgf) = (q.hom(a, b), q.hom(b, c), q.hom(a, c));
                let rows: Vec<Value> = hg
                    .elements()
                    .flat_map(|g| {
                        hf.elements().map(move |f| {
                            json!([hg.name(g), hf.name(f), hgf.name(q.compose(a, b, c, g, f))])
                        })
                    })
                    .collect();
                compose.insert(
                    format!("({}->{})*({}->{})", names[b], names[c], names[a], names[b]),
                    Value::Array(rows),
                );
            }
        }
    }
    json!({
        "objects": names,
        "homs": homs,
        "identities": identities,
        "compose": compose,
    })
}

fn objects(c: &QCategory) -> Value {
    let q = c.quantaloid();
    c.objects()
        .map(|x| json!({ "name": c.name(x), "extent": q.object_name(c.extent(x)) }))
        .collect()
}

/// Objects and the full hom table.
pub fn category(c: &QCategory) -> Value {
    let hom: Vec<Value> = c
        .objects()
        .flat_map(|x| {
            c.objects()
                .map(move |y| json!([c.name(x), c.name(y), c.hom_name(x, y)]))
        })
        .collect();
    json!({ "objects": objects(c), "hom": hom })
}

/// Only entries that differ from the identity-on-diagonal, bottom-elsewhere
/// default.
pub(crate) fn category_sparse(c: &QCategory) -> Value {
    let q = c.quantaloid();
    let hom: Vec<Value> = c
        .objects()
        .flat_map(|x| c.objects().map(move |y| (x, y)))
        .filter(|&(x, y)| {
            let (ex, ey) = (c.extent(x), c.extent(y));
            let default = if x == y {
                q.identity(ex)
            } else {
                q.bottom(ex, ey)
            };
            c.hom(x, y) != default
        })
        .map(|(x, y)| json!([c.name(x), c.name(y), c.hom_name(x, y)]))
        .collect();
    let mut m = Map::new();
    m.insert("objects".into(), objects(c));
    if !hom.is_empty() {
        m.insert("hom".into(), Value::Array(hom));
    }
    Value::Object(m)
}

pub fn map(f: &QFunctor) -> Value {
    let (s, t) = (f.source(), f.target());
    Value::Object(
        s.objects()
            .map(|x| (s.name(x).to_string(), json!(t.name(f.apply(x)))))
            .collect(),
    )
}

pub fn functor(f: &QFunctor) -> Value {
    json!({ "map": map(f) })
}

fn entries(d: &QDistributor, keep: impl Fn(usize, usize) -> bool) -> Vec<Value> {
    let (x, y) = (d.source(), d.target());
    x.objects()
        .flat_map(|i| y.objects().map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .map(|(i, j)| json!([x.name(i), y.name(j), d.value_name(i, j)]))
        .collect()
}

/// Full value table.
pub fn distributor(d: &QDistributor) -> Value {
    json!({ "value": entries(d, |_, _| true) })
}

pub(crate) fn distributor_sparse(d: &QDistributor) -> Vec<Value> {
    let q = d.source().quantaloid();
    let (x, y) = (d.source(), d.target());
    entries(d, |i, j| {
        d.value(i, j) != q.bottom(x.extent(i), y.extent(j))
    })
}

/// A Chu object with both categories spelled out.
pub fn chu_object(d: &QDistributor) -> Value {
    json!({
        "domain": category(d.source()),
        "codomain": category(d.target()),
        "value": entries(d, |_, _| true),
    })
}

pub fn transform(t: &ChuTransform) -> Value {
    json!({ "fwd": map(t.fwd()), "bwd": map(t.bwd()) })
}

pub fn cone(apex: &QCategory, legs: &[QFunctor]) -> Value {
    json!({ "apex": category(apex), "legs": legs.iter().map(map).collect::<Vec<_>>() })
}

pub fn chu_cone(apex: &QDistributor, legs: &[ChuTransform]) -> Value {
    json!({ "apex": chu_object(apex), "legs": legs.iter().map(transform).collect::<Vec<_>>() })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "status": "certified",
        "property": c.property,
        "probes": c.probes,
        "checked": c.checked,
    })
}

pub fn counterexample(c: &Counterexample) -> Value {
    json!({
        "status": "counterexample",
        "property": c.property,
        "probe": c.probe,
        "cone": c.cone,
        "mediators": c.mediators,
        "reason": c.reason,
    })
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Ok(c) => certificate(c),
        Err(c) => counterexample(c),
    }
}

pub fn generating(c: &GeneratingCertificate) -> Value {
    json!({
        "status": "certified",
        "property": "generating",
        "pairs": c.pairs,
        "cases": { "1": c.cases[0], "2": c.cases[1], "3": c.cases[2] },
    })
}

pub fn separation(s: &Separation) -> Value {
    json!({
        "case": s.case,
        "generator": chu_object(&s.generator),
        "morphism": transform(&s.morphism),
    })
}

pub fn lift(l: &Lift) -> Value {
    let x = l.object.source();
    let q = x.quantaloid();
    let pulled: Vec<Vec<Value>> = l
        .report
        .pulled
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    json!({
                        "extent": q.object_name(p.extent),
                        "components": x.objects().map(|i| {
                            q.hom(x.extent(i), p.extent).name(p.components[i]).to_string()
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    json!({
        "object": chu_object(&l.object),
        "cone": l.cone.iter().map(transform).collect::<Vec<_>>(),
        "debug": {
            "delta": l.report.delta,
            "pulled": pulled,
            "transpose": l.report.transpose,
            "presheaves": l.report.presheaf_count,
        },
    })
}

/// Machine-readable error object.
pub fn error(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(e.kind()));
    m.insert("message".into(), json!(e.to_string()));
    match e {
        Error::Validation { path, source } => {
            m.insert("path".into(), json!(path));
            m.insert("cause".into(), json!(source.root().kind()));
        }
        Error::UnresolvedReference { path, name } => {
            m.insert("path".into(), json!(path));
            m.insert("name".into(), json!(name));
        }
        Error::Schema { path, .. } => {
            m.insert("path".into(), json!(path));
        }
        Error::Syntax { line, column, .. } => {
            m.insert("line".into(), json!(line));
            m.insert("column".into(), json!(column));
        }
        _ => {}
    }
    json!({ "error": m })
}
