use serde_json::{json, Map, Value};

use super::{report, DefinitionBundle, QuantaloidSpec};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn emit_report(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn spec_json(spec: &QuantaloidSpec, b: &DefinitionBundle) -> Value {
    match spec {
        QuantaloidSpec::Two => json!({ "builtin": "two" }),
        QuantaloidSpec::Chain(n) => json!({ "builtin": "chain", "n": n }),
        QuantaloidSpec::Diagonal(inner) => {
            json!({ "builtin": "diagonal", "of": spec_json(inner, b) })
        }
        QuantaloidSpec::Explicit => report::quantaloid(&b.quantaloid),
    }
}

/// Canonical bundle text: sparse tables, inline transform maps.
pub fn emit_bundle(b: &DefinitionBundle) -> String {
    let mut root = Map::new();
    root.insert("format".into(), json!(b.format));
    root.insert("quantaloid".into(), spec_json(&b.spec, b));
    let section = |m: Map<String, Value>| Value::Object(m);
    if !b.categories.is_empty() {
        root.insert(
            "categories".into(),
            section(
                b.categories
                    .iter()
                    .map(|(n, c)| (n.clone(), report::category_sparse(c)))
                    .collect(),
            ),
        );
    }
    if !b.functors.is_empty() {
        root.insert(
            "functors".into(),
            section(
                b.functors
                    .iter()
                    .map(|(n, f)| {
                        let v =
                            json!({ "from": f.from, "to": f.to, "map": report::map(&f.functor) });
                        (n.clone(), v)
                    })
                    .collect(),
            ),
        );
    }
    if !b.distributors.is_empty() {
        root.insert(
            "distributors".into(),
            section(
                b.distributors
                    .iter()
                    .map(|(n, d)| {
                        let mut m = Map::new();
                        m.insert("from".into(), json!(d.from));
                        m.insert("to".into(), json!(d.to));
                        let value = report::distributor_sparse(&d.distributor);
                        if !value.is_empty() {
                            m.insert("value".into(), Value::Array(value));
                        }
                        (n.clone(), Value::Object(m))
                    })
                    .collect(),
            ),
        );
    }
    if !b.transforms.is_empty() {
        root.insert(
            "transforms".into(),
            section(
                b.transforms
                    .iter()
                    .map(|(n, t)| {
                        let v = json!({
                            "from": t.from,
                            "to": t.to,
                            "fwd": report::map(t.transform.fwd()),
                            "bwd": report::map(t.transform.bwd()),
                        });
                        (n.clone(), v)
                    })
                    .collect(),
            ),
        );
    }
    if !b.diagrams.is_empty() {
        root.insert(
            "diagrams".into(),
            section(
                b.diagrams
                    .iter()
                    .map(|(n, d)| {
                        (
                            n.clone(),
                            json!({ "objects": d.objects, "arrows": d.arrows }),
                        )
                    })
                    .collect(),
            ),
        );
    }
    emit_report(&Value::Object(root))
}
