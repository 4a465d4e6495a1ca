use super::*;

const MINIMAL: &str = r#"{
  "quantaloid": {"builtin": "two"},
  "categories": {
    "C": {"objects": [{"name": "a"}, {"name": "b"}], "hom": [["a", "b", "1"]]}
  }
}"#;

#[test]
fn minimal_bundle() {
    let b = parse_bundle(MINIMAL).unwrap();
    let c = b.category("C").unwrap();
    assert_eq!(c.names(), ["a", "b"]);
    assert_eq!(c.hom_name(0, 1), "1");
    assert_eq!(c.hom_name(1, 0), "0");
    assert_eq!(c.hom_name(1, 1), "1");
}

#[test]
fn dangling_functor_target() {
    let text = r#"{
      "quantaloid": "two",
      "categories": {"C": {"objects": ["a"]}},
      "functors": {"f": {"from": "C", "to": "D", "map": {"a": "a"}}}
    }"#;
    let err = parse_bundle(text).unwrap_err();
    assert_eq!(
        err,
        Error::UnresolvedReference {
            path: "functors.f.to".into(),
            name: "D".into()
        }
    );
}

#[test]
fn hom_value_outside_lattice() {
    let text = r#"{
      "quantaloid": {"builtin": "chain", "n": 3},
      "categories": {"M": {"objects": ["a", "b"], "hom": [["a", "b", 7]]}}
    }"#;
    let err = parse_bundle(text).unwrap_err();
    assert_eq!(err.kind(), "ValidationError");
    let Error::Validation { path, source } = &err else {
        unreachable!()
    };
    assert_eq!(path, "categories.M.hom[0][2]");
    assert_eq!(source.kind(), "UnknownElement");
}

#[test]
fn invalid_category_reports_its_path() {
    let text = r#"{
      "quantaloid": {"builtin": "chain", "n": 3},
      "categories": {"M": {"objects": ["a", "b", "c"],
        "hom": [["a", "b", 0], ["b", "c", 0]]}}
    }"#;
    let err = parse_bundle(text).unwrap_err();
    let Error::Validation { path, source } = &err else {
        panic!("{err:?}")
    };
    assert_eq!(path, "categories.M");
    assert_eq!(source.kind(), "TransitivityViolation");
}

#[test]
fn syntax_error_has_position() {
    let err = parse_bundle("{\n  \"quantaloid\": \"two\",\n  oops\n}").unwrap_err();
    let Error::Syntax { line, .. } = err else {
        panic!("{err:?}")
    };
    assert_eq!(line, 3);
}

#[test]
fn unknown_fields_are_rejected() {
    let err = parse_bundle(r#"{"quantaloid": "two", "categorys": {}}"#).unwrap_err();
    assert_eq!(err.kind(), "SchemaError");
}

#[test]
fn explicit_quantaloid_round_trips() {
    let q = Quantaloid::chain(2).unwrap();
    let text = emit_report(&json_bundle(report::quantaloid(&q)));
    let b = parse_bundle(&text).unwrap();
    assert_eq!(*b.quantaloid, q);
    assert_eq!(b.spec, QuantaloidSpec::Explicit);
    assert_eq!(
        emit_bundle(&parse_bundle(&emit_bundle(&b)).unwrap()),
        emit_bundle(&b)
    );
}

#[test]
fn incomplete_composition_is_reported() {
    let q = Quantaloid::two();
    let mut v = report::quantaloid(&q);
    v["compose"]["(*->*)*(*->*)"].as_array_mut().unwrap().pop();
    let err = parse_bundle(&emit_report(&json_bundle(v))).unwrap_err();
    assert_eq!(err.root().kind(), "IncompleteComposition");
}

fn json_bundle(q: serde_json::Value) -> serde_json::Value {
    serde_json::json!({ "quantaloid": q })
}

const RICH: &str = r#"{
  "quantaloid": {"builtin": "two"},
  "categories": {
    "E": {"objects": []},
    "P": {"objects": ["p"]},
    "U": {"objects": ["u", "v"]}
  },
  "functors": {
    "toU": {"from": "P", "to": "U", "map": {"p": "u"}}
  },
  "distributors": {
    "phi": {"from": "P", "to": "U", "value": [["p", "u", 1], ["p", "v", 1]]},
    "psi": {"from": "P", "to": "P", "value": [["p", "p", 1]]},
    "empty": {"from": "E", "to": "U"}
  },
  "transforms": {
    "t1": {"from": "phi", "to": "psi", "fwd": {"p": "p"}, "bwd": {"p": "u"}},
    "t2": {"from": "phi", "to": "psi", "fwd": {"p": "p"}, "bwd": {"p": "v"}}
  },
  "diagrams": {
    "D": {"objects": ["phi", "psi"], "arrows": ["t1"]}
  }
}"#;

#[test]
fn rich_bundle_round_trips() {
    let b = parse_bundle(RICH).unwrap();
    assert_eq!(b.diagram("D").unwrap().diagram.arrows[0].to, 1);
    let once = emit_bundle(&b);
    let again = parse_bundle(&once).unwrap();
    assert_eq!(again, b);
    assert_eq!(emit_bundle(&again), once);
}

#[test]
fn transform_violating_chu_condition() {
    let text = RICH.replace(r#""bwd": {"p": "v"}"#, r#""bwd": {"p": "v"}, "fwd2": 1"#);
    assert_eq!(parse_bundle(&text).unwrap_err().kind(), "SchemaError");
    let text = RICH.replace(r#"["p", "v", 1]"#, r#"["p", "v", 0]"#);
    let err = parse_bundle(&text).unwrap_err();
    assert_eq!(err.root().kind(), "ChuViolation");
}

#[test]
fn error_report_is_machine_readable() {
    let err = parse_bundle("[").unwrap_err();
    let v = report::error(&err);
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert_eq!(v["error"]["line"], 1);
}

#[test]
fn short_specs() {
    assert_eq!(
        QuantaloidSpec::parse_short("builtin:two").unwrap(),
        QuantaloidSpec::Two
    );
    assert_eq!(
        QuantaloidSpec::parse_short("diagonal:chain:3").unwrap(),
        QuantaloidSpec::Diagonal(Box::new(QuantaloidSpec::Chain(3)))
    );
    assert!(QuantaloidSpec::parse_short("chain:x").is_err());
}
