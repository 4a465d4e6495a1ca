use quantikit_web::{diagonal_tables, diagonal_tables_js, quotient, sup_product};

#[test]
fn diagonal_of_chain_matches_closed_form() {
    let v = diagonal_tables(3).unwrap();
    for h in v["homs"].as_array().unwrap() {
        let (u, w) = (h["from"].as_u64().unwrap(), h["to"].as_u64().unwrap());
        let want: Vec<u64> = (u.max(w)..=3).collect();
        let got: Vec<u64> = h["elements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_u64().unwrap())
            .collect();
        assert_eq!(got, want);
    }
    for row in v["compose"].as_array().unwrap() {
        let r: Vec<u64> = row
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_u64().unwrap())
            .collect();
        let (v_, s, t, out) = (r[1], r[3], r[4], r[5]);
        assert_eq!(out, (s + t - v_).min(3));
    }
}

#[test]
fn product_takes_the_larger_distance() {
    let v = sup_product(5, "[[0,1],[1,0]]", "[[0,3],[2,0]]").unwrap();
    let points = v["points"].as_array().unwrap();
    let d = v["distances"].as_array().unwrap();
    let left = [[0, 1], [1, 0]];
    let right = [[0, 3], [2, 0]];
    for (i, p) in points.iter().enumerate() {
        for (j, r) in points.iter().enumerate() {
            let (a, b) = (
                p[0].as_u64().unwrap() as usize,
                p[1].as_u64().unwrap() as usize,
            );
            let (c, e) = (
                r[0].as_u64().unwrap() as usize,
                r[1].as_u64().unwrap() as usize,
            );
            let want = left[a][c].max(right[b][e]);
            assert_eq!(d[i][j].as_u64().unwrap() as usize, want);
        }
    }
}

#[test]
fn triangle_violations_are_reported() {
    let err = sup_product(5, "[[0,1,4],[1,0,1],[4,1,0]]", "[[0]]").unwrap_err();
    assert!(err.starts_with("left:"), "{err}");
}

#[test]
fn gluing_the_ends_of_a_path() {
    // a path 0 - 1 - 2 with unit steps; gluing 0 and 2 leaves two classes
    let v = quotient(5, "[[0,1,2],[1,0,1],[2,1,0]]", "[[0,2]]").unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(v["distances"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn out_of_range_input_is_an_error_object() {
    let out: serde_json::Value = serde_json::from_str(&diagonal_tables_js(99)).unwrap();
    assert!(out["error"].is_string());
}
