//! Browser demo over truncated distance quantales `chain(n)`. Every entry
//! point takes and returns JSON text so the page needs no glue beyond
//! `JSON.parse`.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use quantikit::qcat::{self, QCategory, QFunctor};
use quantikit::quantaloid::{Diagonal, Quantaloid};

/// Largest `n` the page offers; keeps the composition table small.
pub const MAX_N: usize = 8;

fn chain(n: usize) -> Result<Arc<Quantaloid>, String> {
    if n == 0 || n > MAX_N {
        return Err(format!("n must be between 1 and {MAX_N}"));
    }
    Quantaloid::chain(n)
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

fn matrix(text: &str) -> Result<Vec<Vec<usize>>, String> {
    let rows: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| format!("not a matrix: {e}"))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square".into());
    }
    Ok(rows)
}

/// A `chain(n)`-category on points `prefix0, prefix1, ...`. Entries above
/// `n` are clamped to `n`, which stands for infinity.
fn space(q: &Arc<Quantaloid>, prefix: &str, rows: &[Vec<usize>]) -> Result<Arc<QCategory>, String> {
    let n = q.hom(0, 0).len() - 1;
    let names = (0..rows.len()).map(|i| format!("{prefix}{i}")).collect();
    QCategory::from_fn(q.clone(), names, vec![0; rows.len()], |x, y| {
        rows[x][y].min(n)
    })
    .map(Arc::new)
    .map_err(|e| e.to_string())
}

fn distances(c: &QCategory) -> Vec<Vec<usize>> {
    c.objects()
        .map(|x| c.objects().map(|y| c.hom(x, y)).collect())
        .collect()
}

/// Homs and composition of the diagonal quantaloid of `chain(n)`, in plain
/// numbers: object `u` is the self-distance `u`, a diagonal `u ⇸ v` is a
/// distance `s >= max(u, v)`.
pub fn diagonal_tables(n: usize) -> Result<Value, String> {
    let base = chain(n)?;
    let d = Diagonal::new(&base).map_err(|e| e.to_string())?;
    let q = &d.quantaloid;
    let num = |o: usize| d.objects[o].elem;
    let mut homs = Vec::new();
    let mut compose = Vec::new();
    for u in q.objects() {
        for v in q.objects() {
            let mut members: Vec<usize> =
                q.hom(u, v).elements().map(|e| d.carrier(u, v, e)).collect();
            members.sort_unstable();
            homs.push(json!({ "from": num(u), "to": num(v), "elements": members }));
            for w in q.objects() {
                for s in q.hom(u, v).elements() {
                    for t in q.hom(v, w).elements() {
                        let r = d.carrier(u, w, q.compose(u, v, w, t, s));
                        compose.push([
                            num(u),
                            num(v),
                            num(w),
                            d.carrier(u, v, s),
                            d.carrier(v, w, t),
                            r,
                        ]);
                    }
                }
            }
        }
    }
    Ok(
        json!({ "n": n, "objects": q.objects().map(num).collect::<Vec<_>>(), "homs": homs, "compose": compose }),
    )
}

/// Product of two distance spaces: the distance between pairs is the larger
/// of the two coordinate distances.
pub fn sup_product(n: usize, left: &str, right: &str) -> Result<Value, String> {
    let q = chain(n)?;
    let a = space(&q, "a", &matrix(left)?).map_err(|e| format!("left: {e}"))?;
    let b = space(&q, "b", &matrix(right)?).map_err(|e| format!("right: {e}"))?;
    let cone = qcat::product(&q, &[a, b]).map_err(|e| e.to_string())?;
    let p = &cone.apex;
    let pairs: Vec<[usize; 2]> = p
        .objects()
        .map(|x| [cone.legs[0].apply(x), cone.legs[1].apply(x)])
        .collect();
    Ok(json!({ "points": pairs, "distances": distances(p) }))
}

/// Identifies the given pairs of points and returns the quotient space,
/// whose distances are the cheapest chains hopping between identified
/// points.
pub fn quotient(n: usize, space_json: &str, glue_json: &str) -> Result<Value, String> {
    let q = chain(n)?;
    let x = space(&q, "x", &matrix(space_json)?)?;
    let glue: Vec<[usize; 2]> =
        serde_json::from_str(glue_json).map_err(|e| format!("not a list of pairs: {e}"))?;
    if let Some(p) = glue.iter().find(|p| p.iter().any(|&i| i >= x.len())) {
        return Err(format!("pair {p:?} names a missing point"));
    }
    let names = (0..glue.len()).map(|i| format!("k{i}")).collect();
    let k = Arc::new(
        qcat::free_structure(
            qcat::FreeMode::Discrete,
            q.clone(),
            names,
            vec![0; glue.len()],
        )
        .map_err(|e| e.to_string())?,
    );
    let f = QFunctor::new(k.clone(), x.clone(), glue.iter().map(|p| p[0]).collect())
        .map_err(|e| e.to_string())?;
    let g = QFunctor::new(k, x.clone(), glue.iter().map(|p| p[1]).collect())
        .map_err(|e| e.to_string())?;
    let co = qcat::coequalizer(&f, &g).map_err(|e| e.to_string())?;
    let class_of = co.legs[0].map().to_vec();
    let classes: Vec<Vec<usize>> = co
        .nadir
        .objects()
        .map(|c| x.objects().filter(|&i| class_of[i] == c).collect())
        .collect();
    Ok(json!({ "classes": classes, "distances": distances(&co.nadir) }))
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen(js_name = diagonalTables)]
pub fn diagonal_tables_js(n: usize) -> String {
    respond(diagonal_tables(n))
}

#[wasm_bindgen(js_name = supProduct)]
pub fn sup_product_js(n: usize, left: &str, right: &str) -> String {
    respond(sup_product(n, left, right))
}

#[wasm_bindgen(js_name = quotient)]
pub fn quotient_js(n: usize, space: &str, glue: &str) -> String {
    respond(quotient(n, space, glue))
}
