//! Brute-force certification on small instances: every functor and every Chu
//! transform between probe objects is enumerated, and universal properties
//! are checked by counting mediating morphisms.

mod checks;
mod mutants;
mod universal;

use std::sync::Arc;

pub use checks::{
    check_adjunction_tables, check_generating, check_graph_adjunction, check_graph_order,
    check_lift_initiality, GeneratingCertificate,
};
pub use mutants::{run_mutant, Mutant};
pub use universal::{check_chu_universal, check_universal, CatShape, ChuShape};

use crate::caps::FUNCTOR_SEARCH_CAP;
use crate::error::{Error, Result};
use crate::qcat::{same_quantaloid, QCategory, QFunctor};
use crate::qchu::{ChuObject, ChuTransform};
use crate::quantaloid::Quantaloid;

/// Largest probe category, in objects.
pub const MAX_PROBE_OBJECTS: usize = 4;

/// Probe objects over one quantaloid.
#[derive(Clone, Debug)]
pub struct TestSuite {
    pub quantaloid: Arc<Quantaloid>,
    pub categories: Vec<(String, Arc<QCategory>)>,
    pub chu: Vec<(String, ChuObject)>,
}

impl TestSuite {
    pub fn new(
        quantaloid: Arc<Quantaloid>,
        categories: Vec<(String, Arc<QCategory>)>,
        chu: Vec<(String, ChuObject)>,
    ) -> Result<Self> {
        for (name, c) in &categories {
            if !same_quantaloid(c.quantaloid(), &quantaloid) {
                return Err(Error::QuantaloidMismatch);
            }
            if c.len() > MAX_PROBE_OBJECTS {
                return Err(Error::SizeCap {
                    what: format!("probe category {name}"),
                    needed: c.len(),
                    cap: MAX_PROBE_OBJECTS,
                });
            }
            c.validate()?;
        }
        for (name, phi) in &chu {
            if !same_quantaloid(phi.source().quantaloid(), &quantaloid) {
                return Err(Error::QuantaloidMismatch);
            }
            let size = phi.source().len().max(phi.target().len());
            if size > MAX_PROBE_OBJECTS {
                return Err(Error::SizeCap {
                    what: format!("probe Chu object {name}"),
                    needed: size,
                    cap: MAX_PROBE_OBJECTS,
                });
            }
            phi.validate()?;
        }
        Ok(TestSuite {
            quantaloid,
            categories,
            chu,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub property: String,
    pub probes: usize,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: String,
    /// `None` when the construction itself is not a (co)cone.
    pub probe: Option<String>,
    /// Legs of the offending (co)cone, one `source->target` list per leg.
    pub cone: Vec<Vec<String>>,
    pub mediators: usize,
    pub reason: String,
}

pub type Verdict = std::result::Result<Certificate, Counterexample>;

/// Every functor `X -> Y`, in lexicographic order of the object maps.
pub fn enumerate_functors(x: &Arc<QCategory>, y: &Arc<QCategory>) -> Result<Vec<QFunctor>> {
    if !same_quantaloid(x.quantaloid(), y.quantaloid()) {
        return Err(Error::QuantaloidMismatch);
    }
    let q = x.quantaloid();
    let candidates: Vec<Vec<usize>> = x
        .objects()
        .map(|i| {
            y.objects()
                .filter(|&c| y.extent(c) == x.extent(i))
                .collect()
        })
        .collect();
    let fits = |map: &[usize], i: usize, c: usize| {
        let ei = x.extent(i);
        q.leq(ei, ei, x.hom(i, i), y.hom(c, c))
            && (0..i).all(|j| {
                let ej = x.extent(j);
                q.leq(ej, ei, x.hom(j, i), y.hom(map[j], c))
                    && q.leq(ei, ej, x.hom(i, j), y.hom(c, map[j]))
            })
    };

    let n = x.len();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(n);
    let mut pos = vec![0usize; n + 1];
    let mut visited = 0usize;
    let mut depth = 0;
    loop {
        if depth == n {
            out.push(QFunctor::unchecked(x.clone(), y.clone(), map.clone())?);
            if depth == 0 {
                break;
            }
            depth -= 1;
            map.pop();
            continue;
        }
        let mut placed = false;
        while pos[depth] < candidates[depth].len() {
            let c = candidates[depth][pos[depth]];
            pos[depth] += 1;
            visited += 1;
            if visited > FUNCTOR_SEARCH_CAP {
                return Err(Error::SizeCap {
                    what: "functor search".into(),
                    needed: visited,
                    cap: FUNCTOR_SEARCH_CAP,
                });
            }
            if fits(&map, depth, c) {
                map.push(c);
                depth += 1;
                pos[depth] = 0;
                placed = true;
                break;
            }
        }
        if !placed {
            pos[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            map.pop();
        }
    }
    Ok(out)
}

/// Every Chu transform `φ -> ψ`.
pub fn enumerate_transforms(phi: &ChuObject, psi: &ChuObject) -> Result<Vec<ChuTransform>> {
    let fwd = enumerate_functors(phi.source(), psi.source())?;
    let bwd = enumerate_functors(psi.target(), phi.target())?;
    let mut out = Vec::new();
    for f in &fwd {
        for g in &bwd {
            let t = ChuTransform::unchecked(phi.clone(), psi.clone(), f.clone(), g.clone())?;
            if t.satisfies_chu() {
                out.push(t);
            }
        }
    }
    Ok(out)
}

pub(crate) fn render_functor(f: &QFunctor) -> Vec<String> {
    f.source()
        .objects()
        .map(|x| format!("{}->{}", f.source().name(x), f.target().name(f.apply(x))))
        .collect()
}

pub(crate) fn render_transform(t: &ChuTransform) -> Vec<String> {
    let mut out: Vec<String> = render_functor(t.fwd());
    out.extend(render_functor(t.bwd()).into_iter().map(|s| format!("~{s}")));
    out
}

/// All tuples picking one entry from each list.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let total = lists
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    if total > FUNCTOR_SEARCH_CAP {
        return Err(Error::SizeCap {
            what: "cone enumeration".into(),
            needed: total,
            cap: FUNCTOR_SEARCH_CAP,
        });
    }
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |item| {
                    let mut next = prefix.clone();
                    next.push(item.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}
