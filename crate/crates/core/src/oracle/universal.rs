use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::{
    cartesian, enumerate_functors, enumerate_transforms, render_functor, render_transform,
    Certificate, Counterexample, TestSuite, Verdict,
};
use crate::error::Result;
use crate::qcat::{QCategory, QFunctor};
use crate::qchu::{same_dist, ChuObject, ChuTransform};
use crate::qdist::same_cat;

/// The diagram a QCat construction claims to be a limit or colimit of.
#[derive(Clone, Copy, Debug)]
pub enum CatShape<'a> {
    Product(&'a [Arc<QCategory>]),
    Coproduct(&'a [Arc<QCategory>]),
    Equalizer(&'a QFunctor, &'a QFunctor),
    Coequalizer(&'a QFunctor, &'a QFunctor),
}

impl CatShape<'_> {
    fn name(&self) -> &'static str {
        match self {
            CatShape::Product(_) => "product",
            CatShape::Coproduct(_) => "coproduct",
            CatShape::Equalizer(..) => "equalizer",
            CatShape::Coequalizer(..) => "coequalizer",
        }
    }

    fn is_limit(&self) -> bool {
        matches!(self, CatShape::Product(_) | CatShape::Equalizer(..))
    }

    /// Objects the legs run to (limits) or from (colimits).
    fn vertices(&self) -> Vec<Arc<QCategory>> {
        match *self {
            CatShape::Product(f) | CatShape::Coproduct(f) => f.to_vec(),
            CatShape::Equalizer(f, _) => vec![f.source().clone()],
            CatShape::Coequalizer(f, _) => vec![f.target().clone()],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ChuShape<'a> {
    Product(&'a [ChuObject]),
    Coproduct(&'a [ChuObject]),
    Equalizer(&'a ChuTransform, &'a ChuTransform),
    Coequalizer(&'a ChuTransform, &'a ChuTransform),
}

impl ChuShape<'_> {
    fn name(&self) -> &'static str {
        match self {
            ChuShape::Product(_) => "chu-product",
            ChuShape::Coproduct(_) => "chu-coproduct",
            ChuShape::Equalizer(..) => "chu-equalizer",
            ChuShape::Coequalizer(..) => "chu-coequalizer",
        }
    }

    fn is_limit(&self) -> bool {
        matches!(self, ChuShape::Product(_) | ChuShape::Equalizer(..))
    }

    fn vertices(&self) -> Vec<ChuObject> {
        match *self {
            ChuShape::Product(f) | ChuShape::Coproduct(f) => f.to_vec(),
            ChuShape::Equalizer(t, _) => vec![t.from().clone()],
            ChuShape::Coequalizer(t, _) => vec![t.to().clone()],
        }
    }
}

fn broken(property: &str, cone: Vec<Vec<String>>, reason: String) -> Counterexample {
    Counterexample {
        property: property.to_string(),
        probe: None,
        cone,
        mediators: 0,
        reason,
    }
}

/// Every (co)cone must have exactly one mediator; the keys identify a
/// (co)cone by its legs.
fn certify<K: Hash + Eq>(
    property: &str,
    probe: &str,
    cones: Vec<K>,
    mediators: impl IntoIterator<Item = K>,
    render: impl Fn(&K) -> Vec<Vec<String>>,
) -> std::result::Result<usize, Counterexample> {
    let mut counts: HashMap<K, usize> = HashMap::new();
    for k in mediators {
        *counts.entry(k).or_default() += 1;
    }
    for cone in &cones {
        let found = counts.get(cone).copied().unwrap_or(0);
        if found != 1 {
            return Err(Counterexample {
                property: property.to_string(),
                probe: Some(probe.to_string()),
                cone: render(cone),
                mediators: found,
                reason: if found == 0 {
                    "no mediating morphism".into()
                } else {
                    "mediating morphism is not unique".into()
                },
            });
        }
    }
    Ok(cones.len())
}

type MapKey = Vec<Vec<usize>>;

/// Certifies that `legs` out of (or into) `apex` form a limit (colimit) of
/// `shape`, against every probe category of the suite.
pub fn check_universal(
    shape: CatShape<'_>,
    apex: &Arc<QCategory>,
    legs: &[QFunctor],
    suite: &TestSuite,
) -> Result<Verdict> {
    let property = shape.name();
    let vertices = shape.vertices();
    let rendered: Vec<Vec<String>> = legs.iter().map(render_functor).collect();

    if let Err(e) = apex.validate() {
        return Ok(Err(broken(
            property,
            rendered,
            format!("apex is not a category: {e}"),
        )));
    }
    if legs.len() != vertices.len() {
        return Ok(Err(broken(
            property,
            rendered,
            "wrong number of legs".into(),
        )));
    }
    for (i, (leg, v)) in legs.iter().zip(&vertices).enumerate() {
        let typed = if shape.is_limit() {
            same_cat(leg.source(), apex) && same_cat(leg.target(), v)
        } else {
            same_cat(leg.source(), v) && same_cat(leg.target(), apex)
        };
        if !typed {
            return Ok(Err(broken(
                property,
                rendered,
                format!("leg {i} has the wrong type"),
            )));
        }
        if let Err(e) = leg.validate() {
            return Ok(Err(broken(
                property,
                rendered,
                format!("leg {i} is not a functor: {e}"),
            )));
        }
    }
    match shape {
        CatShape::Equalizer(f, g) if f.after(&legs[0])?.map() != g.after(&legs[0])?.map() => {
            return Ok(Err(broken(
                property,
                rendered,
                "leg does not equalize".into(),
            )));
        }
        CatShape::Coequalizer(f, g) if legs[0].after(f)?.map() != legs[0].after(g)?.map() => {
            return Ok(Err(broken(
                property,
                rendered,
                "leg does not coequalize".into(),
            )));
        }
        _ => {}
    }

    let mut checked = 0;
    for (name, probe) in &suite.categories {
        let render = |k: &MapKey| -> Vec<Vec<String>> {
            k.iter()
                .zip(&vertices)
                .map(|(m, v)| {
                    let (s, t) = if shape.is_limit() {
                        (probe, v)
                    } else {
                        (v, probe)
                    };
                    m.iter()
                        .enumerate()
                        .map(|(i, &j)| format!("{}->{}", s.name(i), t.name(j)))
                        .collect()
                })
                .collect()
        };
        let result = if shape.is_limit() {
            let cones: Vec<MapKey> = match shape {
                CatShape::Product(family) => {
                    let lists: Vec<Vec<Vec<usize>>> = family
                        .iter()
                        .map(|x| Ok(maps(enumerate_functors(probe, x)?)))
                        .collect::<Result<_>>()?;
                    cartesian(&lists)?
                }
                CatShape::Equalizer(f, g) => enumerate_functors(probe, f.source())?
                    .into_iter()
                    .filter(|h| compose_maps(f.map(), h.map()) == compose_maps(g.map(), h.map()))
                    .map(|h| vec![h.map().to_vec()])
                    .collect(),
                _ => unreachable!(),
            };
            let mediators = enumerate_functors(probe, apex)?.into_iter().map(|m| {
                legs.iter()
                    .map(|l| compose_maps(l.map(), m.map()))
                    .collect::<MapKey>()
            });
            certify(property, name, cones, mediators, render)
        } else {
            let cones: Vec<MapKey> = match shape {
                CatShape::Coproduct(family) => {
                    let lists: Vec<Vec<Vec<usize>>> = family
                        .iter()
                        .map(|x| Ok(maps(enumerate_functors(x, probe)?)))
                        .collect::<Result<_>>()?;
                    cartesian(&lists)?
                }
                CatShape::Coequalizer(f, g) => enumerate_functors(f.target(), probe)?
                    .into_iter()
                    .filter(|h| compose_maps(h.map(), f.map()) == compose_maps(h.map(), g.map()))
                    .map(|h| vec![h.map().to_vec()])
                    .collect(),
                _ => unreachable!(),
            };
            let mediators = enumerate_functors(apex, probe)?.into_iter().map(|m| {
                legs.iter()
                    .map(|l| compose_maps(m.map(), l.map()))
                    .collect::<MapKey>()
            });
            certify(property, name, cones, mediators, render)
        };
        match result {
            Ok(n) => checked += n,
            Err(c) => return Ok(Err(c)),
        }
    }
    Ok(Ok(Certificate {
        property: property.to_string(),
        probes: suite.categories.len(),
        checked,
    }))
}

fn maps(fs: Vec<QFunctor>) -> Vec<Vec<usize>> {
    fs.into_iter().map(|f| f.map().to_vec()).collect()
}

/// `second o first` on index maps.
fn compose_maps(second: &[usize], first: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| second[x]).collect()
}

type TransformKey = Vec<(Vec<usize>, Vec<usize>)>;

fn key_of(t: &ChuTransform) -> (Vec<usize>, Vec<usize>) {
    (t.fwd().map().to_vec(), t.bwd().map().to_vec())
}

/// Chu counterpart of [`check_universal`], probing with the suite's Chu
/// objects.
pub fn check_chu_universal(
    shape: ChuShape<'_>,
    apex: &ChuObject,
    legs: &[ChuTransform],
    suite: &TestSuite,
) -> Result<Verdict> {
    let property = shape.name();
    let vertices = shape.vertices();
    let rendered: Vec<Vec<String>> = legs.iter().map(render_transform).collect();

    if let Err(e) = apex.validate() {
        return Ok(Err(broken(
            property,
            rendered,
            format!("apex is not a distributor: {e}"),
        )));
    }
    if legs.len() != vertices.len() {
        return Ok(Err(broken(
            property,
            rendered,
            "wrong number of legs".into(),
        )));
    }
    for (i, (leg, v)) in legs.iter().zip(&vertices).enumerate() {
        let typed = if shape.is_limit() {
            same_dist(leg.from(), apex) && same_dist(leg.to(), v)
        } else {
            same_dist(leg.from(), v) && same_dist(leg.to(), apex)
        };
        if !typed {
            return Ok(Err(broken(
                property,
                rendered,
                format!("leg {i} has the wrong type"),
            )));
        }
        if let Err(e) = leg.validate_elementwise() {
            return Ok(Err(broken(
                property,
                rendered,
                format!("leg {i} is not a transform: {e}"),
            )));
        }
    }
    match shape {
        ChuShape::Equalizer(t1, t2) if legs[0].then(t1)? != legs[0].then(t2)? => {
            return Ok(Err(broken(
                property,
                rendered,
                "leg does not equalize".into(),
            )));
        }
        ChuShape::Coequalizer(t1, t2) if t1.then(&legs[0])? != t2.then(&legs[0])? => {
            return Ok(Err(broken(
                property,
                rendered,
                "leg does not coequalize".into(),
            )));
        }
        _ => {}
    }

    let mut checked = 0;
    for (name, probe) in &suite.chu {
        let mut by_key: HashMap<TransformKey, Vec<Vec<String>>> = HashMap::new();
        let result = if shape.is_limit() {
            let cones: Vec<Vec<ChuTransform>> = match shape {
                ChuShape::Product(family) => {
                    let lists: Vec<Vec<ChuTransform>> = family
                        .iter()
                        .map(|phi| enumerate_transforms(probe, phi))
                        .collect::<Result<_>>()?;
                    cartesian(&lists)?
                }
                ChuShape::Equalizer(t1, t2) => enumerate_transforms(probe, t1.from())?
                    .into_iter()
                    .map(|h| Ok((h.then(t1)? == h.then(t2)?).then_some(vec![h])))
                    .filter_map(|r| r.transpose())
                    .collect::<Result<_>>()?,
                _ => unreachable!(),
            };
            let keys = cones_to_keys(cones, &mut by_key);
            let mediators = enumerate_transforms(probe, apex)?
                .iter()
                .map(|m| legs.iter().map(|l| Ok(key_of(&m.then(l)?))).collect())
                .collect::<Result<Vec<TransformKey>>>()?;
            certify(property, name, keys, mediators, |k| by_key[k].clone())
        } else {
            let cones: Vec<Vec<ChuTransform>> = match shape {
                ChuShape::Coproduct(family) => {
                    let lists: Vec<Vec<ChuTransform>> = family
                        .iter()
                        .map(|phi| enumerate_transforms(phi, probe))
                        .collect::<Result<_>>()?;
                    cartesian(&lists)?
                }
                ChuShape::Coequalizer(t1, t2) => enumerate_transforms(t1.to(), probe)?
                    .into_iter()
                    .map(|h| Ok((t1.then(&h)? == t2.then(&h)?).then_some(vec![h])))
                    .filter_map(|r| r.transpose())
                    .collect::<Result<_>>()?,
                _ => unreachable!(),
            };
            let keys = cones_to_keys(cones, &mut by_key);
            let mediators = enumerate_transforms(apex, probe)?
                .iter()
                .map(|m| legs.iter().map(|l| Ok(key_of(&l.then(m)?))).collect())
                .collect::<Result<Vec<TransformKey>>>()?;
            certify(property, name, keys, mediators, |k| by_key[k].clone())
        };
        match result {
            Ok(n) => checked += n,
            Err(c) => return Ok(Err(c)),
        }
    }
    Ok(Ok(Certificate {
        property: property.to_string(),
        probes: suite.chu.len(),
        checked,
    }))
}

fn cones_to_keys(
    cones: Vec<Vec<ChuTransform>>,
    rendered: &mut HashMap<TransformKey, Vec<Vec<String>>>,
) -> Vec<TransformKey> {
    cones
        .into_iter()
        .map(|c| {
            let key: TransformKey = c.iter().map(key_of).collect();
            rendered.insert(key.clone(), c.iter().map(render_transform).collect());
            key
        })
        .collect()
}
