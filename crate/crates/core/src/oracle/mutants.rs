//! Deliberately corrupted constructions. Each must be rejected by the
//! universal-property checks.

use std::sync::Arc;

use super::universal::{check_chu_universal, check_universal, CatShape, ChuShape};
use super::{enumerate_functors, TestSuite, Verdict};
use crate::error::{Error, Result};
use crate::qcat::{self, QCategory, QFunctor};
use crate::qchu::{chu_product, ChuTransform};
use crate::qdist::QDistributor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutant {
    /// Product homs joined instead of met.
    ProductJoin,
    /// Coproduct with top instead of bottom between summands.
    CoproductTop,
    /// Equalizer missing its last point.
    EqualizerDropsPoint,
    /// Coequalizer that identifies nothing.
    CoequalizerNoMerge,
    /// Chu product with every value at bottom.
    ChuProductBottom,
}

impl Mutant {
    pub const ALL: [Mutant; 5] = [
        Mutant::ProductJoin,
        Mutant::CoproductTop,
        Mutant::EqualizerDropsPoint,
        Mutant::CoequalizerNoMerge,
        Mutant::ChuProductBottom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::ProductJoin => "product-join",
            Mutant::CoproductTop => "coproduct-top",
            Mutant::EqualizerDropsPoint => "equalizer-drops-point",
            Mutant::CoequalizerNoMerge => "coequalizer-no-merge",
            Mutant::ChuProductBottom => "chu-product-bottom",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutant> {
        Mutant::ALL.into_iter().find(|m| m.name() == name)
    }
}

fn no_instance(m: Mutant) -> Error {
    Error::BadParameter(format!("suite has no instance for mutant {}", m.name()))
}

/// Builds the mutant on an instance drawn from the suite and runs the
/// matching universal-property check.
pub fn run_mutant(m: Mutant, suite: &TestSuite) -> Result<Verdict> {
    let q = &suite.quantaloid;
    let nonempty: Vec<Arc<QCategory>> = suite
        .categories
        .iter()
        .filter(|(_, c)| c.len() >= 2)
        .map(|(_, c)| c.clone())
        .collect();
    match m {
        Mutant::ProductJoin => {
            let family = nonempty.get(..2).ok_or_else(|| no_instance(m))?;
            let cone = qcat::product(q, family)?;
            let apex = &cone.apex;
            let hom = (0..apex.len() * apex.len())
                .map(|k| {
                    let (x, y) = (k / apex.len(), k % apex.len());
                    let (ex, ey) = (apex.extent(x), apex.extent(y));
                    q.hom(ex, ey).join(
                        cone.legs
                            .iter()
                            .zip(family)
                            .map(|(p, c)| c.hom(p.apply(x), p.apply(y))),
                    )
                })
                .collect();
            let (bad, legs) = rewire_apex(apex, hom, &cone.legs, true)?;
            check_universal(CatShape::Product(family), &bad, &legs, suite)
        }
        Mutant::CoproductTop => {
            let family = nonempty.get(..2).ok_or_else(|| no_instance(m))?;
            let cocone = qcat::coproduct(q, family)?;
            let c = &cocone.nadir;
            let mut owner = vec![0; c.len()];
            for (i, leg) in cocone.legs.iter().enumerate() {
                for &x in leg.map() {
                    owner[x] = i;
                }
            }
            let hom = (0..c.len() * c.len())
                .map(|k| {
                    let (x, y) = (k / c.len(), k % c.len());
                    if owner[x] == owner[y] {
                        c.hom(x, y)
                    } else {
                        q.top(c.extent(x), c.extent(y))
                    }
                })
                .collect();
            let (bad, legs) = rewire_apex(c, hom, &cocone.legs, false)?;
            check_universal(CatShape::Coproduct(family), &bad, &legs, suite)
        }
        Mutant::EqualizerDropsPoint => {
            let (f, g) = parallel_pair(suite, |f, g| {
                qcat::equalizer(f, g).is_ok_and(|c| !c.apex.is_empty())
            })?
            .ok_or_else(|| no_instance(m))?;
            let cone = qcat::equalizer(&f, &g)?;
            let keep: Vec<usize> = (0..cone.apex.len() - 1).collect();
            let apex = Arc::new(cone.apex.restrict(&keep));
            let map = keep.iter().map(|&k| cone.legs[0].apply(k)).collect();
            let leg = QFunctor::unchecked(apex.clone(), f.source().clone(), map)?;
            check_universal(CatShape::Equalizer(&f, &g), &apex, &[leg], suite)
        }
        Mutant::CoequalizerNoMerge => {
            let (f, g) = parallel_pair(suite, |_, _| true)?.ok_or_else(|| no_instance(m))?;
            let y = f.target().clone();
            let leg = QFunctor::identity(y.clone());
            check_universal(CatShape::Coequalizer(&f, &g), &y, &[leg], suite)
        }
        Mutant::ChuProductBottom => {
            let family: Vec<_> = suite
                .chu
                .iter()
                .filter(|(_, phi)| {
                    phi.source().objects().any(|x| {
                        phi.target().objects().any(|y| {
                            let (ex, ey) = (phi.source().extent(x), phi.target().extent(y));
                            phi.value(x, y) != q.bottom(ex, ey)
                        })
                    })
                })
                .map(|(_, phi)| phi.clone())
                .take(2)
                .collect();
            if family.is_empty() {
                return Err(no_instance(m));
            }
            let cone = chu_product(q, &family)?;
            let (x, w) = (cone.apex.source().clone(), cone.apex.target().clone());
            let values = (0..x.len() * w.len())
                .map(|k| q.bottom(x.extent(k / w.len()), w.extent(k % w.len())))
                .collect();
            let apex = Arc::new(QDistributor::unchecked(x, w, values)?);
            let legs = cone
                .legs
                .iter()
                .map(|l| {
                    ChuTransform::unchecked(
                        apex.clone(),
                        l.to().clone(),
                        l.fwd().clone(),
                        l.bwd().clone(),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            check_chu_universal(ChuShape::Product(&family), &apex, &legs, suite)
        }
    }
}

/// Same objects, new homs, legs re-pointed at the new category.
fn rewire_apex(
    apex: &Arc<QCategory>,
    hom: Vec<usize>,
    legs: &[QFunctor],
    outgoing: bool,
) -> Result<(Arc<QCategory>, Vec<QFunctor>)> {
    let bad = Arc::new(QCategory::unchecked(
        apex.quantaloid().clone(),
        apex.names().to_vec(),
        apex.extents().to_vec(),
        hom,
    )?);
    let legs = legs
        .iter()
        .map(|l| {
            if outgoing {
                QFunctor::unchecked(bad.clone(), l.target().clone(), l.map().to_vec())
            } else {
                QFunctor::unchecked(l.source().clone(), bad.clone(), l.map().to_vec())
            }
        })
        .collect::<Result<_>>()?;
    Ok((bad, legs))
}

/// First pair of distinct parallel functors between suite categories that
/// satisfies `accept`.
fn parallel_pair(
    suite: &TestSuite,
    accept: impl Fn(&QFunctor, &QFunctor) -> bool,
) -> Result<Option<(QFunctor, QFunctor)>> {
    for (_, x) in &suite.categories {
        for (_, y) in &suite.categories {
            let fs = enumerate_functors(x, y)?;
            for (i, f) in fs.iter().enumerate() {
                for g in &fs[i + 1..] {
                    if accept(f, g) {
                        return Ok(Some((f.clone(), g.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}
