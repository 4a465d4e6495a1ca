//! Dom-initial liftings: given a diagram of Chu objects and a cone over the
//! domains, build the Chu object whose codomain is the colimit of the
//! codomains and whose transpose factors through the pulled-back presheaves.

use std::sync::Arc;

use super::{same_dist, ChuObject, ChuTransform};
use crate::error::{Error, Result};
use crate::qcat::{self, same_quantaloid, QCategory, QFunctor};
use crate::qdist::{same_cat, Presheaf, PresheafCategory, QDistributor};
use crate::quantaloid::Quantaloid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramArrow {
    pub from: usize,
    pub to: usize,
    pub transform: ChuTransform,
}

/// A small diagram in the Chu category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChuDiagram {
    pub objects: Vec<ChuObject>,
    pub arrows: Vec<DiagramArrow>,
}

impl ChuDiagram {
    pub fn discrete(objects: Vec<ChuObject>) -> Self {
        ChuDiagram {
            objects,
            arrows: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.arrows {
            let (Some(src), Some(tgt)) = (self.objects.get(a.from), self.objects.get(a.to)) else {
                return Err(Error::TypeMismatch("diagram arrow out of range".into()));
            };
            if !same_dist(a.transform.from(), src) || !same_dist(a.transform.to(), tgt) {
                return Err(Error::TypeMismatch(
                    "diagram arrow does not connect its endpoints".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Intermediate data of a lifting, for inspection.
#[derive(Clone, Debug)]
pub struct LiftReport {
    /// `δ_j: W_j -> W` as index maps.
    pub delta: Vec<Vec<usize>>,
    /// `κ~_j(w)` restricted along `γ_j`, per vertex and codomain object.
    pub pulled: Vec<Vec<Presheaf>>,
    /// `φ~(w)` as an index into `PX`, per object of `W`.
    pub transpose: Vec<usize>,
    pub presheaf_count: usize,
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub object: ChuObject,
    pub cone: Vec<ChuTransform>,
    pub report: LiftReport,
}

/// Lifts `γ_j: X -> dom φ_j` to a cone `(γ_j, δ_j): φ -> φ_j`.
pub fn dom_initial_lift(
    quantaloid: &Arc<Quantaloid>,
    diagram: &ChuDiagram,
    apex: &Arc<QCategory>,
    legs: &[QFunctor],
) -> Result<Lift> {
    diagram.validate()?;
    check_cone(quantaloid, diagram, apex, legs)?;

    let (w, delta) = codomain_colimit(quantaloid, diagram)?;
    let px = PresheafCategory::new(apex.clone())?;

    let mut pulled = Vec::with_capacity(diagram.objects.len());
    let mut slot: Vec<Option<Presheaf>> = vec![None; w.len()];
    for (j, phi_j) in diagram.objects.iter().enumerate() {
        let mut row = Vec::with_capacity(phi_j.target().len());
        for b in phi_j.target().objects() {
            let p = Presheaf {
                extent: phi_j.target().extent(b),
                components: apex
                    .objects()
                    .map(|x| phi_j.value(legs[j].apply(x), b))
                    .collect(),
            };
            let target = &mut slot[delta[j].apply(b)];
            match target {
                None => *target = Some(p.clone()),
                Some(prev) if *prev == p => {}
                Some(_) => {
                    return Err(Error::IllDefined(format!(
                        "{} receives two different presheaves",
                        w.name(delta[j].apply(b))
                    )))
                }
            }
            row.push(p);
        }
        pulled.push(row);
    }

    let transpose: Vec<usize> = slot
        .iter()
        .map(|p| {
            let p = p
                .as_ref()
                .expect("colimit injections are jointly surjective");
            px.index_of(p)
                .ok_or_else(|| Error::IllDefined("pulled-back family is not a presheaf".into()))
        })
        .collect::<Result<_>>()?;
    let transpose_functor = QFunctor::unchecked(w.clone(), px.category.clone(), transpose.clone())?;
    transpose_functor
        .validate()
        .map_err(|e| Error::IllDefined(format!("transpose is not a functor: {e}")))?;

    let values = (0..apex.len() * w.len())
        .map(|k| px.presheaves[transpose[k % w.len()]].components[k / w.len()])
        .collect();
    let object = Arc::new(QDistributor::unchecked(apex.clone(), w.clone(), values)?);
    object.validate()?;

    let cone = diagram
        .objects
        .iter()
        .zip(legs)
        .zip(&delta)
        .map(|((phi_j, g), d)| {
            ChuTransform::unchecked(object.clone(), phi_j.clone(), g.clone(), d.clone())
        })
        .collect::<Result<_>>()?;
    Ok(Lift {
        object,
        cone,
        report: LiftReport {
            delta: delta.iter().map(|d| d.map().to_vec()).collect(),
            pulled,
            transpose,
            presheaf_count: px.len(),
        },
    })
}

fn check_cone(
    quantaloid: &Arc<Quantaloid>,
    diagram: &ChuDiagram,
    apex: &Arc<QCategory>,
    legs: &[QFunctor],
) -> Result<()> {
    if !same_quantaloid(apex.quantaloid(), quantaloid) {
        return Err(Error::QuantaloidMismatch);
    }
    if legs.len() != diagram.objects.len() {
        return Err(Error::NotACone(format!(
            "{} legs for {} vertices",
            legs.len(),
            diagram.objects.len()
        )));
    }
    for (j, (g, phi)) in legs.iter().zip(&diagram.objects).enumerate() {
        if !same_cat(g.source(), apex) || !same_cat(g.target(), phi.source()) {
            return Err(Error::NotACone(format!("leg {j} has the wrong type")));
        }
        g.validate()?;
    }
    for (k, a) in diagram.arrows.iter().enumerate() {
        let via = a.transform.fwd().after(&legs[a.from])?;
        if via.map() != legs[a.to].map() {
            return Err(Error::NotACone(format!("arrow {k} does not commute")));
        }
    }
    Ok(())
}

/// Colimit of the codomains: a coproduct, followed by a coequalizer when the
/// diagram has arrows. A single vertex without arrows is its own colimit.
fn codomain_colimit(
    quantaloid: &Arc<Quantaloid>,
    diagram: &ChuDiagram,
) -> Result<(Arc<QCategory>, Vec<QFunctor>)> {
    if diagram.objects.len() == 1 && diagram.arrows.is_empty() {
        let w = diagram.objects[0].target().clone();
        return Ok((w.clone(), vec![QFunctor::identity(w)]));
    }
    let codomains: Vec<Arc<QCategory>> =
        diagram.objects.iter().map(|p| p.target().clone()).collect();
    let sum = qcat::coproduct(quantaloid, &codomains)?;
    if diagram.arrows.is_empty() {
        return Ok((sum.nadir, sum.legs));
    }

    // each arrow j -> k contributes W_k twice into the sum: directly, and
    // through its backward part into W_j
    let sources: Vec<Arc<QCategory>> = diagram
        .arrows
        .iter()
        .map(|a| codomains[a.to].clone())
        .collect();
    let arrow_sum = qcat::coproduct(quantaloid, &sources)?;
    let mut direct = vec![0; arrow_sum.nadir.len()];
    let mut through = vec![0; arrow_sum.nadir.len()];
    for (a, inj) in diagram.arrows.iter().zip(&arrow_sum.legs) {
        for (w, &global) in inj.map().iter().enumerate() {
            direct[global] = sum.legs[a.to].apply(w);
            through[global] = sum.legs[a.from].apply(a.transform.bwd().apply(w));
        }
    }
    let left = QFunctor::unchecked(arrow_sum.nadir.clone(), sum.nadir.clone(), direct)?;
    let right = QFunctor::unchecked(arrow_sum.nadir.clone(), sum.nadir.clone(), through)?;
    let coeq = qcat::coequalizer(&left, &right)?;
    let quotient = &coeq.legs[0];
    let legs = sum
        .legs
        .iter()
        .map(|s| quotient.after(s))
        .collect::<Result<_>>()?;
    Ok((coeq.nadir, legs))
}

/// Limit of the domain diagram: the product of the domains cut down by one
/// equalizer per arrow.
pub fn domain_limit(
    quantaloid: &Arc<Quantaloid>,
    diagram: &ChuDiagram,
) -> Result<(Arc<QCategory>, Vec<QFunctor>)> {
    diagram.validate()?;
    let domains: Vec<Arc<QCategory>> = diagram.objects.iter().map(|p| p.source().clone()).collect();
    let prod = qcat::product(quantaloid, &domains)?;
    let (mut apex, mut legs) = (prod.apex, prod.legs);
    for a in &diagram.arrows {
        let via = a.transform.fwd().after(&legs[a.from])?;
        let eq = qcat::equalizer(&via, &legs[a.to])?;
        let inc = &eq.legs[0];
        legs = legs.iter().map(|l| l.after(inc)).collect::<Result<_>>()?;
        apex = eq.apex;
    }
    Ok((apex, legs))
}
