//! Chu objects (distributors viewed as objects) and Chu transforms, with the
//! small limits and colimits of such objects, dom-initial liftings of cones,
//! and the generating family together with its separating morphisms.
//!
//! A transform `(f, g): φ -> ψ` between `φ: X ⇸ W` and `ψ: Y ⇸ Z` consists of
//! functors `f: X -> Y` and `g: Z -> W` with `ψ(f x, z) = φ(x, g z)`.

mod generators;
mod lift;

use std::sync::Arc;

pub use generators::{generator_family, separate, GeneratorFamily, GeneratorMode, Separation};
pub use lift::{dom_initial_lift, domain_limit, ChuDiagram, DiagramArrow, Lift, LiftReport};

use crate::caps::presheaf_cap;
use crate::error::{Error, Result};
use crate::qcat::{self, same_quantaloid, QCategory, QFunctor};
use crate::qdist::{restriction, same_cat, transpose, PresheafCategory, QDistributor};
use crate::quantaloid::Quantaloid;

/// A distributor regarded as an object of the Chu category.
pub type ChuObject = Arc<QDistributor>;

pub(crate) fn same_dist(a: &ChuObject, b: &ChuObject) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct ChuTransform {
    from: ChuObject,
    to: ChuObject,
    fwd: QFunctor,
    bwd: QFunctor,
}

impl PartialEq for ChuTransform {
    fn eq(&self, other: &Self) -> bool {
        same_dist(&self.from, &other.from)
            && same_dist(&self.to, &other.to)
            && self.fwd.map() == other.fwd.map()
            && self.bwd.map() == other.bwd.map()
    }
}

impl Eq for ChuTransform {}

impl ChuTransform {
    /// Validates both functors and the Chu condition. When both presheaf
    /// categories fit under the cap, the presheaf formulation is checked too
    /// and must agree with the elementwise one.
    pub fn new(from: ChuObject, to: ChuObject, fwd: QFunctor, bwd: QFunctor) -> Result<Self> {
        let t = Self::unchecked(from, to, fwd, bwd)?;
        t.validate()?;
        Ok(t)
    }

    /// Type-checks the shape only.
    pub fn unchecked(from: ChuObject, to: ChuObject, fwd: QFunctor, bwd: QFunctor) -> Result<Self> {
        if !same_cat(fwd.source(), from.source())
            || !same_cat(fwd.target(), to.source())
            || !same_cat(bwd.source(), to.target())
            || !same_cat(bwd.target(), from.target())
        {
            return Err(Error::TypeMismatch(
                "transform components do not match the Chu objects".into(),
            ));
        }
        Ok(ChuTransform { from, to, fwd, bwd })
    }

    pub fn identity(obj: ChuObject) -> Self {
        ChuTransform {
            fwd: QFunctor::identity(obj.source().clone()),
            bwd: QFunctor::identity(obj.target().clone()),
            from: obj.clone(),
            to: obj,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.fwd.validate()?;
        self.bwd.validate()?;
        let elementwise = self.chu_violation();
        if let Some(ok) = self.presheaf_square_within_cap()? {
            if ok != elementwise.is_none() {
                return Err(Error::FormulationMismatch);
            }
        }
        match elementwise {
            Some((x, z)) => Err(Error::ChuViolation {
                x: self.from.source().name(x).to_string(),
                z: self.to.target().name(z).to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Validates the functors and the elementwise condition only.
    pub fn validate_elementwise(&self) -> Result<()> {
        self.fwd.validate()?;
        self.bwd.validate()?;
        match self.chu_violation() {
            Some((x, z)) => Err(Error::ChuViolation {
                x: self.from.source().name(x).to_string(),
                z: self.to.target().name(z).to_string(),
            }),
            None => Ok(()),
        }
    }

    /// First `(x, z)` with `ψ(f x, z) != φ(x, g z)`.
    pub fn chu_violation(&self) -> Option<(usize, usize)> {
        let (phi, psi) = (&self.from, &self.to);
        for x in phi.source().objects() {
            for z in psi.target().objects() {
                if psi.value(self.fwd.apply(x), z) != phi.value(x, self.bwd.apply(z)) {
                    return Some((x, z));
                }
            }
        }
        None
    }

    pub fn satisfies_chu(&self) -> bool {
        self.chu_violation().is_none()
    }

    /// `f* o ψ~ = φ~ o g` as functors `Z -> PX`.
    pub fn presheaf_square(&self, px: &PresheafCategory, py: &PresheafCategory) -> Result<bool> {
        let f_star = restriction(&self.fwd, px, py)?;
        let psi_t = transpose(&self.to, py)?;
        let phi_t = transpose(&self.from, px)?;
        let left = f_star.after(&psi_t)?;
        let right = phi_t.after(&self.bwd)?;
        Ok(left.map() == right.map())
    }

    fn presheaf_square_within_cap(&self) -> Result<Option<bool>> {
        let cap = presheaf_cap();
        let px = match PresheafCategory::with_cap(self.from.source().clone(), cap) {
            Ok(p) => p,
            Err(Error::SizeCap { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let py = match PresheafCategory::with_cap(self.to.source().clone(), cap) {
            Ok(p) => p,
            Err(Error::SizeCap { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        // a transform violating the condition may send ψ~(z) outside the
        // image of φ~; only a located mismatch counts as a failed square
        match self.presheaf_square(&px, &py) {
            Ok(b) => Ok(Some(b)),
            Err(Error::IllDefined(_)) => Ok(Some(false)),
            Err(e) => Err(e),
        }
    }

    pub fn from(&self) -> &ChuObject {
        &self.from
    }

    pub fn to(&self) -> &ChuObject {
        &self.to
    }

    pub fn fwd(&self) -> &QFunctor {
        &self.fwd
    }

    pub fn bwd(&self) -> &QFunctor {
        &self.bwd
    }

    /// `next o self`: forward parts compose covariantly, backward parts
    /// contravariantly.
    pub fn then(&self, next: &ChuTransform) -> Result<ChuTransform> {
        if !same_dist(&self.to, &next.from) {
            return Err(Error::TypeMismatch("transforms are not composable".into()));
        }
        Ok(ChuTransform {
            from: self.from.clone(),
            to: next.to.clone(),
            fwd: next.fwd.after(&self.fwd)?,
            bwd: self.bwd.after(&next.bwd)?,
        })
    }

    pub fn is_parallel(&self, other: &ChuTransform) -> bool {
        same_dist(&self.from, &other.from) && same_dist(&self.to, &other.to)
    }
}

/// A cone of Chu transforms out of `apex`.
#[derive(Clone, Debug)]
pub struct ChuCone {
    pub apex: ChuObject,
    pub legs: Vec<ChuTransform>,
}

/// A cocone of Chu transforms into `nadir`.
#[derive(Clone, Debug)]
pub struct ChuCocone {
    pub nadir: ChuObject,
    pub legs: Vec<ChuTransform>,
}

fn check_family(quantaloid: &Arc<Quantaloid>, family: &[ChuObject]) -> Result<()> {
    for phi in family {
        if !same_quantaloid(phi.source().quantaloid(), quantaloid) {
            return Err(Error::QuantaloidMismatch);
        }
    }
    Ok(())
}

/// Product of domains, coproduct of codomains, `φ(x, s_i y) = φ_i(x_i, y)`.
pub fn chu_product(quantaloid: &Arc<Quantaloid>, family: &[ChuObject]) -> Result<ChuCone> {
    check_family(quantaloid, family)?;
    let domains: Vec<Arc<QCategory>> = family.iter().map(|p| p.source().clone()).collect();
    let codomains: Vec<Arc<QCategory>> = family.iter().map(|p| p.target().clone()).collect();
    let prod = qcat::product(quantaloid, &domains)?;
    let coprod = qcat::coproduct(quantaloid, &codomains)?;
    let (x, y) = (prod.apex.clone(), coprod.nadir.clone());
    let owner = summand_index(&coprod);
    let values = (0..x.len() * y.len())
        .map(|k| {
            let (i, j) = (k / y.len(), k % y.len());
            let (summand, local) = owner[j];
            family[summand].value(prod.legs[summand].apply(i), local)
        })
        .collect();
    let apex = Arc::new(QDistributor::unchecked(x, y, values)?);
    let legs = family
        .iter()
        .zip(prod.legs)
        .zip(coprod.legs)
        .map(|((phi, p), s)| ChuTransform::unchecked(apex.clone(), phi.clone(), p, s))
        .collect::<Result<_>>()?;
    Ok(ChuCone { apex, legs })
}

/// Coproduct of domains, product of codomains, `φ(s_i x, y) = φ_i(x, y_i)`.
pub fn chu_coproduct(quantaloid: &Arc<Quantaloid>, family: &[ChuObject]) -> Result<ChuCocone> {
    check_family(quantaloid, family)?;
    let domains: Vec<Arc<QCategory>> = family.iter().map(|p| p.source().clone()).collect();
    let codomains: Vec<Arc<QCategory>> = family.iter().map(|p| p.target().clone()).collect();
    let coprod = qcat::coproduct(quantaloid, &domains)?;
    let prod = qcat::product(quantaloid, &codomains)?;
    let (x, y) = (coprod.nadir.clone(), prod.apex.clone());
    let owner = summand_index(&coprod);
    let values = (0..x.len() * y.len())
        .map(|k| {
            let (i, j) = (k / y.len(), k % y.len());
            let (summand, local) = owner[i];
            family[summand].value(local, prod.legs[summand].apply(j))
        })
        .collect();
    let nadir = Arc::new(QDistributor::unchecked(x, y, values)?);
    let legs = family
        .iter()
        .zip(coprod.legs)
        .zip(prod.legs)
        .map(|((phi, s), p)| ChuTransform::unchecked(phi.clone(), nadir.clone(), s, p))
        .collect::<Result<_>>()?;
    Ok(ChuCocone { nadir, legs })
}

/// For each object of a coproduct, its summand and index within it.
fn summand_index(c: &qcat::Cocone) -> Vec<(usize, usize)> {
    let mut owner = vec![(0, 0); c.nadir.len()];
    for (i, leg) in c.legs.iter().enumerate() {
        for (local, &global) in leg.map().iter().enumerate() {
            owner[global] = (i, local);
        }
    }
    owner
}

fn check_parallel(t1: &ChuTransform, t2: &ChuTransform) -> Result<()> {
    if !t1.is_parallel(t2) {
        return Err(Error::TypeMismatch("transforms are not parallel".into()));
    }
    Ok(())
}

/// Equalizer `U` of the forward parts, coequalizer `V` of the backward parts,
/// and `χ(u, p w) = φ(i u, w)`.
pub fn chu_equalizer(t1: &ChuTransform, t2: &ChuTransform) -> Result<ChuCone> {
    check_parallel(t1, t2)?;
    let phi = t1.from();
    let eq = qcat::equalizer(t1.fwd(), t2.fwd())?;
    let coeq = qcat::coequalizer(t1.bwd(), t2.bwd())?;
    let (inc, proj) = (eq.legs[0].clone(), coeq.legs[0].clone());
    let (u, v) = (eq.apex.clone(), coeq.nadir.clone());
    let mut values: Vec<Option<usize>> = vec![None; u.len() * v.len()];
    for x in u.objects() {
        for w in phi.target().objects() {
            let slot = &mut values[x * v.len() + proj.apply(w)];
            let val = phi.value(inc.apply(x), w);
            match slot {
                None => *slot = Some(val),
                Some(prev) if *prev == val => {}
                Some(_) => {
                    return Err(Error::IllDefined(format!(
                        "χ({}, {}) has two values",
                        u.name(x),
                        v.name(proj.apply(w))
                    )))
                }
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("projection is surjective"))
        .collect();
    let apex = Arc::new(QDistributor::unchecked(u, v, values)?);
    let leg = ChuTransform::unchecked(apex.clone(), phi.clone(), inc, proj)?;
    Ok(ChuCone {
        apex,
        legs: vec![leg],
    })
}

/// Coequalizer `Y'` of the forward parts, equalizer `Z'` of the backward
/// parts, and `ω(q y, z) = ψ(y, j z)`.
pub fn chu_coequalizer(t1: &ChuTransform, t2: &ChuTransform) -> Result<ChuCocone> {
    check_parallel(t1, t2)?;
    let psi = t1.to();
    let coeq = qcat::coequalizer(t1.fwd(), t2.fwd())?;
    let eq = qcat::equalizer(t1.bwd(), t2.bwd())?;
    let (proj, inc) = (coeq.legs[0].clone(), eq.legs[0].clone());
    let (y, z) = (coeq.nadir.clone(), eq.apex.clone());
    let mut values: Vec<Option<usize>> = vec![None; y.len() * z.len()];
    for b in psi.source().objects() {
        for c in z.objects() {
            let slot = &mut values[proj.apply(b) * z.len() + c];
            let val = psi.value(b, inc.apply(c));
            match slot {
                None => *slot = Some(val),
                Some(prev) if *prev == val => {}
                Some(_) => {
                    return Err(Error::IllDefined(format!(
                        "ω({}, {}) has two values",
                        y.name(proj.apply(b)),
                        z.name(c)
                    )))
                }
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("projection is surjective"))
        .collect();
    let nadir = Arc::new(QDistributor::unchecked(y, z, values)?);
    let leg = ChuTransform::unchecked(psi.clone(), nadir.clone(), proj, inc)?;
    Ok(ChuCocone {
        nadir,
        legs: vec![leg],
    })
}

#[cfg(test)]
mod tests;
