//! The generating family and the morphisms that separate distinct parallel
//! transforms.
//!
//! For each object `s`, `η_s: ∅ ⇸ D_s` where `D_s` is the indiscrete category
//! on `{s} + ob Q`. For each object `t`, `λ_t: {t} ⇸ Ĉ` where `C = ∐_t P{t}`,
//! `Ĉ = C × {1, 2}` with homs ignoring the tag, and `λ_t(*, (u, i)) = u` when
//! `u` lives over `t` and bottom otherwise. The alternative family replaces
//! the `η_s` by the single `λ_∅: ∅ ⇸ Ĉ`.

use std::sync::Arc;

use super::{ChuObject, ChuTransform};
use crate::caps::FUNCTOR_SEARCH_CAP;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::qcat::{self, free_structure, FreeMode, QCategory, QFunctor};
use crate::qdist::{PresheafCategory, QDistributor};
use crate::quantaloid::{Obj, Quantaloid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorMode {
    #[default]
    Standard,
    /// Uses `λ_∅` in place of the `η_s`.
    Alternative,
}

#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub quantaloid: Arc<Quantaloid>,
    pub mode: GeneratorMode,
    pub empty: Arc<QCategory>,
    /// `D_s`, object 0 is the tagged point, object `1 + q` stands for `q`.
    pub d: Vec<Arc<QCategory>>,
    pub eta: Vec<ChuObject>,
    /// `C = ∐_t P{t}`.
    pub c: Arc<QCategory>,
    /// Object `k` of `C` is the presheaf on `{t}` with extent `s` and value
    /// `u: t -> s`, recorded as `(t, s, u)`.
    pub c_points: Vec<(Obj, Obj, Elem)>,
    /// `Ĉ`, object `2k + (i - 1)` is `(k, i)`.
    pub c_hat: Arc<QCategory>,
    pub points: Vec<Arc<QCategory>>,
    pub lambda: Vec<ChuObject>,
    pub lambda_empty: Option<ChuObject>,
}

impl GeneratorFamily {
    /// All members, `η_s` (or `λ_∅`) first.
    pub fn members(&self) -> Vec<ChuObject> {
        let mut out = match self.mode {
            GeneratorMode::Standard => self.eta.clone(),
            GeneratorMode::Alternative => self.lambda_empty.iter().cloned().collect(),
        };
        out.extend(self.lambda.iter().cloned());
        out
    }

    /// Object of `C` for the presheaf `u: t -> s`.
    pub fn c_point(&self, t: Obj, s: Obj, u: Elem) -> usize {
        self.c_points
            .iter()
            .position(|&p| p == (t, s, u))
            .expect("every morphism is a point of C")
    }

    pub fn c_hat_point(&self, t: Obj, s: Obj, u: Elem, tag: usize) -> usize {
        2 * self.c_point(t, s, u) + (tag - 1)
    }
}

pub fn generator_family(
    quantaloid: &Arc<Quantaloid>,
    mode: GeneratorMode,
) -> Result<GeneratorFamily> {
    let q = quantaloid;
    let n = q.len();
    let empty = Arc::new(QCategory::unchecked(q.clone(), vec![], vec![], vec![])?);

    let mut d = Vec::with_capacity(n);
    let mut eta = Vec::with_capacity(n);
    for s in q.objects() {
        let mut names = vec![format!("tag:{}", q.object_name(s))];
        names.extend(q.object_names().iter().map(|o| format!("ob:{o}")));
        let mut extents = vec![s];
        extents.extend(q.objects());
        let ds = Arc::new(free_structure(
            FreeMode::Indiscrete,
            q.clone(),
            names,
            extents,
        )?);
        eta.push(Arc::new(QDistributor::unchecked(
            empty.clone(),
            ds.clone(),
            vec![],
        )?));
        d.push(ds);
    }

    let points: Vec<Arc<QCategory>> = q
        .objects()
        .map(|t| {
            let name = vec![q.object_name(t).to_string()];
            free_structure(FreeMode::Discrete, q.clone(), name, vec![t]).map(Arc::new)
        })
        .collect::<Result<_>>()?;
    let presheaf_cats: Vec<PresheafCategory> = points
        .iter()
        .map(|p| PresheafCategory::new(p.clone()))
        .collect::<Result<_>>()?;
    let summands: Vec<Arc<QCategory>> = presheaf_cats.iter().map(|p| p.category.clone()).collect();
    let sum = qcat::coproduct(q, &summands)?;
    let c = sum.nadir.clone();
    let mut c_points = vec![(0, 0, 0); c.len()];
    for (t, (leg, pc)) in sum.legs.iter().zip(&presheaf_cats).enumerate() {
        for (i, p) in pc.presheaves.iter().enumerate() {
            c_points[leg.apply(i)] = (t, p.extent, p.components[0]);
        }
    }

    let mut hat_names = Vec::with_capacity(2 * c.len());
    let mut hat_extents = Vec::with_capacity(2 * c.len());
    for k in c.objects() {
        for tag in 1..=2 {
            hat_names.push(format!("({},{tag})", c.name(k)));
            hat_extents.push(c.extent(k));
        }
    }
    let m = hat_names.len();
    let hat_hom = (0..m * m).map(|i| c.hom(i / m / 2, i % m / 2)).collect();
    let c_hat = Arc::new(QCategory::unchecked(
        q.clone(),
        hat_names,
        hat_extents,
        hat_hom,
    )?);

    let lambda = points
        .iter()
        .enumerate()
        .map(|(t, pt)| {
            let values = c_hat
                .objects()
                .map(|y| {
                    let (owner, s, u) = c_points[y / 2];
                    if owner == t {
                        u
                    } else {
                        q.bottom(t, s)
                    }
                })
                .collect();
            let lam = QDistributor::unchecked(pt.clone(), c_hat.clone(), values)?;
            lam.validate()?;
            Ok(Arc::new(lam))
        })
        .collect::<Result<_>>()?;
    let lambda_empty = match mode {
        GeneratorMode::Standard => None,
        GeneratorMode::Alternative => Some(Arc::new(QDistributor::unchecked(
            empty.clone(),
            c_hat.clone(),
            vec![],
        )?)),
    };

    Ok(GeneratorFamily {
        quantaloid: q.clone(),
        mode,
        empty,
        d,
        eta,
        c,
        c_points,
        c_hat,
        points,
        lambda,
        lambda_empty,
    })
}

/// A morphism out of a generator telling two parallel transforms apart.
#[derive(Clone, Debug)]
pub struct Separation {
    pub case: u8,
    pub generator: ChuObject,
    pub morphism: ChuTransform,
}

/// Finds `m: G -> φ` from the family with `t1 o m != t2 o m`.
pub fn separate(
    t1: &ChuTransform,
    t2: &ChuTransform,
    family: &GeneratorFamily,
) -> Result<Separation> {
    if !t1.is_parallel(t2) {
        return Err(Error::TypeMismatch("transforms are not parallel".into()));
    }
    if t1 == t2 {
        return Err(Error::NotDistinct);
    }
    let phi = t1.from();
    let (x, w) = (phi.source(), phi.target());
    let q = &family.quantaloid;

    let found = if x.is_empty() {
        match family.mode {
            GeneratorMode::Standard => case_one(t1, t2, family)?,
            GeneratorMode::Alternative => {
                let z0 = first_difference(t1.bwd(), t2.bwd()).expect("transforms differ");
                let marked = t2.bwd().apply(z0);
                let map = w
                    .objects()
                    .map(|b| {
                        let s = w.extent(b);
                        let tag = if b == marked { 2 } else { 1 };
                        family.c_hat_point(0, s, q.top(0, s), tag)
                    })
                    .collect();
                let g = family
                    .lambda_empty
                    .clone()
                    .expect("alternative family has λ_∅");
                let e = QFunctor::unchecked(family.empty.clone(), x.clone(), vec![])?;
                let h = QFunctor::unchecked(w.clone(), family.c_hat.clone(), map)?;
                (1, g.clone(), ChuTransform::unchecked(g, phi.clone(), e, h)?)
            }
        }
    } else {
        let (case, x0, marked) = match first_difference(t1.fwd(), t2.fwd()) {
            Some(x0) => (2, x0, None),
            None => {
                let z0 = first_difference(t1.bwd(), t2.bwd()).expect("transforms differ");
                (3, 0, Some(t2.bwd().apply(z0)))
            }
        };
        let t = x.extent(x0);
        let map = w
            .objects()
            .map(|b| {
                let tag = if Some(b) == marked { 2 } else { 1 };
                family.c_hat_point(t, w.extent(b), phi.value(x0, b), tag)
            })
            .collect();
        let g = family.lambda[t].clone();
        let e = QFunctor::unchecked(family.points[t].clone(), x.clone(), vec![x0])?;
        let h = QFunctor::unchecked(w.clone(), family.c_hat.clone(), map)?;
        (
            case,
            g.clone(),
            ChuTransform::unchecked(g, phi.clone(), e, h)?,
        )
    };

    let (case, generator, morphism) = found;
    morphism.validate_elementwise()?;
    if morphism.then(t1)? == morphism.then(t2)? {
        return Err(Error::IllDefined(
            "separating morphism does not separate".into(),
        ));
    }
    Ok(Separation {
        case,
        generator,
        morphism,
    })
}

fn first_difference(f: &QFunctor, g: &QFunctor) -> Option<usize> {
    f.map().iter().zip(g.map()).position(|(a, b)| a != b)
}

/// Lexicographic search over `s`, then over maps `W -> D_s`.
fn case_one(
    t1: &ChuTransform,
    t2: &ChuTransform,
    family: &GeneratorFamily,
) -> Result<(u8, ChuObject, ChuTransform)> {
    let phi = t1.from();
    let w = phi.target();
    let mut visited = 0usize;
    for (s, ds) in family.d.iter().enumerate() {
        let choices: Vec<Vec<usize>> = w
            .objects()
            .map(|b| {
                let e = w.extent(b);
                if e == s {
                    vec![0, 1 + e]
                } else {
                    vec![1 + e]
                }
            })
            .collect();
        let mut pos = vec![0usize; choices.len()];
        loop {
            visited += 1;
            if visited > FUNCTOR_SEARCH_CAP {
                return Err(Error::SizeCap {
                    what: "separating map search".into(),
                    needed: visited,
                    cap: FUNCTOR_SEARCH_CAP,
                });
            }
            let map: Vec<usize> = pos.iter().zip(&choices).map(|(&p, c)| c[p]).collect();
            let separates = t1
                .bwd()
                .map()
                .iter()
                .zip(t2.bwd().map())
                .any(|(&a, &b)| map[a] != map[b]);
            if separates {
                let g = family.eta[s].clone();
                let e = QFunctor::unchecked(family.empty.clone(), phi.source().clone(), vec![])?;
                let h = QFunctor::unchecked(w.clone(), ds.clone(), map)?;
                return Ok((1, g.clone(), ChuTransform::unchecked(g, phi.clone(), e, h)?));
            }
            if !advance(&mut pos, &choices) {
                break;
            }
        }
    }
    Err(Error::IllDefined(
        "no generator separates the transforms".into(),
    ))
}

/// Odometer step, last coordinate fastest. False once every tuple was seen.
fn advance(pos: &mut [usize], choices: &[Vec<usize>]) -> bool {
    for i in (0..pos.len()).rev() {
        pos[i] += 1;
        if pos[i] < choices[i].len() {
            return true;
        }
        pos[i] = 0;
    }
    false
}
