//! Distributors between `Q`-categories, presheaf categories, the Yoneda
//! functor, and the Kan adjunction `φ ↦ φ*`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::presheaf_cap;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::qcat::{same_quantaloid, QCategory, QFunctor};
use crate::quantaloid::Obj;

/// A distributor `φ: X ⇸ Y` with values `φ(x, y): |x| -> |y|`, stored
/// row-major by `x`.
#[derive(Clone, Debug)]
pub struct QDistributor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    values: Vec<Elem>,
}

impl PartialEq for QDistributor {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && same_cat(&self.source, &other.source)
            && same_cat(&self.target, &other.target)
    }
}

impl Eq for QDistributor {}

pub(crate) fn same_cat(a: &Arc<QCategory>, b: &Arc<QCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl QDistributor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, values: Vec<Elem>) -> Result<Self> {
        let d = Self::unchecked(source, target, values)?;
        d.validate()?;
        Ok(d)
    }

    pub fn from_fn(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        value: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let m = target.len();
        let values = (0..source.len() * m).map(|i| value(i / m, i % m)).collect();
        Self::new(source, target, values)
    }

    pub fn unchecked(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        values: Vec<Elem>,
    ) -> Result<Self> {
        if !same_quantaloid(source.quantaloid(), target.quantaloid()) {
            return Err(Error::QuantaloidMismatch);
        }
        if values.len() != source.len() * target.len() {
            return Err(Error::BadParameter(
                "value table does not match the categories".into(),
            ));
        }
        let q = source.quantaloid();
        for x in source.objects() {
            for y in target.objects() {
                let v = values[x * target.len() + y];
                if v >= q.hom(source.extent(x), target.extent(y)).len() {
                    return Err(Error::TypeMismatch(format!(
                        "φ({}, {}) is not an element of the right hom",
                        source.name(x),
                        target.name(y)
                    )));
                }
            }
        }
        Ok(QDistributor {
            source,
            target,
            values,
        })
    }

    /// The hom structure `a: X ⇸ X`, the identity distributor.
    pub fn identity(cat: Arc<QCategory>) -> Self {
        let values = cat.hom_table().to_vec();
        QDistributor {
            source: cat.clone(),
            target: cat,
            values,
        }
    }

    /// Every value bottom.
    pub fn bottom(source: Arc<QCategory>, target: Arc<QCategory>) -> Result<Self> {
        let q = source.quantaloid().clone();
        Self::from_fn(source.clone(), target.clone(), |x, y| {
            q.bottom(source.extent(x), target.extent(y))
        })
    }

    /// Checks `b(y, y') o φ(x, y) o a(x', x) <= φ(x', y')`, split into its
    /// two one-sided halves (equivalent given reflexivity of `a` and `b`), and
    /// then neutrality of both hom structures under composition.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&*self.source, &*self.target);
        let q = a.quantaloid();
        for x in a.objects() {
            for y in b.objects() {
                let v = self.value(x, y);
                for x2 in a.objects() {
                    let c = q.compose(a.extent(x2), a.extent(x), b.extent(y), v, a.hom(x2, x));
                    if !q.leq(a.extent(x2), b.extent(y), c, self.value(x2, y)) {
                        return Err(self.violation(x, x2, y, y));
                    }
                }
                for y2 in b.objects() {
                    let c = q.compose(a.extent(x), b.extent(y), b.extent(y2), b.hom(y, y2), v);
                    if !q.leq(a.extent(x), b.extent(y2), c, self.value(x, y2)) {
                        return Err(self.violation(x, x, y, y2));
                    }
                }
            }
        }
        let left = compose(self, &QDistributor::identity(self.source.clone()))?;
        let right = compose(&QDistributor::identity(self.target.clone()), self)?;
        if left.values != self.values || right.values != self.values {
            return Err(Error::IllDefined(
                "hom structures are not neutral for this distributor".into(),
            ));
        }
        Ok(())
    }

    fn violation(&self, x: usize, x2: usize, y: usize, y2: usize) -> Error {
        Error::BimoduleViolation {
            x: self.source.name(x).to_string(),
            x2: self.source.name(x2).to_string(),
            y: self.target.name(y).to_string(),
            y2: self.target.name(y2).to_string(),
        }
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> Elem {
        self.values[x * self.target.len() + y]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value_name(&self, x: usize, y: usize) -> &str {
        self.source
            .quantaloid()
            .hom(self.source.extent(x), self.target.extent(y))
            .name(self.value(x, y))
    }

    pub fn is_parallel(&self, other: &QDistributor) -> bool {
        same_cat(&self.source, &other.source) && same_cat(&self.target, &other.target)
    }
}

/// `(ψ o φ)(x, z) = ⋁_y ψ(y, z) o φ(x, y)`.
pub fn compose(psi: &QDistributor, phi: &QDistributor) -> Result<QDistributor> {
    if !same_cat(phi.target(), psi.source()) {
        return Err(Error::TypeMismatch(
            "distributors do not share the middle category".into(),
        ));
    }
    let (x, y, z) = (phi.source(), phi.target(), psi.target());
    let q = x.quantaloid();
    let mut values = Vec::with_capacity(x.len() * z.len());
    for i in x.objects() {
        for k in z.objects() {
            let (ei, ek) = (x.extent(i), z.extent(k));
            values.push(
                q.hom(ei, ek).join(
                    y.objects()
                        .map(|j| q.compose(ei, y.extent(j), ek, psi.value(j, k), phi.value(i, j))),
                ),
            );
        }
    }
    Ok(QDistributor {
        source: x.clone(),
        target: z.clone(),
        values,
    })
}

/// Pointwise order of parallel distributors.
pub fn dist_leq(phi: &QDistributor, other: &QDistributor) -> Result<bool> {
    if !phi.is_parallel(other) {
        return Err(Error::TypeMismatch("distributors are not parallel".into()));
    }
    let (x, y) = (phi.source(), phi.target());
    let q = x.quantaloid();
    Ok(x.objects().all(|i| {
        y.objects()
            .all(|j| q.leq(x.extent(i), y.extent(j), phi.value(i, j), other.value(i, j)))
    }))
}

/// The graphs of a functor `f: X -> Y`: `f_♮(x, y) = b(f x, y)` and
/// `f^♮(y, x) = b(y, f x)`.
pub fn graphs(f: &QFunctor) -> (QDistributor, QDistributor) {
    let (x, y) = (f.source(), f.target());
    let lower = (0..x.len() * y.len())
        .map(|i| y.hom(f.apply(i / y.len()), i % y.len()))
        .collect();
    let upper = (0..y.len() * x.len())
        .map(|i| y.hom(i / x.len(), f.apply(i % x.len())))
        .collect();
    (
        QDistributor {
            source: x.clone(),
            target: y.clone(),
            values: lower,
        },
        QDistributor {
            source: y.clone(),
            target: x.clone(),
            values: upper,
        },
    )
}

/// A presheaf of extent `s` on `X`: components `φ_x: |x| -> s` with
/// `φ_y o a(x, y) <= φ_x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    pub extent: Obj,
    pub components: Vec<Elem>,
}

impl Presheaf {
    pub fn is_valid(&self, base: &QCategory) -> bool {
        let q = base.quantaloid();
        base.objects().all(|x| {
            base.objects().all(|y| {
                let (ex, ey) = (base.extent(x), base.extent(y));
                let c = q.compose(ex, ey, self.extent, self.components[y], base.hom(x, y));
                q.leq(ex, self.extent, c, self.components[x])
            })
        })
    }

    /// `f*`: components read off along `f`, `(f* ψ)_x = ψ_{f x}`.
    pub fn pull_back(&self, f: &QFunctor) -> Presheaf {
        Presheaf {
            extent: self.extent,
            components: f.map().iter().map(|&fx| self.components[fx]).collect(),
        }
    }
}

/// The category `PX` of all presheaves on `X`, over every extent.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    pub base: Arc<QCategory>,
    pub category: Arc<QCategory>,
    pub presheaves: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
}

impl PresheafCategory {
    pub fn new(base: Arc<QCategory>) -> Result<Self> {
        Self::with_cap(base, presheaf_cap())
    }

    pub fn with_cap(base: Arc<QCategory>, cap: usize) -> Result<Self> {
        let presheaves = enumerate_presheaves(&base, cap)?;
        let q = base.quantaloid().clone();
        let names = presheaves.iter().map(|p| presheaf_name(&base, p)).collect();
        let extents: Vec<Obj> = presheaves.iter().map(|p| p.extent).collect();
        let n = presheaves.len();
        let mut hom = Vec::with_capacity(n * n);
        for phi in &presheaves {
            for psi in &presheaves {
                let (s, t) = (phi.extent, psi.extent);
                hom.push(q.hom(s, t).meet(base.objects().map(|x| {
                    q.residual_left(base.extent(x), s, t, psi.components[x], phi.components[x])
                })));
            }
        }
        let category = Arc::new(QCategory::unchecked(q, names, extents, hom)?);
        let index = presheaves
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(PresheafCategory {
            base,
            category,
            presheaves,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn index_of(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn locate(&self, p: &Presheaf) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::IllDefined("family is not a presheaf".into()))
    }

    /// `x ↦ a(-, x)` with extent `|x|`.
    pub fn yoneda(&self) -> Result<QFunctor> {
        let x = &self.base;
        let map = x
            .objects()
            .map(|i| {
                self.locate(&Presheaf {
                    extent: x.extent(i),
                    components: x.objects().map(|z| x.hom(z, i)).collect(),
                })
            })
            .collect::<Result<_>>()?;
        QFunctor::unchecked(x.clone(), self.category.clone(), map)
    }

    /// `[y(x), y(x')] = a(x, x')` for all objects.
    pub fn yoneda_fully_faithful(&self) -> Result<bool> {
        let y = self.yoneda()?;
        let x = &self.base;
        Ok(x.objects().all(|i| {
            x.objects()
                .all(|j| self.category.hom(y.apply(i), y.apply(j)) == x.hom(i, j))
        }))
    }
}

fn presheaf_name(base: &QCategory, p: &Presheaf) -> String {
    let q = base.quantaloid();
    let parts: Vec<&str> = base
        .objects()
        .map(|x| q.hom(base.extent(x), p.extent).name(p.components[x]))
        .collect();
    format!("[{}]@{}", parts.join(","), q.object_name(p.extent))
}

fn enumerate_presheaves(base: &QCategory, cap: usize) -> Result<Vec<Presheaf>> {
    let q = base.quantaloid();
    let n = base.len();
    let mut out = Vec::new();
    for s in q.objects() {
        let mut comps = vec![0; n];
        let mut stack = vec![0usize; n + 1];
        let mut depth = 0;
        // iterative backtracking over x = 0..n, trying each element of Q(|x|, s)
        loop {
            if depth == n {
                out.push(Presheaf {
                    extent: s,
                    components: comps.clone(),
                });
                if out.len() > cap {
                    return Err(Error::SizeCap {
                        what: "presheaf category".into(),
                        needed: out.len(),
                        cap,
                    });
                }
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            let x = depth;
            let choices = q.hom(base.extent(x), s).len();
            let mut placed = false;
            while stack[x] < choices {
                let c = stack[x];
                stack[x] += 1;
                comps[x] = c;
                if consistent(base, s, &comps, x) {
                    placed = true;
                    break;
                }
            }
            if placed {
                depth += 1;
                stack[depth.min(n)] = 0;
            } else {
                stack[x] = 0;
                if x == 0 {
                    break;
                }
                depth -= 1;
            }
        }
    }
    Ok(out)
}

/// Presheaf inequalities among objects `0..=x` that involve `x`.
fn consistent(base: &QCategory, s: Obj, comps: &[Elem], x: usize) -> bool {
    let q = base.quantaloid();
    let ex = base.extent(x);
    (0..=x).all(|y| {
        let ey = base.extent(y);
        let down = q.compose(ex, ey, s, comps[y], base.hom(x, y));
        let up = q.compose(ey, ex, s, comps[x], base.hom(y, x));
        q.leq(ex, s, down, comps[x]) && q.leq(ey, s, up, comps[y])
    })
}

/// `φ*: PY -> PX`, `(φ* ψ)_x = ⋁_y ψ_y o φ(x, y)`.
pub fn kan_star(
    phi: &QDistributor,
    px: &PresheafCategory,
    py: &PresheafCategory,
) -> Result<QFunctor> {
    if !same_cat(phi.source(), &px.base) || !same_cat(phi.target(), &py.base) {
        return Err(Error::TypeMismatch(
            "presheaf categories do not match the distributor".into(),
        ));
    }
    let (x, y) = (phi.source(), phi.target());
    let q = x.quantaloid();
    let map = py
        .presheaves
        .iter()
        .map(|psi| {
            let s = psi.extent;
            let components = x
                .objects()
                .map(|i| {
                    q.hom(x.extent(i), s).join(y.objects().map(|j| {
                        q.compose(
                            x.extent(i),
                            y.extent(j),
                            s,
                            psi.components[j],
                            phi.value(i, j),
                        )
                    }))
                })
                .collect();
            px.locate(&Presheaf {
                extent: s,
                components,
            })
        })
        .collect::<Result<_>>()?;
    QFunctor::unchecked(py.category.clone(), px.category.clone(), map)
}

/// `f* = (f_♮)*` through the simplified formula `(f* ψ)_x = ψ_{f x}`.
pub fn restriction(f: &QFunctor, px: &PresheafCategory, py: &PresheafCategory) -> Result<QFunctor> {
    if !same_cat(f.source(), &px.base) || !same_cat(f.target(), &py.base) {
        return Err(Error::TypeMismatch(
            "presheaf categories do not match the functor".into(),
        ));
    }
    let map = py
        .presheaves
        .iter()
        .map(|psi| px.locate(&psi.pull_back(f)))
        .collect::<Result<_>>()?;
    QFunctor::unchecked(py.category.clone(), px.category.clone(), map)
}

/// The transpose `φ~: Y -> PX`, `y ↦ φ(-, y)` of extent `|y|`.
pub fn transpose(phi: &QDistributor, px: &PresheafCategory) -> Result<QFunctor> {
    if !same_cat(phi.source(), &px.base) {
        return Err(Error::TypeMismatch(
            "presheaf category does not match the distributor".into(),
        ));
    }
    let (x, y) = (phi.source(), phi.target());
    let map = y
        .objects()
        .map(|j| {
            px.locate(&Presheaf {
                extent: y.extent(j),
                components: x.objects().map(|i| phi.value(i, j)).collect(),
            })
        })
        .collect::<Result<_>>()?;
    QFunctor::unchecked(y.clone(), px.category.clone(), map)
}
