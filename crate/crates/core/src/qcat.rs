//! Categories enriched in a finite quantaloid, their functors, and the small
//! limits and colimits of such categories.
//!
//! Limits are initial structures: product and equalizer carry the meet of the
//! structures pulled back along the legs. Colimits are final structures: the
//! coproduct puts bottom between summands and the coequalizer joins all
//! composable chains through the quotient classes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantaloid::{Obj, Quantaloid};

/// A small `Q`-category: objects with extents in `ob Q` and hom-arrows
/// `a(x, y): |x| -> |y|`.
#[derive(Clone, Debug)]
pub struct QCategory {
    quantaloid: Arc<Quantaloid>,
    names: Vec<String>,
    index: HashMap<String, usize>,
    extents: Vec<Obj>,
    hom: Vec<Elem>,
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        same_quantaloid(&self.quantaloid, &other.quantaloid)
            && self.names == other.names
            && self.extents == other.extents
            && self.hom == other.hom
    }
}

impl Eq for QCategory {}

pub fn same_quantaloid(a: &Arc<Quantaloid>, b: &Arc<Quantaloid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl QCategory {
    /// Builds and validates a category; `hom` is row-major, `hom[x * n + y]`.
    pub fn new(
        quantaloid: Arc<Quantaloid>,
        names: Vec<String>,
        extents: Vec<Obj>,
        hom: Vec<Elem>,
    ) -> Result<Self> {
        let cat = Self::unchecked(quantaloid, names, extents, hom)?;
        cat.validate()?;
        Ok(cat)
    }

    pub fn from_fn(
        quantaloid: Arc<Quantaloid>,
        names: Vec<String>,
        extents: Vec<Obj>,
        hom: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let n = names.len();
        let table = (0..n * n).map(|i| hom(i / n, i % n)).collect();
        Self::new(quantaloid, names, extents, table)
    }

    /// Type-checks the data without testing the category axioms. Used for
    /// structures that hold by construction and for deliberately broken
    /// inputs.
    pub fn unchecked(
        quantaloid: Arc<Quantaloid>,
        names: Vec<String>,
        extents: Vec<Obj>,
        hom: Vec<Elem>,
    ) -> Result<Self> {
        let n = names.len();
        if extents.len() != n || hom.len() != n * n {
            return Err(Error::BadParameter(
                "extent or hom table does not match the object count".into(),
            ));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
        for (i, &q) in extents.iter().enumerate() {
            if q >= quantaloid.len() {
                return Err(Error::TypeMismatch(format!(
                    "extent of `{}` is not an object",
                    names[i]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if hom[x * n + y] >= quantaloid.hom(extents[x], extents[y]).len() {
                    return Err(Error::TypeMismatch(format!(
                        "a({}, {}) is not an element of {}->{}",
                        names[x],
                        names[y],
                        quantaloid.object_name(extents[x]),
                        quantaloid.object_name(extents[y])
                    )));
                }
            }
        }
        Ok(QCategory {
            quantaloid,
            names,
            index,
            extents,
            hom,
        })
    }

    /// Checks `1 <= a(x, x)` and `a(y, z) o a(x, y) <= a(x, z)`.
    pub fn validate(&self) -> Result<()> {
        let q = &*self.quantaloid;
        for x in self.objects() {
            let e = self.extent(x);
            if !q.leq(e, e, q.identity(e), self.hom(x, x)) {
                return Err(Error::ReflexivityViolation(self.names[x].clone()));
            }
        }
        for x in self.objects() {
            for y in self.objects() {
                let axy = self.hom(x, y);
                for z in self.objects() {
                    let (ex, ey, ez) = (self.extent(x), self.extent(y), self.extent(z));
                    let comp = q.compose(ex, ey, ez, self.hom(y, z), axy);
                    if !q.leq(ex, ez, comp, self.hom(x, z)) {
                        return Err(Error::TransitivityViolation {
                            x: self.names[x].clone(),
                            y: self.names[y].clone(),
                            z: self.names[z].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.quantaloid
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn extent(&self, x: usize) -> Obj {
        self.extents[x]
    }

    pub fn extents(&self) -> &[Obj] {
        &self.extents
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> Elem {
        self.hom[x * self.len() + y]
    }

    pub fn hom_table(&self) -> &[Elem] {
        &self.hom
    }

    /// Name of the element `a(x, y)` in its hom-lattice.
    pub fn hom_name(&self, x: usize, y: usize) -> &str {
        self.quantaloid
            .hom(self.extent(x), self.extent(y))
            .name(self.hom(x, y))
    }

    /// The same objects with transposed homs, over the opposite quantaloid.
    pub fn opposite(&self) -> QCategory {
        self.opposite_over(Arc::new(self.quantaloid.opposite()))
    }

    /// As [`opposite`](Self::opposite) with a precomputed `Q^op`.
    pub fn opposite_over(&self, op: Arc<Quantaloid>) -> QCategory {
        let n = self.len();
        let hom = (0..n * n).map(|i| self.hom(i % n, i / n)).collect();
        QCategory::unchecked(op, self.names.clone(), self.extents.clone(), hom)
            .expect("transposed homs are well typed")
    }

    /// Full substructure on the given objects, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> QCategory {
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let extents = keep.iter().map(|&x| self.extents[x]).collect();
        let hom = keep
            .iter()
            .flat_map(|&x| keep.iter().map(move |&y| self.hom(x, y)))
            .collect();
        QCategory::unchecked(self.quantaloid.clone(), names, extents, hom)
            .expect("restriction is well typed")
    }
}

impl fmt::Display for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q-category with {} object(s)", self.len())
    }
}

/// Discrete or indiscrete structure on a set over `ob Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeMode {
    Discrete,
    Indiscrete,
}

/// Discrete: identities on the diagonal, bottom elsewhere. Indiscrete: top
/// everywhere.
pub fn free_structure(
    mode: FreeMode,
    quantaloid: Arc<Quantaloid>,
    names: Vec<String>,
    extents: Vec<Obj>,
) -> Result<QCategory> {
    let n = names.len();
    for &e in &extents {
        if e >= quantaloid.len() {
            return Err(Error::TypeMismatch("extent is not an object".into()));
        }
    }
    let hom = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let (ex, ey) = (extents[x], extents[y]);
            match mode {
                FreeMode::Discrete if x == y => quantaloid.identity(ex),
                FreeMode::Discrete => quantaloid.bottom(ex, ey),
                FreeMode::Indiscrete => quantaloid.top(ex, ey),
            }
        })
        .collect();
    QCategory::unchecked(quantaloid, names, extents, hom)
}

/// A `Q`-functor: an extent-preserving, hom-increasing map.
#[derive(Clone, Debug)]
pub struct QFunctor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    map: Vec<usize>,
}

impl PartialEq for QFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for QFunctor {}

impl QFunctor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        let f = Self::unchecked(source, target, map)?;
        f.validate()?;
        Ok(f)
    }

    /// Type-checks the map only.
    pub fn unchecked(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if !same_quantaloid(source.quantaloid(), target.quantaloid()) {
            return Err(Error::QuantaloidMismatch);
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::TypeMismatch(
                "map does not send every source object to a target object".into(),
            ));
        }
        Ok(QFunctor {
            source,
            target,
            map,
        })
    }

    pub fn identity(cat: Arc<QCategory>) -> Self {
        let map = cat.objects().collect();
        QFunctor {
            source: cat.clone(),
            target: cat,
            map,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&*self.source, &*self.target);
        let q = a.quantaloid();
        for x in a.objects() {
            if a.extent(x) != b.extent(self.map[x]) {
                return Err(Error::ExtentMismatch(
                    a.name(x).to_string(),
                    b.name(self.map[x]).to_string(),
                ));
            }
        }
        for x in a.objects() {
            for y in a.objects() {
                let (fx, fy) = (self.map[x], self.map[y]);
                if !q.leq(a.extent(x), a.extent(y), a.hom(x, y), b.hom(fx, fy)) {
                    return Err(Error::NotMonotone {
                        x: a.name(x).to_string(),
                        y: a.name(y).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &QFunctor) -> Result<QFunctor> {
        if !(Arc::ptr_eq(first.target(), &self.source) || **first.target() == *self.source) {
            return Err(Error::TypeMismatch("functors are not composable".into()));
        }
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        Ok(QFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    pub fn is_parallel(&self, other: &QFunctor) -> bool {
        (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

/// Functor order: `f <= g` iff `1_{|x|} <= b(f x, g x)` for every `x`.
pub fn functor_leq(f: &QFunctor, g: &QFunctor) -> Result<bool> {
    if !f.is_parallel(g) {
        return Err(Error::TypeMismatch("functors are not parallel".into()));
    }
    let (a, b) = (f.source(), f.target());
    let q = a.quantaloid();
    Ok(a.objects().all(|x| {
        let e = a.extent(x);
        q.leq(e, e, q.identity(e), b.hom(f.apply(x), g.apply(x)))
    }))
}

/// A limit cone: legs run from the apex into the diagram.
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: Arc<QCategory>,
    pub legs: Vec<QFunctor>,
}

/// A colimit cocone: legs run from the diagram into the nadir.
#[derive(Clone, Debug)]
pub struct Cocone {
    pub nadir: Arc<QCategory>,
    pub legs: Vec<QFunctor>,
}

/// Fibred product over `ob Q` with the meet structure. The empty family gives
/// the terminal category `(ob Q, ⊤)`.
pub fn product(quantaloid: &Arc<Quantaloid>, family: &[Arc<QCategory>]) -> Result<Cone> {
    for c in family {
        if !same_quantaloid(c.quantaloid(), quantaloid) {
            return Err(Error::QuantaloidMismatch);
        }
    }
    let q = &**quantaloid;
    let mut tuples: Vec<(Vec<usize>, Obj)> = Vec::new();
    for ext in q.objects() {
        let fibres: Vec<Vec<usize>> = family
            .iter()
            .map(|c| c.objects().filter(|&x| c.extent(x) == ext).collect())
            .collect();
        for_each_tuple(&fibres, |t| tuples.push((t.to_vec(), ext)));
    }
    let names = tuples
        .iter()
        .map(|(t, ext)| {
            let parts: Vec<&str> = t.iter().zip(family).map(|(&x, c)| c.name(x)).collect();
            format!("({})@{}", parts.join(","), q.object_name(*ext))
        })
        .collect();
    let extents: Vec<Obj> = tuples.iter().map(|(_, e)| *e).collect();
    let n = tuples.len();
    let mut hom = Vec::with_capacity(n * n);
    for (xs, ex) in &tuples {
        for (ys, ey) in &tuples {
            let lattice = q.hom(*ex, *ey);
            hom.push(lattice.meet(family.iter().enumerate().map(|(i, c)| c.hom(xs[i], ys[i]))));
        }
    }
    let apex = Arc::new(QCategory::unchecked(
        quantaloid.clone(),
        names,
        extents,
        hom,
    )?);
    let legs = family
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let map = tuples.iter().map(|(t, _)| t[i]).collect();
            QFunctor::unchecked(apex.clone(), c.clone(), map)
        })
        .collect::<Result<_>>()?;
    Ok(Cone { apex, legs })
}

/// Disjoint union with bottom between summands; objects are named
/// `i:x` for `x` in the `i`-th summand. The empty family gives `∅`.
pub fn coproduct(quantaloid: &Arc<Quantaloid>, family: &[Arc<QCategory>]) -> Result<Cocone> {
    for c in family {
        if !same_quantaloid(c.quantaloid(), quantaloid) {
            return Err(Error::QuantaloidMismatch);
        }
    }
    let q = &**quantaloid;
    let mut tagged: Vec<(usize, usize)> = Vec::new();
    for (i, c) in family.iter().enumerate() {
        tagged.extend(c.objects().map(|x| (i, x)));
    }
    let names = tagged
        .iter()
        .map(|&(i, x)| format!("{i}:{}", family[i].name(x)))
        .collect();
    let extents: Vec<Obj> = tagged.iter().map(|&(i, x)| family[i].extent(x)).collect();
    let n = tagged.len();
    let mut hom = Vec::with_capacity(n * n);
    for (a, &(i, x)) in tagged.iter().enumerate() {
        for (b, &(j, y)) in tagged.iter().enumerate() {
            hom.push(if i == j {
                family[i].hom(x, y)
            } else {
                q.bottom(extents[a], extents[b])
            });
        }
    }
    let nadir = Arc::new(QCategory::unchecked(
        quantaloid.clone(),
        names,
        extents,
        hom,
    )?);
    let mut offset = 0;
    let mut legs = Vec::with_capacity(family.len());
    for c in family {
        let map = (offset..offset + c.len()).collect();
        offset += c.len();
        legs.push(QFunctor::unchecked(c.clone(), nadir.clone(), map)?);
    }
    Ok(Cocone { nadir, legs })
}

/// Full substructure on `{x : f x = g x}`.
pub fn equalizer(f: &QFunctor, g: &QFunctor) -> Result<Cone> {
    if !f.is_parallel(g) {
        return Err(Error::TypeMismatch("functors are not parallel".into()));
    }
    let x = f.source();
    let keep: Vec<usize> = x.objects().filter(|&i| f.apply(i) == g.apply(i)).collect();
    let apex = Arc::new(x.restrict(&keep));
    let inclusion = QFunctor::unchecked(apex.clone(), x.clone(), keep)?;
    Ok(Cone {
        apex,
        legs: vec![inclusion],
    })
}

/// Quotient of the target by the least equivalence with `f x ~ g x`. The
/// hom between classes joins every chain `b(y_n, y'_n) o ... o b(y_1, y'_1)`
/// whose consecutive links meet in the same class; it is the least fixpoint
/// of `c = c0 ∨ (c o c0)` with `c0` the join of member homs.
pub fn coequalizer(f: &QFunctor, g: &QFunctor) -> Result<Cocone> {
    if !f.is_parallel(g) {
        return Err(Error::TypeMismatch("functors are not parallel".into()));
    }
    let y = f.target();
    let n = y.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in f.source().objects() {
        let (a, b) = (find(&mut parent, f.apply(x)), find(&mut parent, g.apply(x)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of = vec![0; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        *slot = c;
    }
    let names: Vec<String> = classes
        .iter()
        .map(|members| {
            if members.len() == 1 {
                y.name(members[0]).to_string()
            } else {
                let mut ns: Vec<&str> = members.iter().map(|&m| y.name(m)).collect();
                ns.sort_unstable();
                format!("{{{}}}", ns.join(","))
            }
        })
        .collect();
    let extents: Vec<Obj> = classes.iter().map(|m| y.extent(m[0])).collect();
    let hom = quotient_fixpoint(y, &classes, &extents).0;
    let nadir = Arc::new(QCategory::unchecked(
        y.quantaloid().clone(),
        names,
        extents,
        hom,
    )?);
    let projection = QFunctor::unchecked(y.clone(), nadir.clone(), class_of)?;
    Ok(Cocone {
        nadir,
        legs: vec![projection],
    })
}

/// Returns the quotient hom table and the number of iterations used.
pub(crate) fn quotient_fixpoint(
    y: &QCategory,
    classes: &[Vec<usize>],
    extents: &[Obj],
) -> (Vec<Elem>, usize) {
    let q = y.quantaloid();
    let k = classes.len();
    let mut c0 = Vec::with_capacity(k * k);
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let lattice = q.hom(extents[i], extents[j]);
            c0.push(
                lattice.join(
                    ci.iter()
                        .flat_map(|&a| cj.iter().map(move |&b| y.hom(a, b))),
                ),
            );
        }
    }
    let mut c = c0.clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut next = Vec::with_capacity(k * k);
        for i in 0..k {
            for l in 0..k {
                let lattice = q.hom(extents[i], extents[l]);
                let chains = (0..k).map(|j| {
                    q.compose(
                        extents[i],
                        extents[j],
                        extents[l],
                        c[j * k + l],
                        c0[i * k + j],
                    )
                });
                next.push(lattice.join(std::iter::once(c0[i * k + l]).chain(chains)));
            }
        }
        if next == c {
            return (c, iterations);
        }
        c = next;
    }
}

/// Calls `visit` on every tuple picking one entry from each list.
pub(crate) fn for_each_tuple(lists: &[Vec<usize>], mut visit: impl FnMut(&[usize])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0; lists.len()];
    let mut cur: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&cur);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                cur[k] = lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = lists[k][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<Quantaloid> {
        Arc::new(Quantaloid::two())
    }

    fn chain5() -> Arc<Quantaloid> {
        Arc::new(Quantaloid::chain(5).unwrap())
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    /// Preorder over `two` from a predicate.
    fn poset(
        q: &Arc<Quantaloid>,
        ns: &[&str],
        le: impl Fn(usize, usize) -> bool,
    ) -> Arc<QCategory> {
        let n = ns.len();
        Arc::new(
            QCategory::from_fn(q.clone(), names(ns), vec![0; n], |x, y| le(x, y) as usize).unwrap(),
        )
    }

    /// Metric over a one-object quantale given by a distance table.
    fn metric(q: &Arc<Quantaloid>, ns: &[&str], d: &[&[usize]]) -> Arc<QCategory> {
        let n = ns.len();
        Arc::new(QCategory::from_fn(q.clone(), names(ns), vec![0; n], |x, y| d[x][y]).unwrap())
    }

    #[test]
    fn discrete_and_indiscrete() {
        let q = two();
        let d = free_structure(
            FreeMode::Discrete,
            q.clone(),
            names(&["x", "y"]),
            vec![0, 0],
        )
        .unwrap();
        d.validate().unwrap();
        assert_eq!(d.hom_table(), &[1, 0, 0, 1]);
        let c = chain5();
        let i = free_structure(
            FreeMode::Indiscrete,
            c.clone(),
            names(&["x", "y"]),
            vec![0, 0],
        )
        .unwrap();
        i.validate().unwrap();
        assert!(i
            .objects()
            .all(|x| i.objects().all(|y| i.hom_name(x, y) == "0")));
    }

    #[test]
    fn poset_validates_and_reflexivity_in_reversed_order() {
        poset(&two(), &["a", "b", "c"], |x, y| x <= y);
        let err = QCategory::from_fn(chain5(), names(&["x"]), vec![0], |_, _| 2).unwrap_err();
        assert_eq!(err, Error::ReflexivityViolation("x".into()));
        let err = QCategory::from_fn(chain5(), names(&["x", "y", "z"]), vec![0; 3], |x, y| {
            if x == y {
                0
            } else if (x, y) == (0, 2) {
                4
            } else {
                1
            }
        })
        .unwrap_err();
        assert_eq!(err.kind(), "TransitivityViolation");
    }

    #[test]
    fn functor_validation() {
        let q = two();
        let c = poset(&q, &["lo", "hi"], |x, y| x <= y);
        QFunctor::new(c.clone(), c.clone(), vec![0, 1]).unwrap();
        let err = QFunctor::new(c.clone(), c.clone(), vec![1, 0]).unwrap_err();
        assert_eq!(err.kind(), "NotMonotone");

        let m = chain5();
        let x = metric(&m, &["p", "q"], &[&[0, 1], &[1, 0]]);
        let y = metric(&m, &["p", "q"], &[&[0, 3], &[3, 0]]);
        let err = QFunctor::new(x, y, vec![0, 1]).unwrap_err();
        assert_eq!(
            err,
            Error::NotMonotone {
                x: "p".into(),
                y: "q".into()
            }
        );
    }

    #[test]
    fn extent_mismatch_detected() {
        let d = Arc::new(
            crate::quantaloid::Diagonal::new(&Quantaloid::two())
                .unwrap()
                .quantaloid,
        );
        let a = Arc::new(
            free_structure(FreeMode::Discrete, d.clone(), names(&["x"]), vec![0]).unwrap(),
        );
        let b = Arc::new(
            free_structure(FreeMode::Discrete, d.clone(), names(&["y"]), vec![1]).unwrap(),
        );
        assert_eq!(
            QFunctor::new(a, b, vec![0]).unwrap_err(),
            Error::ExtentMismatch("x".into(), "y".into())
        );
    }

    #[test]
    fn terminal_over_two() {
        let q = two();
        let t = product(&q, &[]).unwrap();
        assert_eq!(t.apex.names(), ["()@*"]);
        assert_eq!(t.apex.hom(0, 0), 1);
    }

    #[test]
    fn sup_metric_product() {
        let m = chain5();
        let x1 = metric(&m, &["a", "b", "c"], &[&[0, 1, 3], &[2, 0, 2], &[3, 1, 0]]);
        let x2 = metric(&m, &["u", "v"], &[&[0, 4], &[1, 0]]);
        let p = product(&m, &[x1.clone(), x2.clone()]).unwrap();
        assert_eq!(p.apex.len(), 6);
        p.apex.validate().unwrap();
        for s in p.apex.objects() {
            for t in p.apex.objects() {
                let (a1, a2) = (p.legs[0].apply(s), p.legs[1].apply(s));
                let (b1, b2) = (p.legs[0].apply(t), p.legs[1].apply(t));
                assert_eq!(p.apex.hom(s, t), x1.hom(a1, b1).max(x2.hom(a2, b2)));
            }
        }
        for leg in &p.legs {
            leg.validate().unwrap();
        }
        assert_eq!(p.apex.name(1), "(a,v)@*");
    }

    #[test]
    fn product_with_empty_category_is_empty() {
        let q = two();
        let x = poset(&q, &["a", "b"], |x, y| x <= y);
        let e = Arc::new(QCategory::new(q.clone(), vec![], vec![], vec![]).unwrap());
        assert!(product(&q, &[x, e]).unwrap().apex.is_empty());
    }

    #[test]
    fn coproducts() {
        let q = two();
        let s1 = poset(&q, &["p"], |_, _| true);
        let s2 = poset(&q, &["p"], |_, _| true);
        let c = coproduct(&q, &[s1, s2]).unwrap();
        c.nadir.validate().unwrap();
        assert_eq!(c.nadir.names(), ["0:p", "1:p"]);
        assert_eq!(c.nadir.hom_table(), &[1, 0, 0, 1]);
        for leg in &c.legs {
            leg.validate().unwrap();
        }
        let x = poset(&q, &["a", "b"], |x, y| x <= y);
        let e = Arc::new(QCategory::new(q.clone(), vec![], vec![], vec![]).unwrap());
        let c = coproduct(&q, &[e, x.clone()]).unwrap();
        assert_eq!(c.nadir.hom_table(), x.hom_table());
        assert!(coproduct(&q, &[]).unwrap().nadir.is_empty());
    }

    #[test]
    fn equalizers() {
        let q = two();
        let x = Arc::new(
            free_structure(
                FreeMode::Discrete,
                q.clone(),
                names(&["a", "b"]),
                vec![0, 0],
            )
            .unwrap(),
        );
        let y = poset(&q, &["lo", "hi"], |x, y| x <= y);
        let f = QFunctor::new(x.clone(), y.clone(), vec![0, 0]).unwrap();
        let g = QFunctor::new(x.clone(), y.clone(), vec![0, 1]).unwrap();
        let e = equalizer(&f, &g).unwrap();
        assert_eq!(e.apex.names(), ["a"]);
        e.legs[0].validate().unwrap();
        let same = equalizer(&f, &f).unwrap();
        assert_eq!(*same.apex, *x);
    }

    #[test]
    fn coequalizer_glues_chain_ends() {
        let q = two();
        let one = poset(&q, &["pt"], |_, _| true);
        let y = poset(&q, &["y1", "y2"], |x, y| x <= y);
        let f = QFunctor::new(one.clone(), y.clone(), vec![0]).unwrap();
        let g = QFunctor::new(one.clone(), y.clone(), vec![1]).unwrap();
        let c = coequalizer(&f, &g).unwrap();
        assert_eq!(c.nadir.names(), ["{y1,y2}"]);
        assert_eq!(c.nadir.hom(0, 0), 1);
        c.legs[0].validate().unwrap();
        let same = coequalizer(&f, &f).unwrap();
        assert_eq!(*same.nadir, *y);
    }

    /// Enumerates every chain of at most `max_len` links through the classes
    /// and joins their composites; independent of the fixpoint iteration.
    fn chain_join_oracle(y: &QCategory, class_of: &[usize], k: usize, max_len: usize) -> Vec<Elem> {
        let q = y.quantaloid();
        let n = y.len();
        let ext = |c: usize| y.extent((0..n).find(|&i| class_of[i] == c).unwrap());
        let mut best: Vec<Elem> = (0..k * k)
            .map(|i| q.bottom(ext(i / k), ext(i % k)))
            .collect();
        // paths of links (y_i, y'_i); state = (start class, current end object, value)
        let mut frontier: Vec<(usize, usize, Elem)> = Vec::new();
        for (a, &ca) in class_of.iter().enumerate() {
            for b in 0..n {
                frontier.push((ca, b, y.hom(a, b)));
            }
        }
        for _ in 0..max_len {
            let mut next = Vec::new();
            for &(start, end, v) in &frontier {
                let (s, e) = (start, class_of[end]);
                let lat = q.hom(ext(s), ext(e));
                best[s * k + e] = lat.join2(best[s * k + e], v);
                for a in (0..n).filter(|&a| class_of[a] == class_of[end]) {
                    for b in 0..n {
                        let w = q.compose(ext(s), y.extent(a), y.extent(b), y.hom(a, b), v);
                        next.push((start, b, w));
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        best
    }

    #[test]
    fn coequalizer_of_metric_matches_chain_enumeration() {
        let m = chain5();
        // glue p to r; the only way from q to s is through the glued point
        let y = metric(
            &m,
            &["p", "q", "r", "s"],
            &[&[0, 5, 5, 5], &[1, 0, 5, 5], &[5, 5, 0, 2], &[5, 5, 5, 0]],
        );
        let one = metric(&m, &["pt"], &[&[0]]);
        let f = QFunctor::new(one.clone(), y.clone(), vec![0]).unwrap();
        let g = QFunctor::new(one.clone(), y.clone(), vec![2]).unwrap();
        let c = coequalizer(&f, &g).unwrap();
        c.nadir.validate().unwrap();
        c.legs[0].validate().unwrap();
        let k = c.nadir.len();
        let oracle = chain_join_oracle(&y, c.legs[0].map(), k, 4);
        assert_eq!(c.nadir.hom_table(), &oracle[..]);
        // q to s: 1 (q -> p) then 2 (r -> s) = 3
        let (qc, sc) = (c.legs[0].apply(1), c.legs[0].apply(3));
        assert_eq!(c.nadir.hom_name(qc, sc), "3");
    }

    #[test]
    fn fixpoint_iteration_bound() {
        let m = chain5();
        let y = metric(
            &m,
            &["a", "b", "c", "d"],
            &[&[0, 1, 5, 5], &[5, 0, 5, 5], &[5, 5, 0, 1], &[5, 5, 5, 0]],
        );
        let classes = vec![vec![0], vec![1, 2], vec![3]];
        let extents = vec![0, 0, 0];
        let (table, iterations) = quotient_fixpoint(&y, &classes, &extents);
        assert!(iterations <= 6 * 3 * 3);
        assert_eq!(table[2], 2);
    }

    #[test]
    fn functor_order() {
        let q = two();
        let c = poset(&q, &["lo", "hi"], |x, y| x <= y);
        let lo = QFunctor::new(c.clone(), c.clone(), vec![0, 0]).unwrap();
        let id = QFunctor::identity(c.clone());
        let hi = QFunctor::new(c.clone(), c.clone(), vec![1, 1]).unwrap();
        assert!(functor_leq(&lo, &id).unwrap());
        assert!(functor_leq(&id, &hi).unwrap());
        assert!(!functor_leq(&hi, &lo).unwrap());
        assert!(functor_leq(&id, &id).unwrap());

        let m = chain5();
        let x = metric(&m, &["p", "q"], &[&[0, 1], &[2, 0]]);
        let f = QFunctor::identity(x.clone());
        let g = QFunctor::new(x.clone(), x.clone(), vec![0, 0]).unwrap();
        // f <= g iff b(f x, g x) = 0 everywhere; b(q, p) = 2
        assert!(!functor_leq(&f, &g).unwrap());
        assert!(functor_leq(&g, &g).unwrap());
        let y = metric(&m, &["p", "q"], &[&[0, 0], &[2, 0]]);
        let f = QFunctor::identity(y.clone());
        let g = QFunctor::new(y.clone(), y.clone(), vec![1, 1]).unwrap();
        assert!(functor_leq(&f, &g).unwrap());
    }

    #[test]
    fn opposite_category_is_involutive() {
        let q = two();
        let c = poset(&q, &["lo", "hi"], |x, y| x <= y);
        let op = c.opposite();
        op.validate().unwrap();
        assert_eq!(op.hom_table(), &[1, 0, 1, 1]);
        assert_eq!(op.opposite(), *c);

        let d = Arc::new(
            crate::quantaloid::Diagonal::new(&Quantaloid::chain(2).unwrap())
                .unwrap()
                .quantaloid,
        );
        let x = QCategory::from_fn(d.clone(), names(&["a", "b"]), vec![1, 2], |x, y| {
            if x == y {
                d.identity([1, 2][x])
            } else {
                d.bottom([1, 2][x], [1, 2][y])
            }
        })
        .unwrap();
        let op = x.opposite();
        op.validate().unwrap();
        assert_eq!(op.opposite(), x);
    }

    #[test]
    fn maps_into_free_structures_are_functors() {
        let q = two();
        let z = poset(&q, &["a", "b", "c"], |x, y| x <= y);
        let disc = Arc::new(
            free_structure(
                FreeMode::Discrete,
                q.clone(),
                names(&["u", "v"]),
                vec![0, 0],
            )
            .unwrap(),
        );
        let ind = Arc::new(
            free_structure(
                FreeMode::Indiscrete,
                q.clone(),
                names(&["u", "v"]),
                vec![0, 0],
            )
            .unwrap(),
        );
        // every map out of a discrete category, every map into an indiscrete one
        for m in 0..8usize {
            let map = vec![m & 1, (m >> 1) & 1, (m >> 2) & 1];
            assert!(QFunctor::new(z.clone(), ind.clone(), map.clone()).is_ok());
            let back: Vec<usize> = vec![m % 3, (m / 3) % 3];
            assert!(QFunctor::new(disc.clone(), z.clone(), back).is_ok());
        }
    }
}
