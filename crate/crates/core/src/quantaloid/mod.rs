//! Finite quantaloids: small categories whose hom-sets are finite complete
//! lattices and whose composition preserves joins in each variable.
//!
//! Composition and both residuals are tabulated per object triple
//! `(q, r, s)`:
//!
//! * `compose(q, r, s, g, f)` for `g: r -> s`, `f: q -> r`, giving `q -> s`;
//! * `residual_left(q, r, s, d, u)` for `d: q -> s`, `u: q -> r`, giving the
//!   largest `z: r -> s` with `z o u <= d` (written `d ↙ u`);
//! * `residual_right(q, r, s, v, d)` for `v: r -> s`, `d: q -> s`, giving the
//!   largest `t: q -> r` with `v o t <= d` (written `v ↘ d`).

mod diagonal;

use std::collections::HashMap;
use std::fmt;

pub use diagonal::{Diagonal, MAX_DIAGONAL_MORPHISMS};

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Index of an object of a [`Quantaloid`].
pub type Obj = usize;

/// A morphism `dom -> cod` of a quantaloid, identified by its element in the
/// hom-lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub dom: Obj,
    pub cod: Obj,
    pub elem: Elem,
}

impl Arrow {
    pub fn new(dom: Obj, cod: Obj, elem: Elem) -> Self {
        Arrow { dom, cod, elem }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantaloid {
    objects: Vec<String>,
    index: HashMap<String, Obj>,
    homs: Vec<FiniteLattice>,
    identities: Vec<Elem>,
    compose: Vec<Vec<Elem>>,
    left_res: Vec<Vec<Elem>>,
    right_res: Vec<Vec<Elem>>,
}

impl Quantaloid {
    /// Assembles and validates a quantaloid. `homs` is indexed `q * n + r`
    /// for `Q(q, r)`. `compose(q, r, s, g, f)` must return the element of
    /// `Q(q, s)` for `g in Q(r, s)` and `f in Q(q, r)`.
    pub fn try_from_fn(
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        identities: Vec<Elem>,
        mut compose: impl FnMut(Obj, Obj, Obj, Elem, Elem) -> Result<Elem>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(Error::Duplicate(o.clone()));
            }
        }
        if homs.len() != n * n || identities.len() != n {
            return Err(Error::BadParameter(
                "hom and identity tables do not match the object count".into(),
            ));
        }
        for q in 0..n {
            if identities[q] >= homs[q * n + q].len() {
                return Err(Error::TypeMismatch(format!(
                    "identity on `{}` is not an element of its hom",
                    objects[q]
                )));
            }
        }
        let mut tables = Vec::with_capacity(n * n * n);
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let (qr, rs, qs) = (&homs[q * n + r], &homs[r * n + s], &homs[q * n + s]);
                    let mut table = Vec::with_capacity(rs.len() * qr.len());
                    for g in rs.elements() {
                        for f in qr.elements() {
                            let v = compose(q, r, s, g, f)?;
                            if v >= qs.len() {
                                return Err(Error::TypeMismatch(format!(
                                    "composite of {} and {} lies outside {}->{}",
                                    rs.name(g),
                                    qr.name(f),
                                    objects[q],
                                    objects[s]
                                )));
                            }
                            table.push(v);
                        }
                    }
                    tables.push(table);
                }
            }
        }
        let mut quantaloid = Quantaloid {
            objects,
            index,
            homs,
            identities,
            compose: tables,
            left_res: Vec::new(),
            right_res: Vec::new(),
        };
        quantaloid.check_unital()?;
        quantaloid.check_associative()?;
        quantaloid.check_sup_preserving()?;
        quantaloid.build_residuals();
        quantaloid.check_residuals()?;
        Ok(quantaloid)
    }

    /// The two-element quantale `{0 < 1}` with meet as composition.
    pub fn two() -> Self {
        let hom = FiniteLattice::new(&["0", "1"], &[("0", "1")]).expect("two-chain");
        Quantaloid::try_from_fn(vec!["*".into()], vec![hom], vec![1], |_, _, _, g, f| {
            Ok(g.min(f))
        })
        .expect("two is a quantale")
    }

    /// Truncated Lawvere quantale on `{0, ..., n}`: order is numeric `>=`,
    /// composition is `min(a + b, n)`, unit `0`. `n` plays the role of infinity.
    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("chain needs n >= 1".into()));
        }
        let names = (0..=n).map(|i| i.to_string()).collect();
        let hom = FiniteLattice::from_order(names, |a, b| a >= b)?;
        Quantaloid::try_from_fn(vec!["*".into()], vec![hom], vec![0], |_, _, _, g, f| {
            Ok((g + f).min(n))
        })
    }

    /// Resolves a builtin by name: `two`, or `chain` with a parameter.
    pub fn builtin(name: &str, n: Option<usize>) -> Result<Self> {
        match (name, n) {
            ("two", None) => Ok(Quantaloid::two()),
            ("two", Some(_)) => Err(Error::BadParameter("two takes no parameter".into())),
            ("chain", Some(n)) => Quantaloid::chain(n),
            ("chain", None) => Err(Error::BadParameter("chain needs a size".into())),
            (other, _) => Err(Error::BadParameter(format!("unknown builtin `{other}`"))),
        }
    }

    /// Parses `two`, `chain:5`, optionally prefixed by `builtin:`.
    pub fn from_builtin_spec(spec: &str) -> Result<Self> {
        let spec = spec.strip_prefix("builtin:").unwrap_or(spec);
        match spec.split_once(':') {
            None => Quantaloid::builtin(spec, None),
            Some((name, n)) => {
                let n = n
                    .parse()
                    .map_err(|_| Error::BadParameter(format!("`{n}` is not a size")))?;
                Quantaloid::builtin(name, Some(n))
            }
        }
    }

    /// Same objects, `Q^op(q, r) = Q(r, q)`, composition reversed.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mut homs = Vec::with_capacity(n * n);
        for q in 0..n {
            for r in 0..n {
                homs.push(self.hom(r, q).clone());
            }
        }
        Quantaloid::try_from_fn(
            self.objects.clone(),
            homs,
            self.identities.clone(),
            |q, r, s, g, f| Ok(self.compose(s, r, q, f, g)),
        )
        .expect("the opposite of a quantaloid is a quantaloid")
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn object_name(&self, q: Obj) -> &str {
        &self.objects[q]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.index.get(name).copied()
    }

    pub fn lookup_object(&self, name: &str) -> Result<Obj> {
        self.object_index(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn hom(&self, q: Obj, r: Obj) -> &FiniteLattice {
        &self.homs[q * self.len() + r]
    }

    pub fn identity(&self, q: Obj) -> Elem {
        self.identities[q]
    }

    pub fn top(&self, q: Obj, r: Obj) -> Elem {
        self.hom(q, r).top()
    }

    pub fn bottom(&self, q: Obj, r: Obj) -> Elem {
        self.hom(q, r).bottom()
    }

    #[inline]
    pub fn leq(&self, q: Obj, r: Obj, a: Elem, b: Elem) -> bool {
        self.hom(q, r).leq(a, b)
    }

    #[inline]
    fn triple(&self, q: Obj, r: Obj, s: Obj) -> usize {
        let n = self.len();
        (q * n + r) * n + s
    }

    /// `g o f` for `g: r -> s`, `f: q -> r`.
    #[inline]
    pub fn compose(&self, q: Obj, r: Obj, s: Obj, g: Elem, f: Elem) -> Elem {
        let width = self.hom(q, r).len();
        self.compose[self.triple(q, r, s)][g * width + f]
    }

    /// `d ↙ u` for `d: q -> s`, `u: q -> r`, an element of `Q(r, s)`.
    #[inline]
    pub fn residual_left(&self, q: Obj, r: Obj, s: Obj, d: Elem, u: Elem) -> Elem {
        let width = self.hom(q, r).len();
        self.left_res[self.triple(q, r, s)][d * width + u]
    }

    /// `v ↘ d` for `v: r -> s`, `d: q -> s`, an element of `Q(q, r)`.
    #[inline]
    pub fn residual_right(&self, q: Obj, r: Obj, s: Obj, v: Elem, d: Elem) -> Elem {
        let width = self.hom(q, s).len();
        self.right_res[self.triple(q, r, s)][v * width + d]
    }

    /// All morphisms, ordered by domain, codomain, then element.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.objects().flat_map(move |q| {
            self.objects()
                .flat_map(move |r| self.hom(q, r).elements().map(move |e| Arrow::new(q, r, e)))
        })
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(FiniteLattice::len).sum()
    }

    pub fn arrow(&self, dom: &str, cod: &str, elem: &str) -> Result<Arrow> {
        let (q, r) = (self.lookup_object(dom)?, self.lookup_object(cod)?);
        Ok(Arrow::new(q, r, self.hom(q, r).lookup(elem)?))
    }

    pub fn identity_arrow(&self, q: Obj) -> Arrow {
        Arrow::new(q, q, self.identity(q))
    }

    pub fn arrow_name(&self, a: Arrow) -> String {
        if self.len() == 1 {
            self.hom(a.dom, a.cod).name(a.elem).to_string()
        } else {
            format!(
                "{}:{}->{}",
                self.hom(a.dom, a.cod).name(a.elem),
                self.objects[a.dom],
                self.objects[a.cod]
            )
        }
    }

    pub fn compose_arrows(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        if f.cod != g.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} after {}",
                self.arrow_name(g),
                self.arrow_name(f)
            )));
        }
        let e = self.compose(f.dom, f.cod, g.cod, g.elem, f.elem);
        Ok(Arrow::new(f.dom, g.cod, e))
    }

    /// `d ↙ u`, defined when `dom u = dom d`.
    pub fn residual_left_arrows(&self, d: Arrow, u: Arrow) -> Result<Arrow> {
        if d.dom != u.dom {
            return Err(Error::TypeMismatch(format!(
                "{} and {} have different domains",
                self.arrow_name(d),
                self.arrow_name(u)
            )));
        }
        let e = self.residual_left(u.dom, u.cod, d.cod, d.elem, u.elem);
        Ok(Arrow::new(u.cod, d.cod, e))
    }

    /// `v ↘ d`, defined when `cod v = cod d`.
    pub fn residual_right_arrows(&self, v: Arrow, d: Arrow) -> Result<Arrow> {
        if v.cod != d.cod {
            return Err(Error::TypeMismatch(format!(
                "{} and {} have different codomains",
                self.arrow_name(v),
                self.arrow_name(d)
            )));
        }
        let e = self.residual_right(d.dom, v.dom, v.cod, v.elem, d.elem);
        Ok(Arrow::new(d.dom, v.dom, e))
    }

    fn check_unital(&self) -> Result<()> {
        for q in self.objects() {
            for r in self.objects() {
                let hom = self.hom(q, r);
                for f in hom.elements() {
                    let left = self.compose(q, r, r, self.identity(r), f);
                    if left != f {
                        return Err(Error::NotUnital {
                            object: self.objects[r].clone(),
                            detail: format!(
                                "{} o {} = {} != {}",
                                self.hom(r, r).name(self.identity(r)),
                                hom.name(f),
                                hom.name(left),
                                hom.name(f)
                            ),
                        });
                    }
                    let right = self.compose(q, q, r, f, self.identity(q));
                    if right != f {
                        return Err(Error::NotUnital {
                            object: self.objects[q].clone(),
                            detail: format!(
                                "{} o {} = {} != {}",
                                hom.name(f),
                                self.hom(q, q).name(self.identity(q)),
                                hom.name(right),
                                hom.name(f)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for p in self.objects() {
            for q in self.objects() {
                for r in self.objects() {
                    for s in self.objects() {
                        for h in self.hom(r, s).elements() {
                            for g in self.hom(q, r).elements() {
                                let hg = self.compose(q, r, s, h, g);
                                for f in self.hom(p, q).elements() {
                                    let lhs = self.compose(p, q, s, hg, f);
                                    let rhs = self.compose(p, r, s, h, self.compose(p, q, r, g, f));
                                    if lhs != rhs {
                                        return Err(Error::NotAssociative {
                                            h: self.hom(r, s).name(h).to_string(),
                                            g: self.hom(q, r).name(g).to_string(),
                                            f: self.hom(p, q).name(f).to_string(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Binary joins plus bottom suffice for arbitrary finite joins.
    fn check_sup_preserving(&self) -> Result<()> {
        for q in self.objects() {
            for r in self.objects() {
                for s in self.objects() {
                    let (qr, rs, qs) = (self.hom(q, r), self.hom(r, s), self.hom(q, s));
                    for g in rs.elements() {
                        if self.compose(q, r, s, g, qr.bottom()) != qs.bottom() {
                            return Err(Error::NotSupPreserving(format!(
                                "{} o bottom != bottom",
                                rs.name(g)
                            )));
                        }
                        for f1 in qr.elements() {
                            for f2 in qr.elements() {
                                let lhs = self.compose(q, r, s, g, qr.join2(f1, f2));
                                let rhs = qs.join2(
                                    self.compose(q, r, s, g, f1),
                                    self.compose(q, r, s, g, f2),
                                );
                                if lhs != rhs {
                                    return Err(Error::NotSupPreserving(format!(
                                        "{} o ({} v {}) != ({} o {}) v ({} o {})",
                                        rs.name(g),
                                        qr.name(f1),
                                        qr.name(f2),
                                        rs.name(g),
                                        qr.name(f1),
                                        rs.name(g),
                                        qr.name(f2)
                                    )));
                                }
                            }
                        }
                    }
                    for f in qr.elements() {
                        if self.compose(q, r, s, rs.bottom(), f) != qs.bottom() {
                            return Err(Error::NotSupPreserving(format!(
                                "bottom o {} != bottom",
                                qr.name(f)
                            )));
                        }
                        for g1 in rs.elements() {
                            for g2 in rs.elements() {
                                let lhs = self.compose(q, r, s, rs.join2(g1, g2), f);
                                let rhs = qs.join2(
                                    self.compose(q, r, s, g1, f),
                                    self.compose(q, r, s, g2, f),
                                );
                                if lhs != rhs {
                                    return Err(Error::NotSupPreserving(format!(
                                        "({} v {}) o {} != ({} o {}) v ({} o {})",
                                        rs.name(g1),
                                        rs.name(g2),
                                        qr.name(f),
                                        rs.name(g1),
                                        qr.name(f),
                                        rs.name(g2),
                                        qr.name(f)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Residuals as the join of all solutions; sup-preservation makes that
    /// join itself a solution, hence the maximum.
    fn build_residuals(&mut self) {
        let n = self.len();
        let mut left = Vec::with_capacity(n * n * n);
        let mut right = Vec::with_capacity(n * n * n);
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let (qr, rs, qs) = (self.hom(q, r), self.hom(r, s), self.hom(q, s));
                    let mut lt = Vec::with_capacity(qs.len() * qr.len());
                    for d in qs.elements() {
                        for u in qr.elements() {
                            lt.push(
                                rs.join(
                                    rs.elements()
                                        .filter(|&z| qs.leq(self.compose(q, r, s, z, u), d)),
                                ),
                            );
                        }
                    }
                    let mut rt = Vec::with_capacity(rs.len() * qs.len());
                    for v in rs.elements() {
                        for d in qs.elements() {
                            rt.push(
                                qr.join(
                                    qr.elements()
                                        .filter(|&t| qs.leq(self.compose(q, r, s, v, t), d)),
                                ),
                            );
                        }
                    }
                    left.push(lt);
                    right.push(rt);
                }
            }
        }
        self.left_res = left;
        self.right_res = right;
    }

    /// Verifies `z <= d ↙ u  <=>  z o u <= d` and `t <= v ↘ d  <=>  v o t <= d`
    /// for every element triple.
    pub fn check_residuals(&self) -> Result<()> {
        for q in self.objects() {
            for r in self.objects() {
                for s in self.objects() {
                    let (qr, rs, qs) = (self.hom(q, r), self.hom(r, s), self.hom(q, s));
                    for d in qs.elements() {
                        for u in qr.elements() {
                            let res = self.residual_left(q, r, s, d, u);
                            for z in rs.elements() {
                                if rs.leq(z, res) != qs.leq(self.compose(q, r, s, z, u), d) {
                                    return Err(Error::ResidualViolation(format!(
                                        "left residual {} ↙ {} at z = {}",
                                        qs.name(d),
                                        qr.name(u),
                                        rs.name(z)
                                    )));
                                }
                            }
                        }
                        for v in rs.elements() {
                            let res = self.residual_right(q, r, s, v, d);
                            for t in qr.elements() {
                                if qr.leq(t, res) != qs.leq(self.compose(q, r, s, v, t), d) {
                                    return Err(Error::ResidualViolation(format!(
                                        "right residual {} ↘ {} at t = {}",
                                        rs.name(v),
                                        qs.name(d),
                                        qr.name(t)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Quantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quantaloid with {} object(s) and {} morphism(s)",
            self.len(),
            self.morphism_count()
        )
    }
}
