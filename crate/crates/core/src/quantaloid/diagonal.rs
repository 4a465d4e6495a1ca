//! The quantaloid of diagonals.
//!
//! Objects are the morphisms of the base quantaloid. A diagonal from `u` to
//! `v` is a morphism `d: dom u -> cod v` with `(d ↙ u) o u = d = v o (v ↘ d)`;
//! these form a join-closed subset of `Q(dom u, cod v)`. Composition of
//! `d: u ⇸ v` with `e: v ⇸ w` is `(e ↙ v) o d`, which equals `e o (v ↘ d)`.

use super::{Arrow, Obj, Quantaloid};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Largest base quantaloid (counted in morphisms) we build diagonals for.
pub const MAX_DIAGONAL_MORPHISMS: usize = 64;

#[derive(Clone, Debug)]
pub struct Diagonal {
    pub quantaloid: Quantaloid,
    /// Object `i` of the diagonal quantaloid is the base arrow `objects[i]`.
    pub objects: Vec<Arrow>,
    /// For each hom `(u, v)` (indexed `u * n + v`), the base element behind
    /// each diagonal.
    pub carriers: Vec<Vec<Elem>>,
}

impl Diagonal {
    pub fn new(base: &Quantaloid) -> Result<Self> {
        let count = base.morphism_count();
        if count > MAX_DIAGONAL_MORPHISMS {
            return Err(Error::SizeCap {
                what: "diagonal construction (base morphisms)".into(),
                needed: count,
                cap: MAX_DIAGONAL_MORPHISMS,
            });
        }
        let objects: Vec<Arrow> = base.arrows().collect();
        let n = objects.len();
        let names: Vec<String> = objects.iter().map(|&a| base.arrow_name(a)).collect();

        let mut carriers = Vec::with_capacity(n * n);
        let mut homs = Vec::with_capacity(n * n);
        for (ui, &u) in objects.iter().enumerate() {
            for (vi, &v) in objects.iter().enumerate() {
                let ambient = base.hom(u.dom, v.cod);
                let members: Vec<Elem> = ambient
                    .elements()
                    .filter(|&d| is_diagonal(base, u, v, d))
                    .collect();
                check_join_closed(ambient, &members).map_err(|_| {
                    Error::DiagonalNotClosed(format!("{} ⇸ {}", names[ui], names[vi]))
                })?;
                homs.push(ambient.sublattice(&members)?);
                carriers.push(members);
            }
        }

        let identities: Vec<Elem> = objects
            .iter()
            .enumerate()
            .map(|(i, u)| {
                carriers[i * n + i]
                    .iter()
                    .position(|&e| e == u.elem)
                    .expect("every arrow is a diagonal on itself")
            })
            .collect();

        let quantaloid = Quantaloid::try_from_fn(names, homs, identities, |ui, vi, wi, e, d| {
            let (u, v, w) = (objects[ui], objects[vi], objects[wi]);
            let d = carriers[ui * n + vi][d];
            let e = carriers[vi * n + wi][e];
            let composite = compose_diagonals(base, u, v, w, e, d)?;
            carriers[ui * n + wi]
                .iter()
                .position(|&x| x == composite)
                .ok_or_else(|| {
                    Error::DiagonalNotClosed(format!(
                        "composite {} is not a diagonal",
                        base.hom(u.dom, w.cod).name(composite)
                    ))
                })
        })?;

        Ok(Diagonal {
            quantaloid,
            objects,
            carriers,
        })
    }

    /// Object of the diagonal quantaloid standing for `a`.
    pub fn object_of(&self, a: Arrow) -> Obj {
        self.objects
            .iter()
            .position(|&o| o == a)
            .expect("arrow belongs to the base")
    }

    /// The full embedding `u: t -> s  ↦  u: 1_t ⇸ 1_s`, as (source object,
    /// target object, element) in the diagonal quantaloid.
    pub fn embed(&self, base: &Quantaloid, a: Arrow) -> (Obj, Obj, Elem) {
        let src = self.object_of(base.identity_arrow(a.dom));
        let tgt = self.object_of(base.identity_arrow(a.cod));
        let n = self.objects.len();
        let elem = self.carriers[src * n + tgt]
            .iter()
            .position(|&e| e == a.elem)
            .expect("every arrow is a diagonal between identities");
        (src, tgt, elem)
    }

    /// Base element behind a diagonal.
    pub fn carrier(&self, u: Obj, v: Obj, e: Elem) -> Elem {
        self.carriers[u * self.objects.len() + v][e]
    }
}

/// Tests the two defining equations for `d: dom u -> cod v`.
pub fn is_diagonal(base: &Quantaloid, u: Arrow, v: Arrow, d: Elem) -> bool {
    let left = base.residual_left(u.dom, u.cod, v.cod, d, u.elem);
    let via_u = base.compose(u.dom, u.cod, v.cod, left, u.elem);
    let right = base.residual_right(u.dom, v.dom, v.cod, v.elem, d);
    let via_v = base.compose(u.dom, v.dom, v.cod, v.elem, right);
    via_u == d && via_v == d
}

/// `e ◇ d` for `d: u ⇸ v`, `e: v ⇸ w`, computed both ways; the two routes
/// must agree.
pub fn compose_diagonals(
    base: &Quantaloid,
    u: Arrow,
    v: Arrow,
    w: Arrow,
    e: Elem,
    d: Elem,
) -> Result<Elem> {
    let e_over_v = base.residual_left(v.dom, v.cod, w.cod, e, v.elem);
    let first = base.compose(u.dom, v.cod, w.cod, e_over_v, d);
    let v_under_d = base.residual_right(u.dom, v.dom, v.cod, v.elem, d);
    let second = base.compose(u.dom, v.dom, w.cod, e, v_under_d);
    if first != second {
        return Err(Error::DiagonalNotClosed(format!(
            "(e ↙ v) o d = {} but e o (v ↘ d) = {}",
            base.hom(u.dom, w.cod).name(first),
            base.hom(u.dom, w.cod).name(second)
        )));
    }
    Ok(first)
}

fn check_join_closed(ambient: &FiniteLattice, members: &[Elem]) -> Result<(), ()> {
    if !members.contains(&ambient.bottom()) {
        return Err(());
    }
    for &a in members {
        for &b in members {
            if !members.contains(&ambient.join2(a, b)) {
                return Err(());
            }
        }
    }
    Ok(())
}
