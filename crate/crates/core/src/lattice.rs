//! Finite complete lattices.
//!
//! A lattice is stored as an explicit, reflexively and transitively closed
//! order relation over indexed elements. Binary joins and meets are tabulated
//! once at validation time; arbitrary joins and meets fold over them starting
//! from bottom and top respectively.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of an element inside one [`FiniteLattice`].
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Validates a candidate given by element names and order pairs `(a, b)`
    /// meaning `a <= b`. The relation is closed under reflexivity and
    /// transitivity before checking.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = name_index(&names)?;
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((lookup(a)?, lookup(b)?));
        }
        Self::from_edges(names, index, &edges)
    }

    /// Builds a lattice from names and an order predicate on indices. The
    /// predicate need not be closed.
    pub fn from_order(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let index = name_index(&names)?;
        let n = names.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Self::from_edges(names, index, &edges)
    }

    fn from_edges(
        names: Vec<String>,
        index: HashMap<String, Elem>,
        edges: &[(Elem, Elem)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in edges {
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }

        let le = |a: Elem, b: Elem| leq[a * n + b];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let uppers: Vec<Elem> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&v| le(u, v)))
                    .ok_or_else(|| Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        missing: "join",
                    })?;
                let lowers: Vec<Elem> = (0..n).filter(|&l| le(l, a) && le(l, b)).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&l| lowers.iter().all(|&v| le(v, l)))
                    .ok_or_else(|| Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        missing: "meet",
                    })?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let top = (1..n).fold(0, |acc, e| join[acc * n + e]);
        let bottom = (1..n).fold(0, |acc, e| meet[acc * n + e]);
        Ok(FiniteLattice {
            names,
            index,
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Elem> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Least upper bound; the empty join is bottom.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Greatest lower bound; the empty meet is top.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.top, |acc, e| self.meet2(acc, e))
    }

    pub fn join_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Elem> {
        let items = names
            .iter()
            .map(|s| self.lookup(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.join(items))
    }

    pub fn meet_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Elem> {
        let items = names
            .iter()
            .map(|s| self.lookup(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.meet(items))
    }

    /// Strict order pairs `a < b`, in index order.
    pub fn strict_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs of the order (the Hasse diagram).
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| {
                !self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
            })
            .collect()
    }

    /// The sub-poset on `members` with the inherited order, re-validated as a
    /// lattice in its own right.
    pub fn sublattice(&self, members: &[Elem]) -> Result<FiniteLattice> {
        let names = members.iter().map(|&e| self.names[e].clone()).collect();
        FiniteLattice::from_order(names, |i, j| self.leq(members[i], members[j]))
    }
}

fn name_index(names: &[String]) -> Result<HashMap<String, Elem>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Duplicate(n.clone()));
        }
    }
    Ok(index)
}

/// Numeric chain `0 < 1 < ... < n` in the usual order.
pub fn numeric_chain(n: usize) -> FiniteLattice {
    let names = (0..=n).map(|i| i.to_string()).collect();
    FiniteLattice::from_order(names, |a, b| a <= b).expect("chains are lattices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain(n: usize) -> FiniteLattice {
        numeric_chain(n)
    }

    #[test]
    fn two_chain_validates() {
        let l = FiniteLattice::new(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.name(l.bottom()), "0");
        assert_eq!(l.name(l.top()), "1");
        assert_eq!(l.name(l.join_names(&["0", "1"]).unwrap()), "1");
        assert_eq!(l.name(l.meet_names(&["0", "1"]).unwrap()), "0");
    }

    #[test]
    fn antichain_has_no_join() {
        let err = FiniteLattice::new::<&str>(&["a", "b"], &[]).unwrap_err();
        assert_eq!(
            err,
            Error::NotALattice {
                a: "a".into(),
                b: "b".into(),
                missing: "join"
            }
        );
    }

    #[test]
    fn cycle_rejected() {
        let err = FiniteLattice::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err.kind(), "CycleError");
    }

    #[test]
    fn unknown_and_empty() {
        assert_eq!(
            FiniteLattice::new(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(
            FiniteLattice::new::<&str>(&[], &[]).unwrap_err(),
            Error::EmptyLattice
        );
        let l = chain(2);
        assert_eq!(
            l.join_names(&["7"]).unwrap_err(),
            Error::UnknownElement("7".into())
        );
    }

    #[test]
    fn six_chain_joins_and_meets() {
        let l = chain(5);
        let none: [&str; 0] = [];
        assert_eq!(l.name(l.join_names(&none).unwrap()), "0");
        assert_eq!(l.name(l.meet_names(&none).unwrap()), "5");
        assert_eq!(l.name(l.join_names(&["2", "4"]).unwrap()), "4");
        assert_eq!(l.name(l.meet_names(&["2", "4"]).unwrap()), "2");
    }

    #[test]
    fn transitive_closure_of_sparse_pairs() {
        let l = FiniteLattice::new(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        assert!(l.leq(0, 2));
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn diamond_is_lattice_and_n5_too() {
        let m2 = FiniteLattice::new(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        assert_eq!(m2.join2(1, 2), 3);
        assert_eq!(m2.meet2(1, 2), 0);
        // two incomparable upper bounds without a least one
        let err = FiniteLattice::new(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        assert_eq!(err.kind(), "NotALattice");
    }

    /// Closure systems on a small set, ordered by inclusion, are lattices.
    fn moore_family() -> impl Strategy<Value = FiniteLattice> {
        prop::collection::vec(0u8..16, 0..6).prop_map(|sets| {
            let mut fam: Vec<u8> = sets;
            fam.push(15);
            loop {
                let mut added = false;
                let snapshot = fam.clone();
                for &a in &snapshot {
                    for &b in &snapshot {
                        if !fam.contains(&(a & b)) {
                            fam.push(a & b);
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
            fam.sort();
            fam.dedup();
            let names = fam.iter().map(|s| format!("{s:04b}")).collect();
            FiniteLattice::from_order(names, |i, j| fam[i] & fam[j] == fam[i]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn joins_and_meets_are_bounds(l in moore_family()) {
            let n = l.len();
            prop_assume!(n <= 10);
            for mask in 0u32..(1 << n) {
                let s: Vec<Elem> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let j = l.join(s.iter().copied());
                let m = l.meet(s.iter().copied());
                for u in l.elements() {
                    let is_upper = s.iter().all(|&x| l.leq(x, u));
                    prop_assert_eq!(is_upper, l.leq(j, u));
                    let is_lower = s.iter().all(|&x| l.leq(u, x));
                    prop_assert_eq!(is_lower, l.leq(u, m));
                }
            }
        }

        #[test]
        fn binary_operations_are_semilattices(l in moore_family()) {
            for x in l.elements() {
                prop_assert_eq!(l.join([x]), x);
                prop_assert_eq!(l.meet([x]), x);
                for y in l.elements() {
                    prop_assert_eq!(l.join2(x, y), l.join2(y, x));
                    prop_assert_eq!(l.meet2(x, y), l.meet2(y, x));
                    for z in l.elements() {
                        prop_assert_eq!(l.join2(l.join2(x, y), z), l.join2(x, l.join2(y, z)));
                        prop_assert_eq!(l.meet2(l.meet2(x, y), z), l.meet2(x, l.meet2(y, z)));
                    }
                }
            }
        }
    }
}
