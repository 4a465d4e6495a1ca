//! Algebraic laws on randomly generated categories, distributors and
//! functors, plus exhaustive checks over the shipped probe suites.

use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;

use quantikit::io::parse_bundle;
use quantikit::lattice::Elem;
use quantikit::oracle::{self, enumerate_functors, enumerate_transforms, TestSuite};
use quantikit::qcat::{self, QCategory, QFunctor};
use quantikit::qchu::{self, ChuObject, ChuTransform, GeneratorMode};
use quantikit::qdist::{compose, graphs, kan_star, PresheafCategory, QDistributor};
use quantikit::quantaloid::Quantaloid;

fn quantale(which: bool) -> Arc<Quantaloid> {
    Arc::new(if which {
        Quantaloid::chain(3).unwrap()
    } else {
        Quantaloid::two()
    })
}

/// Smallest category above a raw one-object-extent table: close under
/// composition until nothing changes.
fn closed_category(q: &Arc<Quantaloid>, tag: &str, raw: &[usize]) -> Arc<QCategory> {
    let n = (raw.len() as f64).sqrt() as usize;
    let l = q.hom(0, 0);
    let mut h: Vec<Elem> = raw.iter().map(|&r| r % l.len()).collect();
    for x in 0..n {
        h[x * n + x] = l.join2(h[x * n + x], q.identity(0));
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let via = q.compose(0, 0, 0, h[y * n + z], h[x * n + y]);
                    let j = l.join2(h[x * n + z], via);
                    if j != h[x * n + z] {
                        h[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let names = (0..n).map(|i| format!("{tag}{i}")).collect();
    Arc::new(QCategory::new(q.clone(), names, vec![0; n], h).expect("closure is a category"))
}

/// `b o r o a` for a raw relation `r`, the least distributor above it.
fn closed_distributor(x: &Arc<QCategory>, y: &Arc<QCategory>, raw: &[usize]) -> QDistributor {
    let q = x.quantaloid();
    let l = q.hom(0, 0);
    let r = |i: usize, j: usize| raw[(i * y.len() + j) % raw.len()] % l.len();
    QDistributor::from_fn(x.clone(), y.clone(), |i, j| {
        l.join(x.objects().flat_map(|i2| {
            y.objects().map(move |j2| {
                q.compose(
                    0,
                    0,
                    0,
                    y.hom(j2, j),
                    q.compose(0, 0, 0, r(i2, j2), x.hom(i, i2)),
                )
            })
        }))
    })
    .expect("closure is a distributor")
}

/// Composition recomputed from the defining formula.
fn reference_compose(psi: &QDistributor, phi: &QDistributor) -> Vec<Elem> {
    let (x, y, z) = (phi.source(), phi.target(), psi.target());
    let q = x.quantaloid();
    let l = q.hom(0, 0);
    let mut out = Vec::new();
    for i in x.objects() {
        for k in z.objects() {
            let mut acc = l.bottom();
            for j in y.objects() {
                acc = l.join2(acc, q.compose(0, 0, 0, psi.value(j, k), phi.value(i, j)));
            }
            out.push(acc);
        }
    }
    out
}

fn table(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(0..8usize, n * n))
}

fn pick<T: Clone>(items: &[T], i: usize) -> T {
    items[i % items.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributor_composition_is_associative_and_unital(
        which in any::<bool>(),
        (a, b, c, d) in (table(3), table(3), table(3), table(3)),
        (r1, r2, r3) in (prop::collection::vec(0..8usize, 9), prop::collection::vec(0..8usize, 9), prop::collection::vec(0..8usize, 9)),
    ) {
        let q = quantale(which);
        let (w, x, y, z) = (closed_category(&q, "w", &a), closed_category(&q, "x", &b),
            closed_category(&q, "y", &c), closed_category(&q, "z", &d));
        let phi = closed_distributor(&w, &x, &r1);
        let psi = closed_distributor(&x, &y, &r2);
        let chi = closed_distributor(&y, &z, &r3);
        let left = compose(&chi, &compose(&psi, &phi).unwrap()).unwrap();
        let right = compose(&compose(&chi, &psi).unwrap(), &phi).unwrap();
        prop_assert_eq!(&left, &right);
        let direct = compose(&psi, &phi).unwrap();
        prop_assert_eq!(direct.values(), &reference_compose(&psi, &phi)[..]);
        prop_assert_eq!(&compose(&phi, &QDistributor::identity(w.clone())).unwrap(), &phi);
        prop_assert_eq!(&compose(&QDistributor::identity(x.clone()), &phi).unwrap(), &phi);
    }

    #[test]
    fn kan_star_is_contravariantly_functorial(
        which in any::<bool>(),
        (a, b, c) in (table(2), table(3), table(2)),
        (r1, r2) in (prop::collection::vec(0..8usize, 9), prop::collection::vec(0..8usize, 9)),
    ) {
        let q = quantale(which);
        let (x, y, z) = (closed_category(&q, "x", &a), closed_category(&q, "y", &b), closed_category(&q, "z", &c));
        let phi = closed_distributor(&x, &y, &r1);
        let psi = closed_distributor(&y, &z, &r2);
        let (px, py, pz) = (
            PresheafCategory::new(x.clone()).unwrap(),
            PresheafCategory::new(y.clone()).unwrap(),
            PresheafCategory::new(z.clone()).unwrap(),
        );
        let whole = kan_star(&compose(&psi, &phi).unwrap(), &px, &pz).unwrap();
        let parts = kan_star(&phi, &px, &py).unwrap().after(&kan_star(&psi, &py, &pz).unwrap()).unwrap();
        prop_assert_eq!(whole.map(), parts.map());
        let id = kan_star(&QDistributor::identity(x.clone()), &px, &px).unwrap();
        prop_assert!(id.map().iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn graphs_compose_and_are_adjoint(
        which in any::<bool>(),
        (a, b, c) in (table(3), table(3), table(3)),
        (i, j) in (any::<usize>(), any::<usize>()),
    ) {
        let q = quantale(which);
        let (x, y, z) = (closed_category(&q, "x", &a), closed_category(&q, "y", &b), closed_category(&q, "z", &c));
        let fs = enumerate_functors(&x, &y).unwrap();
        let gs = enumerate_functors(&y, &z).unwrap();
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let (f, g) = (pick(&fs, i), pick(&gs, j));
        let gf = g.after(&f).unwrap();
        let (f_lo, f_up) = graphs(&f);
        let (g_lo, g_up) = graphs(&g);
        let (gf_lo, gf_up) = graphs(&gf);
        prop_assert_eq!(gf_lo, compose(&g_lo, &f_lo).unwrap());
        prop_assert_eq!(gf_up, compose(&f_up, &g_up).unwrap());
        prop_assert!(oracle::check_graph_adjunction(&f).unwrap().is_ok());
    }

    #[test]
    fn functor_order_statements_agree(
        which in any::<bool>(),
        (a, b) in (table(3), table(3)),
        (i, j) in (any::<usize>(), any::<usize>()),
    ) {
        let q = quantale(which);
        let (x, y) = (closed_category(&q, "x", &a), closed_category(&q, "y", &b));
        let fs = enumerate_functors(&x, &y).unwrap();
        prop_assume!(!fs.is_empty());
        let (f, g) = (pick(&fs, i), pick(&fs, j));
        prop_assert!(oracle::check_graph_order(&f, &g).unwrap().is_ok());
        // brute force: f <= g iff every b(f x, g x) is above the unit
        let leq = x.objects().all(|o| q.leq(0, 0, q.identity(0), y.hom(f.apply(o), g.apply(o))));
        prop_assert_eq!(qcat::functor_leq(&f, &g).unwrap(), leq);
    }
}

fn suite(name: &str) -> TestSuite {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    parse_bundle(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .suite()
        .unwrap()
}

fn transforms(chu: &[(String, ChuObject)]) -> Vec<ChuTransform> {
    let mut out = Vec::new();
    for (_, phi) in chu {
        for (_, psi) in chu {
            out.extend(enumerate_transforms(phi, psi).unwrap());
        }
    }
    out
}

fn composable_after(ts: &[ChuTransform], t: &ChuTransform) -> Vec<ChuTransform> {
    ts.iter()
        .filter(|n| Arc::ptr_eq(n.from(), t.to()) || n.from() == t.to())
        .cloned()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chu_composition_is_associative(which in any::<bool>(), (i, j, k) in (any::<usize>(), any::<usize>(), any::<usize>())) {
        let s = suite(if which { "suite_chain3.json" } else { "suite_two.json" });
        let ts = transforms(&s.chu);
        let t1 = pick(&ts, i);
        let t2 = pick(&composable_after(&ts, &t1), j);
        let t3 = pick(&composable_after(&ts, &t2), k);
        let left = t1.then(&t2).unwrap().then(&t3).unwrap();
        let right = t1.then(&t2.then(&t3).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(left.validate().is_ok());
        prop_assert_eq!(&ChuTransform::identity(t1.from().clone()).then(&t1).unwrap(), &t1);
    }
}

/// A transform is mono iff it cancels on every pair of maps out of a
/// generator, since generators separate every distinct parallel pair.
fn is_mono(m: &ChuTransform, generators: &[ChuObject]) -> bool {
    generators.iter().all(|g| {
        let into = enumerate_transforms(g, m.from()).unwrap();
        let images: Vec<ChuTransform> = into.iter().map(|a| a.then(m).unwrap()).collect();
        (0..into.len()).all(|i| (i + 1..into.len()).all(|j| images[i] != images[j]))
    })
}

fn injective(f: &QFunctor) -> bool {
    let mut seen = f.map().to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == f.map().len()
}

fn surjective(f: &QFunctor) -> bool {
    f.target().objects().all(|y| f.map().contains(&y))
}

#[test]
fn monos_have_injective_forward_and_surjective_backward_parts() {
    let mut monos = 0;
    for file in ["suite_two.json", "suite_chain3.json"] {
        let s = suite(file);
        let family = qchu::generator_family(&s.quantaloid, GeneratorMode::Standard).unwrap();
        let generators = family.members();
        for m in transforms(&s.chu) {
            if is_mono(&m, &generators) {
                monos += 1;
                assert!(
                    injective(m.fwd()),
                    "{file}: mono with non-injective forward part"
                );
                assert!(
                    surjective(m.bwd()),
                    "{file}: mono with non-surjective backward part"
                );
            }
        }
    }
    assert!(monos > 0);
}

#[test]
fn domains_of_chu_limits_are_limits() {
    for file in ["suite_two.json", "suite_chain3.json"] {
        let s = suite(file);
        let q = &s.quantaloid;
        for (_, a) in &s.chu {
            for (_, b) in &s.chu {
                let family = [a.clone(), b.clone()];
                let chu = qchu::chu_product(q, &family).unwrap();
                let domains = [a.source().clone(), b.source().clone()];
                let cat = qcat::product(q, &domains).unwrap();
                assert_eq!(**chu.apex.source(), *cat.apex);
                let fwd: Vec<&[usize]> = chu.legs.iter().map(|t| t.fwd().map()).collect();
                let legs: Vec<&[usize]> = cat.legs.iter().map(|f| f.map()).collect();
                assert_eq!(fwd, legs);

                let co = qchu::chu_coproduct(q, &family).unwrap();
                let codomains = [a.target().clone(), b.target().clone()];
                let cat = qcat::product(q, &codomains).unwrap();
                assert_eq!(**co.nadir.target(), *cat.apex);
                let bwd: Vec<&[usize]> = co.legs.iter().map(|t| t.bwd().map()).collect();
                let legs: Vec<&[usize]> = cat.legs.iter().map(|f| f.map()).collect();
                assert_eq!(bwd, legs);
            }
        }
    }
}
