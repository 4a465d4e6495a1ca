use super::*;
use crate::qcat::{free_structure, FreeMode};

fn two() -> Arc<Quantaloid> {
    Arc::new(Quantaloid::two())
}

fn discrete(q: &Arc<Quantaloid>, names: &[&str]) -> Arc<QCategory> {
    let n = names.len();
    Arc::new(
        free_structure(
            FreeMode::Discrete,
            q.clone(),
            names.iter().map(|s| s.to_string()).collect(),
            vec![0; n],
        )
        .unwrap(),
    )
}

fn dist(x: &Arc<QCategory>, y: &Arc<QCategory>, v: impl Fn(usize, usize) -> usize) -> ChuObject {
    Arc::new(QDistributor::from_fn(x.clone(), y.clone(), v).unwrap())
}

fn functor(s: &Arc<QCategory>, t: &Arc<QCategory>, map: &[usize]) -> QFunctor {
    QFunctor::new(s.clone(), t.clone(), map.to_vec()).unwrap()
}

/// `φ: {a} ⇸ {u, v}` and `ψ: {b} ⇸ {z}`, all values 1, with the two
/// transforms sending `z` to `u` and to `v`.
struct Fork {
    phi: ChuObject,
    psi: ChuObject,
    t1: ChuTransform,
    t2: ChuTransform,
}

fn fork() -> Fork {
    let q = two();
    let (x, w) = (discrete(&q, &["a"]), discrete(&q, &["u", "v"]));
    let (y, z) = (discrete(&q, &["b"]), discrete(&q, &["z"]));
    let phi = dist(&x, &w, |_, _| 1);
    let psi = dist(&y, &z, |_, _| 1);
    let f = functor(&x, &y, &[0]);
    let t1 = ChuTransform::new(phi.clone(), psi.clone(), f.clone(), functor(&z, &w, &[0])).unwrap();
    let t2 = ChuTransform::new(phi.clone(), psi.clone(), f, functor(&z, &w, &[1])).unwrap();
    Fork { phi, psi, t1, t2 }
}

#[test]
fn transform_condition_is_checked_both_ways() {
    let q = two();
    let (x, w) = (discrete(&q, &["a"]), discrete(&q, &["u", "v"]));
    let (y, z) = (discrete(&q, &["b"]), discrete(&q, &["z"]));
    let phi = dist(&x, &w, |_, b| (b == 0) as usize);
    let psi = dist(&y, &z, |_, _| 1);
    let f = functor(&x, &y, &[0]);
    assert!(ChuTransform::new(phi.clone(), psi.clone(), f.clone(), functor(&z, &w, &[0])).is_ok());
    let err = ChuTransform::new(phi, psi, f, functor(&z, &w, &[1])).unwrap_err();
    assert_eq!(
        err,
        Error::ChuViolation {
            x: "a".into(),
            z: "z".into()
        }
    );
}

#[test]
fn transforms_compose_and_identities_are_neutral() {
    let Fork { phi, psi, t1, .. } = fork();
    let left = ChuTransform::identity(phi).then(&t1).unwrap();
    let right = t1.then(&ChuTransform::identity(psi)).unwrap();
    assert_eq!(left, t1);
    assert_eq!(right, t1);
    assert!(t1.then(&t1).is_err());
}

#[test]
fn product_pairs_domains_and_sums_codomains() {
    let q = two();
    let (x1, w1) = (discrete(&q, &["a", "b"]), discrete(&q, &["u"]));
    let (x2, w2) = (discrete(&q, &["c"]), discrete(&q, &["v", "w"]));
    let phi1 = dist(&x1, &w1, |x, _| (x == 0) as usize);
    let phi2 = dist(&x2, &w2, |_, y| (y == 1) as usize);
    let cone = chu_product(&q, &[phi1.clone(), phi2.clone()]).unwrap();
    let apex = &cone.apex;
    apex.validate().unwrap();
    assert_eq!(apex.source().names(), ["(a,c)@*", "(b,c)@*"]);
    assert_eq!(apex.target().names(), ["0:u", "1:v", "1:w"]);
    // dom of the legs is the product cone in the base
    let base = qcat::product(&q, &[x1, x2]).unwrap();
    for (leg, p) in cone.legs.iter().zip(&base.legs) {
        assert_eq!(leg.fwd().map(), p.map());
        leg.validate().unwrap();
    }
    for x in apex.source().objects() {
        assert_eq!(apex.value(x, 0), phi1.value(x, 0));
        assert_eq!(apex.value(x, 1), 0);
        assert_eq!(apex.value(x, 2), 1);
    }
}

#[test]
fn coproduct_is_dual_to_product() {
    let q = two();
    let (x1, w1) = (discrete(&q, &["a", "b"]), discrete(&q, &["u"]));
    let (x2, w2) = (discrete(&q, &["c"]), discrete(&q, &["v", "w"]));
    let phi1 = dist(&x1, &w1, |x, _| (x == 0) as usize);
    let phi2 = dist(&x2, &w2, |_, y| (y == 1) as usize);
    let cocone = chu_coproduct(&q, &[phi1, phi2]).unwrap();
    cocone.nadir.validate().unwrap();
    assert_eq!(cocone.nadir.source().names(), ["0:a", "0:b", "1:c"]);
    assert_eq!(cocone.nadir.target().names(), ["(u,v)@*", "(u,w)@*"]);
    for leg in &cocone.legs {
        leg.validate().unwrap();
    }
    let row: Vec<usize> = (0..2).map(|y| cocone.nadir.value(2, y)).collect();
    assert_eq!(row, [0, 1]);
}

#[test]
fn empty_product_is_terminal_shape() {
    let q = two();
    let cone = chu_product(&q, &[]).unwrap();
    assert_eq!(cone.apex.source().len(), 1);
    assert_eq!(cone.apex.target().len(), 0);
}

#[test]
fn equalizer_merges_backward_parts() {
    let Fork { phi, t1, t2, .. } = fork();
    let cone = chu_equalizer(&t1, &t2).unwrap();
    assert_eq!(cone.apex.source().names(), ["a"]);
    assert_eq!(cone.apex.target().names(), ["{u,v}"]);
    assert_eq!(cone.apex.value(0, 0), 1);
    cone.legs[0].validate().unwrap();
    assert!(same_dist(cone.legs[0].to(), &phi));
    let via1 = cone.legs[0].then(&t1).unwrap();
    let via2 = cone.legs[0].then(&t2).unwrap();
    assert_eq!(via1, via2);
}

#[test]
fn coequalizer_restricts_backward_parts() {
    let Fork { psi, t1, t2, .. } = fork();
    let cocone = chu_coequalizer(&t1, &t2).unwrap();
    assert_eq!(cocone.nadir.source().names(), ["b"]);
    assert!(cocone.nadir.target().is_empty());
    cocone.legs[0].validate().unwrap();
    assert!(same_dist(cocone.legs[0].from(), &psi));
}

#[test]
fn lift_of_discrete_pair_matches_product() {
    let q = two();
    let (x1, w1) = (discrete(&q, &["a", "b"]), discrete(&q, &["u"]));
    let (x2, w2) = (discrete(&q, &["c"]), discrete(&q, &["v", "w"]));
    let phi1 = dist(&x1, &w1, |x, _| (x == 0) as usize);
    let phi2 = dist(&x2, &w2, |_, y| (y == 1) as usize);
    let cone = chu_product(&q, &[phi1.clone(), phi2.clone()]).unwrap();
    let legs: Vec<QFunctor> = cone.legs.iter().map(|l| l.fwd().clone()).collect();
    let lift = dom_initial_lift(
        &q,
        &ChuDiagram::discrete(vec![phi1, phi2]),
        cone.apex.source(),
        &legs,
    )
    .unwrap();
    assert_eq!(*lift.object, *cone.apex);
    for (a, b) in lift.cone.iter().zip(&cone.legs) {
        assert_eq!(a, b);
    }
}

#[test]
fn lift_of_singleton_is_the_object() {
    let Fork { phi, .. } = fork();
    let x = phi.source().clone();
    let lift = dom_initial_lift(
        &two(),
        &ChuDiagram::discrete(vec![phi.clone()]),
        &x,
        &[QFunctor::identity(x.clone())],
    )
    .unwrap();
    assert_eq!(*lift.object, *phi);
    lift.cone[0].validate().unwrap();
}

#[test]
fn lift_along_an_arrow_glues_codomains() {
    let Fork { phi, psi, t1, .. } = fork();
    let diagram = ChuDiagram {
        objects: vec![phi.clone(), psi],
        arrows: vec![DiagramArrow {
            from: 0,
            to: 1,
            transform: t1.clone(),
        }],
    };
    let x = phi.source().clone();
    let legs = [QFunctor::identity(x.clone()), t1.fwd().clone()];
    let lift = dom_initial_lift(&two(), &diagram, &x, &legs).unwrap();
    assert_eq!(lift.object.target().names(), ["{0:u,1:z}", "0:v"]);
    assert_eq!(lift.report.delta, [vec![0, 1], vec![0]]);
    for leg in &lift.cone {
        leg.validate().unwrap();
    }
}

#[test]
fn lift_rejects_non_commuting_cone() {
    let q = two();
    let Fork { phi, psi, t1, .. } = fork();
    let x2 = discrete(&q, &["a", "a2"]);
    let phi2 = dist(&x2, phi.target(), |_, _| 1);
    let y2 = discrete(&q, &["b", "b2"]);
    let psi2 = dist(&y2, psi.target(), |_, _| 1);
    let f = functor(&x2, &y2, &[0, 0]);
    let t = ChuTransform::new(phi2.clone(), psi2.clone(), f, t1.bwd().clone()).unwrap();
    let diagram = ChuDiagram {
        objects: vec![phi2, psi2],
        arrows: vec![DiagramArrow {
            from: 0,
            to: 1,
            transform: t,
        }],
    };
    let apex = discrete(&q, &["p"]);
    let legs = [functor(&apex, &x2, &[0]), functor(&apex, &y2, &[1])];
    let err = dom_initial_lift(&q, &diagram, &apex, &legs).unwrap_err();
    assert_eq!(err.kind(), "NotACone");
}

#[test]
fn generators_over_two() {
    let q = two();
    let fam = generator_family(&q, GeneratorMode::Standard).unwrap();
    assert_eq!(fam.d[0].names(), ["tag:*", "ob:*"]);
    assert_eq!(fam.c.len(), 2);
    assert_eq!(fam.c_hat.len(), 4);
    assert_eq!(fam.members().len(), 2);
    for lam in &fam.lambda {
        lam.validate().unwrap();
    }
    let alt = generator_family(&q, GeneratorMode::Alternative).unwrap();
    assert!(alt.lambda_empty.is_some());
}

#[test]
fn generators_over_chain_have_all_values() {
    let q = Arc::new(Quantaloid::chain(3).unwrap());
    let fam = generator_family(&q, GeneratorMode::Standard).unwrap();
    assert_eq!(fam.c.len(), 4);
    for k in 0..4 {
        assert_eq!(fam.lambda[0].value(0, 2 * k), fam.c_points[k].2);
    }
}

#[test]
fn separate_case_three() {
    let Fork { t1, t2, .. } = fork();
    let fam = generator_family(&two(), GeneratorMode::Standard).unwrap();
    let sep = separate(&t1, &t2, &fam).unwrap();
    assert_eq!(sep.case, 3);
    assert!(separate(&t1, &t1, &fam).unwrap_err() == Error::NotDistinct);
}

#[test]
fn separate_case_two() {
    let q = two();
    let (x, w) = (discrete(&q, &["a", "a2"]), discrete(&q, &["u"]));
    let (y, z) = (discrete(&q, &["b", "b2"]), discrete(&q, &["z"]));
    let phi = dist(&x, &w, |_, _| 1);
    let psi = dist(&y, &z, |_, _| 1);
    let g = functor(&z, &w, &[0]);
    let t1 = ChuTransform::new(
        phi.clone(),
        psi.clone(),
        functor(&x, &y, &[0, 0]),
        g.clone(),
    )
    .unwrap();
    let t2 = ChuTransform::new(phi, psi, functor(&x, &y, &[1, 0]), g).unwrap();
    let fam = generator_family(&q, GeneratorMode::Standard).unwrap();
    let sep = separate(&t1, &t2, &fam).unwrap();
    assert_eq!(sep.case, 2);
    assert_eq!(sep.morphism.fwd().map(), [0]);
}

#[test]
fn separate_case_one_in_both_modes() {
    let q = two();
    let (x, w) = (discrete(&q, &[]), discrete(&q, &["u", "v"]));
    let (y, z) = (discrete(&q, &[]), discrete(&q, &["z"]));
    let phi = dist(&x, &w, |_, _| 0);
    let psi = dist(&y, &z, |_, _| 0);
    let f = functor(&x, &y, &[]);
    let t1 = ChuTransform::new(phi.clone(), psi.clone(), f.clone(), functor(&z, &w, &[0])).unwrap();
    let t2 = ChuTransform::new(phi, psi, f, functor(&z, &w, &[1])).unwrap();
    let fam = generator_family(&q, GeneratorMode::Standard).unwrap();
    let sep = separate(&t1, &t2, &fam).unwrap();
    assert_eq!(sep.case, 1);
    // first map in lexicographic order that separates u from v
    assert_eq!(sep.morphism.bwd().map(), [0, 1]);
    let alt = generator_family(&q, GeneratorMode::Alternative).unwrap();
    let sep = separate(&t1, &t2, &alt).unwrap();
    assert_eq!(sep.case, 1);
    assert!(same_dist(
        &sep.generator,
        alt.lambda_empty.as_ref().unwrap()
    ));
}

#[test]
fn domain_limit_equalizes_arrows() {
    let Fork { phi, psi, t1, .. } = fork();
    let diagram = ChuDiagram {
        objects: vec![phi, psi],
        arrows: vec![DiagramArrow {
            from: 0,
            to: 1,
            transform: t1,
        }],
    };
    let (apex, legs) = domain_limit(&two(), &diagram).unwrap();
    assert_eq!(apex.names(), ["(a,b)@*"]);
    let lift = dom_initial_lift(&two(), &diagram, &apex, &legs).unwrap();
    lift.object.validate().unwrap();
}
