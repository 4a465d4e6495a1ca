use std::sync::Arc;

use super::{
    cartesian, enumerate_functors, enumerate_transforms, render_functor, render_transform,
    Certificate, Counterexample, TestSuite, Verdict,
};
use crate::error::{Error, Result};
use crate::qcat::{functor_leq, QCategory, QFunctor};
use crate::qchu::{dom_initial_lift, separate, ChuDiagram, ChuTransform, GeneratorFamily};
use crate::qdist::{compose, dist_leq, graphs, QDistributor};
use crate::quantaloid::Quantaloid;

fn failure(property: &str, cone: Vec<Vec<String>>, reason: String) -> Counterexample {
    Counterexample {
        property: property.to_string(),
        probe: None,
        cone,
        mediators: 0,
        reason,
    }
}

/// `a <= f^♮ o f_♮` and `f_♮ o f^♮ <= b`.
pub fn check_graph_adjunction(f: &QFunctor) -> Result<Verdict> {
    let (lower, upper) = graphs(f);
    check_adjunction_tables(&lower, &upper)
}

/// Adjunction `lower ⊣ upper` of distributors `X ⇸ Y ⇸ X`, pointwise, with
/// the first failing pair as witness.
pub fn check_adjunction_tables(lower: &QDistributor, upper: &QDistributor) -> Result<Verdict> {
    const PROPERTY: &str = "graph-adjunction";
    let (x, y) = (lower.source(), lower.target());
    let unit = compose(upper, lower)?;
    let counit = compose(lower, upper)?;
    let q = x.quantaloid();
    for i in x.objects() {
        for j in x.objects() {
            let (ei, ej) = (x.extent(i), x.extent(j));
            if !q.leq(ei, ej, x.hom(i, j), unit.value(i, j)) {
                let reason = format!("a({}, {}) is not below the unit", x.name(i), x.name(j));
                return Ok(Err(failure(PROPERTY, vec![], reason)));
            }
        }
    }
    for i in y.objects() {
        for j in y.objects() {
            let (ei, ej) = (y.extent(i), y.extent(j));
            if !q.leq(ei, ej, counit.value(i, j), y.hom(i, j)) {
                let reason = format!("counit at ({}, {}) exceeds b", y.name(i), y.name(j));
                return Ok(Err(failure(PROPERTY, vec![], reason)));
            }
        }
    }
    Ok(Ok(Certificate {
        property: PROPERTY.into(),
        probes: 1,
        checked: x.len() * x.len() + y.len() * y.len(),
    }))
}

/// `f <= g` iff `f^♮ <= g^♮` iff `g_♮ <= f_♮` iff `1 <= b(f x, g x)`.
pub fn check_graph_order(f: &QFunctor, g: &QFunctor) -> Result<Verdict> {
    let (f_lower, f_upper) = graphs(f);
    let (g_lower, g_upper) = graphs(g);
    let statements = [
        dist_leq(&f_upper, &g_upper)?,
        dist_leq(&g_lower, &f_lower)?,
        functor_leq(f, g)?,
    ];
    if statements.iter().all(|&s| s == statements[0]) {
        Ok(Ok(Certificate {
            property: "graph-order".into(),
            probes: 1,
            checked: 1,
        }))
    } else {
        Ok(Err(failure(
            "graph-order",
            vec![render_functor(f), render_functor(g)],
            format!("order statements disagree: {statements:?}"),
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingCertificate {
    pub pairs: usize,
    /// Pairs handled by each case of the separation argument.
    pub cases: [usize; 3],
}

/// Runs `separate` on every pair of distinct parallel transforms between the
/// suite's Chu objects.
pub fn check_generating(
    suite: &TestSuite,
    family: &GeneratorFamily,
) -> Result<std::result::Result<GeneratingCertificate, Counterexample>> {
    let mut cert = GeneratingCertificate {
        pairs: 0,
        cases: [0; 3],
    };
    for (_, phi) in &suite.chu {
        for (_, psi) in &suite.chu {
            let ts = enumerate_transforms(phi, psi)?;
            for (i, t1) in ts.iter().enumerate() {
                for t2 in &ts[i + 1..] {
                    let cone = vec![render_transform(t1), render_transform(t2)];
                    match separate(t1, t2, family) {
                        Ok(sep) => {
                            cert.pairs += 1;
                            cert.cases[sep.case as usize - 1] += 1;
                        }
                        Err(e @ Error::SizeCap { .. }) => return Err(e),
                        Err(e) => {
                            return Ok(Err(failure("generating", cone, e.to_string())));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(cert))
}

/// For every test cone `Θ` from a suite object `ψ: Y ⇸ Z` and every functor
/// `t: Y -> X` with `γ o t = dom Θ`, exactly one transform `ψ -> φ` with
/// forward part `t` composes with the lifted cone to `Θ`.
pub fn check_lift_initiality(
    quantaloid: &Arc<Quantaloid>,
    diagram: &ChuDiagram,
    apex: &Arc<QCategory>,
    legs: &[QFunctor],
    suite: &TestSuite,
) -> Result<Verdict> {
    const PROPERTY: &str = "dom-initial-lift";
    let lift = dom_initial_lift(quantaloid, diagram, apex, legs)?;
    let phi = &lift.object;
    let mut checked = 0;
    for (name, psi) in &suite.chu {
        let lists: Vec<Vec<ChuTransform>> = diagram
            .objects
            .iter()
            .map(|v| enumerate_transforms(psi, v))
            .collect::<Result<_>>()?;
        let backward = enumerate_functors(phi.target(), psi.target())?;
        let forward = enumerate_functors(psi.source(), apex)?;
        for theta in cartesian(&lists)? {
            let commutes = diagram
                .arrows
                .iter()
                .map(|a| Ok(theta[a.from].then(&a.transform)? == theta[a.to]))
                .collect::<Result<Vec<bool>>>()?;
            if commutes.contains(&false) {
                continue;
            }
            for t in &forward {
                let over = legs
                    .iter()
                    .zip(&theta)
                    .map(|(g, th)| Ok(g.after(t)?.map() == th.fwd().map()))
                    .collect::<Result<Vec<bool>>>()?;
                if over.contains(&false) {
                    continue;
                }
                let mut found = 0;
                for k in &backward {
                    let h =
                        ChuTransform::unchecked(psi.clone(), phi.clone(), t.clone(), k.clone())?;
                    if !h.satisfies_chu() {
                        continue;
                    }
                    let hits = lift
                        .cone
                        .iter()
                        .zip(&theta)
                        .map(|(gamma, th)| Ok(h.then(gamma)? == *th))
                        .collect::<Result<Vec<bool>>>()?;
                    if !hits.contains(&false) {
                        found += 1;
                    }
                }
                checked += 1;
                if found != 1 {
                    return Ok(Err(Counterexample {
                        property: PROPERTY.into(),
                        probe: Some(name.clone()),
                        cone: theta.iter().map(render_transform).collect(),
                        mediators: found,
                        reason: format!("{} lifts of {}", found, render_functor(t).join(",")),
                    }));
                }
            }
        }
    }
    Ok(Ok(Certificate {
        property: PROPERTY.into(),
        probes: suite.chu.len(),
        checked,
    }))
}
