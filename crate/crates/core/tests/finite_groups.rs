//! Cross-checks against brute force in finite wreath products, where every
//! class can be computed by conjugating with every element.

use std::collections::BTreeSet;

use wreathcc_core::oracle::enumerate_class;
use wreathcc_core::witness::{verify_finite_certificate, witness};
use wreathcc_core::{
    decide_icc, Certificate, Element, FinSuppMap, Group, OmegaPoint, QSet, Tri, WreathClassStatus, WreathElement,
    WreathGroup,
};

fn all_elements(g: &WreathGroup, points: &[OmegaPoint]) -> Vec<WreathElement> {
    let d = g.base().elements().unwrap();
    let mut maps = vec![FinSuppMap::epsilon()];
    for p in points {
        let mut next = Vec::new();
        for m in &maps {
            for v in &d {
                let mut pairs: Vec<(OmegaPoint, Element)> = m.iter().map(|(x, y)| (x.clone(), y.clone())).collect();
                pairs.push((p.clone(), v.clone()));
                next.push(FinSuppMap::from_pairs(g.base(), pairs).unwrap());
            }
        }
        maps = next;
    }
    let mut out = Vec::new();
    for q in g.top().elements().unwrap() {
        for m in &maps {
            out.push(WreathElement::new(m.clone(), q.clone()));
        }
    }
    out
}

fn brute_class(g: &WreathGroup, all: &[WreathElement], x: &WreathElement) -> Vec<WreathElement> {
    let set: BTreeSet<WreathElement> = all.iter().map(|h| g.conjugate(x, h).unwrap()).collect();
    set.into_iter().collect()
}

fn check(g: WreathGroup, points: Vec<OmegaPoint>) {
    let all = all_elements(&g, &points);
    assert_eq!(all.len() as u128, g.order().unwrap());
    let verdict = decide_icc(&g).unwrap();
    assert_eq!(verdict.answer, Tri::No);
    let Certificate::Finite(cert) = witness(&g, &verdict, None).unwrap() else {
        panic!("finite groups get finite certificates")
    };
    assert!(verify_finite_certificate(&g, &cert, 3, 200, 1).unwrap().passed);
    // the certificate is a union of classes
    for s in &cert.members {
        for y in brute_class(&g, &all, s) {
            assert!(cert.members.contains(&y), "{y} missing from the certificate");
        }
    }
    for x in &all {
        let truth = brute_class(&g, &all, x);
        assert_eq!(g.order().unwrap() % truth.len() as u128, 0);
        let r = enumerate_class(&g, x, 8, 10_000).unwrap();
        assert_eq!(r.status, WreathClassStatus::ExactFiniteUnderGens, "{x}");
        assert_eq!(r.elements, truth, "{x}");
    }
}

#[test]
fn z2_wr_s3_natural() {
    let g = WreathGroup::new(
        Group::cyclic(2).unwrap(),
        QSet::natural(Group::symmetric(3).unwrap()).unwrap(),
        None,
    )
    .unwrap();
    check(g, (0..3).map(OmegaPoint::Index).collect());
}

#[test]
fn z2_wr_z3_regular() {
    let z3 = Group::cyclic(3).unwrap();
    let g = WreathGroup::new(Group::cyclic(2).unwrap(), QSet::regular(z3).unwrap(), None).unwrap();
    check(g, (0..3).map(|i| OmegaPoint::Elem(Element::Int(i))).collect());
}

#[test]
fn s3_over_two_fixed_points() {
    let g = WreathGroup::new(
        Group::symmetric(3).unwrap(),
        QSet::trivial(Group::cyclic(2).unwrap(), 2).unwrap(),
        None,
    )
    .unwrap();
    assert_eq!(g.window().len(), 2);
    check(g, (0..2).map(OmegaPoint::Index).collect());
}

#[test]
fn identity_class_is_a_singleton() {
    let g = WreathGroup::new(
        Group::cyclic(2).unwrap(),
        QSet::natural(Group::symmetric(3).unwrap()).unwrap(),
        None,
    )
    .unwrap();
    let r = enumerate_class(&g, &g.identity(), 8, 10_000).unwrap();
    assert_eq!(r.status, WreathClassStatus::ExactFiniteUnderGens);
    assert_eq!(r.elements, vec![g.identity()]);
}
