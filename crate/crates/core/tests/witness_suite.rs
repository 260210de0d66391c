//! Witness-construction integration tests for the parameter lists the
//! verification suite pins down.

use engel_graph::grp::{build_group, normalizer_of_cyclic, structure, GroupSpec};
use engel_graph::witness::*;

#[test]
fn nr1_parameter_list() {
    for q in [5u64, 13, 17, 25, 29] {
        let r = nr1_witness(q).unwrap();
        assert!(r.found, "nr1 should succeed for q = {q}: {:?}", r.transcript);
    }
    let r = nr1_witness(9).unwrap();
    assert!(!r.found, "nr1 must report found = false for q = 9");
}

#[test]
fn companion_parameter_list() {
    for (m, q, want) in [
        (3u64, 3u64, 2u64),
        (3, 5, 2),
        (5, 3, 2),
        (3, 2, 4),
        (3, 4, 4),
        (5, 2, 4),
    ] {
        let r = psl_companion_witness(m, q).unwrap();
        assert!(r.found, "(m,q) = ({m},{q}): {:?}", r.transcript);
        assert_eq!(
            r.payload["commutator_order"], want,
            "(m,q) = ({m},{q}) commutator order"
        );
    }
}

#[test]
fn unitary_parameter_list() {
    for (m, q) in [(3u64, 3u64), (3, 4), (3, 5)] {
        let r = unitary_witness(m, q).unwrap();
        assert!(
            r.found,
            "unitary (m,q) = ({m},{q}) transcript: {:?}",
            r.transcript
                .iter()
                .filter(|c| !c.ok)
                .collect::<Vec<_>>()
        );
    }
    assert!(unitary_witness(3, 2).is_err(), "(3,2) must be rejected");
}

#[test]
fn unitary_m_equals_q_plus_one_branch() {
    // (m, q) = (5, 4) exercises the second branch with Tr(a^2 y) = 0
    let r = unitary_witness(5, 4).unwrap();
    assert!(
        r.found,
        "unitary (5,4) transcript: {:?}",
        r.transcript.iter().filter(|c| !c.ok).collect::<Vec<_>>()
    );
}

#[test]
fn sp4_parameter_list() {
    for q in [2u64, 4, 8] {
        let r = sp4_even_witness(q).unwrap();
        assert!(r.found, "sp4 q = {q}: {:?}", r.transcript);
    }
    assert!(sp4_even_witness(3).is_err());
}

#[test]
fn pgl2_parameter_list() {
    for q in [5u64, 7, 9, 11] {
        let r = pgl2_witness(q).unwrap();
        assert!(r.found, "pgl2 q = {q}: {:?}", r.transcript);
    }
}

#[test]
fn coset_coverage_parameter_list() {
    for q in [5u64, 7, 11, 13] {
        let r = psl2_coset_coverage(q).unwrap();
        assert!(r.found, "coset coverage q = {q}: {:?}", r.transcript);
    }
}

#[test]
fn lemma3_parameter_list() {
    for (q, expect_exists) in [(7u64, true), (11, true), (13, false), (17, true)] {
        let r = lemma3_check(q).unwrap();
        assert!(r.found, "lemma3 q = {q}: {:?}", r.transcript);
        // the multiset payload records whether a 2-power order appears
        let ms = &r.payload["order_multisets"];
        let has_two_power = ms.as_array().unwrap().iter().any(|cls| {
            cls.as_array().unwrap().iter().any(|pair| {
                let o = pair[0].as_u64().unwrap();
                o >= 2 && o.is_power_of_two()
            })
        });
        assert_eq!(has_two_power, expect_exists, "q = {q}");
    }
}

#[test]
fn suzuki_nc_certificates() {
    // Sz(8): K = N(<y>) with o(y) = 13 traps the in-neighbours of y
    let g = build_group(&GroupSpec::parse("Sz:8").unwrap()).unwrap();
    let cd = structure(&g);
    let y = (0..g.order() as u32)
        .find(|&x| cd.element_order[x as usize] == 13)
        .unwrap();
    let k = normalizer_of_cyclic(&g, y);
    assert_eq!(k.len(), 52);
    assert!(engel_graph::engel::nc_certificate(&g, y, &k).unwrap());

    // rejecting K = G
    let whole = engel_graph::grp::Subgroup::whole(&g);
    assert!(engel_graph::engel::nc_certificate(&g, y, &whole).is_err());
}

#[test]
fn aut_suzuki_nc_certificate() {
    let g = build_group(&GroupSpec::parse("Sz:8.fieldaut:3").unwrap()).unwrap();
    assert_eq!(g.order(), 87360);
    let cd = structure(&g);
    // pick the order-13 element whose cyclic normalizer is largest (the
    // field-automorphism-invariant torus)
    let mut best: Option<(u32, engel_graph::grp::Subgroup)> = None;
    for c in 0..cd.n_classes() {
        let rep = cd.reps[c];
        if cd.element_order[rep as usize] != 13 {
            continue;
        }
        let k = normalizer_of_cyclic(&g, rep);
        if best.as_ref().map_or(true, |(_, b)| k.len() > b.len()) {
            best = Some((rep, k));
        }
    }
    let (y, k) = best.expect("order-13 elements exist");
    assert_eq!(k.len(), 156, "invariant torus normalizer picks up the field part");
    assert!(engel_graph::engel::nc_certificate(&g, y, &k).unwrap());
}
