//! Structure-theory examples: hypercenter, quotients, Frobenius detection,
//! normalizers, Sylow subgroups, and prime graphs on named small groups.

use engel_graph::grp::*;

fn g(desc: &str) -> (Group, ClassData) {
    let grp = build_group(&GroupSpec::parse(desc).unwrap()).unwrap();
    let cd = structure(&grp);
    (grp, cd)
}

#[test]
fn orders_match_known_values() {
    for (desc, order) in [
        ("PSL2:7", 168),
        ("Sz:8", 29120),
        ("Alt:5", 60),
        ("PSL:3:4", 20160),
        ("PSU:4:2", 25920),
        ("PGL2:9", 720),
        ("SL2:5", 120),
        ("AGL1:5", 20),
        ("Sp:4:2", 720),
    ] {
        let spec = GroupSpec::parse(desc).unwrap();
        assert_eq!(expected_order(&spec).unwrap(), order, "{desc}");
        if order <= 30000 {
            assert_eq!(build_group(&spec).unwrap().order() as u64, order, "{desc}");
        }
    }
}

#[test]
fn alt5_class_sizes() {
    let (_, cd) = g("Alt:5");
    let mut sizes = cd.sizes.clone();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
}

#[test]
fn hypercenter_examples() {
    // non-abelian simple: trivial
    let (a5, cd) = g("Alt:5");
    assert_eq!(hypercenter(&a5, &cd).len(), 1);
    // SL2(3): center of order 2, quotient A4 is centerless
    let (sl23, cd) = g("SL2:3");
    assert_eq!(hypercenter(&sl23, &cd).len(), 2);
    // nilpotent: the whole group
    let (d8, cd) = g("Dihedral:8");
    assert_eq!(hypercenter(&d8, &cd).len(), 8);
}

#[test]
fn quotient_examples() {
    let (sl25, cd) = g("SL2:5");
    let z = center(&sl25, &cd);
    assert_eq!(z.len(), 2);
    let (q, _) = quotient(&sl25, &z).unwrap();
    assert_eq!(q.order(), 60);
    // G / G is trivial, G / 1 is G
    let whole = Subgroup::whole(&sl25);
    let (t, _) = quotient(&sl25, &whole).unwrap();
    assert_eq!(t.order(), 1);
    let triv = Subgroup::trivial(sl25.order());
    let (same, _) = quotient(&sl25, &triv).unwrap();
    assert_eq!(same.order(), 120);
}

#[test]
fn frobenius_examples() {
    let (a4, cd) = g("Alt:4");
    let kernel = is_frobenius(&a4, &cd).unwrap().expect("A4 is Frobenius");
    assert_eq!(kernel.len(), 4);

    let (agl, cd) = g("AGL1:5");
    let kernel = is_frobenius(&agl, &cd).unwrap().expect("AGL(1,5) is Frobenius");
    assert_eq!(kernel.len(), 5);

    let (s4, cd) = g("Sym:4");
    assert!(is_frobenius(&s4, &cd).unwrap().is_none());
}

#[test]
fn normalizer_examples() {
    let (psl27, cd) = g("PSL2:7");
    let y = (0..168u32)
        .find(|&x| cd.element_order[x as usize] == 7)
        .unwrap();
    assert_eq!(normalizer_of_cyclic(&psl27, y).len(), 21);
    // y = identity: the whole group
    assert_eq!(normalizer_of_cyclic(&psl27, 0).len(), 168);
    // o(y) | (q+1)/2, y != 1: dihedral of order q+1
    let y4 = (0..168u32)
        .find(|&x| cd.element_order[x as usize] == 4)
        .unwrap();
    assert_eq!(normalizer_of_cyclic(&psl27, y4).len(), 8);
}

#[test]
fn sylow_subgroups() {
    let (psl27, cd) = g("PSL2:7");
    assert_eq!(sylow(&psl27, &cd, 2).len(), 8);
    assert_eq!(sylow(&psl27, &cd, 7).len(), 7);
    let (sz8, cd8) = g("Sz:8");
    assert_eq!(sylow(&sz8, &cd8, 2).len(), 64);
}

#[test]
fn prime_graph_examples() {
    let (psl27, cd) = g("PSL2:7");
    let pg = spectrum_prime_graph(&psl27, &cd);
    assert_eq!(pg.primes, vec![2, 3, 7]);
    assert!(pg.edges.is_empty());
    assert_eq!(pg.components.len(), 3);

    let (c6, cd6) = g("Cyclic:6");
    let pg6 = spectrum_prime_graph(&c6, &cd6);
    assert_eq!(pg6.edges, vec![(2, 3)]);
    assert_eq!(pg6.components.len(), 1);

    let (sz8, cd8) = g("Sz:8");
    let pg8 = spectrum_prime_graph(&sz8, &cd8);
    assert_eq!(pg8.components.len(), 4); // {2}, {5}, {7}, {13}
    let mut orders: Vec<u32> = cd8.element_order.clone();
    orders.sort_unstable();
    orders.dedup();
    assert_eq!(orders, vec![1, 2, 4, 5, 7, 13]);
}

#[test]
fn psl2_odd_has_two_unipotent_classes() {
    for q in [5u64, 7, 9, 13] {
        let (psl, cd) = g(&format!("PSL2:{q}"));
        let p = engel_graph::util::prime_power(q).unwrap().0;
        let classes: std::collections::HashSet<u32> = (0..psl.order() as u32)
            .filter(|&x| cd.element_order[x as usize] as u64 == p)
            .map(|x| cd.class_id[x as usize])
            .collect();
        assert_eq!(classes.len(), 2, "q = {q}");
    }
}

#[test]
fn subgroup_extraction_roundtrip() {
    let (psl27, cd) = g("PSL2:7");
    let syl = sylow(&psl27, &cd, 7);
    let nrm = normalizer_of_subgroup(&psl27, &syl);
    assert_eq!(nrm.len(), 21);
    let (ng, map) = subgroup_as_group(&psl27, &nrm, "N21".into()).unwrap();
    assert_eq!(ng.order(), 21);
    // multiplication carries over through the position map
    for i in 0..21u32 {
        for j in 0..21u32 {
            let prod = psl27.mul(map[i as usize], map[j as usize]);
            assert_eq!(map[ng.mul(i, j) as usize], prod);
        }
    }
}
