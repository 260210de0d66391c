//! Large-group reference counts (implicit arcs): kept as a separate target
//! so the long-running cases are easy to filter.

use engel_graph::engel::Word;
use engel_graph::graph::{build_engel_graph, scc};
use engel_graph::grp::{build_group, structure, GroupSpec};
use std::time::Instant;

#[test]
fn psl3_4_reference_counts() {
    let t0 = Instant::now();
    let g = build_group(&GroupSpec::parse("PSL:3:4").unwrap()).unwrap();
    assert_eq!(g.order(), 20160);
    let cd = structure(&g);
    println!("build+structure: {:?}", t0.elapsed());

    let t = Instant::now();
    let d1 = build_engel_graph(&g, &cd, Word::Fixed(1)).unwrap();
    let r1 = scc(Some(&g), Some(&cd), &d1);
    println!("Gamma_1: {} comps, {:?}", r1.count, t.elapsed());
    assert_eq!(r1.count, 3257);

    let t = Instant::now();
    let d2 = build_engel_graph(&g, &cd, Word::Fixed(2)).unwrap();
    let r2 = scc(Some(&g), Some(&cd), &d2);
    println!("Gamma_2: {} comps, {:?}", r2.count, t.elapsed());
    assert_eq!(r2.count, 961);

    let t = Instant::now();
    let d3 = build_engel_graph(&g, &cd, Word::Fixed(3)).unwrap();
    let r3 = scc(Some(&g), Some(&cd), &d3);
    println!("Gamma_3: {} comps, {:?}", r3.count, t.elapsed());
    assert!(r3.is_strongly_connected());
    println!("total: {:?}", t0.elapsed());
}

#[test]
fn psu4_2_reference_counts() {
    let t0 = Instant::now();
    let g = build_group(&GroupSpec::parse("PSU:4:2").unwrap()).unwrap();
    assert_eq!(g.order(), 25920);
    let cd = structure(&g);
    println!("build+structure: {:?}", t0.elapsed());

    let t = Instant::now();
    let d1 = build_engel_graph(&g, &cd, Word::Fixed(1)).unwrap();
    let r1 = scc(Some(&g), Some(&cd), &d1);
    println!("Gamma_1: {} comps, {:?}", r1.count, t.elapsed());
    assert_eq!(r1.count, 1297);

    let t = Instant::now();
    let d2 = build_engel_graph(&g, &cd, Word::Fixed(2)).unwrap();
    let r2 = scc(Some(&g), Some(&cd), &d2);
    println!("Gamma_2: {} comps, {:?}", r2.count, t.elapsed());
    assert!(r2.is_strongly_connected());
    println!("total: {:?}", t0.elapsed());
}

#[test]
fn suzuki_8_cumulative_not_strongly_connected() {
    let t0 = Instant::now();
    let g = build_group(&GroupSpec::parse("Sz:8").unwrap()).unwrap();
    assert_eq!(g.order(), 29120);
    let cd = structure(&g);
    println!("build+structure: {:?}", t0.elapsed());
    let t = Instant::now();
    let d = build_engel_graph(&g, &cd, Word::Cumulative).unwrap();
    let r = scc(Some(&g), Some(&cd), &d);
    println!("Gamma: {} comps, {:?}", r.count, t.elapsed());
    assert!(!r.is_strongly_connected());
    println!("total: {:?}", t0.elapsed());
}
