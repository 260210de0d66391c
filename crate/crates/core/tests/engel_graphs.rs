//! Engel-graph integration tests: reference component counts on small
//! groups, equivariant-oracle correctness, and serialization round trips.

use engel_graph::engel::Word;
use engel_graph::graph::{build_engel_graph, export_json, import_json, scc};
use engel_graph::grp::{build_group, structure, GroupSpec};

fn counts(desc: &str, word: Word) -> (usize, usize, bool) {
    let g = build_group(&GroupSpec::parse(desc).unwrap()).unwrap();
    let cd = structure(&g);
    let d = build_engel_graph(&g, &cd, word).unwrap();
    let r = scc(Some(&g), Some(&cd), &d);
    (d.n_vertices(), r.count, r.is_strongly_connected())
}

#[test]
fn psl2_7_reference_counts() {
    // reference counts: 37 components for the commuting graph, 9 for the
    // second Engel graph, strongly connected from the third on
    let (v1, c1, _) = counts("PSL2:7", Word::Fixed(1));
    assert_eq!(v1, 167);
    assert_eq!(c1, 37);
    let (v2, c2, _) = counts("PSL2:7", Word::Fixed(2));
    assert_eq!(v2, 167);
    assert_eq!(c2, 9);
    let (_, _, sc3) = counts("PSL2:7", Word::Fixed(3));
    assert!(sc3);
}

#[test]
fn psl2_5_cumulative() {
    let (v, _, sc) = counts("PSL2:5", Word::Cumulative);
    assert_eq!(v, 59);
    assert!(!sc); // q = 5 mod 8
}

#[test]
fn alt5_matches_psl2_4() {
    // Alt(5) and PSL2(4) are isomorphic; their graphs agree numerically
    let a = counts("Alt:5", Word::Fixed(2));
    let b = counts("PSL2:4", Word::Fixed(2));
    assert_eq!(a, b);
    assert!(!a.2);
}

#[test]
fn equivariant_oracle_matches_direct() {
    use engel_graph::engel::{is_arc, EngelScratch};
    use engel_graph::util::XorShift;
    let g = build_group(&GroupSpec::parse("PSL2:11").unwrap()).unwrap();
    let cd = structure(&g);
    let word = Word::Fixed(2);
    let d = build_engel_graph(&g, &cd, word).unwrap();
    let mut rng = XorShift::new(42);
    let mut scratch = EngelScratch::new(g.order());
    for _ in 0..100 {
        let x = 1 + rng.below(g.order() - 1) as u32;
        let pos = d.vpos[x as usize];
        let mut from_oracle: Vec<u32> = d
            .out_neighbors(Some(&g), Some(&cd), pos)
            .iter()
            .map(|&p| d.vertices[p as usize])
            .collect();
        from_oracle.sort_unstable();
        let mut direct: Vec<u32> = (1..g.order() as u32)
            .filter(|&y| is_arc(&g, x, y, word, &mut scratch))
            .collect();
        direct.sort_unstable();
        assert_eq!(from_oracle, direct, "implicit oracle disagrees at x = {x}");
    }
}

#[test]
fn scc_against_transitive_closure() {
    // Floyd-Warshall style reachability oracle on every graph <= 200 vertices
    use engel_graph::util::Bitset;
    for (desc, word) in [
        ("Sym:4", Word::Fixed(1)),
        ("Sym:4", Word::Fixed(2)),
        ("Sym:4", Word::Cumulative),
        ("SL2:3", Word::Cumulative),
        ("Alt:5", Word::Fixed(2)),
        ("Alt:5", Word::Cumulative),
        ("AGL1:5", Word::Cumulative),
        ("Dihedral:12", Word::Cumulative),
        ("PSL2:7", Word::Fixed(2)),
    ] {
        let g = build_group(&GroupSpec::parse(desc).unwrap()).unwrap();
        let cd = structure(&g);
        let d = build_engel_graph(&g, &cd, word).unwrap();
        let n = d.n_vertices();
        if n > 200 {
            continue;
        }
        let r = scc(Some(&g), Some(&cd), &d);
        if n == 0 {
            assert!(r.empty);
            continue;
        }
        // dense transitive closure
        let mut reach: Vec<Bitset> = (0..n).map(|_| Bitset::new(n)).collect();
        for p in 0..n as u32 {
            reach[p as usize].set(p as usize);
            for w in d.out_neighbors(Some(&g), Some(&cd), p) {
                reach[p as usize].set(w as usize);
            }
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                let row = reach[i].clone();
                let mut new_row = row.clone();
                for j in row.iter_ones() {
                    new_row.or_assign(&reach[j]);
                }
                if new_row != reach[i] {
                    reach[i] = new_row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let same = reach[i].get(j) && reach[j].get(i);
                assert_eq!(
                    same,
                    r.comp_of[i] == r.comp_of[j],
                    "{desc} {word:?}: transitive closure disagrees at ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn arc_sets_nest_with_n() {
    // arcs of Gamma_1 inside Gamma_2 inside Gamma_3 on the common vertex set
    let g = build_group(&GroupSpec::parse("PSL2:7").unwrap()).unwrap();
    let cd = structure(&g);
    let graphs: Vec<_> = (1..=3)
        .map(|n| build_engel_graph(&g, &cd, Word::Fixed(n)).unwrap())
        .collect();
    for w in 0..2 {
        let (a, b) = (&graphs[w], &graphs[w + 1]);
        for pos in 0..a.n_vertices() as u32 {
            let va = a.vertices[pos as usize];
            let pb = b.vpos[va as usize];
            let outs_b: std::collections::HashSet<u32> = b
                .out_neighbors(Some(&g), Some(&cd), pb)
                .iter()
                .map(|&p| b.vertices[p as usize])
                .collect();
            for wpos in a.out_neighbors(Some(&g), Some(&cd), pos) {
                let target = a.vertices[wpos as usize];
                assert!(outs_b.contains(&target), "nesting fails at n = {}", w + 1);
            }
        }
    }
    assert!(graphs[0].arc_count <= graphs[1].arc_count);
    assert!(graphs[1].arc_count <= graphs[2].arc_count);
}

#[test]
fn psl2_5_gamma2_export_reimport() {
    let g = build_group(&GroupSpec::parse("PSL2:5").unwrap()).unwrap();
    let cd = structure(&g);
    let d = build_engel_graph(&g, &cd, Word::Fixed(2)).unwrap();
    let r = scc(Some(&g), Some(&cd), &d);
    let doc = export_json(&d, Some(&g), Some(&cd), Some(&r));
    let back = import_json(doc.as_bytes()).unwrap();
    let r2 = scc(None, None, &back);
    assert_eq!(r.count, r2.count);
    let mut s1 = r.sizes.clone();
    let mut s2 = r2.sizes.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    assert_eq!(s1, s2);
}

#[test]
fn commuting_components_of_order_7_elements() {
    // the order-7 elements of PSL2(7) split into commuting-graph components
    // of size 6, each a Sylow 7-subgroup minus the identity
    let g = build_group(&GroupSpec::parse("PSL2:7").unwrap()).unwrap();
    let cd = structure(&g);
    let d = build_engel_graph(&g, &cd, Word::Fixed(1)).unwrap();
    let r = scc(Some(&g), Some(&cd), &d);
    let mut comp_sizes: std::collections::HashMap<u32, u32> = Default::default();
    for pos in 0..d.n_vertices() {
        let v = d.vertices[pos];
        if cd.element_order[v as usize] == 7 {
            *comp_sizes.entry(r.comp_of[pos]).or_insert(0) += 1;
        }
    }
    assert_eq!(comp_sizes.len(), 8); // 8 Sylow 7-subgroups
    assert!(comp_sizes.values().all(|&s| s == 6));
    // and those components contain nothing else
    for pos in 0..d.n_vertices() {
        let v = d.vertices[pos];
        if comp_sizes.contains_key(&r.comp_of[pos]) {
            assert_eq!(cd.element_order[v as usize], 7);
        }
    }
}
