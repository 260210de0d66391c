//! Property suites over the small test set: the exact involution commutator
//! identity, the normalizer depth bound, equivariance and monotonicity of
//! Engel words, class-constant mass conservation, and the field-arithmetic
//! sweeps.

use engel_graph::engel::{engel_word, is_arc, EngelScratch, Word};
use engel_graph::ff::field_create;
use engel_graph::grp::{
    build_group, center, extension_by_automorphism, hypercenter, normalizer_of_cyclic, quotient,
    structure, ClassData, Group, GroupSpec,
};
use engel_graph::util::{prime_power, XorShift};
use engel_graph::witness::class_constant;
use proptest::prelude::*;

/// Groups of order <= 2000 exercised by the property suites.
const SMALL_TEST_SET: &[&str] = &[
    "Sym:3",
    "Sym:4",
    "Alt:4",
    "Alt:5",
    "SL2:3",
    "SL2:5",
    "AGL1:5",
    "AGL1:7",
    "Dihedral:8",
    "Dihedral:12",
    "Cyclic:12",
    "PSL2:7",
    "PSL2:8",
    "PSL2:9",
    "PSL2:11",
    "PSL2:13",
    "PGL2:5",
    "PGL2:7",
    "PSL2:9.fieldaut:2",
];

fn groups() -> Vec<(String, Group, ClassData)> {
    SMALL_TEST_SET
        .iter()
        .map(|d| {
            let g = build_group(&GroupSpec::parse(d).unwrap()).unwrap();
            assert!(g.order() <= 2000, "{d} is not small");
            let cd = structure(&g);
            (d.to_string(), g, cd)
        })
        .collect()
}

#[test]
fn involution_commutator_identity_exact() {
    // for o(y) = 2: [x, n y] = [x,y]^((-2)^(n-1)), exhaustively
    for (desc, g, cd) in groups() {
        let involutions: Vec<u32> = (0..g.order() as u32)
            .filter(|&y| cd.element_order[y as usize] == 2)
            .collect();
        for &y in &involutions {
            for x in 0..g.order() as u32 {
                let c = g.comm(x, y);
                let o = cd.element_order[c as usize] as i64;
                let mut z = x;
                for n in 1..=6u32 {
                    z = g.comm(z, y);
                    // exponent (-2)^(n-1) mod o
                    let mut e: i64 = 1;
                    for _ in 1..n {
                        e = (-2 * e).rem_euclid(o);
                    }
                    let want = g.pow(c, e.rem_euclid(o) as u64);
                    assert_eq!(z, want, "{desc}: identity fails at x={x} y={y} n={n}");
                }
            }
        }
    }
}

#[test]
fn normalizer_depth_at_most_two() {
    for (desc, g, _) in groups() {
        for y in 0..g.order() as u32 {
            let nrm = normalizer_of_cyclic(&g, y);
            for &x in &nrm.elems {
                assert_eq!(
                    engel_word(&g, x, y, 2),
                    0,
                    "{desc}: depth > 2 for x={x} in N(<y>), y={y}"
                );
            }
        }
    }
}

#[test]
fn engel_equivariance_and_monotonicity() {
    for (desc, g, _) in groups() {
        let n = g.order();
        let mut rng = XorShift::new(0xabc ^ n as u64);
        for _ in 0..200 {
            let x = rng.below(n) as u32;
            let y = rng.below(n) as u32;
            let h = rng.below(n) as u32;
            let k = 1 + rng.below(4) as u32;
            let lhs = g.conj(engel_word(&g, x, y, k), h);
            let rhs = engel_word(&g, g.conj(x, h), g.conj(y, h), k);
            assert_eq!(lhs, rhs, "{desc}: equivariance fails");
            // monotonicity: once the word hits 1 it stays 1
            if engel_word(&g, x, y, k) == 0 {
                assert_eq!(engel_word(&g, x, y, k + 1), 0, "{desc}: not absorbing");
                assert_eq!(engel_word(&g, x, y, k + 3), 0, "{desc}: not absorbing");
            }
        }
    }
}

#[test]
fn engel_depth_agrees_with_naive_iteration() {
    for desc in ["Sym:4", "SL2:3", "Alt:5", "PSL2:7", "Dihedral:12"] {
        let g = build_group(&GroupSpec::parse(desc).unwrap()).unwrap();
        if g.order() > 500 {
            continue;
        }
        let mut scratch = EngelScratch::new(g.order());
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                let r = engel_graph::engel::engel_depth(&g, x, y, &mut scratch);
                let mut z = x;
                let mut reached = None;
                for step in 0..=g.order() as u32 {
                    if z == 0 {
                        reached = Some(step);
                        break;
                    }
                    z = g.comm(z, y);
                }
                assert_eq!(r.reached_identity, reached.is_some(), "{desc} ({x},{y})");
                assert_eq!(r.depth, reached, "{desc} ({x},{y})");
            }
        }
    }
}

#[test]
fn class_constant_mass_conservation() {
    for (desc, g, cd) in groups() {
        let k = cd.n_classes() as u32;
        for i in 0..k {
            for j in 0..k {
                let mut total: u64 = 0;
                for v in 0..k {
                    total += class_constant(&g, &cd, i, j, v).unwrap()
                        * cd.sizes[v as usize] as u64;
                }
                let want = cd.sizes[i as usize] as u64 * cd.sizes[j as usize] as u64;
                assert_eq!(total, want, "{desc}: mass conservation fails at ({i},{j})");
            }
        }
        // inversion symmetry for one sample triple
        if k >= 3 {
            let inv_class = |c: u32| cd.class_id[g.inv(cd.reps[c as usize]) as usize];
            let (i, j, v) = (1u32, 2u32, 1u32);
            let a = class_constant(&g, &cd, i, j, v).unwrap();
            let b = class_constant(&g, &cd, inv_class(j), inv_class(i), inv_class(v)).unwrap();
            assert_eq!(a, b, "{desc}: inversion symmetry fails");
        }
    }
}

#[test]
fn hypercenter_properties() {
    for (desc, g, cd) in groups() {
        let z = hypercenter(&g, &cd);
        assert!(z.is_normal(&g), "{desc}: hypercenter not normal");
        if z.len() < g.order() {
            // center of the quotient by the hypercenter is trivial
            let (q, _) = quotient(&g, &z).unwrap();
            let qcd = structure(&q);
            assert_eq!(center(&q, &qcd).len(), 1, "{desc}: Z(G/Z_inf) nontrivial");
        }
    }
}

#[test]
fn extension_restricted_to_base_is_the_base() {
    let l = build_group(&GroupSpec::parse("PSL2:9").unwrap()).unwrap();
    let n = l.order();
    // Frobenius-induced automorphism
    let spec = GroupSpec::parse("PSL2:9.fieldaut:2").unwrap();
    let ext = build_group(&spec).unwrap();
    assert_eq!(ext.order(), 720);
    let l2 = build_group(&GroupSpec::parse("PSL2:9").unwrap()).unwrap();
    let mut rng = XorShift::new(7);
    for _ in 0..500 {
        let a = rng.below(n) as u32;
        let b = rng.below(n) as u32;
        assert_eq!(ext.mul(a, b), l2.mul(a, b), "(.,0) slice differs from L");
    }
    // degenerate extension by the identity
    let ident: Vec<u32> = (0..n as u32).collect();
    let triv = extension_by_automorphism(l, ident, 1).unwrap();
    assert_eq!(triv.order(), n);
}

#[test]
fn field_is_square_exhaustive_sweep() {
    // every prime power q <= 10^4: is_square agrees with exhaustive squaring;
    // for q = 1 mod 4 additionally 2i is a square where i^2 = -1
    for q in 2..=10_000u64 {
        let Some((p, f)) = prime_power(q) else {
            continue;
        };
        let ctx = field_create(p, f).unwrap();
        let mut squares = vec![false; q as usize];
        for y in 0..q as u32 {
            squares[ctx.mul(y, y) as usize] = true;
        }
        for x in 0..q as u32 {
            assert_eq!(
                ctx.is_square(x),
                squares[x as usize],
                "is_square disagrees at q={q}, x={x}"
            );
        }
        if q % 4 == 1 {
            let i = ctx.element_of_order(4).unwrap();
            assert_eq!(ctx.mul(i, i), ctx.neg(1));
            assert!(ctx.is_square(ctx.add(i, i)), "2i not a square for q={q}");
        }
    }
}

#[test]
fn relative_trace_frobenius_fixed_and_linear() {
    use engel_graph::ff::SubfieldEmbedding;
    for (p, fs, fb) in [(2u64, 1u32, 4u32), (3, 1, 2), (3, 2, 6), (5, 1, 2), (2, 2, 6)] {
        let small = field_create(p, fs).unwrap();
        let big = field_create(p, fb).unwrap();
        let emb = SubfieldEmbedding::new(&small, &big).unwrap();
        let qs = small.q;
        let mut rng = XorShift::new(fb as u64);
        for _ in 0..64 {
            let x = (rng.next_u64() % big.q as u64) as u32;
            let y = (rng.next_u64() % big.q as u64) as u32;
            let tx = emb.rel_trace(&small, &big, x).unwrap();
            // fixed by the small-field Frobenius
            assert_eq!(small.pow(tx, qs as i128).unwrap(), tx);
            // additive and GF(small)-linear
            let txy = emb.rel_trace(&small, &big, big.add(x, y)).unwrap();
            assert_eq!(small.add(tx, emb.rel_trace(&small, &big, y).unwrap()), txy);
            let lam = (rng.next_u64() % qs as u64) as u32;
            let lx = emb.rel_trace(&small, &big, big.mul(emb.embed(lam), x)).unwrap();
            assert_eq!(small.mul(lam, tx), lx);
        }
    }
}

#[test]
fn witness_reports_replay() {
    use engel_graph::witness::{nr1_witness, psl_companion_witness};
    // determinism: identical runs, and found reports verify from payload
    for q in [5u64, 13, 17] {
        let a = nr1_witness(q).unwrap();
        let b = nr1_witness(q).unwrap();
        assert!(a.found);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
    let a = psl_companion_witness(3, 3).unwrap();
    let b = psl_companion_witness(3, 3).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_random(seed in 0u64..1_000_000) {
        let fields = [(2u64, 5u32), (3, 3), (5, 2), (7, 1), (13, 1)];
        let (p, f) = fields[(seed % fields.len() as u64) as usize];
        let ctx = field_create(p, f).unwrap();
        let mut rng = XorShift::new(seed | 1);
        let a = (rng.next_u64() % ctx.q as u64) as u32;
        let b = (rng.next_u64() % ctx.q as u64) as u32;
        let c = (rng.next_u64() % ctx.q as u64) as u32;
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        if a != 0 {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn arc_monotonicity_random(seed in 0u64..100_000) {
        let g = build_group(&GroupSpec::parse("Alt:5").unwrap()).unwrap();
        let mut rng = XorShift::new(seed | 1);
        let x = rng.below(60) as u32;
        let y = rng.below(60) as u32;
        let mut scratch = EngelScratch::new(60);
        let mut prev = false;
        for n in 1..=8u32 {
            let now = is_arc(&g, x, y, Word::Fixed(n), &mut scratch);
            if prev {
                prop_assert!(now, "arc lost at n = {}", n);
            }
            prev = now;
        }
        if prev {
            prop_assert!(is_arc(&g, x, y, Word::Cumulative, &mut scratch));
        }
    }
}
