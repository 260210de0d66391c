//! Verification suites behind `engel verify`: reference component counts,
//! witness constructions, the coset-graph instances, property checks, and
//! oracle cross-validation. Each check records expectation, observation, and
//! runtime; the suite passes only if every executed check passes.

use crate::cache::Cache;
use crate::report::{CheckReport, SuiteReport};
use anyhow::Result;
use engel_graph::classify::cross_validate;
use engel_graph::engel::{engel_word, nc_certificate, Word};
use engel_graph::graph::{
    assemble_graph, build_engel_graph, engel_vertex_set, rep_out_sets, scc,
    weak_components_and_diameter, Digraph, SccResult,
};
use engel_graph::grp::{
    build_group, normalizer_of_cyclic, structure, ClassData, Group, GroupSpec,
};
use engel_graph::util::{v2, XorShift};
use engel_graph::witness::{
    class_constant, field_aut_commutator_check, lemma3_check, nr1_witness, paley_graph,
    pgl2_witness, psl2_coset_coverage, psl_companion_witness, sp4_even_witness, unitary_witness,
    FieldAutCase,
};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Paper,
    Properties,
    Witness,
    Delta,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "paper" => Suite::Paper,
            "properties" => Suite::Properties,
            "witness" => Suite::Witness,
            "delta" => Suite::Delta,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Paper => "paper",
            Suite::Properties => "properties",
            Suite::Witness => "witness",
            Suite::Delta => "delta",
        }
    }
}

type GroupRegistry = Mutex<HashMap<String, Arc<(Group, ClassData)>>>;

/// Process-wide cache of built groups so suites and criteria share work.
fn shared_group(desc: &str) -> Result<Arc<(Group, ClassData)>> {
    static GROUPS: OnceLock<GroupRegistry> = OnceLock::new();
    let map = GROUPS.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = map.lock().unwrap();
        if let Some(g) = guard.get(desc) {
            return Ok(g.clone());
        }
    }
    let spec = GroupSpec::parse(desc)?;
    let g = build_group(&spec)?;
    let cd = structure(&g);
    let arc = Arc::new((g, cd));
    map.lock().unwrap().insert(desc.to_string(), arc.clone());
    Ok(arc)
}

/// Engel digraph with optional bitset caching; honors the full-graph cap.
pub fn engel_digraph(
    g: &Group,
    cd: &ClassData,
    word: Word,
    cache: Option<&Cache>,
) -> Result<Digraph> {
    if g.order() > engel_graph::grp::FULL_GRAPH_CAP {
        anyhow::bail!(
            "group order {} exceeds the full-graph cap {}",
            g.order(),
            engel_graph::grp::FULL_GRAPH_CAP
        );
    }
    if let Some(c) = cache {
        if let Some((vertices, rep_out)) = c.load_rep_out(g.descriptor(), word, g, cd) {
            return Ok(assemble_graph(g, cd, word, vertices, rep_out));
        }
    }
    let vertices = engel_vertex_set(g, cd, word);
    let rep_out = rep_out_sets(g, cd, word, &vertices);
    if let Some(c) = cache {
        let _ = c.store_rep_out(g.descriptor(), word, g, cd, &vertices, &rep_out);
    }
    Ok(assemble_graph(g, cd, word, vertices, rep_out))
}

fn scc_of(desc: &str, word: Word, cache: Option<&Cache>) -> Result<(Digraph, SccResult)> {
    let shared = shared_group(desc)?;
    let (g, cd) = (&shared.0, &shared.1);
    let d = engel_digraph(g, cd, word, cache)?;
    let r = scc(Some(g), Some(cd), &d);
    Ok((d, r))
}

pub fn run_suite(suite: Suite, filter: &str, cache: Option<&Cache>) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    match suite {
        Suite::Paper => paper_suite(&mut checks, filter, cache)?,
        Suite::Witness => witness_suite(&mut checks, filter)?,
        Suite::Delta => delta_suite(&mut checks, filter)?,
        Suite::Properties => properties_suite(&mut checks, filter, cache)?,
    }
    Ok(SuiteReport::new(suite.name(), filter, checks))
}

fn wanted(filter: &str, name: &str) -> bool {
    filter.is_empty() || name.contains(filter)
}

macro_rules! run_check {
    ($checks:expr, $filter:expr, $name:expr, $body:expr) => {
        if wanted($filter, $name) {
            let t0 = Instant::now();
            let (expected, observed, pass): (String, String, bool) = $body?;
            $checks.push(CheckReport::new($name, expected, observed, pass, t0));
        }
    };
}

fn count_check(
    desc: &str,
    word: Word,
    expected_count: usize,
    cache: Option<&Cache>,
) -> Result<(String, String, bool)> {
    let (_, r) = scc_of(desc, word, cache)?;
    Ok((
        format!("{expected_count} components"),
        format!("{} components", r.count),
        r.count == expected_count,
    ))
}

fn sc_check(
    desc: &str,
    word: Word,
    expect_sc: bool,
    cache: Option<&Cache>,
) -> Result<(String, String, bool)> {
    let (_, r) = scc_of(desc, word, cache)?;
    Ok((
        format!("strongly connected = {expect_sc}"),
        format!(
            "strongly connected = {} ({} components)",
            r.is_strongly_connected(),
            r.count
        ),
        r.is_strongly_connected() == expect_sc,
    ))
}

// ---------------------------------------------------------------------------
// paper suite: reference component counts and connectivity statements
// ---------------------------------------------------------------------------

fn paper_suite(checks: &mut Vec<CheckReport>, filter: &str, cache: Option<&Cache>) -> Result<()> {
    // PSL2(7): 37 / 9 / strongly connected
    run_check!(checks, filter, "psl27.gamma1", count_check("PSL2:7", Word::Fixed(1), 37, cache));
    run_check!(checks, filter, "psl27.gamma2", count_check("PSL2:7", Word::Fixed(2), 9, cache));
    run_check!(checks, filter, "psl27.gamma3", sc_check("PSL2:7", Word::Fixed(3), true, cache));

    // PSL3(4): 3257 / 961 / strongly connected
    run_check!(checks, filter, "psl34.gamma1", count_check("PSL:3:4", Word::Fixed(1), 3257, cache));
    run_check!(checks, filter, "psl34.gamma2", count_check("PSL:3:4", Word::Fixed(2), 961, cache));
    run_check!(checks, filter, "psl34.gamma3", sc_check("PSL:3:4", Word::Fixed(3), true, cache));

    // PSU4(2): 1297 / strongly connected, and the even-order component
    run_check!(checks, filter, "psu42.gamma1", count_check("PSU:4:2", Word::Fixed(1), 1297, cache));
    run_check!(checks, filter, "psu42.gamma2", sc_check("PSU:4:2", Word::Fixed(2), true, cache));
    run_check!(checks, filter, "psu42.even-component", {
        let shared = shared_group("PSU:4:2")?;
        let (g, cd) = (&shared.0, &shared.1);
        let d = engel_digraph(g, cd, Word::Fixed(1), cache)?;
        let r = scc(Some(g), Some(cd), &d);
        let mut comps = std::collections::HashSet::new();
        for pos in 0..d.n_vertices() {
            let v = d.vertices[pos];
            if cd.element_order[v as usize] % 2 == 0 {
                comps.insert(r.comp_of[pos]);
            }
        }
        Ok::<_, anyhow::Error>((
            "1 commuting component holds all even-order elements".to_string(),
            format!("{} component(s)", comps.len()),
            comps.len() == 1,
        ))
    });

    // the threshold matrix for PSL2(q), q odd
    for &q in &[5u64, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29] {
        let threshold: Option<u32> = if q % 8 == 5 {
            None
        } else if q == 9 {
            Some(3)
        } else if q % 8 == 1 {
            Some(2)
        } else {
            Some(v2(q.div_ceil(2)) + 1)
        };
        for n in [2u32, 3] {
            let name = format!("tired.q{q}.gamma{n}");
            run_check!(checks, filter, &name, {
                let expect = threshold.map(|t| n >= t).unwrap_or(false);
                sc_check(&format!("PSL2:{q}"), Word::Fixed(n), expect, cache)
            });
        }
    }
    // q = 13 is never strongly connected: certify further up the ladder
    for n in [4u32, 5, 6] {
        let name = format!("tired.q13.gamma{n}");
        run_check!(checks, filter, &name, sc_check("PSL2:13", Word::Fixed(n), false, cache));
    }
    run_check!(checks, filter, "tired.q13.sink-argument", {
        // no involution has a 2-power commutator with an order-13 element, so
        // the component of such an element in any Gamma_n is its own cyclic
        // subgroup minus the identity
        let lemma = lemma3_check(13)?;
        let shared = shared_group("PSL2:13")?;
        let (g, cd) = (&shared.0, &shared.1);
        let d = engel_digraph(g, cd, Word::Fixed(6), cache)?;
        let r = scc(Some(g), Some(cd), &d);
        let x = (0..g.order() as u32)
            .find(|&v| cd.element_order[v as usize] == 13)
            .unwrap();
        let comp = r.comp_of[d.vpos[x as usize] as usize];
        let size = r
            .comp_of
            .iter()
            .filter(|&&c| c == comp)
            .count();
        let ok = lemma.found && size == 12;
        Ok::<_, anyhow::Error>((
            "lemma holds and the order-13 component is <x> minus 1 (size 12)".to_string(),
            format!("lemma found = {}, component size {size}", lemma.found),
            ok,
        ))
    });

    // PSL2(q) even: cumulative graph not strongly connected, weakly connected
    // of diameter at most 10
    for &q in &[4u64, 8, 16] {
        let name = format!("psl2even.q{q}.not-sc");
        run_check!(checks, filter, &name, sc_check(&format!("PSL2:{q}"), Word::Cumulative, false, cache));
        let name = format!("psl2even.q{q}.weak-diameter");
        run_check!(checks, filter, &name, {
            let shared = shared_group(&format!("PSL2:{q}"))?;
            let (g, cd) = (&shared.0, &shared.1);
            let d = engel_digraph(g, cd, Word::Cumulative, cache)?;
            let (comps, diam) = weak_components_and_diameter(Some(g), Some(cd), &d)?;
            Ok::<_, anyhow::Error>((
                "weakly connected, diameter <= 10".to_string(),
                format!("{comps} weak component(s), diameter {diam}"),
                comps == 1 && diam <= 10,
            ))
        });
    }

    // Suzuki: certificate and full computation
    run_check!(checks, filter, "sz8.nc-certificate", {
        let shared = shared_group("Sz:8")?;
        let (g, cd) = (&shared.0, &shared.1);
        let y = (0..g.order() as u32)
            .find(|&x| cd.element_order[x as usize] == 13)
            .unwrap();
        let k = normalizer_of_cyclic(g, y);
        let ok = nc_certificate(g, y, &k)?;
        Ok::<_, anyhow::Error>((
            "certificate holds on K = N(<y>), |K| = 52".to_string(),
            format!("certificate = {ok}, |K| = {}", k.len()),
            ok && k.len() == 52,
        ))
    });
    run_check!(checks, filter, "sz8.gamma-not-sc", sc_check("Sz:8", Word::Cumulative, false, cache));
    run_check!(checks, filter, "autsz8.nc-certificate", {
        let shared = shared_group("Sz:8.fieldaut:3")?;
        let (g, cd) = (&shared.0, &shared.1);
        let mut best: Option<(u32, engel_graph::grp::Subgroup)> = None;
        for c in 0..cd.n_classes() {
            let rep = cd.reps[c];
            if cd.element_order[rep as usize] != 13 {
                continue;
            }
            let k = normalizer_of_cyclic(g, rep);
            if best.as_ref().is_none_or(|(_, b)| k.len() > b.len()) {
                best = Some((rep, k));
            }
        }
        let (y, k) = best.unwrap();
        let ok = nc_certificate(g, y, &k)?;
        Ok::<_, anyhow::Error>((
            "certificate holds on K = N(<y>) of order 156 in Aut(Sz(8)), order 87360".to_string(),
            format!("certificate = {ok}, |K| = {}, |G| = {}", k.len(), g.order()),
            ok && k.len() == 156 && g.order() == 87360,
        ))
    });

    // PGL2(q) and the socle-PSL2(9) extensions have Gamma_2 strongly connected
    for &q in &[5u64, 7, 9] {
        let name = format!("pgl2.q{q}.gamma2");
        run_check!(checks, filter, &name, sc_check(&format!("PGL2:{q}"), Word::Fixed(2), true, cache));
    }
    run_check!(checks, filter, "psigmal29.gamma2", sc_check("PSL2:9.fieldaut:2", Word::Fixed(2), true, cache));
    Ok(())
}

// ---------------------------------------------------------------------------
// witness suite
// ---------------------------------------------------------------------------

fn report_check(
    found_want: bool,
    r: &engel_graph::witness::WitnessReport,
) -> (String, String, bool) {
    let failed: Vec<&str> = r
        .transcript
        .iter()
        .filter(|c| !c.ok)
        .map(|c| c.claim.as_str())
        .collect();
    (
        format!("found = {found_want}, transcript consistent"),
        if failed.is_empty() {
            format!("found = {}", r.found)
        } else {
            format!("found = {}, failing: {failed:?}", r.found)
        },
        r.found == found_want,
    )
}

fn witness_suite(checks: &mut Vec<CheckReport>, filter: &str) -> Result<()> {
    for &q in &[5u64, 9, 13] {
        let name = format!("paley.q{q}");
        run_check!(checks, filter, &name, {
            let p = paley_graph(q)?;
            Ok::<_, anyhow::Error>(report_check(true, &p.report))
        });
    }
    for &q in &[5u64, 13, 17, 25, 29] {
        let name = format!("nr1.q{q}");
        run_check!(checks, filter, &name, {
            Ok::<_, anyhow::Error>(report_check(true, &nr1_witness(q)?))
        });
    }
    run_check!(checks, filter, "nr1.q9-no-witness", {
        Ok::<_, anyhow::Error>(report_check(false, &nr1_witness(9)?))
    });

    for (m, q, want) in [
        (3u64, 3u64, 2u64),
        (3, 5, 2),
        (5, 3, 2),
        (3, 2, 4),
        (3, 4, 4),
        (5, 2, 4),
    ] {
        let name = format!("companion.m{m}q{q}");
        run_check!(checks, filter, &name, {
            let r = psl_companion_witness(m, q)?;
            let o = r.payload["commutator_order"].as_u64().unwrap_or(0);
            Ok::<_, anyhow::Error>((
                format!("found, o([g,z]) = {want}"),
                format!("found = {}, o([g,z]) = {o}", r.found),
                r.found && o == want,
            ))
        });
    }

    for (m, q) in [(3u64, 3u64), (3, 4), (3, 5), (5, 4)] {
        let name = format!("unitary.m{m}q{q}");
        run_check!(checks, filter, &name, {
            Ok::<_, anyhow::Error>(report_check(true, &unitary_witness(m, q)?))
        });
    }
    run_check!(checks, filter, "unitary.m3q2-rejected", {
        let rejected = unitary_witness(3, 2).is_err();
        Ok::<_, anyhow::Error>((
            "precondition rejects (3,2)".to_string(),
            format!("rejected = {rejected}"),
            rejected,
        ))
    });

    for &q in &[2u64, 4, 8] {
        let name = format!("sp4.q{q}");
        run_check!(checks, filter, &name, {
            Ok::<_, anyhow::Error>(report_check(true, &sp4_even_witness(q)?))
        });
    }

    for &q in &[5u64, 7, 9, 11] {
        let name = format!("pgl2w.q{q}");
        run_check!(checks, filter, &name, {
            Ok::<_, anyhow::Error>(report_check(true, &pgl2_witness(q)?))
        });
    }

    for &q in &[5u64, 7, 11, 13] {
        let name = format!("coset.q{q}");
        run_check!(checks, filter, &name, {
            Ok::<_, anyhow::Error>(report_check(true, &psl2_coset_coverage(q)?))
        });
    }

    // 2-element commutators: exact orders at q = 7, 11; none at 13; some at 17
    for (q, expect) in [(7u64, Some(4u64)), (11, Some(2)), (13, None), (17, Some(0))] {
        let name = format!("lemma3.q{q}");
        run_check!(checks, filter, &name, {
            let r = lemma3_check(q)?;
            let orders: Vec<u64> = r.payload["order_multisets"]
                .as_array()
                .unwrap()
                .iter()
                .flat_map(|cls| cls.as_array().unwrap().iter())
                .map(|pair| pair[0].as_u64().unwrap())
                .filter(|&o| o >= 2 && o.is_power_of_two())
                .collect();
            let pass = r.found
                && match expect {
                    None => orders.is_empty(),
                    Some(0) => !orders.is_empty(),
                    Some(o) => !orders.is_empty() && orders.iter().all(|&x| x == o),
                };
            Ok::<_, anyhow::Error>((
                match expect {
                    None => "no 2-power commutator orders".to_string(),
                    Some(0) => "some 2-power commutator order".to_string(),
                    Some(o) => format!("all 2-power commutator orders equal {o}"),
                },
                format!("found = {}, 2-power orders {orders:?}", r.found),
                pass,
            ))
        });
    }

    run_check!(checks, filter, "fieldaut.psl2-even-square-q16", {
        let r = field_aut_commutator_check(FieldAutCase::Psl2EvenSquare { q0: 4 })?;
        Ok::<_, anyhow::Error>(report_check(true, &r))
    });
    run_check!(checks, filter, "fieldaut.psl2-q02-e3", {
        let r = field_aut_commutator_check(FieldAutCase::Psl2Q02 { e: 3 })?;
        Ok::<_, anyhow::Error>(report_check(true, &r))
    });
    run_check!(checks, filter, "fieldaut.sz8", {
        let r = field_aut_commutator_check(FieldAutCase::Sz { q: 8 })?;
        Ok::<_, anyhow::Error>(report_check(true, &r))
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// delta suite
// ---------------------------------------------------------------------------

fn delta_suite(checks: &mut Vec<CheckReport>, filter: &str) -> Result<()> {
    use engel_graph::delta::{run_instance, shipped_instances};
    for (desc, h_sel, torus) in shipped_instances() {
        let name = format!("delta.{}.torus{torus}", desc.replace([':', '.'], "_"));
        run_check!(checks, filter, &name, {
            let shared = shared_group(desc)?;
            let (g, cd) = (&shared.0, &shared.1);
            let run = run_instance(g, cd, h_sel, torus)?;
            let rep = &run.report;
            let hyp_ok = run.instance.all_hold();
            let vertex_ok = rep.vertex_count == rep.vertex_formula;
            let all = hyp_ok
                && vertex_ok
                && rep.components_complete_in_cosets
                && rep.c_eq_hc_over_h
                && rep.le_bound
                && rep.hc_is_double_coset_union
                && rep.gap_ok
                && run.bound.3;
            Ok::<_, anyhow::Error>((
                "H0..H3, vertex formula, component lemma (1)-(4), Cauchy-Schwarz".to_string(),
                format!(
                    "hyp = {:?}, |V| = {} (formula {}), c = {}, |HC|/|H| ok = {}, bound {} >= {}^2/{}, equality = {}, min subdegree {}",
                    run.instance.hyp,
                    rep.vertex_count,
                    rep.vertex_formula,
                    rep.c_delta,
                    rep.c_eq_hc_over_h,
                    run.bound.2,
                    rep.vertex_count,
                    rep.arc_count,
                    rep.equality,
                    rep.min_nontrivial_subdegree,
                ),
                all,
            ))
        });
    }
    // the quoted instance value: PSL2(8) / Borel / torus 9 has 224 vertices
    run_check!(checks, filter, "delta.psl2_8.vertex-formula-224", {
        let shared = shared_group("PSL2:8")?;
        let (g, cd) = (&shared.0, &shared.1);
        let run = run_instance(g, cd, engel_graph::delta::SubgroupSel::Borel, 9)?;
        Ok::<_, anyhow::Error>((
            "|V| = 504*8/18 = 224".to_string(),
            format!("|V| = {}", run.report.vertex_count),
            run.report.vertex_count == 224,
        ))
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// properties suite (including oracle cross-validation)
// ---------------------------------------------------------------------------

const SMALL_TEST_SET: &[&str] = &[
    "Sym:3", "Sym:4", "Alt:4", "Alt:5", "SL2:3", "SL2:5", "AGL1:5", "Dihedral:8", "Dihedral:12",
    "PSL2:7", "PSL2:8", "PSL2:9", "PSL2:11", "PSL2:13", "PGL2:5", "PGL2:7", "PSL2:9.fieldaut:2",
];

fn properties_suite(
    checks: &mut Vec<CheckReport>,
    filter: &str,
    cache: Option<&Cache>,
) -> Result<()> {
    run_check!(checks, filter, "prop.involution-commutator-identity", {
        let mut ok = true;
        for desc in SMALL_TEST_SET {
            let shared = shared_group(desc)?;
            let (g, cd) = (&shared.0, &shared.1);
            for y in 0..g.order() as u32 {
                if cd.element_order[y as usize] != 2 {
                    continue;
                }
                for x in 0..g.order() as u32 {
                    let c = g.comm(x, y);
                    let o = cd.element_order[c as usize] as i64;
                    let mut z = x;
                    for n in 1..=5u32 {
                        z = g.comm(z, y);
                        let mut e: i64 = 1;
                        for _ in 1..n {
                            e = (-2 * e).rem_euclid(o);
                        }
                        ok &= z == g.pow(c, e.rem_euclid(o) as u64);
                    }
                }
            }
        }
        Ok::<_, anyhow::Error>((
            "[x, n y] = [x,y]^((-2)^(n-1)) for all involutions y".to_string(),
            format!("exact on {} groups", SMALL_TEST_SET.len()),
            ok,
        ))
    });

    run_check!(checks, filter, "prop.normalizer-depth", {
        let mut ok = true;
        for desc in SMALL_TEST_SET {
            let shared = shared_group(desc)?;
            let g = &shared.0;
            for y in 0..g.order() as u32 {
                let nrm = normalizer_of_cyclic(g, y);
                for &x in &nrm.elems {
                    ok &= engel_word(g, x, y, 2) == 0;
                }
            }
        }
        Ok::<_, anyhow::Error>((
            "x in N(<y>) implies [x, 2 y] = 1".to_string(),
            format!("exact on {} groups", SMALL_TEST_SET.len()),
            ok,
        ))
    });

    run_check!(checks, filter, "prop.equivariance-monotonicity", {
        let mut ok = true;
        for desc in SMALL_TEST_SET {
            let shared = shared_group(desc)?;
            let g = &shared.0;
            let n = g.order();
            let mut rng = XorShift::new(0x9e3779b9 ^ n as u64);
            for _ in 0..200 {
                let (x, y, h) = (
                    rng.below(n) as u32,
                    rng.below(n) as u32,
                    rng.below(n) as u32,
                );
                let k = 1 + rng.below(4) as u32;
                ok &= g.conj(engel_word(g, x, y, k), h)
                    == engel_word(g, g.conj(x, h), g.conj(y, h), k);
                if engel_word(g, x, y, k) == 0 {
                    ok &= engel_word(g, x, y, k + 1) == 0;
                }
            }
        }
        Ok::<_, anyhow::Error>((
            "conjugation-equivariance and absorbing identity".to_string(),
            "random triples on the test set".to_string(),
            ok,
        ))
    });

    run_check!(checks, filter, "prop.scc-vs-closure", {
        let mut ok = true;
        let mut graphs = 0;
        for desc in SMALL_TEST_SET {
            let shared = shared_group(desc)?;
            let (g, cd) = (&shared.0, &shared.1);
            for word in [Word::Fixed(1), Word::Fixed(2), Word::Cumulative] {
                let d = build_engel_graph(g, cd, word)?;
                let n = d.n_vertices();
                if n == 0 || n > 200 {
                    continue;
                }
                graphs += 1;
                let r = scc(Some(g), Some(cd), &d);
                // reachability closure
                let mut reach: Vec<engel_graph::util::Bitset> =
                    (0..n).map(|_| engel_graph::util::Bitset::new(n)).collect();
                for p in 0..n as u32 {
                    reach[p as usize].set(p as usize);
                    for w in d.out_neighbors(Some(g), Some(cd), p) {
                        reach[p as usize].set(w as usize);
                    }
                }
                loop {
                    let mut changed = false;
                    for i in 0..n {
                        let row = reach[i].clone();
                        let mut nr = row.clone();
                        for j in row.iter_ones() {
                            nr.or_assign(&reach[j]);
                        }
                        if nr != reach[i] {
                            reach[i] = nr;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        ok &= (reach[i].get(j) && reach[j].get(i))
                            == (r.comp_of[i] == r.comp_of[j]);
                    }
                }
            }
        }
        Ok::<_, anyhow::Error>((
            "Tarjan agrees with transitive closure on all graphs <= 200 vertices".to_string(),
            format!("{graphs} graphs checked"),
            ok,
        ))
    });

    run_check!(checks, filter, "prop.class-constant-mass", {
        let mut ok = true;
        for desc in SMALL_TEST_SET {
            let shared = shared_group(desc)?;
            let (g, cd) = (&shared.0, &shared.1);
            let k = cd.n_classes() as u32;
            for i in 0..k {
                for j in 0..k {
                    let mut total = 0u64;
                    for v in 0..k {
                        total +=
                            class_constant(g, cd, i, j, v)? * cd.sizes[v as usize] as u64;
                    }
                    ok &= total == cd.sizes[i as usize] as u64 * cd.sizes[j as usize] as u64;
                }
            }
        }
        Ok::<_, anyhow::Error>((
            "sum_v a_ijv |C_v| = |C_i||C_j|".to_string(),
            format!("exact on {} groups", SMALL_TEST_SET.len()),
            ok,
        ))
    });

    oracle_suite(checks, filter, cache)?;
    Ok(())
}

/// Oracle cross-validation entries: prediction and computation must agree on
/// every covered case; caps surface as skips, mismatches fail the suite.
pub fn oracle_cases() -> Vec<(&'static str, Word)> {
    use Word::{Cumulative as Cum, Fixed};
    vec![
        ("SL2:3", Cum),
        ("AGL1:5", Cum),
        ("Sym:4", Cum),
        ("Dihedral:8", Cum),
        ("Cyclic:12", Cum),
        ("Dihedral:12", Cum),
        ("Sym:3", Cum),
        ("Alt:4", Cum),
        ("Alt:5", Cum),
        ("Alt:6", Cum),
        ("Alt:7", Cum),
        ("SL2:5", Cum),
        ("Sp:4:2", Fixed(2)),
        ("PSL2:7", Fixed(1)),
        ("PSL2:7", Fixed(2)),
        ("PSL2:7", Fixed(3)),
        ("PSL2:7", Cum),
        ("PSL2:9", Fixed(2)),
        ("PSL2:9", Fixed(3)),
        ("PSL2:11", Fixed(2)),
        ("PSL2:13", Fixed(2)),
        ("PSL2:13", Cum),
        ("PSL2:17", Fixed(2)),
        ("PSL2:19", Fixed(2)),
        ("PSL2:23", Fixed(2)),
        ("PSL2:23", Fixed(3)),
        ("PSL2:25", Fixed(2)),
        ("PSL2:27", Fixed(2)),
        ("PSL2:29", Fixed(2)),
        ("PSL2:4", Cum),
        ("PSL2:8", Cum),
        ("PSL2:16", Cum),
        ("PGL2:5", Fixed(2)),
        ("PGL2:7", Fixed(2)),
        ("PGL2:9", Fixed(2)),
        ("PSL2:9.fieldaut:2", Fixed(2)),
        ("PSL:3:4", Fixed(1)),
        ("PSL:3:4", Fixed(2)),
        ("PSL:3:4", Fixed(3)),
        ("PSU:4:2", Fixed(1)),
        ("PSU:4:2", Fixed(2)),
        ("PSU:3:3", Fixed(2)),
        ("Sz:8", Cum),
        ("Sz:8.fieldaut:3", Cum),
        ("Sp:4:4", Fixed(2)), // over the full-graph cap: must surface as a skip
    ]
}

fn oracle_suite(checks: &mut Vec<CheckReport>, filter: &str, _cache: Option<&Cache>) -> Result<()> {
    for (desc, word) in oracle_cases() {
        let name = format!("oracle.{}.{}", desc.replace([':', '.'], "_"), word);
        run_check!(checks, filter, &name, {
            let spec = GroupSpec::parse(desc)?;
            let cv = cross_validate(&spec, word)?;
            let pass = match (&cv.skipped, cv.agree) {
                (Some(_), _) => desc == "Sp:4:4", // only the declared cap case may skip
                (None, Some(ok)) => ok,
                (None, None) => false, // the oracle must cover every listed case
            };
            let obs = if let Some(s) = &cv.skipped {
                format!("skipped: {s}")
            } else {
                format!(
                    "predicted {:?} ({}), computed count {:?}, agree {:?}",
                    cv.predicted.strongly_connected,
                    cv.predicted.branch,
                    cv.computed.as_ref().map(|c| c.count),
                    cv.agree
                )
            };
            let expect = if desc == "Sp:4:4" {
                "skipped (over the full-graph cap)".to_string()
            } else {
                format!("prediction {:?} matches computation", cv.predicted.strongly_connected)
            };
            Ok::<_, anyhow::Error>((expect, obs, pass))
        });
    }
    Ok(())
}

/// Count of oracle cases with genuine comparisons (for the acceptance gate).
pub fn oracle_group_count() -> usize {
    let mut set = std::collections::HashSet::new();
    for (desc, _) in oracle_cases() {
        set.insert(desc);
    }
    set.len()
}
