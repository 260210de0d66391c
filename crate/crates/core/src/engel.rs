//! Engel words, Engel depth with exact cycle detection, the left/right Engel
//! sets that define vertex sets, and the normalizer-trap certificate.

use crate::grp::{ClassData, Group, GroupError, Subgroup};
use crate::util::Bitset;

/// Word selector: the n-th Engel word, or the cumulative "some n" relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Word {
    Fixed(u32),
    Cumulative,
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Word::Fixed(n) => write!(f, "engel:{n}"),
            Word::Cumulative => write!(f, "engel:*"),
        }
    }
}

impl Word {
    pub fn parse(s: &str) -> Option<Word> {
        match s {
            "engel:*" => Some(Word::Cumulative),
            "commuting" => Some(Word::Fixed(1)),
            _ => {
                let n = s.strip_prefix("engel:")?.parse::<u32>().ok()?;
                if n == 0 {
                    None
                } else {
                    Some(Word::Fixed(n))
                }
            }
        }
    }
}

/// Outcome of iterating z -> [z, y] from x.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EngelResult {
    pub reached_identity: bool,
    /// Least n with [x, n y] = 1, present iff reached.
    pub depth: Option<u32>,
    /// Period of the eventual cycle otherwise.
    pub cycle_length: Option<u32>,
}

/// Reusable per-invocation scratch: a stamped visited array over the group
/// index space.
pub struct EngelScratch {
    stamp: Vec<u32>,
    step_at: Vec<u32>,
    tick: u32,
}

impl EngelScratch {
    pub fn new(order: usize) -> EngelScratch {
        EngelScratch {
            stamp: vec![0; order],
            step_at: vec![0; order],
            tick: 0,
        }
    }
}

/// [x, n y]; [x, 0 y] = x.
pub fn engel_word(g: &Group, x: u32, y: u32, n: u32) -> u32 {
    let mut z = x;
    for _ in 0..n {
        if z == 0 {
            return 0; // identity is absorbing
        }
        z = g.comm(z, y);
    }
    z
}

/// Exact depth/cycle decision: the iteration is deterministic with 1 a fixed
/// point, so reaching 1 or entering a cycle within |G| steps is exhaustive.
pub fn engel_depth(g: &Group, x: u32, y: u32, scratch: &mut EngelScratch) -> EngelResult {
    scratch.tick = scratch.tick.wrapping_add(1);
    if scratch.tick == 0 {
        scratch.stamp.fill(0);
        scratch.tick = 1;
    }
    let tick = scratch.tick;
    let mut z = x;
    let mut step = 0u32;
    loop {
        if z == 0 {
            return EngelResult {
                reached_identity: true,
                depth: Some(step),
                cycle_length: None,
            };
        }
        if scratch.stamp[z as usize] == tick {
            return EngelResult {
                reached_identity: false,
                depth: None,
                cycle_length: Some(step - scratch.step_at[z as usize]),
            };
        }
        scratch.stamp[z as usize] = tick;
        scratch.step_at[z as usize] = step;
        z = g.comm(z, y);
        step += 1;
        debug_assert!(step as usize <= g.order() + 1);
    }
}

/// Arc test: fixed-n checks [x, n y] = 1 (with early exit, since 1 is
/// absorbing); cumulative checks that the depth iteration reaches 1.
pub fn is_arc(g: &Group, x: u32, y: u32, word: Word, scratch: &mut EngelScratch) -> bool {
    match word {
        Word::Fixed(n) => {
            let mut z = x;
            for _ in 0..n {
                if z == 0 {
                    return true;
                }
                z = g.comm(z, y);
            }
            z == 0
        }
        Word::Cumulative => engel_depth(g, x, y, scratch).reached_identity,
    }
}

/// Right/left omega-Engel sets and their intersection. Both sets are unions
/// of conjugacy classes, so only class representatives are tested against
/// the whole group.
pub fn engel_sinks_sources(
    g: &Group,
    cd: &ClassData,
    word: Word,
) -> (Bitset, Bitset, Bitset) {
    let n = g.order();
    let mut right = Bitset::new(n);
    let mut left = Bitset::new(n);
    let mut scratch = EngelScratch::new(n);
    let mut right_class = vec![false; cd.n_classes()];
    let mut left_class = vec![false; cd.n_classes()];
    for (c, &rep) in cd.reps.iter().enumerate() {
        right_class[c] = (0..n as u32).all(|x| is_arc(g, rep, x, word, &mut scratch));
        left_class[c] = (0..n as u32).all(|x| is_arc(g, x, rep, word, &mut scratch));
    }
    for x in 0..n {
        let c = cd.class_id[x] as usize;
        if right_class[c] {
            right.set(x);
        }
        if left_class[c] {
            left.set(x);
        }
    }
    let mut iw = right.clone();
    iw.and_assign(&left);
    (right, left, iw)
}

/// Lemma-NC-style certificate: (1) N_G(K) = K and (2) y lies in a conjugate
/// K^g only when K^g = K. When both hold, no x outside K has an arc to y in
/// the cumulative Engel graph, without building the graph.
pub fn nc_certificate(g: &Group, y: u32, k: &Subgroup) -> Result<bool, GroupError> {
    if !k.contains(y) {
        return Err(GroupError::BadParams {
            family: "nc_certificate".into(),
            reason: "y must lie in K".into(),
        });
    }
    if k.len() == g.order() {
        return Err(GroupError::BadParams {
            family: "nc_certificate".into(),
            reason: "K = G is vacuous; rejected".into(),
        });
    }
    let gens = k.generating_set(g);
    for a in 0..g.order() as u32 {
        let in_normalizer = gens.iter().all(|&x| k.contains(g.conj(x, a)));
        // (1) N_G(K) = K
        if in_normalizer && !k.contains(a) {
            return Ok(false);
        }
        // (2) y in K^a  =>  K^a = K; here y in K^a iff a y a^-1 in K
        let w = g.mul(g.mul(a, y), g.inv(a));
        if k.contains(w) && !in_normalizer {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{build_group, structure, GroupSpec};

    fn sym3() -> Group {
        build_group(&GroupSpec::parse("Sym:3").unwrap()).unwrap()
    }

    #[test]
    fn engel_word_base_cases() {
        let g = sym3();
        for x in 0..6u32 {
            assert_eq!(engel_word(&g, x, 5, 0), x); // n = 0 -> x
            assert_eq!(engel_word(&g, x, 0, 3), 0); // y = 1 -> 1
            assert_eq!(engel_word(&g, x, x, 1), 0); // [x, x] = 1
        }
    }

    #[test]
    fn sym3_three_cycle_never_reaches_identity() {
        let g = sym3();
        let cd = structure(&g);
        let c3 = (0..6u32).find(|&x| cd.element_order[x as usize] == 3).unwrap();
        let t = (0..6u32).find(|&x| cd.element_order[x as usize] == 2).unwrap();
        // (123) iterated against a transposition cycles, never hits 1
        let mut scratch = EngelScratch::new(6);
        let r = engel_depth(&g, c3, t, &mut scratch);
        assert!(!r.reached_identity);
        assert!(r.cycle_length.is_some());
        for n in 1..8 {
            assert_ne!(engel_word(&g, c3, t, n), 0);
        }
        // the reverse direction is an arc at n = 2 (transposition normalizes <c3>)
        assert_eq!(engel_word(&g, t, c3, 2), 0);
        assert!(is_arc(&g, t, c3, Word::Fixed(2), &mut scratch));
        assert!(!is_arc(&g, c3, t, Word::Cumulative, &mut scratch));
    }

    #[test]
    fn depth_matches_naive_iteration() {
        let g = build_group(&GroupSpec::parse("SL2:3").unwrap()).unwrap();
        let n = g.order();
        let mut scratch = EngelScratch::new(n);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let r = engel_depth(&g, x, y, &mut scratch);
                // naive: iterate up to |G| steps
                let mut z = x;
                let mut naive = None;
                for step in 0..=n as u32 {
                    if z == 0 {
                        naive = Some(step);
                        break;
                    }
                    z = g.comm(z, y);
                }
                assert_eq!(r.reached_identity, naive.is_some());
                if let Some(d) = naive {
                    assert_eq!(r.depth, Some(d));
                }
            }
        }
    }

    #[test]
    fn sinks_sources_abelian_and_simple() {
        let c6 = build_group(&GroupSpec::parse("Cyclic:6").unwrap()).unwrap();
        let cd = structure(&c6);
        let (_, _, iw) = engel_sinks_sources(&c6, &cd, Word::Fixed(1));
        assert_eq!(iw.count_ones(), 6); // abelian: everything

        let a5 = build_group(&GroupSpec::parse("Alt:5").unwrap()).unwrap();
        let cda = structure(&a5);
        let (_, _, iwa) = engel_sinks_sources(&a5, &cda, Word::Fixed(2));
        assert_eq!(iwa.iter_ones().collect::<Vec<_>>(), vec![0]); // simple: {1}

        let d8 = build_group(&GroupSpec::parse("Dihedral:8").unwrap()).unwrap();
        let cdd = structure(&d8);
        let (_, _, iwd) = engel_sinks_sources(&d8, &cdd, Word::Fixed(5));
        assert_eq!(iwd.count_ones(), 8); // nilpotent: everything for large n
    }
}
