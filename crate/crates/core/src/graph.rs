//! Directed graphs over group element indices: Engel graphs (fixed-n and
//! cumulative), the commuting graph as the n = 1 case, strongly connected
//! components via iterative Tarjan, weak connectivity and diameter, and
//! JSON/DOT serialization.
//!
//! Arcs are conjugation-equivariant: out(x^g) = out(x)^g. Above a size
//! threshold only class-representative out-neighbor sets are materialized;
//! neighbors of arbitrary vertices are produced by translating with the
//! cached conjugator.

use crate::engel::{engel_sinks_sources, is_arc, EngelScratch, Word};
use crate::grp::{hypercenter, ClassData, Group, FULL_GRAPH_CAP};
use crate::util::Bitset;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Graphs up to this many group elements get materialized adjacency lists.
pub const MATERIALIZE_MAX: usize = 5000;
/// Exact all-sources BFS cap for diameter computation.
pub const DIAMETER_EXACT_MAX: usize = 20_000;
pub const DOT_MAX: usize = 2000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph on {0} vertices exceeds cap {1}")]
    Cap(usize, usize),
    #[error("arcs are implicit; operation needs materialized arcs")]
    Implicit,
    #[error("import: {0}")]
    Import(String),
    #[error("group: {0}")]
    Group(#[from] crate::grp::GroupError),
}

pub enum Adjacency {
    /// Out-neighbor lists by vertex position, targets as vertex positions.
    Explicit(Vec<Vec<u32>>),
    /// Per-class out-neighbor bitsets over group indices, restricted to the
    /// vertex set; translated by conjugators on demand.
    Implicit { rep_out: Vec<Bitset> },
    /// Union of complete subgraphs (with loops); used by the coset graphs.
    CompleteParts {
        part_of: Vec<u32>,
        parts: Vec<Vec<u32>>,
    },
}

pub struct Digraph {
    pub group_desc: String,
    pub word_desc: String,
    /// Sorted group element indices.
    pub vertices: Vec<u32>,
    /// Group index -> vertex position (u32::MAX when absent).
    pub vpos: Vec<u32>,
    pub adj: Adjacency,
    pub arc_count: u64,
    pub empty: bool,
}

impl Digraph {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn empty_graph(group_desc: String, word_desc: String, n_group: usize) -> Digraph {
        Digraph {
            group_desc,
            word_desc,
            vertices: Vec::new(),
            vpos: vec![u32::MAX; n_group],
            adj: Adjacency::Explicit(Vec::new()),
            arc_count: 0,
            empty: true,
        }
    }

    pub fn from_explicit(
        group_desc: String,
        word_desc: String,
        vertices: Vec<u32>,
        adj: Vec<Vec<u32>>,
    ) -> Digraph {
        let n_group = vertices.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
        let mut vpos = vec![u32::MAX; n_group];
        for (p, &v) in vertices.iter().enumerate() {
            vpos[v as usize] = p as u32;
        }
        let arc_count = adj.iter().map(|l| l.len() as u64).sum();
        let empty = vertices.is_empty();
        Digraph {
            group_desc,
            word_desc,
            vertices,
            vpos,
            adj: Adjacency::Explicit(adj),
            arc_count,
            empty,
        }
    }
}

impl Digraph {
    /// Out-neighbors of the vertex at `pos`, as vertex positions.
    pub fn out_neighbors(
        &self,
        g: Option<&Group>,
        cd: Option<&ClassData>,
        pos: u32,
    ) -> Vec<u32> {
        match &self.adj {
            Adjacency::Explicit(lists) => lists[pos as usize].clone(),
            Adjacency::CompleteParts { part_of, parts } => {
                parts[part_of[pos as usize] as usize].clone()
            }
            Adjacency::Implicit { rep_out } => {
                let g = g.expect("implicit adjacency needs the group");
                let cd = cd.expect("implicit adjacency needs class data");
                let v = self.vertices[pos as usize];
                let c = cd.class_id[v as usize] as usize;
                let h = cd.conjugator[v as usize];
                let hinv = g.inv(h);
                rep_out[c]
                    .iter_ones()
                    .map(|y0| {
                        let y = g.mul(g.mul(hinv, y0 as u32), h);
                        self.vpos[y as usize]
                    })
                    .collect()
            }
        }
    }
}

/// Vertex set of the Engel graph: G minus I_omega (fixed n) or G minus the
/// hypercenter (cumulative). Both exclusions are unions of classes.
pub fn engel_vertex_set(g: &Group, cd: &ClassData, word: Word) -> Vec<u32> {
    let n = g.order();
    let excluded: Bitset = match word {
        Word::Fixed(_) => {
            let (_, _, iw) = engel_sinks_sources(g, cd, word);
            iw
        }
        Word::Cumulative => {
            let z = hypercenter(g, cd);
            let mut b = Bitset::new(n);
            for &e in &z.elems {
                b.set(e as usize);
            }
            b
        }
    };
    (0..n as u32).filter(|&x| !excluded.get(x as usize)).collect()
}

/// Out-neighbor bitsets (over group indices, restricted to the vertex set)
/// for every class representative, computed in parallel. This is the decisive
/// reduction: #classes * |G| Engel evaluations instead of |G|^2.
pub fn rep_out_sets(g: &Group, cd: &ClassData, word: Word, vertices: &[u32]) -> Vec<Bitset> {
    let n = g.order();
    let mut in_vertex = Bitset::new(n);
    for &v in vertices {
        in_vertex.set(v as usize);
    }
    cd.reps
        .par_iter()
        .map(|&rep| {
            let mut bits = Bitset::new(n);
            if !in_vertex.get(rep as usize) {
                return bits;
            }
            let mut scratch = EngelScratch::new(n);
            for &y in vertices {
                if is_arc(g, rep, y, word, &mut scratch) {
                    bits.set(y as usize);
                }
            }
            bits
        })
        .collect()
}

/// Assemble a digraph from a vertex set and per-class neighbor sets
/// (materialized below the threshold, implicit above).
pub fn assemble_graph(
    g: &Group,
    cd: &ClassData,
    word: Word,
    vertices: Vec<u32>,
    rep_out: Vec<Bitset>,
) -> Digraph {
    let n = g.order();
    if vertices.is_empty() {
        return Digraph::empty_graph(g.descriptor().to_string(), word.to_string(), n);
    }
    let mut vpos = vec![u32::MAX; n];
    for (p, &v) in vertices.iter().enumerate() {
        vpos[v as usize] = p as u32;
    }
    let arc_count: u64 = (0..cd.n_classes())
        .map(|c| {
            if vpos[cd.reps[c] as usize] == u32::MAX {
                0
            } else {
                cd.sizes[c] as u64 * rep_out[c].count_ones() as u64
            }
        })
        .sum();
    let adj = if n <= MATERIALIZE_MAX {
        let lists: Vec<Vec<u32>> = vertices
            .par_iter()
            .map(|&v| {
                let c = cd.class_id[v as usize] as usize;
                let h = cd.conjugator[v as usize];
                let hinv = g.inv(h);
                rep_out[c]
                    .iter_ones()
                    .map(|y0| vpos[g.mul(g.mul(hinv, y0 as u32), h) as usize])
                    .collect()
            })
            .collect();
        Adjacency::Explicit(lists)
    } else {
        Adjacency::Implicit { rep_out }
    };
    Digraph {
        group_desc: g.descriptor().to_string(),
        word_desc: word.to_string(),
        vertices,
        vpos,
        adj,
        arc_count,
        empty: false,
    }
}

/// Vertex set and per-class out-neighbor sets for an Engel graph; arcs per
/// `is_arc`.
pub fn build_engel_graph(g: &Group, cd: &ClassData, word: Word) -> Result<Digraph, GraphError> {
    if g.order() > FULL_GRAPH_CAP {
        return Err(GraphError::Cap(g.order(), FULL_GRAPH_CAP));
    }
    let vertices = engel_vertex_set(g, cd, word);
    if vertices.is_empty() {
        return Ok(Digraph::empty_graph(
            g.descriptor().to_string(),
            word.to_string(),
            g.order(),
        ));
    }
    let rep_out = rep_out_sets(g, cd, word, &vertices);
    Ok(assemble_graph(g, cd, word, vertices, rep_out))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SccResult {
    /// Component id per vertex position.
    pub comp_of: Vec<u32>,
    pub count: usize,
    /// Component sizes, descending.
    pub sizes: Vec<u32>,
    /// Empty vertex set: vacuously strongly connected, flagged explicitly.
    pub empty: bool,
    /// (source components, sink components) in the condensation, when cheap.
    pub condensation: Option<(u32, u32)>,
}

impl SccResult {
    pub fn is_strongly_connected(&self) -> bool {
        self.empty || self.count == 1
    }
}

enum Cursor<'a> {
    Slice(&'a [u32], usize),
    Bits {
        words: &'a [u64],
        word_idx: usize,
        current: u64,
        h: u32,
        hinv: u32,
    },
}

impl Cursor<'_> {
    #[inline]
    fn next(&mut self, g: Option<&Group>, vpos: &[u32]) -> Option<u32> {
        match self {
            Cursor::Slice(s, i) => {
                if *i < s.len() {
                    *i += 1;
                    Some(s[*i - 1])
                } else {
                    None
                }
            }
            Cursor::Bits {
                words,
                word_idx,
                current,
                h,
                hinv,
            } => {
                while *current == 0 {
                    *word_idx += 1;
                    if *word_idx >= words.len() {
                        return None;
                    }
                    *current = words[*word_idx];
                }
                let tz = current.trailing_zeros() as usize;
                *current &= *current - 1;
                let y0 = ((*word_idx << 6) | tz) as u32;
                let g = g.expect("implicit adjacency needs the group");
                let y = g.mul(g.mul(*hinv, y0), *h);
                Some(vpos[y as usize])
            }
        }
    }
}

fn make_cursor<'a>(
    d: &'a Digraph,
    g: Option<&Group>,
    cd: Option<&ClassData>,
    pos: u32,
) -> Cursor<'a> {
    match &d.adj {
        Adjacency::Explicit(lists) => Cursor::Slice(&lists[pos as usize], 0),
        Adjacency::CompleteParts { part_of, parts } => {
            Cursor::Slice(&parts[part_of[pos as usize] as usize], 0)
        }
        Adjacency::Implicit { rep_out } => {
            let cd = cd.expect("implicit adjacency needs class data");
            let g = g.expect("implicit adjacency needs the group");
            let v = d.vertices[pos as usize];
            let c = cd.class_id[v as usize] as usize;
            let h = cd.conjugator[v as usize];
            let words = rep_out[c].words();
            Cursor::Bits {
                words,
                word_idx: 0,
                current: words.first().copied().unwrap_or(0),
                h,
                hinv: g.inv(h),
            }
        }
    }
}

/// Tarjan, single pass, iterative (explicit stacks) so that 10^5-vertex
/// graphs do not overflow the call stack.
pub fn scc(g: Option<&Group>, cd: Option<&ClassData>, d: &Digraph) -> SccResult {
    let nv = d.n_vertices();
    if nv == 0 {
        return SccResult {
            comp_of: Vec::new(),
            count: 0,
            sizes: Vec::new(),
            empty: true,
            condensation: None,
        };
    }
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; nv];
    let mut low = vec![0u32; nv];
    let mut on_stack = Bitset::new(nv);
    let mut stack: Vec<u32> = Vec::new();
    let mut comp_of = vec![UNSET; nv];
    let mut sizes: Vec<u32> = Vec::new();
    let mut next_index: u32 = 0;

    struct Frame<'a> {
        v: u32,
        cursor: Cursor<'a>,
    }

    let mut frames: Vec<Frame> = Vec::new();
    for root in 0..nv as u32 {
        if index[root as usize] != UNSET {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack.set(root as usize);
        frames.push(Frame {
            v: root,
            cursor: make_cursor(d, g, cd, root),
        });
        while let Some(frame) = frames.last_mut() {
            let v = frame.v;
            match frame.cursor.next(g, &d.vpos) {
                Some(w) => {
                    let wi = w as usize;
                    if index[wi] == UNSET {
                        index[wi] = next_index;
                        low[wi] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack.set(wi);
                        frames.push(Frame {
                            v: w,
                            cursor: make_cursor(d, g, cd, w),
                        });
                    } else if on_stack.get(wi) {
                        low[v as usize] = low[v as usize].min(index[wi]);
                    }
                }
                None => {
                    frames.pop();
                    if let Some(parent) = frames.last() {
                        let p = parent.v as usize;
                        low[p] = low[p].min(low[v as usize]);
                    }
                    if low[v as usize] == index[v as usize] {
                        let cid = sizes.len() as u32;
                        let mut size = 0u32;
                        loop {
                            let w = stack.pop().expect("scc stack underflow");
                            on_stack.clear(w as usize);
                            comp_of[w as usize] = cid;
                            size += 1;
                            if w == v {
                                break;
                            }
                        }
                        sizes.push(size);
                    }
                }
            }
        }
    }

    let count = sizes.len();
    // condensation source/sink summary when the arc sweep is cheap
    let condensation = if nv <= MATERIALIZE_MAX {
        let mut has_in = vec![false; count];
        let mut has_out = vec![false; count];
        for pos in 0..nv as u32 {
            let cv = comp_of[pos as usize] as usize;
            for w in d.out_neighbors(g, cd, pos) {
                let cw = comp_of[w as usize] as usize;
                if cv != cw {
                    has_out[cv] = true;
                    has_in[cw] = true;
                }
            }
        }
        let sources = has_in.iter().filter(|&&b| !b).count() as u32;
        let sinks = has_out.iter().filter(|&&b| !b).count() as u32;
        Some((sources, sinks))
    } else {
        None
    };
    let mut sorted = sizes.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    SccResult {
        comp_of,
        count,
        sizes: sorted,
        empty: false,
        condensation,
    }
}

/// Weak connectivity and exact diameter of the largest component over the
/// symmetrized arc relation; exact all-sources BFS below the cap.
pub fn weak_components_and_diameter(
    g: Option<&Group>,
    cd: Option<&ClassData>,
    d: &Digraph,
) -> Result<(usize, u32), GraphError> {
    let nv = d.n_vertices();
    if nv == 0 {
        return Ok((0, 0));
    }
    if nv > DIAMETER_EXACT_MAX {
        return Err(GraphError::Cap(nv, DIAMETER_EXACT_MAX));
    }
    // symmetrized adjacency matrix
    let mut rows: Vec<Bitset> = (0..nv).map(|_| Bitset::new(nv)).collect();
    for pos in 0..nv as u32 {
        for w in d.out_neighbors(g, cd, pos) {
            rows[pos as usize].set(w as usize);
            rows[w as usize].set(pos as usize);
        }
    }
    let mut seen = Bitset::new(nv);
    let mut comp_count = 0usize;
    let mut comp_sizes: Vec<(usize, Vec<u32>)> = Vec::new();
    for s in 0..nv {
        if seen.get(s) {
            continue;
        }
        comp_count += 1;
        let mut members = Vec::new();
        let mut queue = vec![s as u32];
        seen.set(s);
        while let Some(v) = queue.pop() {
            members.push(v);
            for w in rows[v as usize].iter_ones() {
                if !seen.get(w) {
                    seen.set(w);
                    queue.push(w as u32);
                }
            }
        }
        comp_sizes.push((members.len(), members));
    }
    let (_, largest) = comp_sizes
        .iter()
        .max_by_key(|(s, _)| *s)
        .cloned()
        .expect("nonempty");

    // BFS from every vertex of the largest component, frontier as bitsets
    let diameter = largest
        .par_iter()
        .map(|&src| {
            let mut visited = Bitset::new(nv);
            let mut frontier = Bitset::new(nv);
            visited.set(src as usize);
            frontier.set(src as usize);
            let mut ecc = 0u32;
            loop {
                let mut next = Bitset::new(nv);
                for v in frontier.iter_ones() {
                    next.or_assign(&rows[v]);
                }
                if !next.and_not_assign(&visited) {
                    break;
                }
                visited.or_assign(&next);
                frontier = next;
                ecc += 1;
            }
            ecc
        })
        .max()
        .unwrap_or(0);
    Ok((comp_count, diameter))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    group: String,
    word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    empty: Option<bool>,
    vertices: Vec<u32>,
    arcs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    scc: Option<SccJson>,
}

#[derive(Serialize, Deserialize)]
struct SccJson {
    count: usize,
    sizes: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    empty: Option<bool>,
}

/// Deterministic JSON per the declared schema; arcs are listed as pairs of
/// group element indices for materialized graphs and as `"implicit"` above
/// the threshold.
pub fn export_json(
    d: &Digraph,
    g: Option<&Group>,
    cd: Option<&ClassData>,
    scc_result: Option<&SccResult>,
) -> String {
    let arcs = match &d.adj {
        Adjacency::Implicit { .. } => serde_json::Value::String("implicit".into()),
        _ => {
            let mut pairs: Vec<[u32; 2]> = Vec::with_capacity(d.arc_count as usize);
            for pos in 0..d.n_vertices() as u32 {
                let vi = d.vertices[pos as usize];
                let mut outs = d.out_neighbors(g, cd, pos);
                outs.sort_unstable();
                for w in outs {
                    pairs.push([vi, d.vertices[w as usize]]);
                }
            }
            serde_json::to_value(pairs).unwrap()
        }
    };
    let doc = GraphJson {
        group: d.group_desc.clone(),
        word: d.word_desc.clone(),
        empty: if d.empty { Some(true) } else { None },
        vertices: d.vertices.clone(),
        arcs,
        scc: scc_result.map(|s| SccJson {
            count: s.count,
            sizes: s.sizes.clone(),
            empty: if s.empty { Some(true) } else { None },
        }),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

/// Parse a graph document back into an explicit digraph.
pub fn import_json(bytes: &[u8]) -> Result<Digraph, GraphError> {
    let doc: GraphJson =
        serde_json::from_slice(bytes).map_err(|e| GraphError::Import(e.to_string()))?;
    if doc.arcs == serde_json::Value::String("implicit".into()) {
        return Err(GraphError::Import(
            "implicit arc sets cannot be re-imported".into(),
        ));
    }
    let pairs: Vec<[u32; 2]> = serde_json::from_value(doc.arcs)
        .map_err(|e| GraphError::Import(format!("arcs: {e}")))?;
    if doc.vertices.len() > FULL_GRAPH_CAP {
        return Err(GraphError::Import("too many vertices".into()));
    }
    if let Some(&max) = doc.vertices.iter().max() {
        // index space must stay dense enough registering positions
        if max as usize >= 1 << 22 {
            return Err(GraphError::Import(format!("vertex index {max} out of range")));
        }
    }
    let mut vertices = doc.vertices.clone();
    let sorted = {
        let mut s = vertices.clone();
        s.sort_unstable();
        s.dedup();
        s
    };
    if sorted.len() != vertices.len() {
        return Err(GraphError::Import("duplicate vertices".into()));
    }
    vertices = sorted;
    let n_group = vertices.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut vpos = vec![u32::MAX; n_group];
    for (p, &v) in vertices.iter().enumerate() {
        vpos[v as usize] = p as u32;
    }
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
    for [a, b] in &pairs {
        let (pa, pb) = (
            vpos.get(*a as usize).copied().unwrap_or(u32::MAX),
            vpos.get(*b as usize).copied().unwrap_or(u32::MAX),
        );
        if pa == u32::MAX || pb == u32::MAX {
            return Err(GraphError::Import(format!("arc ({a},{b}) off the vertex set")));
        }
        lists[pa as usize].push(pb);
    }
    let arc_count = pairs.len() as u64;
    let empty = vertices.is_empty();
    Ok(Digraph {
        group_desc: doc.group,
        word_desc: doc.word,
        vertices,
        vpos,
        adj: Adjacency::Explicit(lists),
        arc_count,
        empty,
    })
}

/// DOT serialization for small materialized graphs.
pub fn export_dot(d: &Digraph, g: Option<&Group>, cd: Option<&ClassData>) -> Result<String, GraphError> {
    if d.n_vertices() > DOT_MAX {
        return Err(GraphError::Cap(d.n_vertices(), DOT_MAX));
    }
    let mut out = String::from("digraph engel {\n");
    for &v in &d.vertices {
        out.push_str(&format!("  n{v};\n"));
    }
    for pos in 0..d.n_vertices() as u32 {
        let vi = d.vertices[pos as usize];
        let mut outs = d.out_neighbors(g, cd, pos);
        outs.sort_unstable();
        for w in outs {
            out.push_str(&format!("  n{} -> n{};\n", vi, d.vertices[w as usize]));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple_digraph(adj: Vec<Vec<u32>>) -> Digraph {
        let n = adj.len();
        Digraph::from_explicit(
            "test".into(),
            "engel:1".into(),
            (0..n as u32).collect(),
            adj,
        )
    }

    #[test]
    fn scc_basics() {
        // complete digraph on 3 vertices
        let d = simple_digraph(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]);
        let r = scc(None, None, &d);
        assert_eq!(r.count, 1);
        assert!(r.is_strongly_connected());

        // 2-cycle plus isolated sink
        let d2 = simple_digraph(vec![vec![1], vec![0, 2], vec![]]);
        let r2 = scc(None, None, &d2);
        assert_eq!(r2.count, 2);
        assert_eq!(r2.sizes, vec![2, 1]);
        assert!(!r2.is_strongly_connected());
    }

    #[test]
    fn empty_graph_is_flagged() {
        let d = Digraph::empty_graph("Cyclic:4".into(), "engel:*".into(), 4);
        let r = scc(None, None, &d);
        assert!(r.empty);
        assert!(r.is_strongly_connected());
        assert_eq!(r.count, 0);
    }

    #[test]
    fn diameter_single_vertex() {
        let d = simple_digraph(vec![vec![0]]);
        let (comps, diam) = weak_components_and_diameter(None, None, &d).unwrap();
        assert_eq!((comps, diam), (1, 0));
    }

    #[test]
    fn json_roundtrip() {
        let d = simple_digraph(vec![vec![1], vec![0]]);
        let r = scc(None, None, &d);
        let s = export_json(&d, None, None, Some(&r));
        let back = import_json(s.as_bytes()).unwrap();
        assert_eq!(back.n_vertices(), 2);
        assert_eq!(back.arc_count, 2);
        let r2 = scc(None, None, &back);
        assert_eq!(r2.count, r.count);
        let dot = export_dot(&d, None, None).unwrap();
        assert!(dot.contains("n0 -> n1"));
    }
}
