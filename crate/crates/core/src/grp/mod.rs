//! Finite group engine: dense element indices, a multiplication oracle, and
//! structure theory (classes, centralizers, normalizers, hypercenter,
//! quotients, Frobenius detection, prime graph).

mod build;
mod descriptor;

pub use build::{build_group, expected_order, from_table};
pub use descriptor::{Family, GroupSpec, ParseError};

use crate::ff::{Fe, FieldCtx};
use crate::mat::Mat;
use crate::util::{gcd, prime_divisors, Bitset, XorShift};
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Order cap for full-graph work.
pub const FULL_GRAPH_CAP: usize = 200_000;
/// Order cap for structure-only work.
pub const STRUCTURE_CAP: usize = 2_000_000;
/// Order cap for Frobenius detection.
pub const FROBENIUS_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("descriptor: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid parameters for {family}: {reason}")]
    BadParams { family: String, reason: String },
    #[error("group order {0} exceeds cap {1}")]
    OrderCap(u64, u64),
    #[error("field: {0}")]
    Field(#[from] crate::ff::FieldError),
    #[error("closure did not terminate within cap {0}")]
    ClosureCap(usize),
    #[error("group axiom violated: {0}")]
    Axiom(String),
    #[error("order mismatch: built {built}, formula {formula}")]
    OrderMismatch { built: u64, formula: u64 },
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

pub(crate) struct MatrixBackend {
    pub ctx: FieldCtx,
    pub dim: usize,
    pub ebits: u32,
    pub data: Vec<u16>,
    pub index: FxHashMap<u128, u32>,
    pub canon_scalars: Vec<Fe>,
}

pub(crate) struct PermBackend {
    pub deg: usize,
    pub data: Vec<u8>,
    pub index: FxHashMap<u128, u32>,
}

pub(crate) struct PairsBackend {
    pub base: Box<Group>,
    pub e: u32,
    /// aut_pows[k] is the k-th power of the twisting automorphism.
    pub aut_pows: Vec<Vec<u32>>,
}

pub(crate) enum Backend {
    Matrix(MatrixBackend),
    Perm(PermBackend),
    Pairs(PairsBackend),
    Table { n: usize, mult: Vec<u32> },
    Cyclic { n: u32 },
    Dihedral { m: u32 },
    Affine { p: u32 },
}

pub struct Group {
    order: usize,
    backend: Backend,
    inv: Vec<u32>,
    gens: Vec<u32>,
    desc: String,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.desc, self.order)
    }
}

impl MatrixBackend {
    #[inline]
    pub(crate) fn canonicalize(&self, buf: &mut [u32]) {
        if self.canon_scalars.len() <= 1 {
            return;
        }
        let first = match buf.iter().find(|&&v| v != 0) {
            Some(&v) => v,
            None => return,
        };
        let mut best: Fe = u32::MAX;
        let mut best_scalar: Fe = 1;
        for &s in &self.canon_scalars {
            let v = self.ctx.mul(s, first);
            if v < best {
                best = v;
                best_scalar = s;
            }
        }
        if best_scalar != 1 {
            for v in buf.iter_mut() {
                *v = self.ctx.mul(best_scalar, *v);
            }
        }
    }

    pub(crate) fn key_of(&self, buf: &[u32]) -> u128 {
        let mut key: u128 = 0;
        for &e in buf {
            key = (key << self.ebits) | e as u128;
        }
        key
    }

    pub(crate) fn lookup_mat(&self, m: &Mat) -> Option<u32> {
        let mut buf: Vec<u32> = m.a.clone();
        self.canonicalize(&mut buf);
        self.index.get(&self.key_of(&buf)).copied()
    }
}

impl Group {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn descriptor(&self) -> &str {
        &self.desc
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.backend {
            Backend::Matrix(mb) => {
                let d = mb.dim;
                let dd = d * d;
                let x = &mb.data[i as usize * dd..i as usize * dd + dd];
                let y = &mb.data[j as usize * dd..j as usize * dd + dd];
                let mut out = [0u32; 36];
                for r in 0..d {
                    for k in 0..d {
                        let v = x[r * d + k] as u32;
                        if v == 0 {
                            continue;
                        }
                        for c in 0..d {
                            let t = mb.ctx.mul(v, y[k * d + c] as u32);
                            out[r * d + c] = mb.ctx.add(out[r * d + c], t);
                        }
                    }
                }
                mb.canonicalize(&mut out[..dd]);
                mb.index[&mb.key_of(&out[..dd])]
            }
            Backend::Perm(pb) => {
                let d = pb.deg;
                let x = &pb.data[i as usize * d..i as usize * d + d];
                let y = &pb.data[j as usize * d..j as usize * d + d];
                let mut out = [0u8; 16];
                for t in 0..d {
                    out[t] = y[x[t] as usize];
                }
                let mut key: u128 = 0;
                for &e in &out[..d] {
                    key = (key << 4) | e as u128;
                }
                pb.index[&key]
            }
            Backend::Pairs(pb) => {
                let n = pb.base.order() as u32;
                let (l1, k1) = (i % n, i / n);
                let (l2, k2) = (j % n, j / n);
                let l = pb.base.mul(l1, pb.aut_pows[k1 as usize][l2 as usize]);
                let k = (k1 + k2) % pb.e;
                k * n + l
            }
            Backend::Table { n, mult } => mult[i as usize * n + j as usize],
            Backend::Cyclic { n } => (i + j) % n,
            Backend::Dihedral { m } => {
                let (r1, s1) = (i % m, i / m);
                let (r2, s2) = (j % m, j / m);
                let r = if s1 == 0 { (r1 + r2) % m } else { (r1 + m - r2 % m) % m };
                let s = (s1 + s2) % 2;
                s * m + r
            }
            Backend::Affine { p } => {
                let (a1, b1) = (i / p + 1, i % p);
                let (a2, b2) = (j / p + 1, j % p);
                let a = a1 * a2 % p;
                let b = (a2 * b1 + b2) % p;
                (a - 1) * p + b
            }
        }
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// Commutator x^-1 y^-1 x y.
    #[inline]
    pub fn comm(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.mul(self.inv(x), self.inv(y)), x), y)
    }

    /// Conjugate g^-1 x g.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut acc = 0u32;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u32 {
        let mut cur = x;
        let mut o = 1u32;
        while cur != 0 {
            cur = self.mul(cur, x);
            o += 1;
        }
        o
    }

    /// Field context of a matrix-backed group.
    pub fn matrix_ctx(&self) -> Option<&FieldCtx> {
        match &self.backend {
            Backend::Matrix(mb) => Some(&mb.ctx),
            _ => None,
        }
    }

    /// Matrix payload of an element of a matrix-backed group.
    pub fn matrix_of(&self, i: u32) -> Option<Mat> {
        match &self.backend {
            Backend::Matrix(mb) => {
                let dd = mb.dim * mb.dim;
                let s = &mb.data[i as usize * dd..i as usize * dd + dd];
                Some(Mat {
                    n: mb.dim,
                    a: s.iter().map(|&v| v as u32).collect(),
                })
            }
            _ => None,
        }
    }

    /// Index of a matrix, after projective canonicalization.
    pub fn index_of_matrix(&self, m: &Mat) -> Option<u32> {
        match &self.backend {
            Backend::Matrix(mb) => mb.lookup_mat(m),
            _ => None,
        }
    }

    /// For semidirect-product groups: (base element, automorphism power).
    pub fn pair_parts(&self, i: u32) -> Option<(u32, u32)> {
        match &self.backend {
            Backend::Pairs(pb) => {
                let n = pb.base.order() as u32;
                Some((i % n, i / n))
            }
            _ => None,
        }
    }

    pub fn pair_base(&self) -> Option<&Group> {
        match &self.backend {
            Backend::Pairs(pb) => Some(&pb.base),
            _ => None,
        }
    }

    /// Identity / inverse exact everywhere; associativity exhaustive for
    /// order <= 200 and randomized (>= 10^4 triples) beyond.
    pub(crate) fn verify_axioms(&self) -> Result<()> {
        let n = self.order as u32;
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(GroupError::Axiom(format!("0 is not an identity at {i}")));
            }
            let v = self.inv(i);
            if self.mul(i, v) != 0 || self.mul(v, i) != 0 {
                return Err(GroupError::Axiom(format!("bad inverse at {i}")));
            }
        }
        if self.order <= 200 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::Axiom(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = XorShift::new(0x5eed | n as u64);
            for _ in 0..10_000 {
                let a = rng.below(self.order) as u32;
                let b = rng.below(self.order) as u32;
                let c = rng.below(self.order) as u32;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(GroupError::Axiom(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn fill_inverses(&mut self) {
        let n = self.order;
        let mut inv = vec![u32::MAX; n];
        match &self.backend {
            Backend::Matrix(mb) => {
                for i in 0..n {
                    let dd = mb.dim * mb.dim;
                    let m = Mat {
                        n: mb.dim,
                        a: mb.data[i * dd..i * dd + dd].iter().map(|&v| v as u32).collect(),
                    };
                    let mi = m.inv(&mb.ctx).expect("group elements are invertible");
                    inv[i] = mb.lookup_mat(&mi).expect("inverse closed");
                }
            }
            Backend::Perm(pb) => {
                for i in 0..n {
                    let d = pb.deg;
                    let x = &pb.data[i * d..i * d + d];
                    let mut out = [0u8; 16];
                    for (t, &img) in x.iter().enumerate() {
                        out[img as usize] = t as u8;
                    }
                    let mut key: u128 = 0;
                    for &e in &out[..d] {
                        key = (key << 4) | e as u128;
                    }
                    inv[i] = pb.index[&key];
                }
            }
            Backend::Pairs(pb) => {
                let nb = pb.base.order() as u32;
                for i in 0..n as u32 {
                    let (l, k) = (i % nb, i / nb);
                    let kk = (pb.e - k) % pb.e;
                    let li = pb.aut_pows[kk as usize][pb.base.inv(l) as usize];
                    inv[i as usize] = kk * nb + li;
                }
            }
            Backend::Table { n: tn, mult } => {
                for i in 0..*tn {
                    for j in 0..*tn {
                        if mult[i * tn + j] == 0 {
                            inv[i] = j as u32;
                            break;
                        }
                    }
                }
            }
            Backend::Cyclic { n: cn } => {
                for (i, v) in inv.iter_mut().enumerate() {
                    *v = (cn - i as u32) % cn;
                }
            }
            Backend::Dihedral { m } => {
                for i in 0..n as u32 {
                    let (r, s) = (i % m, i / m);
                    let ri = if s == 0 { (m - r) % m } else { r };
                    inv[i as usize] = s * m + ri;
                }
            }
            Backend::Affine { p } => {
                for i in 0..n as u32 {
                    let (a, b) = (i / p + 1, i % p);
                    let ai = crate::util::mod_inverse(a as u64, *p as u64).unwrap() as u32;
                    let bi = (ai * (p - b) % p) % p;
                    inv[i as usize] = (ai - 1) * p + bi;
                }
            }
        }
        self.inv = inv;
    }
}

/// Conjugacy class data with a verified conjugator map.
pub struct ClassData {
    pub class_id: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u32>,
    /// For each x, some g with rep(class(x))^g = x.
    pub conjugator: Vec<u32>,
    pub element_order: Vec<u32>,
}

impl ClassData {
    pub fn n_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_id[x as usize]
    }
}

/// Conjugation-orbit decomposition; also distributes element orders and
/// verifies the conjugator map pointwise and the class equation.
pub fn structure(g: &Group) -> ClassData {
    let n = g.order();
    let mut class_id = vec![u32::MAX; n];
    let mut conjugator = vec![0u32; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let gens = g.gens().to_vec();
    let mut queue: Vec<u32> = Vec::new();
    for start in 0..n as u32 {
        if class_id[start as usize] != u32::MAX {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(start);
        class_id[start as usize] = cid;
        conjugator[start as usize] = 0;
        queue.clear();
        queue.push(start);
        let mut size = 1u32;
        while let Some(x) = queue.pop() {
            let hx = conjugator[x as usize];
            for &s in &gens {
                let y = g.conj(x, s);
                if class_id[y as usize] == u32::MAX {
                    class_id[y as usize] = cid;
                    conjugator[y as usize] = g.mul(hx, s);
                    size += 1;
                    queue.push(y);
                }
            }
        }
        sizes.push(size);
    }

    let mut rep_order = vec![0u32; reps.len()];
    for (c, &r) in reps.iter().enumerate() {
        rep_order[c] = g.element_order(r);
    }
    let element_order: Vec<u32> = class_id.iter().map(|&c| rep_order[c as usize]).collect();

    // conjugator map verified pointwise
    for x in 0..n as u32 {
        let rep = reps[class_id[x as usize] as usize];
        assert_eq!(
            g.conj(rep, conjugator[x as usize]),
            x,
            "conjugator map broken at {x}"
        );
    }
    // |class| * |centralizer(rep)| = |G| with an independent centralizer scan
    for (c, &r) in reps.iter().enumerate() {
        let cent = (0..n as u32).filter(|&x| g.mul(x, r) == g.mul(r, x)).count();
        assert_eq!(
            cent as u64 * sizes[c] as u64,
            n as u64,
            "class equation fails at rep {r}"
        );
    }

    ClassData {
        class_id,
        reps,
        sizes,
        conjugator,
        element_order,
    }
}

/// Subgroup as a sorted element list with O(1) membership.
#[derive(Clone)]
pub struct Subgroup {
    pub elems: Vec<u32>,
    bits: Bitset,
}

impl Subgroup {
    pub fn from_elems(n: usize, mut elems: Vec<u32>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        let mut bits = Bitset::new(n);
        for &e in &elems {
            bits.set(e as usize);
        }
        Subgroup { elems, bits }
    }

    pub fn trivial(n: usize) -> Subgroup {
        Subgroup::from_elems(n, vec![0])
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::from_elems(g.order(), (0..g.order() as u32).collect())
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits.get(x as usize)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Closure of a seed set under multiplication and inversion.
    pub fn closure(g: &Group, seeds: &[u32]) -> Subgroup {
        let mut bits = Bitset::new(g.order());
        let mut elems = vec![0u32];
        bits.set(0);
        let mut queue: Vec<u32> = Vec::new();
        let mut seedset: Vec<u32> = seeds.to_vec();
        seedset.extend(seeds.iter().map(|&s| g.inv(s)));
        for &s in &seedset {
            if !bits.get(s as usize) {
                bits.set(s as usize);
                elems.push(s);
                queue.push(s);
            }
        }
        let mut head = 0;
        // product closure: multiply every known element by every seed
        let mut known: Vec<u32> = elems.clone();
        while head < known.len() {
            let x = known[head];
            head += 1;
            for &s in &seedset {
                let y = g.mul(x, s);
                if !bits.get(y as usize) {
                    bits.set(y as usize);
                    elems.push(y);
                    known.push(y);
                }
            }
        }
        let _ = queue;
        Subgroup::from_elems(g.order(), elems)
    }

    /// Greedy small generating set.
    pub fn generating_set(&self, g: &Group) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut have = Subgroup::trivial(g.order());
        for &x in &self.elems {
            if !have.contains(x) {
                gens.push(x);
                have = Subgroup::closure(g, &gens);
                if have.len() == self.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_subgroup(&self, g: &Group) -> bool {
        if !self.contains(0) {
            return false;
        }
        self.elems.iter().all(|&a| {
            self.contains(g.inv(a)) && self.elems.iter().all(|&b| self.contains(g.mul(a, b)))
        })
    }

    pub fn is_normal(&self, g: &Group) -> bool {
        let gens = g.gens();
        self.elems
            .iter()
            .all(|&x| gens.iter().all(|&s| self.contains(g.conj(x, s))))
    }
}

pub fn center(g: &Group, cd: &ClassData) -> Subgroup {
    let elems: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| cd.sizes[cd.class_id[x as usize] as usize] == 1)
        .collect();
    Subgroup::from_elems(g.order(), elems)
}

pub fn centralizer(g: &Group, x: u32) -> Subgroup {
    let elems: Vec<u32> = (0..g.order() as u32)
        .filter(|&a| g.mul(a, x) == g.mul(x, a))
        .collect();
    Subgroup::from_elems(g.order(), elems)
}

/// N_G(<y>) by direct test: g normalizes <y> iff y^g is a power of y.
pub fn normalizer_of_cyclic(g: &Group, y: u32) -> Subgroup {
    let mut powers = Bitset::new(g.order());
    let mut cur = y;
    powers.set(0);
    while cur != 0 {
        powers.set(cur as usize);
        cur = g.mul(cur, y);
    }
    let elems: Vec<u32> = (0..g.order() as u32)
        .filter(|&a| powers.get(g.conj(y, a) as usize))
        .collect();
    Subgroup::from_elems(g.order(), elems)
}

pub fn normalizer_of_subgroup(g: &Group, k: &Subgroup) -> Subgroup {
    let gens = k.generating_set(g);
    let elems: Vec<u32> = (0..g.order() as u32)
        .filter(|&a| gens.iter().all(|&x| k.contains(g.conj(x, a))))
        .collect();
    Subgroup::from_elems(g.order(), elems)
}

/// Sylow p-subgroup by normalizer growth.
pub fn sylow(g: &Group, cd: &ClassData, p: u64) -> Subgroup {
    let mut target: u64 = 1;
    let mut n = g.order() as u64;
    while n % p == 0 {
        n /= p;
        target *= p;
    }
    if target == 1 {
        return Subgroup::trivial(g.order());
    }
    let seed = (0..g.order() as u32)
        .filter(|&x| {
            let o = cd.element_order[x as usize] as u64;
            o > 1 && crate::util::factorize(o).len() == 1 && o % p == 0
        })
        .max_by_key(|&x| cd.element_order[x as usize])
        .expect("p divides the order, so p-elements exist");
    let mut sub = Subgroup::closure(g, &[seed]);
    while (sub.len() as u64) < target {
        let norm = normalizer_of_subgroup(g, &sub);
        let next = norm
            .elems
            .iter()
            .copied()
            .find(|&y| {
                if sub.contains(y) {
                    return false;
                }
                let o = cd.element_order[y as usize] as u64;
                o > 1 && o == p.pow(o.ilog(p)) && {
                    // o is a power of p exactly
                    let mut t = o;
                    while t % p == 0 {
                        t /= p;
                    }
                    t == 1
                }
            })
            .expect("Sylow growth step exists");
        let mut seeds = sub.generating_set(g);
        seeds.push(next);
        sub = Subgroup::closure(g, &seeds);
        assert_eq!(
            {
                let mut t = sub.len() as u64;
                while t % p == 0 {
                    t /= p;
                }
                t
            },
            1,
            "p-closure left the p-group"
        );
    }
    sub
}

/// Quotient by a verified normal subgroup, as a Cayley-table group, plus the
/// projection map.
pub fn quotient(g: &Group, nrm: &Subgroup) -> Result<(Group, Vec<u32>)> {
    if !nrm.is_subgroup(g) || !nrm.is_normal(g) {
        return Err(GroupError::NotNormal);
    }
    let n = g.order();
    let qn = n / nrm.len();
    if qn > 4096 {
        return Err(GroupError::OrderCap(qn as u64, 4096));
    }
    let mut coset = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::with_capacity(qn);
    for x in 0..n as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in &nrm.elems {
            coset[g.mul(x, m) as usize] = id;
        }
    }
    assert_eq!(reps.len(), qn);
    let mut mult = vec![0u32; qn * qn];
    for a in 0..qn {
        for b in 0..qn {
            mult[a * qn + b] = coset[g.mul(reps[a], reps[b]) as usize];
        }
    }
    let q = from_table(mult, qn, format!("{}/N{}", g.descriptor(), nrm.len()))?;
    Ok((q, coset))
}

/// Hypercenter: union of the upper central series, via iterated
/// center-of-quotient preimages.
pub fn hypercenter(g: &Group, cd: &ClassData) -> Subgroup {
    let mut z = center(g, cd);
    if z.len() == 1 {
        return z;
    }
    loop {
        if z.len() == g.order() {
            return z;
        }
        let (q, proj) = quotient(g, &z).expect("center is normal");
        let cq = structure(&q);
        let zq = center(&q, &cq);
        if zq.len() == 1 {
            return z;
        }
        let lifted: Vec<u32> = (0..g.order() as u32)
            .filter(|&x| zq.contains(proj[x as usize]))
            .collect();
        let next = Subgroup::from_elems(g.order(), lifted);
        if next.len() == z.len() {
            return z;
        }
        z = next;
    }
}

/// Re-index a subgroup as a standalone Cayley-table group. Returns the group
/// and the map from subgroup positions to ambient indices.
pub fn subgroup_as_group(g: &Group, sub: &Subgroup, desc: String) -> Result<(Group, Vec<u32>)> {
    let n = sub.len();
    if n > 4096 {
        return Err(GroupError::OrderCap(n as u64, 4096));
    }
    if !sub.is_subgroup(g) {
        return Err(GroupError::Axiom("not closed".into()));
    }
    // position of each ambient element inside the sorted list; identity 0
    // stays at position 0 because the list is sorted
    let pos: FxHashMap<u32, u32> = sub
        .elems
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u32))
        .collect();
    let mut mult = vec![0u32; n * n];
    for (i, &a) in sub.elems.iter().enumerate() {
        for (j, &b) in sub.elems.iter().enumerate() {
            mult[i * n + j] = pos[&g.mul(a, b)];
        }
    }
    let q = from_table(mult, n, desc)?;
    Ok((q, sub.elems.clone()))
}

/// The Frobenius kernel conditions against a specific candidate kernel:
/// proper nontrivial normal, centralizers trapped, coprime index, and an
/// explicitly found complement.
pub fn is_frobenius_with_kernel(g: &Group, cd: &ClassData, kernel: &Subgroup) -> bool {
    let n = g.order();
    if kernel.len() <= 1 || kernel.len() >= n {
        return false;
    }
    if !kernel.is_subgroup(g) || !kernel.is_normal(g) {
        return false;
    }
    let m = (n / kernel.len()) as u64;
    if gcd(kernel.len() as u64, m) != 1 {
        return false;
    }
    let mut reps_in: Vec<u32> = Vec::new();
    let mut seen_class = vec![false; cd.n_classes()];
    for &x in &kernel.elems {
        if x == 0 {
            continue;
        }
        let c = cd.class_id[x as usize] as usize;
        if !seen_class[c] {
            seen_class[c] = true;
            reps_in.push(x);
        }
    }
    let ok = reps_in
        .iter()
        .all(|&x| (0..n as u32).all(|a| g.mul(a, x) != g.mul(x, a) || kernel.contains(a)));
    ok && find_complement(g, cd, kernel, m).is_some()
}

/// Frobenius detection: a proper nontrivial normal N with C_G(x) <= N for all
/// nonidentity x in N, gcd(|N|, |G:N|) = 1, and an explicitly found
/// complement. Kernel candidates are normal closures of unions of conjugacy
/// classes (join-closed).
pub fn is_frobenius(g: &Group, cd: &ClassData) -> Result<Option<Subgroup>> {
    let n = g.order();
    if n > FROBENIUS_CAP {
        return Err(GroupError::OrderCap(n as u64, FROBENIUS_CAP as u64));
    }
    // normal closures of single classes
    let mut closures: Vec<Subgroup> = Vec::new();
    let mut seen: Vec<Vec<u32>> = Vec::new();
    for c in 0..cd.n_classes() {
        if cd.reps[c] == 0 {
            continue;
        }
        let members: Vec<u32> = (0..n as u32)
            .filter(|&x| cd.class_id[x as usize] == c as u32)
            .collect();
        let sub = Subgroup::closure(g, &members);
        if !seen.contains(&sub.elems) {
            seen.push(sub.elems.clone());
            closures.push(sub);
        }
    }
    // join-closure (the lattice generated by class closures)
    let mut i = 0;
    while i < closures.len() && closures.len() < 512 {
        let mut j = 0;
        while j < closures.len() && closures.len() < 512 {
            if i != j {
                let mut seeds = closures[i].generating_set(g);
                seeds.extend(closures[j].generating_set(g));
                let join = Subgroup::closure(g, &seeds);
                if !seen.contains(&join.elems) {
                    seen.push(join.elems.clone());
                    closures.push(join);
                }
            }
            j += 1;
        }
        i += 1;
    }
    closures.sort_by_key(|s| s.len());

    for cand in &closures {
        if is_frobenius_with_kernel(g, cd, cand) {
            return Ok(Some(cand.clone()));
        }
    }
    Ok(None)
}

/// Brute search for a subgroup of order `m` meeting `nrm` trivially,
/// seeded from coset-transversal elements of order dividing m.
fn find_complement(g: &Group, cd: &ClassData, nrm: &Subgroup, m: u64) -> Option<Subgroup> {
    let candidates: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| x != 0 && !nrm.contains(x) && m % cd.element_order[x as usize] as u64 == 0)
        .collect();
    let mut budget = 200_000usize;
    fn extend(
        g: &Group,
        nrm: &Subgroup,
        m: u64,
        cur: &Subgroup,
        candidates: &[u32],
        from: usize,
        budget: &mut usize,
    ) -> Option<Subgroup> {
        if cur.len() as u64 == m {
            return Some(cur.clone());
        }
        for (pos, &x) in candidates.iter().enumerate().skip(from) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if cur.contains(x) {
                continue;
            }
            let mut seeds = cur.generating_set(g);
            seeds.push(x);
            let bigger = Subgroup::closure(g, &seeds);
            if m % bigger.len() as u64 != 0 {
                continue;
            }
            if bigger.elems.iter().any(|&e| e != 0 && nrm.contains(e)) {
                continue;
            }
            if let Some(found) = extend(g, nrm, m, &bigger, candidates, pos + 1, budget) {
                return Some(found);
            }
        }
        None
    }
    extend(
        g,
        nrm,
        m,
        &Subgroup::trivial(g.order()),
        &candidates,
        0,
        &mut budget,
    )
}

#[derive(Debug, Clone)]
pub struct PrimeGraph {
    pub primes: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    pub components: Vec<Vec<u64>>,
}

/// Prime graph from the set of element orders.
pub fn spectrum_prime_graph(g: &Group, cd: &ClassData) -> PrimeGraph {
    let primes = prime_divisors(g.order() as u64);
    let mut orders: Vec<u64> = cd.element_order.iter().map(|&o| o as u64).collect();
    orders.sort_unstable();
    orders.dedup();
    let mut edges = Vec::new();
    for (i, &r) in primes.iter().enumerate() {
        for &s in primes.iter().skip(i + 1) {
            if orders.iter().any(|&o| o % (r * s) == 0) {
                edges.push((r, s));
            }
        }
    }
    // connected components by repeated sweep
    let mut comp: Vec<usize> = (0..primes.len()).collect();
    loop {
        let mut changed = false;
        for &(r, s) in &edges {
            let (i, j) = (
                primes.iter().position(|&p| p == r).unwrap(),
                primes.iter().position(|&p| p == s).unwrap(),
            );
            let m = comp[i].min(comp[j]);
            if comp[i] != m || comp[j] != m {
                comp[i] = m;
                comp[j] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut components: Vec<Vec<u64>> = Vec::new();
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    for root in roots {
        components.push(
            primes
                .iter()
                .enumerate()
                .filter(|&(i, _)| comp[i] == root)
                .map(|(_, &p)| p)
                .collect(),
        );
    }
    PrimeGraph {
        primes,
        edges,
        components,
    }
}

/// Semidirect product L x <alpha> with alpha of order e, given as an index
/// permutation of L. The homomorphism property is checked exhaustively for
/// |L| <= 2000 and on 10^5 random pairs beyond; bijectivity and alpha^e = id
/// are always checked exactly.
pub fn extension_by_automorphism(l: Group, alpha: Vec<u32>, e: u32) -> Result<Group> {
    let n = l.order();
    if alpha.len() != n {
        return Err(GroupError::NotAutomorphism("length mismatch".into()));
    }
    let mut hit = vec![false; n];
    for &v in &alpha {
        if v as usize >= n || hit[v as usize] {
            return Err(GroupError::NotAutomorphism("not a bijection".into()));
        }
        hit[v as usize] = true;
    }
    if alpha[0] != 0 {
        return Err(GroupError::NotAutomorphism("does not fix the identity".into()));
    }
    if n <= 2000 {
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if alpha[l.mul(a, b) as usize] != l.mul(alpha[a as usize], alpha[b as usize]) {
                    return Err(GroupError::NotAutomorphism(format!(
                        "multiplication not preserved at ({a},{b})"
                    )));
                }
            }
        }
    } else {
        let mut rng = XorShift::new(0xa17a ^ n as u64);
        for _ in 0..100_000 {
            let a = rng.below(n) as u32;
            let b = rng.below(n) as u32;
            if alpha[l.mul(a, b) as usize] != l.mul(alpha[a as usize], alpha[b as usize]) {
                return Err(GroupError::NotAutomorphism(format!(
                    "multiplication not preserved at ({a},{b})"
                )));
            }
        }
    }
    let mut aut_pows: Vec<Vec<u32>> = Vec::with_capacity(e as usize);
    aut_pows.push((0..n as u32).collect());
    for k in 1..e {
        let prev = &aut_pows[(k - 1) as usize];
        aut_pows.push(prev.iter().map(|&x| alpha[x as usize]).collect());
    }
    // alpha^e = identity, exactly
    let last: Vec<u32> = aut_pows[(e - 1) as usize]
        .iter()
        .map(|&x| alpha[x as usize])
        .collect();
    if last.iter().enumerate().any(|(i, &v)| v as usize != i) {
        return Err(GroupError::NotAutomorphism(format!("order does not divide {e}")));
    }

    let order = n * e as usize;
    if order > STRUCTURE_CAP {
        return Err(GroupError::OrderCap(order as u64, STRUCTURE_CAP as u64));
    }
    let desc = format!("{}.ext:{}", l.descriptor(), e);
    let mut gens: Vec<u32> = l.gens().to_vec();
    if e > 1 {
        gens.push(n as u32); // (identity, shift 1)
    }
    let mut grp = Group {
        order,
        backend: Backend::Pairs(PairsBackend {
            base: Box::new(l),
            e,
            aut_pows,
        }),
        inv: Vec::new(),
        gens,
        desc,
    };
    grp.fill_inverses();
    grp.verify_axioms()?;
    Ok(grp)
}

/// Elements of a given order, via class data.
pub fn elements_of_order(g: &Group, cd: &ClassData, o: u32) -> Vec<u32> {
    (0..g.order() as u32)
        .filter(|&x| cd.element_order[x as usize] == o)
        .collect()
}
