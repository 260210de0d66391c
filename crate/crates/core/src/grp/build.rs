//! Named constructors. Matrix families are closed under multiplication from
//! explicit generating sets and canonicalized modulo allowed scalars;
//! every build is checked against the closed-form order.

use super::descriptor::{Family, GroupSpec};
use super::{
    extension_by_automorphism, Backend, Group, GroupError, MatrixBackend, PermBackend, Result,
    STRUCTURE_CAP,
};
use crate::ff::{field_create, Fe, FieldCtx, SubfieldEmbedding};
use crate::mat::Mat;
use crate::util::prime_power;
use rustc_hash::FxHashMap;

const DIM_MAX: usize = 6;

fn closure_cap() -> usize {
    STRUCTURE_CAP + 1
}

/// BFS closure of canonicalized matrices under right multiplication by the
/// generators.
fn close_matrix_group(
    ctx: FieldCtx,
    dim: usize,
    gen_mats: &[Mat],
    canon_scalars: Vec<Fe>,
    desc: String,
    expect_order: u64,
) -> Result<Group> {
    assert!(dim <= DIM_MAX);
    let q = ctx.q as u64;
    let ebits = 64 - (q - 1).leading_zeros().min(63);
    let ebits = ebits.max(1);
    if (dim * dim) as u32 * ebits > 128 {
        return Err(GroupError::Unsupported(format!(
            "matrix key does not fit: dim {dim}, q {q}"
        )));
    }
    let mut mb = MatrixBackend {
        ctx,
        dim,
        ebits,
        data: Vec::new(),
        index: FxHashMap::default(),
        canon_scalars,
    };
    let dd = dim * dim;
    let push = |mb: &mut MatrixBackend, buf: &[u32]| -> Option<u32> {
        let key = mb.key_of(buf);
        if mb.index.contains_key(&key) {
            return None;
        }
        let id = (mb.data.len() / dd) as u32;
        mb.data.extend(buf.iter().map(|&v| v as u16));
        mb.index.insert(key, id);
        Some(id)
    };

    // identity first: index 0
    let ident = Mat::identity(dim);
    let mut buf: Vec<u32> = ident.a.clone();
    mb.canonicalize(&mut buf);
    push(&mut mb, &buf);

    let mut gen_canon: Vec<Vec<u32>> = Vec::new();
    for gm in gen_mats {
        assert_eq!(gm.n, dim);
        let mut b = gm.a.clone();
        mb.canonicalize(&mut b);
        push(&mut mb, &b);
        gen_canon.push(b);
    }

    let mut head = 0usize;
    while head * dd < mb.data.len() {
        if head > closure_cap() {
            return Err(GroupError::ClosureCap(closure_cap()));
        }
        let x: Vec<u32> = mb.data[head * dd..head * dd + dd]
            .iter()
            .map(|&v| v as u32)
            .collect();
        for gb in &gen_canon {
            let mut out = [0u32; DIM_MAX * DIM_MAX];
            for r in 0..dim {
                for k in 0..dim {
                    let v = x[r * dim + k];
                    if v == 0 {
                        continue;
                    }
                    for c in 0..dim {
                        let t = mb.ctx.mul(v, gb[k * dim + c]);
                        out[r * dim + c] = mb.ctx.add(out[r * dim + c], t);
                    }
                }
            }
            mb.canonicalize(&mut out[..dd]);
            push(&mut mb, &out[..dd]);
        }
        head += 1;
    }

    let order = mb.data.len() / dd;
    if order as u64 != expect_order {
        return Err(GroupError::OrderMismatch {
            built: order as u64,
            formula: expect_order,
        });
    }
    let gens: Vec<u32> = gen_canon
        .iter()
        .map(|b| mb.index[&mb.key_of(b)])
        .collect();
    let mut g = Group {
        order,
        backend: Backend::Matrix(mb),
        inv: Vec::new(),
        gens,
        desc,
    };
    g.fill_inverses();
    g.verify_axioms()?;
    Ok(g)
}

fn close_perm_group(deg: usize, gen_perms: &[Vec<u8>], desc: String, expect_order: u64) -> Result<Group> {
    assert!(deg <= 16);
    let key_of = |p: &[u8]| -> u128 {
        let mut k: u128 = 0;
        for &e in p {
            k = (k << 4) | e as u128;
        }
        k
    };
    let mut pb = PermBackend {
        deg,
        data: Vec::new(),
        index: FxHashMap::default(),
    };
    let ident: Vec<u8> = (0..deg as u8).collect();
    pb.data.extend_from_slice(&ident);
    pb.index.insert(key_of(&ident), 0);
    for gp in gen_perms {
        let k = key_of(gp);
        if !pb.index.contains_key(&k) {
            let id = (pb.data.len() / deg) as u32;
            pb.data.extend_from_slice(gp);
            pb.index.insert(k, id);
        }
    }
    let mut head = 0;
    while head * deg < pb.data.len() {
        let x: Vec<u8> = pb.data[head * deg..head * deg + deg].to_vec();
        for gp in gen_perms {
            let mut out = vec![0u8; deg];
            for t in 0..deg {
                out[t] = gp[x[t] as usize];
            }
            let k = key_of(&out);
            if !pb.index.contains_key(&k) {
                let id = (pb.data.len() / deg) as u32;
                pb.data.extend_from_slice(&out);
                pb.index.insert(k, id);
            }
        }
        head += 1;
    }
    let order = pb.data.len() / deg;
    if order as u64 != expect_order {
        return Err(GroupError::OrderMismatch {
            built: order as u64,
            formula: expect_order,
        });
    }
    let gens: Vec<u32> = gen_perms.iter().map(|p| pb.index[&key_of(p)]).collect();
    let mut g = Group {
        order,
        backend: Backend::Perm(pb),
        inv: Vec::new(),
        gens,
        desc,
    };
    g.fill_inverses();
    g.verify_axioms()?;
    Ok(g)
}

/// Group from an explicit Cayley table (row-major n x n, identity = 0).
pub fn from_table(mult: Vec<u32>, n: usize, desc: String) -> Result<Group> {
    if mult.len() != n * n || n == 0 {
        return Err(GroupError::BadParams {
            family: "CayleyTable".into(),
            reason: "table shape".into(),
        });
    }
    // rows and columns must be permutations (bijection/closure check)
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            let r = mult[i * n + j] as usize;
            let c = mult[j * n + i] as usize;
            if r >= n || c >= n || row[r] || col[c] {
                return Err(GroupError::Axiom("table is not a Latin square".into()));
            }
            row[r] = true;
            col[c] = true;
        }
    }
    let mut g = Group {
        order: n,
        backend: Backend::Table { n, mult },
        inv: Vec::new(),
        gens: Vec::new(),
        desc,
    };
    g.fill_inverses();
    if g.inv.contains(&u32::MAX) {
        return Err(GroupError::Axiom("missing inverses".into()));
    }
    g.verify_axioms()?;
    g.gens = greedy_generators(&g);
    Ok(g)
}

fn greedy_generators(g: &Group) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut have = super::Subgroup::trivial(g.order());
    for x in 1..g.order() as u32 {
        if !have.contains(x) {
            gens.push(x);
            have = super::Subgroup::closure(g, &gens);
            if have.len() == g.order() {
                break;
            }
        }
    }
    gens
}

fn mth_roots(ctx: &FieldCtx, m: u64) -> Vec<Fe> {
    (1..ctx.q)
        .filter(|&x| ctx.pow(x, m as i128).unwrap() == 1)
        .collect()
}

fn formula_order(spec: &GroupSpec) -> Result<u64> {
    let err = |reason: &str| GroupError::BadParams {
        family: spec.family.token().into(),
        reason: reason.into(),
    };
    let as_prime_power = |q: u64| prime_power(q).ok_or_else(|| err("q must be a prime power"));
    let o: u128 = match spec.family {
        Family::Psl2 | Family::Sl2 | Family::Pgl2 => {
            let q = spec.params[0];
            as_prime_power(q)?;
            if q < 2 {
                return Err(err("q >= 2"));
            }
            let full = q as u128 * (q as u128 * q as u128 - 1);
            match spec.family {
                Family::Psl2 => full / if q % 2 == 1 { 2 } else { 1 },
                _ => full,
            }
        }
        Family::Psl | Family::Sl => {
            let (m, q) = (spec.params[0], spec.params[1]);
            as_prime_power(q)?;
            if !(2..=DIM_MAX as u64).contains(&m) {
                return Err(err("2 <= m <= 6"));
            }
            let mut o: u128 = (q as u128).pow((m * (m - 1) / 2) as u32);
            for i in 2..=m {
                o *= (q as u128).pow(i as u32) - 1;
            }
            if spec.family == Family::Psl {
                o /= crate::util::gcd(m, q - 1) as u128;
            }
            o
        }
        Family::Psu | Family::Su => {
            let (m, q) = (spec.params[0], spec.params[1]);
            as_prime_power(q)?;
            if !(3..=DIM_MAX as u64).contains(&m) {
                return Err(err("3 <= m <= 6"));
            }
            if (m, q) == (3, 2) {
                return Err(err("SU(3,2) is not transvection-generated; unsupported"));
            }
            let mut o: u128 = (q as u128).pow((m * (m - 1) / 2) as u32);
            for i in 2..=m {
                let t = (q as u128).pow(i as u32);
                o *= if i % 2 == 0 { t - 1 } else { t + 1 };
            }
            if spec.family == Family::Psu {
                o /= crate::util::gcd(m, q + 1) as u128;
            }
            o
        }
        Family::Sp => {
            let (n, q) = (spec.params[0], spec.params[1]);
            as_prime_power(q)?;
            if n % 2 != 0 || !(2..=DIM_MAX as u64).contains(&n) {
                return Err(err("n even, 2 <= n <= 6"));
            }
            let m = n / 2;
            let mut o: u128 = (q as u128).pow((m * m) as u32);
            for i in 1..=m {
                o *= (q as u128).pow(2 * i as u32) - 1;
            }
            o
        }
        Family::Sz => {
            let q = spec.params[0];
            let (p, f) = as_prime_power(q)?;
            if p != 2 || f < 3 || f % 2 == 0 {
                return Err(err("q = 2^(2k+1) with k >= 1"));
            }
            q as u128 * q as u128 * (q as u128 * q as u128 + 1) * (q as u128 - 1)
        }
        Family::Alt => {
            let n = spec.params[0];
            if !(3..=16).contains(&n) {
                return Err(err("3 <= n <= 16"));
            }
            (1..=n as u128).product::<u128>() / 2
        }
        Family::Sym => {
            let n = spec.params[0];
            if !(2..=16).contains(&n) {
                return Err(err("2 <= n <= 16"));
            }
            (1..=n as u128).product::<u128>()
        }
        Family::Cyclic => {
            let n = spec.params[0];
            if n == 0 {
                return Err(err("n >= 1"));
            }
            n as u128
        }
        Family::Dihedral => {
            let n = spec.params[0];
            if n < 2 || n % 2 != 0 {
                return Err(err("even order >= 2"));
            }
            n as u128
        }
        Family::Agl1 => {
            let p = spec.params[0];
            if !crate::util::is_prime(p) {
                return Err(err("p must be prime"));
            }
            (p as u128) * (p as u128 - 1)
        }
    };
    let mut cap = STRUCTURE_CAP as u128;
    if let Some(k) = spec.fieldaut {
        cap /= k.max(1) as u128;
    }
    if o > cap {
        return Err(GroupError::OrderCap(o.min(u64::MAX as u128) as u64, cap as u64));
    }
    Ok(o as u64)
}

fn elementary_mats(ctx: &FieldCtx, dim: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    let mut add_coeffs = vec![1 as Fe];
    let mut c = ctx.generator();
    for _ in 1..ctx.f {
        add_coeffs.push(c);
        c = ctx.mul(c, ctx.generator());
    }
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            for &a in &add_coeffs {
                let mut m = Mat::identity(dim);
                m.set(i, j, a);
                gens.push(m);
            }
        }
    }
    gens
}

fn build_linear(spec: &GroupSpec, m: usize, q: u64, projective: bool) -> Result<Group> {
    let (p, f) = prime_power(q).unwrap();
    let ctx = field_create(p, f)?;
    let expect = formula_order(spec)?;
    let mut gens = elementary_mats(&ctx, m);
    let scalars = if projective {
        mth_roots(&ctx, m as u64)
    } else {
        vec![1]
    };
    if spec.family == Family::Pgl2 {
        let mut d = Mat::identity(2);
        d.set(0, 0, ctx.generator());
        gens.push(d);
    }
    let scalars = if spec.family == Family::Pgl2 {
        (1..ctx.q).collect()
    } else {
        scalars
    };
    close_matrix_group(ctx, m, &gens, scalars, spec.to_string(), expect)
}

/// Hermitian form data for SU_m(q): matrices live over GF(q^2); for odd m the
/// Gram matrix is the trace-form model Tr(x y^(q^m)) on the field tower,
/// for even m the identity Gram matrix (the trace pairing is not Hermitian
/// when m is even; all non-degenerate Hermitian forms are equivalent).
fn unitary_gram(ctx2: &FieldCtx, m: usize, q: u64) -> Result<Mat> {
    if m % 2 == 0 {
        return Ok(Mat::identity(m));
    }
    let (p, f) = prime_power(q).unwrap();
    let big = field_create(p, 2 * f * m as u32)?;
    let emb = SubfieldEmbedding::new(ctx2, &big)?;
    let gen = big.p; // polynomial generator x of the big field
    let mut basis = vec![1 as Fe];
    for i in 1..m {
        basis.push(big.mul(basis[i - 1], gen));
    }
    let qm = (q as i128).pow(m as u32);
    let mut gram = Mat::zero(m);
    for i in 0..m {
        for j in 0..m {
            let v = big.mul(basis[i], big.pow(basis[j], qm)?);
            let t = emb.rel_trace(ctx2, &big, v)?;
            gram.set(i, j, t);
        }
    }
    Ok(gram)
}

fn hermitian_dot(ctx2: &FieldCtx, q: u64, gram: &Mat, u: &[Fe], v: &[Fe]) -> Fe {
    let m = gram.n;
    let mut acc: Fe = 0;
    for i in 0..m {
        if u[i] == 0 {
            continue;
        }
        for j in 0..m {
            if v[j] == 0 {
                continue;
            }
            let vc = ctx2.pow(v[j], q as i128).unwrap();
            acc = ctx2.add(acc, ctx2.mul(u[i], ctx2.mul(gram.at(i, j), vc)));
        }
    }
    acc
}

/// All projective points of GF(q2)^m (first nonzero coordinate 1).
fn projective_points(ctx2: &FieldCtx, m: usize) -> Vec<Vec<Fe>> {
    let q2 = ctx2.q as u64;
    let mut out = Vec::new();
    for lead in 0..m {
        // coordinates: zeros before `lead`, 1 at lead, arbitrary after
        let free = m - lead - 1;
        let total = (q2 as u128).pow(free as u32);
        for n in 0..total {
            let mut v = vec![0 as Fe; m];
            v[lead] = 1;
            let mut t = n;
            for c in v.iter_mut().skip(lead + 1) {
                *c = (t % q2 as u128) as Fe;
                t /= q2 as u128;
            }
            out.push(v);
        }
    }
    out
}

fn build_unitary(spec: &GroupSpec, m: usize, q: u64) -> Result<Group> {
    let (p, f) = prime_power(q).unwrap();
    let ctx2 = field_create(p, 2 * f)?;
    let expect = formula_order(spec)?;
    let gram = unitary_gram(&ctx2, m, q)?;
    // trace-zero scalars form the additive group of transvection parameters
    let trace_zero: Vec<Fe> = (1..ctx2.q)
        .filter(|&l| ctx2.add(l, ctx2.pow(l, q as i128).unwrap()) == 0)
        .collect();
    let mut gens: Vec<Mat> = Vec::new();
    for v in projective_points(&ctx2, m) {
        if hermitian_dot(&ctx2, q, &gram, &v, &v) != 0 {
            continue;
        }
        for &lam in &trace_zero {
            let mut t = Mat::identity(m);
            for i in 0..m {
                let mut e = vec![0 as Fe; m];
                e[i] = 1;
                let c = ctx2.mul(lam, hermitian_dot(&ctx2, q, &gram, &e, &v));
                if c == 0 {
                    continue;
                }
                for j in 0..m {
                    t.set(i, j, ctx2.add(t.at(i, j), ctx2.mul(c, v[j])));
                }
            }
            debug_assert_eq!(t.det(&ctx2), 1);
            gens.push(t);
        }
    }
    let scalars = if spec.family == Family::Psu {
        (1..ctx2.q)
            .filter(|&l| {
                ctx2.pow(l, m as i128).unwrap() == 1 && ctx2.pow(l, q as i128 + 1).unwrap() == 1
            })
            .collect()
    } else {
        vec![1]
    };
    close_matrix_group(ctx2, m, &gens, scalars, spec.to_string(), expect)
}

fn symplectic_gram(ctx: &FieldCtx, n: usize) -> Mat {
    let m = n / 2;
    let mut j = Mat::zero(n);
    for i in 0..m {
        j.set(i, m + i, 1);
        j.set(m + i, i, ctx.neg(1));
    }
    j
}

fn build_symplectic(spec: &GroupSpec, n: usize, q: u64) -> Result<Group> {
    let (p, f) = prime_power(q).unwrap();
    let ctx = field_create(p, f)?;
    let expect = formula_order(spec)?;
    let j = symplectic_gram(&ctx, n);
    let phi = |ctx: &FieldCtx, u: &[Fe], v: &[Fe]| -> Fe {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (jj, &vj) in v.iter().enumerate() {
                acc = ctx.add(acc, ctx.mul(ui, ctx.mul(j.at(i, jj), vj)));
            }
        }
        acc
    };
    let mut lam_basis = vec![1 as Fe];
    let mut c = ctx.generator();
    for _ in 1..f {
        lam_basis.push(c);
        c = ctx.mul(c, ctx.generator());
    }
    let transvections = |points: &[Vec<Fe>]| -> Vec<Mat> {
        let mut gens = Vec::new();
        for v in points {
            for &lam in &lam_basis {
                let mut t = Mat::identity(n);
                for i in 0..n {
                    let mut e = vec![0 as Fe; n];
                    e[i] = 1;
                    let cc = ctx.mul(lam, phi(&ctx, &e, v));
                    if cc == 0 {
                        continue;
                    }
                    for col in 0..n {
                        t.set(i, col, ctx.add(t.at(i, col), ctx.mul(cc, v[col])));
                    }
                }
                gens.push(t);
            }
        }
        gens
    };
    // small candidate set first, full projective set if it falls short
    let mut small: Vec<Vec<Fe>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0 as Fe; n];
        e[i] = 1;
        small.push(e);
    }
    for i in 0..n {
        for jj in 0..n {
            if i == jj {
                continue;
            }
            for cval in [1, ctx.generator()] {
                let mut e = vec![0 as Fe; n];
                e[i] = 1;
                e[jj] = cval;
                small.push(e);
            }
        }
    }
    match close_matrix_group(
        field_create(p, f)?,
        n,
        &transvections(&small),
        vec![1],
        spec.to_string(),
        expect,
    ) {
        Ok(g) => Ok(g),
        Err(GroupError::OrderMismatch { .. }) => {
            let pts = projective_points(&ctx, n);
            close_matrix_group(
                field_create(p, f)?,
                n,
                &transvections(&pts),
                vec![1],
                spec.to_string(),
                expect,
            )
        }
        Err(e) => Err(e),
    }
}

fn build_suzuki(spec: &GroupSpec, q: u64) -> Result<Group> {
    let (_, f) = prime_power(q).unwrap();
    let k = (f - 1) / 2;
    let theta: i128 = 1 << (k + 1);
    let ctx = field_create(2, f)?;
    let expect = formula_order(spec)?;
    let s_mat = |a: Fe, b: Fe| -> Mat {
        let at = ctx.pow(a, theta).unwrap();
        let a1t = ctx.mul(a, at); // a^(1+theta)
        let a2t = ctx.mul(ctx.mul(a, a), at); // a^(2+theta)
        let bt = ctx.pow(b, theta).unwrap();
        Mat::from_rows(&[
            &[1, 0, 0, 0],
            &[a, 1, 0, 0],
            &[b, at, 1, 0],
            &[
                ctx.add(ctx.add(a2t, ctx.mul(a, b)), bt),
                ctx.add(a1t, b),
                a,
                1,
            ],
        ])
    };
    let mut gens: Vec<Mat> = Vec::new();
    let mut c: Fe = 1;
    for _ in 0..f {
        gens.push(s_mat(c, 0));
        gens.push(s_mat(0, c));
        c = ctx.mul(c, ctx.generator());
    }
    let g = ctx.generator();
    let e1: i128 = 1 + (1 << k);
    let torus = Mat::from_rows(&[
        &[ctx.pow(g, e1).unwrap(), 0, 0, 0],
        &[0, ctx.pow(g, 1 << k).unwrap(), 0, 0],
        &[0, 0, ctx.pow(g, -(1 << k)).unwrap(), 0],
        &[0, 0, 0, ctx.pow(g, -e1).unwrap()],
    ]);
    gens.push(torus);
    gens.push(Mat::from_rows(&[
        &[0, 0, 0, 1],
        &[0, 0, 1, 0],
        &[0, 1, 0, 0],
        &[1, 0, 0, 0],
    ]));
    close_matrix_group(ctx, 4, &gens, vec![1], spec.to_string(), expect)
}

fn perm_cycle(deg: usize, pts: &[usize]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..deg as u8).collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()] as u8;
    }
    p
}

fn build_alt(spec: &GroupSpec, n: usize) -> Result<Group> {
    let expect = formula_order(spec)?;
    // 3-cycles (0,1,k) generate Alt(n)
    let gens: Vec<Vec<u8>> = (2..n).map(|k| perm_cycle(n, &[0, 1, k])).collect();
    close_perm_group(n, &gens, spec.to_string(), expect)
}

fn build_sym(spec: &GroupSpec, n: usize) -> Result<Group> {
    let expect = formula_order(spec)?;
    let gens = vec![perm_cycle(n, &[0, 1]), perm_cycle(n, &(0..n).collect::<Vec<_>>())];
    close_perm_group(n, &gens, spec.to_string(), expect)
}

fn finish_formula_backend(backend: Backend, order: usize, desc: String) -> Result<Group> {
    let mut g = Group {
        order,
        backend,
        inv: Vec::new(),
        gens: Vec::new(),
        desc,
    };
    g.fill_inverses();
    g.verify_axioms()?;
    g.gens = greedy_generators(&g);
    Ok(g)
}

/// Closed-form order for a descriptor (including the fieldaut factor),
/// without building anything; also validates the parameters.
pub fn expected_order(spec: &GroupSpec) -> Result<u64> {
    let base = formula_order(spec)?;
    Ok(base * spec.fieldaut.unwrap_or(1) as u64)
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    let base = build_base(spec)?;
    let Some(k) = spec.fieldaut else {
        return Ok(base);
    };
    if k == 1 {
        let ident: Vec<u32> = (0..base.order() as u32).collect();
        return extension_by_automorphism(base, ident, 1);
    }
    // field automorphism x -> x^(p^(f/k)) of order k, applied entrywise
    let ctx = base.matrix_ctx().ok_or_else(|| {
        GroupError::Unsupported("fieldaut extensions need a matrix family".into())
    })?;
    let (p, f) = (ctx.p as u64, ctx.f);
    let f_def = match spec.family {
        // unitary matrices live over GF(q^2) = GF(p^(2f0)); the natural
        // parameter is the defining field GF(q), which we do not extend here
        Family::Psu | Family::Su => {
            return Err(GroupError::Unsupported(
                "fieldaut over unitary families is not supported".into(),
            ))
        }
        _ => f,
    };
    if f_def % k != 0 {
        return Err(GroupError::BadParams {
            family: spec.family.token().into(),
            reason: format!("fieldaut order {k} must divide the field degree {f_def}"),
        });
    }
    let e = p.pow(f_def / k) as i128;
    let n = base.order();
    let mut alpha = vec![0u32; n];
    for i in 0..n as u32 {
        let m = base.matrix_of(i).unwrap();
        let ctx = base.matrix_ctx().unwrap();
        let img = Mat {
            n: m.n,
            a: m.a.iter().map(|&v| ctx.pow(v, e).unwrap()).collect(),
        };
        alpha[i as usize] = base
            .index_of_matrix(&img)
            .expect("field automorphism preserves the group");
    }
    let mut g = extension_by_automorphism(base, alpha, k)?;
    g.desc = spec.to_string();
    Ok(g)
}

fn build_base(spec: &GroupSpec) -> Result<Group> {
    match spec.family {
        Family::Psl2 => build_linear(spec, 2, spec.params[0], true),
        Family::Sl2 => build_linear(spec, 2, spec.params[0], false),
        Family::Pgl2 => build_linear(spec, 2, spec.params[0], false),
        Family::Psl => build_linear(spec, spec.params[0] as usize, spec.params[1], true),
        Family::Sl => build_linear(spec, spec.params[0] as usize, spec.params[1], false),
        Family::Psu => build_unitary(spec, spec.params[0] as usize, spec.params[1]),
        Family::Su => build_unitary(spec, spec.params[0] as usize, spec.params[1]),
        Family::Sp => build_symplectic(spec, spec.params[0] as usize, spec.params[1]),
        Family::Sz => build_suzuki(spec, spec.params[0]),
        Family::Alt => build_alt(spec, spec.params[0] as usize),
        Family::Sym => build_sym(spec, spec.params[0] as usize),
        Family::Cyclic => {
            let n = formula_order(spec)? as usize;
            finish_formula_backend(Backend::Cyclic { n: n as u32 }, n, spec.to_string())
        }
        Family::Dihedral => {
            let n = formula_order(spec)? as usize;
            finish_formula_backend(
                Backend::Dihedral { m: (n / 2) as u32 },
                n,
                spec.to_string(),
            )
        }
        Family::Agl1 => {
            let p = spec.params[0];
            let n = formula_order(spec)? as usize;
            finish_formula_backend(Backend::Affine { p: p as u32 }, n, spec.to_string())
        }
    }
}
