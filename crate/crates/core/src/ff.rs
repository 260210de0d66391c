//! Exact arithmetic in GF(p^f) and extension towers.
//!
//! Elements are dense indices in `[0, q)`: the index is the radix-`p`
//! encoding of the coefficient vector in the polynomial basis, so `0` is the
//! zero element and `1` is the multiplicative identity. Contexts with
//! `q <= 2^16` carry log/antilog tables for O(1) multiplication; larger
//! contexts fall back to polynomial arithmetic (bit-packed in
//! characteristic 2).

use crate::util::{factorize, is_prime, prime_divisors};
use rustc_hash::FxHashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Field element index.
pub type Fe = u32;

/// Desk-scale cardinality cap.
pub const CARD_CAP: u64 = 1 << 26;
const TABLE_MAX: u64 = 1 << 16;

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cardinality {0} exceeds desk-scale cap 2^26")]
    CapExceeded(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element belongs to a different field context")]
    CtxMismatch,
    #[error("{d} does not divide the multiplicative group order {group}")]
    OrderDoesNotDivide { d: u64, group: u64 },
    #[error("degree {small} does not divide degree {big}")]
    BadTower { small: u32, big: u32 },
    #[error("vectors do not form a basis over the subfield")]
    SingularBasis,
    #[error("no irreducible polynomial found (degree {0})")]
    NoIrreducible(u32),
}

pub type Result<T> = std::result::Result<T, FieldError>;

/// Arithmetic context for GF(p^f).
pub struct FieldCtx {
    pub p: u32,
    pub f: u32,
    pub q: u32,
    /// Monic modulus of degree `f` over GF(p), ascending coefficients,
    /// length `f + 1`. For `f = 1` this is the polynomial `x`.
    pub modulus: Vec<u32>,
    id: u64,
    char2: bool,
    mod_bits: u64,
    generator: Fe,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "GF({}^{} = {})", self.p, self.f, self.q)
    }
}

pub fn field_create(p: u64, f: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let mut q: u64 = 1;
    for _ in 0..f {
        q = q.checked_mul(p).ok_or(FieldError::CapExceeded(u64::MAX))?;
        if q > CARD_CAP {
            return Err(FieldError::CapExceeded(q));
        }
    }
    if f == 0 {
        return Err(FieldError::CapExceeded(1));
    }

    let modulus = if f == 1 {
        vec![0, 1]
    } else {
        // Lexicographically least monic irreducible, coefficients read as
        // base-p digits of the candidate number.
        let base = field_create(p, 1)?;
        let mut found = None;
        for n in 0..q {
            let mut coeffs: Vec<u32> = Vec::with_capacity(f as usize + 1);
            let mut m = n;
            for _ in 0..f {
                coeffs.push((m % p) as u32);
                m /= p;
            }
            coeffs.push(1);
            if poly::is_irreducible(&base, &coeffs) {
                found = Some(coeffs);
                break;
            }
        }
        found.ok_or(FieldError::NoIrreducible(f))?
    };

    let mut ctx = FieldCtx {
        p: p as u32,
        f,
        q: q as u32,
        id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
        char2: p == 2,
        mod_bits: if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        },
        modulus,
        generator: 0,
        exp: Vec::new(),
        log: Vec::new(),
    };

    ctx.generator = ctx.find_generator();
    if q <= TABLE_MAX {
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur: Fe = 1;
        for k in 0..(q - 1) as usize {
            exp.push(cur);
            log[cur as usize] = k as u32;
            cur = ctx.mul_raw(cur, ctx.generator);
        }
        debug_assert_eq!(cur, 1);
        ctx.exp = exp;
        ctx.log = log;
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    #[inline]
    fn digits(&self, x: Fe) -> Vec<u32> {
        let mut out = vec![0u32; self.f as usize];
        let mut m = x;
        for d in out.iter_mut() {
            *d = m % self.p;
            m /= self.p;
        }
        out
    }

    #[inline]
    fn index_of_digits(&self, d: &[u32]) -> Fe {
        let mut x = 0u64;
        for &c in d.iter().rev() {
            x = x * self.p as u64 + c as u64;
        }
        x as Fe
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.char2 {
            return a ^ b;
        }
        if self.f == 1 {
            let s = a as u64 + b as u64;
            return if s >= self.q as u64 { (s - self.q as u64) as Fe } else { s as Fe };
        }
        let (p, mut out, mut pa, mut pb) = (self.p as u64, 0u64, a as u64, b as u64);
        let mut mult = 1u64;
        for _ in 0..self.f {
            let s = (pa % p + pb % p) % p;
            out += s * mult;
            mult *= p;
            pa /= p;
            pb /= p;
        }
        out as Fe
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.char2 {
            return a;
        }
        if self.f == 1 {
            return if a == 0 { 0 } else { self.q - a };
        }
        let (p, mut out, mut pa) = (self.p as u64, 0u64, a as u64);
        let mut mult = 1u64;
        for _ in 0..self.f {
            let c = pa % p;
            out += if c == 0 { 0 } else { p - c } * mult;
            mult *= p;
            pa /= p;
        }
        out as Fe
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.q as u64) as Fe;
        }
        if self.char2 {
            let mut r = 0u64;
            let (mut x, mut y) = (a as u64, b as u64);
            while y != 0 {
                if y & 1 != 0 {
                    r ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            // reduce modulo the modulus bit pattern
            let deg = self.f;
            while r >> deg != 0 {
                let h = 63 - r.leading_zeros();
                r ^= self.mod_bits << (h - deg);
            }
            return r as Fe;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let p = self.p as u64;
        let f = self.f as usize;
        let mut conv = vec![0u64; 2 * f - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus
        for i in (f..2 * f - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for (j, &m) in self.modulus.iter().take(f).enumerate() {
                let pos = i - f + j;
                conv[pos] = (conv[pos] + c * (p - m as u64)) % p;
            }
        }
        let digs: Vec<u32> = conv[..f].iter().map(|&c| c as u32).collect();
        self.index_of_digits(&digs)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if !self.exp.is_empty() {
            if a == 0 || b == 0 {
                return 0;
            }
            let n = self.q as u64 - 1;
            let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            return self.exp[if s >= n { s - n } else { s } as usize];
        }
        self.mul_raw(a, b)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if !self.exp.is_empty() {
            let n = self.q as u64 - 1;
            let l = self.log[a as usize] as u64;
            return Ok(self.exp[((n - l) % n) as usize]);
        }
        self.pow(a, self.q as i128 - 2)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Integer powers of either sign; negative exponents require a nonzero
    /// base.
    pub fn pow(&self, a: Fe, e: i128) -> Result<Fe> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Less => Err(FieldError::DivisionByZero),
            };
        }
        let n = self.q as i128 - 1;
        let e = e.rem_euclid(n.max(1)) as u64;
        let mut base = a;
        let mut acc: Fe = 1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Fe) -> Result<u64> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let mut o = self.q as u64 - 1;
        for (r, _) in factorize(o) {
            while o % r == 0 && self.pow(a, (o / r) as i128)? == 1 {
                o /= r;
            }
        }
        Ok(o)
    }

    /// 0 counts as a square; in characteristic 2 squaring is a bijection.
    pub fn is_square(&self, x: Fe) -> bool {
        if x == 0 || self.char2 {
            return true;
        }
        self.pow(x, (self.q as i128 - 1) / 2).unwrap() == 1
    }

    /// Least-index square root, if one exists.
    pub fn sqrt(&self, x: Fe) -> Option<Fe> {
        (0..self.q).find(|&y| self.mul(y, y) == x)
    }

    /// Element of exact multiplicative order `d`, taken as the first power of
    /// the canonical generator with that order (the fixed enumeration is
    /// `g^0, g^1, ...`), which is `g^((q-1)/d)`.
    pub fn element_of_order(&self, d: u64) -> Result<Fe> {
        let n = self.q as u64 - 1;
        if d == 0 || n % d != 0 {
            return Err(FieldError::OrderDoesNotDivide { d, group: n });
        }
        self.pow(self.generator, (n / d) as i128)
    }

    fn find_generator(&self) -> Fe {
        let n = self.q as u64 - 1;
        if n == 1 {
            return 1;
        }
        let primes = prime_divisors(n);
        'outer: for c in 2..self.q {
            for &r in &primes {
                let mut acc: Fe = 1;
                let mut base = c;
                let mut e = n / r;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_raw(acc, base);
                    }
                    base = self.mul_raw(base, base);
                    e >>= 1;
                }
                if acc == 1 {
                    continue 'outer;
                }
            }
            return c;
        }
        unreachable!("multiplicative group is cyclic");
    }

    /// Discrete logarithm base the canonical generator.
    pub fn dlog(&self, x: Fe) -> Result<u64> {
        if x == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if !self.log.is_empty() {
            return Ok(self.log[x as usize] as u64);
        }
        let mut cur: Fe = 1;
        for k in 0..self.q as u64 - 1 {
            if cur == x {
                return Ok(k);
            }
            cur = self.mul(cur, self.generator);
        }
        unreachable!("generator spans the multiplicative group");
    }
}

/// Verified embedding of GF(p^fs) into GF(p^fb) with fs | fb.
pub struct SubfieldEmbedding {
    small_id: u64,
    big_id: u64,
    pub small_q: u32,
    pub steps: u32,
    map: Vec<Fe>,
    back: FxHashMap<Fe, Fe>,
    pub gen_image: Fe,
}

impl SubfieldEmbedding {
    pub fn new(small: &FieldCtx, big: &FieldCtx) -> Result<SubfieldEmbedding> {
        if small.p != big.p || big.f % small.f != 0 {
            return Err(FieldError::BadTower {
                small: small.f,
                big: big.f,
            });
        }
        let root = if small.f == 1 {
            // Prime subfield: constants embed as themselves.
            small.p.min(big.q) % big.q
        } else {
            let idx_exp = (big.q as u64 - 1) / (small.q as u64 - 1);
            let beta = big.pow(big.generator, idx_exp as i128)?;
            let mut best: Option<Fe> = None;
            let mut cand: Fe = 1;
            for _ in 0..small.q - 1 {
                // Horner evaluation of the small modulus at cand; coefficients
                // are prime-field constants, which share indices in both
                // contexts.
                let mut v: Fe = 0;
                for &c in small.modulus.iter().rev() {
                    v = big.add(big.mul(v, cand), c);
                }
                if v == 0 {
                    best = Some(match best {
                        None => cand,
                        Some(b) => b.min(cand),
                    });
                }
                cand = big.mul(cand, beta);
            }
            best.ok_or(FieldError::BadTower {
                small: small.f,
                big: big.f,
            })?
        };

        let mut pow_root = vec![1 as Fe; small.f as usize];
        for i in 1..small.f as usize {
            pow_root[i] = big.mul(pow_root[i - 1], root);
        }
        let mut map = vec![0 as Fe; small.q as usize];
        let mut back = FxHashMap::default();
        for s in 0..small.q {
            let digs = small.digits(s);
            let mut acc: Fe = 0;
            for (i, &c) in digs.iter().enumerate() {
                acc = big.add(acc, big.mul(c, pow_root[i]));
            }
            map[s as usize] = acc;
            back.insert(acc, s);
        }
        debug_assert_eq!(back.len(), small.q as usize);
        let emb = SubfieldEmbedding {
            small_id: small.id,
            big_id: big.id,
            small_q: small.q,
            steps: big.f / small.f,
            gen_image: map[small.generator as usize],
            map,
            back,
        };
        // The construction is GF(p)-linear by definition; spot-check
        // multiplicativity.
        for (a, b) in [(small.generator, small.generator), (2 % small.q, 3 % small.q)] {
            let lhs = emb.embed(small.mul(a, b));
            let rhs = big.mul(emb.embed(a), emb.embed(b));
            assert_eq!(lhs, rhs, "embedding is not a ring homomorphism");
        }
        Ok(emb)
    }

    #[inline]
    pub fn embed(&self, s: Fe) -> Fe {
        self.map[s as usize]
    }

    pub fn project(&self, b: Fe) -> Option<Fe> {
        self.back.get(&b).copied()
    }

    pub fn contains(&self, b: Fe) -> bool {
        self.back.contains_key(&b)
    }

    fn check(&self, small: &FieldCtx, big: &FieldCtx) -> Result<()> {
        if small.id != self.small_id || big.id != self.big_id {
            return Err(FieldError::CtxMismatch);
        }
        Ok(())
    }

    /// Relative trace down to the small field: sum of `x^(Q^i)`.
    pub fn rel_trace(&self, small: &FieldCtx, big: &FieldCtx, x: Fe) -> Result<Fe> {
        self.check(small, big)?;
        let mut t = x;
        let mut acc = x;
        for _ in 1..self.steps {
            t = big.pow(t, self.small_q as i128)?;
            acc = big.add(acc, t);
        }
        self.project(acc).ok_or(FieldError::CtxMismatch)
    }

    /// Relative norm down to the small field: product of `x^(Q^i)`.
    pub fn rel_norm(&self, small: &FieldCtx, big: &FieldCtx, x: Fe) -> Result<Fe> {
        self.check(small, big)?;
        let mut t = x;
        let mut acc = x;
        for _ in 1..self.steps {
            t = big.pow(t, self.small_q as i128)?;
            acc = big.mul(acc, t);
        }
        self.project(acc).ok_or(FieldError::CtxMismatch)
    }
}

/// Coordinates of big-field elements with respect to a basis over an embedded
/// subfield, via a precomputed GF(p)-linear solve.
pub struct SubfieldCoords {
    p: u64,
    n: usize,
    t: usize,
    s: usize,
    big_f: u32,
    big_p: u32,
    /// Inverse matrix over GF(p), row-major n x n.
    inv: Vec<u64>,
}

impl SubfieldCoords {
    pub fn new(
        small: &FieldCtx,
        big: &FieldCtx,
        emb: &SubfieldEmbedding,
        basis: &[Fe],
    ) -> Result<SubfieldCoords> {
        emb.check(small, big)?;
        let s = small.f as usize;
        let t = basis.len();
        let n = big.f as usize;
        if t * s != n {
            return Err(FieldError::SingularBasis);
        }
        let p = big.p as u64;
        // Column (i*s + j) holds the GF(p) digits of basis[i] * emb(gamma^j).
        let mut cols = vec![0u64; n * n];
        let gamma_img = emb.embed(if small.f == 1 { 1 } else { small.p % small.q });
        for (i, &b) in basis.iter().enumerate() {
            let mut u = b;
            for j in 0..s {
                let digs = big.digits(u);
                let c = i * s + j;
                for (r, &d) in digs.iter().enumerate() {
                    cols[r * n + c] = d as u64;
                }
                u = big.mul(u, gamma_img);
            }
        }
        let inv = invert_mod_p(&cols, n, p).ok_or(FieldError::SingularBasis)?;
        Ok(SubfieldCoords {
            p,
            n,
            t,
            s,
            big_f: big.f,
            big_p: big.p,
            inv,
        })
    }

    /// Coordinates of `x` as small-field element indices, length = basis len.
    pub fn coords(&self, big: &FieldCtx, x: Fe) -> Vec<Fe> {
        assert_eq!((big.f, big.p), (self.big_f, self.big_p));
        let digs = big.digits(x);
        let mut out = vec![0 as Fe; self.t];
        for i in 0..self.t {
            let mut idx = 0u64;
            for j in (0..self.s).rev() {
                let row = i * self.s + j;
                let mut acc = 0u64;
                for (c, &d) in digs.iter().enumerate() {
                    acc = (acc + self.inv[row * self.n + c] * d as u64) % self.p;
                }
                idx = idx * self.p + acc;
            }
            out[i] = idx as Fe;
        }
        out
    }
}

fn invert_mod_p(m: &[u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let mut a = m.to_vec();
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r * n + col] % p != 0)?;
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
                inv.swap(piv * n + c, col * n + c);
            }
        }
        let d = crate::util::mod_inverse(a[col * n + col] % p, p)?;
        for c in 0..n {
            a[col * n + c] = a[col * n + c] % p * d % p;
            inv[col * n + c] = inv[col * n + c] % p * d % p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r * n + col] % p;
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                a[r * n + c] = (a[r * n + c] + (p - factor) * a[col * n + c]) % p;
                inv[r * n + c] = (inv[r * n + c] + (p - factor) * inv[col * n + c]) % p;
            }
        }
    }
    Some(inv)
}

/// Dense polynomials over a field context; coefficients ascending.
pub mod poly {
    use super::{Fe, FieldCtx};

    pub fn normalize(a: &mut Vec<Fe>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn deg(a: &[Fe]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn mul(ctx: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0 as Fe; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
            }
        }
        normalize(&mut out);
        out
    }

    /// Remainder of `a` by `m` (m nonzero).
    pub fn rem(ctx: &FieldCtx, a: &[Fe], m: &[Fe]) -> Vec<Fe> {
        let mut r = a.to_vec();
        normalize(&mut r);
        let dm = deg(m).expect("nonzero modulus");
        let lead_inv = ctx.inv(m[dm]).expect("nonzero leading coefficient");
        while let Some(dr) = deg(&r) {
            if dr < dm {
                break;
            }
            let c = ctx.mul(r[dr], lead_inv);
            let shift = dr - dm;
            for (j, &mc) in m.iter().enumerate() {
                r[shift + j] = ctx.sub(r[shift + j], ctx.mul(c, mc));
            }
            normalize(&mut r);
        }
        r
    }

    pub fn gcd(ctx: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        normalize(&mut x);
        normalize(&mut y);
        while !y.is_empty() {
            let r = rem(ctx, &x, &y);
            x = y;
            y = r;
        }
        if let Some(d) = deg(&x) {
            let li = ctx.inv(x[d]).unwrap();
            for c in x.iter_mut() {
                *c = ctx.mul(*c, li);
            }
        }
        x
    }

    pub fn mulmod(ctx: &FieldCtx, a: &[Fe], b: &[Fe], m: &[Fe]) -> Vec<Fe> {
        rem(ctx, &mul(ctx, a, b), m)
    }

    pub fn powmod(ctx: &FieldCtx, base: &[Fe], mut e: u128, m: &[Fe]) -> Vec<Fe> {
        let mut acc = vec![1 as Fe];
        let mut b = rem(ctx, base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(ctx, &acc, &b, m);
            }
            b = mulmod(ctx, &b, &b, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(ctx: &FieldCtx, a: &[Fe], x: Fe) -> Fe {
        let mut v: Fe = 0;
        for &c in a.iter().rev() {
            v = ctx.add(ctx.mul(v, x), c);
        }
        v
    }

    /// Irreducibility over the coefficient field: `x^(q^d) = x (mod f)` and
    /// `gcd(x^(q^(d/r)) - x, f) = 1` for every prime `r | d`.
    pub fn is_irreducible(ctx: &FieldCtx, f: &[Fe]) -> bool {
        let d = match deg(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let x = vec![0 as Fe, 1];
        // Frobenius ladder: t_i = x^(q^i) mod f.
        let mut towers = Vec::with_capacity(d + 1);
        towers.push(x.clone());
        let mut t = x.clone();
        for _ in 0..d {
            t = powmod(ctx, &t, ctx.q as u128, f);
            towers.push(t.clone());
        }
        if towers[d] != x {
            return false;
        }
        for r in crate::util::prime_divisors(d as u64) {
            let k = d / r as usize;
            let mut diff = towers[k].clone();
            // diff = t_k - x
            while diff.len() < 2 {
                diff.push(0);
            }
            diff[1] = ctx.sub(diff[1], 1);
            normalize(&mut diff);
            let g = gcd(ctx, &diff, f);
            if deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Monic irreducible `x^m - a_1 x^(m-1) - ... - a_(m-1) x - 1` over the given
/// field, least coefficient vector first. The constant term makes the
/// companion matrix land in the special linear group.
pub fn find_irreducible_with_unit_constant(ctx: &FieldCtx, m: u32) -> Result<Vec<Fe>> {
    assert!(m >= 2);
    let q = ctx.q as u64;
    let mut count: u64 = 1;
    for _ in 0..m - 1 {
        count = count.saturating_mul(q);
    }
    let minus_one = ctx.neg(1);
    for n in 0..count {
        let mut coeffs = vec![0 as Fe; m as usize + 1];
        coeffs[0] = minus_one;
        coeffs[m as usize] = 1;
        let mut v = n;
        for i in 1..m as usize {
            coeffs[i] = (v % q) as Fe;
            v /= q;
        }
        if poly::is_irreducible(ctx, &coeffs) {
            return Ok(coeffs);
        }
    }
    Err(FieldError::NoIrreducible(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_create() {
        let f7 = field_create(7, 1).unwrap();
        assert_eq!((f7.p, f7.f, f7.q), (7, 1, 7));
        assert_eq!(f7.modulus, vec![0, 1]);
        assert_eq!(f7.inv(3).unwrap(), 5);
        assert_eq!(f7.mul(3, 5), 1);
    }

    #[test]
    fn gf8_has_least_modulus() {
        // Independent oracle: trial division by all monic polynomials of
        // degree 1 and 2 over GF(2).
        let f2 = field_create(2, 1).unwrap();
        let brute_irreducible = |c: &[Fe]| -> bool {
            let divisors: Vec<Vec<Fe>> = vec![
                vec![0, 1],
                vec![1, 1],
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ];
            divisors.iter().all(|d| !poly::rem(&f2, c, d).is_empty())
        };
        let f8 = field_create(2, 3).unwrap();
        assert_eq!(f8.modulus, vec![1, 1, 0, 1]); // x^3 + x + 1
        assert!(brute_irreducible(&f8.modulus));
        // every lexicographically smaller candidate factors
        for n in 0..3u32 {
            let cand = vec![n & 1, (n >> 1) & 1, 0, 1];
            assert!(!brute_irreducible(&cand), "candidate {n} should factor");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(field_create(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert!(matches!(
            field_create(2, 27).unwrap_err(),
            FieldError::CapExceeded(_)
        ));
    }

    #[test]
    fn arithmetic_identities() {
        for (p, f) in [(2, 3), (3, 2), (7, 1), (5, 2), (2, 6)] {
            let ctx = field_create(p, f).unwrap();
            for x in 0..ctx.q {
                assert_eq!(ctx.add(x, 0), x);
                if x != 0 {
                    assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), 1);
                    assert_eq!(ctx.pow(x, ctx.q as i128 - 1).unwrap(), 1);
                }
                assert_eq!(ctx.add(x, ctx.neg(x)), 0);
            }
        }
    }

    #[test]
    fn squares() {
        let f7 = field_create(7, 1).unwrap();
        let squares: Vec<Fe> = (0..7).map(|y| f7.mul(y, y)).collect();
        for x in 0..7 {
            assert_eq!(f7.is_square(x), squares.contains(&x));
        }
        assert!(f7.is_square(2)); // 3^2 = 2 mod 7
        let f13 = field_create(13, 1).unwrap();
        assert!(f13.is_square(f13.neg(1))); // q = 1 mod 4
        let f16 = field_create(2, 4).unwrap();
        assert!((0..16).all(|x| f16.is_square(x)));
    }

    #[test]
    fn orders() {
        let f9 = field_create(3, 2).unwrap();
        let x = f9.element_of_order(4).unwrap();
        assert_eq!(f9.order_of(x).unwrap(), 4);
        let f7 = field_create(7, 1).unwrap();
        assert_eq!(f7.element_of_order(6).unwrap(), 3);
        let f8 = field_create(2, 3).unwrap();
        assert_eq!(
            f8.element_of_order(5).unwrap_err(),
            FieldError::OrderDoesNotDivide { d: 5, group: 7 }
        );
    }

    #[test]
    fn traces_and_norms() {
        let f2 = field_create(2, 1).unwrap();
        let f4 = field_create(2, 2).unwrap();
        let emb = SubfieldEmbedding::new(&f2, &f4).unwrap();
        assert_eq!(emb.rel_trace(&f2, &f4, 1).unwrap(), 0); // 1 + 1 = 0
        let omega = f4.element_of_order(3).unwrap();
        assert_eq!(emb.rel_norm(&f2, &f4, omega).unwrap(), 1); // w * w^2 = 1

        let f3 = field_create(3, 1).unwrap();
        let f9 = field_create(3, 2).unwrap();
        let emb9 = SubfieldEmbedding::new(&f3, &f9).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                let lhs = f3.add(
                    emb9.rel_trace(&f3, &f9, x).unwrap(),
                    emb9.rel_trace(&f3, &f9, y).unwrap(),
                );
                let rhs = emb9.rel_trace(&f3, &f9, f9.add(x, y)).unwrap();
                assert_eq!(lhs, rhs);
            }
            // N(x) = x^(3+1)
            if x != 0 {
                assert_eq!(
                    emb9.embed(emb9.rel_norm(&f3, &f9, x).unwrap()),
                    f9.pow(x, 4).unwrap()
                );
            }
        }

        // Tr GF(64)/GF(4) is onto
        let f4b = field_create(2, 2).unwrap();
        let f64 = field_create(2, 6).unwrap();
        let emb64 = SubfieldEmbedding::new(&f4b, &f64).unwrap();
        let mut image = std::collections::HashSet::new();
        for x in 0..64 {
            image.insert(emb64.rel_trace(&f4b, &f64, x).unwrap());
        }
        assert_eq!(image.len(), 4);
    }

    #[test]
    fn unit_constant_irreducibles() {
        let f2 = field_create(2, 1).unwrap();
        let p = find_irreducible_with_unit_constant(&f2, 3).unwrap();
        assert_eq!(p, vec![1, 1, 0, 1]); // x^3 + x + 1, constant -1 = 1
        let f3 = field_create(3, 1).unwrap();
        let p3 = find_irreducible_with_unit_constant(&f3, 3).unwrap();
        assert!(poly::is_irreducible(&f3, &p3));
        assert_eq!(p3[0], f3.neg(1));
        assert_eq!(p3[3], 1);
        // no root in the base field
        for x in 0..3 {
            assert_ne!(poly::eval(&f3, &p3, x), 0);
        }
    }

    #[test]
    fn subfield_coords_roundtrip() {
        let f3 = field_create(3, 1).unwrap();
        let f9 = field_create(3, 2).unwrap();
        let f729 = field_create(3, 6).unwrap();
        let emb = SubfieldEmbedding::new(&f9, &f729).unwrap();
        let g = 3u32; // the polynomial generator x of GF(729)
        let basis = vec![1, g, f729.mul(g, g)];
        let coords = SubfieldCoords::new(&f9, &f729, &emb, &basis).unwrap();
        let _ = f3;
        for x in [0u32, 1, 5, 100, 700] {
            let c = coords.coords(&f729, x);
            let mut acc: Fe = 0;
            for (i, &ci) in c.iter().enumerate() {
                acc = f729.add(acc, f729.mul(emb.embed(ci), basis[i]));
            }
            assert_eq!(acc, x);
        }
    }

    #[test]
    fn big_char2_field() {
        // GF(2^20): no log tables, bit-packed arithmetic.
        let k = field_create(2, 20).unwrap();
        assert!(k.exp.is_empty());
        let g = k.generator();
        assert_eq!(k.order_of(g).unwrap(), (1 << 20) - 1);
        let x = 123456u32 % k.q;
        assert_eq!(k.mul(x, k.inv(x).unwrap()), 1);
        let e = k.element_of_order(5).unwrap();
        assert_eq!(k.order_of(e).unwrap(), 5);
    }
}
