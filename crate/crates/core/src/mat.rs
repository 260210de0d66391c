//! Dense square matrices over a field context. Vectors are rows and act on
//! the right, so products compose left-to-right.

use crate::ff::{Fe, FieldCtx};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Fe>,
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat {
            n,
            a: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[&[Fe]]) -> Mat {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            a.extend_from_slice(r);
        }
        Mat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.a[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.at(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { d } else { 0 };
                if self.at(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(ctx: &FieldCtx, x: &Mat, y: &Mat) -> Mat {
        let n = x.n;
        debug_assert_eq!(n, y.n);
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let xik = x.a[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = ctx.mul(xik, y.a[k * n + j]);
                    out.a[i * n + j] = ctx.add(out.a[i * n + j], prod);
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, ctx: &FieldCtx, c: Fe) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|&v| ctx.mul(v, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j];
            }
        }
        out
    }

    /// Entrywise field automorphism x -> x^e (e.g. Frobenius powers).
    pub fn map_pow(&self, ctx: &FieldCtx, e: u64) -> Mat {
        Mat {
            n: self.n,
            a: self
                .a
                .iter()
                .map(|&v| ctx.pow(v, e as i128).unwrap())
                .collect(),
        }
    }

    pub fn det(&self, ctx: &FieldCtx) -> Fe {
        let n = self.n;
        let mut a = self.a.clone();
        let mut det: Fe = 1;
        for col in 0..n {
            let piv = match (col..n).find(|&r| a[r * n + col] != 0) {
                Some(p) => p,
                None => return 0,
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = ctx.neg(det);
            }
            let d = a[col * n + col];
            det = ctx.mul(det, d);
            let dinv = ctx.inv(d).unwrap();
            for r in col + 1..n {
                let factor = ctx.mul(a[r * n + col], dinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = ctx.mul(factor, a[col * n + j]);
                    a[r * n + j] = ctx.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Option<Mat> {
        let n = self.n;
        let mut a = self.a.clone();
        let mut out = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    out.a.swap(piv * n + j, col * n + j);
                }
            }
            let dinv = ctx.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = ctx.mul(a[col * n + j], dinv);
                out.a[col * n + j] = ctx.mul(out.a[col * n + j], dinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let s = ctx.mul(factor, a[col * n + j]);
                    a[r * n + j] = ctx.sub(a[r * n + j], s);
                    let s2 = ctx.mul(factor, out.a[col * n + j]);
                    out.a[r * n + j] = ctx.sub(out.a[r * n + j], s2);
                }
            }
        }
        Some(out)
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u64) -> Mat {
        let mut acc = Mat::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Mat::mul(ctx, &acc, &base);
            }
            base = Mat::mul(ctx, &base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, bounded by `cap`.
    pub fn order(&self, ctx: &FieldCtx, cap: u64) -> Option<u64> {
        let mut cur = self.clone();
        for k in 1..=cap {
            if cur.is_identity() {
                return Some(k);
            }
            cur = Mat::mul(ctx, &cur, self);
        }
        None
    }

    /// Commutator x^-1 y^-1 x y.
    pub fn comm(ctx: &FieldCtx, x: &Mat, y: &Mat) -> Mat {
        let xi = x.inv(ctx).expect("invertible");
        let yi = y.inv(ctx).expect("invertible");
        Mat::mul(ctx, &Mat::mul(ctx, &Mat::mul(ctx, &xi, &yi), x), y)
    }
}

/// Row vector times matrix.
pub fn act_row(ctx: &FieldCtx, v: &[Fe], m: &Mat) -> Vec<Fe> {
    let n = m.n;
    debug_assert_eq!(v.len(), n);
    let mut out = vec![0 as Fe; n];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for j in 0..n {
            out[j] = ctx.add(out[j], ctx.mul(vi, m.a[i * n + j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_create;

    #[test]
    fn inverse_and_det() {
        let f7 = field_create(7, 1).unwrap();
        let m = Mat::from_rows(&[&[1, 2], &[3, 4]]);
        let det = m.det(&f7);
        assert_eq!(det, f7.sub(4, 6)); // 4 - 6 = -2 = 5 mod 7
        let mi = m.inv(&f7).unwrap();
        assert!(Mat::mul(&f7, &m, &mi).is_identity());
    }

    #[test]
    fn order_small() {
        let f5 = field_create(5, 1).unwrap();
        let z = Mat::from_rows(&[&[0, 1], &[f5.neg(1), 0]]);
        assert_eq!(z.order(&f5, 10), Some(4));
    }

    #[test]
    fn row_action() {
        let f3 = field_create(3, 1).unwrap();
        let m = Mat::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(act_row(&f3, &[1, 2], &m), vec![2, 1]);
    }
}
