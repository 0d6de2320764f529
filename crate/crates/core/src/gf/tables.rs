use super::{FieldCtx, GfError};

/// Largest field for which discrete-log tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 24;

/// Log/antilog tables over a [`FieldCtx`], for brute-force scans where
/// elements are handled as their [`index`](super::FieldElement::index).
#[derive(Clone, Debug)]
pub struct FieldTables {
    p: u32,
    s: usize,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldTables {
    pub fn new(ctx: &FieldCtx) -> Result<Self, GfError> {
        let q = ctx.order();
        if q > MAX_TABLE_ORDER {
            return Err(GfError::FieldTooLarge {
                p: ctx.p(),
                s: ctx.degree(),
            });
        }
        let g = ctx.primitive_element();
        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; q as usize];
        let mut cur = ctx.one();
        for k in 0..n {
            let idx = cur.index() as u32;
            exp.push(idx);
            log[idx as usize] = k as u32;
            cur = ctx.mul(cur, g);
        }
        Ok(Self {
            p: ctx.p() as u32,
            s: ctx.degree(),
            q: q as u32,
            exp,
            log,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            let t = a + b;
            return if t >= self.p { t - self.p } else { t };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.s {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.s {
            let d = a % self.p;
            if d != 0 {
                out += (self.p - d) * place;
            }
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `a + 1`: only the constant digit changes.
    #[inline]
    pub fn add_one(&self, a: u32) -> u32 {
        let d = a % self.p;
        if d + 1 == self.p {
            a - d
        } else {
            a + 1
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize]
    }

    /// `a^e`, with `0^e = 0` for every `e >= 1` and `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        let k = (self.log[a as usize] as u64 % n) * (e % n) % n;
        self.exp[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_context() {
        for &(p, s) in &[(3u64, 1usize), (3, 2), (5, 2), (3, 3), (7, 1)] {
            let ctx = FieldCtx::new(p, s).unwrap();
            let t = FieldTables::new(&ctx).unwrap();
            for a in ctx.elements() {
                let ai = a.index() as u32;
                assert_eq!(t.add_one(ai), ctx.add(a, ctx.one()).index() as u32);
                assert_eq!(t.neg(ai), ctx.neg(a).index() as u32);
                assert_eq!(t.pow(ai, 7), ctx.pow(a, 7).index() as u32);
                for b in ctx.elements() {
                    let bi = b.index() as u32;
                    assert_eq!(t.add(ai, bi), ctx.add(a, b).index() as u32);
                    assert_eq!(t.mul(ai, bi), ctx.mul(a, b).index() as u32);
                }
            }
        }
    }
}
