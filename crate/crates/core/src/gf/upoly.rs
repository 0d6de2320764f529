//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored low-degree-first as residues in `[0, p)`. These
//! helpers back modulus selection and splitting-degree computations; they do
//! not need a [`FieldCtx`](super::FieldCtx).

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_p(a, p - 2, p)
}

/// Strip trailing zero coefficients. The zero polynomial is the empty vector.
pub fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0) as u64 + *b.get(i).unwrap_or(&0) as u64;
            (x % p as u64) as u32
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0) as u64 + p as u64 - *b.get(i).unwrap_or(&0) as u64;
            (x % p as u64) as u32
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x as u64, y as u64, p64)) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    divrem(a, b, p).1
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let p64 = p as u64;
    let lead_inv = inv_mod_p(b[db] as u64, p64);
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod_p(r[dr] as u64, lead_inv, p64);
        let shift = dr - db;
        q[shift] = c as u32;
        for (i, &bc) in b[..=db].iter().enumerate() {
            let t = mul_mod_p(c, bc as u64, p64);
            r[shift + i] = ((r[shift + i] as u64 + p64 - t) % p64) as u32;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic(a: &mut [u32], p: u32) {
    if let Some(d) = degree(a) {
        let inv = inv_mod_p(a[d] as u64, p as u64);
        for c in a.iter_mut() {
            *c = mul_mod_p(*c as u64, inv, p as u64) as u32;
        }
    }
}

/// Monic gcd; `gcd(0, 0)` is the zero polynomial.
pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    x
}

pub fn derivative(a: &[u32], p: u32) -> Vec<u32> {
    let mut out: Vec<u32> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod_p(c as u64, i as u64 % p as u64, p as u64) as u32)
        .collect();
    trim(&mut out);
    out
}

pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

/// `base^exp mod f`.
pub fn pow_mod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test: `f` of degree `n` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= n/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(n) = degree(f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = rem(&x, f, p);
    for _ in 1..=n / 2 {
        frob = pow_mod(&frob, p as u64, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Degree of the splitting field over F_p of a squarefree polynomial: the
/// least `s` with `x^(p^s) = x (mod f)`. Returns `None` if `f` is not
/// squarefree or `s` exceeds `cap`.
pub fn splitting_degree(f: &[u32], p: u32, cap: usize) -> Option<usize> {
    let n = degree(f)?;
    if n == 0 {
        return Some(1);
    }
    if gcd(f, &derivative(f, p), p).len() != 1 {
        return None;
    }
    let x = rem(&[0, 1], f, p);
    let mut frob = x.clone();
    for s in 1..=cap {
        frob = pow_mod(&frob, p as u64, f, p);
        if frob == x {
            return Some(s);
        }
    }
    None
}
