//! Exact arithmetic in odd-characteristic finite fields F_{p^s}.
//!
//! A [`FieldCtx`] fixes `p`, `s` and a monic irreducible modulus of degree
//! `s` over F_p. The modulus is always the smallest such polynomial when its
//! coefficient vector is read as a base-`p` integer, so two contexts built
//! from the same `(p, s)` are identical and elements can be compared across
//! them structurally.
//!
//! Elements are small `Copy` values; every operation goes through the context
//! that owns the modulus.

mod tables;
pub mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use tables::FieldTables;

use upoly::{inv_mod_p, mul_mod_p};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 12;

/// Largest supported field order, 2^40.
pub const MAX_ORDER: u64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("p = {0} is not an odd prime")]
    CompositeP(u64),
    #[error("extension degree {s} exceeds the cap {cap}")]
    DegreeTooLarge { s: usize, cap: usize },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{s} exceeds the supported size")]
    FieldTooLarge { p: u64, s: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedContext,
    #[error("{0} is not coprime to the characteristic")]
    KNotCoprimeToP(u64),
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("coefficient vector does not describe an element of F_{p}^{s}")]
    BadCoefficients { p: u32, s: usize },
    #[error("F_{p}^{small} does not embed in F_{p}^{big}")]
    NoEmbedding { p: u32, small: usize, big: usize },
    #[error("{op:?} expects {expected} operand(s), got {got}")]
    Arity {
        op: ArithOp,
        expected: usize,
        got: usize,
    },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of some F_{p^s}: `s` residues of a polynomial modulo the
/// context modulus, low degree first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u32,
    s: u8,
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.s as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Base-`p` integer with the coefficients as digits, constant term least
    /// significant. A bijection onto `[0, p^s)`.
    pub fn index(&self) -> u64 {
        self.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// True if the element lies in the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.s as usize
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.s, self.index()).cmp(&(other.p, other.s, other.index()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.coeffs().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.s as usize))?;
        for c in self.coeffs() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// The checked arithmetic entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

struct Inner {
    p: u32,
    s: usize,
    /// Monic, length `s + 1`.
    modulus: Vec<u32>,
    order: u64,
    primitive: OnceLock<FieldElement>,
    group_primes: OnceLock<Vec<u64>>,
}

/// An immutable finite field context. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.0.p)
            .field("s", &self.0.s)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.s == other.0.s
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(p: u64, s: usize) -> Result<Self, GfError> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(GfError::CompositeP(p));
        }
        if s == 0 {
            return Err(GfError::ZeroDegree);
        }
        if s > MAX_DEGREE {
            return Err(GfError::DegreeTooLarge { s, cap: MAX_DEGREE });
        }
        let order = checked_pow(p, s as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::FieldTooLarge { p, s })?;
        let p32 = p as u32;
        let modulus = if s == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p32, s)
        };
        Ok(Self(Arc::new(Inner {
            p: p32,
            s,
            modulus,
            order,
            primitive: OnceLock::new(),
            group_primes: OnceLock::new(),
        })))
    }

    /// The prime subfield of this context.
    pub fn prime_field(&self) -> Self {
        if self.0.s == 1 {
            self.clone()
        } else {
            Self::new(self.0.p as u64, 1).expect("prime subfield of a valid field")
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> usize {
        self.0.s
    }

    /// `p^s`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.p == self.0.p && a.s as usize == self.0.s
    }

    fn check(&self, a: &FieldElement) -> Result<(), GfError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GfError::MixedContext)
        }
    }

    #[inline]
    fn own(&self, a: &FieldElement) {
        assert!(
            self.contains(a),
            "element of F_{}^{} used with F_{}^{}",
            a.p,
            a.s,
            self.0.p,
            self.0.s
        );
    }

    fn raw(&self) -> FieldElement {
        FieldElement {
            p: self.0.p,
            s: self.0.s as u8,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.raw()
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.raw();
        e.coeffs[0] = n.rem_euclid(self.0.p as i64) as u32;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.0.s || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(GfError::BadCoefficients {
                p: self.0.p,
                s: self.0.s,
            });
        }
        let mut e = self.raw();
        e.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    /// Inverse of [`FieldElement::index`]. `idx` is taken modulo the order.
    pub fn from_index(&self, idx: u64) -> FieldElement {
        let mut e = self.raw();
        let mut t = idx % self.0.order;
        for c in e.coeffs.iter_mut().take(self.0.s) {
            *c = (t % self.0.p as u64) as u32;
            t /= self.0.p as u64;
        }
        e
    }

    /// The residue class of `x`; zero in the prime field (modulus `x`).
    pub fn generator_x(&self) -> FieldElement {
        if self.0.s == 1 {
            self.zero()
        } else {
            let mut e = self.raw();
            e.coeffs[1] = 1;
            e
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.own(&a);
        self.own(&b);
        let p = self.0.p as u64;
        let mut e = self.raw();
        for i in 0..self.0.s {
            e.coeffs[i] = ((a.coeffs[i] as u64 + b.coeffs[i] as u64) % p) as u32;
        }
        e
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.own(&a);
        let p = self.0.p;
        let mut e = self.raw();
        for i in 0..self.0.s {
            e.coeffs[i] = if a.coeffs[i] == 0 { 0 } else { p - a.coeffs[i] };
        }
        e
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.own(&a);
        self.own(&b);
        let s = self.0.s;
        let p = self.0.p as u64;
        if s == 1 {
            let mut e = self.raw();
            e.coeffs[0] = mul_mod_p(a.coeffs[0] as u64, b.coeffs[0] as u64, p) as u32;
            return e;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..s {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] =
                    (prod[i + j] + mul_mod_p(a.coeffs[i] as u64, b.coeffs[j] as u64, p)) % p;
            }
        }
        let m = &self.0.modulus;
        for k in (s..2 * s - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..s {
                let t = mul_mod_p(c, m[i] as u64, p);
                prod[k - s + i] = (prod[k - s + i] + p - t) % p;
            }
        }
        let mut e = self.raw();
        for i in 0..s {
            e.coeffs[i] = prod[i] as u32;
        }
        e
    }

    /// Scale by an integer.
    pub fn mul_int(&self, a: FieldElement, n: i64) -> FieldElement {
        self.mul(a, self.from_int(n))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        self.own(&a);
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(&a)?;
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        if self.0.s == 1 {
            let mut e = self.raw();
            e.coeffs[0] = inv_mod_p(a.coeffs[0] as u64, self.0.p as u64) as u32;
            return Ok(e);
        }
        Ok(self.pow(a, self.0.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked arithmetic: validates membership and arity, never panics.
    pub fn arith(&self, op: ArithOp, operands: &[FieldElement]) -> Result<FieldElement, GfError> {
        let expected = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            ArithOp::Neg | ArithOp::Inv | ArithOp::Pow(_) => 1,
        };
        if operands.len() != expected {
            return Err(GfError::Arity {
                op,
                expected,
                got: operands.len(),
            });
        }
        for a in operands {
            self.check(a)?;
        }
        let a = operands[0];
        Ok(match op {
            ArithOp::Add => self.add(a, operands[1]),
            ArithOp::Sub => self.sub(a, operands[1]),
            ArithOp::Mul => self.mul(a, operands[1]),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        if self.0.s == 1 {
            self.own(&a);
            return a;
        }
        self.pow(a, self.0.p as u64)
    }

    fn group_primes(&self) -> &[u64] {
        self.0
            .group_primes
            .get_or_init(|| prime_factors(self.0.order - 1))
    }

    /// The multiplicatively smallest-index generator of F^*.
    pub fn primitive_element(&self) -> FieldElement {
        *self.0.primitive.get_or_init(|| {
            let n = self.0.order - 1;
            let primes = self.group_primes().to_vec();
            (1..self.0.order)
                .map(|i| self.from_index(i))
                .find(|&g| primes.iter().all(|&r| !self.pow(g, n / r).is_one()))
                .expect("every finite field has a primitive element")
        })
    }

    pub fn mult_order(&self, a: FieldElement) -> Result<u64, GfError> {
        self.check(&a)?;
        if a.is_zero() {
            return Err(GfError::ZeroElement);
        }
        let mut t = self.0.order - 1;
        for &r in self.group_primes() {
            while t % r == 0 && self.pow(a, t / r).is_one() {
                t /= r;
            }
        }
        Ok(t)
    }

    /// All `a` with `a^k = 1`, sorted by index. There are `gcd(k, p^s - 1)`.
    pub fn nth_roots_of_unity(&self, k: u64) -> Result<Vec<FieldElement>, GfError> {
        if k == 0 || k % self.0.p as u64 == 0 {
            return Err(GfError::KNotCoprimeToP(k));
        }
        let n = self.0.order - 1;
        let g = num_integer::gcd(k, n);
        let step = self.pow(self.primitive_element(), n / g);
        let mut out = Vec::with_capacity(g as usize);
        let mut cur = self.one();
        for _ in 0..g {
            out.push(cur);
            cur = self.mul(cur, step);
        }
        out.sort();
        Ok(out)
    }

    /// True if `a` lies in the subfield F_{p^l} (requires nothing of `l`;
    /// the test is `a^(p^l) = a`).
    pub fn in_subfield(&self, a: FieldElement, l: u32) -> bool {
        let mut t = a;
        for _ in 0..l {
            t = self.frobenius(t);
        }
        t == a
    }

    /// Embedding of `self` into `big`, sending the residue of `x` to the
    /// smallest-index root of `self.modulus()` in `big`.
    pub fn embedding_into(&self, big: &FieldCtx) -> Result<Embedding, GfError> {
        let (p, l, s) = (self.0.p, self.0.s, big.0.s);
        if p != big.0.p || s % l != 0 {
            return Err(GfError::NoEmbedding {
                p,
                small: l,
                big: s,
            });
        }
        if l == 1 {
            return Ok(Embedding {
                small: self.clone(),
                big: big.clone(),
                image_of_x: big.zero(),
            });
        }
        // Roots of an irreducible degree-l polynomial lie in F_{p^l} inside big.
        let n = big.order() - 1;
        let sub = checked_pow(p as u64, l as u32).expect("small order fits") - 1;
        let step = big.pow(big.primitive_element(), n / sub);
        let mut cur = big.one();
        let mut best: Option<FieldElement> = None;
        for _ in 0..sub {
            let val = self.0.modulus.iter().rev().fold(big.zero(), |acc, &c| {
                big.add(big.mul(acc, cur), big.from_int(c as i64))
            });
            if val.is_zero() && best.map_or(true, |b| cur < b) {
                best = Some(cur);
            }
            cur = big.mul(cur, step);
        }
        Ok(Embedding {
            small: self.clone(),
            big: big.clone(),
            image_of_x: best.expect("irreducible modulus has a root in the extension"),
        })
    }
}

/// A field homomorphism F_{p^l} -> F_{p^s}.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldCtx,
    big: FieldCtx,
    image_of_x: FieldElement,
}

impl Embedding {
    pub fn source(&self) -> &FieldCtx {
        &self.small
    }

    pub fn target(&self) -> &FieldCtx {
        &self.big
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        self.small.own(&a);
        if self.small.degree() == 1 {
            return self.big.from_int(a.coeffs[0] as i64);
        }
        a.coeffs().iter().rev().fold(self.big.zero(), |acc, &c| {
            self.big.add(
                self.big.mul(acc, self.image_of_x),
                self.big.from_int(c as i64),
            )
        })
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// The monic irreducible of degree `s` whose coefficient vector, read as a
/// base-`p` integer, is least.
fn smallest_irreducible(p: u32, s: usize) -> Vec<u32> {
    let count = (p as u64).pow(s as u32);
    for idx in 0..count {
        let mut f = Vec::with_capacity(s + 1);
        let mut t = idx;
        for _ in 0..s {
            f.push((t % p as u64) as u32);
            t /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && upoly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
