//! Sparse bivariate polynomials over a [`FieldCtx`].
//!
//! Terms live in a `BTreeMap` keyed by `(i, j)` for `x^i y^j`, so the last
//! entry is the leading term for the lexicographic order with `x > y`. Zero
//! coefficients are never stored.
//!
//! The second variable is just "the other variable": dehomogenizing at `y`
//! produces a polynomial in `(x, z)` that is stored in the same type.

mod forms;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::{FieldCtx, FieldElement, GfError};

pub use forms::{hom_gcd, is_power_of_linear_form, squarefree_form, Form3};

/// Total degree guard.
pub const DEGREE_CAP: u32 = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different fields")]
    MixedContext,
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("expected a homogeneous polynomial")]
    NotHomogeneous,
    #[error("total degree {0} exceeds the cap {DEGREE_CAP}")]
    DegreeCapExceeded(u32),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BiPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Self {
        Self::monomial(ctx, c, 0, 0)
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 1, 0)
    }

    pub fn y(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 0, 1)
    }

    pub fn monomial(ctx: &FieldCtx, c: FieldElement, i: u32, j: u32) -> Self {
        assert!(ctx.contains(&c), "coefficient from a different field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), FieldElement)>,
    {
        let mut out = Self::zero(ctx);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Integer coefficients reduced into the prime field.
    pub fn from_int_terms(ctx: &FieldCtx, terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(ctx, terms.iter().map(|&(e, c)| (e, ctx.from_int(c))))
    }

    fn add_term(&mut self, e: (u32, u32), c: FieldElement) {
        assert!(self.ctx.contains(&c), "coefficient from a different field");
        if c.is_zero() {
            return;
        }
        let ctx = &self.ctx;
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = ctx.add(*v, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Leading term for lex order with `x > y`.
    pub fn leading(&self) -> Option<((u32, u32), FieldElement)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    /// True for the zero polynomial too.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::MixedContext)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg_poly())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ctx(other)?;
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            if a + b > DEGREE_CAP {
                return Err(PolyError::DegreeCapExceeded(a + b));
            }
        }
        let mut out = Self::zero(&self.ctx);
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                out.add_term((i + k, j + l), self.ctx.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> Result<Self, PolyError> {
        if !self.ctx.contains(&c) {
            return Err(PolyError::MixedContext);
        }
        if c.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, &a)| (e, self.ctx.mul(a, c)))
                .collect(),
        })
    }

    fn neg_poly(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, &a)| (e, self.ctx.neg(a)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact quotient `A / D`, by division on lexicographic leading terms.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.same_ctx(divisor)?;
        let ((di, dj), dc) = divisor.leading().ok_or(PolyError::DivisionByZeroPoly)?;
        let inv = self.ctx.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ctx);
        while let Some(((i, j), c)) = rem.leading() {
            if i < di || j < dj {
                return Err(PolyError::NotDivisible);
            }
            let t = self.ctx.mul(c, inv);
            let (qi, qj) = (i - di, j - dj);
            quot.add_term((qi, qj), t);
            for (&(k, l), &b) in &divisor.terms {
                rem.add_term((qi + k, qj + l), self.ctx.neg(self.ctx.mul(t, b)));
            }
        }
        assert!(
            &quot * divisor == *self,
            "exact division failed to reconstruct the dividend"
        );
        Ok(quot)
    }

    /// `A(x + x0, y + y0)`, shifting `x` first then `y`, each by synthetic
    /// division on the dense rows.
    pub fn taylor_shift(&self, x0: FieldElement, y0: FieldElement) -> Result<Self, PolyError> {
        if !self.ctx.contains(&x0) || !self.ctx.contains(&y0) {
            return Err(PolyError::MixedContext);
        }
        let shifted_x = self.shift_first(x0);
        Ok(shifted_x.swapped().shift_first(y0).swapped())
    }

    /// Shift the first variable only.
    fn shift_first(&self, a: FieldElement) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let ctx = &self.ctx;
        let mut rows: BTreeMap<u32, Vec<FieldElement>> = BTreeMap::new();
        for (&(i, j), &c) in &self.terms {
            let row = rows.entry(j).or_default();
            if row.len() <= i as usize {
                row.resize(i as usize + 1, ctx.zero());
            }
            row[i as usize] = c;
        }
        let mut out = Self::zero(ctx);
        for (j, mut c) in rows {
            let n = c.len() - 1;
            for i in 0..n {
                for k in (i..n).rev() {
                    c[k] = ctx.add(c[k], ctx.mul(a, c[k + 1]));
                }
            }
            for (i, v) in c.into_iter().enumerate() {
                out.add_term((i as u32, j), v);
            }
        }
        out
    }

    /// Exchange the two variables.
    pub fn swapped(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// Lowest total degree present, i.e. the multiplicity at the origin.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// `(dA/dx, dA/dy)`.
    pub fn partials(&self) -> (Self, Self) {
        let ctx = &self.ctx;
        let dx = Self::from_terms(
            ctx,
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), &c)| ((i - 1, j), ctx.mul_int(c, i as i64))),
        );
        let dy = Self::from_terms(
            ctx,
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), &c)| ((i, j - 1), ctx.mul_int(c, j as i64))),
        );
        (dx, dy)
    }

    /// Coefficient-wise Frobenius `a -> a^p`.
    pub fn sigma(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e, self.ctx.frobenius(c)))
                .collect(),
        }
    }

    /// True if every coefficient lies in F_p.
    pub fn has_prime_field_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_prime_field())
    }

    pub fn eval(&self, x0: FieldElement, y0: FieldElement) -> Result<FieldElement, PolyError> {
        if !self.ctx.contains(&x0) || !self.ctx.contains(&y0) {
            return Err(PolyError::MixedContext);
        }
        let ctx = &self.ctx;
        let dx = self.degree_in_x().unwrap_or(0) as usize;
        let dy = self.degree_in_y().unwrap_or(0) as usize;
        let powers = |a: FieldElement, n: usize| {
            let mut v = Vec::with_capacity(n + 1);
            let mut cur = ctx.one();
            for _ in 0..=n {
                v.push(cur);
                cur = ctx.mul(cur, a);
            }
            v
        };
        let px = powers(x0, dx);
        let py = powers(y0, dy);
        Ok(self.terms.iter().fold(ctx.zero(), |acc, (&(i, j), &c)| {
            ctx.add(acc, ctx.mul(c, ctx.mul(px[i as usize], py[j as usize])))
        }))
    }

    /// Image of this polynomial in an extension of its field.
    pub fn embed_into(&self, big: &FieldCtx) -> Result<Self, PolyError> {
        if self.ctx == *big {
            return Ok(self.clone());
        }
        let emb = self.ctx.embedding_into(big)?;
        Ok(Self::from_terms(
            big,
            self.terms.iter().map(|(&e, &c)| (e, emb.apply(c))),
        ))
    }

    /// Divide by the leading lex coefficient.
    pub fn monic(&self) -> Result<Self, PolyError> {
        let (_, c) = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        self.scale(self.ctx.inv(c)?)
    }

    /// Make the coefficient of the highest power of `x` equal to one. That
    /// coefficient must be a constant.
    pub fn monic_in_x(&self) -> Result<Self, PolyError> {
        let dx = self.degree_in_x().ok_or(PolyError::ZeroPolynomial)?;
        let c = self.coeff(dx, 0);
        self.scale(self.ctx.inv(c)?)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Terms sorted by `(total degree, i)`, written `c*x^i*y^j` and joined by
/// `" + "`. Extension-field coefficients print as `[c0,c1,...]`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, i));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*x^{}*y^{}", self.terms[&(i, j)], i, j)?;
        }
        Ok(())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.try_add(rhs).expect("mixed polynomial fields")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.try_sub(rhs).expect("mixed polynomial fields")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.try_mul(rhs).expect("polynomial product")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.neg_poly()
    }
}
