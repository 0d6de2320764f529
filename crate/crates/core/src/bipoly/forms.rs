//! Binary forms (homogeneous polynomials in two variables) and the
//! three-variable projective closure of a bivariate polynomial.

use std::collections::BTreeMap;

use super::{BiPoly, PolyError};
use crate::gf::{FieldCtx, FieldElement};

/// A homogeneous polynomial in `(x, y, z)`, keyed by `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form3 {
    ctx: FieldCtx,
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), FieldElement>,
}

impl Form3 {
    /// `z^D A(x/z, y/z)` with `D` the total degree of `A`.
    pub fn homogenize(a: &BiPoly) -> Result<Self, PolyError> {
        let degree = a.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok(Self {
            ctx: a.ctx().clone(),
            degree,
            terms: a
                .terms()
                .map(|((i, j), c)| ((i, j, degree - i - j), c))
                .collect(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Set `y = 1`; the result is a polynomial in `(x, z)`.
    pub fn dehomogenize_at_y(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(&(i, _, k), &c)| ((i, k), c)),
        )
    }

    /// Set `x = 1`; the result is a polynomial in `(y, z)`.
    pub fn dehomogenize_at_x(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(&(_, j, k), &c)| ((j, k), c)),
        )
    }

    /// Set `z = 1`, recovering the affine polynomial.
    pub fn dehomogenize_at_z(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(&(i, j, _), &c)| ((i, j), c)),
        )
    }

    /// The form at `z = 0`, i.e. the points at infinity.
    pub fn at_infinity(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .filter(|(&(_, _, k), _)| k == 0)
                .map(|(&(i, j, _), &c)| ((i, j), c)),
        )
    }
}

fn require_form(a: &BiPoly) -> Result<(), PolyError> {
    if a.is_homogeneous() {
        Ok(())
    } else {
        Err(PolyError::NotHomogeneous)
    }
}

/// Univariate helpers over an arbitrary field, low-degree-first, trimmed.
fn trim(v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn uni_rem(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = ctx.inv(b[db]).expect("trimmed divisor");
    while r.len() > db {
        let dr = r.len() - 1;
        let c = ctx.mul(r[dr], inv);
        for (i, &bc) in b.iter().enumerate() {
            r[dr - db + i] = ctx.sub(r[dr - db + i], ctx.mul(c, bc));
        }
        trim(&mut r);
    }
    r
}

fn uni_gcd(ctx: &FieldCtx, a: Vec<FieldElement>, b: Vec<FieldElement>) -> Vec<FieldElement> {
    let (mut x, mut y) = (a, b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = ctx.inv(lead).expect("nonzero lead");
        for c in x.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
    x
}

/// Split a nonzero form into `y^v` and the dense coefficients of `F(x, 1)`.
fn y_split(a: &BiPoly) -> (u32, Vec<FieldElement>) {
    let v = a.terms().map(|((_, j), _)| j).min().unwrap_or(0);
    let deg = a.degree_in_x().unwrap_or(0) as usize;
    let mut dense = vec![a.ctx().zero(); deg + 1];
    for ((i, _), c) in a.terms() {
        dense[i as usize] = c;
    }
    (v, dense)
}

/// Greatest common divisor of two binary forms, normalized so that the
/// highest power of `x` has coefficient one.
///
/// Computed by stripping powers of `y`, taking a univariate gcd at `y = 1`
/// and rehomogenizing.
pub fn hom_gcd(a: &BiPoly, b: &BiPoly) -> Result<BiPoly, PolyError> {
    if a.ctx() != b.ctx() {
        return Err(PolyError::MixedContext);
    }
    require_form(a)?;
    require_form(b)?;
    let ctx = a.ctx();
    let (va, ua, vb, ub) = match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(PolyError::ZeroPolynomial),
        (false, false) => {
            let (va, ua) = y_split(a);
            let (vb, ub) = y_split(b);
            (va, ua, vb, ub)
        }
        (true, false) => {
            let (vb, ub) = y_split(b);
            (vb, Vec::new(), vb, ub)
        }
        (false, true) => {
            let (va, ua) = y_split(a);
            (va, ua, va, Vec::new())
        }
    };
    let g = uni_gcd(ctx, ua, ub);
    let e = (g.len() - 1) as u32;
    let v = va.min(vb);
    Ok(BiPoly::from_terms(
        ctx,
        g.into_iter()
            .enumerate()
            .map(|(i, c)| ((i as u32, e - i as u32 + v), c)),
    ))
}

/// True iff the form has no repeated linear factor over the algebraic
/// closure, tested as `gcd(A, A_x, A_y)` being constant. Checking `A_x` and
/// `A_y` separately would wrongly reject forms such as `x*y`.
pub fn squarefree_form(a: &BiPoly) -> Result<bool, PolyError> {
    require_form(a)?;
    if a.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (ax, ay) = a.partials();
    let g = hom_gcd(a, &ax)?;
    let g = hom_gcd(&g, &ay)?;
    Ok(g.is_constant())
}

/// True iff the form is `c * L^n` for a single linear form `L`.
pub fn is_power_of_linear_form(a: &BiPoly) -> Result<bool, PolyError> {
    require_form(a)?;
    let n = a.total_degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    let ctx = a.ctx();
    let u = a.terms().map(|((i, _), _)| i).min().unwrap();
    let v = a.terms().map(|((_, j), _)| j).min().unwrap();
    if u > 0 || v > 0 {
        // Divisible by x or by y: must be a single monomial x^n or y^n.
        return Ok(a.num_terms() == 1 && (u == n || v == n));
    }
    // Both x^n and y^n occur, so F(x, 1) has degree n and a nonzero root.
    let mut g = vec![ctx.zero(); n as usize + 1];
    for ((i, _), c) in a.terms() {
        g[i as usize] = c;
    }
    let inv = ctx.inv(g[n as usize])?;
    for c in g.iter_mut() {
        *c = ctx.mul(*c, inv);
    }
    let p = ctx.p() as u32;
    let mut pe = 1u32;
    while (n / pe) % p == 0 {
        pe *= p;
    }
    // F(x, 1) must be G(x^(p^e)) with G = (X - rho)^n'.
    let n1 = n / pe;
    let mut big_g = Vec::with_capacity(n1 as usize + 1);
    for (i, &c) in g.iter().enumerate() {
        if i as u32 % pe == 0 {
            big_g.push(c);
        } else if !c.is_zero() {
            return Ok(false);
        }
    }
    let rho = ctx.div(ctx.neg(big_g[n1 as usize - 1]), ctx.from_int(n1 as i64))?;
    let mut power = vec![ctx.one()];
    for _ in 0..n1 {
        let mut next = vec![ctx.zero(); power.len() + 1];
        for (i, &c) in power.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], c);
            next[i] = ctx.sub(next[i], ctx.mul(rho, c));
        }
        power = next;
    }
    Ok(power == big_g)
}
