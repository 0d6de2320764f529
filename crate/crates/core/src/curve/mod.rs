//! The curve `h = ((x+1)^m - x^m - (y+1)^m + y^m) / (x - y)` and its
//! singular points.
//!
//! A power map `x^m` is PN over F_q exactly when `h` has no F_q-rational
//! affine point off the diagonal, so the geometry of `h` (its singularities,
//! multiplicities and local intersection bounds) decides whether `h` must
//! carry an absolutely irreducible F_p-component.

mod point;
mod table;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::bipoly::{BiPoly, Form3, PolyError};
use crate::bounds::{profile, BoundsError, PAdicProfile};
use crate::gf::{upoly, FieldCtx, FieldElement, GfError};

pub use point::{
    affine_singularities, classify_point, cond3_check, default_affine_degree,
    infinity_singularities, it_bound, singularities_general, tangent_data, Location, SingularPoint,
    TangentData,
};
pub use table::{verify_table1, Table1Report, TypeSummary};

/// Cap on `p^(2s)` for affine enumeration over F_{p^s}.
pub const ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("p = {p} divides m = {m}; normalize the exponent first")]
    MNotNormalized { p: u64, m: u64 },
    #[error("m = {0} is too small; the curve needs m >= 3")]
    MTooSmall(u64),
    #[error("(p, m) = ({p}, {m}) is outside the regime of this operation")]
    WrongRegime { p: u64, m: u64 },
    #[error("extension degree {s} is not a multiple of l = {l}")]
    ExtensionNotMultipleOfL { s: usize, l: u32 },
    #[error("enumerating F_(p^{s})^2 exceeds the cap of {ENUMERATION_CAP} pairs")]
    CapExceeded { s: usize },
    #[error("point {0} is not singular on h")]
    NotSingular(String),
    #[error("no intersection bound rule applies at {0}")]
    UnclassifiedPoint(String),
    #[error("singularity table violated: {0}")]
    TableViolation(String),
    #[error("internal identity failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        // binom(a, b) with a < p, by the multiplicative formula.
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..b {
            num = upoly::mul_mod_p(num, a - i, p);
            den = upoly::mul_mod_p(den, i + 1, p);
        }
        acc = upoly::mul_mod_p(acc, upoly::mul_mod_p(num, upoly::inv_mod_p(den, p), p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// Multiplicative order of `p` modulo `k`, with `ord_1 = 1`.
pub fn ord_mod(p: u64, k: u64) -> u64 {
    assert!(k >= 1 && p.gcd(&k) == 1);
    if k == 1 {
        return 1;
    }
    let mut e = 1;
    let mut cur = p % k;
    while cur != 1 {
        cur = upoly::mul_mod_p(cur, p, k);
        e += 1;
    }
    e
}

#[derive(Clone, Debug)]
pub struct CurveFamily {
    p: u64,
    m: u64,
    ctx0: FieldCtx,
    f: BiPoly,
    h: BiPoly,
    profile: Option<PAdicProfile>,
}

/// Build `f` and `h` over F_p; `m` must be normalized (`p ∤ m`) and `>= 3`.
pub fn build_family(p: u64, m: u64) -> Result<CurveFamily, CurveError> {
    let ctx0 = FieldCtx::new(p, 1)?;
    if m < 3 {
        return Err(CurveError::MTooSmall(m));
    }
    if m % p == 0 {
        return Err(CurveError::MNotNormalized { p, m });
    }
    if m - 1 > crate::bipoly::DEGREE_CAP as u64 {
        return Err(PolyError::DegreeCapExceeded(m as u32 - 1).into());
    }
    let coef: Vec<u64> = (0..m).map(|k| binom_mod_p(m, k, p)).collect();
    // f = sum_{0<k<m} C(m,k) (x^k - y^k), h = sum_k C(m,k) sum_{i+j=k-1} x^i y^j.
    let f = BiPoly::from_terms(
        &ctx0,
        (1..m as u32)
            .filter(|&k| coef[k as usize] != 0)
            .flat_map(|k| {
                let c = ctx0.from_int(coef[k as usize] as i64);
                [((k, 0), c), ((0, k), ctx0.neg(c))]
            }),
    );
    let h = BiPoly::from_terms(
        &ctx0,
        (1..m as u32)
            .filter(|&k| coef[k as usize] != 0)
            .flat_map(|k| {
                let c = ctx0.from_int(coef[k as usize] as i64);
                (0..k).map(move |i| ((i, k - 1 - i), c))
            }),
    );
    let diff = &BiPoly::x(&ctx0) - &BiPoly::y(&ctx0);
    if &diff * &h != f {
        return Err(CurveError::Invariant("(x - y) h != f".into()));
    }
    if f.total_degree() != Some(m as u32 - 1) || h.total_degree() != Some(m as u32 - 2) {
        return Err(CurveError::Invariant("unexpected degree of f or h".into()));
    }
    let profile = (m % p == 1).then(|| profile(p, m)).transpose()?;
    Ok(CurveFamily {
        p,
        m,
        ctx0,
        f,
        h,
        profile,
    })
}

impl CurveFamily {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn ctx0(&self) -> &FieldCtx {
        &self.ctx0
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn h(&self) -> &BiPoly {
        &self.h
    }

    /// Invariants of `m`, present when `m ≡ 1 (mod p)`.
    pub fn profile(&self) -> Option<&PAdicProfile> {
        self.profile.as_ref()
    }

    pub(crate) fn require_profile(&self) -> Result<&PAdicProfile, CurveError> {
        self.profile.as_ref().ok_or(CurveError::WrongRegime {
            p: self.p,
            m: self.m,
        })
    }

    /// `(x + 1)^K - x^K` over F_p, low degree first. Its roots are the
    /// possible coordinates of affine singular points.
    pub fn coordinate_poly(&self) -> Result<Vec<u32>, CurveError> {
        let k = self.require_profile()?.k;
        let mut v: Vec<u32> = (0..k).map(|i| binom_mod_p(k, i, self.p) as u32).collect();
        upoly::trim(&mut v);
        Ok(v)
    }

    /// `f` and `h` with coefficients in F_{p^s}, plus their charts at `y = 1`.
    pub(crate) fn lift(&self, ctx: &FieldCtx) -> Result<Lifted, CurveError> {
        let f = self.f.embed_into(ctx)?;
        let h = self.h.embed_into(ctx)?;
        let f_tilde = Form3::homogenize(&f)?.dehomogenize_at_y();
        let h_tilde = Form3::homogenize(&h)?.dehomogenize_at_y();
        Ok(Lifted {
            ctx: ctx.clone(),
            f,
            h,
            f_tilde,
            h_tilde,
        })
    }
}

/// A family lifted to F_{p^s}. The `_tilde` polynomials are in `(x, z)`.
#[derive(Clone, Debug)]
pub(crate) struct Lifted {
    pub ctx: FieldCtx,
    pub f: BiPoly,
    pub h: BiPoly,
    pub f_tilde: BiPoly,
    pub h_tilde: BiPoly,
}

/// Serialize a field element through its coefficient vector.
pub(crate) fn coords(a: &FieldElement) -> Vec<u32> {
    a.coeffs().to_vec()
}

#[derive(Clone, Debug, Serialize)]
pub struct BezoutPair {
    pub point: Location,
    pub multiplicity: u32,
}

/// Intersections of two curves `u`, `v` with trivial tangent overlap at
/// every common point are `I_t = m_t(u) m_t(v)`. Returns the points of
/// `u = v = 0` over the field of `u` (affine and at infinity) with that
/// product, after checking the tangent cones share no line.
///
/// Only intended for lines and other tiny curves: affine points are found by
/// scanning the whole plane.
pub fn transversal_intersections(u: &BiPoly, v: &BiPoly) -> Result<Vec<BezoutPair>, CurveError> {
    let ctx = u.ctx().clone();
    if ctx.order() * ctx.order() > ENUMERATION_CAP {
        return Err(CurveError::CapExceeded { s: ctx.degree() });
    }
    let mut out = Vec::new();
    let mut push = |loc: Location, a: &BiPoly, b: &BiPoly| -> Result<(), CurveError> {
        let (ma, ca) = lowest(a);
        let (mb, cb) = lowest(b);
        let g = crate::bipoly::hom_gcd(&ca, &cb)?;
        if !g.is_constant() {
            return Err(CurveError::UnclassifiedPoint(loc.to_string()));
        }
        out.push(BezoutPair {
            point: loc,
            multiplicity: ma * mb,
        });
        Ok(())
    };
    for x0 in ctx.elements() {
        for y0 in ctx.elements() {
            if u.eval(x0, y0)?.is_zero() && v.eval(x0, y0)?.is_zero() {
                let a = u.taylor_shift(x0, y0)?;
                let b = v.taylor_shift(x0, y0)?;
                push(Location::Affine { x: x0, y: y0 }, &a, &b)?;
            }
        }
    }
    // Points at infinity: charts y = 1 then (1 : 0 : 0) via x = 1.
    let fu = Form3::homogenize(u)?;
    let fv = Form3::homogenize(v)?;
    let (ut, vt) = (fu.dehomogenize_at_y(), fv.dehomogenize_at_y());
    for w in ctx.elements() {
        if ut.eval(w, ctx.zero())?.is_zero() && vt.eval(w, ctx.zero())?.is_zero() {
            let a = ut.taylor_shift(w, ctx.zero())?;
            let b = vt.taylor_shift(w, ctx.zero())?;
            push(Location::Infinity { omega: w }, &a, &b)?;
        }
    }
    let (ux, vx) = (fu.dehomogenize_at_x(), fv.dehomogenize_at_x());
    if ux.eval(ctx.zero(), ctx.zero())?.is_zero() && vx.eval(ctx.zero(), ctx.zero())?.is_zero() {
        push(Location::InfinityX, &ux, &vx)?;
    }
    Ok(out)
}

fn lowest(a: &BiPoly) -> (u32, BiPoly) {
    let d = a.order_at_origin().unwrap_or(0);
    (d, a.homogeneous_component(d))
}
