//! Small-scale evidence for absolutely irreducible components: exhaustive
//! search for low-degree factors, Frobenius orbits of the factors found,
//! and rational point counts against the Weil band.

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bipoly::{BiPoly, PolyError};
use crate::curve::{transversal_intersections, BezoutPair, CurveError, CurveFamily};
use crate::gf::{FieldCtx, GfError};
use crate::pntest::{self, PnError};

/// Largest coefficient field for a top-level search.
pub const MAX_SEARCH_FIELD: u64 = 81;
pub const MAX_SEARCH_POLY_DEGREE: u32 = 12;
pub const MAX_DEG_CAP: u32 = 4;
/// Largest number of candidate divisors tried in one sweep.
pub const SEARCH_LIMIT: u128 = 4_000_000;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("{candidates} candidate divisors exceed the search limit of {SEARCH_LIMIT}")]
    SearchSpaceTooLarge { candidates: u128 },
    #[error("polynomial of degree {0} is above the search cap of {MAX_SEARCH_POLY_DEGREE}")]
    PolyTooLarge(u32),
    #[error("field of order {0} is above the search cap of {MAX_SEARCH_FIELD}")]
    FieldTooLarge(u64),
    #[error("degree cap {0} is above {MAX_DEG_CAP}")]
    DegCapTooLarge(u32),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("factorization is incomplete")]
    IncompleteFactorization,
    #[error("factor {0} splits further over F_{{p^{1}}}")]
    SplitsFurther(String, usize),
    #[error("{0}")]
    Invariant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Pn(#[from] PnError),
}

fn ser_poly<S: Serializer>(p: &BiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn ser_polys<S: Serializer>(ps: &[BiPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    #[serde(serialize_with = "ser_poly")]
    pub poly: BiPoly,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationResult {
    /// Coefficients live in F_{p^s}.
    pub base_extension: usize,
    pub deg_cap: u32,
    /// Distinct factors, monic in `x` (or in `y` when free of `x`), in the
    /// order found.
    pub factors: Vec<Factor>,
    /// What is left after dividing out every factor found; a constant
    /// exactly when `complete`.
    #[serde(serialize_with = "ser_poly")]
    pub cofactor: BiPoly,
    pub complete: bool,
    /// Indices into `factors`, grouped by the coefficient Frobenius. Only
    /// filled for complete factorizations of polynomials over F_p.
    pub orbits: Vec<Vec<usize>>,
    /// Product of each orbit (with multiplicity), over F_p.
    #[serde(serialize_with = "ser_polys")]
    pub fp_factors: Vec<BiPoly>,
}

/// Candidate divisors with a fixed leading monomial: `lead` has
/// coefficient one and each of `free` ranges over the whole field.
struct Shape {
    degree: u32,
    lead: (u32, u32),
    free: Vec<(u32, u32)>,
}

impl Shape {
    fn count(&self, q: u64) -> u128 {
        (q as u128)
            .checked_pow(self.free.len() as u32)
            .unwrap_or(u128::MAX)
    }

    fn build(&self, ctx: &FieldCtx, mut idx: u64) -> Option<BiPoly> {
        let q = ctx.order();
        let mut terms = Vec::with_capacity(self.free.len() + 1);
        terms.push((self.lead, ctx.one()));
        let mut top = self.lead.0 + self.lead.1 == self.degree;
        // Most significant digit on the first free monomial, for lex order.
        for &e in self.free.iter().rev() {
            let c = ctx.from_index(idx % q);
            idx /= q;
            if !c.is_zero() {
                top |= e.0 + e.1 == self.degree;
                terms.push((e, c));
            }
        }
        top.then(|| BiPoly::from_terms(ctx, terms))
    }
}

/// Shapes of total degree `d`: leading `x^a` for `a = d, ..., 1` with every
/// other term of lower `x`-degree, then the `x`-free `y^d + ...`.
fn shapes(d: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    for a in (1..=d).rev() {
        let free = (0..a)
            .rev()
            .flat_map(|i| (0..=d - i).rev().map(move |j| (i, j)))
            .collect();
        out.push(Shape {
            degree: d,
            lead: (a, 0),
            free,
        });
    }
    out.push(Shape {
        degree: d,
        lead: (0, d),
        free: (0..d).rev().map(|j| (0, j)).collect(),
    });
    out
}

fn sweep_size(q: u64, deg_cap: u32) -> u128 {
    (1..=deg_cap)
        .flat_map(shapes)
        .fold(0u128, |acc, s| acc.saturating_add(s.count(q)))
}

/// First candidate of degree `d`, in enumeration order, dividing `target`.
fn first_divisor(target: &BiPoly, d: u32) -> Option<BiPoly> {
    let ctx = target.ctx();
    let q = ctx.order();
    for shape in shapes(d) {
        let n = shape.count(q) as usize;
        let hit = (0..n).into_par_iter().find_map_first(|idx| {
            let u = shape.build(ctx, idx as u64)?;
            target.exact_div(&u).ok().map(|_| u)
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn search(poly: &BiPoly, deg_cap: u32) -> Result<FactorizationResult, FactorError> {
    if poly.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let ctx = poly.ctx().clone();
    let candidates = sweep_size(ctx.order(), deg_cap);
    if candidates > SEARCH_LIMIT {
        return Err(FactorError::SearchSpaceTooLarge { candidates });
    }
    let mut rem = poly.clone();
    let mut factors: Vec<Factor> = Vec::new();
    for d in 1..=deg_cap {
        while rem.total_degree().unwrap_or(0) >= d {
            let Some(u) = first_divisor(&rem, d) else {
                break;
            };
            rem = rem.exact_div(&u)?;
            match factors.last_mut() {
                Some(f) if f.poly == u => f.multiplicity += 1,
                _ => factors.push(Factor {
                    poly: u,
                    multiplicity: 1,
                }),
            }
        }
    }
    let complete = rem.is_constant();
    let fr = FactorizationResult {
        base_extension: ctx.degree(),
        deg_cap,
        factors,
        cofactor: rem,
        complete,
        orbits: Vec::new(),
        fp_factors: Vec::new(),
    };
    if complete {
        check_reconstruction(poly, &fr)?;
    }
    Ok(fr)
}

/// All divisors of total degree at most `deg_cap` that are monic in `x`
/// (or, free of `x`, monic in `y`), extracted with multiplicity.
/// Candidates are tried by total degree, then shape, then coefficients in
/// lex order of their field indices; each hit is divided out before the
/// search resumes.
pub fn bounded_factor_search(
    poly: &BiPoly,
    deg_cap: u32,
) -> Result<FactorizationResult, FactorError> {
    let deg = poly.total_degree().ok_or(FactorError::ZeroPolynomial)?;
    if deg > MAX_SEARCH_POLY_DEGREE {
        return Err(FactorError::PolyTooLarge(deg));
    }
    if poly.ctx().order() > MAX_SEARCH_FIELD {
        return Err(FactorError::FieldTooLarge(poly.ctx().order()));
    }
    if deg_cap > MAX_DEG_CAP {
        return Err(FactorError::DegCapTooLarge(deg_cap));
    }
    let mut fr = search(poly, deg_cap)?;
    if fr.complete && poly.has_prime_field_coeffs() {
        attach_orbits(&mut fr)?;
    }
    Ok(fr)
}

fn product(fr: &FactorizationResult, ctx: &FieldCtx) -> Result<BiPoly, FactorError> {
    let mut acc = BiPoly::one(ctx);
    for f in &fr.factors {
        acc = acc.try_mul(&f.poly.pow(f.multiplicity)?)?;
    }
    Ok(acc)
}

fn check_reconstruction(poly: &BiPoly, fr: &FactorizationResult) -> Result<(), FactorError> {
    let prod = product(fr, poly.ctx())?;
    let scalar = fr.cofactor.coeff(0, 0);
    if prod.scale(scalar)? != *poly {
        return Err(FactorError::Invariant(format!(
            "factors of {poly} do not multiply back"
        )));
    }
    Ok(())
}

fn to_prime_field(poly: &BiPoly) -> Result<BiPoly, FactorError> {
    if !poly.has_prime_field_coeffs() {
        return Err(FactorError::Invariant(format!(
            "{poly} has coefficients outside F_p"
        )));
    }
    let fp = poly.ctx().prime_field();
    Ok(BiPoly::from_terms(
        &fp,
        poly.terms()
            .map(|(e, c)| (e, fp.from_int(c.coeffs()[0] as i64))),
    ))
}

fn attach_orbits(fr: &mut FactorizationResult) -> Result<(), FactorError> {
    let n = fr.factors.len();
    let image: Vec<usize> = fr
        .factors
        .iter()
        .map(|f| {
            let s = f.poly.sigma();
            fr.factors
                .iter()
                .position(|g| g.poly == s && g.multiplicity == f.multiplicity)
                .ok_or_else(|| {
                    FactorError::Invariant(format!("sigma({}) is not among the factors", f.poly))
                })
        })
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    let mut fp_factors = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = image[i];
        }
        let mut prod = BiPoly::one(fr.cofactor.ctx());
        for &k in &orbit {
            prod = prod.try_mul(&fr.factors[k].poly.pow(fr.factors[k].multiplicity)?)?;
        }
        fp_factors.push(to_prime_field(&prod)?);
        orbits.push(orbit);
    }
    fr.orbits = orbits;
    fr.fp_factors = fp_factors;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsIrred {
    /// Some factor is fixed by the Frobenius, hence defined over F_p.
    HasAbsIrredFactorOverFp,
    /// The Frobenius moves every factor.
    NoAbsIrredFactorOverFp,
}

/// Frobenius-orbit reading of a complete factorization. Irreducibility of
/// the factors is only checked up to F_{p^(2s)}, so this is evidence, not a
/// certificate of absolute irreducibility.
#[derive(Clone, Debug, Serialize)]
pub struct AbsIrredVerdict {
    pub verdict: AbsIrred,
    pub orbit_sizes: Vec<usize>,
    #[serde(serialize_with = "ser_polys")]
    pub fixed_factors: Vec<BiPoly>,
    /// Factors were re-searched over F_{p^k} for this `k`.
    pub irreducible_through_degree: usize,
    pub evidence_only: bool,
}

pub fn sigma_orbit_analysis(fr: &FactorizationResult) -> Result<AbsIrredVerdict, FactorError> {
    if !fr.complete {
        return Err(FactorError::IncompleteFactorization);
    }
    if fr.orbits.is_empty() && !fr.factors.is_empty() {
        return Err(FactorError::Invariant(
            "factored polynomial is not defined over F_p".into(),
        ));
    }
    let ctx = fr.cofactor.ctx();
    let big_degree = 2 * ctx.degree();
    let big = FieldCtx::new(ctx.p(), big_degree)?;
    for f in &fr.factors {
        let d = f.poly.total_degree().unwrap_or(0);
        if d < 2 {
            continue;
        }
        let sub = search(&f.poly.embed_into(&big)?, (d / 2).min(MAX_DEG_CAP))?;
        if !sub.factors.is_empty() {
            return Err(FactorError::SplitsFurther(f.poly.to_string(), big_degree));
        }
    }
    let fixed_factors: Vec<BiPoly> = fr
        .orbits
        .iter()
        .filter(|o| o.len() == 1)
        .map(|o| to_prime_field(&fr.factors[o[0]].poly))
        .collect::<Result<_, _>>()?;
    Ok(AbsIrredVerdict {
        verdict: if fixed_factors.is_empty() {
            AbsIrred::NoAbsIrredFactorOverFp
        } else {
            AbsIrred::HasAbsIrredFactorOverFp
        },
        orbit_sizes: fr.orbits.iter().map(Vec::len).collect(),
        fixed_factors,
        irreducible_through_degree: big_degree,
        evidence_only: true,
    })
}

/// Intersection numbers of two factors against Bezout's bound.
#[derive(Clone, Debug, Serialize)]
pub struct BezoutCheck {
    pub points: Vec<BezoutPair>,
    pub total: u64,
    pub degree_product: u64,
    pub consistent: bool,
}

/// Valid when every common point is a transversal intersection; otherwise
/// the underlying tangent check fails.
pub fn bezout_check(u: &BiPoly, v: &BiPoly) -> Result<BezoutCheck, FactorError> {
    let points = transversal_intersections(u, v)?;
    let total = points.iter().map(|b| b.multiplicity as u64).sum();
    let degree_product =
        u.total_degree().unwrap_or(0) as u64 * v.total_degree().unwrap_or(0) as u64;
    Ok(BezoutCheck {
        consistent: total == degree_product,
        points,
        total,
        degree_product,
    })
}

/// Affine zeros of `h` over F_{p^n}. Off the diagonal these are the pairs
/// with `D(x) = D(y)` for `D(x) = (x + 1)^m - x^m`; on it, `h(x, x) = D'(x)`.
pub fn point_count(fam: &CurveFamily, n: u32) -> Result<u64, FactorError> {
    let t = pntest::tables(fam.p(), n)?;
    let q = t.order();
    let m = fam.m();
    let mut hist = vec![0u64; q as usize];
    let mut diagonal = 0u64;
    let m_mod = (m % fam.p()) as u32;
    for x in 0..q {
        let x1 = t.add_one(x);
        hist[t.sub(t.pow(x1, m), t.pow(x, m)) as usize] += 1;
        let dd = t.mul(m_mod, t.sub(t.pow(x1, m - 1), t.pow(x, m - 1)));
        diagonal += (dd == 0) as u64;
    }
    let pairs: u64 = hist.iter().map(|c| c * c).sum();
    Ok(pairs - q as u64 + diagonal)
}

/// `count` against the Weil band for one absolutely irreducible component
/// of degree at most `deg h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandLabel {
    /// Fewer points than any rational absolutely irreducible component has.
    BelowBand,
    WithinBand,
    /// More points than one component allows; several components fit.
    AboveBand,
    /// The lower band edge is not positive, so zero points is allowed.
    Uninformative,
}

#[derive(Clone, Debug, Serialize)]
pub struct BandRow {
    pub n: u32,
    pub count: u64,
    #[serde(rename = "p^n")]
    pub q: u64,
    pub band_low: i128,
    pub band_high: i128,
    pub label: BandLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandEvidence {
    NoRationalAbsIrredComponent,
    ConsistentWithRationalComponent,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct BandReport {
    pub p: u64,
    pub m: u64,
    /// Degree of `h`, used as the component degree in the band.
    pub s: u32,
    pub rows: Vec<BandRow>,
    pub evidence: BandEvidence,
}

/// `(low, high)` with `low = q - ceil((s-1)(s-2) sqrt q) - s^2` and
/// `high = q + ceil((s-1)(s-2) sqrt q) + s^2`.
pub fn weil_band(q: u64, s: u32) -> (i128, i128) {
    let s = s as u128;
    let b = (s.saturating_sub(1)) * s.saturating_sub(2);
    let v = b * b * q as u128;
    let mut r = v.sqrt();
    if r * r < v {
        r += 1;
    }
    let (q, r, s2) = (q as i128, r as i128, (s * s) as i128);
    (q - r - s2, q + r + s2)
}

pub fn weil_band_check(fam: &CurveFamily, n_list: &[u32]) -> Result<BandReport, FactorError> {
    let s = fam.h().total_degree().unwrap_or(0);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let count = point_count(fam, n)?;
        let q = fam.p().pow(n);
        let (low, high) = weil_band(q, s);
        let c = count as i128;
        let label = if c < low {
            BandLabel::BelowBand
        } else if c > high {
            BandLabel::AboveBand
        } else if low <= 0 {
            BandLabel::Uninformative
        } else {
            BandLabel::WithinBand
        };
        rows.push(BandRow {
            n,
            count,
            q,
            band_low: low,
            band_high: high,
            label,
        });
    }
    let informative = rows.iter().filter(|r| r.label != BandLabel::Uninformative);
    let evidence = if rows.iter().any(|r| r.label == BandLabel::BelowBand) {
        BandEvidence::NoRationalAbsIrredComponent
    } else if informative.count() > 0 {
        BandEvidence::ConsistentWithRationalComponent
    } else {
        BandEvidence::Inconclusive
    };
    Ok(BandReport {
        p: fam.p(),
        m: fam.m(),
        s,
        rows,
        evidence,
    })
}
