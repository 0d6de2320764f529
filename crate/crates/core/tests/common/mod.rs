//! Checks shared by the property suites and the acceptance harness. Each
//! returns `Err` with a description of the first violation.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;
use planar_core::bipoly::{BiPoly, Form3};
use planar_core::curve::{
    affine_singularities, infinity_singularities, singularities_general, CurveFamily, Location,
};
use planar_core::gf::{FieldCtx, FieldElement};
use planar_core::pntest::{is_pn, Mode};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

pub fn ring_axioms(ctx: &FieldCtx, a: FieldElement, b: FieldElement, c: FieldElement) -> Check {
    ensure!(
        ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)),
        "+ not associative at {a}, {b}, {c}"
    );
    ensure!(
        ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)),
        "* not associative at {a}, {b}, {c}"
    );
    ensure!(
        ctx.add(a, b) == ctx.add(b, a),
        "+ not commutative at {a}, {b}"
    );
    ensure!(
        ctx.mul(a, b) == ctx.mul(b, a),
        "* not commutative at {a}, {b}"
    );
    ensure!(
        ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)),
        "not distributive at {a}, {b}, {c}"
    );
    ensure!(
        ctx.sub(ctx.add(a, b), b) == a,
        "subtraction does not undo addition at {a}, {b}"
    );
    Ok(())
}

pub fn ring_axioms_exhaustive(ctx: &FieldCtx) -> Check {
    let els: Vec<FieldElement> = ctx.elements().collect();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                ring_axioms(ctx, a, b, c)?;
            }
        }
    }
    Ok(())
}

pub fn inverse_and_order(ctx: &FieldCtx, a: FieldElement) -> Check {
    if a.is_zero() {
        ensure!(
            ctx.inv(a).is_err(),
            "0 has an inverse in {}^{}",
            ctx.p(),
            ctx.degree()
        );
        return Ok(());
    }
    let inv = ctx.inv(a).map_err(|e| e.to_string())?;
    ensure!(ctx.mul(a, inv).is_one(), "a * inv(a) != 1 at {a}");
    ensure!(ctx.pow(a, ctx.order() - 1).is_one(), "a^(q-1) != 1 at {a}");
    Ok(())
}

pub fn frobenius_hom(ctx: &FieldCtx, a: FieldElement, b: FieldElement) -> Check {
    let s = |x| ctx.frobenius(x);
    ensure!(
        s(ctx.add(a, b)) == ctx.add(s(a), s(b)),
        "frobenius not additive at {a}, {b}"
    );
    ensure!(
        s(ctx.mul(a, b)) == ctx.mul(s(a), s(b)),
        "frobenius not multiplicative at {a}, {b}"
    );
    Ok(())
}

pub fn field_exhaustive(ctx: &FieldCtx) -> Check {
    ring_axioms_exhaustive(ctx)?;
    for a in ctx.elements() {
        inverse_and_order(ctx, a)?;
        for b in ctx.elements() {
            frobenius_hom(ctx, a, b)?;
        }
    }
    Ok(())
}

pub fn roots_of_unity_counts(ctx: &FieldCtx) -> Check {
    let q1 = ctx.order() - 1;
    for k in (1..=50u64).filter(|k| k % ctx.p() != 0) {
        let roots = ctx.nth_roots_of_unity(k).map_err(|e| e.to_string())?;
        ensure!(
            roots.len() as u64 == k.gcd(&q1),
            "{} {k}-th roots of unity in a field of order {}",
            roots.len(),
            ctx.order()
        );
        ensure!(
            roots.iter().all(|&r| ctx.pow(r, k).is_one()),
            "non-root returned for k = {k}"
        );
    }
    Ok(())
}

/// A polynomial from `(i, j, coefficient index)` triples.
pub fn poly(ctx: &FieldCtx, terms: &[(u32, u32, u64)]) -> BiPoly {
    let q = ctx.order();
    BiPoly::from_terms(
        ctx,
        terms
            .iter()
            .map(|&(i, j, c)| ((i, j), ctx.from_index(c % q))),
    )
}

pub fn taylor_round_trip(f: &BiPoly, a: FieldElement, b: FieldElement) -> Check {
    let ctx = f.ctx();
    let shifted = f.taylor_shift(a, b).map_err(|e| e.to_string())?;
    let back = shifted
        .taylor_shift(ctx.neg(a), ctx.neg(b))
        .map_err(|e| e.to_string())?;
    ensure!(&back == f, "shift by ({a}, {b}) and back changed {f}");
    // The shift is a change of variables: values move with it.
    for (x, y) in [(ctx.zero(), ctx.zero()), (ctx.one(), ctx.from_int(2))] {
        let lhs = shifted.eval(x, y).map_err(|e| e.to_string())?;
        let rhs = f
            .eval(ctx.add(x, a), ctx.add(y, b))
            .map_err(|e| e.to_string())?;
        ensure!(
            lhs == rhs,
            "shifted {f} disagrees with f at ({x}, {y}) + ({a}, {b})"
        );
    }
    Ok(())
}

pub fn components_reconstruct(f: &BiPoly) -> Check {
    let top = f.total_degree().unwrap_or(0);
    let mut sum = BiPoly::zero(f.ctx());
    for d in 0..=top {
        let c = f.homogeneous_component(d);
        ensure!(
            c.is_zero() || c.is_homogeneous(),
            "component {d} of {f} is not homogeneous"
        );
        sum = &sum + &c;
    }
    ensure!(&sum == f, "components of {f} sum to {sum}");
    Ok(())
}

pub fn sigma_has_order_dividing_s(f: &BiPoly) -> Check {
    let mut g = f.clone();
    for _ in 0..f.ctx().degree() {
        g = g.sigma();
    }
    ensure!(&g == f, "sigma^s changed {f}");
    Ok(())
}

pub fn sigma_is_ring_hom(f: &BiPoly, g: &BiPoly) -> Check {
    ensure!(
        (f + g).sigma() == &f.sigma() + &g.sigma(),
        "sigma not additive on {f}, {g}"
    );
    ensure!(
        (f * g).sigma() == &f.sigma() * &g.sigma(),
        "sigma not multiplicative on {f}, {g}"
    );
    Ok(())
}

pub fn homogenize_round_trip(f: &BiPoly) -> Check {
    if f.is_zero() {
        return Ok(());
    }
    let form = Form3::homogenize(f).map_err(|e| e.to_string())?;
    ensure!(
        &form.dehomogenize_at_z() == f,
        "homogenize then z = 1 changed {f}"
    );
    Ok(())
}

pub fn exact_div_reconstructs(a: &BiPoly, b: &BiPoly) -> Check {
    if b.is_zero() {
        return Ok(());
    }
    let prod = a * b;
    let q = prod
        .exact_div(b)
        .map_err(|e| format!("({prod}) / ({b}): {e}"))?;
    ensure!(&q == a, "({prod}) / ({b}) = {q}, expected {a}");
    ensure!(
        &(&q * b) == &prod,
        "quotient times divisor misses the dividend"
    );
    Ok(())
}

/// A point where `g`, `g_x` and `g_y` all vanish.
pub fn is_singular_at(g: &BiPoly, x: FieldElement, y: FieldElement) -> Result<bool, String> {
    let (gx, gy) = g.partials();
    for q in [g, &gx, &gy] {
        if !q.eval(x, y).map_err(|e| e.to_string())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every affine singular point of `h` over the field of `h`, by trying all of
/// F_q^2.
pub fn affine_singular_scan(h: &BiPoly) -> Result<Vec<(FieldElement, FieldElement)>, String> {
    let ctx = h.ctx();
    let mut out = Vec::new();
    for x in ctx.elements() {
        for y in ctx.elements() {
            if is_singular_at(h, x, y)? {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Singular points of the projective closure of `h` on the line at infinity:
/// the `ω` with `(ω : 1 : 0)` singular, and whether `(1 : 0 : 0)` is.
pub fn infinity_singular_scan(h: &BiPoly) -> Result<(Vec<FieldElement>, bool), String> {
    let ctx = h.ctx();
    let form = Form3::homogenize(h).map_err(|e| e.to_string())?;
    // Chart y = 1 in coordinates (x, z); chart x = 1 in coordinates (y, z).
    let at_y = form.dehomogenize_at_y();
    let at_x = form.dehomogenize_at_x();
    let mut omegas = Vec::new();
    for w in ctx.elements() {
        if is_singular_at(&at_y, w, ctx.zero())? {
            omegas.push(w);
        }
    }
    Ok((omegas, is_singular_at(&at_x, ctx.zero(), ctx.zero())?))
}

pub fn pn_modes_agree(p: u64, n: u32, m: u64) -> Check {
    let a = is_pn(p, n, m, Mode::OnlyAEquals1).map_err(|e| e.to_string())?;
    let b = is_pn(p, n, m, Mode::AllNonzeroA).map_err(|e| e.to_string())?;
    ensure!(
        a.is_pn == b.is_pn,
        "modes disagree on PN for ({p}, {n}, {m})"
    );
    ensure!(
        a.is_apn == b.is_apn,
        "modes disagree on APN for ({p}, {n}, {m})"
    );
    Ok(())
}

pub fn pn_exponent_reduction(p: u64, n: u32, m: u64) -> Check {
    let q1 = p.pow(n) - 1;
    let base = is_pn(p, n, m, Mode::OnlyAEquals1)
        .map_err(|e| e.to_string())?
        .is_pn;
    let shifted = is_pn(p, n, m + q1, Mode::OnlyAEquals1)
        .map_err(|e| e.to_string())?
        .is_pn;
    ensure!(
        base == shifted,
        "PN of ({p}, {n}, {m}) changes under m -> m + q - 1"
    );
    let frob = (m * p) % q1;
    let frob = if frob == 0 { q1 } else { frob };
    let composed = is_pn(p, n, frob, Mode::OnlyAEquals1)
        .map_err(|e| e.to_string())?
        .is_pn;
    ensure!(
        base == composed,
        "PN of ({p}, {n}, {m}) changes under m -> m p"
    );
    Ok(())
}

/// Compare a brute-force scan of the projective plane over F_{p^s} with the
/// enumerators: the affine sets must be equal, and the points at infinity
/// must be exactly the enumerated ones whose `ω` lies in F_{p^s}.
pub fn singular_oracle_matches(fam: &CurveFamily, s: usize) -> Check {
    let (p, m) = (fam.p(), fam.m());
    let err = |e: &dyn std::fmt::Display| format!("({p}, {m}) over F_{{{p}^{s}}}: {e}");
    let ctx = FieldCtx::new(p, s).map_err(|e| err(&e))?;
    let h = fam.h().embed_into(&ctx).map_err(|e| err(&e))?;

    let scanned: BTreeSet<(FieldElement, FieldElement)> =
        affine_singular_scan(&h)?.into_iter().collect();
    let (ectx, points) = if fam.profile().is_some() {
        affine_singularities(fam, s)
    } else {
        singularities_general(fam, s)
    }
    .map_err(|e| err(&e))?;
    ensure!(
        ectx.degree() == s,
        "{}",
        err(&"affine enumerator used a different field")
    );
    let enumerated: BTreeSet<(FieldElement, FieldElement)> = points
        .iter()
        .map(|pt| match pt.location {
            Location::Affine { x, y } => Ok((x, y)),
            other => Err(err(&format!("affine enumerator returned {other}"))),
        })
        .collect::<Result<_, _>>()?;
    ensure!(
        scanned == enumerated,
        "{}",
        err(&format!(
            "scan found {} affine points, enumerator {}",
            scanned.len(),
            enumerated.len()
        ))
    );

    let (omegas, at_x) = infinity_singular_scan(&h)?;
    ensure!(!at_x, "{}", err(&"(1 : 0 : 0) is singular"));
    if fam.profile().is_none() {
        ensure!(
            omegas.is_empty(),
            "{}",
            err(&format!("{} unexpected points at infinity", omegas.len()))
        );
        return Ok(());
    }
    let (ictx, pts) = infinity_singularities(fam).map_err(|e| err(&e))?;
    let big = FieldCtx::new(p, s.lcm(&ictx.degree())).map_err(|e| err(&e))?;
    let from_enum = ictx.embedding_into(&big).map_err(|e| err(&e))?;
    let from_scan = ctx.embedding_into(&big).map_err(|e| err(&e))?;
    let scanned: BTreeSet<FieldElement> = omegas.iter().map(|&w| from_scan.apply(w)).collect();
    let enumerated: BTreeSet<FieldElement> = pts
        .iter()
        .filter_map(|pt| match pt.location {
            Location::Infinity { omega } => Some(from_enum.apply(omega)),
            _ => None,
        })
        .filter(|&w| big.in_subfield(w, s as u32))
        .collect();
    ensure!(
        scanned == enumerated,
        "{}",
        err(&format!(
            "scan found {} points at infinity, enumerator {}",
            scanned.len(),
            enumerated.len()
        ))
    );
    Ok(())
}
