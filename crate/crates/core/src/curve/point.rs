use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{coords, ord_mod, CurveError, CurveFamily, Lifted, ENUMERATION_CAP};
use crate::bipoly::{hom_gcd, is_power_of_linear_form, squarefree_form, BiPoly};
use crate::bounds::{ItBound, PointType};
use crate::gf::{upoly, FieldCtx, FieldElement};

/// A point of the projective closure of `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Affine {
        x: FieldElement,
        y: FieldElement,
    },
    /// `(ω : 1 : 0)`.
    Infinity {
        omega: FieldElement,
    },
    /// `(1 : 0 : 0)`; never singular on `h`, only used for auxiliary curves.
    InfinityX,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Affine { x, y } => write!(f, "({x}, {y})"),
            Location::Infinity { omega } => write!(f, "({omega} : 1 : 0)"),
            Location::InfinityX => write!(f, "(1 : 0 : 0)"),
        }
    }
}

impl Serialize for Location {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Location::Affine { x, y } => map.serialize_entry("affine", &[coords(x), coords(y)])?,
            Location::Infinity { omega } => map.serialize_entry("infinity", &coords(omega))?,
            Location::InfinityX => map.serialize_entry("infinity_x", &())?,
        }
        map.end()
    }
}

/// Lowest two homogeneous components of `h` shifted to a point.
#[derive(Clone, Debug)]
pub struct TangentData {
    pub h_mt: BiPoly,
    pub h_next: BiPoly,
    pub squarefree: bool,
    pub coprime_consecutive: bool,
    /// The tangent cone is a power of one line.
    pub single_line: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub location: Location,
    pub mult_h: u32,
    pub mult_f: u32,
    pub tag: PointType,
    /// `None` only for double points outside the table regime whose tangent
    /// data admit no bound.
    pub it_bound: Option<ItBound>,
    pub cond3: Option<bool>,
    pub squarefree_cone: bool,
    pub coprime_consecutive: bool,
}

/// Shifted `f` and `h` at a location, in the chart where the point is the
/// origin.
fn shifted(lift: &Lifted, loc: &Location) -> Result<(BiPoly, BiPoly), CurveError> {
    match *loc {
        Location::Affine { x, y } => Ok((lift.f.taylor_shift(x, y)?, lift.h.taylor_shift(x, y)?)),
        Location::Infinity { omega } => {
            let z = lift.ctx.zero();
            Ok((
                lift.f_tilde.taylor_shift(omega, z)?,
                lift.h_tilde.taylor_shift(omega, z)?,
            ))
        }
        Location::InfinityX => Err(CurveError::NotSingular(loc.to_string())),
    }
}

fn pl_member(ctx: &FieldCtx, a: FieldElement, pl: u64) -> bool {
    !a.is_zero() && ctx.pow(a, pl - 1).is_one()
}

/// Table type of a singular point, from its coordinates alone.
pub fn classify_point(
    fam: &CurveFamily,
    ctx: &FieldCtx,
    loc: &Location,
) -> Result<PointType, CurveError> {
    let pr = fam.require_profile()?;
    let pl = pr.pl();
    Ok(match *loc {
        Location::Affine { x, y } => {
            let (ix, iy) = (pl_member(ctx, x, pl), pl_member(ctx, y, pl));
            if x == y {
                if ix {
                    PointType::Ia
                } else {
                    PointType::Ib
                }
            } else {
                match (ix, iy) {
                    (true, true) => PointType::IIa,
                    (false, false) => PointType::IIc,
                    _ => PointType::IIb,
                }
            }
        }
        Location::Infinity { omega } => {
            if omega.is_one() {
                PointType::IIIa
            } else if ctx.pow(omega, pr.d).is_one() {
                PointType::IIIb
            } else {
                PointType::IIIc
            }
        }
        Location::InfinityX => return Err(CurveError::NotSingular(loc.to_string())),
    })
}

fn expected_mult(tag: PointType, pl: u64) -> u32 {
    let pl = pl as u32;
    match tag {
        PointType::Ia | PointType::IIb | PointType::IIc | PointType::IIIb => pl,
        PointType::Ib | PointType::IIIa | PointType::IIIc => pl - 1,
        PointType::IIa => pl + 1,
        PointType::Plain2 => 2,
    }
}

/// `y0 (x0+1)^q (y0^(q-1) - 1)^(q+1) = x0 (y0+1)^q (x0^(q-1) - 1)^(q+1)` with
/// `q = p^l`: when it holds the consecutive tangent components share a line.
pub fn cond3_check(
    fam: &CurveFamily,
    ctx: &FieldCtx,
    x0: FieldElement,
    y0: FieldElement,
) -> Result<bool, CurveError> {
    let q = fam.require_profile()?.pl();
    let side = |a: FieldElement, b: FieldElement| {
        let t = ctx.sub(ctx.pow(b, q - 1), ctx.one());
        ctx.mul(
            ctx.mul(b, ctx.pow(ctx.add(a, ctx.one()), q)),
            ctx.pow(t, q + 1),
        )
    };
    Ok(side(x0, y0) == side(y0, x0))
}

fn check_singular(lift: &Lifted, loc: &Location) -> Result<(), CurveError> {
    let (poly, a, b) = match *loc {
        Location::Affine { x, y } => (&lift.h, x, y),
        Location::Infinity { omega } => (&lift.h_tilde, omega, lift.ctx.zero()),
        Location::InfinityX => return Err(CurveError::NotSingular(loc.to_string())),
    };
    let (px, py) = poly.partials();
    for q in [poly, &px, &py] {
        if !q.eval(a, b)?.is_zero() {
            return Err(CurveError::NotSingular(loc.to_string()));
        }
    }
    Ok(())
}

fn identity(ok: bool, what: &str, loc: &Location) -> Result<(), CurveError> {
    if ok {
        Ok(())
    } else {
        Err(CurveError::Invariant(format!("{what} at {loc}")))
    }
}

/// Tangent data of `h` at a singular point, with the relations between the
/// components of `f` and `h` checked exactly.
pub fn tangent_data(
    fam: &CurveFamily,
    ctx: &FieldCtx,
    loc: &Location,
) -> Result<TangentData, CurveError> {
    let lift = fam.lift(ctx)?;
    check_singular(&lift, loc)?;
    tangent_data_lifted(&lift, loc).map(|(td, _, _)| td)
}

/// Tangent data, `m_t(h)` and `m_t(f)`.
fn tangent_data_lifted(
    lift: &Lifted,
    loc: &Location,
) -> Result<(TangentData, u32, u32), CurveError> {
    let ctx = &lift.ctx;
    let (fs, hs) = shifted(lift, loc)?;
    let mt = hs.order_at_origin().expect("h is nonzero");
    let mf = fs.order_at_origin().expect("f is nonzero");
    let h_mt = hs.homogeneous_component(mt);
    let h_next = hs.homogeneous_component(mt + 1);
    let comp = |d: u32| fs.homogeneous_component(d);
    let x = BiPoly::x(ctx);
    let x_minus_y = &x - &BiPoly::y(ctx);
    match *loc {
        Location::Affine { x: x0, y: y0 } if x0 == y0 => {
            identity(
                comp(mt + 1) == &x_minus_y * &h_mt,
                "F_(mt+1) = (x - y) H_mt",
                loc,
            )?;
            identity(
                comp(mt + 2) == &x_minus_y * &h_next,
                "F_(mt+2) = (x - y) H_(mt+1)",
                loc,
            )?;
        }
        Location::Affine { x: x0, y: y0 } => {
            let c = ctx.sub(x0, y0);
            identity(comp(mt) == h_mt.scale(c)?, "F_mt = (x0 - y0) H_mt", loc)?;
            identity(
                comp(mt + 1) == &(&x_minus_y * &h_mt) + &h_next.scale(c)?,
                "F_(mt+1) = (x - y) H_mt + (x0 - y0) H_(mt+1)",
                loc,
            )?;
        }
        Location::Infinity { omega } => {
            let c = ctx.sub(omega, ctx.one());
            if c.is_zero() {
                identity(comp(mt + 1) == &x * &h_mt, "F_(mt+1) = x H_mt", loc)?;
            } else {
                identity(comp(mt) == h_mt.scale(c)?, "F_mt = (ω - 1) H_mt", loc)?;
                identity(
                    comp(mt + 1) == &(&x * &h_mt) + &h_next.scale(c)?,
                    "F_(mt+1) = x H_mt + (ω - 1) H_(mt+1)",
                    loc,
                )?;
            }
        }
        Location::InfinityX => unreachable!("rejected by shifted()"),
    }
    let gcd = hom_gcd(&h_mt, &h_next)?;
    let td = TangentData {
        squarefree: squarefree_form(&h_mt)?,
        coprime_consecutive: gcd.is_constant(),
        single_line: is_power_of_linear_form(&h_mt)?,
        h_mt,
        h_next,
    };
    Ok((td, mt, mf))
}

/// Intersection bound at a point from its tangent data.
///
/// A single tangent line not shared with the next component contributes
/// nothing; a cone of distinct lines, or one coprime to the next component,
/// gives `m_t(u) m_t(v) <= floor(m_t/2) ceil(m_t/2)`; a conditional point
/// whose cone meets the next component is capped by `p^l`.
pub fn it_bound(
    tag: PointType,
    td: &TangentData,
    mult: u32,
    pl: u64,
    loc: &Location,
) -> Result<ItBound, CurveError> {
    let mt = mult as u64;
    if td.single_line && td.coprime_consecutive {
        Ok(ItBound::AtMost(0))
    } else if td.squarefree || td.coprime_consecutive {
        Ok(ItBound::AtMost((mt / 2) * mt.div_ceil(2)))
    } else if tag == PointType::IIc {
        Ok(ItBound::ConditionalPl(pl))
    } else {
        Err(CurveError::UnclassifiedPoint(loc.to_string()))
    }
}

fn analyze(fam: &CurveFamily, lift: &Lifted, loc: Location) -> Result<SingularPoint, CurveError> {
    check_singular(lift, &loc)?;
    let pl = fam.require_profile()?.pl();
    let tag = classify_point(fam, &lift.ctx, &loc)?;
    let (td, mult_h, mult_f) = tangent_data_lifted(lift, &loc)?;
    if mult_h != expected_mult(tag, pl) {
        return Err(CurveError::TableViolation(format!(
            "{loc} of type {} has multiplicity {mult_h}, expected {}",
            tag.name(),
            expected_mult(tag, pl)
        )));
    }
    let diagonal_like = match loc {
        Location::Affine { x, y } => x == y,
        Location::Infinity { omega } => omega.is_one(),
        Location::InfinityX => false,
    };
    identity(
        mult_f as i64 - mult_h as i64 == i64::from(diagonal_like),
        "m_t(f) - m_t(h)",
        &loc,
    )?;
    let cond3 = match (tag, loc) {
        (PointType::IIc, Location::Affine { x, y }) => {
            let c = cond3_check(fam, &lift.ctx, x, y)?;
            identity(
                c != td.coprime_consecutive,
                "cond3 agrees with the tangent gcd",
                &loc,
            )?;
            Some(c)
        }
        _ => None,
    };
    let bound = it_bound(tag, &td, mult_h, pl, &loc)?;
    Ok(SingularPoint {
        location: loc,
        mult_h,
        mult_f,
        tag,
        it_bound: Some(bound),
        cond3,
        squarefree_cone: td.squarefree,
        coprime_consecutive: td.coprime_consecutive,
    })
}

/// Field holding every singular point at infinity: `ω^K = 1` needs
/// `ord_K(p) | s`, and membership in F_{p^l} needs `l | s`.
pub fn infinity_degree(fam: &CurveFamily) -> Result<usize, CurveError> {
    let pr = fam.require_profile()?;
    Ok((ord_mod(fam.p(), pr.k) as usize).lcm(&(pr.l as usize)))
}

/// The `K` singular points `(ω : 1 : 0)`, `ω^K = 1`, sorted by `ω`.
pub fn infinity_singularities(
    fam: &CurveFamily,
) -> Result<(FieldCtx, Vec<SingularPoint>), CurveError> {
    let pr = fam.require_profile()?;
    let ctx = FieldCtx::new(fam.p(), infinity_degree(fam)?)?;
    let lift = fam.lift(&ctx)?;
    let roots = ctx.nth_roots_of_unity(pr.k)?;
    let points = roots
        .into_iter()
        .map(|omega| analyze(fam, &lift, Location::Infinity { omega }))
        .collect::<Result<Vec<_>, _>>()?;
    if points.len() as u64 != pr.k {
        return Err(CurveError::Invariant(format!(
            "{} points at infinity, expected K = {}",
            points.len(),
            pr.k
        )));
    }
    Ok((ctx, points))
}

/// Smallest extension containing every affine singular point.
///
/// The coordinates are the roots of `(x+1)^K - x^K`, namely `1/(ζ - 1)` for
/// the `K`-th roots of unity `ζ ≠ 1`, so the splitting degree is `ord_K(p)`;
/// it is computed from the polynomial and checked against that.
pub fn default_affine_degree(fam: &CurveFamily) -> Result<usize, CurveError> {
    let pr = fam.require_profile()?;
    let poly = fam.coordinate_poly()?;
    let split = upoly::splitting_degree(&poly, fam.p() as u32, 4096)
        .ok_or_else(|| CurveError::Invariant("(x+1)^K - x^K is not squarefree".into()))?;
    if split as u64 != ord_mod(fam.p(), pr.k) {
        return Err(CurveError::Invariant(
            "splitting degree of (x+1)^K - x^K differs from ord_K(p)".into(),
        ));
    }
    Ok(split.lcm(&(pr.l as usize)))
}

fn check_cap(p: u64, s: usize) -> Result<(), CurveError> {
    let fits = crate::gf::checked_pow(p, 2 * s as u32).is_some_and(|n| n <= ENUMERATION_CAP);
    if fits {
        Ok(())
    } else {
        Err(CurveError::CapExceeded { s })
    }
}

/// Every affine singular point of `h` rational over F_{p^s}.
pub fn affine_singularities(
    fam: &CurveFamily,
    s: usize,
) -> Result<(FieldCtx, Vec<SingularPoint>), CurveError> {
    let pr = fam.require_profile()?;
    if s == 0 || s % pr.l as usize != 0 {
        return Err(CurveError::ExtensionNotMultipleOfL { s, l: pr.l });
    }
    check_cap(fam.p(), s)?;
    let ctx = FieldCtx::new(fam.p(), s)?;
    let lift = fam.lift(&ctx)?;
    let k = pr.k;
    let roots: Vec<(FieldElement, FieldElement)> = ctx
        .elements()
        .filter(|&x| ctx.pow(ctx.add(x, ctx.one()), k) == ctx.pow(x, k))
        .map(|x| (x, ctx.pow(x, k)))
        .collect();
    let mut points = Vec::new();
    for &(x, xk) in &roots {
        for &(y, yk) in &roots {
            if xk == yk {
                points.push(analyze(fam, &lift, Location::Affine { x, y })?);
            }
        }
    }
    let cap = pr.affine_count_bound();
    if num_bigint::BigInt::from(points.len()) > cap {
        return Err(CurveError::TableViolation(format!(
            "{} affine singular points exceed the bound {cap}",
            points.len()
        )));
    }
    points.sort_by(|a, b| a.location.cmp(&b.location));
    Ok((ctx, points))
}

/// Singular points for `m ≢ 0, 1 (mod p)`: ordinary double points off the
/// diagonal, none at infinity.
pub fn singularities_general(
    fam: &CurveFamily,
    s: usize,
) -> Result<(FieldCtx, Vec<SingularPoint>), CurveError> {
    let (p, m) = (fam.p(), fam.m());
    if m % p == 0 || m % p == 1 {
        return Err(CurveError::WrongRegime { p, m });
    }
    check_cap(p, s)?;
    let ctx = FieldCtx::new(p, s)?;
    let lift = fam.lift(&ctx)?;
    // At infinity h reduces to its top form m (x^(m-1) - y^(m-1)) / (x - y),
    // squarefree because p ∤ m - 1, so the closure is smooth there.
    let top = lift.h.homogeneous_component(m as u32 - 2);
    if !squarefree_form(&top)? {
        return Err(CurveError::Invariant(
            "top form of h is not squarefree".into(),
        ));
    }
    let e = m - 1;
    let roots: Vec<(FieldElement, FieldElement)> = ctx
        .elements()
        .filter(|&x| ctx.pow(ctx.add(x, ctx.one()), e) == ctx.pow(x, e))
        .map(|x| (x, ctx.pow(x, e)))
        .collect();
    let mut points = Vec::new();
    for &(x, xe) in &roots {
        for &(y, ye) in &roots {
            if x == y || xe != ye {
                continue;
            }
            let loc = Location::Affine { x, y };
            check_singular(&lift, &loc)?;
            let (td, mult_h, mult_f) = tangent_data_lifted(&lift, &loc)?;
            if mult_h != 2 || mult_f != 2 {
                return Err(CurveError::TableViolation(format!(
                    "{loc} has multiplicity {mult_h}, expected 2"
                )));
            }
            let bound = if td.single_line && td.coprime_consecutive {
                Some(ItBound::AtMost(0))
            } else if td.squarefree || td.coprime_consecutive {
                Some(ItBound::AtMost(1))
            } else {
                None
            };
            points.push(SingularPoint {
                location: loc,
                mult_h,
                mult_f,
                tag: PointType::Plain2,
                it_bound: bound,
                cond3: None,
                squarefree_cone: td.squarefree,
                coprime_consecutive: td.coprime_consecutive,
            });
        }
    }
    Ok((ctx, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_family;

    #[test]
    fn infinity_examples() {
        let fam = build_family(3, 13).unwrap();
        let (ctx, pts) = infinity_singularities(&fam).unwrap();
        assert_eq!(ctx.degree(), 2);
        assert_eq!(pts.len(), 4);
        let one = ctx.one();
        let minus_one = ctx.neg(one);
        for pt in &pts {
            let Location::Infinity { omega } = pt.location else {
                panic!()
            };
            let (tag, mult) = if omega == one {
                (PointType::IIIa, 2)
            } else if omega == minus_one {
                (PointType::IIIb, 3)
            } else {
                (PointType::IIIc, 2)
            };
            assert_eq!((pt.tag, pt.mult_h), (tag, mult), "{}", pt.location);
        }

        let (_, pts) = infinity_singularities(&build_family(3, 4).unwrap()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(
            (pts[0].tag, pts[0].mult_h, pts[0].mult_f),
            (PointType::IIIa, 2, 3)
        );

        let (_, pts) = infinity_singularities(&build_family(3, 16).unwrap()).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|p| p.mult_h == 2));
    }

    #[test]
    fn tangent_examples() {
        let fam = build_family(3, 4).unwrap();
        let ctx = FieldCtx::new(3, 1).unwrap();
        let loc = Location::Infinity { omega: ctx.one() };
        let td = tangent_data(&fam, &ctx, &loc).unwrap();
        // Variables are (x, z): x^2 + z^2.
        let expected = BiPoly::from_int_terms(&ctx, &[((2, 0), 1), ((0, 2), 1)]);
        assert_eq!(td.h_mt, expected);
        assert!(td.squarefree);
        let bad = Location::Infinity {
            omega: ctx.from_int(2),
        };
        assert!(matches!(
            tangent_data(&fam, &ctx, &bad),
            Err(CurveError::NotSingular(_))
        ));
    }

    #[test]
    fn it_bound_rules() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let loc = Location::InfinityX;
        let sf = TangentData {
            h_mt: BiPoly::zero(&ctx),
            h_next: BiPoly::zero(&ctx),
            squarefree: true,
            coprime_consecutive: false,
            single_line: false,
        };
        assert_eq!(
            it_bound(PointType::IIIa, &sf, 2, 3, &loc).unwrap(),
            ItBound::AtMost(1)
        );
        assert_eq!(
            it_bound(PointType::Ia, &sf, 3, 3, &loc).unwrap(),
            ItBound::AtMost(2)
        );
        assert_eq!(
            it_bound(PointType::IIa, &sf, 4, 3, &loc).unwrap(),
            ItBound::AtMost(4)
        );
        let line = TangentData {
            squarefree: false,
            single_line: true,
            ..sf.clone()
        };
        assert_eq!(
            it_bound(PointType::IIc, &line, 3, 3, &loc).unwrap(),
            ItBound::ConditionalPl(3)
        );
        assert!(it_bound(PointType::Ib, &line, 2, 3, &loc).is_err());
        let separated = TangentData {
            coprime_consecutive: true,
            ..line
        };
        assert_eq!(
            it_bound(PointType::IIc, &separated, 3, 3, &loc).unwrap(),
            ItBound::AtMost(0)
        );
    }

    #[test]
    fn affine_examples() {
        let fam = build_family(3, 4).unwrap();
        for s in 1..=3 {
            assert!(affine_singularities(&fam, s).unwrap().1.is_empty());
        }
        let fam = build_family(5, 16).unwrap();
        let (ctx, pts) = affine_singularities(&fam, 2).unwrap();
        assert!(pts.len() <= 4);
        for pt in &pts {
            let Location::Affine { x, .. } = pt.location else {
                panic!()
            };
            let v = ctx.add(
                ctx.mul_int(ctx.mul(x, x), 3),
                ctx.add(ctx.mul_int(x, 3), ctx.one()),
            );
            assert!(v.is_zero());
        }
        assert!(matches!(
            affine_singularities(&build_family(3, 10).unwrap(), 1),
            Err(CurveError::ExtensionNotMultipleOfL { s: 1, l: 2 })
        ));
        assert!(matches!(
            affine_singularities(&fam, 7),
            Err(CurveError::CapExceeded { s: 7 })
        ));
    }

    #[test]
    fn classify_examples() {
        let fam = build_family(3, 13).unwrap();
        let ctx = FieldCtx::new(3, 2).unwrap();
        let i = ctx.generator_x();
        assert_eq!(
            classify_point(
                &fam,
                &ctx,
                &Location::Infinity {
                    omega: ctx.neg(ctx.one())
                }
            )
            .unwrap(),
            PointType::IIIb
        );
        assert_eq!(
            classify_point(&fam, &ctx, &Location::Infinity { omega: i }).unwrap(),
            PointType::IIIc
        );
        let one = ctx.one();
        assert_eq!(
            classify_point(&fam, &ctx, &Location::Affine { x: one, y: one }).unwrap(),
            PointType::Ia
        );
    }

    #[test]
    fn cond3_is_symmetric() {
        let fam = build_family(3, 13).unwrap();
        let ctx = FieldCtx::new(3, 2).unwrap();
        for x in ctx.elements() {
            assert!(cond3_check(&fam, &ctx, x, x).unwrap());
            for y in ctx.elements() {
                assert_eq!(
                    cond3_check(&fam, &ctx, x, y).unwrap(),
                    cond3_check(&fam, &ctx, y, x).unwrap()
                );
            }
        }
    }

    #[test]
    fn general_regime_examples() {
        let (_, pts) = singularities_general(&build_family(5, 3).unwrap(), 2).unwrap();
        assert!(pts.is_empty());
        let (_, pts) = singularities_general(&build_family(5, 8).unwrap(), 2).unwrap();
        assert!(pts.iter().all(|p| p.mult_h == 2));
        assert!(matches!(
            singularities_general(&build_family(3, 13).unwrap(), 1),
            Err(CurveError::WrongRegime { .. })
        ));
    }
}
