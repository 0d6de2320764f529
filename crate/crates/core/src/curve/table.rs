use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::point::{affine_singularities, default_affine_degree, infinity_singularities};
use super::{CurveError, CurveFamily, SingularPoint};
use crate::bounds::{ser_big, type_caps, ItBound, PAdicProfile, PointType, TypeCap};

#[derive(Clone, Debug, Serialize)]
pub struct TypeSummary {
    pub count: usize,
    pub cap: TypeCap,
    pub points: Vec<SingularPoint>,
}

/// Observed singularities against the predicted multiplicities, intersection
/// caps and point counts, for one family and affine extension degree.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub p: u64,
    pub m: u64,
    pub profile: PAdicProfile,
    /// Affine points were enumerated over F_{p^s}.
    pub s: usize,
    /// Degree of the extension holding every affine singular point.
    pub full_affine_degree: usize,
    /// `s` is a multiple of `full_affine_degree`, so the affine list is complete.
    pub affine_complete: bool,
    pub infinity_degree: usize,
    pub by_type: BTreeMap<String, TypeSummary>,
    pub affine_total: usize,
    pub infinity_total: usize,
    /// `(K - 1)(2K - (m_b + 1) p^(i_b - l))`.
    #[serde(serialize_with = "ser_big")]
    pub affine_bound: BigInt,
    /// Point-count cap with the extra `- 1` carried by the off-diagonal count.
    #[serde(serialize_with = "ser_big")]
    pub n1: BigInt,
    /// Conditional-point count `((p^l - 2)(p^l + 1) + 1)(K - 1)`.
    #[serde(serialize_with = "ser_big")]
    pub n2_plus: BigInt,
    /// Same with `- 1`.
    #[serde(serialize_with = "ser_big")]
    pub n2_minus: BigInt,
    /// Which of `n1` and `n2_plus` caps conditional points more tightly.
    pub n2_smaller: &'static str,
    /// Conditional points whose cone meets the next component.
    pub conditional_points: usize,
    /// Sum of per-point intersection bounds over the listed points.
    pub it_total: u64,
}

fn violation(msg: String) -> CurveError {
    CurveError::TableViolation(msg)
}

/// Enumerate affine points over F_{p^s} and all points at infinity, then
/// check every type against its row of the singularity table.
pub fn verify_table1(fam: &CurveFamily, s: usize) -> Result<Table1Report, CurveError> {
    let pr = fam.require_profile()?.clone();
    let (inf_ctx, inf) = infinity_singularities(fam)?;
    let (_, aff) = affine_singularities(fam, s)?;
    let full = default_affine_degree(fam)?;
    let caps = type_caps(&pr);

    let mut by_type: BTreeMap<String, TypeSummary> = caps
        .iter()
        .map(|c| {
            (
                c.tag.name().to_string(),
                TypeSummary {
                    count: 0,
                    cap: c.clone(),
                    points: Vec::new(),
                },
            )
        })
        .collect();
    let mut it_total = 0u64;
    let mut conditional = 0usize;
    for pt in aff.iter().chain(inf.iter()) {
        let entry = by_type.get_mut(pt.tag.name()).expect("table type");
        let bound = pt.it_bound.expect("table points always carry a bound");
        let cap_ok = match (bound, entry.cap.it_cap) {
            (ItBound::AtMost(a), ItBound::AtMost(b)) => a <= b,
            (ItBound::AtMost(_), ItBound::ConditionalPl(_)) => true,
            (ItBound::ConditionalPl(a), ItBound::ConditionalPl(b)) => a <= b,
            (ItBound::ConditionalPl(_), ItBound::AtMost(_)) => false,
        };
        if !cap_ok {
            return Err(violation(format!(
                "{} of type {}: intersection bound {bound:?} exceeds {:?}",
                pt.location,
                pt.tag.name(),
                entry.cap.it_cap
            )));
        }
        if pt.mult_h as u64 != entry.cap.mult_h {
            return Err(violation(format!(
                "{} has multiplicity {}",
                pt.location, pt.mult_h
            )));
        }
        if matches!(bound, ItBound::ConditionalPl(_)) {
            conditional += 1;
        }
        it_total += bound.value();
        entry.count += 1;
        entry.points.push(pt.clone());
    }
    for summary in by_type.values() {
        if BigInt::from(summary.count) > summary.cap.max_points {
            return Err(violation(format!(
                "{} type {} points, at most {} allowed",
                summary.count,
                summary.cap.tag.name(),
                summary.cap.max_points
            )));
        }
    }
    let exact = |t: PointType, want: u64| -> Result<(), CurveError> {
        let got = by_type[t.name()].count as u64;
        if got == want {
            Ok(())
        } else {
            Err(violation(format!(
                "{got} type {} points, expected {want}",
                t.name()
            )))
        }
    };
    exact(PointType::IIIa, 1)?;
    exact(PointType::IIIb, pr.d - 1)?;
    exact(PointType::IIIc, pr.k - pr.d)?;
    if BigInt::from(conditional) > pr.offdiag_field_count() {
        return Err(violation(format!(
            "{conditional} conditional points exceed the field count"
        )));
    }

    let n1 = pr.offdiag_digit_count();
    let n2_plus = pr.offdiag_field_count();
    Ok(Table1Report {
        p: fam.p(),
        m: fam.m(),
        s,
        full_affine_degree: full,
        affine_complete: s % full == 0,
        infinity_degree: inf_ctx.degree(),
        affine_total: aff.len(),
        infinity_total: inf.len(),
        affine_bound: pr.affine_count_bound(),
        n2_smaller: if n1 <= n2_plus { "n1" } else { "n2_plus" },
        n1,
        n2_plus,
        n2_minus: pr.offdiag_field_count_minus(),
        conditional_points: conditional,
        it_total,
        by_type,
        profile: pr,
    })
}
