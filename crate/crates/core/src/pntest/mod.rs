//! Brute-force planarity tests for power maps, the known planar families,
//! and the extension degree past which a rational curve component forces
//! non-planarity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{classify_m, normalize_m};
use crate::gf::{checked_pow, is_prime, FieldCtx, FieldTables, GfError};

/// Largest field order for the one-pass `a = 1` test (3^12).
pub const ENUMERATION_CAP: u64 = 531_441;

/// Largest field order for the quadratic all-`a` test (3^9).
pub const ALL_A_CAP: u64 = 19_683;

#[derive(Debug, Error)]
pub enum PnError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("cap exceeded: F_{{{p}^{n}}} has more than {cap} elements")]
    CapExceeded { p: u64, n: u32, cap: u64 },
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Only the difference map at `a = 1`; enough for power maps.
    OnlyAEquals1,
    AllNonzeroA,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PnResult {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub is_pn: bool,
    pub is_apn: bool,
    /// Largest number of solutions of `(x + a)^m - x^m = b` over the tested `a`.
    pub max_preimage: u64,
    pub a_checked: Mode,
}

fn field_order(p: u64, n: u32, cap: u64) -> Result<u64, PnError> {
    if p == 2 || !is_prime(p) {
        return Err(PnError::NotOddPrime(p));
    }
    if n == 0 {
        return Err(PnError::ZeroDegree);
    }
    match checked_pow(p, n) {
        Some(q) if q <= cap => Ok(q),
        _ => Err(PnError::CapExceeded { p, n, cap }),
    }
}

/// Log tables for F_{p^n}, within the enumeration cap.
pub fn tables(p: u64, n: u32) -> Result<FieldTables, PnError> {
    field_order(p, n, ENUMERATION_CAP)?;
    let ctx = FieldCtx::new(p, n as usize)?;
    Ok(FieldTables::new(&ctx)?)
}

/// Preimage counts of `x -> (x + a)^m - x^m`, indexed by `b`.
fn difference_counts(t: &FieldTables, m: u64, a: u32) -> Vec<u32> {
    let q = t.order();
    let mut counts = vec![0u32; q as usize];
    for x in 0..q {
        let b = t.sub(t.pow(t.add(x, a), m), t.pow(x, m));
        counts[b as usize] += 1;
    }
    counts
}

fn result(p: u64, n: u32, m: u64, max: u64, mode: Mode) -> PnResult {
    PnResult {
        p,
        n,
        m,
        is_pn: max == 1,
        is_apn: max == 2,
        max_preimage: max,
        a_checked: mode,
    }
}

/// Test with prebuilt tables; `n` is taken on trust to match them.
pub fn is_pn_with(
    t: &FieldTables,
    p: u64,
    n: u32,
    m: u64,
    mode: Mode,
) -> Result<PnResult, PnError> {
    if m == 0 {
        return Err(PnError::ZeroExponent);
    }
    let max = match mode {
        Mode::OnlyAEquals1 => difference_counts(t, m, 1).into_iter().max().unwrap_or(0),
        Mode::AllNonzeroA => {
            field_order(p, n, ALL_A_CAP)?;
            (1..t.order())
                .into_par_iter()
                .map(|a| difference_counts(t, m, a).into_iter().max().unwrap_or(0))
                .max()
                .unwrap_or(0)
        }
    };
    Ok(result(p, n, m, max as u64, mode))
}

pub fn is_pn(p: u64, n: u32, m: u64, mode: Mode) -> Result<PnResult, PnError> {
    let cap = match mode {
        Mode::OnlyAEquals1 => ENUMERATION_CAP,
        Mode::AllNonzeroA => ALL_A_CAP,
    };
    field_order(p, n, cap)?;
    is_pn_with(&tables(p, n)?, p, n, m, mode)
}

/// APN test on the `a = 1` difference map.
pub fn is_apn(p: u64, n: u32, m: u64) -> Result<PnResult, PnError> {
    is_pn(p, n, m, Mode::OnlyAEquals1)
}

/// Number of distinct values of `(x + 1)^m - x^m` on F_{p^n}.
pub fn image_size(p: u64, n: u32, m: u64) -> Result<u64, PnError> {
    let t = tables(p, n)?;
    let mut seen = vec![false; t.order() as usize];
    for x in 0..t.order() {
        seen[t.sub(t.pow(t.add_one(x), m), t.pow(x, m)) as usize] = true;
    }
    Ok(seen.iter().filter(|&&b| b).count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Square,
    Gold(u32),
    CoulterMatthews(u32),
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Square => write!(f, "square"),
            FamilyTag::Gold(l) => write!(f, "gold({l})"),
            FamilyTag::CoulterMatthews(l) => write!(f, "coulter_matthews({l})"),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Some(l)` when `v = p^l` with `l >= 1`.
fn log_exact(p: u64, mut v: u64) -> Option<u32> {
    let mut l = 0;
    while v > 1 && v % p == 0 {
        v /= p;
        l += 1;
    }
    (v == 1 && l >= 1).then_some(l)
}

/// The known planar family containing `x^m` over F_{p^n}, if its
/// arithmetic condition holds at this `n`. Multiples of `p` are reduced
/// first, since `x^(mp)` is `x^m` followed by the Frobenius.
pub fn known_family(p: u64, n: u32, m: u64) -> Option<FamilyTag> {
    if m == 0 || p < 3 || n == 0 {
        return None;
    }
    let m = normalize_m(p, m);
    if m == 2 {
        return Some(FamilyTag::Square);
    }
    if let Some(l) = log_exact(p, m - 1) {
        return ((n / n.gcd(&l)) % 2 == 1).then_some(FamilyTag::Gold(l));
    }
    if p == 3 {
        if let Some(l) = log_exact(3, 2 * m - 1) {
            if l % 2 == 1 && l.gcd(&n) == 1 {
                return Some(FamilyTag::CoulterMatthews(l));
            }
        }
    }
    None
}

/// Smallest `n` with `p^n - (s-1)(s-2) sqrt(p^n) - s^2 > s`: past it, an
/// absolutely irreducible rational component of degree `s` has a rational
/// point off the diagonal.
pub fn weil_threshold(p: u64, s: u64) -> u32 {
    assert!(p >= 2 && s >= 1);
    let s_big = BigInt::from(s);
    let lead = &s_big * &s_big + &s_big;
    let b = BigInt::from((s - 1) * s.saturating_sub(2));
    let b2 = &b * &b;
    let mut q = BigInt::from(p);
    let mut n = 1u32;
    loop {
        let a = &q - &lead;
        if a > BigInt::from(0) && &a * &a > &b2 * &q {
            return n;
        }
        q *= p;
        n += 1;
    }
}

/// One `(m, n)` cell of a scan; the column order is the CSV layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub is_pn: bool,
    pub is_apn: bool,
    pub known_family: Option<String>,
    pub verdict: Option<String>,
}

/// An exponent planar at two or more of the tested extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub m: u64,
    pub pn_at: Vec<u32>,
    /// Degrees where `x^m` is planar but no family condition applies
    /// to `m` itself.
    pub outside_families: Vec<u32>,
    pub verdict: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub p: u64,
    pub m_range: (u64, u64),
    pub n_range: (u32, u32),
    pub cells: Vec<ScanCell>,
    pub candidates: Vec<Candidate>,
}

/// Planarity over the grid `m_range x n_range` (both inclusive; an empty
/// range gives an empty report). Cells are ordered by `(m, n)`.
pub fn scan(p: u64, m_range: (u64, u64), n_range: (u32, u32)) -> Result<ScanReport, PnError> {
    if p == 2 || !is_prime(p) {
        return Err(PnError::NotOddPrime(p));
    }
    let (m_lo, m_hi) = m_range;
    let (n_lo, n_hi) = n_range;
    if m_lo == 0 && m_hi >= m_lo {
        return Err(PnError::ZeroExponent);
    }
    let ms: Vec<u64> = (m_lo..=m_hi).collect();
    let ns: Vec<u32> = (n_lo..=n_hi).collect();
    if ms.is_empty() || ns.is_empty() {
        return Ok(ScanReport {
            p,
            m_range,
            n_range,
            cells: Vec::new(),
            candidates: Vec::new(),
        });
    }
    for &n in &ns {
        field_order(p, n, ENUMERATION_CAP)?;
    }
    let tabs = ns
        .par_iter()
        .map(|&n| tables(p, n))
        .collect::<Result<Vec<_>, _>>()?;
    let verdicts: Vec<Option<String>> = ms
        .iter()
        .map(|&m| classify_m(p, m).ok().map(|c| c.verdict.name().to_string()))
        .collect();

    let grid: Vec<(usize, usize)> = (0..ms.len())
        .flat_map(|i| (0..ns.len()).map(move |j| (i, j)))
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(i, j)| {
            let (m, n) = (ms[i], ns[j]);
            let r = is_pn_with(&tabs[j], p, n, m, Mode::OnlyAEquals1)?;
            Ok(ScanCell {
                p,
                n,
                m,
                is_pn: r.is_pn,
                is_apn: r.is_apn,
                known_family: known_family(p, n, m).map(|f| f.to_string()),
                verdict: verdicts[i].clone(),
            })
        })
        .collect::<Result<Vec<_>, PnError>>()?;

    let candidates = cells
        .chunks(ns.len())
        .zip(&verdicts)
        .filter_map(|(row, verdict)| {
            let pn_at: Vec<u32> = row.iter().filter(|c| c.is_pn).map(|c| c.n).collect();
            (pn_at.len() >= 2).then(|| Candidate {
                m: row[0].m,
                outside_families: row
                    .iter()
                    .filter(|c| c.is_pn && c.known_family.is_none())
                    .map(|c| c.n)
                    .collect(),
                pn_at,
                verdict: verdict.clone(),
            })
        })
        .collect();
    Ok(ScanReport {
        p,
        m_range,
        n_range,
        cells,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(p: u64, n: u32, m: u64) -> bool {
        is_pn(p, n, m, Mode::OnlyAEquals1).unwrap().is_pn
    }

    #[test]
    fn pn_examples() {
        assert!(pn(3, 2, 2));
        assert!(!pn(3, 2, 4));
        assert!(pn(3, 3, 4));
        assert!(pn(3, 2, 14));
        let r = is_pn(3, 2, 2, Mode::AllNonzeroA).unwrap();
        assert!(r.is_pn && r.max_preimage == 1);
    }

    #[test]
    fn apn_examples() {
        let r = is_apn(5, 1, 3).unwrap();
        assert!(r.is_apn && !r.is_pn);
        assert!(!is_apn(3, 2, 2).unwrap().is_apn);
        let r = is_apn(7, 1, 1).unwrap();
        assert!(!r.is_apn);
        assert_eq!(r.max_preimage, 7);
    }

    #[test]
    fn apn_difference_map_over_f5_by_hand() {
        // (x + 1)^3 - x^3 = 3x^2 + 3x + 1, counted directly in Z/5.
        let mut counts = [0u32; 5];
        for x in 0..5u64 {
            counts[((3 * x * x + 3 * x + 1) % 5) as usize] += 1;
        }
        assert_eq!(*counts.iter().max().unwrap(), 2);
        assert_eq!(is_apn(5, 1, 3).unwrap().max_preimage, 2);
    }

    #[test]
    fn caps_and_bad_inputs() {
        assert!(matches!(
            is_pn(3, 13, 2, Mode::OnlyAEquals1),
            Err(PnError::CapExceeded { .. })
        ));
        assert!(matches!(
            is_pn(3, 10, 2, Mode::AllNonzeroA),
            Err(PnError::CapExceeded { .. })
        ));
        assert!(matches!(
            is_pn(9, 1, 2, Mode::OnlyAEquals1),
            Err(PnError::NotOddPrime(9))
        ));
        assert!(matches!(
            is_pn(2, 3, 2, Mode::OnlyAEquals1),
            Err(PnError::NotOddPrime(2))
        ));
        assert!(matches!(
            is_pn(3, 0, 2, Mode::OnlyAEquals1),
            Err(PnError::ZeroDegree)
        ));
        assert!(matches!(
            is_pn(3, 2, 0, Mode::OnlyAEquals1),
            Err(PnError::ZeroExponent)
        ));
    }

    #[test]
    fn family_examples() {
        assert_eq!(known_family(3, 2, 14), Some(FamilyTag::CoulterMatthews(3)));
        assert_eq!(known_family(3, 2, 4), None);
        assert_eq!(known_family(3, 3, 4), Some(FamilyTag::Gold(1)));
        assert_eq!(known_family(7, 5, 2), Some(FamilyTag::Square));
        assert_eq!(known_family(3, 2, 6), Some(FamilyTag::Square));
        assert_eq!(known_family(3, 3, 14), None);
        assert_eq!(FamilyTag::Gold(2).to_string(), "gold(2)");
    }

    #[test]
    fn weil_examples() {
        assert_eq!(weil_threshold(3, 2), 2);
        assert_eq!(weil_threshold(3, 3), 3);
        assert_eq!(weil_threshold(7, 1), 1);
    }

    #[test]
    fn weil_threshold_is_tight() {
        let holds = |p: u64, s: u64, n: u32| {
            let q = (p as f64).powi(n as i32);
            let b = ((s - 1) * s.saturating_sub(2)) as f64;
            q - b * q.sqrt() - (s * s) as f64 > s as f64
        };
        for p in [3u64, 5, 7] {
            for s in 1..30u64 {
                let n = weil_threshold(p, s);
                assert!(holds(p, s, n));
                assert!(n == 1 || !holds(p, s, n - 1));
            }
        }
    }

    #[test]
    fn scan_small_grid() {
        let r = scan(3, (1, 30), (1, 5)).unwrap();
        assert_eq!(r.cells.len(), 150);
        for c in &r.cells {
            if c.m % 2 == 1 {
                assert!(!c.is_pn, "odd m = {} planar at n = {}", c.m, c.n);
            }
            if c.m % 3 == 0 {
                let base = &r.cells[((normalize_m(3, c.m) - 1) * 5 + (c.n as u64 - 1)) as usize];
                assert_eq!((c.is_pn, c.is_apn), (base.is_pn, base.is_apn));
            }
            if c.known_family.is_some() {
                assert!(c.is_pn);
            }
        }
        let ms: Vec<u64> = r.candidates.iter().map(|c| c.m).collect();
        for m in [2u64, 4, 10, 14, 28] {
            assert!(ms.contains(&m), "{m} missing from {ms:?}");
        }
        let empty = scan(3, (5, 4), (1, 3)).unwrap();
        assert!(empty.cells.is_empty());
        assert!(matches!(
            scan(3, (2, 3), (1, 13)),
            Err(PnError::CapExceeded { .. })
        ));
    }
}
