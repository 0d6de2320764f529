//! Arithmetic invariants of an exponent and the exact Bézout gates built on
//! them.
//!
//! For `m = 1 + K p^l` with `p ∤ K`, the singularities of the curve `h` are
//! controlled by `l`, `K`, `d = gcd(K, p^l - 1)` and the base-`p` digits of
//! `m - 1`. Every bound here is an exact integer or rational; nothing in a
//! gate is ever rounded.

mod verdict;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::is_prime;

pub use verdict::{
    classify_m, compare_published, Classification, NotPnReason, PublishedComparison, PublishedRow,
    Verdict, Via, Witness, PUBLISHED_COPRIME_ROWS, PUBLISHED_PARTIAL_GCD_ROWS,
    PUBLISHED_PARTIAL_GCD_TAIL,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("exponent m = {0} is too small")]
    MTooSmall(u64),
    #[error("(p, m) = ({p}, {m}) is outside the regime of this operation")]
    WrongRegime { p: u64, m: u64 },
}

pub(crate) fn check_p(p: u64) -> Result<(), BoundsError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(BoundsError::NotOddPrime(p))
    }
}

/// Strip every factor `p` from `m`; `x^m` and `x^(m/p)` are PN together.
pub fn normalize_m(p: u64, m: u64) -> u64 {
    assert!(m >= 1 && p >= 2);
    let mut m = m;
    while m % p == 0 {
        m /= p;
    }
    m
}

/// One base-`p` digit `coeff * p^exp` of `m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Digit {
    pub coeff: u64,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicProfile {
    pub p: u64,
    pub m: u64,
    pub l: u32,
    #[serde(rename = "K")]
    pub k: u64,
    pub d: u64,
    pub digits: Vec<Digit>,
}

/// Invariants of `m = 1 + K p^l` for `m ≡ 1 (mod p)`.
pub fn profile(p: u64, m: u64) -> Result<PAdicProfile, BoundsError> {
    check_p(p)?;
    if m < 3 {
        return Err(BoundsError::MTooSmall(m));
    }
    if m % p != 1 {
        return Err(BoundsError::WrongRegime { p, m });
    }
    let mut rest = m - 1;
    let mut digits = Vec::new();
    let mut exp = 0u32;
    while rest > 0 {
        let c = rest % p;
        if c != 0 {
            digits.push(Digit { coeff: c, exp });
        }
        rest /= p;
        exp += 1;
    }
    let l = digits[0].exp;
    let pl = p.pow(l);
    let k = (m - 1) / pl;
    let d = k.gcd(&(pl - 1));
    Ok(PAdicProfile {
        p,
        m,
        l,
        k,
        d,
        digits,
    })
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

impl PAdicProfile {
    pub fn pl(&self) -> u64 {
        self.p.pow(self.l)
    }

    pub fn last_digit(&self) -> Digit {
        *self.digits.last().expect("m - 1 > 0 has a digit")
    }

    pub fn is_gold(&self) -> bool {
        self.k == 1
    }

    /// `2K - (m_b + 1) p^(i_b - l)`, the degree of the polynomial whose roots
    /// bound the partners of one affine singular coordinate.
    fn partner_degree(&self) -> BigInt {
        let b = self.last_digit();
        big(2 * self.k) - big(b.coeff + 1) * big(self.p).pow(b.exp - self.l)
    }

    /// `(K - 1)(2K - (m_b + 1) p^(i_b - l))`: cap on affine singular points.
    pub fn affine_count_bound(&self) -> BigInt {
        big(self.k - 1) * self.partner_degree()
    }

    /// Cap on off-diagonal affine points with exactly one coordinate outside
    /// `F_{p^l}^*`: `(K - 1)(2K - (m_b + 1) p^(i_b - l) - 1) - (d - 1)(d - 2)`.
    pub fn offdiag_digit_count(&self) -> BigInt {
        big(self.k - 1) * (self.partner_degree() - 1) - self.d_pair_count()
    }

    /// `((p^l - 2)(p^l + 1) + 1)(K - 1)`, the alternative cap on the
    /// conditional points whose coordinates both avoid `F_{p^l}^*`.
    pub fn offdiag_field_count(&self) -> BigInt {
        let pl = big(self.pl());
        ((&pl - 2) * (&pl + 1) + 1) * big(self.k - 1)
    }

    /// Same count with `- 1` in place of `+ 1`, as it appears in the per-point
    /// lemma. Reported next to [`offdiag_field_count`](Self::offdiag_field_count).
    pub fn offdiag_field_count_minus(&self) -> BigInt {
        let pl = big(self.pl());
        ((&pl - 2) * (&pl + 1) - 1) * big(self.k - 1)
    }

    fn d_pair_count(&self) -> BigInt {
        big(self.d - 1) * (big(self.d) - 2)
    }
}

/// `I_tot` bound for `d = 1`, counting conditional points by the digit
/// expansion: `p^l (K - 1)(2K - (m_b + 1) p^(i_b - l) - 1) + ((p^l - 1)/2)^2`.
pub fn itot_digit_count(pr: &PAdicProfile) -> BigInt {
    let pl = big(pr.pl());
    let half: BigInt = (&pl - 1) / 2;
    &pl * big(pr.k - 1) * (pr.partner_degree() - 1) + &half * &half
}

/// `I_tot` bound for `d = 1`, counting conditional points by field size:
/// `p^l ((p^l - 2)(p^l + 1) + 1)(K - 1) + ((p^l - 1)/2)^2`.
pub fn itot_field_count(pr: &PAdicProfile) -> BigInt {
    let pl = big(pr.pl());
    let half: BigInt = (&pl - 1) / 2;
    &pl * pr.offdiag_field_count() + &half * &half
}

/// `4 I_tot` numerators for `1 < d < K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialGcdNumerators {
    #[serde(serialize_with = "ser_big")]
    pub field_count: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub digit_count: BigInt,
}

/// Both numerators share the head `2(p^{2l} - 1)(d - 1) + (p^l + 1)^2 (d - 1)(d - 2)`
/// and add `4 p^l (K - 1) C + (p^l - 1)^2` with `C` one of the two counts.
/// The common denominator is `(m - 2)^2`.
pub fn itot4_partial_gcd(pr: &PAdicProfile) -> Result<PartialGcdNumerators, BoundsError> {
    if !(1 < pr.d && pr.d < pr.k) {
        return Err(BoundsError::WrongRegime { p: pr.p, m: pr.m });
    }
    let pl = big(pr.pl());
    let d = big(pr.d);
    let k = big(pr.k);
    let head = 2 * (&pl * &pl - 1) * (&d - 1) + (&pl + 1u32).pow(2u32) * (&d - 1) * (&d - 2);
    let tail = (&pl - 1u32).pow(2u32);
    let field = (&pl - 2) * (&pl + 1) + 1;
    let digit =
        2 * &k - big(pr.last_digit().coeff + 1) * big(pr.p).pow(pr.last_digit().exp - pr.l) - 1;
    Ok(PartialGcdNumerators {
        field_count: &head + 4 * &pl * (&k - 1) * field + &tail,
        digit_count: &head + 4 * &pl * (&k - 1) * digit + &tail,
    })
}

/// `e = itot4 / (m - 2)^2`, and whether `e < 8/9`. The comparison is the
/// integer cross-multiplication `9 itot4 < 8 (m - 2)^2`.
pub fn e_gate(itot_times4: &BigInt, m: u64) -> (BigRational, bool) {
    assert!(m >= 3);
    let den = big(m - 2).pow(2);
    let passed = 9 * itot_times4 < 8 * &den;
    (BigRational::new(itot_times4.clone(), den), passed)
}

pub fn eight_ninths() -> BigRational {
    BigRational::new(8.into(), 9.into())
}

/// `1/(k - 1/q) + 1/4 + 4/q + 1/(k - 1/q)^2`: the worst-case `e` for the
/// partial-gcd regime once `d <= k/2` is substituted.
pub fn partial_gcd_e_bound(k: u64, q: u64) -> BigRational {
    let q_r = BigRational::from_integer(big(q));
    let t = BigRational::from_integer(big(k)) - q_r.recip();
    let inv = t.recip();
    &inv + BigRational::new(1.into(), 4.into()) + BigRational::new(4.into(), big(q)) + &inv * &inv
}

pub(crate) fn is_odd_prime_power(q: u64) -> Option<u64> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let p = (3..=q).find(|c| q % c == 0)?;
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// `(k, q)` is admissible when `q = p^l` is an odd prime power, `p ∤ k`, and
/// `d = gcd(k, q - 1)` satisfies `1 < d < k`.
pub fn partial_gcd_admissible(k: u64, q: u64) -> bool {
    let Some(p) = is_odd_prime_power(q) else {
        return false;
    };
    let d = k.gcd(&(q - 1));
    k % p != 0 && 1 < d && d < k
}

/// Pairs `(k, q)` the partial-gcd bound cannot rule out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialGcdCandidates {
    /// `(k, [q...])` for `k` below `tail_from`, ascending, nonempty rows only.
    pub rows: Vec<(u64, Vec<u64>)>,
    /// Every admissible `k >= tail_from` uses a `q` from `tail`.
    pub tail_from: u64,
    pub tail: Vec<u64>,
}

pub const PARTIAL_GCD_TAIL_FROM: u64 = 16;

/// Enumerate the candidate table by exact comparison against `8/9`.
///
/// The bound decreases in both `k` and `q`, and `k = 2, 3` are never
/// admissible, so `q` only ranges while the bound at `k = 4` stays at or above
/// `8/9`. For `k >= tail_from` the surviving `q` are those that pass at
/// `k = tail_from` and are admissible for some such `k`.
pub fn partial_gcd_candidates() -> PartialGcdCandidates {
    let target = eight_ninths();
    let qs: Vec<u64> = (3u64..)
        .step_by(2)
        .take_while(|&q| partial_gcd_e_bound(4, q) >= target)
        .filter(|&q| is_odd_prime_power(q).is_some())
        .collect();
    let passes =
        |k: u64, q: u64| partial_gcd_admissible(k, q) && partial_gcd_e_bound(k, q) >= target;
    let rows = (4..PARTIAL_GCD_TAIL_FROM)
        .map(|k| {
            (
                k,
                qs.iter()
                    .copied()
                    .filter(|&q| passes(k, q))
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, v)| !v.is_empty())
        .collect();
    let tail = qs
        .iter()
        .copied()
        .filter(|&q| partial_gcd_e_bound(PARTIAL_GCD_TAIL_FROM, q) >= target)
        .filter(|&q| {
            // Admissibility is periodic in k with period dividing p(q - 1).
            let span = q * (q - 1);
            (PARTIAL_GCD_TAIL_FROM..PARTIAL_GCD_TAIL_FROM + span).any(|k| passes(k, q))
        })
        .collect();
    PartialGcdCandidates {
        rows,
        tail_from: PARTIAL_GCD_TAIL_FROM,
        tail,
    }
}

/// Sides of the multiplicity-sum inequality for `d = K`:
/// `(m - 2)^2` against `2(K - 1)p^{2l} + (K - 1)(K - 2)(1 + p^l)^2 + (p^l - 1)^2`.
pub fn full_gcd_sides(pr: &PAdicProfile) -> (BigInt, BigInt) {
    let pl = big(pr.pl());
    let k = big(pr.k);
    let lhs = big(pr.m - 2).pow(2);
    let rhs = 2 * (&k - 1) * &pl * &pl
        + (&k - 1) * (&k - 2) * (&pl + 1u32).pow(2u32)
        + (&pl - 1u32).pow(2u32);
    (lhs, rhs)
}

/// True when `(m - 2)^2` exceeds the summed squared multiplicities, which
/// rules out a factorization with no absolutely irreducible F_p-factor.
pub fn full_gcd_gate(pr: &PAdicProfile) -> Result<bool, BoundsError> {
    if pr.d != pr.k || pr.k < 2 || pr.k == pr.pl() - 1 {
        return Err(BoundsError::WrongRegime { p: pr.p, m: pr.m });
    }
    let (lhs, rhs) = full_gcd_sides(pr);
    Ok(lhs > rhs)
}

/// `gcd(m - 1, p - 1) > 1`: a nontrivial `(m - 1)`-th root of unity in F_p
/// gives a Frobenius-fixed tangent direction at infinity.
pub fn frobenius_line_gate(p: u64, m: u64) -> Result<bool, BoundsError> {
    check_p(p)?;
    if m < 2 || m % p == 0 || m % p == 1 {
        return Err(BoundsError::WrongRegime { p, m });
    }
    Ok((m - 1).gcd(&(p - 1)) > 1)
}

/// Table-of-singularities point type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PointType {
    Ia,
    Ib,
    IIa,
    IIb,
    IIc,
    IIIa,
    IIIb,
    IIIc,
    /// Ordinary double point, for `m ≢ 0, 1 (mod p)`.
    Plain2,
}

impl PointType {
    pub const TABLE: [PointType; 8] = [
        PointType::Ia,
        PointType::Ib,
        PointType::IIa,
        PointType::IIb,
        PointType::IIc,
        PointType::IIIa,
        PointType::IIIb,
        PointType::IIIc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PointType::Ia => "Ia",
            PointType::Ib => "Ib",
            PointType::IIa => "IIa",
            PointType::IIb => "IIb",
            PointType::IIc => "IIc",
            PointType::IIIa => "IIIa",
            PointType::IIIb => "IIIb",
            PointType::IIIc => "IIIc",
            PointType::Plain2 => "Plain2",
        }
    }
}

/// Per-point intersection-number bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ItBound {
    /// `I_t(u, v) <= n` for every split `h = uv`; `0` means no contribution.
    AtMost(u64),
    /// `I_t <= p^l` only when the tangent cone meets the next component.
    ConditionalPl(u64),
}

impl ItBound {
    pub fn value(self) -> u64 {
        match self {
            ItBound::AtMost(n) | ItBound::ConditionalPl(n) => n,
        }
    }
}

/// Predicted multiplicity, intersection cap and point-count cap for a type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCap {
    pub tag: PointType,
    pub mult_h: u64,
    pub it_cap: ItBound,
    #[serde(serialize_with = "ser_big")]
    pub max_points: BigInt,
    #[serde(serialize_with = "ser_opt_big")]
    pub alt_max_points: Option<BigInt>,
}

pub fn type_caps(pr: &PAdicProfile) -> Vec<TypeCap> {
    let pl = pr.pl();
    let (k, d) = (pr.k, pr.d);
    let sq = |a: u64| a * a;
    let cap = |tag, mult_h, it_cap, max_points: BigInt| TypeCap {
        tag,
        mult_h,
        it_cap,
        max_points,
        alt_max_points: None,
    };
    // The off-diagonal count goes negative when d = K, where no such points exist.
    let offdiag = pr.offdiag_digit_count().max(BigInt::zero());
    vec![
        cap(
            PointType::Ia,
            pl,
            ItBound::AtMost((pl * pl - 1) / 4),
            big(d - 1),
        ),
        cap(PointType::Ib, pl - 1, ItBound::AtMost(0), big(k - d)),
        cap(
            PointType::IIa,
            pl + 1,
            ItBound::AtMost(sq((pl + 1) / 2)),
            pr.d_pair_count(),
        ),
        cap(PointType::IIb, pl, ItBound::AtMost(0), offdiag.clone()),
        TypeCap {
            tag: PointType::IIc,
            mult_h: pl,
            it_cap: ItBound::ConditionalPl(pl),
            max_points: offdiag,
            alt_max_points: Some(pr.offdiag_field_count()),
        },
        cap(
            PointType::IIIa,
            pl - 1,
            ItBound::AtMost(sq((pl - 1) / 2)),
            BigInt::one(),
        ),
        cap(
            PointType::IIIb,
            pl,
            ItBound::AtMost((pl * pl - 1) / 4),
            big(d - 1),
        ),
        cap(PointType::IIIc, pl - 1, ItBound::AtMost(0), big(k)),
    ]
}

/// All `I_tot` variants for a profile, as numerators over `(m - 2)^2 / 4`
/// where marked `x4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItotVariants {
    #[serde(serialize_with = "ser_big")]
    pub digit: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub field: BigInt,
    #[serde(serialize_with = "ser_opt_big")]
    pub partial_field_x4: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub partial_digit_x4: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub deg_h: u64,
    pub caps: Vec<TypeCap>,
    pub itot: ItotVariants,
    #[serde(serialize_with = "ser_ratio")]
    pub e_best: BigRational,
    pub gate_passed: bool,
}

/// Evaluate every applicable `I_tot` formula and gate on the smallest one.
/// `None` outside the `d = 1` and `1 < d < K` regimes.
pub fn bound_report(pr: &PAdicProfile) -> Option<BoundReport> {
    let partial = itot4_partial_gcd(pr).ok();
    let itot = ItotVariants {
        digit: itot_digit_count(pr),
        field: itot_field_count(pr),
        partial_field_x4: partial.as_ref().map(|n| n.field_count.clone()),
        partial_digit_x4: partial.as_ref().map(|n| n.digit_count.clone()),
    };
    let best4 = if pr.d == 1 && pr.k > 1 {
        4 * (&itot.digit).min(&itot.field)
    } else if let Some(n) = &partial {
        (&n.field_count).min(&n.digit_count).clone()
    } else {
        return None;
    };
    let (e_best, gate_passed) = e_gate(&best4, pr.m);
    Some(BoundReport {
        deg_h: pr.m - 2,
        caps: type_caps(pr),
        itot,
        e_best,
        gate_passed,
    })
}

/// Integers that fit `i64` serialize as JSON numbers, larger ones as strings.
pub(crate) fn ser_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(n) => s.serialize_i64(n),
        Err(_) => s.collect_str(v),
    }
}

pub(crate) fn ser_opt_big<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => ser_big(b, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_ratio<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    struct B<'a>(&'a BigInt);
    impl Serialize for B<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_big(self.0, s)
        }
    }
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("num", &B(v.numer()))?;
    st.serialize_field("den", &B(v.denom()))?;
    st.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_m(3, 12), 4);
        assert_eq!(normalize_m(3, 4), 4);
        assert_eq!(normalize_m(5, 50), 2);
    }

    #[test]
    fn profile_examples() {
        let pr = profile(3, 16).unwrap();
        assert_eq!((pr.l, pr.k, pr.d), (1, 5, 1));
        assert_eq!(
            pr.digits,
            vec![Digit { coeff: 2, exp: 1 }, Digit { coeff: 1, exp: 2 }]
        );
        let pr = profile(3, 13).unwrap();
        assert_eq!((pr.l, pr.k, pr.d), (1, 4, 2));
        assert_eq!(
            pr.digits,
            vec![Digit { coeff: 1, exp: 1 }, Digit { coeff: 1, exp: 2 }]
        );
        let pr = profile(5, 26).unwrap();
        assert_eq!((pr.l, pr.k, pr.d), (2, 1, 1));
        assert!(pr.is_gold());
        assert_eq!(
            profile(3, 14),
            Err(BoundsError::WrongRegime { p: 3, m: 14 })
        );
    }

    #[test]
    fn itot_examples() {
        let p316 = profile(3, 16).unwrap();
        let p322 = profile(3, 22).unwrap();
        let p516 = profile(5, 16).unwrap();
        assert_eq!(itot_digit_count(&p316), big(37));
        assert_eq!(itot_digit_count(&p322), big(73));
        assert_eq!(itot_digit_count(&p516), big(14));
        assert_eq!(itot_field_count(&p316), big(61));
        assert_eq!(itot_field_count(&p322), big(91));
        assert_eq!(itot_field_count(&p516), big(194));
    }

    #[test]
    fn partial_gcd_examples() {
        let pr = profile(3, 13).unwrap();
        let n = itot4_partial_gcd(&pr).unwrap();
        assert_eq!(n.digit_count, big(56));
        assert_eq!(n.field_count, big(200));
        assert_eq!(e_gate(&n.digit_count, 13), (r(56, 121), true));
        assert!(!e_gate(&n.field_count, 13).1);
        assert!(itot4_partial_gcd(&profile(3, 16).unwrap()).is_err());
    }

    #[test]
    fn e_gate_examples() {
        assert_eq!(e_gate(&big(148), 16), (r(37, 49), true));
        assert_eq!(e_gate(&big(292), 22), (r(73, 100), true));
        // Exactly 8/9 does not pass.
        assert!(!e_gate(&big(8 * 81), 29).1);
    }

    #[test]
    fn partial_gcd_bound_examples() {
        assert!(partial_gcd_e_bound(4, 11) >= eight_ninths());
        assert!(partial_gcd_e_bound(4, 13) < eight_ninths());
        assert!(partial_gcd_admissible(6, 5));
        assert!(partial_gcd_e_bound(6, 5) >= eight_ninths());
    }

    #[test]
    fn candidate_table() {
        let c = partial_gcd_candidates();
        let expected: Vec<(u64, Vec<u64>)> = vec![
            (4, vec![3, 7, 11]),
            (6, vec![5]),
            (8, vec![3, 5, 7]),
            (9, vec![7]),
            (10, vec![3, 7]),
            (12, vec![5, 7]),
            (14, vec![3, 5]),
            (15, vec![7]),
        ];
        assert_eq!(c.rows, expected);
        assert_eq!((c.tail_from, c.tail.clone()), (16, vec![3, 5]));
    }

    /// Brute force over a wide box: nothing outside the table survives.
    #[test]
    fn candidate_table_matches_wide_scan() {
        let c = partial_gcd_candidates();
        let target = eight_ninths();
        for k in 2..200u64 {
            for q in (3..400u64).step_by(2) {
                let hit = partial_gcd_admissible(k, q) && partial_gcd_e_bound(k, q) >= target;
                let listed = if k < c.tail_from {
                    c.rows.iter().any(|(rk, qs)| *rk == k && qs.contains(&q))
                } else {
                    c.tail.contains(&q)
                };
                if hit {
                    assert!(listed, "({k}, {q}) missing");
                } else if k < c.tail_from {
                    assert!(!listed, "({k}, {q}) listed but fails");
                }
            }
        }
    }

    #[test]
    fn full_gcd_examples() {
        let pr = profile(7, 22).unwrap();
        assert_eq!((pr.k, pr.d), (3, 3));
        assert_eq!(full_gcd_sides(&pr), (big(400), big(360)));
        assert!(full_gcd_gate(&pr).unwrap());
        assert!(full_gcd_gate(&profile(3, 16).unwrap()).is_err());
    }

    #[test]
    fn frobenius_line_examples() {
        assert!(frobenius_line_gate(5, 9).unwrap());
        assert!(!frobenius_line_gate(5, 8).unwrap());
        assert!(frobenius_line_gate(7, 4).unwrap());
        assert!(frobenius_line_gate(5, 11).is_err());
    }

    #[test]
    fn type_cap_examples() {
        let caps = type_caps(&profile(5, 16).unwrap());
        let iib = caps.iter().find(|c| c.tag == PointType::IIb).unwrap();
        assert_eq!(iib.max_points, big(2));
        let caps = type_caps(&profile(3, 13).unwrap());
        let get = |t| caps.iter().find(|c| c.tag == t).unwrap().clone();
        assert_eq!(get(PointType::IIIa).it_cap, ItBound::AtMost(1));
        assert_eq!(get(PointType::Ia).it_cap, ItBound::AtMost(2));
        assert_eq!(get(PointType::IIa).it_cap, ItBound::AtMost(4));
        assert_eq!(get(PointType::Ia).max_points, big(1));
    }
}
