use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use planar_core::bounds::{bound_report, classify_m, e_gate, normalize_m, profile, Verdict};
use planar_core::pntest::{is_pn, Mode};
use proptest::prelude::*;

#[test]
fn profiles_reconstruct_m() {
    for p in [3u64, 5, 7] {
        for m in (p + 1..=500).filter(|m| m % p == 1) {
            let pr = profile(p, m).unwrap();
            let pl = p.pow(pr.l);
            assert_eq!(1 + pr.k * pl, m, "({p}, {m})");
            let from_digits: u64 = pr.digits.iter().map(|d| d.coeff * p.pow(d.exp)).sum();
            assert_eq!(from_digits + 1, m, "({p}, {m}) digits");
            assert!(pr.digits.iter().all(|d| 0 < d.coeff && d.coeff < p));
            assert_ne!(pr.k % p, 0, "({p}, {m}): p divides K");
            assert_eq!(pr.k % pr.d, 0, "({p}, {m}): d does not divide K");
            assert_eq!((pl - 1) % pr.d, 0, "({p}, {m}): d does not divide p^l - 1");
            assert_eq!(pr.d, pr.k.gcd(&(pl - 1)));
        }
    }
}

#[test]
fn classify_is_never_inconclusive_on_the_table_regime() {
    for p in [3u64, 5, 7] {
        for m in (p + 1..=200).filter(|m| m % p == 1) {
            let c = classify_m(p, m).unwrap();
            assert!(
                !matches!(c.verdict, Verdict::Inconclusive { .. }),
                "({p}, {m}): {:?}",
                c.verdict
            );
            let gold = (1..)
                .map(|l| 1 + p.pow(l))
                .take_while(|&g| g <= m)
                .any(|g| g == m);
            assert_eq!(
                matches!(c.verdict, Verdict::GoldException { .. }),
                gold,
                "({p}, {m})"
            );
        }
    }
}

#[test]
fn odd_exponents_are_never_planar() {
    for p in [3u64, 5, 7] {
        for m in (3..=60u64).filter(|m| m % p != 0) {
            let c = classify_m(p, m).unwrap();
            if !matches!(c.verdict, Verdict::NotPnAnywhere(_)) {
                continue;
            }
            for n in (1..).take_while(|&n| p.pow(n) <= 729) {
                assert!(
                    !is_pn(p, n, m, Mode::OnlyAEquals1).unwrap().is_pn,
                    "({p}, {n}, {m})"
                );
            }
        }
    }
}

#[test]
fn bound_reports_are_exact_ratios() {
    for p in [3u64, 5, 7] {
        for m in (p + 1..=300).filter(|m| m % p == 1) {
            let pr = profile(p, m).unwrap();
            let Some(r) = bound_report(&pr) else { continue };
            let den = BigInt::from(m - 2).pow(2);
            // e is a ratio of integers with denominator dividing (m - 2)^2.
            assert_eq!((&den % r.e_best.denom()), BigInt::from(0), "({p}, {m})");
            let num = r.e_best.numer() * (&den / r.e_best.denom());
            assert_eq!(r.gate_passed, 9 * num < 8 * &den, "({p}, {m})");
        }
    }
}

proptest! {
    #[test]
    fn e_gate_is_integer_cross_multiplication(itot4 in 0u64..1_000_000_000, m in 3u64..100_000) {
        let (e, passed) = e_gate(&BigInt::from(itot4), m);
        let den = BigInt::from(m - 2).pow(2);
        prop_assert_eq!(e.clone(), BigRational::new(BigInt::from(itot4), den.clone()));
        prop_assert_eq!(passed, 9 * BigInt::from(itot4) < 8 * den);
        prop_assert_eq!(passed, e < BigRational::new(8.into(), 9.into()));
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_the_class(p in prop::sample::select(vec![3u64, 5, 7]), m in 1u64..5000) {
        let n = normalize_m(p, m);
        prop_assert_eq!(normalize_m(p, n), n);
        prop_assert!(n % p != 0);
        prop_assert_eq!(m % n, 0);
    }
}
