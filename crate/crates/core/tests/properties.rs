use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use contikit::cfrac::{expand_sqrt, pell_solutions};
use contikit::continuant::{continuant_pair, denominators, ContinuantTable};
use contikit::divisibility::{
    divisibility_check, law_of_repetition_check, lucas_pseudoprime_test, period_term_mod, pisano_period,
    rank_of_apparition, residues, strong_gcd_check, Verdict,
};
use contikit::identity::{check_with_table, Identity, IdentityParams};
use contikit::modular::{is_prime, jacobi, primes_up_to, residue};
use contikit::quadratic::QuadraticNumber;
use contikit::recurrence::{binet, reduce, term, verify_reduction};
use contikit::{Error, PeriodicSystem};

fn strict_system() -> impl Strategy<Value = PeriodicSystem> {
    (1usize..=4).prop_flat_map(|d| {
        (
            prop::collection::vec(1i64..=9, d),
            prop::collection::vec(1i64..=9, d),
            0i64..=9,
        )
            .prop_map(|(a, b, b0)| PeriodicSystem::from_ints(&a, &b, b0, true).unwrap())
    })
}

fn signed_system() -> impl Strategy<Value = PeriodicSystem> {
    let coeff = prop_oneof![-9i64..=-1, 1i64..=9];
    (1usize..=3).prop_flat_map(move |d| {
        (
            prop::collection::vec(coeff.clone(), d),
            prop::collection::vec(-9i64..=9, d),
            -9i64..=9,
        )
            .prop_map(|(a, b, b0)| PeriodicSystem::from_ints(&a, &b, b0, false).unwrap())
    })
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(100).into_iter().skip(1).collect::<Vec<_>>())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identities_hold_for_signed_systems(sys in signed_system(), lambda in 0i64..6, nu in 0i64..6, mu in 0i64..6) {
        let table = ContinuantTable::new(&sys, 20).unwrap();
        for identity in Identity::ALL {
            let params = IdentityParams::new(lambda, nu, mu);
            match check_with_table(&table, identity, params) {
                Ok(report) => prop_assert!(report.holds(), "{identity} {params:?} on {sys}"),
                Err(Error::InvalidParameters(_)) | Err(Error::IndexOutOfRange { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn table_agrees_with_direct_continuants(sys in signed_system(), nu in -1i64..12, lambda in 0i64..4) {
        let table = ContinuantTable::new(&sys, 12).unwrap();
        let (a, b) = continuant_pair(&sys, nu, lambda).unwrap();
        prop_assert_eq!(table.a(nu, lambda).unwrap(), &a);
        prop_assert_eq!(table.b(nu, lambda).unwrap(), &b);
    }

    #[test]
    fn reduction_and_binet(sys in strict_system(), n in 0i64..8) {
        let reduced = reduce(&sys).unwrap();
        prop_assert!(verify_reduction(&sys, &reduced, 30).unwrap());
        let d = sys.period() as i64;
        for r in -1..d {
            prop_assert_eq!(binet(&sys, n, r).unwrap(), term(&sys, n * d + r).unwrap());
        }
    }

    #[test]
    fn quadratic_field_arithmetic(p1 in -20i64..20, q1 in -20i64..20, p2 in -20i64..20, q2 in 1i64..20, delta in 2i64..50) {
        let delta = BigInt::from(delta);
        let x = QuadraticNumber::new(rat(p1, 3), rat(q1, 2), delta.clone());
        let y = QuadraticNumber::new(rat(p2, 1), rat(q2, 5), delta.clone());
        let prod = x.checked_mul(&y).unwrap();
        prop_assert_eq!(prod.norm(), x.norm() * y.norm());
        if !y.norm().is_zero() {
            prop_assert_eq!(prod.checked_div(&y).unwrap(), x.clone());
        }
        let sum = x.checked_add(&y).unwrap();
        prop_assert!((sum.to_f64() - (x.to_f64() + y.to_f64())).abs() < 1e-9);
    }

    #[test]
    fn jacobi_is_multiplicative(a in -200i64..200, b in -200i64..200, n in 0u64..200) {
        let n = BigInt::from(2 * n + 1);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = jacobi(&(&a * &b), &n).unwrap();
        prop_assert_eq!(lhs, jacobi(&a, &n).unwrap() * jacobi(&b, &n).unwrap());
    }

    #[test]
    fn modular_stepping_agrees_with_integers(sys in strict_system(), m in 2u64..5000) {
        let reduced = reduce(&sys).unwrap();
        let d = sys.period() as i64;
        let exact = denominators(&sys, 500).unwrap();
        let res = residues(&sys, m, 500);
        for (i, b) in exact.iter().enumerate() {
            prop_assert_eq!(residue(b, m), res[i]);
        }
        for k in 0..=(501 / d) as u64 {
            let idx = k as i64 * d - 1;
            prop_assert_eq!(period_term_mod(&sys, &reduced, k, m).unwrap(), residue(&exact[(idx + 1) as usize], m));
        }
    }

    #[test]
    fn divisibility_sequence(sys in strict_system(), m in 1i64..6, k in 1i64..5) {
        prop_assert!(divisibility_check(&sys, m, m * k).unwrap());
    }

    #[test]
    fn strong_divisibility_when_c_and_d_coprime(sys in strict_system(), m in 1i64..10, n in 1i64..10) {
        let reduced = reduce(&sys).unwrap();
        prop_assume!(reduced.c.gcd(&reduced.d).is_one());
        prop_assert!(strong_gcd_check(&sys, m, n).unwrap());
    }

    #[test]
    fn pseudoprime_soundness(sys in strict_system(), p in odd_prime()) {
        let v = lucas_pseudoprime_test(&sys, p).unwrap();
        prop_assert_ne!(v.verdict, Verdict::CompositeProven);
    }

    #[test]
    fn pisano_divides_bound(sys in strict_system(), p in odd_prime()) {
        match pisano_period(&sys, p) {
            Ok(rep) => {
                prop_assert!(rep.divides, "{rep:?}");
                let d = sys.period() as i64;
                let seq = residues(&sys, p, rep.period as i64 + 6 * d);
                for nu in 0..4 * d as usize {
                    prop_assert_eq!(seq[nu], seq[nu + rep.period as usize]);
                }
            }
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn apparition_clauses_for_odd_primes(sys in strict_system(), p in odd_prime()) {
        let reduced = reduce(&sys).unwrap();
        // The first clause needs p | B_{d-1} as well; see the unit tests.
        prop_assume!(residue(&reduced.c, p) != 0 || residue(&reduced.d, p) != 0);
        let rep = rank_of_apparition(&sys, p, p + 1).unwrap();
        prop_assert_ne!(rep.holds, Some(false), "{:?}", rep);
    }

    #[test]
    fn repetition_for_odd_primes(sys in strict_system(), p in odd_prime(), m in 1u64..4, f in 0u32..2) {
        prop_assume!(m % p != 0);
        let d = sys.period() as i64;
        let base = term(&sys, d - 1).unwrap();
        let n = (1..=p + 1).find(|&k| (term(&sys, k as i64 * d - 1).unwrap() / &base) % p == BigInt::zero());
        prop_assume!(n.is_some_and(|n| n * m * p.pow(f) <= 150));
        let rep = law_of_repetition_check(&sys, p, n.unwrap(), m, f).unwrap();
        prop_assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn convergents_approximate_sqrt(n in 2u64..400) {
        let r = (n as f64).sqrt() as u64;
        prop_assume!(r * r != n);
        let big = BigInt::from(n);
        let sys = expand_sqrt(&big).unwrap().to_system();
        for nu in 0..12i64 {
            let (a, b) = continuant_pair(&sys, nu, 0).unwrap();
            let approx = QuadraticNumber::rational(BigRational::new(a, b.clone()), big.clone());
            let gap = approx.checked_sub(&QuadraticNumber::sqrt_delta(big.clone())).unwrap().abs().unwrap();
            let bound = QuadraticNumber::rational(BigRational::new(BigInt::one(), &b * &b), big.clone());
            prop_assert_eq!(gap.cmp_value(&bound).unwrap(), std::cmp::Ordering::Less);
        }
        for s in pell_solutions(&big, 3).unwrap() {
            prop_assert!(s.satisfies(&big));
            prop_assert!(s.x.is_positive() && s.y.is_positive());
        }
    }

    #[test]
    fn system_json_round_trip(sys in signed_system()) {
        let text = serde_json::to_string(&sys).unwrap();
        prop_assert_eq!(serde_json::from_str::<PeriodicSystem>(&text).unwrap(), sys);
    }
}

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0..5000u64 {
        let trial = n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0);
        assert_eq!(is_prime(n), trial, "{n}");
    }
}
