//! Round-trip properties of factorization and square roots on random inputs.

use fivesq::arith::{
    ff_sqrt, nf_sqrt, rational_sqrt, Field, FiniteField, Fp, Fq, FqCtx, NfCtx, NumberFieldElement, Rational,
};
use fivesq::poly::{factor_ff, factor_ff_seeded, factor_q, is_irreducible_ff, Poly};
use num_bigint::BigInt;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 101];

/// Irreducibility by brute force, exact for degree at most 5: no root and no monic quadratic divisor.
fn irreducible_brute(f: &Poly<Fp>, p: u64) -> bool {
    let d = f.degree().unwrap();
    let no_root = (0..p).all(|r| !f.eval(&Fp::from_u64(p, r)).is_zero());
    if d <= 3 {
        return d >= 1 && (d == 1 || no_root);
    }
    let no_quad = (0..p * p).all(|i| {
        let q = Poly::new(
            &p,
            vec![Fp::from_u64(p, i % p), Fp::from_u64(p, i / p), Fp::one(&p)],
        );
        !q.divides(f)
    });
    no_root && no_quad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn factor_ff_round_trips(
        pi in 0usize..PRIMES.len(),
        coeffs in proptest::collection::vec(-60i64..60, 2..12),
        seed in any::<u64>(),
    ) {
        let p = PRIMES[pi];
        let f: Poly<Fp> = Poly::from_i64s(&p, &coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_ff_seeded(&f, seed);
        prop_assert_eq!(fac.expand(), f.clone());
        prop_assert_eq!(&fac, &factor_ff(&f));
        for (g, e) in &fac.factors {
            prop_assert!(*e >= 1);
            prop_assert!(g.lc().is_one());
            prop_assert!(is_irreducible_ff(g));
            if g.degree().unwrap() <= 5 && p <= 13 {
                prop_assert!(irreducible_brute(g, p), "{} reducible mod {}", g, p);
            }
        }
        let mut gs: Vec<_> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        gs.dedup();
        prop_assert_eq!(gs.len(), fac.factors.len());
    }

    #[test]
    fn factor_over_f125_round_trips(coeffs in proptest::collection::vec(0u64..125, 2..7)) {
        let ctx = FqCtx::conway(5, 3).unwrap();
        let f: Poly<Fq> = Poly::new(&ctx, coeffs.iter().map(|&i| Fq::element(&ctx, i)).collect());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_ff(&f);
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible_ff(g));
        }
    }

    #[test]
    fn factor_q_round_trips(
        a in proptest::collection::vec(-9i64..10, 2..5),
        b in proptest::collection::vec(-9i64..10, 2..5),
        c in proptest::collection::vec(-9i64..10, 1..4),
        den in 1i64..12,
    ) {
        let (a, b, c) = (Poly::from_i64s(&(), &a), Poly::from_i64s(&(), &b), Poly::from_i64s(&(), &c));
        let f = a.mul(&b).mul(&c).scale(&Rational::new(BigInt::from(1), BigInt::from(den)));
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor_q(&f);
        prop_assert_eq!(fac.expand(), f);
        let total: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
        prop_assert_eq!(total, fac.expand().degree().unwrap());
    }

    #[test]
    fn ff_sqrt_round_trips(pi in 0usize..PRIMES.len(), v in any::<u64>(), k in 1usize..4) {
        let p = PRIMES[pi];
        let ctx = FqCtx::conway(p, k).unwrap();
        let x = Fq::element(&ctx, v % Fq::order(&ctx));
        let r = ff_sqrt(&x.square()).unwrap().unwrap();
        prop_assert!(r == x || r == x.neg());
        match ff_sqrt(&x).unwrap() {
            Some(r) => prop_assert_eq!(r.square(), x),
            // Euler's criterion as the oracle for non-squares
            None => prop_assert!(!x.is_zero() && !x.pow_u64((Fq::order(&ctx) - 1) / 2).is_one()),
        }
    }

    #[test]
    fn rational_sqrt_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = Rational::new(BigInt::from(n), BigInt::from(d));
        let r = rational_sqrt(&x.square()).unwrap();
        prop_assert!(r == x || r == x.neg());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn nf_sqrt_round_trips(c in proptest::collection::vec((-30i64..30, 1i64..8), 3)) {
        let k = NfCtx::new(Poly::from_i64s(&(), &[1, 2, -2, 1]), "t").unwrap();
        let coords: Vec<Rational> = c.iter().map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))).collect();
        let z = NumberFieldElement::from_poly(&k, &Poly::new(&(), coords));
        let r = nf_sqrt(&z.square()).unwrap();
        prop_assert!(r == z || r == z.neg());
    }
}

#[test]
fn fp_sqrt_exhaustive_mod_small_primes() {
    for p in [3u64, 5, 7, 11, 13] {
        let squares: Vec<u64> = (0..p).map(|v| v * v % p).collect();
        for v in 0..p {
            let r = ff_sqrt(&Fp::from_u64(p, v)).unwrap();
            assert_eq!(r.is_some(), squares.contains(&v), "{v} mod {p}");
        }
    }
}
