use super::*;
use crate::arith::{rat, Fp, Rational};
use crate::curve::{enumerate_points, octic_curve, Point};
use crate::divisor::{divisor_of_function, places_over};
use crate::par::Exec;
use crate::poly::factor_ff;
use proptest::prelude::*;

fn q(c: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(&(), c)
}

fn pt(x: i64, y: i64) -> Place<Rational> {
    Place::from_point(&Point::Affine { x: rat(x), y: rat(y) })
}

fn infs(np: i64, nm: i64) -> Divisor<Rational> {
    Divisor::from_terms([
        (Place::Infinity(Sign::Plus), np),
        (Place::Infinity(Sign::Minus), nm),
    ])
}

fn cubic() -> Place<Rational> {
    Place::Affine {
        u: q(&[1, 2, -2, 1]),
        v: q(&[-1, 1, 2]),
    }
}

fn canonical() -> Divisor<Rational> {
    infs(2, 2)
}

#[test]
fn constants_span_l0() {
    let c = octic_curve();
    let l = lspace(&Divisor::zero(), &c);
    assert_eq!(l.basis, vec![CurveFunction::constant(&(), rat(1))]);
}

#[test]
fn basis_of_two_torsion_space() {
    let c = octic_curve();
    let l = lspace(&infs(2, 4), &c);
    let expected = vec![
        CurveFunction::from_poly(q(&[1])),
        CurveFunction::from_poly(q(&[0, 1])),
        CurveFunction::from_poly(q(&[0, 0, 1])),
        CurveFunction::new(q(&[0, 0, 0, 0, -1]), q(&[1]), q(&[1])),
    ];
    assert_eq!(l.basis, expected);
}

#[test]
fn pencil_of_q1_plus_two_inf_minus() {
    let c = octic_curve();
    let l = lspace(&infs(1, 1), &c);
    assert_eq!(
        l.basis,
        vec![
            CurveFunction::from_poly(q(&[1])),
            CurveFunction::from_poly(q(&[0, 1]))
        ]
    );
}

#[test]
fn canonical_degree_dimension_is_genus() {
    let c = octic_curve();
    assert_eq!(ell(&canonical(), &c), 3);
    assert_eq!(ell(&infs(-1, 0), &c), 0);
    assert_eq!(ell(&Divisor::from_place(pt(0, 1), -1), &c), 0);
}

#[test]
fn unique_effective_returns_effective_input() {
    let c = octic_curve();
    let d = Divisor::from_place(cubic(), 1);
    assert_eq!(ell(&d, &c), 1);
    assert_eq!(unique_effective(&d, &c).unwrap(), d);
}

#[test]
fn unique_effective_undoes_a_principal_shift() {
    // x - 2 is inert: f(2) = 481 is not a square
    let c = octic_curve();
    let e = Divisor::from_place(cubic(), 1);
    let h = CurveFunction::from_poly(q(&[-2, 1]));
    let d = e.add(&divisor_of_function(&c, &h).unwrap());
    assert!(d.multiplicity(&Place::Inert { u: q(&[-2, 1]) }) == 1);
    assert_eq!(unique_effective(&d, &c).unwrap(), e);
}

#[test]
fn quadratic_point_class() {
    // 3 Q2 + 4 Q3 + 2 inf- with Q2 = (0,-1) - inf-, Q3 = (-1,-4) - inf-
    let c = octic_curve();
    let d = Divisor::from_terms([
        (pt(0, -1), 3),
        (pt(-1, -4), 4),
        (Place::Infinity(Sign::Minus), -5),
    ]);
    assert_eq!(d.degree(), 2);
    assert_eq!(ell(&d, &c), 1);
    let e = unique_effective(&d, &c).unwrap();
    assert_eq!(
        e,
        Divisor::from_place(
            Place::Affine {
                u: q(&[1, 0, 1]),
                v: q(&[4])
            },
            1
        )
    );
}

#[test]
fn unique_effective_rejects_pencils() {
    let c = octic_curve();
    assert_eq!(unique_effective(&infs(1, 1), &c), Err(RrError::NotUnique(2)));
    assert_eq!(unique_effective(&infs(-1, 0), &c), Err(RrError::NotUnique(0)));
}

#[test]
fn principal_divisors() {
    let c = octic_curve();
    let one = is_principal(&Divisor::zero(), &c).unwrap();
    assert!(one.is_constant());
    let dx = divisor_of_function(&c, &CurveFunction::x(&())).unwrap();
    let k = is_principal(&dx, &c).unwrap();
    assert!(k.b().is_zero() && k.c().is_one() && k.a().deg() == 1 && k.a().coeff(0) == rat(0));
    assert!(is_principal(&infs(1, -1), &c).is_none());
    assert!(is_principal(&infs(2, -2), &c).is_none());
    assert!(is_principal(&infs(4, -4), &c).is_some());
    assert!(is_principal(&infs(1, 0), &c).is_none());
}

/// Places of small degree on the curve mod 13, for sampling.
fn places_mod_13() -> (CurveModel<Fp>, Vec<Place<Fp>>) {
    let c = octic_curve().reduce_mod(13).unwrap();
    let mut out: Vec<Place<Fp>> = enumerate_points(&c, Exec::Sequential)
        .unwrap()
        .iter()
        .map(Place::from_point)
        .collect();
    for w in [[2i64, 0, 1], [1, 1, 1], [5, 1, 1]] {
        let w = Poly::from_i64s(&13, &w);
        if factor_ff(&w).is_irreducible() {
            out.extend(places_over(&c, &w));
        }
    }
    for (w, _) in factor_ff(c.f()).factors {
        out.push(Place::Affine {
            u: w.clone(),
            v: Poly::zero(&13),
        });
    }
    out.sort();
    out.dedup();
    (c, out)
}

/// Places over Q covering every local type.
fn places_q() -> Vec<Place<Rational>> {
    vec![
        pt(0, 1),
        pt(0, -1),
        pt(1, 4),
        pt(-1, -4),
        cubic(),
        Place::Affine {
            u: q(&[1, 0, 1]),
            v: q(&[4]),
        },
        Place::Inert { u: q(&[-2, 1]) },
        Place::Affine {
            u: q(&[1, -2, 2, 2, 1]),
            v: q(&[]),
        },
        Place::Infinity(Sign::Plus),
    ]
}

fn with_degree<F: Field>(mut d: Divisor<F>, target: i64) -> Divisor<F> {
    let k = target - d.degree();
    d.add_place(Place::Infinity(Sign::Minus), k);
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn riemann_roch_over_q(
        terms in proptest::collection::vec((0usize..9, -2i64..3), 0..5),
        target in -2i64..=8,
    ) {
        let c = octic_curve();
        let pl = places_q();
        let d = with_degree(Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i].clone(), k))), target);
        let lhs = ell(&d, &c) as i64 - ell(&canonical().sub(&d), &c) as i64;
        prop_assert_eq!(lhs, d.degree() - 3 + 1);
    }

    #[test]
    fn riemann_roch_mod_13(
        terms in proptest::collection::vec((0usize..64, -3i64..4), 0..6),
        target in -2i64..=8,
    ) {
        let (c, pl) = places_mod_13();
        let d = with_degree(
            Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i % pl.len()].clone(), k))),
            target,
        );
        let k = Divisor::from_terms([(Place::Infinity(Sign::Plus), 2), (Place::Infinity(Sign::Minus), 2)]);
        let lhs = ell(&d, &c) as i64 - ell(&k.sub(&d), &c) as i64;
        prop_assert_eq!(lhs, d.degree() - 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn basis_elements_lie_in_l_mod_13(
        terms in proptest::collection::vec((0usize..64, -3i64..4), 0..6),
        target in 0i64..=6,
    ) {
        let (c, pl) = places_mod_13();
        let d = with_degree(
            Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i % pl.len()].clone(), k))),
            target,
        );
        for fun in lspace(&d, &c).basis {
            let div = divisor_of_function(&c, &fun).unwrap();
            prop_assert!(div.add(&d).is_effective(), "{} + {} not effective", div, d);
        }
    }

    #[test]
    fn ell_is_a_class_invariant_mod_13(
        terms in proptest::collection::vec((0usize..64, -3i64..4), 0..5),
        target in 0i64..=6,
        a in proptest::collection::vec(-6i64..7, 1..5),
        b in proptest::collection::vec(-6i64..7, 0..2),
        h in proptest::collection::vec(-6i64..7, 1..3),
    ) {
        let (c, pl) = places_mod_13();
        let d = with_degree(
            Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i % pl.len()].clone(), k))),
            target,
        );
        let hc = Poly::from_i64s(&13, &h);
        prop_assume!(!hc.is_zero());
        let fun = CurveFunction::new(Poly::from_i64s(&13, &a), Poly::from_i64s(&13, &b), hc);
        prop_assume!(!fun.is_zero());
        let d2 = d.add(&divisor_of_function(&c, &fun).unwrap());
        prop_assert_eq!(ell(&d, &c), ell(&d2, &c));
    }

    #[test]
    fn ell_is_monotone_in_degree_one_places(
        terms in proptest::collection::vec((0usize..64, -3i64..4), 0..6),
        target in -1i64..=6,
        extra in 0usize..64,
    ) {
        let (c, pl) = places_mod_13();
        let d = with_degree(
            Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i % pl.len()].clone(), k))),
            target,
        );
        let ones: Vec<_> = pl.iter().filter(|p| p.degree() == 1).collect();
        let p = ones[extra % ones.len()].clone();
        let (l0, l1) = (ell(&d, &c), ell(&d.add(&Divisor::from_place(p, 1)), &c));
        prop_assert!(l0 <= l1 && l1 <= l0 + 1);
    }

    #[test]
    fn unique_effective_is_equivalent_mod_13(
        terms in proptest::collection::vec((0usize..64, -3i64..4), 0..5),
    ) {
        let (c, pl) = places_mod_13();
        let d = Divisor::from_terms(terms.into_iter().map(|(i, k)| (pl[i % pl.len()].clone(), k)));
        // shift into degree 3 and keep only complete systems of dimension 1
        let d = with_degree(d, 3);
        if ell(&d, &c) == 1 {
            let e = unique_effective(&d, &c).unwrap();
            prop_assert!(e.is_effective());
            prop_assert_eq!(e.degree(), 3);
            prop_assert!(is_principal(&e.sub(&d), &c).is_some());
        }
    }
}
