use super::*;
use crate::arith::{Fp, Rational};
use crate::curve::{jacobian_order_u64, octic_curve};
use crate::par::Exec;
use proptest::prelude::*;
use std::sync::OnceLock;

fn q_gens() -> Vec<DivisorClass<Rational>> {
    let c = octic_curve();
    generator_divisors::<Rational>(&())
        .iter()
        .map(|d| DivisorClass::of(d, &c).unwrap())
        .collect()
}

/// The subgroup spanned by Q1, Q2, Q3, computed once.
fn torsion() -> &'static GroupStructure<Rational> {
    static CELL: OnceLock<GroupStructure<Rational>> = OnceLock::new();
    CELL.get_or_init(|| span(&q_gens(), &octic_curve(), DEFAULT_SPAN_BUDGET, Exec::Parallel).unwrap())
}

fn curve5() -> CurveModel<Fp> {
    octic_curve().reduce_mod(5).unwrap()
}

fn j5() -> &'static GroupStructure<Fp> {
    static CELL: OnceLock<GroupStructure<Fp>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_jacobian(&curve5(), 512, Exec::Parallel).unwrap())
}

#[test]
fn generator_orders() {
    let c = octic_curve();
    let g = q_gens();
    let orders: Vec<u64> = g.iter().map(|a| a.order(512, &c).unwrap()).collect();
    assert_eq!(orders, vec![4, 4, 8]);
    assert!(g[0].smul(4, &c).is_identity());
    assert!(g[2].smul(8, &c).is_identity());
    assert!(!g[2].smul(4, &c).is_identity());
    assert_eq!(g[0].smul(2, &c).order(512, &c).unwrap(), 2);
    assert_eq!(DivisorClass::<Rational>::identity().order(1, &c).unwrap(), 1);
    assert_eq!(g[2].order(7, &c), Err(JacobianError::OrderBoundExceeded(7)));
}

#[test]
fn class_form_is_reduced() {
    let c = octic_curve();
    for (_, a) in &torsion().elements {
        let e = a.effective();
        assert!(e.is_effective());
        assert!(e.degree() <= 3);
        assert_eq!(e.inf_multiplicity(Sign::Minus), 0);
        assert_eq!(&DivisorClass::of(&a.representative(), &c).unwrap(), a);
    }
}

#[test]
fn torsion_subgroup_structure() {
    let t = torsion();
    assert_eq!(t.order(), 128);
    assert_eq!(t.invariant_factors, vec![4, 4, 8]);
    // coordinates run over the full box Z/4 x Z/4 x Z/8
    assert_eq!(t.elements.first().unwrap().0, vec![0, 0, 0]);
    assert_eq!(t.elements.last().unwrap().0, vec![3, 3, 7]);
    let id = span::<Rational>(&[DivisorClass::identity()], &octic_curve(), 10, Exec::Sequential).unwrap();
    assert_eq!(id.order(), 1);
    assert!(id.invariant_factors.is_empty());
}

#[test]
fn canonical_equality_agrees_with_principality() {
    let c = octic_curve();
    let t = torsion();
    let pick = |i: usize| &t.elements[(i * 37) % 128].1;
    for i in 0..8 {
        let (a, b) = (pick(i), pick(i + 1));
        assert_eq!(a == b, equivalent(&a.representative(), &b.representative(), &c));
        // a shifted representative of the same class
        let shifted = a
            .representative()
            .add(&b.representative())
            .sub(&b.representative());
        assert!(equivalent(&shifted, &a.representative(), &c));
    }
}

#[test]
fn jacobian_mod_5() {
    let c = curve5();
    let j = j5();
    assert_eq!(
        j.order() as u64,
        jacobian_order_u64(&c, Exec::Sequential).unwrap()
    );
    assert_eq!(j.order(), 512);
    assert_eq!(j.invariant_factors.iter().product::<u64>(), 512);
    // f is a product of four irreducible quadratics mod 5, so the 2-rank is 4
    assert_eq!(two_rank(j, &c, Exec::Parallel), frobenius_two_rank(&c));
    assert_eq!(two_rank(j, &c, Exec::Parallel), 4);
}

/// Oracle: 2-rank of `J(F_p)` from Frobenius acting on the roots of `f` in `F_(p^2)`.
fn frobenius_two_rank(c: &CurveModel<Fp>) -> u32 {
    let ext = c.extend(2).unwrap();
    let roots = crate::poly::roots_ff(ext.f());
    assert_eq!(roots.len(), 8, "f splits over F_(p^2)");
    let perm: Vec<usize> = roots
        .iter()
        .map(|r| roots.iter().position(|s| *s == r.frobenius()).unwrap())
        .collect();
    two_rank_from_root_action(&[perm], 8)
}

#[test]
fn two_torsion_over_q_is_exactly_that_of_the_span() {
    let c = octic_curve();
    let i2 = torsion()
        .elements
        .iter()
        .filter(|(_, a)| a.add(a, &c).is_identity())
        .count();
    assert_eq!(1 << octic_two_rank_over_q(), i2);
}

#[test]
fn root_action_counts() {
    // trivial action on 8 roots: all 2^6 classes
    let id: Vec<usize> = (0..8).collect();
    assert_eq!(two_rank_from_root_action(&[id], 8), 6);
    // a full 8-cycle fixes only the empty class and the alternating subset
    let cyc: Vec<usize> = (0..8).map(|i| (i + 1) % 8).collect();
    assert_eq!(two_rank_from_root_action(&[cyc], 8), 1);
}

#[test]
fn reduction_is_injective_and_a_homomorphism() {
    let cq = octic_curve();
    let c5 = curve5();
    let t = torsion();
    let images: Vec<DivisorClass<Fp>> =
        Exec::Parallel.map(&t.elements, |(_, a)| reduction_map(a, &cq, &c5).unwrap());
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    assert_eq!(distinct.len(), 128);
    for i in 0..20 {
        let (x, y) = ((i * 13) % 128, (i * 29 + 5) % 128);
        let sum = t.elements[x].1.add(&t.elements[y].1, &cq);
        let lhs = reduction_map(&sum, &cq, &c5).unwrap();
        assert_eq!(lhs, images[x].add(&images[y], &c5));
    }
    assert!(reduction_map(&DivisorClass::identity(), &cq, &c5)
        .unwrap()
        .is_identity());
    let c3 = octic_curve().reduce_mod(7).unwrap();
    assert!(reduction_map(&t.elements[1].1, &cq, &c3).is_ok());
}

#[test]
fn divisor_reduction_of_places() {
    let c5 = curve5();
    let [q1, q2, _] = generator_divisors::<Rational>(&());
    assert_eq!(reduce_divisor(&q1, &c5).unwrap(), generator_divisors::<Fp>(&5)[0]);
    assert_eq!(reduce_divisor(&q2, &c5).unwrap(), generator_divisors::<Fp>(&5)[1]);
    // x^2 + 1 splits mod 5 as (x - 2)(x - 3); v = 4 reduces to -1 at both roots
    let quad = Divisor::from_place(
        Place::Affine {
            u: Poly::from_i64s(&(), &[1, 0, 1]),
            v: Poly::from_i64s(&(), &[4]),
        },
        1,
    );
    let red = reduce_divisor(&quad, &c5).unwrap();
    assert_eq!(red.degree(), 2);
    assert_eq!(red.len(), 2);
    // a place with a 5-adic denominator in v does not reduce
    let bad = Divisor::from_place(
        Place::Affine {
            u: Poly::from_i64s(&(), &[0, 1]),
            v: Poly::constant(&(), crate::arith::ratio(1, 5)),
        },
        1,
    );
    assert!(reduce_divisor(&bad, &c5).is_none());
}

#[test]
fn involutions_classify() {
    let c = octic_curve();
    let invs: Vec<_> = torsion()
        .elements
        .iter()
        .filter(|(_, a)| !a.is_identity() && a.add(a, &c).is_identity())
        .collect();
    assert_eq!(invs.len(), 7);
    for (v, a) in invs {
        let rec = two_torsion_classify(a, &c).unwrap_or_else(|e| panic!("{v:?}: {e}"));
        assert!(rec.d0.is_effective() && rec.d0.degree() == 3);
        match rec.witness {
            TwoTorsionWitness::Polynomial { h } => {
                assert!(h.deg() % 2 == 0 && h.deg() <= 2 && c.f().rem(&h).is_zero())
            }
            TwoTorsionWitness::Norm { h1, a, h2 } => {
                let aq = Rational::from_integer(a);
                assert_eq!(h1.mul(&h1).sub(&h2.mul(&h2).scale(&aq)), *c.f());
            }
        }
    }
    let g = q_gens();
    assert_eq!(
        two_torsion_classify(&g[0], &c),
        Err(JacobianError::NotTwoTorsion(4))
    );
    assert_eq!(
        two_torsion_classify(&DivisorClass::identity(), &c),
        Err(JacobianError::NotTwoTorsion(1))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn group_axioms_mod_5(i in 0usize..512, j in 0usize..512, k in 0usize..512) {
        let c = curve5();
        let e = &j5().elements;
        let (a, b, d) = (&e[i].1, &e[j].1, &e[k].1);
        prop_assert_eq!(a.add(b, &c), b.add(a, &c));
        prop_assert_eq!(a.add(b, &c).add(d, &c), a.add(&b.add(d, &c), &c));
        prop_assert_eq!(a.add(&DivisorClass::identity(), &c), a.clone());
        prop_assert!(a.add(&a.neg(&c), &c).is_identity());
    }

    #[test]
    fn group_axioms_over_q(i in 0usize..128, j in 0usize..128, k in 0usize..128) {
        let c = octic_curve();
        let t = torsion();
        let (a, b, d) = (&t.elements[i], &t.elements[j], &t.elements[k]);
        let ab = a.1.add(&b.1, &c);
        prop_assert_eq!(&ab, &b.1.add(&a.1, &c));
        prop_assert_eq!(ab.add(&d.1, &c), a.1.add(&b.1.add(&d.1, &c), &c));
        prop_assert!(a.1.add(&a.1.neg(&c), &c).is_identity());
        // the sum carries the sum of the coordinates
        let want: Vec<i64> = a.0.iter().zip(&b.0).zip([4, 4, 8]).map(|((x, y), m)| (x + y) % m).collect();
        prop_assert_eq!(t.coordinates(&ab).unwrap(), want.as_slice());
    }
}
