use super::*;
use crate::arith::rat;
use crate::curve::octic_curve;
use crate::jacobian::{generator_divisors, span, DEFAULT_SPAN_BUDGET};
use crate::poly::{factor_q, Poly};
use crate::rr::is_principal;
use std::sync::OnceLock;

fn q(c: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(&(), c)
}

fn torsion() -> &'static GroupStructure<Rational> {
    static CELL: OnceLock<GroupStructure<Rational>> = OnceLock::new();
    CELL.get_or_init(|| {
        let c = octic_curve();
        let gens: Vec<_> = generator_divisors::<Rational>(&())
            .iter()
            .map(|d| DivisorClass::of(d, &c).unwrap())
            .collect();
        span(&gens, &c, DEFAULT_SPAN_BUDGET, Exec::Parallel).unwrap()
    })
}

fn rows(k: i64) -> &'static [SweepRow] {
    static CELLS: [OnceLock<Vec<SweepRow>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[(k - 1) as usize].get_or_init(|| sweep(torsion(), &octic_curve(), k, Exec::Parallel))
}

fn check_rows(rows: &[SweepRow], k: i64) {
    let c = octic_curve();
    assert_eq!(rows.len(), 128);
    for r in rows {
        assert!(r.ell <= 2);
        assert_eq!(r.effective.is_some(), r.ell == 1);
        if let Some(e) = &r.effective {
            assert!(e.is_effective());
            assert_eq!(e.degree(), k);
            let d = torsion().elements[r.index].1.representative();
            let shifted = d.add(&Divisor::from_place(Place::Infinity(Sign::Minus), k));
            assert!(is_principal(&e.sub(&shifted), &c).is_some());
        }
    }
}

#[test]
fn degree_one_sweep() {
    let r = rows(1);
    check_rows(r, 1);
    assert_eq!(histogram(r), BTreeMap::from([(0, 120), (1, 8)]));
    let pts = rational_points(r);
    let mut expected = vec![Point::Infinity(Sign::Plus), Point::Infinity(Sign::Minus)];
    for (x, y) in [(0, 1), (0, -1), (1, 4), (1, -4), (-1, 4), (-1, -4)] {
        expected.push(Point::Affine { x: rat(x), y: rat(y) });
    }
    expected.sort();
    assert_eq!(pts, expected);
    for p in &pts {
        assert!(octic_curve().contains(p));
    }
}

#[test]
fn degree_two_sweep() {
    let r = rows(2);
    check_rows(r, 2);
    assert_eq!(histogram(r), BTreeMap::from([(0, 93), (1, 34), (2, 1)]));
    let pencil: Vec<_> = r.iter().filter(|x| x.ell == 2).collect();
    assert_eq!(pencil[0].combination, vec![1, 0, 0]);
    assert_eq!(
        pencil[0].basis,
        vec![
            CurveFunction::from_poly(q(&[1])),
            CurveFunction::from_poly(q(&[0, 1]))
        ]
    );
    assert_eq!(pencil[0].kind, RowKind::InvolutionFixed);
    let irr = irreducible_places(r);
    let found: Vec<(Vec<i64>, Place<Rational>)> = irr
        .iter()
        .map(|(row, p)| (row.combination.clone(), p.clone()))
        .collect();
    assert_eq!(
        found,
        vec![
            (
                vec![0, 3, 4],
                Place::Affine {
                    u: q(&[1, 0, 1]),
                    v: q(&[4])
                }
            ),
            (
                vec![2, 1, 4],
                Place::Affine {
                    u: q(&[1, 0, 1]),
                    v: q(&[-4])
                }
            ),
        ]
    );
    let others = r
        .iter()
        .filter(|x| x.ell == 1 && x.kind != RowKind::Irreducible)
        .count();
    assert_eq!(others, 32);
}

#[test]
fn degree_three_sweep() {
    let c = octic_curve();
    let r = rows(3);
    check_rows(r, 3);
    assert_eq!(histogram(r), BTreeMap::from([(1, 120), (2, 8)]));
    for row in r.iter().filter(|x| x.ell == 2) {
        assert_eq!(row.kind, RowKind::BasePointFamily);
        assert!(row.base_locus.as_ref().unwrap().degree() >= 1);
    }
    let cubic = irreducible_places(r);
    assert_eq!(cubic.len(), 16);
    let places: Vec<Place<Rational>> = cubic.iter().map(|(_, p)| p.clone()).collect();
    let theta = Place::Affine {
        u: q(&[1, 2, -2, 1]),
        v: q(&[-1, 1, 2]),
    };
    assert!(places.contains(&theta));
    for p in &places {
        let Place::Affine { u, v } = p else {
            panic!("split cubic place expected")
        };
        assert_eq!(u.deg(), 3);
        assert!(factor_q(u).is_irreducible());
        assert!(v.mul(v).sub(c.f()).rem(u).is_zero());
        // the involution permutes the 16
        assert!(places.contains(&p.conjugate()));
    }
}

#[test]
fn no_rational_points_beyond_the_eight() {
    let pts = rational_point_search(1000, Exec::Parallel);
    let xs: Vec<Rational> = pts
        .iter()
        .filter_map(|p| match p {
            Point::Affine { x, .. } => Some(x.clone()),
            _ => None,
        })
        .collect();
    assert_eq!(pts.len(), 6);
    for x in xs {
        assert!(x == rat(0) || x == rat(1) || x == rat(-1));
    }
}

#[test]
fn meet_of_divisors() {
    let a = Divisor::from_terms([
        (Place::Infinity(Sign::Plus), 2),
        (Place::Infinity(Sign::Minus), 1),
    ]);
    let b = Divisor::from_terms([(Place::Infinity(Sign::Plus), 1)]);
    assert_eq!(meet(&[a, b.clone()]), b);
}
