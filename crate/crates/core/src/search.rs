//! Sweeps over the 128 classes `D_i` of the torsion subgroup: `l(D_i + k inf-)`,
//! the unique effective divisor when `l = 1`, and what kind of divisor it is.

use std::collections::BTreeMap;

use num_integer::{Integer, Roots};
use serde::Serialize;

use crate::arith::{ratio, Rational};
use crate::curve::{CurveModel, Point, Sign};
use crate::divisor::{divisor_of_function_with_hints, involution, CurveFunction, Divisor, Place};
use crate::jacobian::{DivisorClass, GroupStructure};
use crate::par::Exec;
use crate::rr::lspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    /// `l = 0`.
    Empty,
    /// A single place of degree `k`, not fixed by the involution.
    Irreducible,
    /// Fixed by the hyperelliptic involution: a fiber of `x`, or a pencil of them.
    InvolutionFixed,
    Reducible,
    /// A pencil with a base point, so every member is reducible.
    BasePointFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub index: usize,
    /// `D_i ~ e1 Q1 + e2 Q2 + e3 Q3`.
    pub combination: Vec<i64>,
    pub degree: i64,
    pub ell: usize,
    /// Present exactly when `l = 1`.
    pub effective: Option<Divisor<Rational>>,
    pub kind: RowKind,
    /// The basis of `L(D_i + k inf-)` when `l >= 2`.
    pub basis: Vec<CurveFunction<Rational>>,
    /// Common part of all divisors in the pencil, when `l >= 2`.
    pub base_locus: Option<Divisor<Rational>>,
}

/// Pointwise minimum of effective divisors.
fn meet(ds: &[Divisor<Rational>]) -> Divisor<Rational> {
    let Some(first) = ds.first() else {
        return Divisor::zero();
    };
    let mut out = Divisor::zero();
    for (p, n) in first.iter() {
        let m = ds.iter().map(|d| d.multiplicity(p)).min().unwrap_or(0).min(n);
        if m > 0 {
            out.add_place(p.clone(), m);
        }
    }
    out
}

fn classify_effective(e: &Divisor<Rational>) -> RowKind {
    if involution(e) == *e {
        return RowKind::InvolutionFixed;
    }
    let single = e.len() == 1 && e.iter().all(|(p, n)| n == 1 && p.degree() as i64 == e.degree());
    if single {
        RowKind::Irreducible
    } else {
        RowKind::Reducible
    }
}

fn sweep_row(
    index: usize,
    combination: &[i64],
    class: &DivisorClass<Rational>,
    k: i64,
    c: &CurveModel<Rational>,
) -> SweepRow {
    let d = class
        .representative()
        .add(&Divisor::from_place(Place::Infinity(Sign::Minus), k));
    let l = lspace(&d, c);
    let hints = d.affine_us();
    let members: Vec<Divisor<Rational>> = l
        .basis
        .iter()
        .map(|f| d.add(&divisor_of_function_with_hints(c, f, &hints).expect("nonzero basis element")))
        .collect();
    let mut row = SweepRow {
        index,
        combination: combination.to_vec(),
        degree: k,
        ell: l.dim(),
        effective: None,
        kind: RowKind::Empty,
        basis: Vec::new(),
        base_locus: None,
    };
    match l.dim() {
        0 => {}
        1 => {
            row.kind = classify_effective(&members[0]);
            row.effective = Some(members[0].clone());
        }
        _ => {
            let base = meet(&members);
            row.kind = if !base.is_zero() {
                RowKind::BasePointFamily
            } else if members.iter().all(|m| involution(m) == *m) {
                RowKind::InvolutionFixed
            } else {
                RowKind::Reducible
            };
            row.basis = l.basis;
            row.base_locus = Some(base);
        }
    }
    row
}

/// One row per element of `group`, in the order of its coordinates.
pub fn sweep(
    group: &GroupStructure<Rational>,
    c: &CurveModel<Rational>,
    k: i64,
    exec: Exec,
) -> Vec<SweepRow> {
    let indexed: Vec<_> = group.elements.iter().enumerate().collect();
    exec.map(&indexed, |(i, (v, a))| sweep_row(*i, v, a, k, c))
}

pub fn histogram(rows: &[SweepRow]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for r in rows {
        *h.entry(r.ell).or_insert(0) += 1;
    }
    h
}

/// The irreducible effective divisors found by a sweep, with their rows.
pub fn irreducible_places(rows: &[SweepRow]) -> Vec<(&SweepRow, Place<Rational>)> {
    rows.iter()
        .filter(|r| r.kind == RowKind::Irreducible)
        .map(|r| {
            let e = r.effective.as_ref().expect("l = 1 row");
            let (p, _) = e.iter().next().expect("single place");
            (r, p.clone())
        })
        .collect()
}

/// The rational points carried by the `l = 1` rows of the degree-1 sweep.
pub fn rational_points(rows: &[SweepRow]) -> Vec<Point<Rational>> {
    let mut pts: Vec<Point<Rational>> = rows
        .iter()
        .filter_map(|r| r.effective.as_ref())
        .flat_map(|e| e.iter().filter_map(|(p, _)| p.to_point()).collect::<Vec<_>>())
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Affine rational points with `x = p/q`, `|p| <= h`, `1 <= q <= h`, by testing whether
/// `p^8 + 14 p^4 q^4 + q^8` is a perfect square.
pub fn rational_point_search(h: u64, exec: Exec) -> Vec<Point<Rational>> {
    let found = exec.map_range(h, |q0| {
        let q = q0 + 1;
        let mut out = Vec::new();
        for p in -(h as i64)..=(h as i64) {
            if p.unsigned_abs().gcd(&q) != 1 {
                continue;
            }
            let (p4, q4) = ((p.unsigned_abs() as u128).pow(4), (q as u128).pow(4));
            let n = p4 * p4 + 14 * p4 * q4 + q4 * q4;
            let r = n.sqrt();
            if r * r == n {
                let x = ratio(p, q as i64);
                let y = Rational::new((r as i64).into(), (q4 as i64).into());
                out.push(Point::Affine {
                    x: x.clone(),
                    y: -y.clone(),
                });
                out.push(Point::Affine { x, y });
            }
        }
        out
    });
    let mut pts: Vec<Point<Rational>> = found.into_iter().flatten().collect();
    pts.sort();
    pts
}

#[cfg(test)]
mod tests;
