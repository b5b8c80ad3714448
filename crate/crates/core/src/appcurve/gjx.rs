//! Five squares in arithmetic progression over quadratic fields.
//!
//! For rational `t` the point
//! `(t^2 - 2t - 1, sqrt(q_minus(t)), t^2 + 1, sqrt(q_plus(t)), t^2 + 2t - 1)` lies on `S`
//! and maps to `x = (1 - t)/(1 + t)`. It is defined over `Q(sqrt(D))`,
//! `D = q_minus(t) q_plus(t) = t^8 + 14t^4 + 1`, but not over `Q`, exactly when one of
//! `q_minus(t)`, `q_plus(t)` is a rational square and the other is not. The squares
//! then read `(x0^2, x1^2, x2^2, D x3^2, x4^2)` with integer `x_i`, after reversing
//! the progression if needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{clear_denominators, map_to_c, q_minus, q_plus, SPoint};
use crate::arith::{rational_sqrt, squarefree_part, Field, NfCtx, NumberFieldElement, Rational};
use crate::par::Exec;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GjxProgression {
    /// Squarefree `D`.
    #[serde(serialize_with = "ser_display")]
    pub d: BigInt,
    /// Integers `x0..x4` with `x0^2, x1^2, x2^2, D x3^2, x4^2` in arithmetic progression.
    #[serde(serialize_with = "ser_display_vec")]
    pub x: Vec<BigInt>,
    #[serde(serialize_with = "ser_display_vec")]
    pub terms: Vec<BigInt>,
    /// True when the preimage point in `Q(sqrt(D))` satisfies the quadrics and maps to `C`.
    pub point_verified: bool,
}

impl GjxProgression {
    /// Second differences of the five terms all vanish.
    pub fn is_progression(&self) -> bool {
        self.terms
            .windows(3)
            .all(|w| (&w[0] - &w[1] * BigInt::from(2) + &w[2]).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GjxRecord {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub q_minus: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub q_plus: Rational,
    pub q_minus_square: bool,
    pub q_plus_square: bool,
    /// Exactly one of the two quartics is a square.
    pub condition: bool,
    #[serde(serialize_with = "ser_rational")]
    pub disc: Rational,
    pub progression: Option<GjxProgression>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_display<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn ser_display_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.to_string()))
}

pub fn gjx_condition(t: &Rational) -> GjxRecord {
    let qm = q_minus(t);
    let qp = q_plus(t);
    let (sm, sp) = (rational_sqrt(&qm), rational_sqrt(&qp));
    let condition = sm.is_some() != sp.is_some();
    let progression = if condition {
        Some(build_progression(t, &qm, &qp, sm.is_some()))
    } else {
        None
    };
    GjxRecord {
        t: t.clone(),
        q_minus: qm.clone(),
        q_plus: qp.clone(),
        q_minus_square: sm.is_some(),
        q_plus_square: sp.is_some(),
        condition,
        disc: &qm * &qp,
        progression,
    }
}

fn build_progression(t: &Rational, qm: &Rational, qp: &Rational, minus_square: bool) -> GjxProgression {
    let one = <Rational as One>::one();
    let t2 = t * t;
    let two_t = t + t;
    let a = &t2 - &two_t - &one;
    let c = &t2 + &one;
    let e = &t2 + &two_t - &one;
    // the non-square quartic is D w^2 with D squarefree
    let nonsquare = if minus_square { qp } else { qm };
    // numerator and denominator are coprime, so the product of their squarefree parts is squarefree
    let sf = |n: &BigInt| squarefree_part(&Rational::from_integer(n.clone()));
    let d = sf(nonsquare.numer()) * sf(nonsquare.denom());
    let w = rational_sqrt(&(nonsquare / Rational::from_integer(d.clone()))).expect("square by construction");
    let r = rational_sqrt(if minus_square { qm } else { qp }).expect("square by construction");
    let ordered = if minus_square {
        [a.clone(), r.clone(), c.clone(), w.clone(), e.clone()]
    } else {
        [e.clone(), r.clone(), c.clone(), w.clone(), a.clone()]
    };
    let x = clear_denominators(&ordered);
    let terms: Vec<BigInt> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| if i == 3 { &d * xi * xi } else { xi * xi })
        .collect();

    let field = NfCtx::new_unchecked(
        Poly::new(
            &(),
            vec![
                Rational::from_integer(-d.clone()),
                <Rational as Zero>::zero(),
                one.clone(),
            ],
        ),
        "s",
    );
    let emb = |q: &Rational| NumberFieldElement::from_rational(&field, q.clone());
    let root = field.generator().mul(&emb(&w));
    let (b, dd) = if minus_square {
        (emb(&r), root)
    } else {
        (root, emb(&r))
    };
    let point_verified = SPoint::new(emb(&a), b, emb(&c), dd, emb(&e))
        .ok()
        .and_then(|p| map_to_c(&p).ok())
        .is_some_and(|(x, _)| x == emb(&((&one - t) / (&one + t))));

    GjxProgression {
        d,
        x,
        terms,
        point_verified,
    }
}

/// All `t = p/q` in lowest terms with `|p| <= h`, `1 <= q <= h`.
pub fn gjx_scan(h: i64, exec: Exec) -> Vec<GjxRecord> {
    let mut ts = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                ts.push(Rational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    ts.sort();
    exec.map(&ts, gjx_condition)
}
