//! Symbolic check of the quotient map in `Z[a, b, c, d, e]`.
//!
//! The quadrics of `S` have pairwise coprime leading terms `a^2`, `d^2`, `e^2`
//! under the rewrite rules `a^2 -> 2b^2 - c^2`, `d^2 -> 2c^2 - b^2`,
//! `e^2 -> 2d^2 - c^2`, so they form a Groebner basis and a polynomial lies in
//! the ideal exactly when its normal form is zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

type Mono = [u32; 5];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct MPoly(BTreeMap<Mono, BigInt>);

impl MPoly {
    fn var(i: usize) -> Self {
        let mut m = [0; 5];
        m[i] = 1;
        MPoly(BTreeMap::from([(m, BigInt::one())]))
    }

    fn constant(n: i64) -> Self {
        let mut out = MPoly::default();
        out.push([0; 5], BigInt::from(n));
        out
    }

    fn push(&mut self, m: Mono, k: BigInt) {
        let entry = self.0.entry(m).or_insert_with(BigInt::zero);
        *entry += k;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, k) in &o.0 {
            out.push(*m, k.clone());
        }
        out
    }

    fn scale(&self, s: i64) -> Self {
        let mut out = MPoly::default();
        for (m, k) in &self.0 {
            out.push(*m, k * s);
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = MPoly::default();
        for (m1, k1) in &self.0 {
            for (m2, k2) in &o.0 {
                let m: Mono = std::array::from_fn(|i| m1[i] + m2[i]);
                out.push(m, k1 * k2);
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Self {
        (0..n).fold(MPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// Substitutes `x_i -> sign_i x_i`.
    fn flip_signs(&self, signs: [bool; 5]) -> Self {
        let mut out = MPoly::default();
        for (m, k) in &self.0 {
            let odd = (0..5).filter(|&i| signs[i] && m[i] % 2 == 1).count();
            out.push(*m, if odd % 2 == 1 { -k } else { k.clone() });
        }
        out
    }

    fn normal_form(&self) -> Self {
        // (variable whose square is rewritten, replacement terms as (variable, coefficient))
        const RULES: [(usize, [(usize, i64); 2]); 3] = [
            (4, [(3, 2), (2, -1)]),
            (3, [(2, 2), (1, -1)]),
            (0, [(1, 2), (2, -1)]),
        ];
        let mut out = MPoly::default();
        let mut stack: Vec<(Mono, BigInt)> = self.0.iter().map(|(m, k)| (*m, k.clone())).collect();
        while let Some((m, k)) = stack.pop() {
            match RULES.iter().find(|(v, _)| m[*v] >= 2) {
                Some((v, terms)) => {
                    for (w, c) in terms {
                        let mut m2 = m;
                        m2[*v] -= 2;
                        m2[*w] += 2;
                        stack.push((m2, &k * *c));
                    }
                }
                None => out.push(m, k),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientIdentityReport {
    /// Terms left in the normal form of `(a-c)^8 (y^2 - x^8 - 14x^4 - 1)` after substitution.
    pub curve_residual_terms: usize,
    /// Terms left in the normal form of `(a-c)^4 q_minus(x) - (2b(a-2c+e))^2`.
    pub square_residual_terms: usize,
    /// `(a, -b, c, -d, e)` has the same image.
    pub involution_compatible: bool,
}

impl QuotientIdentityReport {
    pub fn holds(&self) -> bool {
        self.curve_residual_terms == 0 && self.square_residual_terms == 0 && self.involution_compatible
    }
}

pub fn verify_quotient_identity() -> QuotientIdentityReport {
    let [a, b, c, d, e] = std::array::from_fn(MPoly::var);
    let k = MPoly::constant;
    let num_x = e.sub(&c);
    let den = a.sub(&c);
    let mid = a.sub(&c.scale(2)).add(&e);
    // y (a-c)^4
    let num_y = k(4).mul(&b).mul(&d).mul(&mid.pow(2));

    let f_hom = num_x
        .pow(8)
        .add(&k(14).mul(&num_x.pow(4)).mul(&den.pow(4)))
        .add(&den.pow(8));
    let curve = num_y.pow(2).sub(&f_hom).normal_form();

    let q_hom = [1i64, -2, 2, 2, 1]
        .iter()
        .enumerate()
        .fold(MPoly::default(), |acc, (i, &cf)| {
            acc.add(&k(cf).mul(&num_x.pow(4 - i as u32)).mul(&den.pow(i as u32)))
        });
    let root = k(2).mul(&b).mul(&mid);
    let square = q_hom.sub(&root.pow(2)).normal_form();

    let flip = [false, true, false, true, false];
    let involution_compatible =
        num_y.flip_signs(flip) == num_y && num_x.flip_signs(flip) == num_x && den.flip_signs(flip) == den;

    QuotientIdentityReport {
        curve_residual_terms: curve.0.len(),
        square_residual_terms: square.0.len(),
        involution_compatible,
    }
}
