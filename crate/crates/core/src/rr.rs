//! Riemann-Roch spaces on the split model `y^2 = f(x)`, `deg f = 2g + 2`.
//!
//! Every function is `(a + b y) / c`. For `L(D)` the denominator is fixed by
//! the affine poles allowed by `D`, the numerator degrees by the poles allowed
//! at infinity, and every remaining condition is linear in the coefficients of
//! `a` and `b`:
//!
//! * split place `(u, v)` with required order `r`: `a + b v_r = 0 mod u^r`,
//!   where `v_r^2 = f mod u^r` lifts `v`;
//! * inert place over `u`: `u^r` divides `a` and `b`;
//! * ramified place over `u` (`u` has order 2 there, `y` order 1):
//!   `u^ceil(r/2)` divides `a` and `u^floor(r/2)` divides `b`;
//! * at `inf+-` the expansion `a(x) +- b(x) x^(g+1) s(1/x)` with
//!   `s = sqrt(x^(-2g-2) f)` loses its top pole coefficients.
//!
//! The kernel of the resulting matrix, in reduced echelon form with one free
//! coordinate set to 1, is the basis. Unknowns are ordered `a_0..a_M, b_0..`,
//! so `L(2 inf+ + 4 inf-)` comes out as `1, x, x^2, y - x^4`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::Field;
use crate::curve::{CurveModel, Sign};
use crate::divisor::{
    divisor_of_function_with_hints, infinity_series, CurveField, CurveFunction, Divisor, DivisorError, Place,
};
use crate::linalg::kernel;
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrError {
    #[error("expected a complete linear system of dimension 1, found dimension {0}")]
    NotUnique(usize),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSpace<F: Field> {
    pub divisor: Divisor<F>,
    pub basis: Vec<CurveFunction<F>>,
}

impl<F: Field> LSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Local shape of the places over one `u`.
enum Fiber<F: Field> {
    /// `(v, n_v)` and `(-v, n_-v)`.
    Split(Poly<F>, i64, i64),
    Inert(i64),
    Ramified(i64),
}

fn fibers<F: Field>(d: &Divisor<F>) -> BTreeMap<Poly<F>, Fiber<F>> {
    let mut out: BTreeMap<Poly<F>, Fiber<F>> = BTreeMap::new();
    for (p, n) in d.iter() {
        match p {
            Place::Affine { u, v } if v.is_zero() => {
                out.insert(u.clone(), Fiber::Ramified(n));
            }
            Place::Affine { u, v } => {
                let entry = out
                    .entry(u.clone())
                    .or_insert_with(|| Fiber::Split(v.clone(), 0, 0));
                if let Fiber::Split(v0, n0, n1) = entry {
                    if v0 == v {
                        *n0 = n;
                    } else {
                        *n1 = n;
                    }
                }
            }
            Place::Inert { u } => {
                out.insert(u.clone(), Fiber::Inert(n));
            }
            Place::Infinity(_) => {}
        }
    }
    out
}

/// `w` with `w^2 = f mod u^r` and `w = v mod u`, by Newton iteration.
fn lift_root<F: Field>(f: &Poly<F>, u: &Poly<F>, v: &Poly<F>, r: u32) -> Poly<F> {
    let ctx = u.ctx().clone();
    let two = F::from_i64(&ctx, 2);
    let mut w = v.clone();
    let mut k = 1;
    while k < r {
        k = (2 * k).min(r);
        let m = u.pow(k);
        let inv = w.scale(&two).invmod(&m).expect("unramified place");
        let err = w.mul(&w).sub(f).rem(&m);
        w = w.sub(&err.mulmod(&inv, &m)).rem(&m);
    }
    w
}

fn ceil_half(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

/// Coefficient rows of `p mod m` for each unknown contribution `p`, one row per
/// coefficient of the residue.
fn residue_rows<F: Field>(
    ctx: &F::Ctx,
    contributions: &[(usize, Poly<F>)],
    m: &Poly<F>,
    ncols: usize,
    rows: &mut Vec<Vec<F>>,
) {
    let dm = m.deg_usize();
    let reduced: Vec<(usize, Poly<F>)> = contributions.iter().map(|(j, p)| (*j, p.rem(m))).collect();
    for i in 0..dm {
        let mut row = vec![F::zero(ctx); ncols];
        for (j, p) in &reduced {
            row[*j] = p.coeff(i);
        }
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
}

/// A basis of `L(D)`.
pub fn lspace<F: Field>(d: &Divisor<F>, c: &CurveModel<F>) -> LSpace<F> {
    let ctx = c.ctx().clone();
    let g = c.genus() as i64;
    let empty = LSpace {
        divisor: d.clone(),
        basis: Vec::new(),
    };
    let fibers = fibers(d);

    let mut denom = Poly::one(&ctx);
    let mut exps = Vec::with_capacity(fibers.len());
    for (u, fib) in &fibers {
        let m = match fib {
            Fiber::Split(_, n0, n1) => 0.max(*n0).max(*n1),
            Fiber::Inert(n) => 0.max(*n),
            Fiber::Ramified(n) => 0.max(ceil_half(*n)),
        };
        denom = denom.mul(&u.pow(m as u32));
        exps.push(m);
    }
    let dc = denom.deg().max(0) as i64;
    let mp = d.inf_multiplicity(Sign::Plus) + dc;
    let mm = d.inf_multiplicity(Sign::Minus) + dc;
    let top = mp.max(mm);
    if top < 0 {
        return empty;
    }
    let na = (top + 1) as usize;
    let nb = (top - g).max(0) as usize;
    let ncols = na + nb;
    let xpow = |i: usize| Poly::monomial(F::one(&ctx), i);
    let mut rows: Vec<Vec<F>> = Vec::new();

    for ((u, fib), m) in fibers.iter().zip(&exps) {
        match fib {
            Fiber::Split(v, n0, n1) => {
                for (root, n) in [(v.clone(), *n0), (v.neg(), *n1)] {
                    let r = m - n;
                    if r <= 0 {
                        continue;
                    }
                    let modulus = u.pow(r as u32);
                    let w = lift_root(c.f(), u, &root, r as u32);
                    let mut contrib: Vec<(usize, Poly<F>)> = (0..na).map(|i| (i, xpow(i))).collect();
                    contrib.extend((0..nb).map(|j| (na + j, xpow(j).mulmod(&w, &modulus))));
                    residue_rows(&ctx, &contrib, &modulus, ncols, &mut rows);
                }
            }
            Fiber::Inert(n) => {
                let r = m - n;
                if r > 0 {
                    let modulus = u.pow(r as u32);
                    let ca: Vec<_> = (0..na).map(|i| (i, xpow(i))).collect();
                    let cb: Vec<_> = (0..nb).map(|j| (na + j, xpow(j))).collect();
                    residue_rows(&ctx, &ca, &modulus, ncols, &mut rows);
                    residue_rows(&ctx, &cb, &modulus, ncols, &mut rows);
                }
            }
            Fiber::Ramified(n) => {
                let r = 2 * m - n;
                if r > 0 {
                    let ea = ceil_half(r);
                    let eb = r / 2;
                    let ca: Vec<_> = (0..na).map(|i| (i, xpow(i))).collect();
                    residue_rows(&ctx, &ca, &u.pow(ea as u32), ncols, &mut rows);
                    if eb > 0 {
                        let cb: Vec<_> = (0..nb).map(|j| (na + j, xpow(j))).collect();
                        residue_rows(&ctx, &cb, &u.pow(eb as u32), ncols, &mut rows);
                    }
                }
            }
        }
    }

    // t^e coefficient at inf(sigma) is a_{-e} + sigma * sum_j b_j s_{e+j+g+1}
    let depth = (top - mp.min(mm) + 2).max(1) as usize;
    let s = infinity_series(c, depth);
    for (sigma, ms) in [(F::one(&ctx), mp), (F::one(&ctx).neg(), mm)] {
        for e in -top..-ms {
            let mut row = vec![F::zero(&ctx); ncols];
            if e <= 0 && ((-e) as usize) < na {
                row[(-e) as usize] = F::one(&ctx);
            }
            for j in 0..nb {
                let i = e + j as i64 + g + 1;
                if i >= 0 {
                    row[na + j] = sigma.mul(&s[i as usize]);
                }
            }
            rows.push(row);
        }
    }

    let basis = kernel(&ctx, &rows, ncols)
        .into_iter()
        .map(|mut k| {
            let b = k.split_off(na);
            CurveFunction::new(Poly::new(&ctx, k), Poly::new(&ctx, b), denom.clone())
        })
        .collect();
    LSpace {
        divisor: d.clone(),
        basis,
    }
}

pub fn ell<F: Field>(d: &Divisor<F>, c: &CurveModel<F>) -> usize {
    if d.degree() < 0 {
        return 0;
    }
    lspace(d, c).dim()
}

/// The unique effective divisor in `|D|` when `l(D) = 1`.
pub fn unique_effective<F: CurveField>(d: &Divisor<F>, c: &CurveModel<F>) -> Result<Divisor<F>, RrError> {
    let l = lspace(d, c);
    if l.dim() != 1 {
        return Err(RrError::NotUnique(l.dim()));
    }
    let div = divisor_of_function_with_hints(c, &l.basis[0], &d.affine_us())?;
    Ok(d.add(&div))
}

/// A function `k` with `div(k) = D`, if `D` is principal.
pub fn is_principal<F: CurveField>(d: &Divisor<F>, c: &CurveModel<F>) -> Option<CurveFunction<F>> {
    if d.degree() != 0 {
        return None;
    }
    let l = lspace(&d.neg(), c);
    (l.dim() == 1).then(|| l.basis[0].clone())
}

#[cfg(test)]
mod tests;
