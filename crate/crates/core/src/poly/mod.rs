//! Dense univariate polynomials over any [`Field`].

mod factor_ff;
mod factor_q;
mod minpoly;
mod parse;
mod resultant;
pub(crate) mod zmod;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use crate::arith::{Field, Rational};

pub use factor_ff::{factor_ff, factor_ff_seeded, is_irreducible_ff, roots_ff, DEFAULT_SEED};
pub use factor_q::factor_q;
pub use minpoly::{minpoly_ext, minpoly_nf, nf_with_generator};
pub use parse::{parse_poly, ParsePolyError};
pub use resultant::{interpolate, norm_poly, resultant};

/// Dense polynomial, constant coefficient first. The zero polynomial has no coefficients.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    ctx: F::Ctx,
    c: Vec<F>,
}

/// `unit * prod(f_i^{e_i})` with monic irreducible `f_i`, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self) -> Poly<F> {
        let ctx = self.unit.context();
        let mut acc = Poly::constant(&ctx, self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as u32));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.deg_usize(), *e))
            .collect();
        d.sort_unstable();
        d
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl<F: Field> Poly<F> {
    pub fn new(ctx: &F::Ctx, mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { ctx: ctx.clone(), c }
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Poly {
            ctx: ctx.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(ctx, F::one(ctx))
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Self::monomial(F::one(ctx), 1)
    }

    pub fn constant(ctx: &F::Ctx, a: F) -> Self {
        Self::new(ctx, vec![a])
    }

    pub fn monomial(a: F, n: usize) -> Self {
        let ctx = a.context();
        let mut c = vec![F::zero(&ctx); n + 1];
        c[n] = a;
        Self::new(&ctx, c)
    }

    pub fn from_i64s(ctx: &F::Ctx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&n| F::from_i64(ctx, n)).collect())
    }

    /// `x - a`
    pub fn linear_root(a: &F) -> Self {
        let ctx = a.context();
        Self::new(&ctx, vec![a.neg(), F::one(&ctx)])
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub(crate) fn deg_usize(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Self::new(&self.ctx, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Self::new(&self.ctx, c)
    }

    pub fn neg(&self) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut c = vec![F::zero(&self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.ctx, c)
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(&self.ctx, self.c.iter().map(|x| x.mul(a)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![F::zero(&self.ctx); k];
        c.extend(self.c.iter().cloned());
        Poly {
            ctx: self.ctx.clone(),
            c,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Self::zero(&self.ctx), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let dn = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![F::zero(&self.ctx); self.c.len() - dn];
        for i in (0..q.len()).rev() {
            let coef = r[i + dn].mul(&inv);
            if !coef.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].sub(&coef.mul(dc));
                }
            }
            q[i] = coef;
        }
        r.truncate(dn);
        (Self::new(&self.ctx, q), Self::new(&self.ctx, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        if self.c.len() < d.c.len() {
            return self.clone();
        }
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Largest `k` with `d^k | self`; `self` must be nonzero and `d` nonconstant.
    pub fn valuation(&self, d: &Self) -> usize {
        assert!(!self.is_zero() && d.deg() > 0);
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(d) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Divides out every power of `d`, returning the exponent and cofactor.
    pub fn strip(&self, d: &Self) -> (usize, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(d) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &F) -> F {
        self.c
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, a| acc.mul(x).add(a))
    }

    /// Evaluates at an element of another field through a coefficient map.
    pub fn eval_with<G: Field>(&self, x: &G, map: impl Fn(&F) -> G) -> G {
        let gctx = x.context();
        self.c
            .iter()
            .rev()
            .fold(G::zero(&gctx), |acc, a| acc.mul(x).add(&map(a)))
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(ctx, self.c.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul(&F::from_i64(&self.ctx, i as i64)))
            .collect();
        Self::new(&self.ctx, c)
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        self.c.iter().rev().fold(Self::zero(&self.ctx), |acc, a| {
            acc.mul(g).add(&Self::constant(&self.ctx, a.clone()))
        })
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(&self.ctx, self.c.iter().take(n).cloned().collect())
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(&self.ctx).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Self {
        self.powmod(&BigUint::from(e), m)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` the monic gcd.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn invmod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() <= 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).is_one()
    }

    /// `(self, e) -> self^e` evaluated as `prod` over a list.
    pub fn product(ctx: &F::Ctx, items: impl IntoIterator<Item = Self>) -> Self {
        items.into_iter().fold(Self::one(ctx), |acc, p| acc.mul(&p))
    }

    /// Square root of a polynomial that is a perfect square, if it is one.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.deg_usize();
        if n % 2 == 1 {
            return None;
        }
        let lc_root = self.lc().sqrt()?;
        let m = n / 2;
        let ctx = &self.ctx;
        let two_lc = lc_root.add(&lc_root);
        let inv = two_lc.inv()?;
        let mut r = vec![F::zero(ctx); m + 1];
        r[m] = lc_root;
        for k in (0..m).rev() {
            // match the coefficient of x^{m+k}; r_k appears as 2*r_k*r_m
            let mut s = F::zero(ctx);
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > m || j <= k {
                    continue;
                }
                s = s.add(&r[i].mul(&r[j]));
            }
            let target = self.coeff(m + k);
            r[k] = target.sub(&s).mul(&inv);
        }
        let cand = Self::new(ctx, r);
        (cand.mul(&cand) == *self).then_some(cand)
    }
}

impl Poly<Rational> {
    /// Primitive integer polynomial with positive leading coefficient, and the rational scale.
    pub fn primitive_part(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for a in &self.c {
            g = g.gcd(&(a * Rational::from_integer(l.clone())).to_integer());
        }
        let mut s = Rational::new(l, g);
        if self.lc().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mut s = a.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if s.contains(['+', '-', ' ']) {
                s = format!("({s})");
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = s == "1";
            match (i, unit) {
                (0, _) => write!(f, "{s}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{s}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{s}*x^{i}")?,
            }
        }
        Ok(())
    }
}
