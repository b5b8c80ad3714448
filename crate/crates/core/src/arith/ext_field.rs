use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{ff_sqrt, ArithError, Field, FiniteExtension, FiniteField, Fp, Rational};
use crate::poly::{is_irreducible_ff, Poly};

/// Fixed defining polynomials (Conway polynomials), constant term first.
const CONWAY: &[(u64, usize, &[u64])] = &[
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
];

/// Defining polynomial used for F_{p^k}: the tabulated Conway polynomial when
/// present, otherwise the first monic irreducible in base-p counting order.
pub fn conway_polynomial(p: u64, k: usize) -> Vec<u64> {
    if let Some((_, _, c)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return c.to_vec();
    }
    let count = p.pow(k as u32);
    for idx in 0..count {
        let mut c: Vec<u64> = (0..k).map(|i| (idx / p.pow(i as u32)) % p).collect();
        c.push(1);
        let poly = Poly::new(&p, c.iter().map(|&v| Fp::from_u64(p, v)).collect());
        if is_irreducible_ff(&poly) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FqCtx {
    p: u64,
    k: usize,
    /// Monic, constant term first, length k + 1.
    modulus: Vec<u64>,
}

impl FqCtx {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>, ArithError> {
        if !super::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(ArithError::BadModulus);
        }
        let poly = Poly::new(&p, modulus.iter().map(|&v| Fp::from_u64(p, v)).collect());
        if !is_irreducible_ff(&poly) {
            return Err(ArithError::Reducible(poly.to_string()));
        }
        Ok(Arc::new(FqCtx {
            p,
            k: modulus.len() - 1,
            modulus,
        }))
    }

    pub fn conway(p: u64, k: usize) -> Result<Arc<Self>, ArithError> {
        if !super::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Self::new(p, conway_polynomial(p, k))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_poly(&self) -> Poly<Fp> {
        Poly::new(
            &self.p,
            self.modulus.iter().map(|&v| Fp::from_u64(self.p, v)).collect(),
        )
    }

    /// The class of the variable, a root of the defining polynomial.
    pub fn generator(self: &Arc<Self>) -> Fq {
        let mut c = vec![0; self.k];
        if self.k == 1 {
            c[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            c[1] = 1;
        }
        Fq { ctx: self.clone(), c }
    }
}

/// Element of F_{p^k}, stored as coordinates in the power basis of the defining polynomial.
#[derive(Clone, Debug)]
pub struct Fq {
    ctx: Arc<FqCtx>,
    c: Vec<u64>,
}

impl PartialEq for Fq {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for Fq {}
impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}
impl PartialOrd for Fq {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Fq {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.cmp(&o.c)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, _) => v.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{v}*z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{v}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Fq {
    pub fn from_coords_u64(ctx: &Arc<FqCtx>, coords: &[u64]) -> Self {
        let mut c = vec![0; ctx.k];
        for (i, &v) in coords.iter().enumerate().take(ctx.k) {
            c[i] = v % ctx.p;
        }
        Fq { ctx: ctx.clone(), c }
    }

    pub fn from_fp(ctx: &Arc<FqCtx>, a: &Fp) -> Self {
        Self::from_coords_u64(ctx, &[a.value()])
    }

    /// `x -> x^p`
    pub fn frobenius(&self) -> Self {
        self.pow_u64(self.ctx.p)
    }

    fn reduce(ctx: &Arc<FqCtx>, mut r: Vec<u64>) -> Self {
        let p = ctx.p;
        let k = ctx.k;
        for d in (k..r.len()).rev() {
            let coef = r[d] % p;
            if coef == 0 {
                continue;
            }
            for i in 0..k {
                let sub = coef * ctx.modulus[i] % p;
                let idx = d - k + i;
                r[idx] = (r[idx] % p + p - sub) % p;
            }
            r[d] = 0;
        }
        r.truncate(k);
        r.resize(k, 0);
        for v in r.iter_mut() {
            *v %= p;
        }
        Fq {
            ctx: ctx.clone(),
            c: r,
        }
    }
}

impl Field for Fq {
    type Ctx = Arc<FqCtx>;

    fn context(&self) -> Arc<FqCtx> {
        self.ctx.clone()
    }
    fn zero(ctx: &Arc<FqCtx>) -> Self {
        Fq {
            ctx: ctx.clone(),
            c: vec![0; ctx.k],
        }
    }
    fn one(ctx: &Arc<FqCtx>) -> Self {
        Self::from_coords_u64(ctx, &[1])
    }
    fn from_i64(ctx: &Arc<FqCtx>, n: i64) -> Self {
        Self::from_coords_u64(ctx, &[n.rem_euclid(ctx.p as i64) as u64])
    }
    fn characteristic(ctx: &Arc<FqCtx>) -> u64 {
        ctx.p
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        Fq {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        Fq {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| (a + p - b) % p).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        let k = self.ctx.k;
        let mut r = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        Self::reduce(&self.ctx, r)
    }
    fn neg(&self) -> Self {
        let p = self.ctx.p;
        Fq {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|&a| (p - a) % p).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let q = Self::order(&self.ctx);
        Some(self.pow_u64(q - 2))
    }
    fn sqrt(&self) -> Option<Self> {
        ff_sqrt(self).ok().flatten()
    }
    fn from_rational(ctx: &Arc<FqCtx>, r: &Rational) -> Option<Self> {
        Fp::from_rational(&ctx.p, r).map(|a| Self::from_fp(ctx, &a))
    }
}

impl FiniteField for Fq {
    fn prime(ctx: &Arc<FqCtx>) -> u64 {
        ctx.p
    }
    fn ext_degree(ctx: &Arc<FqCtx>) -> usize {
        ctx.k
    }
    fn coords(&self) -> Vec<u64> {
        self.c.clone()
    }
    fn element(ctx: &Arc<FqCtx>, mut index: u64) -> Self {
        let mut c = vec![0; ctx.k];
        for v in c.iter_mut() {
            *v = index % ctx.p;
            index /= ctx.p;
        }
        Fq { ctx: ctx.clone(), c }
    }
}

impl FiniteExtension for Fq {
    type Base = Fp;
    fn base_ctx(ctx: &Arc<FqCtx>) -> u64 {
        ctx.p
    }
    fn degree(ctx: &Arc<FqCtx>) -> usize {
        ctx.k
    }
    fn to_coords(&self) -> Vec<Fp> {
        self.c.iter().map(|&v| Fp::from_u64(self.ctx.p, v)).collect()
    }
    fn from_coords(ctx: &Arc<FqCtx>, coords: &[Fp]) -> Self {
        let v: Vec<u64> = coords.iter().map(|a| a.value()).collect();
        Self::from_coords_u64(ctx, &v)
    }
}
