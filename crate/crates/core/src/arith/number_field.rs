//! Number fields `Q[t]/(m(t))` and an exact squareness decision.
//!
//! A square root is found by lifting square roots of the images of `x` at the
//! roots of `m` modulo a completely split prime `p`, interpolating, and
//! rationally reconstructing the coordinates. A non-square is certified by a
//! prime `p` and a root `r` of `m mod p` at which `x(r)` is a non-residue.
//! The two searches are interleaved, so the procedure always terminates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{
    next_prime, rational_reconstruction, ArithError, Field, FiniteExtension, FiniteField, Fp, Rational,
};
use crate::poly::{factor_q, roots_ff, zmod, Poly};

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NfCtx {
    modulus: Poly<Rational>,
    name: String,
}

impl NfCtx {
    /// Builds `Q[name]/(modulus)`, checking that the modulus is monic and irreducible.
    pub fn new(modulus: Poly<Rational>, name: &str) -> Result<Arc<Self>, ArithError> {
        if modulus.deg() < 1 || !modulus.is_monic() {
            return Err(ArithError::BadModulus);
        }
        if !factor_q(&modulus).is_irreducible() {
            return Err(ArithError::Reducible(modulus.to_string()));
        }
        Ok(Self::new_unchecked(modulus, name))
    }

    /// Skips the irreducibility check; the caller vouches for it.
    pub fn new_unchecked(modulus: Poly<Rational>, name: &str) -> Arc<Self> {
        Arc::new(NfCtx {
            modulus,
            name: name.to_string(),
        })
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg_usize()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(self: &Arc<Self>) -> NumberFieldElement {
        NumberFieldElement::from_poly(self, &Poly::x(&()))
    }
}

/// Element of `Q[t]/(m)` as coordinates in the power basis.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    ctx: Arc<NfCtx>,
    c: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for NumberFieldElement {}
impl Hash for NumberFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}
impl PartialOrd for NumberFieldElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for NumberFieldElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.cmp(&o.c)
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string();
        write!(f, "{}", s.replace('x', &self.ctx.name))
    }
}

impl NumberFieldElement {
    pub fn from_poly(ctx: &Arc<NfCtx>, p: &Poly<Rational>) -> Self {
        let r = p.rem(&ctx.modulus);
        let d = ctx.degree();
        let c = (0..d).map(|i| r.coeff(i)).collect();
        NumberFieldElement { ctx: ctx.clone(), c }
    }

    pub fn from_rational(ctx: &Arc<NfCtx>, r: Rational) -> Self {
        Self::from_poly(ctx, &Poly::constant(&(), r))
    }

    pub fn to_poly(&self) -> Poly<Rational> {
        Poly::new(&(), self.c.clone())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn field(&self) -> &Arc<NfCtx> {
        &self.ctx
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(Zero::is_zero)
    }

    /// Least common denominator of the coordinates.
    fn denominator(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }

    /// Image modulo a prime at a root of the modulus.
    pub fn reduce_at(&self, p: u64, root: &Fp) -> Option<Fp> {
        let mut acc = Fp::zero(&p);
        for a in self.c.iter().rev() {
            acc = acc.mul(root).add(&Fp::from_rational(&p, a)?);
        }
        Some(acc)
    }
}

impl Field for NumberFieldElement {
    type Ctx = Arc<NfCtx>;

    fn context(&self) -> Arc<NfCtx> {
        self.ctx.clone()
    }
    fn zero(ctx: &Arc<NfCtx>) -> Self {
        NumberFieldElement {
            ctx: ctx.clone(),
            c: vec![<Rational as Zero>::zero(); ctx.degree()],
        }
    }
    fn one(ctx: &Arc<NfCtx>) -> Self {
        Self::from_rational(ctx, <Rational as One>::one())
    }
    fn from_i64(ctx: &Arc<NfCtx>, n: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(n.into()))
    }
    fn characteristic(_: &Arc<NfCtx>) -> u64 {
        0
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        NumberFieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        NumberFieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::from_poly(&self.ctx, &self.to_poly().mul(&o.to_poly()))
    }
    fn neg(&self) -> Self {
        NumberFieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        self.to_poly()
            .invmod(&self.ctx.modulus)
            .map(|p| Self::from_poly(&self.ctx, &p))
    }
    fn sqrt(&self) -> Option<Self> {
        nf_sqrt(self)
    }
    fn from_rational(ctx: &Arc<NfCtx>, r: &Rational) -> Option<Self> {
        Some(NumberFieldElement::from_rational(ctx, r.clone()))
    }
}

impl FiniteExtension for NumberFieldElement {
    type Base = Rational;
    fn base_ctx(_: &Arc<NfCtx>) {}
    fn degree(ctx: &Arc<NfCtx>) -> usize {
        ctx.degree()
    }
    fn to_coords(&self) -> Vec<Rational> {
        self.c.clone()
    }
    fn from_coords(ctx: &Arc<NfCtx>, coords: &[Rational]) -> Self {
        Self::from_poly(ctx, &Poly::new(&(), coords.to_vec()))
    }
}

/// `x(root)` is a quadratic non-residue modulo `prime`, where `root` is a root of `m mod prime`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonResidueCertificate {
    pub prime: u64,
    pub root: u64,
}

impl NonResidueCertificate {
    /// Re-derives the certificate from scratch.
    pub fn verify(&self, x: &NumberFieldElement) -> bool {
        let p = self.prime;
        let root = Fp::from_u64(p, self.root);
        let m = &x.ctx.modulus;
        let Some(mbar) = reduce_poly(m, p) else {
            return false;
        };
        if !mbar.eval(&root).is_zero() || !mbar.is_squarefree() {
            return false;
        }
        match x.reduce_at(p, &root) {
            Some(v) => !v.is_zero() && !v.is_square(),
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareVerdict {
    Square(NumberFieldElement),
    NonSquare(NonResidueCertificate),
}

impl SquareVerdict {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareVerdict::Square(_))
    }

    pub fn root(&self) -> Option<&NumberFieldElement> {
        match self {
            SquareVerdict::Square(r) => Some(r),
            SquareVerdict::NonSquare(_) => None,
        }
    }
}

fn reduce_poly(p: &Poly<Rational>, prime: u64) -> Option<Poly<Fp>> {
    let c = p
        .coeffs()
        .iter()
        .map(|a| Fp::from_rational(&prime, a))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::new(&prime, c))
}

/// Picks the root whose first nonzero coordinate is positive.
fn canonical_sign(r: NumberFieldElement) -> NumberFieldElement {
    match r.c.iter().find(|a| !Zero::is_zero(*a)) {
        Some(a) if a.is_negative() => r.neg(),
        _ => r,
    }
}

struct PrimeScan {
    next: u64,
    lifting: Option<(u64, Vec<Fp>)>,
}

enum ScanOutcome {
    Certificate(NonResidueCertificate),
    Nothing,
}

impl PrimeScan {
    fn new() -> Self {
        PrimeScan {
            next: 3,
            lifting: None,
        }
    }

    /// Examines the next good prime.
    fn step(&mut self, x: &NumberFieldElement, denom: &BigInt) -> ScanOutcome {
        loop {
            let p = self.next;
            self.next = next_prime(p);
            let pb = BigInt::from(p);
            if (denom % &pb).is_zero() {
                continue;
            }
            let Some(mbar) = reduce_poly(&x.ctx.modulus, p) else {
                continue;
            };
            if !mbar.is_squarefree() {
                continue;
            }
            let roots = roots_ff(&mbar);
            let mut all_units = true;
            for r in &roots {
                let v = x.reduce_at(p, r).expect("p-integral");
                if v.is_zero() {
                    all_units = false;
                } else if !v.is_square() {
                    return ScanOutcome::Certificate(NonResidueCertificate {
                        prime: p,
                        root: r.value(),
                    });
                }
            }
            if self.lifting.is_none() && all_units && roots.len() == x.ctx.degree() {
                self.lifting = Some((p, roots));
            }
            return ScanOutcome::Nothing;
        }
    }
}

/// Tries to build a square root from p-adic data at precision `p^n`.
fn lift_and_reconstruct(x: &NumberFieldElement, p: u64, roots: &[Fp], n: u32) -> Option<NumberFieldElement> {
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), n as usize);
    let iterations = 64 - (n as u64).leading_zeros() + 1;
    let m_res = zmod::from_rational_poly(x.ctx.modulus.coeffs(), &modulus)?;
    let dm_res = zmod::derivative(&m_res, &modulus);
    let x_res = zmod::from_rational_poly(&x.c, &modulus)?;

    let mut lifted_roots = Vec::with_capacity(roots.len());
    let mut lifted_sqrts = Vec::with_capacity(roots.len());
    for r0 in roots {
        let mut r = BigInt::from(r0.value());
        for _ in 0..iterations {
            let num = zmod::eval(&m_res, &r, &modulus);
            let den = zmod::eval(&dm_res, &r, &modulus);
            let inv = zmod::inverse(&den, &modulus)?;
            r = (r - num * inv).mod_floor(&modulus);
        }
        let xv = zmod::eval(&x_res, &r, &modulus);
        let s0 = Fp::from_u64(p, (&xv % &pb).try_into().ok()?).sqrt()?;
        let mut s = BigInt::from(s0.value());
        let two_inv = zmod::inverse(&BigInt::from(2), &modulus)?;
        for _ in 0..iterations {
            let inv = zmod::inverse(&s, &modulus)?;
            s = ((&s + &xv * inv) * &two_inv).mod_floor(&modulus);
        }
        lifted_roots.push(r);
        lifted_sqrts.push(s);
    }

    let basis = zmod::lagrange_basis(&lifted_roots, &modulus)?;
    let bound = ((&modulus - BigInt::one()) / BigInt::from(2)).sqrt();
    let d = roots.len();
    let combos = 1u64 << (d - 1);
    for mask in 0..combos {
        let mut coeffs = vec![BigInt::zero(); d];
        for (i, (s, b)) in lifted_sqrts.iter().zip(&basis).enumerate() {
            let s = if i > 0 && (mask >> (i - 1)) & 1 == 1 {
                (&modulus - s).mod_floor(&modulus)
            } else {
                s.clone()
            };
            for (c, bc) in coeffs.iter_mut().zip(b) {
                *c = (&*c + &s * bc).mod_floor(&modulus);
            }
        }
        let rec: Option<Vec<Rational>> = coeffs
            .iter()
            .map(|c| rational_reconstruction(c, &modulus, &bound))
            .collect();
        if let Some(rc) = rec {
            let cand = NumberFieldElement::from_coords(&x.ctx, &rc);
            if cand.square() == *x {
                return Some(canonical_sign(cand));
            }
        }
    }
    None
}

/// Squareness with a bound on the number of interleaved rounds.
pub fn nf_sqrt_bounded(x: &NumberFieldElement, rounds: usize) -> Result<SquareVerdict, ArithError> {
    if x.is_zero() {
        return Ok(SquareVerdict::Square(x.clone()));
    }
    let denom = x.denominator().lcm(
        &x.ctx
            .modulus
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom())),
    );
    let mut scan = PrimeScan::new();
    for round in 0..rounds {
        for _ in 0..4 {
            if let ScanOutcome::Certificate(c) = scan.step(x, &denom) {
                return Ok(SquareVerdict::NonSquare(c));
            }
        }
        if let Some((p, roots)) = &scan.lifting {
            let n = 8u32 << round.min(12);
            if let Some(r) = lift_and_reconstruct(x, *p, roots, n) {
                return Ok(SquareVerdict::Square(r));
            }
        }
    }
    Err(ArithError::PrecisionExhausted(rounds))
}

/// Decides whether `x` is a square, with a root or a non-residue certificate.
pub fn nf_is_square(x: &NumberFieldElement) -> SquareVerdict {
    let mut rounds = 16;
    loop {
        match nf_sqrt_bounded(x, rounds) {
            Ok(v) => return v,
            Err(_) => rounds *= 2,
        }
    }
}

/// Square root with positive leading nonzero coordinate, if `x` is a square.
pub fn nf_sqrt(x: &NumberFieldElement) -> Option<NumberFieldElement> {
    match nf_is_square(x) {
        SquareVerdict::Square(r) => Some(r),
        SquareVerdict::NonSquare(_) => None,
    }
}
