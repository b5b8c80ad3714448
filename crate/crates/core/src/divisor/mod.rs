//! Places, divisors and functions on a split hyperelliptic model.
//!
//! An affine place is a pair `(u, v)` with `u` monic irreducible and `v^2 = f mod u`;
//! it stands for the Galois orbit of the points `(alpha, v(alpha))`, `u(alpha) = 0`.
//! When `f` is not a square modulo `u` the two points over each root of `u` are
//! conjugate and form a single inert place of degree `2 deg u`.

mod field;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use field::CurveField;
pub use text::{parse_divisor, ParseDivisorError};

use crate::arith::{Field, FiniteExtension};
use crate::curve::{CurveModel, Point, Sign};
use crate::linalg::solve;
use crate::poly::{minpoly_ext, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("expected an effective divisor of degree {expected}, got degree {got}")]
    WrongDegree { expected: i64, got: i64 },
    #[error("divisor is not effective")]
    NotEffective,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place<F: Field> {
    /// `(u, v)`; ramified exactly when `v = 0`.
    Affine {
        u: Poly<F>,
        v: Poly<F>,
    },
    /// Degree `2 deg u`; `f` is a non-square modulo `u`.
    Inert {
        u: Poly<F>,
    },
    Infinity(Sign),
}

impl<F: Field> Place<F> {
    pub fn degree(&self) -> usize {
        match self {
            Place::Affine { u, .. } => u.deg_usize(),
            Place::Inert { u } => 2 * u.deg_usize(),
            Place::Infinity(_) => 1,
        }
    }

    pub fn u(&self) -> Option<&Poly<F>> {
        match self {
            Place::Affine { u, .. } | Place::Inert { u } => Some(u),
            Place::Infinity(_) => None,
        }
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, Place::Affine { v, .. } if v.is_zero())
    }

    /// Image under the hyperelliptic involution.
    pub fn conjugate(&self) -> Self {
        match self {
            Place::Affine { u, v } => Place::Affine {
                u: u.clone(),
                v: v.neg(),
            },
            Place::Inert { u } => Place::Inert { u: u.clone() },
            Place::Infinity(s) => Place::Infinity(s.flip()),
        }
    }

    /// The degree-1 place of a rational point.
    pub fn from_point(p: &Point<F>) -> Self {
        match p {
            Point::Infinity(s) => Place::Infinity(*s),
            Point::Affine { x, y } => Place::Affine {
                u: Poly::linear_root(x),
                v: Poly::constant(&x.context(), y.clone()),
            },
        }
    }

    /// The point of a degree-1 place.
    pub fn to_point(&self) -> Option<Point<F>> {
        match self {
            Place::Infinity(s) => Some(Point::Infinity(*s)),
            Place::Affine { u, v } if u.deg() == 1 => Some(Point::Affine {
                x: u.coeff(0).neg(),
                y: v.coeff(0),
            }),
            _ => None,
        }
    }
}

/// A finite formal sum of places with nonzero integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor<F: Field> {
    terms: BTreeMap<Place<F>, i64>,
}

impl<F: Field> Default for Divisor<F> {
    fn default() -> Self {
        Divisor {
            terms: BTreeMap::new(),
        }
    }
}

impl<F: Field> Divisor<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_place(p: Place<F>, k: i64) -> Self {
        let mut d = Self::zero();
        d.add_place(p, k);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place<F>, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, k) in terms {
            d.add_place(p, k);
        }
        d
    }

    pub fn inf(s: Sign) -> Self {
        Self::from_place(Place::Infinity(s), 1)
    }

    pub fn add_place(&mut self, p: Place<F>, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(p).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (p, k) in &o.terms {
            d.add_place(p.clone(), *k);
        }
        d
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Divisor {
            terms: self.terms.iter().map(|(p, k)| (p.clone(), k * n)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&k| k > 0)
    }

    pub fn multiplicity(&self, p: &Place<F>) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn inf_multiplicity(&self, s: Sign) -> i64 {
        self.multiplicity(&Place::Infinity(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place<F>, i64)> {
        self.terms.iter().map(|(p, k)| (p, *k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct `u` polynomials of the affine support.
    pub fn affine_us(&self) -> Vec<Poly<F>> {
        let mut us: Vec<Poly<F>> = self.terms.keys().filter_map(|p| p.u().cloned()).collect();
        us.dedup();
        us.sort();
        us.dedup();
        us
    }

    /// Positive and negative parts, `D = P - N` with `P, N` effective.
    pub fn split(&self) -> (Self, Self) {
        let mut pos = Self::zero();
        let mut neg = Self::zero();
        for (p, k) in &self.terms {
            if *k > 0 {
                pos.add_place(p.clone(), *k);
            } else {
                neg.add_place(p.clone(), -k);
            }
        }
        (pos, neg)
    }

    /// Whether `self >= o` place by place.
    pub fn dominates(&self, o: &Self) -> bool {
        self.sub(o).is_effective() || self == o
    }
}

/// Image of a divisor under the hyperelliptic involution.
pub fn involution<F: Field>(d: &Divisor<F>) -> Divisor<F> {
    Divisor::from_terms(d.iter().map(|(p, k)| (p.conjugate(), k)))
}

/// True iff `d` is a single affine place of degree 3.
pub fn is_irreducible_degree3<F: Field>(d: &Divisor<F>) -> Result<bool, DivisorError> {
    if !d.is_effective() && !d.is_zero() {
        return Err(DivisorError::NotEffective);
    }
    if d.degree() != 3 {
        return Err(DivisorError::WrongDegree {
            expected: 3,
            got: d.degree(),
        });
    }
    Ok(d.len() == 1 && d.iter().all(|(p, k)| k == 1 && matches!(p, Place::Affine { .. })))
}

/// A function `(a(x) + b(x) y) / c(x)`, normalized with `c` monic and no common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFunction<F: Field> {
    a: Poly<F>,
    b: Poly<F>,
    c: Poly<F>,
}

impl<F: Field> CurveFunction<F> {
    pub fn new(a: Poly<F>, b: Poly<F>, c: Poly<F>) -> Self {
        assert!(!c.is_zero(), "denominator must be nonzero");
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = if g.deg() > 0 {
            (
                a.div_exact(&g).unwrap(),
                b.div_exact(&g).unwrap(),
                c.div_exact(&g).unwrap(),
            )
        } else {
            (a, b, c)
        };
        let lc = c.lc().inv().expect("nonzero");
        a = a.scale(&lc);
        b = b.scale(&lc);
        c = c.scale(&lc);
        CurveFunction { a, b, c }
    }

    pub fn from_poly(a: Poly<F>) -> Self {
        let ctx = a.ctx().clone();
        Self::new(a, Poly::zero(&ctx), Poly::one(&ctx))
    }

    pub fn constant(ctx: &F::Ctx, a: F) -> Self {
        Self::from_poly(Poly::constant(ctx, a))
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Self::from_poly(Poly::x(ctx))
    }

    pub fn y(ctx: &F::Ctx) -> Self {
        Self::new(Poly::zero(ctx), Poly::one(ctx), Poly::one(ctx))
    }

    pub fn a(&self) -> &Poly<F> {
        &self.a
    }

    pub fn b(&self) -> &Poly<F> {
        &self.b
    }

    pub fn c(&self) -> &Poly<F> {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.deg() <= 0 && self.c.deg() == 0
    }

    pub fn mul(&self, o: &Self, f: &Poly<F>) -> Self {
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(f));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Self::new(a, b, self.c.mul(&o.c))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.a.scale(s), self.b.scale(s), self.c.clone())
    }

    /// `1 / self = c (a - b y) / (a^2 - b^2 f)`.
    pub fn inv(&self, f: &Poly<F>) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_numerator(f);
        Some(Self::new(self.c.mul(&self.a), self.c.mul(&self.b).neg(), n))
    }

    /// `a^2 - b^2 f`, the norm of the numerator.
    pub fn norm_numerator(&self, f: &Poly<F>) -> Poly<F> {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(f))
    }

    pub fn eval(&self, x: &F, y: &F) -> Option<F> {
        let num = self.a.eval(x).add(&self.b.eval(x).mul(y));
        num.div(&self.c.eval(x))
    }
}

impl<F: Field> fmt::Display for CurveFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => format!("{}", self.a),
            (true, false) => format!("({})*y", self.b),
            (false, false) => format!("{} + ({})*y", self.a, self.b),
        };
        if self.c.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.c)
        }
    }
}

/// Exponent of `w` in `a`, `None` for `a = 0`.
pub(crate) fn val_in<F: Field>(a: &Poly<F>, w: &Poly<F>) -> Option<usize> {
    (!a.is_zero()).then(|| a.valuation(w))
}

/// Power series `s(t) = sqrt(t^(2g+2) f(1/t))` with `s(0) = 1`, to `n` terms.
pub fn infinity_series<F: Field>(c: &CurveModel<F>, n: usize) -> Vec<F> {
    let ctx = c.ctx().clone();
    let f = c.f();
    let deg = f.deg_usize();
    let r = |k: usize| if k <= deg { f.coeff(deg - k) } else { F::zero(&ctx) };
    let two_inv = F::from_i64(&ctx, 2).inv().expect("odd characteristic");
    let mut s: Vec<F> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            s.push(F::one(&ctx));
            continue;
        }
        let mut acc = r(k);
        for i in 1..k {
            acc = acc.sub(&s[i].mul(&s[k - i]));
        }
        s.push(acc.mul(&two_inv));
    }
    s
}

/// The places over a monic irreducible `w`.
pub fn places_over<F: CurveField>(c: &CurveModel<F>, w: &Poly<F>) -> Vec<Place<F>> {
    places_over_with_root(c, w, None)
}

/// A square root of `f` mod `w` read off from `a + b y` when `w` divides its norm:
/// `a^2 = b^2 f` mod `w`, so `a/b` works whenever `b` is a unit mod `w`.
fn residue_root_from<F: CurveField>(
    c: &CurveModel<F>,
    a: &Poly<F>,
    b: &Poly<F>,
    w: &Poly<F>,
) -> Option<Poly<F>> {
    let ib = b.invmod(w)?;
    let n = a.mul(a).sub(&b.mul(b).mul(c.f()));
    if !n.rem(w).is_zero() || c.f().rem(w).is_zero() {
        return None;
    }
    Some(a.mul(&ib).rem(w))
}

/// Like [`places_over`], with an optional known square root of `f` mod `w`.
fn places_over_with_root<F: CurveField>(
    c: &CurveModel<F>,
    w: &Poly<F>,
    root: Option<Poly<F>>,
) -> Vec<Place<F>> {
    let fw = c.f().rem(w);
    if fw.is_zero() {
        return vec![Place::Affine {
            u: w.clone(),
            v: Poly::zero(w.ctx()),
        }];
    }
    match root.or_else(|| F::residue_sqrt(&fw, w)) {
        None => vec![Place::Inert { u: w.clone() }],
        Some(v) => {
            let mut out = vec![
                Place::Affine {
                    u: w.clone(),
                    v: v.clone(),
                },
                Place::Affine {
                    u: w.clone(),
                    v: v.neg(),
                },
            ];
            out.sort();
            out
        }
    }
}

/// Valuations of `a + b y` at the places over `w`.
fn numerator_valuations<F: CurveField>(
    c: &CurveModel<F>,
    a: &Poly<F>,
    b: &Poly<F>,
    w: &Poly<F>,
    witness: Option<(&Poly<F>, &Poly<F>)>,
) -> Vec<(Place<F>, i64)> {
    let va = val_in(a, w);
    let vb = val_in(b, w);
    let m = match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => unreachable!("nonzero function"),
    };
    let wm = w.pow(m as u32);
    let a1 = a.div_exact(&wm).expect("w^m divides a");
    let b1 = b.div_exact(&wm).expect("w^m divides b");
    let n1 = a1.mul(&a1).sub(&b1.mul(&b1).mul(c.f()));
    let root = residue_root_from(c, &a1, &b1, w)
        .or_else(|| witness.and_then(|(wa, wb)| residue_root_from(c, wa, wb, w)));
    places_over_with_root(c, w, root)
        .into_iter()
        .map(|p| {
            let v = match &p {
                Place::Affine { v, .. } if v.is_zero() => {
                    let ra = va.map(|x| 2 * x).unwrap_or(usize::MAX);
                    let rb = vb.map(|x| 2 * x + 1).unwrap_or(usize::MAX);
                    ra.min(rb)
                }
                Place::Inert { .. } => m,
                Place::Affine { v, .. } => {
                    if a1.add(&b1.mul(v)).rem(w).is_zero() {
                        m + n1.valuation(w)
                    } else {
                        m
                    }
                }
                Place::Infinity(_) => unreachable!(),
            };
            (p, v as i64)
        })
        .collect()
}

/// Valuations of `a + b y` at `inf+` and `inf-`.
pub fn infinity_valuations<F: Field>(c: &CurveModel<F>, a: &Poly<F>, b: &Poly<F>) -> (i64, i64) {
    let g = c.genus() as i64;
    if b.is_zero() {
        return (-a.deg() as i64, -a.deg() as i64);
    }
    if a.is_zero() {
        let v = -(b.deg() as i64) - g - 1;
        return (v, v);
    }
    let ctx = c.ctx().clone();
    let n = a.mul(a).sub(&b.mul(b).mul(c.f()));
    let dn = n.deg() as i64;
    let d = (a.deg() as i64).max(b.deg() as i64 + g + 1);
    let top = -dn + d;
    let s = infinity_series(c, (2 * d - dn + 2).max(1) as usize);
    let coeff = |e: i64| {
        let mut acc = if -e >= 0 && -e <= a.deg() as i64 {
            a.coeff((-e) as usize)
        } else {
            F::zero(&ctx)
        };
        for j in 0..=b.deg_usize() {
            let i = e + j as i64 + g + 1;
            if i >= 0 && (i as usize) < s.len() {
                acc = acc.add(&b.coeff(j).mul(&s[i as usize]));
            }
        }
        acc
    };
    let vp = (-d..=top)
        .find(|&e| !coeff(e).is_zero())
        .expect("valuations at infinity sum to -deg N");
    (vp, -dn - vp)
}

fn push_poly_places<F: CurveField>(
    c: &CurveModel<F>,
    a: &Poly<F>,
    b: &Poly<F>,
    ws: &[Poly<F>],
    sign: i64,
    witness: Option<(&Poly<F>, &Poly<F>)>,
    out: &mut Divisor<F>,
) {
    for w in ws {
        for (p, v) in numerator_valuations(c, a, b, w, witness) {
            out.add_place(p, sign * v);
        }
    }
}

/// Monic irreducible factors of `n`: first those among `hints`, then the factorization
/// of what is left.
fn factor_with_hints<F: CurveField>(n: &Poly<F>, hints: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    for h in hints {
        if h.deg() < 1 {
            continue;
        }
        let (k, r) = rest.strip(h);
        if k > 0 {
            out.push(h.clone());
            rest = r;
        }
    }
    for (w, _) in F::factor_monic(&rest) {
        out.push(w);
    }
    out.sort();
    out.dedup();
    out
}

/// `div(fn)`. Each element of `hints` must be monic irreducible; they are tried before
/// factoring the norm, which keeps the factorization small when the support is known.
pub fn divisor_of_function_with_hints<F: CurveField>(
    c: &CurveModel<F>,
    fun: &CurveFunction<F>,
    hints: &[Poly<F>],
) -> Result<Divisor<F>, DivisorError> {
    if fun.is_zero() {
        return Err(DivisorError::ZeroFunction);
    }
    let ctx = c.ctx().clone();
    let mut out = Divisor::zero();
    let n = fun.norm_numerator(c.f());
    let ws = factor_with_hints(&n, hints);
    push_poly_places(c, &fun.a, &fun.b, &ws, 1, None, &mut out);
    let cs = factor_with_hints(&fun.c, hints);
    push_poly_places(
        c,
        &fun.c,
        &Poly::zero(&ctx),
        &cs,
        -1,
        Some((&fun.a, &fun.b)),
        &mut out,
    );
    let (vp, vm) = infinity_valuations(c, &fun.a, &fun.b);
    let dc = fun.c.deg() as i64;
    out.add_place(Place::Infinity(Sign::Plus), vp + dc);
    out.add_place(Place::Infinity(Sign::Minus), vm + dc);
    Ok(out)
}

pub fn divisor_of_function<F: CurveField>(
    c: &CurveModel<F>,
    fun: &CurveFunction<F>,
) -> Result<Divisor<F>, DivisorError> {
    divisor_of_function_with_hints(c, fun, &[])
}

/// The place of a point whose coordinates live in a finite extension of the base field.
///
/// `u` is the minimal polynomial of `x`. When `y` is a polynomial in `x`, the place is
/// split (or ramified) with that `v`; otherwise it is the inert place over `u`.
pub fn place_from_point<E>(c: &CurveModel<E::Base>, x: &E, y: &E) -> Result<Place<E::Base>, DivisorError>
where
    E: FiniteExtension,
    E::Base: CurveField,
{
    let ctx = x.context();
    let embed = |a: &E::Base| E::embed(&ctx, a);
    let fx = c.f().eval_with(x, embed);
    if y.square() != fx {
        return Err(DivisorError::NotOnCurve);
    }
    let u = minpoly_ext(x);
    let bctx = E::base_ctx(&ctx);
    let d = u.deg_usize();
    let n = E::degree(&ctx);
    // columns: coordinates of 1, x, ..., x^(d-1)
    let mut powers = vec![E::one(&ctx).to_coords()];
    let mut cur = E::one(&ctx);
    for _ in 1..d {
        cur = cur.mul(x);
        powers.push(cur.to_coords());
    }
    let rows: Vec<Vec<E::Base>> = (0..n)
        .map(|i| powers.iter().map(|p| p[i].clone()).collect())
        .collect();
    match solve(&bctx, &rows, &y.to_coords(), d) {
        Some(v) => Ok(Place::Affine {
            u,
            v: Poly::new(&bctx, v),
        }),
        None => Ok(Place::Inert { u }),
    }
}
