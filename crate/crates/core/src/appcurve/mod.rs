//! The five-squares curve `S`:
//!
//! ```text
//! a^2 - 2b^2 + c^2 = 0,  b^2 - 2c^2 + d^2 = 0,  c^2 - 2d^2 + e^2 = 0
//! ```
//!
//! and its degree-2 map to `C: y^2 = x^8 + 14x^4 + 1`,
//! `(x, y) = ((e - c)/(a - c), 4bd(a - 2c + e)^2/(a - c)^4)`. Along the map,
//! `q_minus(x) = x^4 - 2x^3 + 2x^2 + 2x + 1` is the square of `2b(a - 2c + e)/(a - c)^2`,
//! so a point of `C` over `K` lifts to `K` exactly when `q_minus(x)` is a square in `K`.

mod gjx;
mod identity;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{
    nf_is_square, ArithError, Field, FiniteField, NfCtx, NonResidueCertificate, NumberFieldElement, Rational,
    SquareVerdict,
};
use crate::divisor::Place;
use crate::linalg::solve;
use crate::par::Exec;
use crate::poly::{minpoly_nf, Poly};

pub use gjx::{gjx_condition, gjx_scan, GjxProgression, GjxRecord};
pub use identity::{verify_quotient_identity, QuotientIdentityReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AppCurveError {
    #[error("coordinates do not satisfy the three quadrics")]
    NotOnS,
    #[error("all coordinates are zero")]
    AllZero,
    #[error("the map to C is undefined where a = c")]
    MapUndefined,
    #[error("x does not generate the field of definition")]
    NotGenerating,
    #[error("base field has degree {0}, at most 3 is supported")]
    DegreeTooLarge(usize),
    #[error("only affine points of C with a rational x-polynomial pull back")]
    NotAffine,
    #[error("no candidate primitive element for the preimage field")]
    NoPrimitiveElement,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A point `(a : b : c : d : e)` of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoint<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub e: F,
}

impl<F: Field> SPoint<F> {
    pub fn new(a: F, b: F, c: F, d: F, e: F) -> Result<Self, AppCurveError> {
        let p = SPoint { a, b, c, d, e };
        if p.coords().iter().all(|x| x.is_zero()) {
            return Err(AppCurveError::AllZero);
        }
        if p.quadrics().iter().any(|q| !q.is_zero()) {
            return Err(AppCurveError::NotOnS);
        }
        Ok(p)
    }

    pub fn coords(&self) -> [F; 5] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        ]
    }

    /// Values of the three quadrics at the point.
    pub fn quadrics(&self) -> [F; 3] {
        let s = self.coords().map(|x| x.square());
        let two = |x: &F| x.add(x);
        [
            s[0].sub(&two(&s[1])).add(&s[2]),
            s[1].sub(&two(&s[2])).add(&s[3]),
            s[2].sub(&two(&s[3])).add(&s[4]),
        ]
    }

    /// `(a, -b, c, -d, e)`, the deck involution of the map to `C`.
    pub fn involution(&self) -> Self {
        SPoint {
            a: self.a.clone(),
            b: self.b.neg(),
            c: self.c.clone(),
            d: self.d.neg(),
            e: self.e.clone(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let [a, b, c, d, e] = self.coords().map(|x| x.mul(s));
        SPoint { a, b, c, d, e }
    }

    /// Equality as projective points.
    pub fn is_proportional(&self, other: &Self) -> bool {
        let (u, v) = (self.coords(), other.coords());
        (0..5).all(|i| (i + 1..5).all(|j| u[i].mul(&v[j]) == u[j].mul(&v[i])))
    }
}

/// `x^8 + 14x^4 + 1`.
pub fn curve_rhs<F: Field>(x: &F) -> F {
    let ctx = x.context();
    let x4 = x.square().square();
    x4.square()
        .add(&x4.mul(&F::from_i64(&ctx, 14)))
        .add(&F::one(&ctx))
}

/// `x^4 - 2x^3 + 2x^2 + 2x + 1`.
pub fn q_minus<F: Field>(x: &F) -> F {
    let ctx = x.context();
    let k = |n| F::from_i64(&ctx, n);
    [1, -2, 2, 2, 1]
        .iter()
        .fold(F::zero(&ctx), |acc, &c| acc.mul(x).add(&k(c)))
}

/// `x^4 + 2x^3 + 2x^2 - 2x + 1 = q_minus(-x)`.
pub fn q_plus<F: Field>(x: &F) -> F {
    q_minus(&x.neg())
}

/// Image on `C`, checked against `y^2 = x^8 + 14x^4 + 1`.
pub fn map_to_c<F: Field>(p: &SPoint<F>) -> Result<(F, F), AppCurveError> {
    let ac = p.a.sub(&p.c);
    let inv = ac.inv().ok_or(AppCurveError::MapUndefined)?;
    let x = p.e.sub(&p.c).mul(&inv);
    let m = p.a.sub(&p.c).sub(&p.c).add(&p.e);
    let four = F::from_i64(&p.a.context(), 4);
    let y = four
        .mul(&p.b)
        .mul(&p.d)
        .mul(&m.square())
        .mul(&inv.square().square());
    if y.square() != curve_rhs(&x) {
        return Err(AppCurveError::NotOnS);
    }
    Ok((x, y))
}

/// `2b(a - 2c + e)/(a - c)^2`, whose square is `q_minus(x)` at the image.
pub fn q_minus_root<F: Field>(p: &SPoint<F>) -> Result<F, AppCurveError> {
    let ac = p.a.sub(&p.c);
    let inv = ac.inv().ok_or(AppCurveError::MapUndefined)?;
    let m = p.a.sub(&p.c).sub(&p.c).add(&p.e);
    Ok(p.b.add(&p.b).mul(&m).mul(&inv.square()))
}

/// The canonical lift of an affine point `(x, y)` of `C`, given `b` with `b^2 = q_minus(x)`.
fn lift_with_b<F: Field>(x: &F, y: &F, b: &F) -> Result<SPoint<F>, AppCurveError> {
    let ctx = x.context();
    let k = |n| F::from_i64(&ctx, n);
    let x2 = x.square();
    let two_x = x.add(x);
    let a = x2.sub(&two_x).sub(&k(1));
    let c = x2.add(&k(1));
    let e = k(1).sub(&x2).sub(&two_x);
    let d = y.div(b).ok_or(AppCurveError::MapUndefined)?;
    SPoint::new(a, b.clone(), c, d, e)
}

/// Every point of `S` over a finite field, first nonzero coordinate 1.
pub fn s_points<F: FiniteField>(ctx: &F::Ctx) -> Vec<SPoint<F>> {
    let elems = F::elements(ctx);
    let q = elems.len();
    let mut out = Vec::new();
    for lead in 0..5 {
        let free = 4 - lead;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = vec![F::zero(ctx); 5];
            v[lead] = F::one(ctx);
            let mut r = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[r % q].clone();
                r /= q;
            }
            let [a, b, c, d, e]: [F; 5] = v.try_into().expect("five coordinates");
            if let Ok(p) = SPoint::new(a, b, c, d, e) {
                out.push(p);
            }
        }
    }
    out
}

/// Outcome of checking the quotient map on seeded random points of `S(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteFieldMapCheck {
    pub prime: u64,
    pub s_points: usize,
    pub samples: usize,
    pub failures: usize,
}

/// Samples points of `S(F_p)` with `a != c` and checks the image and the square identity.
pub fn check_map_mod_p(p: u64, samples: usize, seed: u64) -> FiniteFieldMapCheck {
    let pts: Vec<_> = s_points::<crate::arith::Fp>(&p)
        .into_iter()
        .filter(|s| s.a != s.c)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut failures = 0;
    for _ in 0..samples {
        let s = &pts[rng.gen_range(0..pts.len())];
        let ok = match (map_to_c(s), q_minus_root(s)) {
            (Ok((x, _)), Ok(r)) => r.square() == q_minus(&x),
            _ => false,
        };
        failures += usize::from(!ok);
    }
    FiniteFieldMapCheck {
        prime: p,
        s_points: pts.len(),
        samples,
        failures,
    }
}

/// Lifts of a point of `C` over a number field `K` of degree at most 3.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub place: Place<Rational>,
    pub base_degree: usize,
    /// `q_minus(x)` in `K = Q(x)`.
    pub q_minus_value: NumberFieldElement,
    pub verdict: SquareVerdict,
    /// `gamma` in `K` with `gamma * q_minus(x)` a square; the preimage field is `K(sqrt(gamma))`.
    pub square_class: NumberFieldElement,
    pub field: Arc<NfCtx>,
    /// `(x, y)` embedded in the preimage field.
    pub image: (NumberFieldElement, NumberFieldElement),
    pub preimage: SPoint<NumberFieldElement>,
}

impl Pullback {
    pub fn field_degree(&self) -> usize {
        self.field.degree()
    }

    /// True when the preimage is defined over `K` itself.
    pub fn lifts_to_base(&self) -> bool {
        self.field_degree() == self.base_degree
    }

    pub fn summary(&self) -> PullbackSummary {
        PullbackSummary {
            place: self.place.to_string(),
            base_degree: self.base_degree,
            q_minus_value: self.q_minus_value.to_string(),
            q_minus_is_square: self.verdict.is_square(),
            certificate: match &self.verdict {
                SquareVerdict::NonSquare(c) => Some(c.clone()),
                SquareVerdict::Square(_) => None,
            },
            field_polynomial: self.field.modulus().to_string().replace('x', self.field.name()),
            field_degree: self.field_degree(),
            coordinates: self.preimage.coords().map(|c| c.to_string()).to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackSummary {
    pub place: String,
    pub base_degree: usize,
    pub q_minus_value: String,
    pub q_minus_is_square: bool,
    pub certificate: Option<NonResidueCertificate>,
    pub field_polynomial: String,
    pub field_degree: usize,
    pub coordinates: Vec<String>,
}

/// `P` with `P(c) = z`, when `c` generates the field.
fn express_in(c: &NumberFieldElement, z: &NumberFieldElement) -> Option<Poly<Rational>> {
    let n = c.field().degree();
    let mut powers = Vec::with_capacity(n);
    let mut cur = NumberFieldElement::one(c.field());
    for _ in 0..n {
        powers.push(cur.coords().to_vec());
        cur = cur.mul(c);
    }
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| powers.iter().map(|p| p[i].clone()).collect())
        .collect();
    solve(&(), &rows, z.coords(), n).map(|v| Poly::new(&(), v))
}

/// Largest numerator or denominator among the coefficients of the primitive integer form.
fn height(p: &Poly<Rational>) -> BigInt {
    p.primitive_part()
        .coeffs()
        .iter()
        .map(|a| a.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Candidates `gamma` for the square class of `q_minus(x)`. The pullback keeps the one whose
/// field polynomial has the least height, ties going to the smaller polynomial.
fn square_class_candidates(x: &NumberFieldElement, q: &NumberFieldElement) -> Vec<NumberFieldElement> {
    let ctx = x.field();
    let one = NumberFieldElement::one(ctx);
    let shifts = [x.clone(), x.add(&one), x.sub(&one)];
    let mut out = Vec::new();
    for s in &shifts {
        out.push(s.clone());
        out.push(s.neg());
        if let Some(i) = s.inv() {
            out.push(i.neg());
            out.push(i);
        }
    }
    out.push(q.clone());
    for s in &shifts {
        if let Some(i) = s.inv() {
            out.push(q.mul(&i.square()));
        }
        out.push(q.mul(&s.square()));
    }
    out
}

/// Minimal field of definition of a preimage on `S` of an affine point of `C`
/// whose `x`-coordinate generates a number field of degree at most 3.
pub fn pullback(place: &Place<Rational>) -> Result<Pullback, AppCurveError> {
    let (u, v) = match place {
        Place::Affine { u, v } => (u, v),
        Place::Inert { .. } => return Err(AppCurveError::NotGenerating),
        Place::Infinity(_) => return Err(AppCurveError::NotAffine),
    };
    let n = u.deg_usize();
    if n > 3 {
        return Err(AppCurveError::DegreeTooLarge(n));
    }
    let k = NfCtx::new(u.clone(), "theta")?;
    let x = k.generator();
    let y = NumberFieldElement::from_poly(&k, v);
    let q = q_minus(&x);
    let verdict = nf_is_square(&q);

    if let SquareVerdict::Square(b) = &verdict {
        let preimage = lift_with_b(&x, &y, b)?;
        return Ok(Pullback {
            place: place.clone(),
            base_degree: n,
            q_minus_value: q.clone(),
            verdict: verdict.clone(),
            square_class: NumberFieldElement::one(&k),
            field: k.clone(),
            image: (x, y),
            preimage,
        });
    }

    // K(sqrt(q)) = Q(alpha) with alpha^2 = gamma, gamma a generator of K in the class of q
    let mut best: Option<(BigInt, NumberFieldElement, NumberFieldElement, Poly<Rational>)> = None;
    for gamma in square_class_candidates(&x, &q) {
        let m = minpoly_nf(&gamma);
        if m.deg_usize() != n {
            continue;
        }
        let Some(ratio) = q.div(&gamma) else { continue };
        let Some(s) = nf_is_square(&ratio).root().cloned() else {
            continue;
        };
        let t2 = Poly::monomial(<Rational as One>::one(), 2);
        let field_poly = m.compose(&t2);
        let h = height(&field_poly);
        let better = best
            .as_ref()
            .is_none_or(|(bh, _, _, bp)| (&h, &field_poly) < (bh, bp));
        if better {
            best = Some((h, gamma, s, field_poly));
        }
    }
    let (_, gamma, s, field_poly) = best.ok_or(AppCurveError::NoPrimitiveElement)?;
    let l = NfCtx::new(field_poly, "phi")?;
    let alpha = l.generator();
    let t2 = Poly::monomial(<Rational as One>::one(), 2);
    let embed = |z: &NumberFieldElement| -> Result<NumberFieldElement, AppCurveError> {
        let p = express_in(&gamma, z).ok_or(AppCurveError::NotGenerating)?;
        Ok(NumberFieldElement::from_poly(&l, &p.compose(&t2)))
    };
    let (xl, yl) = (embed(&x)?, embed(&y)?);
    let b = alpha.mul(&embed(&s)?);
    let preimage = lift_with_b(&xl, &yl, &b)?;
    Ok(Pullback {
        place: place.clone(),
        base_degree: n,
        q_minus_value: q,
        verdict,
        square_class: gamma,
        field: l,
        image: (xl, yl),
        preimage,
    })
}

/// Pullback of the point `(x, y)`, where `x` must generate its field.
pub fn pullback_point(x: &NumberFieldElement, y: &NumberFieldElement) -> Result<Pullback, AppCurveError> {
    if minpoly_nf(x).deg_usize() != x.field().degree() {
        return Err(AppCurveError::NotGenerating);
    }
    let c = crate::curve::octic_curve();
    let place = crate::divisor::place_from_point(&c, x, y).map_err(|_| AppCurveError::NotOnS)?;
    pullback(&place)
}

/// Pullbacks of many places, in input order.
pub fn pullback_all(places: &[Place<Rational>], exec: Exec) -> Vec<Result<Pullback, AppCurveError>> {
    exec.map(places, pullback)
}

/// Common denominator of a list of rationals, with the sign of the first nonzero entry.
pub(crate) fn clear_denominators(xs: &[Rational]) -> Vec<BigInt> {
    let l = xs.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let ints: Vec<BigInt> = xs
        .iter()
        .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|a| a / &g).collect()
}
