//! Split hyperelliptic models `y^2 = f(x)` with `f` monic of degree `2g + 2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, rat, Field, FiniteField, Fp, Fq, FqCtx, Rational};
use crate::par::Exec;
use crate::poly::Poly;

/// Largest field size accepted by exhaustive enumeration.
pub const ENUMERATION_BUDGET: u64 = 15_625;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("f must be monic")]
    NotMonic,
    #[error("f must have even degree, got {0}")]
    OddDegree(usize),
    #[error("f must have degree at least 6, got {0}")]
    DegreeTooSmall(usize),
    #[error("f is not separable")]
    Inseparable,
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("{0} does not have good reduction at this prime")]
    BadReduction(u64),
    #[error("field of size {0} exceeds the enumeration budget")]
    BudgetExceeded(u64),
    #[error("expected {expected} point counts, got {got}")]
    CountLength { expected: usize, got: usize },
    #[error("count N_{k} = {n} violates the Weil bound")]
    WeilBound { k: usize, n: u64 },
    #[error("point counts do not come from a curve (non-integral L-polynomial)")]
    InconsistentCounts,
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
}

/// The model `y^2 = f(x)` of genus `g = deg(f)/2 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel<F: Field> {
    f: Poly<F>,
    genus: usize,
}

impl<F: Field> CurveModel<F> {
    pub fn new(f: Poly<F>) -> Result<Self, CurveError> {
        let Some(n) = f.degree() else {
            return Err(CurveError::DegreeTooSmall(0));
        };
        if !f.is_monic() {
            return Err(CurveError::NotMonic);
        }
        if n % 2 == 1 {
            return Err(CurveError::OddDegree(n));
        }
        if n < 6 {
            return Err(CurveError::DegreeTooSmall(n));
        }
        if !f.is_squarefree() {
            return Err(CurveError::Inseparable);
        }
        Ok(CurveModel { f, genus: n / 2 - 1 })
    }

    pub fn f(&self) -> &Poly<F> {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.f.ctx()
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity(_) => true,
            Point::Affine { x, y } => y.square() == self.f.eval(x),
        }
    }
}

/// The curve `y^2 = x^8 + 14x^4 + 1` over Q.
pub fn octic_curve() -> CurveModel<Rational> {
    CurveModel::new(Poly::from_i64s(&(), &[1, 0, 0, 0, 14, 0, 0, 0, 1])).expect("valid model")
}

/// The two quartic factors of `f`, as `(q_plus, q_minus)` with
/// `q_minus = x^4 - 2x^3 + 2x^2 + 2x + 1`.
pub fn quartic_factors() -> (Poly<Rational>, Poly<Rational>) {
    (
        Poly::from_i64s(&(), &[1, -2, 2, 2, 1]),
        Poly::from_i64s(&(), &[1, 2, 2, -2, 1]),
    )
}

impl CurveModel<Rational> {
    /// Coefficients of `f` reduced mod `p`, when all are p-integral.
    fn reduce_poly(&self, p: u64) -> Option<Poly<Fp>> {
        let c: Option<Vec<Fp>> = self.f.coeffs().iter().map(|a| Fp::from_rational(&p, a)).collect();
        c.map(|c| Poly::new(&p, c))
    }

    pub fn reduce_mod(&self, p: u64) -> Result<CurveModel<Fp>, CurveError> {
        if !has_good_reduction(self, p)? {
            return Err(CurveError::BadReduction(p));
        }
        CurveModel::new(self.reduce_poly(p).expect("p-integral"))
    }
}

impl CurveModel<Fp> {
    /// Base change to F_{p^k} with the tabulated defining polynomial.
    pub fn extend(&self, k: usize) -> Result<CurveModel<Fq>, CurveError> {
        let ctx = FqCtx::conway(*self.ctx(), k)?;
        let f = self.f.map(&ctx, |a| Fq::from_fp(&ctx, a));
        Ok(CurveModel { f, genus: self.genus })
    }
}

/// Good reduction at an odd prime: `f` is p-integral and stays separable of full degree.
pub fn has_good_reduction(c: &CurveModel<Rational>, p: u64) -> Result<bool, CurveError> {
    if p == 2 || !is_prime(p) {
        return Err(CurveError::BadPrime(p));
    }
    Ok(match c.reduce_poly(p) {
        Some(fp) => fp.deg() == c.f.deg() && fp.is_squarefree(),
        None => false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A point of the model. `Infinity(Plus)` is where `y / x^(g+1)` takes the value 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point<F: Field> {
    Affine { x: F, y: F },
    Infinity(Sign),
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
            Point::Infinity(s) => write!(f, "inf{s}"),
        }
    }
}

/// All points over the (finite) coefficient field, affine ones sorted by `x` then `y`,
/// followed by `inf+` and `inf-`.
pub fn enumerate_points<F: FiniteField>(c: &CurveModel<F>, exec: Exec) -> Result<Vec<Point<F>>, CurveError> {
    let ctx = c.ctx().clone();
    let q = F::order(&ctx);
    if q > ENUMERATION_BUDGET {
        return Err(CurveError::BudgetExceeded(q));
    }
    let per_x = exec.map_range(q, |i| {
        let x = F::element(&ctx, i);
        let fx = c.f.eval(&x);
        match fx.sqrt() {
            None => Vec::new(),
            Some(r) if r.is_zero() => vec![Point::Affine { x, y: r }],
            Some(r) => {
                let mut ys = [r.clone(), r.neg()];
                ys.sort();
                ys.into_iter()
                    .map(|y| Point::Affine { x: x.clone(), y })
                    .collect()
            }
        }
    });
    let mut pts: Vec<Point<F>> = per_x.into_iter().flatten().collect();
    pts.sort();
    pts.push(Point::Infinity(Sign::Plus));
    pts.push(Point::Infinity(Sign::Minus));
    Ok(pts)
}

/// `N_k = #C(F_{p^k})` for `k = 1..=n`.
pub fn point_counts(c: &CurveModel<Fp>, n: usize, exec: Exec) -> Result<Vec<u64>, CurveError> {
    (1..=n)
        .map(|k| {
            if k == 1 {
                enumerate_points(c, exec).map(|v| v.len() as u64)
            } else {
                enumerate_points(&c.extend(k)?, exec).map(|v| v.len() as u64)
            }
        })
        .collect()
}

/// The numerator `L(T)` of the zeta function from `N_1, ..., N_g`.
pub fn l_polynomial(c: &CurveModel<Fp>, counts: &[u64]) -> Result<Poly<Rational>, CurveError> {
    let g = c.genus();
    if counts.len() != g {
        return Err(CurveError::CountLength {
            expected: g,
            got: counts.len(),
        });
    }
    let q = BigInt::from(*c.ctx());
    // power sums S_k = N_k - q^k - 1 of the negated Frobenius eigenvalues
    let mut s = Vec::with_capacity(g);
    for (i, &n) in counts.iter().enumerate() {
        let k = i + 1;
        let qk = q.pow(k as u32);
        let sk = BigInt::from(n) - &qk - 1;
        if &sk * &sk > BigInt::from(4 * g * g) * &qk {
            return Err(CurveError::WeilBound { k, n });
        }
        s.push(sk);
    }
    // Newton: i a_i = sum_{j=1}^{i} S_j a_{i-j}
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=g {
        let mut acc = BigInt::zero();
        for j in 1..=i {
            acc += &s[j - 1] * &a[i - j];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(i));
        if !rem.is_zero() {
            return Err(CurveError::InconsistentCounts);
        }
        a.push(quot);
    }
    for i in (0..g).rev() {
        let v = &a[i] * q.pow((g - i) as u32);
        a.push(v);
    }
    Ok(Poly::new(
        &(),
        a.into_iter().map(Rational::from_integer).collect(),
    ))
}

/// `#J(F_p) = L(1)`, with point counts over `F_p, ..., F_{p^g}`.
pub fn jacobian_order_fq(c: &CurveModel<Fp>, exec: Exec) -> Result<BigInt, CurveError> {
    let counts = point_counts(c, c.genus(), exec)?;
    let l = l_polynomial(c, &counts)?;
    let v = l.eval(&rat(1));
    debug_assert!(v.is_integer() && v.is_positive());
    Ok(v.to_integer())
}

/// L(1) as a u64, for the small groups handled here.
pub fn jacobian_order_u64(c: &CurveModel<Fp>, exec: Exec) -> Result<u64, CurveError> {
    Ok(jacobian_order_fq(c, exec)?.to_u64().expect("small group"))
}
