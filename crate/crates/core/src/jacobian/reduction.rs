//! Reduction of rational divisor classes modulo a prime of good reduction.

use super::{DivisorClass, JacobianError};
use crate::arith::{Field, Fp, Rational};
use crate::curve::{has_good_reduction, CurveModel, Sign};
use crate::divisor::{CurveField, Divisor, Place};
use crate::poly::{factor_ff, Poly};
use crate::rr::unique_effective;

fn reduce_poly(a: &Poly<Rational>, p: u64) -> Option<Poly<Fp>> {
    let c = a
        .coeffs()
        .iter()
        .map(|x| Fp::from_rational(&p, x))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::new(&p, c))
}

/// Reduces each place's geometric points; `None` if some `u` or `v` is not
/// `p`-integral.
pub fn reduce_divisor(d: &Divisor<Rational>, cp: &CurveModel<Fp>) -> Option<Divisor<Fp>> {
    let p = *cp.ctx();
    let mut out = Divisor::zero();
    for (place, n) in d.iter() {
        match place {
            Place::Infinity(s) => out.add_place(Place::Infinity(*s), n),
            Place::Affine { u, v } => {
                let (ub, vb) = (reduce_poly(u, p)?, reduce_poly(v, p)?);
                for (w, e) in factor_ff(&ub).factors {
                    let vw = vb.rem(&w);
                    debug_assert!(vw.mul(&vw).sub(cp.f()).rem(&w).is_zero());
                    out.add_place(Place::Affine { u: w, v: vw }, n * e as i64);
                }
            }
            Place::Inert { u } => {
                let ub = reduce_poly(u, p)?;
                for (w, e) in factor_ff(&ub).factors {
                    let fw = cp.f().rem(&w);
                    let e = e as i64;
                    if fw.is_zero() {
                        out.add_place(
                            Place::Affine {
                                u: w.clone(),
                                v: Poly::zero(&p),
                            },
                            2 * n * e,
                        );
                        continue;
                    }
                    match Fp::residue_sqrt(&fw, &w) {
                        Some(s) => {
                            out.add_place(
                                Place::Affine {
                                    u: w.clone(),
                                    v: s.neg().rem(&w),
                                },
                                n * e,
                            );
                            out.add_place(Place::Affine { u: w, v: s }, n * e);
                        }
                        None => out.add_place(Place::Inert { u: w }, n * e),
                    }
                }
            }
        }
    }
    Some(out)
}

/// The image of a rational class in `J(F_p)`.
///
/// Uses the stored representative when its places are `p`-integral, and otherwise
/// the unique effective `E'` in `|A + k inf+|` with `k` minimal.
pub fn reduction_map(
    a: &DivisorClass<Rational>,
    cq: &CurveModel<Rational>,
    cp: &CurveModel<Fp>,
) -> Result<DivisorClass<Fp>, JacobianError> {
    let p = *cp.ctx();
    if !has_good_reduction(cq, p).unwrap_or(false) {
        return Err(JacobianError::BadPrime(p));
    }
    if let Some(d) = reduce_divisor(&a.representative(), cp) {
        return DivisorClass::of(&d, cp);
    }
    let rep = a.representative();
    for k in 0..=cq.genus() as i64 {
        let inf_p = Divisor::from_place(Place::Infinity(Sign::Plus), k);
        if let Ok(e) = unique_effective(&rep.add(&inf_p), cq) {
            if let Some(d) = reduce_divisor(&e.sub(&inf_p), cp) {
                return DivisorClass::of(&d, cp);
            }
            break;
        }
    }
    Err(JacobianError::NotReducible(p))
}
