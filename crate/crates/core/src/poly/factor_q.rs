//! Factorization over Q: clear denominators, factor modulo a good prime,
//! lift quadratically with Hensel's lemma, then recombine subsets of the
//! lifted factors under a Mignotte-style coefficient bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zmod::{self, ZPoly};
use super::{factor_ff, Factorization, Poly};
use crate::arith::{next_prime, Field, Fp, Rational};

pub fn factor_q(a: &Poly<Rational>) -> Factorization<Rational> {
    assert!(!a.is_zero(), "cannot factor the zero polynomial");
    let unit = a.lc();
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition_q(&a.monic()) {
        for h in factor_squarefree(&g) {
            factors.push((h, e));
        }
    }
    factors.sort();
    Factorization { unit, factors }
}

/// Yun's algorithm in characteristic zero; factors are monic.
fn squarefree_decomposition_q(f: &Poly<Rational>) -> Vec<(Poly<Rational>, usize)> {
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let d = f.derivative();
    let mut a = f.gcd(&d);
    let mut b = f.div_exact(&a).expect("gcd divides");
    let mut c = d.div_exact(&a).expect("gcd divides");
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() >= 1 {
        a = b.gcd(&dd);
        b = b.div_exact(&a).expect("gcd divides");
        c = dd.div_exact(&a).expect("gcd divides");
        if a.deg() >= 1 {
            out.push((a.monic(), i));
        }
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn to_int_poly(f: &Poly<Rational>) -> Vec<BigInt> {
    f.primitive_part()
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect()
}

fn from_int_poly(f: &[BigInt]) -> Poly<Rational> {
    Poly::new(&(), f.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Monic irreducible factors of a squarefree rational polynomial.
fn factor_squarefree(f: &Poly<Rational>) -> Vec<Poly<Rational>> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let fz = to_int_poly(f);
    let n = fz.len() - 1;
    let lc = fz[n].clone();

    // pick the prime (among a few candidates) with the fewest modular factors
    let mut best: Option<(u64, Vec<Poly<Fp>>)> = None;
    let mut p = 2u64;
    let mut tried = 0;
    while tried < 6 {
        p = next_prime(p);
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Poly::new(
            &p,
            fz.iter()
                .map(|c| Fp::from_rational(&p, &Rational::from_integer(c.clone())).unwrap())
                .collect(),
        );
        if !fp.is_squarefree() {
            continue;
        }
        tried += 1;
        let fac: Vec<Poly<Fp>> = factor_ff(&fp).factors.into_iter().map(|(g, _)| g).collect();
        if fac.len() == 1 {
            return vec![f.monic()];
        }
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
    }
    let (p, modular) = best.expect("a good prime exists");

    // |coefficients of any factor of lc*f| <= 2^n * ||f||_1 * |lc|
    let norm1: BigInt = fz.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm1 * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }

    let lifted = multifactor_lift(&fz, &modular, p, &modulus);
    recombine(fz, lifted, &modulus)
        .into_iter()
        .map(|g| from_int_poly(&g).monic())
        .collect()
}

fn fp_to_z(f: &Poly<Fp>) -> ZPoly {
    f.coeffs().iter().map(|c| BigInt::from(c.value())).collect()
}

fn z_to_fp(f: &[BigInt], p: u64) -> Poly<Fp> {
    let pb = BigInt::from(p);
    Poly::new(
        &p,
        f.iter()
            .map(|c| Fp::from_u64(p, c.mod_floor(&pb).try_into().unwrap()))
            .collect(),
    )
}

/// Lifts monic modular factors of `f` (mod p) to monic factors mod `modulus`
/// with `f = lc(f) * prod(g_i)` mod `modulus`.
fn multifactor_lift(f: &[BigInt], factors: &[Poly<Fp>], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = zmod::inverse(&lc, modulus).expect("lc is a unit");
        return vec![zmod::scale(f, &inv, modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let ctx = p;
    let lc_p = Fp::from_rational(&ctx, &Rational::from_integer(lc.clone())).unwrap();
    let g0 = Poly::product(&ctx, left.iter().cloned()).scale(&lc_p);
    let h0 = Poly::product(&ctx, right.iter().cloned());
    let (g, h) = hensel_lift(f, &g0, &h0, p, modulus);
    let mut out = multifactor_lift(&g, left, p, modulus);
    out.extend(multifactor_lift(&h, right, p, modulus));
    out
}

/// Quadratic two-factor Hensel lifting; `h0` is monic.
fn hensel_lift(f: &[BigInt], g0: &Poly<Fp>, h0: &Poly<Fp>, p: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let (one, s0, t0) = g0.xgcd(h0);
    assert!(one.is_one(), "modular factors must be coprime");
    let mut m = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (fp_to_z(g0), fp_to_z(h0), fp_to_z(&s0), fp_to_z(&t0));
    while &m < target {
        let m2 = &m * &m;
        let e = zmod::sub(f, &zmod::mul(&g, &h, &m2), &m2);
        let (q, r) = zmod::divrem(&zmod::mul(&s, &e, &m2), &h, &m2);
        let g_new = zmod::add(
            &zmod::add(&g, &zmod::mul(&t, &e, &m2), &m2),
            &zmod::mul(&q, &g, &m2),
            &m2,
        );
        let h_new = zmod::add(&h, &r, &m2);
        let b = zmod::sub(
            &zmod::add(&zmod::mul(&s, &g_new, &m2), &zmod::mul(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = zmod::divrem(&zmod::mul(&s, &b, &m2), &h_new, &m2);
        s = zmod::sub(&s, &d, &m2);
        t = zmod::sub(
            &zmod::sub(&t, &zmod::mul(&t, &b, &m2), &m2),
            &zmod::mul(&c, &g_new, &m2),
            &m2,
        );
        g = g_new;
        h = h_new;
        m = m2;
    }
    let g = zmod::reduce(&g, target);
    let h = zmod::reduce(&h, target);
    debug_assert_eq!(z_to_fp(&h, p), *h0);
    (g, h)
}

fn divides_over_z(d: &[BigInt], f: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = from_int_poly(f).divrem(&from_int_poly(d));
    if !r.is_zero() {
        return None;
    }
    q.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn primitive(f: &[BigInt]) -> ZPoly {
    let g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: ZPoly = f.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.iter().map(|c| -c).collect();
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Zassenhaus recombination.
fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = zmod::mul(&cand, &lifted[i], modulus);
            }
            let cand = primitive(&zmod::symmetric(&cand, modulus));
            if let Some(q) = divides_over_z(&cand, &f) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = primitive(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}
