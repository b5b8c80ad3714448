use super::{ArithError, FiniteField};

/// Square root in a finite field of odd characteristic (Tonelli-Shanks).
///
/// Of the two roots, the one with the lexicographically smaller coordinate
/// vector is returned.
pub fn ff_sqrt<F: FiniteField>(x: &F) -> Result<Option<F>, ArithError> {
    let ctx = x.context();
    if F::prime(&ctx) == 2 {
        return Err(ArithError::CharacteristicTwo);
    }
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    if !x.is_square() {
        return Ok(None);
    }
    let q = F::order(&ctx);
    let mut s = 0u32;
    let mut t = q - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    // any non-residue generates the 2-Sylow subgroup
    let z = (1..q)
        .map(|i| F::element(&ctx, i))
        .find(|e| !e.is_square())
        .expect("odd field has non-residues");
    let mut m = s;
    let mut c = z.pow_u64(t);
    let mut tt = x.pow_u64(t);
    let mut r = x.pow_u64(t.div_ceil(2));
    while !tt.is_one() {
        let mut i = 0u32;
        let mut probe = tt.clone();
        while !probe.is_one() {
            probe = probe.square();
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.square();
        }
        m = i;
        c = b.square();
        tt = tt.mul(&c);
        r = r.mul(&b);
    }
    debug_assert!(r.square() == *x);
    let other = r.neg();
    Ok(Some(if other.coords() < r.coords() { other } else { r }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Fp};

    #[test]
    fn small_cases_mod_5() {
        assert_eq!(ff_sqrt(&Fp::new(5, 0)).unwrap(), Some(Fp::new(5, 0)));
        assert_eq!(ff_sqrt(&Fp::new(5, 4)).unwrap(), Some(Fp::new(5, 2)));
        assert_eq!(ff_sqrt(&Fp::new(5, 2)).unwrap(), None);
    }

    #[test]
    fn char_two_rejected() {
        assert_eq!(ff_sqrt(&Fp::new(2, 1)), Err(ArithError::CharacteristicTwo));
    }

    #[test]
    fn roots_square_back_mod_primes() {
        for p in [3u64, 7, 13, 17, 41, 97] {
            for v in 0..p {
                let x = Fp::from_u64(p, v);
                match ff_sqrt(&x).unwrap() {
                    Some(r) => assert_eq!(r.square(), x),
                    None => assert!(!x.is_square()),
                }
            }
        }
    }
}
