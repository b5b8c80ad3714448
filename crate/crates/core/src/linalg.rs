//! Dense exact linear algebra over any `Field`.

use crate::arith::Field;

/// Row-reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                *x = x.sub(&f.mul(y));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right kernel of the `rows x ncols` matrix, one vector per free column.
///
/// Each basis vector has a 1 at its free column and zeros at the other free columns.
pub fn kernel<F: Field>(ctx: &F::Ctx, rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    let mut pi = 0;
    for free in 0..ncols {
        if pi < pivots.len() && pivots[pi] == free {
            pi += 1;
            continue;
        }
        let mut v = vec![F::zero(ctx); ncols];
        v[free] = F::one(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves `A x = b` for the `rows x ncols` matrix `A`; any particular solution.
pub fn solve<F: Field>(ctx: &F::Ctx, a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(ctx); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel(&(), &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s = row.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a * b);
                assert_eq!(s, q(0));
            }
        }
        assert_eq!(rank(&m, 3), 1);
    }

    #[test]
    fn solve_small_system_mod_7() {
        let f = |n| Fp::new(7, n);
        let a = vec![vec![f(1), f(1)], vec![f(1), f(-1)]];
        let x = solve(&7, &a, &[f(3), f(1)], 2).unwrap();
        assert_eq!(x, vec![f(2), f(1)]);
        let inconsistent = vec![vec![f(1), f(1)], vec![f(2), f(2)]];
        assert!(solve(&7, &inconsistent, &[f(1), f(1)], 2).is_none());
    }
}
