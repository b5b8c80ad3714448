//! Smith normal form of small integer relation matrices.

use num_integer::Integer;

/// `m[dst][cols] += q * m[src][cols]`, for `dst != src`.
fn add_row_multiple(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128, cols: std::ops::Range<usize>) {
    let (lo, hi) = m.split_at_mut(dst.max(src));
    let (d, s) = if dst < src {
        (&mut lo[dst], &hi[0])
    } else {
        (&mut hi[0], &lo[src])
    };
    for (a, b) in d[cols.clone()].iter_mut().zip(&s[cols]) {
        *a += q * b;
    }
}

/// Invariant factors `d1 | d2 | ...` (all > 1) of `Z^n / <rows>`, where `n` is the
/// row length. A free part shows up as factors equal to 0, listed last.
pub fn invariant_factors(rows: &[Vec<i64>], n: usize) -> Vec<u64> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nr = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(n) {
        // pivot: smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..nr)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..nr {
                let q = Integer::div_floor(&m[i][t], &p);
                if q != 0 {
                    add_row_multiple(&mut m, i, t, -q, t..n);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&m[t][j], &p);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        add_row_multiple(&mut m, t, i, 1, t..n);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t onto the diagonal
            let (bi, bj) = (t..nr)
                .map(|i| (i, t))
                .chain((t..n).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot row or column is nonzero");
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag.resize(n, 0);
    let mut out: Vec<u64> = diag.into_iter().filter(|&d| d != 1).collect();
    out.sort_by_key(|&d| if d == 0 { u64::MAX } else { d });
    out
}
