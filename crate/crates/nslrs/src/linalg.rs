//! Dense linear algebra over the prime field F_p.
//!
//! Matrices are `Vec<Vec<u64>>` in row-major order with entries reduced
//! mod p. Sizes here are tiny (dimension <= 40ish), so plain Gaussian
//! elimination is used throughout. Everything is deterministic: pivots are
//! chosen as the first nonzero entry in column order.

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    crate::num::pow_mod(a, p - 2, p)
}

/// Row-reduce `m` in place, returning the pivot column for each pivot row.
fn row_reduce(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c] % p, p);
        for x in m[r].iter_mut() {
            *x = *x % p * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] % p != 0 {
                let f = m[i][c] % p;
                for c2 in 0..cols {
                    let sub = f * m[r][c2] % p;
                    m[i][c2] = (m[i][c2] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the kernel of `m` (viewed as a map F_p^cols -> F_p^rows).
/// Basis vectors come out in ascending free-column order.
pub fn kernel(m: &[Vec<u64>], p: u64, cols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = m.to_vec();
    let pivots = row_reduce(&mut work, p);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            // pivot row: x_pc + sum over free columns = 0
            let coef = work[row][free] % p;
            if coef != 0 {
                v[pc] = (p - coef) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = rhs` (free variables set to zero), or None if
/// the system is inconsistent.
pub fn solve_any(m: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b % p);
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, p);
    // Inconsistent if a pivot landed in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols];
    }
    Some(x)
}

/// Inverse of a square matrix, or None if singular.
pub fn invert(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, p);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b % p).sum::<u64>() % p)
        .collect()
}

/// Unique solution of a square system over an arbitrary field context
/// (entries are element indices). Returns None when the matrix is singular.
pub fn solve_square_in(
    ctx: &crate::field::FieldCtx,
    m: &[Vec<u64>],
    rhs: &[u64],
) -> Option<Vec<u64>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| aug[i][c] != 0)?;
        aug.swap(c, pr);
        let inv = ctx.inv(aug[c][c]).ok()?;
        for x in aug[c].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for i in 0..n {
            if i != c && aug[i][c] != 0 {
                let f = aug[i][c];
                for c2 in c..=n {
                    let sub = ctx.mul(f, aug[c][c2]);
                    aug[i][c2] = ctx.sub(aug[i][c2], sub);
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_2x2_mod5() {
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(&m, 5).unwrap();
        // m * inv = I
        for i in 0..2 {
            for j in 0..2 {
                let s: u64 = (0..2).map(|k| m[i][k] * inv[k][j] % 5).sum::<u64>() % 5;
                assert_eq!(s, u64::from(i == j));
            }
        }
    }

    #[test]
    fn kernel_of_singular() {
        // x + y = 0 mod 3 has kernel spanned by (1, 2)
        let m = vec![vec![1, 1]];
        let k = kernel(&m, 3, 2);
        assert_eq!(k, vec![vec![2, 1]]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(solve_any(&m, &[2, 3, 5 % 7], 7), Some(vec![2, 3]));
        assert_eq!(solve_any(&m, &[2, 3, 6], 7), None);
    }
}
