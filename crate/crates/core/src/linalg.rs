//! Exact linear algebra over `Q` and `Z`.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`; every routine here is
//! fraction-exact. Sizes in this crate stay small (a few hundred columns at
//! most), so dense Gaussian elimination is adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ v : M v = 0 }` for an `rows x cols` matrix.
pub fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> QMatrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// True when the row spaces of `a` and `b` (same column count) coincide.
pub fn same_span(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both) == ra
}

/// Solve `a x = rhs` for square nonsingular `a`.
pub fn solve(a: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// by congruence diagonalization (Sylvester's law of inertia).
pub fn inertia(sym: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a = sym.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for c in k..n {
                let delta = &factor * &a[k][c];
                a[i][c] -= delta;
            }
            for r in k..n {
                let delta = &factor * &a[r][k];
                a[r][i] -= delta;
            }
        }
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn det_int(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Largest integer `r` with `r*r <= x` for `x >= 0`.
pub fn isqrt_floor(x: &BigRational) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    x.floor().to_integer().sqrt()
}

/// Column-style Hermite reduction of an integer matrix `a` (`m x n`).
///
/// Returns `(h, u)` with `a * u = h`, `u` unimodular and `h` in lower column
/// echelon form: column `c` of `h` is zero for `c >= rank`.
pub fn column_hermite(a: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let m = a.len();
    let mut h = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut col = 0;
    for row in 0..m {
        if col == n {
            break;
        }
        // gcd-combine the entries h[row][col..] into column `col`
        loop {
            let nonzero: Vec<usize> = (col..n).filter(|&c| !h[row][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    swap_cols(&mut h, &mut u, c, col);
                }
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&c| h[row][c].abs())
                .expect("at least two entries");
            for &c in &nonzero {
                if c == pivot {
                    continue;
                }
                let quot = h[row][c].div_floor(&h[row][pivot]);
                add_col_multiple(&mut h, &mut u, c, pivot, &-quot);
            }
        }
        if !h[row][col].is_zero() {
            if h[row][col].is_negative() {
                negate_col(&mut h, &mut u, col);
            }
            col += 1;
        }
    }
    (h, u, col)
}

fn swap_cols(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
}

fn negate_col(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        row[c] = -row[c].clone();
    }
}

/// col_dst += k * col_src
fn add_col_multiple(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        let delta = &row[src] * k;
        row[dst] += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: BigRational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inertia_hyperbolic_plane() {
        // [[0,1],[1,0]] has signature (1,1)
        assert_eq!(inertia(&qm(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&qm(&[&[-1, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&qm(&[&[1, 0], &[0, 0]])), (1, 0, 1));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(det_int(&m), BigInt::from(4));
    }

    #[test]
    fn hermite_kernel_is_integral_kernel() {
        let a: Vec<Vec<BigInt>> = vec![vec![3, 1, 1, 1].into_iter().map(BigInt::from).collect()];
        let (h, u, r) = column_hermite(&a, 4);
        assert_eq!(r, 1);
        assert_eq!(h[0][0], BigInt::one());
        for c in 1..4 {
            let v: BigInt = (0..4).map(|i| &a[0][i] * &u[i][c]).sum();
            assert!(v.is_zero());
        }
    }
}
