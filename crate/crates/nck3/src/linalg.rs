//! Integer and rational linear algebra used by the lattice modules.
//!
//! Matrices are dense row vectors of [`Int`]. Everything here is exact:
//! determinants through fraction-free elimination, Hermite normal forms
//! with unimodular transforms, saturated integer kernels, and signatures
//! of symmetric forms via rational congruence.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

pub type Matrix = Vec<Vec<Int>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn transpose(m: &[Vec<Int>]) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by the Bareiss fraction-free algorithm.
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    assert!(m.iter().all(|r| r.len() == n));
    let mut a: Matrix = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Row Hermite normal form together with a unimodular transform.
///
/// Returns `(h, u)` with `u * m = h`, `u` unimodular, `h` in row-echelon
/// form with positive pivots and entries above a pivot reduced into
/// `[0, pivot)`. Zero rows, if any, are collected at the bottom.
pub fn row_hnf(m: &[Vec<Int>]) -> (Matrix, Matrix) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h: Matrix = m.to_vec();
    let mut u = identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // gcd-reduce the column below pivot_row until one nonzero entry remains
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[i][col].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[i][col].abs() < h[b][col].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if !h[i][col].is_zero() {
                    let q = h[i][col].div_floor(&h[pivot_row][col]);
                    row_sub(&mut h, i, pivot_row, &q);
                    row_sub(&mut u, i, pivot_row, &q);
                    if !h[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            row_negate(&mut h, pivot_row);
            row_negate(&mut u, pivot_row);
        }
        for i in 0..pivot_row {
            if !h[i][col].is_zero() {
                let q = h[i][col].div_floor(&h[pivot_row][col]);
                row_sub(&mut h, i, pivot_row, &q);
                row_sub(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn row_sub(m: &mut Matrix, dst: usize, src: usize, factor: &Int) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m[dst].len() {
        let delta = factor * &m[src][j];
        m[dst][j] -= delta;
    }
}

fn row_negate(m: &mut Matrix, row: usize) {
    for e in m[row].iter_mut() {
        *e = -e.clone();
    }
}

/// Basis of the right kernel `{x : m * x = 0}` of an integer matrix.
///
/// The result is the full (hence saturated) integer kernel, returned in
/// canonical Hermite form: deterministic rows, positive leading entries.
pub fn right_kernel(m: &[Vec<Int>]) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let b = transpose(m);
    let (h, u) = row_hnf(&b);
    let mut kernel: Matrix = h
        .iter()
        .zip(u.iter())
        .filter(|(hrow, _)| hrow.iter().all(Int::is_zero))
        .map(|(_, urow)| urow.clone())
        .collect();
    if kernel.is_empty() {
        return kernel;
    }
    let (canon, _) = row_hnf(&kernel);
    kernel = canon.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    kernel
}

/// Canonical basis of the saturation of the row span of `rows` in `Z^n`.
///
/// The saturation is the smallest subgroup containing the span whose
/// quotient is torsion-free; it equals the double kernel of the span.
pub fn saturation(rows: &Matrix, n: usize) -> Matrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let k = right_kernel(rows);
    if k.is_empty() {
        return identity(n);
    }
    right_kernel(&k)
}

/// Solves `a * x = b` exactly over the rationals; `None` when `a` is singular.
pub fn solve_rational(a: &[Vec<Int>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .map(|e| Rat::from(e.clone()))
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in col..=n {
            let v = &m[col][j] / &p;
            m[col][j] = v;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let v = &m[i][j] - &f * &m[col][j];
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Signature `(positive, negative, zero)` of a symmetric integer matrix.
///
/// Computed by rational congruence transformations, so it is exact by
/// Sylvester's law of inertia.
pub fn signature(sym: &[Vec<Int>]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut g: Vec<Vec<Rat>> = sym
        .iter()
        .map(|row| row.iter().map(|e| Rat::from(e.clone())).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                swap_sym(&mut g, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                // diagonal block is zero: e_k + e_j has square 2*g[k][j] != 0
                for c in 0..n {
                    let v = &g[k][c] + &g[j][c];
                    g[k][c] = v;
                }
                for r in 0..n {
                    let v = &g[r][k] + &g[r][j];
                    g[r][k] = v;
                }
            }
        }
        if g[k][k].is_zero() {
            zero += 1;
            continue;
        }
        if g[k][k].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let p = g[k][k].clone();
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] / &p;
            for c in 0..n {
                let v = &g[i][c] - &f * &g[k][c];
                g[i][c] = v;
            }
            for r in 0..n {
                let v = &g[r][i] - &f * &g[r][k];
                g[r][i] = v;
            }
        }
    }
    (pos, neg, zero)
}

fn swap_sym(g: &mut [Vec<Rat>], i: usize, j: usize) {
    g.swap(i, j);
    for row in g.iter_mut() {
        row.swap(i, j);
    }
}

/// Extends a primitive row vector to a unimodular matrix having it as row 0.
pub fn complete_primitive_to_basis(c: &[Int]) -> Matrix {
    let k = c.len();
    assert!(k > 0);
    let mut row = c.to_vec();
    // uinv accumulates the inverses of the column operations applied to `row`,
    // so that row 0 of uinv is always the original vector c.
    let mut uinv = identity(k);
    loop {
        let mut best: Option<usize> = None;
        for (i, e) in row.iter().enumerate() {
            if !e.is_zero() {
                best = match best {
                    None => Some(i),
                    Some(b) if e.abs() < row[b].abs() => Some(i),
                    keep => keep,
                };
            }
        }
        let b = best.expect("nonzero vector");
        if b != 0 {
            row.swap(0, b);
            uinv.swap(0, b); // inverse of a column swap is the same row swap
        }
        let mut reduced = true;
        for i in 1..k {
            if row[i].is_zero() {
                continue;
            }
            let q = row[i].div_floor(&row[0]);
            let delta0 = &q * &row[0];
            row[i] -= delta0;
            // col_i -= q * col_0 has inverse row_0 += q * row_i on uinv
            for j in 0..k {
                let delta = &q * &uinv[i][j];
                uinv[0][j] += delta;
            }
            if !row[i].is_zero() {
                reduced = false;
            }
        }
        if reduced && row[1..].iter().all(Int::is_zero) {
            break;
        }
    }
    if row[0].is_negative() {
        row[0] = -row[0].clone();
        for j in 0..k {
            uinv[0][j] = -uinv[0][j].clone();
        }
    }
    assert!(row[0].is_one(), "input vector must be primitive");
    uinv
}
