//! Small dense linear algebra over exact coefficient types.

use super::{ArithError, Field, Ring, Scalar};

pub type Matrix<R> = Vec<Vec<R>>;

fn check_rectangular<R>(rows: &[Vec<R>]) -> Result<usize, ArithError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(ArithError::RaggedInput);
    }
    Ok(width)
}

/// Reduced row-echelon basis of the span of `rows`.
///
/// Pivots are chosen in the leftmost column available, taking the first
/// remaining row with a nonzero entry there, and scaled to 1. The output is
/// therefore unique for a given span.
pub fn row_space_basis(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, ArithError> {
    let width = check_rectangular(rows)?;
    let mut m: Matrix<Scalar> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].recip().unwrap();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(p * &factor);
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    Ok(m)
}

pub fn rank(rows: &[Vec<Scalar>]) -> Result<usize, ArithError> {
    Ok(row_space_basis(rows)?.len())
}

/// Inverse of a square matrix over a field, `None` when singular.
pub fn invert<F: Field>(m: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Matrix<F> = m.to_vec();
    let mut inv: Matrix<F> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    for col in 0..n {
        let found = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, found);
        inv.swap(col, found);
        let p = a[col][col].inverse()?;
        for j in 0..n {
            a[col][j] = a[col][j].clone() * p.clone();
            inv[col][j] = inv[col][j].clone() * p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - factor.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
            }
        }
    }
    Some(inv)
}

/// Determinant by cofactor expansion; the matrices here are at most 3x3.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        0 => R::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = R::zero();
            for (j, lead) in m[0].iter().enumerate() {
                if lead.is_zero() {
                    continue;
                }
                let minor: Matrix<R> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = lead.clone() * determinant(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Matrix<R> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(R::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn identity<R: Ring>(n: usize) -> Matrix<R> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
        .collect()
}

pub fn transpose<R: Clone>(m: &[Vec<R>]) -> Matrix<R> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}
