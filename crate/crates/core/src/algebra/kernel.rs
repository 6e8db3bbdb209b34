use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Row echelon form by full pivoting. Returns the pivot columns in order and
/// the reduced rows; entries below `tol · max(1, max|a|)` count as zero.
fn echelon(a: &[Vec<f64>], tol: f64) -> (Vec<usize>, Vec<Vec<f64>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (rank, rank, 0.0);
        for (i, row) in m.iter().enumerate().skip(rank) {
            for (j, x) in row.iter().enumerate().skip(rank) {
                if x.abs() > best.2 {
                    best = (i, j, x.abs());
                }
            }
        }
        if best.2 <= tol * scale {
            break;
        }
        m.swap(rank, best.0);
        for row in m.iter_mut() {
            row.swap(rank, best.1);
        }
        perm.swap(rank, best.1);
        let pivot = m[rank][rank];
        for i in rank + 1..rows {
            let f = m[i][rank] / pivot;
            if f != 0.0 {
                let (top, bottom) = m.split_at_mut(i);
                for (x, p) in bottom[0][rank..cols].iter_mut().zip(&top[rank][rank..cols]) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    // Undo the column permutation so callers see the original indexing.
    let mut out = vec![vec![0.0; cols]; rank];
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[i][perm[j]] = *x;
        }
    }
    (perm[..rank].to_vec(), out)
}

/// Unit-norm spanning vector of a one-dimensional kernel, first nonzero
/// coordinate positive.
pub fn kernel_vector(a: &[Vec<f64>], tol: f64) -> Result<Vec<f64>, AlgebraError> {
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch);
    }
    let (pivots, r) = echelon(a, tol);
    match n - pivots.len() {
        0 => return Err(AlgebraError::FullRank),
        1 => {}
        k => return Err(AlgebraError::KernelTooLarge(k)),
    }
    let free = (0..n)
        .find(|j| !pivots.contains(j))
        .expect("one free column");
    let mut v = vec![0.0; n];
    v[free] = 1.0;
    for (i, &p) in pivots.iter().enumerate().rev() {
        let s: f64 = (0..n).filter(|&j| j != p).map(|j| r[i][j] * v[j]).sum();
        v[p] = -s / r[i][p];
    }
    normalize(&mut v);
    Ok(v)
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let sign = v.iter().find(|x| **x != 0.0).map_or(1.0, |x| x.signum());
    for x in v.iter_mut() {
        *x *= sign / norm;
    }
}

/// Exact kernel of a rational matrix, scaled so that the first nonzero
/// coordinate is one.
pub fn kernel_vector_exact(a: &[Vec<BigRational>]) -> Result<Vec<BigRational>, AlgebraError> {
    let rows = a.len();
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch);
    }
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = BigRational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    match n - pivots.len() {
        0 => return Err(AlgebraError::FullRank),
        1 => {}
        k => return Err(AlgebraError::KernelTooLarge(k)),
    }
    let free = (0..n)
        .find(|j| !pivots.contains(j))
        .expect("one free column");
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = -m[i][free].clone();
    }
    let first = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
    let first = first.abs()
        * if first.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
    Ok(v.into_iter().map(|x| x / &first).collect())
}
