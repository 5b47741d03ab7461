//! Exact Gaussian elimination over the rationals.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row-reduces `m` in place and returns its rank.
fn eliminate(m: &mut [Vec<BigRational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    eliminate(&mut m)
}

/// Dimension of the affine hull of `points` (0 for a single point).
pub fn affine_rank(points: &[Vec<BigRational>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<BigRational>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Solves `a x = b` for square non-singular `a`.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(
        m.into_iter()
            .map(|mut row| row.pop().expect("augmented"))
            .collect(),
    )
}

/// Coefficients `λ` with `Σ λ_i v_i = p` and `Σ λ_i = 1`, for `k` vertices
/// in `k` coordinates that are linearly independent.
pub fn barycentric(
    point: &[BigRational],
    vertices: &[Vec<BigRational>],
) -> Option<Vec<BigRational>> {
    let k = point.len();
    if vertices.len() != k {
        return None;
    }
    let a: Vec<Vec<BigRational>> = (0..k)
        .map(|i| vertices.iter().map(|v| v[i].clone()).collect())
        .collect();
    let lambda = solve(&a, point)?;
    let total: BigRational = lambda.iter().sum();
    (total == BigRational::one()).then_some(lambda)
}
