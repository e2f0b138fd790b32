//! Dense Gaussian elimination over a prime field.
//!
//! Matrices are row-major `Vec<Vector>`. Everything here is exact.

use crate::galois::{Field, Scalar, Vector};

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each surviving row.
pub fn rref(field: Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = field.neg(row[col]);
                field.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Dimension of the row space.
pub fn rank(field: Field, rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    rref(field, &mut m).len()
}

pub fn transpose(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut r = vec![Scalar::ZERO; n];
            r[i] = Scalar::ONE;
            r
        })
        .collect()
}

pub fn mat_mul(field: Field, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let inner = b.len();
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Scalar::ZERO; ncols];
            for k in 0..inner {
                field.axpy(&mut out, row[k], &b[k]);
            }
            out
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn invert(field: Field, m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solution set `{ particular + span(nullspace) }` of `x · M = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftSolution {
    pub particular: Vector,
    pub nullspace: Vec<Vector>,
}

/// Solves `x · M = b` where `M` has `rows.len()` rows of length `b.len()`.
pub fn solve_left(field: Field, rows: &[Vector], b: &[Scalar]) -> Option<LeftSolution> {
    let n = rows.len();
    let m = b.len();
    // M^T x^T = b^T, augmented with b as the last column.
    let mut aug: Vec<Vector> = (0..m)
        .map(|c| {
            let mut r: Vector = rows.iter().map(|row| row[c]).collect();
            r.push(b[c]);
            r
        })
        .collect();
    if m == 0 {
        return Some(LeftSolution {
            particular: vec![Scalar::ZERO; n],
            nullspace: identity(n),
        });
    }
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Scalar::ZERO; n];
    for (row, &p) in aug.iter().zip(&pivots) {
        particular[p] = row[n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Scalar::ZERO; n];
            v[fc] = Scalar::ONE;
            for (row, &p) in aug.iter().zip(&pivots) {
                v[p] = field.neg(row[fc]);
            }
            v
        })
        .collect();
    Some(LeftSolution {
        particular,
        nullspace,
    })
}
