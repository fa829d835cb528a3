//! Integer row reduction: Hermite normal form and integer kernels.
//!
//! Matrices are row-major `Vec<Vec<BigInt>>`. Every transformation applied
//! here is unimodular, so row spaces (as lattices) are preserved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

/// Brings `rows` to row echelon form using the first `pivot_cols` columns
/// for pivots. Pivots are positive and entries above each pivot are reduced
/// into `[0, pivot)`. Zero rows are moved to the bottom. Returns the rank.
pub fn echelon(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> usize {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..pivot_cols {
        if rank == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry in this column becomes the pivot candidate
            let best = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(rank, best);
            let mut done = true;
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[rank][col]);
                sub_multiple(rows, r, rank, &q);
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rank < rows.len() && !rows[rank][col].is_zero() {
            if rows[rank][col].is_negative() {
                for x in rows[rank].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
    }
    for &(pr, pc) in &pivots {
        for r in 0..pr {
            let q = rows[r][pc].div_floor(&rows[pr][pc]);
            sub_multiple(rows, r, pr, &q);
        }
    }
    rank
}

/// Hermite normal form of the lattice spanned by `rows`: the nonzero rows of
/// the reduced echelon form. Canonical for the lattice.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut m: IntMatrix = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let rank = echelon(&mut m, cols);
    m.truncate(rank);
    m
}

/// Basis (in Hermite form) of `{c in Z^n : A c = 0}` for `A` with `n` columns.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let r = a.len();
    // rows of [A^T | I]; reducing the A^T block records the combinations in the I block
    let mut m: IntMatrix = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = a.iter().map(|ar| ar[i].clone()).collect();
            row.extend((0..n).map(|j| BigInt::from(i32::from(i == j))));
            row
        })
        .collect();
    let rank = echelon(&mut m, r);
    let kernel: IntMatrix = m[rank..].iter().map(|row| row[r..].to_vec()).collect();
    if kernel.is_empty() {
        return kernel;
    }
    hermite_rows(&kernel)
}

/// Absolute determinant of a square integer matrix via echelon form.
pub fn abs_det(a: &[Vec<BigInt>]) -> BigInt {
    let mut m = a.to_vec();
    let n = m.len();
    if echelon(&mut m, n) < n {
        return BigInt::zero();
    }
    (0..n).map(|i| m[i][i].clone()).product::<BigInt>().abs()
}
