//! Dense linear algebra over F_p.

use crate::field::PrimeField;

/// Basis of `{ x : M x = 0 }` for an `m x n` matrix given by rows.
pub(crate) fn nullspace(rows: &[Vec<u32>], ncols: usize, f: &PrimeField) -> Vec<Vec<u32>> {
    let mut a: Vec<Vec<u32>> = rows.to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m {
            break;
        }
        let Some(pr) = (row..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, pr);
        let inv = f.inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[row].clone();
        for (r, cur) in a.iter_mut().enumerate() {
            if r != row && cur[col] != 0 {
                let c = cur[col];
                for (x, &y) in cur[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[r][fc]);
            }
            v
        })
        .collect()
}

/// `M^T` for a matrix given by rows.
pub(crate) fn transpose(rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}
