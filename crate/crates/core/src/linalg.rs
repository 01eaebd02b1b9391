//! Row reduction over `Z_d` for plain exponent matrices.

use crate::pauli::Dim;

/// Rank of a matrix over `Z_d`. Rows may have any common length.
pub fn rank_mod(mut rows: Vec<Vec<u32>>, dim: Dim) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = dim.inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = dim.mul(*v, inv);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = dim.sub(*v, dim.mul(f, *pv));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
