//! Exact rank of small integer matrices by fraction-free (Bareiss)
//! elimination.

use crate::error::{Error, Result};

/// Rank of a dense row-major matrix; every row must have the same length.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let height = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, pivot);
        let p = m[rank][col];
        for i in rank + 1..height {
            let f = m[i][col];
            for j in col..width {
                // invariant: the division is exact
                let v = p
                    .checked_mul(m[i][j])
                    .and_then(|x| f.checked_mul(m[rank][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow("matrix rank"))?;
                m[i][j] = v / prev;
            }
        }
        prev = p;
        rank += 1;
        if rank == height {
            break;
        }
    }
    Ok(rank)
}
