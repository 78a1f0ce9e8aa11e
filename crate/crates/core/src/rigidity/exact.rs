//! Exact rank over the rationals by fraction-free (Bareiss) elimination on
//! integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn rank_integer(rows: usize, cols: usize, data: &[i64]) -> usize {
    let mut a: Vec<BigInt> = data.iter().map(|&x| BigInt::from(x)).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let p = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = (&p * &a[i * cols + j] - &lead * &a[rank * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}
