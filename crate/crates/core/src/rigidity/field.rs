//! Arithmetic and row reduction over a prime field `Z/pZ` with `p < 2^63`.

/// Default modulus, `2^62 - 57`, the largest prime below `2^62`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat's little theorem.
#[inline]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[inline]
pub fn from_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Result of reducing a matrix to row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    /// Basis of the left kernel `{w : w R = 0}`, one vector per dependent
    /// row, when requested.
    pub left_kernel: Vec<Vec<u64>>,
}

impl Echelon {
    /// Rows that appear with a nonzero coefficient in some left-kernel vector.
    pub fn kernel_support(&self, rows: usize) -> Vec<bool> {
        let mut support = vec![false; rows];
        for w in &self.left_kernel {
            for (s, &x) in support.iter_mut().zip(w) {
                *s |= x != 0;
            }
        }
        support
    }
}

/// Row-reduces the row-major `rows x cols` matrix `data` in place.
///
/// With `track_kernel` the reduction is applied to `[data | I]` and the
/// identity part of the rows that vanish is returned as a left-kernel basis.
pub fn echelon(rows: usize, cols: usize, data: &[u64], p: u64, track_kernel: bool) -> Echelon {
    let width = if track_kernel { cols + rows } else { cols };
    let mut a = vec![0u64; rows * width];
    for i in 0..rows {
        a[i * width..i * width + cols].copy_from_slice(&data[i * cols..(i + 1) * cols]);
        if track_kernel {
            a[i * width + cols + i] = 1;
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| a[i * width + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..width {
                a.swap(pivot * width + j, rank * width + j);
            }
        }
        let inv = inv_mod(a[rank * width + c], p);
        let (top, bottom) = a.split_at_mut((rank + 1) * width);
        let pivot_row = &top[rank * width..];
        for row in bottom.chunks_exact_mut(width) {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            let factor = mul_mod(lead, inv, p);
            for j in c..width {
                let x = pivot_row[j];
                if x != 0 {
                    row[j] = sub_mod(row[j], mul_mod(factor, x, p), p);
                }
            }
        }
        rank += 1;
    }
    let left_kernel = if track_kernel {
        (rank..rows)
            .map(|i| a[i * width + cols..(i + 1) * width].to_vec())
            .collect()
    } else {
        Vec::new()
    };
    Echelon { rank, left_kernel }
}

pub fn rank_mod(rows: usize, cols: usize, data: &[u64], p: u64) -> usize {
    echelon(rows, cols, data, p, false).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_62_bit_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        assert_eq!(64 - DEFAULT_PRIME.leading_zeros(), 62);
        assert_eq!(DEFAULT_PRIME, (1u64 << 62) - 57);
        // no prime between it and 2^62
        assert!((DEFAULT_PRIME + 1..1u64 << 62).all(|q| !is_prime(q)));
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn inverse() {
        for a in [1u64, 2, 12345, DEFAULT_PRIME - 1] {
            assert_eq!(mul_mod(a, inv_mod(a, DEFAULT_PRIME), DEFAULT_PRIME), 1);
        }
        assert_eq!(from_i64(-1, 7), 6);
    }

    #[test]
    fn rank_and_kernel() {
        let p = 101;
        // third row = first + second
        let m = [1, 2, 3, 4, 5, 6, 5, 7, 9];
        let e = echelon(3, 3, &m, p, true);
        assert_eq!(e.rank, 2);
        assert_eq!(e.left_kernel.len(), 1);
        let w = &e.left_kernel[0];
        for c in 0..3 {
            let s = (0..3).fold(0, |acc, r| add_mod(acc, mul_mod(w[r], m[r * 3 + c], p), p));
            assert_eq!(s, 0);
        }
        assert_eq!(e.kernel_support(3), vec![true, true, true]);
        assert_eq!(rank_mod(2, 3, &[0, 0, 0, 0, 0, 0], p), 0);
        assert_eq!(rank_mod(0, 3, &[], p), 0);
    }
}
