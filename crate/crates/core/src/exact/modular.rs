//! Word-size modular arithmetic and Chinese remaindering, used to solve
//! integer systems whose solution is known to be integral and bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    'outer: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let top = (1u64 << 62) - 1;
    (0..).map(move |k| top - 2 * k).filter(|&n| is_prime(n))
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

/// Solves `[cols] c = rhs` modulo `p` for an `n x s` system given by its
/// columns. `None` when the columns are dependent mod `p` or the system is
/// inconsistent.
pub fn solve_columns_mod(cols: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let s = cols.len();
    let n = rhs.len();
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            cols.iter()
                .map(|c| c[i])
                .chain(std::iter::once(rhs[i]))
                .collect()
        })
        .collect();
    for c in 0..s {
        let piv = (c..n).find(|&i| rows[i][c] != 0)?;
        rows.swap(c, piv);
        let inv = inv_mod(rows[c][c], p);
        for x in rows[c][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &pv) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = (*x + p - mul_mod(f, pv, p)) % p;
            }
        }
    }
    if rows[s..].iter().any(|r| r[s] != 0) {
        return None;
    }
    Some(rows[..s].iter().map(|r| r[s]).collect())
}

/// Index of the first vector in the Krylov sequence `j, Aj, A^2 j, ...`
/// that is dependent on the earlier ones, computed modulo `p`. This never
/// exceeds the rank over the rationals.
pub fn krylov_length_mod(adj: &[Vec<usize>], p: u64) -> usize {
    let n = adj.len();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut v = vec![1 % p; n];
    loop {
        let mut w = v.clone();
        for (piv, row) in &basis {
            let f = w[*piv];
            if f != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = (*x + p - mul_mod(f, r, p)) % p;
                }
            }
        }
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return basis.len();
        };
        let inv = inv_mod(w[piv], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        basis.push((piv, w));
        v = adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |acc, &u| (acc + v[u]) % p))
            .collect();
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Debug, Clone)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn push(&mut self, p: u64, residues: &[u64]) {
        let pb = BigInt::from(p);
        let m_mod_p = reduce(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v + M * ((r - v) / M mod p)
            let diff = (r + p - reduce(v, p)) % p;
            let t = mul_mod(diff, inv, p);
            *v += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
    }

    /// Residues mapped to the symmetric range `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        self.values
            .iter()
            .map(|v| {
                if v > &half {
                    v - &self.modulus
                } else {
                    v.clone()
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && p > 1 << 61));
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn crt_recovers_signed_values() {
        let vals: Vec<BigInt> = vec![
            BigInt::from(-5),
            BigInt::from(12345678901234567890u64) * BigInt::from(987654321987654321u64),
            BigInt::zero(),
        ];
        let mut crt = Crt::new(3);
        for p in large_primes().take(3) {
            let r: Vec<u64> = vals.iter().map(|v| reduce(v, p)).collect();
            crt.push(p, &r);
        }
        assert_eq!(crt.symmetric(), vals);
    }

    #[test]
    fn modular_solve() {
        let p = 101;
        // [[1,0],[1,1],[0,1]] c = [2,5,3] -> c = (2,3)
        let cols = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(solve_columns_mod(&cols, &[2, 5, 3], p), Some(vec![2, 3]));
        assert_eq!(solve_columns_mod(&cols, &[2, 5, 4], p), None);
        assert_eq!(
            solve_columns_mod(&[vec![1, 1], vec![2, 2]], &[0, 0], p),
            None
        );
    }
}
