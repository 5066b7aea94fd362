//! Small dense linear algebra over prime fields F_p.
//!
//! Everything here works on `u64` entries reduced mod p, at the tiny sizes
//! the group constructions need (k <= 8 or so). Vectors double as point
//! indices for permutation representations of F_p^k via little-endian base-p
//! encoding.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Some((p, k)) iff n = p^k for a prime p and k >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factor_u64(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub p: u64,
    pub k: usize,
    /// Row-major k x k entries, each < p.
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn new(p: u64, k: usize, data: Vec<u64>) -> Result<ModMatrix> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{} is not prime", p)));
        }
        if data.len() != k * k {
            return Err(Error::InvalidParameter(format!(
                "matrix needs {} entries, got {}",
                k * k,
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(ModMatrix { p, k, data })
    }

    pub fn identity(p: u64, k: usize) -> ModMatrix {
        let mut data = vec![0; k * k];
        for i in 0..k {
            data[i * k + i] = 1;
        }
        ModMatrix { p, k, data }
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.k + col]
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        debug_assert_eq!(self.k, other.k);
        let k = self.k;
        let mut data = vec![0u64; k * k];
        for i in 0..k {
            for l in 0..k {
                let a = self.at(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..k {
                    data[i * k + j] = (data[i * k + j] + a * other.at(l, j)) % self.p;
                }
            }
        }
        ModMatrix {
            p: self.p,
            k,
            data,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.p, self.k)
    }

    /// Row vector times matrix: v -> v M.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.k);
        let mut out = vec![0u64; self.k];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.k {
                out[j] = (out[j] + vi * self.at(i, j)) % self.p;
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        rank(&as_rows(self), self.p) == self.k
    }

    /// Multiplicative order in GL(k, p); errors if it exceeds `cap`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::InvalidParameter("matrix is singular".into()));
        }
        let mut acc = self.clone();
        let mut ord = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            ord += 1;
            if ord > cap {
                return Err(Error::ResourceExceeded(format!(
                    "matrix order exceeds {}",
                    cap
                )));
            }
        }
        Ok(ord)
    }
}

fn as_rows(m: &ModMatrix) -> Vec<Vec<u64>> {
    (0..m.k)
        .map(|i| m.data[i * m.k..(i + 1) * m.k].to_vec())
        .collect()
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p: Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row echelon basis of the span of `rows` over F_p.
pub fn row_echelon(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            let lead = b.iter().position(|&x| x != 0).expect("basis rows nonzero");
            if r[lead] != 0 {
                let c = r[lead];
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri = (*ri + (p - c) * bi) % p;
                }
            }
        }
        if let Some(lead) = r.iter().position(|&x| x != 0) {
            let inv = mod_inverse(r[lead], p);
            for x in r.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push(r);
            basis.sort_by_key(|b| b.iter().position(|&x| x != 0));
            // Back-substitute to keep the basis reduced.
            let snapshot = basis.clone();
            for (i, b) in basis.iter_mut().enumerate() {
                for (j, other) in snapshot.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let lead = other.iter().position(|&x| x != 0).unwrap();
                    if b[lead] != 0 && other.iter().take(lead).all(|&x| x == 0) {
                        let c = b[lead];
                        for (bi, oi) in b.iter_mut().zip(other) {
                            *bi = (*bi + (p - c) * oi) % p;
                        }
                    }
                }
            }
        }
    }
    basis
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    row_echelon(rows, p).len()
}

pub fn in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let mut rows: Vec<Vec<u64>> = basis.to_vec();
    let before = rank(&rows, p);
    rows.push(v.to_vec());
    rank(&rows, p) == before
}

/// Standard basis vectors completing `basis` to all of F_p^k.
pub fn complete_basis(basis: &[Vec<u64>], k: usize, p: u64) -> Vec<Vec<u64>> {
    let mut span: Vec<Vec<u64>> = basis.to_vec();
    let mut extra = Vec::new();
    for i in 0..k {
        let mut e = vec![0u64; k];
        e[i] = 1;
        if !in_span(&span, &e, p) {
            span.push(e.clone());
            extra.push(e);
        }
    }
    extra
}

/// Basis of the kernel of the functional v -> v·w over F_p^k.
pub fn functional_kernel_basis(w: &[u64], p: u64) -> Vec<Vec<u64>> {
    let k = w.len();
    let Some(pivot) = w.iter().position(|&x| x != 0) else {
        // Zero functional: kernel is everything.
        return (0..k)
            .map(|i| {
                let mut e = vec![0u64; k];
                e[i] = 1;
                e
            })
            .collect();
    };
    let inv = mod_inverse(w[pivot], p);
    let mut out = Vec::with_capacity(k - 1);
    for i in 0..k {
        if i == pivot {
            continue;
        }
        // e_i - (w_i / w_pivot) e_pivot
        let mut v = vec![0u64; k];
        v[i] = 1;
        v[pivot] = (p - w[i] % p) * inv % p;
        out.push(v);
    }
    out
}

/// All nonzero functionals on F_p^k up to scalar: first nonzero coord is 1.
/// There are (p^k - 1)/(p - 1) of them, in lexicographic order.
pub fn projective_functionals(p: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let total = (p as u128).pow(k as u32);
    let mut idx: u128 = 1;
    while idx < total {
        let v = index_to_vec(idx, p, k);
        if *v.iter().find(|&&x| x != 0).unwrap() == 1 {
            out.push(v);
        }
        idx += 1;
    }
    out
}

/// Little-endian base-p encoding of a vector as a point index.
pub fn vec_to_index(v: &[u64], p: u64) -> u128 {
    let mut idx: u128 = 0;
    for &x in v.iter().rev() {
        idx = idx * p as u128 + x as u128;
    }
    idx
}

pub fn index_to_vec(mut idx: u128, p: u64, k: usize) -> Vec<u64> {
    let mut v = vec![0u64; k];
    for slot in v.iter_mut() {
        *slot = (idx % p as u128) as u64;
        idx /= p as u128;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(19));
        assert!(!is_prime(1));
        assert!(!is_prime(21));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(12_607_619_787), vec![(3, 7), (7, 8)]);
        assert_eq!(prime_power(2187), Some((3, 7)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn matrix_order_and_inverse() {
        // [[0,18],[1,4]] over F19 satisfies x^2 - 4x + 1, a factor of
        // x^4+x^3+x^2+x+1, so it has order 5.
        let m = ModMatrix::new(19, 2, vec![0, 18, 1, 4]).unwrap();
        assert!(m.is_invertible());
        assert_eq!(m.order(100).unwrap(), 5);
        let m2 = ModMatrix::new(5, 1, vec![2]).unwrap();
        assert_eq!(m2.order(100).unwrap(), 4);
        let singular = ModMatrix::new(3, 2, vec![1, 2, 2, 4]).unwrap();
        assert!(!singular.is_invertible());
    }

    #[test]
    fn echelon_and_span() {
        let p = 3;
        let rows = vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 1]];
        let basis = row_echelon(&rows, p);
        assert_eq!(basis.len(), 2);
        assert!(in_span(&basis, &[1, 1, 1], p));
        assert!(!in_span(&basis, &[1, 0, 0], p));
        let extra = complete_basis(&basis, 3, p);
        assert_eq!(extra.len(), 1);
    }

    #[test]
    fn kernel_of_functional() {
        let p = 3;
        let w = vec![1, 2, 0, 1];
        let basis = functional_kernel_basis(&w, p);
        assert_eq!(basis.len(), 3);
        for v in &basis {
            let dot: u64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert_eq!(dot % p, 0);
        }
        assert_eq!(rank(&basis, p), 3);
    }

    #[test]
    fn projective_count() {
        // (3^7 - 1) / 2 = 1093 hyperplanes of F_3^7.
        assert_eq!(projective_functionals(3, 7).len(), 1093);
        assert_eq!(projective_functionals(2, 3).len(), 7);
    }

    #[test]
    fn vector_indexing_round_trip() {
        let p = 7;
        for idx in 0..49u128 {
            let v = index_to_vec(idx, p, 2);
            assert_eq!(vec_to_index(&v, p), idx);
        }
    }
}
