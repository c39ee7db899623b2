//! Arithmetic on GF(p) and on the coordinate space GF(p)^n.
//!
//! Vectors are addressed by their index `Σ v_i p^i`, so coordinate 0 varies
//! fastest. Every table, matrix and listing in the crate uses this order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field GF(p) with canonical representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

/// A vector of GF(p)^n, stored as its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PVector(pub Vec<u8>);

impl PVector {
    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for PVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Index of `v` in the listing where coordinate 0 varies fastest.
pub fn vector_index(v: &PVector, p: u32, n: usize) -> Result<usize> {
    if v.len() != n {
        return Err(Error::invalid(format!(
            "vector has {} coordinates, expected {n}",
            v.len()
        )));
    }
    let mut index = 0usize;
    for (i, &c) in v.0.iter().enumerate().rev() {
        if c as u32 >= p {
            return Err(Error::invalid(format!("coordinate {i} = {c} is not below p = {p}")));
        }
        index = index * p as usize + c as usize;
    }
    Ok(index)
}

/// Inverse of [`vector_index`].
pub fn vector_from_index(mut index: usize, p: u32, n: usize) -> PVector {
    let mut coords = Vec::with_capacity(n);
    for _ in 0..n {
        coords.push((index % p as usize) as u8);
        index /= p as usize;
    }
    PVector(coords)
}

/// GF(p)^n with precomputed index arithmetic.
#[derive(Clone, Debug)]
pub struct VectorSpace {
    field: PrimeField,
    n: usize,
    size: usize,
    digits: Vec<u8>,
    neg: Vec<usize>,
}

impl VectorSpace {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::invalid("arity must be at least 1"));
        }
        let size = (p as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::unsupported(format!("GF({p})^{n} is too large")))?;
        let mut digits = Vec::with_capacity(size * n);
        for i in 0..size {
            digits.extend_from_slice(&vector_from_index(i, p, n).0);
        }
        let mut space = VectorSpace {
            field,
            n,
            size,
            digits,
            neg: Vec::new(),
        };
        space.neg = (0..size).map(|i| space.scale(p - 1, i)).collect();
        Ok(space)
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of vectors, p^n.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, i: usize) -> &[u8] {
        &self.digits[i * self.n..(i + 1) * self.n]
    }

    pub fn vector(&self, i: usize) -> PVector {
        PVector(self.coords(i).to_vec())
    }

    pub fn index_of(&self, coords: &[u8]) -> usize {
        let p = self.p() as usize;
        coords.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
    }

    fn combine(&self, a: usize, b: usize, op: impl Fn(u32, u32) -> u32) -> usize {
        let p = self.p() as usize;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut index = 0;
        for k in (0..self.n).rev() {
            index = index * p + op(ca[k] as u32, cb[k] as u32) as usize;
        }
        index
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| self.field.add(x, y))
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| self.field.sub(x, y))
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn scale(&self, k: u32, a: usize) -> usize {
        let p = self.p() as usize;
        self.coords(a)
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * p + self.field.mul(k, c as u32) as usize)
    }

    /// Standard inner product ⟨a, b⟩ in GF(p).
    pub fn dot(&self, a: usize, b: usize) -> u32 {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let s: u32 = ca.iter().zip(cb).map(|(&x, &y)| x as u32 * y as u32).sum();
        s % self.p()
    }

    /// Table of ⟨u, x⟩ for all pairs, row-major in u.
    pub fn dot_table(&self) -> Vec<u8> {
        let mut t = Vec::with_capacity(self.size * self.size);
        for u in 0..self.size {
            for x in 0..self.size {
                t.push(self.dot(u, x) as u8);
            }
        }
        t
    }

    /// Dimension of the span of the given vectors (Gaussian elimination mod p).
    pub fn span_dimension(&self, vectors: &[usize]) -> usize {
        let rows: Vec<Vec<u32>> = vectors
            .iter()
            .map(|&v| self.coords(v).iter().map(|&c| c as u32).collect())
            .collect();
        rank_mod_p(rows, self.n, self.field)
    }
}

pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u32>>, cols: usize, field: PrimeField) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        for c in 0..cols {
            rows[rank][c] = field.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..cols {
                    let sub = field.mul(factor, rows[rank][c]);
                    rows[r][c] = field.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(vector_index(&PVector(vec![0, 0]), 3, 2).unwrap(), 0);
        assert_eq!(vector_index(&PVector(vec![1, 0]), 3, 2).unwrap(), 1);
        assert_eq!(vector_index(&PVector(vec![0, 1]), 3, 2).unwrap(), 3);
        assert_eq!(vector_index(&PVector(vec![2, 2, 2]), 3, 3).unwrap(), 26);
        assert_eq!(vector_index(&PVector(vec![4, 4]), 5, 2).unwrap(), 24);
    }

    #[test]
    fn index_rejects_large_coordinate() {
        assert!(matches!(
            vector_index(&PVector(vec![3, 0]), 3, 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(vector_index(&PVector(vec![0]), 3, 2).is_err());
    }

    #[test]
    fn listing_matches_coordinate_zero_fastest() {
        let space = VectorSpace::new(3, 2).unwrap();
        let listed: Vec<_> = (0..9).map(|i| space.vector(i).to_string()).collect();
        assert_eq!(
            listed,
            ["(0, 0)", "(1, 0)", "(2, 0)", "(0, 1)", "(1, 1)", "(2, 1)", "(0, 2)", "(1, 2)", "(2, 2)"]
        );
    }

    #[test]
    fn index_round_trip() {
        for (p, n) in [(2, 4), (3, 2), (3, 3), (5, 2)] {
            for i in 0..(p as usize).pow(n as u32) {
                let v = vector_from_index(i, p, n);
                assert_eq!(vector_index(&v, p, n).unwrap(), i);
            }
        }
    }

    #[test]
    fn space_arithmetic() {
        let s = VectorSpace::new(5, 2).unwrap();
        for a in 0..25 {
            assert_eq!(s.add(a, s.neg(a)), 0);
            for b in 0..25 {
                assert_eq!(s.add(s.sub(a, b), b), a);
            }
        }
        assert_eq!(s.span_dimension(&[1, 2, 5]), 2);
        assert_eq!(s.span_dimension(&[1, 2, 3]), 1);
        assert_eq!(s.span_dimension(&[]), 0);
    }

    #[test]
    fn primes() {
        let primes: Vec<u32> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(PrimeField::new(9).is_err());
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
    }
}
