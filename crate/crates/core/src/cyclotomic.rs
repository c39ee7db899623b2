//! Exact arithmetic in the cyclotomic integers `Z[ζ_p]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p-2}`, which is a free
//! Z-basis, so two elements are equal exactly when their coefficients are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

fn checked(value: Option<i64>) -> i64 {
    value.expect("cyclotomic coefficient overflowed 64 bits")
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        CycInt {
            p,
            coeffs: vec![0; p as usize - 1],
        }
    }

    pub fn from_int(p: u32, value: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = value;
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[k.rem_euclid(p as i64) as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// `Σ_k counts[k] ζ^k` for a length-p count vector.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize, "expected {p} exponent counts");
        let top = counts[p as usize - 1];
        let coeffs = counts[..p as usize - 1]
            .iter()
            .map(|&c| checked(c.checked_sub(top)))
            .collect();
        CycInt { p, coeffs }
    }

    /// Builds an element from power-basis coefficients.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if coeffs.len() != p as usize - 1 {
            return Err(Error::invalid(format!(
                "expected {} coefficients, found {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CycInt { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "cannot combine elements of Z[ζ_{}] and Z[ζ_{}]",
                self.p, other.p
            )))
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| checked(a.checked_add(b)))
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_field(other)?;
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % p;
                counts[k] = checked(counts[k].checked_add(checked(a.checked_mul(b))));
            }
        }
        Ok(Self::from_exponent_counts(self.p, &counts))
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| checked(c.checked_mul(k))).collect(),
        }
    }

    /// `ζ^k · self`, a rotation in the redundant length-p form.
    pub fn mul_zeta_pow(&self, k: i64) -> CycInt {
        let p = self.p as usize;
        let shift = k.rem_euclid(p as i64) as usize;
        let mut counts = vec![0i64; p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(i + shift) % p] = c;
        }
        Self::from_exponent_counts(self.p, &counts)
    }

    /// The automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Result<CycInt> {
        let p = self.p as i64;
        let k = k.rem_euclid(p);
        if k == 0 {
            return Err(Error::invalid(format!("{k} is not a unit mod {p}")));
        }
        let mut counts = vec![0i64; p as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(i as i64 * k % p) as usize] = c;
        }
        Ok(Self::from_exponent_counts(self.p, &counts))
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        self.galois(self.p as i64 - 1).expect("p-1 is a unit")
    }

    /// `a · conj(a)`, i.e. `|a|^2` as an element of the real subfield.
    pub fn norm_sq(&self) -> CycInt {
        self * &self.conj()
    }

    /// `Some(r)` when the element is the rational integer `r`.
    pub fn is_rational(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// `Some(j)` when `self = ζ^j · c`; tested by exact multiplication.
    pub fn as_root_of_unity_multiple(&self, c: &CycInt) -> Option<u32> {
        if self.p != c.p || c.is_zero() {
            return None;
        }
        (0..self.p).find(|&j| c.mul_zeta_pow(j as i64) == *self)
    }

    /// Numerical value with `ζ = e^{2πi/p}`; for cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI / self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c as f64, angle * k as f64))
            .sum()
    }
}

/// `g = Σ_t ζ^{t²}`, with `g² = (−1)^{(p−1)/2} p`.
pub fn gauss_sum(p: u32) -> Result<CycInt> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::unsupported("the quadratic Gauss sum needs an odd prime"));
    }
    let mut counts = vec![0i64; p as usize];
    for t in 0..p as u64 {
        counts[(t * t % p as u64) as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(p, &counts))
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}
