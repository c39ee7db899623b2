//! Value tables of functions `GF(p)^n → GF(p)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, VectorSpace};

/// A function `GF(p)^n → GF(p)` stored as its value table in vector-index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PAryFunction {
    p: u32,
    n: usize,
    values: Vec<u8>,
}

impl PAryFunction {
    pub fn new(p: u32, n: usize, values: Vec<u8>) -> Result<Self> {
        if !is_prime(p) || p > 255 {
            return Err(Error::invalid(format!("modulus {p} is not a supported prime")));
        }
        if n == 0 {
            return Err(Error::invalid("arity must be at least 1"));
        }
        let expected = (p as usize)
            .checked_pow(n as u32)
            .ok_or_else(|| Error::unsupported(format!("GF({p})^{n} is too large")))?;
        if values.len() != expected {
            return Err(Error::invalid(format!(
                "value table has {} entries, expected {p}^{n} = {expected}",
                values.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v as u32 >= p) {
            return Err(Error::invalid(format!("value {v} at index {i} is not below p = {p}")));
        }
        Ok(PAryFunction { p, n, values })
    }

    pub fn zero(p: u32, n: usize) -> Result<Self> {
        Self::new(p, n, vec![0; (p as usize).pow(n as u32)])
    }

    /// Tabulates `rule` over all vectors, reducing its output mod p.
    pub fn from_fn(p: u32, n: usize, rule: impl Fn(&[u8]) -> i64) -> Result<Self> {
        let space = VectorSpace::new(p, n)?;
        let values = (0..space.size())
            .map(|i| rule(space.coords(i)).rem_euclid(p as i64) as u8)
            .collect();
        Self::new(p, n, values)
    }

    pub(crate) fn from_table_unchecked(p: u32, n: usize, values: Vec<u8>) -> Self {
        debug_assert_eq!(values.len(), (p as usize).pow(n as u32));
        PAryFunction { p, n, values }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, index: usize) -> u8 {
        self.values[index]
    }

    pub fn space(&self) -> VectorSpace {
        VectorSpace::new(self.p, self.n).expect("dimensions validated at construction")
    }

    /// True iff `f(-v) = f(v)` for every `v`.
    pub fn is_even(&self) -> bool {
        let space = self.space();
        (0..self.size()).all(|i| self.values[i] == self.values[space.neg(i)])
    }

    /// Level-set sizes `|f^{-1}(0)|, …, |f^{-1}(p-1)|`.
    pub fn signature(&self) -> Vec<usize> {
        let mut sig = vec![0; self.p as usize];
        for &v in &self.values {
            sig[v as usize] += 1;
        }
        sig
    }

    /// Indices of the vectors where `f` is nonzero, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.values[i] != 0).collect()
    }

    /// `a·f` for a scalar `a`.
    pub fn scale(&self, a: u32) -> PAryFunction {
        let values = self
            .values
            .iter()
            .map(|&v| ((v as u32 * a) % self.p) as u8)
            .collect();
        PAryFunction::from_table_unchecked(self.p, self.n, values)
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> PAryFunction {
        let space = self.space();
        let values = (0..self.size()).map(|i| self.values[space.neg(i)]).collect();
        PAryFunction::from_table_unchecked(self.p, self.n, values)
    }

    /// `x ↦ f(perm[x])`, where `perm` maps indices to indices.
    pub fn compose_permutation(&self, perm: &[usize]) -> PAryFunction {
        let values = perm.iter().map(|&j| self.values[j]).collect();
        PAryFunction::from_table_unchecked(self.p, self.n, values)
    }

    /// Sum of the values read as integers in `0..p`.
    pub fn integer_sum(&self) -> i64 {
        self.values.iter().map(|&v| v as i64).sum()
    }

    /// Parses a bare comma-separated value list for given `p`, `n`.
    pub fn parse_values(p: u32, n: usize, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            let trimmed = piece.trim();
            let position = offset + (piece.len() - piece.trim_start().len());
            let v: u32 = trimmed.parse().map_err(|_| Error::Parse {
                position,
                message: format!("expected a field element, found {trimmed:?}"),
            })?;
            if v >= p {
                return Err(Error::Parse {
                    position,
                    message: format!("value {v} is not below p = {p}"),
                });
            }
            values.push(v as u8);
            offset += piece.len() + 1;
        }
        Self::new(p, n, values)
    }

    /// Parses the literal form `p=3,n=2:0,2,2,1,0,0,1,0,0`.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let (header, body) = text.split_once(':').ok_or_else(|| Error::Parse {
            position: 0,
            message: "missing ':' between header and values".into(),
        })?;
        let mut p = None;
        let mut n = None;
        for field in header.split(',') {
            let field = field.trim();
            let bad = || Error::Parse {
                position: 0,
                message: format!("malformed header field {field:?}"),
            };
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" => p = Some(value as u32),
                "n" => n = Some(value),
                _ => return Err(bad()),
            }
        }
        let (Some(p), Some(n)) = (p, n) else {
            return Err(Error::Parse {
                position: 0,
                message: "header must give both p and n".into(),
            });
        };
        Self::parse_values(p, n, body).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + header.len() + 1,
                message,
            },
            other => other,
        })
    }

    /// Comma-separated values without the header.
    pub fn values_csv(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for PAryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={},n={}:{}", self.p, self.n, self.values_csv())
    }
}

impl std::str::FromStr for PAryFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_literal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u32, n: usize, v: &[u8]) -> PAryFunction {
        PAryFunction::new(p, n, v.to_vec()).unwrap()
    }

    #[test]
    fn evenness() {
        assert!(table(3, 2, &[0, 1, 1, 2, 0, 1, 2, 1, 0]).is_even());
        assert!(PAryFunction::from_fn(5, 2, |_| 3).unwrap().is_even());
        assert!(!table(3, 2, &[0, 1, 0, 0, 0, 0, 0, 0, 0]).is_even());
    }

    #[test]
    fn signatures() {
        let sq = PAryFunction::from_fn(5, 2, |x| (x[0] as i64).pow(2) + (x[1] as i64).pow(2)).unwrap();
        assert_eq!(sq.signature(), [9, 4, 4, 4, 4]);
        let g = PAryFunction::from_fn(5, 2, |x| {
            let (a, b) = (x[0] as i64, x[1] as i64);
            a * a - b * b + a
        })
        .unwrap();
        assert_eq!(g.signature(), [4, 9, 4, 4, 4]);
        assert_eq!(PAryFunction::zero(3, 2).unwrap().signature(), [9, 0, 0]);
    }

    #[test]
    fn supports() {
        let f = table(
            3,
            3,
            &[0, 2, 2, 1, 1, 1, 1, 1, 1, 2, 0, 1, 1, 2, 0, 1, 0, 0, 2, 1, 0, 1, 0, 0, 1, 0, 2],
        );
        assert_eq!(
            f.support(),
            [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18, 19, 21, 24, 26]
        );
        assert!(PAryFunction::zero(3, 2).unwrap().support().is_empty());
        assert_eq!(table(3, 2, &[0, 2, 2, 1, 0, 0, 1, 0, 0]).support(), [1, 2, 3, 6]);
    }

    #[test]
    fn literal_round_trip() {
        let f: PAryFunction = "p=3,n=2:0,2,2,1,0,0,1,0,0".parse().unwrap();
        assert_eq!(f.to_string(), "p=3,n=2:0,2,2,1,0,0,1,0,0");
        assert_eq!(f.values_csv(), "0,2,2,1,0,0,1,0,0");
    }

    #[test]
    fn literal_errors_carry_positions() {
        match PAryFunction::parse_literal("p=3,n=2:0,2,7,1,0,0,1,0,0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(PAryFunction::parse_literal("0,1,2").is_err());
        assert!(matches!(
            PAryFunction::parse_values(3, 2, "0,1"),
            Err(Error::InvalidInput(_))
        ));
        assert!(PAryFunction::new(4, 1, vec![0; 4]).is_err());
    }

    #[test]
    fn scaling_and_reflection() {
        let f = table(3, 2, &[0, 1, 2, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f.scale(2).values(), &[0, 2, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f.reflect().values(), &[0, 2, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f.integer_sum(), 3);
    }
}
