//! Algebraic normal form: the unique reduced polynomial representing a
//! function table, with every exponent in `0..p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::function::PAryFunction;

/// A reduced polynomial over GF(p) in the variables `x0, …, x{n-1}`.
///
/// Keys are exponent tuples, values are nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anf {
    p: u32,
    n: usize,
    terms: BTreeMap<Vec<u8>, u8>,
}

impl Anf {
    pub fn zero(p: u32, n: usize) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(Anf {
            p,
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, u8> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · x^exponents`, reducing exponents by `x^p = x`.
    pub fn add_term(&mut self, exponents: &[u32], coeff: i64) -> Result<()> {
        if exponents.len() != self.n {
            return Err(Error::invalid(format!(
                "monomial has {} exponents, expected {}",
                exponents.len(),
                self.n
            )));
        }
        let key: Vec<u8> = exponents
            .iter()
            .map(|&e| reduce_exponent(e, self.p) as u8)
            .collect();
        let p = self.p as i64;
        let add = coeff.rem_euclid(p);
        let current = self.terms.get(&key).copied().unwrap_or(0) as i64;
        let next = (current + add) % p;
        if next == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next as u8);
        }
        Ok(())
    }

    /// Largest total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| total_degree(e)).max().unwrap_or(0)
    }

    /// True iff every monomial has the same total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| total_degree(e));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn has_only_even_degree_terms(&self) -> bool {
        self.terms.keys().all(|e| total_degree(e).is_multiple_of(2))
    }

    /// The value table of this polynomial.
    pub fn evaluate(&self) -> PAryFunction {
        let p = self.p as usize;
        let field = PrimeField::new(self.p).expect("validated");
        // powers[x][e] = x^e mod p
        let powers: Vec<Vec<u32>> = (0..self.p)
            .map(|x| (0..self.p).map(|e| field.pow(x, e)).collect())
            .collect();
        let size = p.pow(self.n as u32);
        let mut values = vec![0u8; size];
        let mut coords = vec![0u8; self.n];
        for (index, value) in values.iter_mut().enumerate() {
            let mut rest = index;
            for c in coords.iter_mut() {
                *c = (rest % p) as u8;
                rest /= p;
            }
            let mut acc = 0u32;
            for (exps, &coeff) in &self.terms {
                let mut term = coeff as u32;
                for (i, &e) in exps.iter().enumerate() {
                    term = term * powers[coords[i] as usize][e as usize] % self.p;
                    if term == 0 {
                        break;
                    }
                }
                acc = (acc + term) % self.p;
            }
            *value = acc as u8;
        }
        PAryFunction::from_table_unchecked(self.p, self.n, values)
    }

    /// Parses text such as `-x0^2 + 2x1^2` or `x0*x2 + 2*x1^2 + 2*x0^2*x1^2`.
    ///
    /// Variables are `x0, x1, …` (also accepted: `x_0`). Products may be
    /// written with `*` or by juxtaposition. Coefficients are read mod p.
    pub fn parse(text: &str, p: u32, n: usize) -> Result<Self> {
        let mut anf = Anf::zero(p, n)?;
        let mut parser = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            n,
        };
        parser.skip_ws();
        if parser.at_end() {
            return Err(parser.error("empty polynomial"));
        }
        let mut first = true;
        while !parser.at_end() {
            let mut sign = 1i64;
            match parser.peek() {
                Some(b'+') => {
                    parser.pos += 1;
                }
                Some(b'-') => {
                    parser.pos += 1;
                    sign = -1;
                }
                _ if !first => return Err(parser.error("expected '+' or '-'")),
                _ => {}
            }
            parser.skip_ws();
            let (coeff, exps) = parser.term()?;
            let coeff = (coeff % p as i64) * sign;
            anf.add_term(&exps, coeff)?;
            parser.skip_ws();
            first = false;
        }
        Ok(anf)
    }
}

fn total_degree(e: &[u8]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Reduces an exponent using `x^p = x`, keeping `x^0 = 1` distinct.
fn reduce_exponent(e: u32, p: u32) -> u32 {
    if e < p {
        e
    } else {
        (e - 1) % (p - 1) + 1
    }
}

/// Graded reverse lexicographic comparison with `x0 > x1 > …`.
fn degrevlex(a: &[u8], b: &[u8]) -> Ordering {
    match total_degree(a).cmp(&total_degree(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<u8>, &u8)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| degrevlex(b.0, a.0));
        for (k, (exps, &coeff)) in ordered.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{e}")
                    }
                })
                .collect();
            match (coeff, factors.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", factors.join("*"))?,
                (c, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "number too large".into(),
            })
    }

    /// One product of a coefficient and variable powers.
    fn term(&mut self) -> Result<(i64, Vec<u32>)> {
        let mut coeff = 1i64;
        let mut exps = vec![0u32; self.n];
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let c = self.number()?;
                    coeff = coeff.checked_mul(c).ok_or_else(|| self.error("coefficient too large"))?;
                }
                Some(b'x') => {
                    let start = self.pos;
                    self.pos += 1;
                    if self.peek() == Some(b'_') {
                        self.pos += 1;
                    }
                    let var = self.number()? as usize;
                    if var >= self.n {
                        return Err(Error::Parse {
                            position: start,
                            message: format!("variable x{var} out of range for {} variables", self.n),
                        });
                    }
                    let mut e = 1u32;
                    self.skip_ws();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.number()? as u32;
                    }
                    exps[var] += e;
                }
                _ => return Err(self.error("expected a coefficient or a variable")),
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'x' | b'0'..=b'9') if factors > 0 => {}
                _ => break,
            }
        }
        Ok((coeff, exps))
    }
}

/// Coefficients (constant term first) of the univariate indicator
/// `(p-1) · Π_{j=1}^{p-1} (j + a - x)` of the point `a`.
fn atomic_univariate(p: u32, a: u32) -> Vec<u32> {
    let field = PrimeField::new(p).expect("prime");
    let mut poly = vec![p - 1];
    for j in 1..p {
        let c = field.add(j % p, a % p);
        // multiply by (c - x)
        let mut next = vec![0u32; poly.len() + 1];
        for (k, &q) in poly.iter().enumerate() {
            next[k] = field.add(next[k], field.mul(c, q));
            next[k + 1] = field.sub(next[k + 1], q);
        }
        poly = next;
    }
    poly
}

/// The reduced polynomial of the point indicator of `v`.
pub fn atomic_anf(p: u32, v: &[u8]) -> Result<Anf> {
    let n = v.len();
    let mut table = vec![0u8; (p as usize).pow(n as u32)];
    let index = crate::field::vector_index(&crate::field::PVector(v.to_vec()), p, n)?;
    table[index] = 1;
    Ok(to_anf(&PAryFunction::new(p, n, table)?))
}

/// Interpolates a value table as a sum of point indicators.
pub fn to_anf(f: &PAryFunction) -> Anf {
    let (p, n) = (f.p(), f.n());
    let field = PrimeField::new(p).expect("validated");
    let univariate: Vec<Vec<u32>> = (0..p).map(|a| atomic_univariate(p, a)).collect();
    let size = f.size();
    let pu = p as usize;
    // Exponent tuples share the vector-index layout because each exponent is below p.
    let mut dense = vec![0u32; size];
    let space = f.space();
    let mut product = vec![0u32; size];
    for v in 0..size {
        let g = f.value(v) as u32;
        if g == 0 {
            continue;
        }
        let coords = space.coords(v);
        product.fill(0);
        product[0] = g;
        let mut filled = 1;
        for (i, &c) in coords.iter().enumerate() {
            let poly = &univariate[c as usize];
            let stride = pu.pow(i as u32);
            for e in (0..pu).rev() {
                for k in 0..filled {
                    product[e * stride + k] = field.mul(product[k], poly[e]);
                }
            }
            filled *= pu;
        }
        for (d, &q) in dense.iter_mut().zip(&product) {
            *d = field.add(*d, q);
        }
    }
    let mut terms = BTreeMap::new();
    for (index, &c) in dense.iter().enumerate() {
        if c != 0 {
            terms.insert(space.coords(index).to_vec(), c as u8);
        }
    }
    Anf { p, n, terms }
}

/// Inverse of [`to_anf`]; checks the arity against `n`.
pub fn evaluate_anf(a: &Anf, p: u32, n: usize) -> Result<PAryFunction> {
    if a.p != p || a.n != n {
        return Err(Error::invalid(format!(
            "polynomial over GF({})^{} cannot be evaluated on GF({p})^{n}",
            a.p, a.n
        )));
    }
    Ok(a.evaluate())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_indicator() {
        for p in [2, 3, 5, 7] {
            let field = PrimeField::new(p).unwrap();
            for a in 0..p {
                let poly = atomic_univariate(p, a);
                for x in 0..p {
                    let value = poly
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (e, &c)| field.add(acc, field.mul(c, field.pow(x, e as u32))));
                    assert_eq!(value, (x == a) as u32, "p={p} a={a} x={x}");
                }
            }
        }
    }

    #[test]
    fn atomic_examples() {
        assert_eq!(
            atomic_anf(3, &[1, 1]).unwrap().to_string(),
            "x0^2*x1^2 + x0^2*x1 + x0*x1^2 + x0*x1"
        );
        assert_eq!(
            atomic_anf(3, &[0, 0]).unwrap().to_string(),
            "x0^2*x1^2 + 2*x0^2 + 2*x1^2 + 1"
        );
        let table = atomic_anf(3, &[1, 1]).unwrap().evaluate();
        assert_eq!(table.values(), &[0, 0, 0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_table_gives_zero_polynomial() {
        let anf = to_anf(&PAryFunction::zero(3, 2).unwrap());
        assert!(anf.is_zero());
        assert_eq!(anf.to_string(), "0");
        assert_eq!(anf.degree(), 0);
        assert!(anf.is_homogeneous());
    }

    #[test]
    fn parse_and_evaluate() {
        let anf = Anf::parse("x0x1 + 2x1^2", 3, 2).unwrap();
        let f = anf.evaluate();
        assert_eq!(f.value(3), 2);
        let g = Anf::parse("x1^2+x0*x2", 3, 3).unwrap().evaluate();
        assert_eq!(g.value(13), 2);
        assert_eq!(Anf::parse("-x0^2 + 2x1^2", 5, 2).unwrap().to_string(), "4*x0^2 + 2*x1^2");
        assert_eq!(Anf::parse("x_0^2 - x_1^2", 3, 2).unwrap().to_string(), "x0^2 + 2*x1^2");
        assert!(Anf::parse("0", 3, 2).unwrap().is_zero());
    }

    #[test]
    fn parse_reduces_exponents() {
        let a = Anf::parse("x0^5", 3, 1).unwrap();
        assert_eq!(a.to_string(), "x0");
        let b = Anf::parse("x0^4", 3, 1).unwrap();
        assert_eq!(b.to_string(), "x0^2");
    }

    #[test]
    fn parse_errors() {
        for (text, position) in [("x0 + x3", 5), ("x0 ++ x1", 4), ("", 0), ("x0 $", 3)] {
            match Anf::parse(text, 3, 2) {
                Err(Error::Parse { position: got, .. }) => assert_eq!(got, position, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn degree_and_homogeneity() {
        let a = Anf::parse("2x0^2x1^2 + x0^2 + x0x1 + 2x1^2", 3, 2).unwrap();
        assert_eq!(a.degree(), 4);
        assert!(!a.is_homogeneous());
        let b = Anf::parse("x0^2 + x0*x1", 5, 2).unwrap();
        assert_eq!(b.degree(), 2);
        assert!(b.is_homogeneous());
    }

    #[test]
    fn round_trip_small() {
        for values in [[0u8, 1, 1, 2, 0, 1, 2, 1, 0], [0, 2, 2, 1, 0, 0, 1, 0, 0]] {
            let f = PAryFunction::new(3, 2, values.to_vec()).unwrap();
            assert_eq!(evaluate_anf(&to_anf(&f), 3, 2).unwrap(), f);
        }
        let anf = Anf::zero(3, 2).unwrap();
        assert!(evaluate_anf(&anf, 3, 3).is_err());
    }
}
