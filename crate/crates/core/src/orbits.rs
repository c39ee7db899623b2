//! `GL(n, p)` acting on function tables by `f ↦ f ∘ φ`, and orbit partitions.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{rank_mod_p, PrimeField, VectorSpace};
use crate::function::PAryFunction;

/// Largest matrix space `p^{n²}` that [`enumerate_gl`] will scan.
pub const GL_SCAN_LIMIT: u64 = 2_000_000;

/// An invertible `n × n` matrix over GF(p), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GlElement {
    pub p: u32,
    pub n: usize,
    pub entries: Vec<u8>,
}

impl GlElement {
    pub fn new(p: u32, n: usize, entries: Vec<u8>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if entries.len() != n * n || entries.iter().any(|&e| e as u32 >= p) {
            return Err(Error::invalid(format!("expected {} entries below {p}", n * n)));
        }
        let rows = entries.chunks(n).map(|r| r.iter().map(|&e| e as u32).collect()).collect();
        if rank_mod_p(rows, n, field) != n {
            return Err(Error::invalid("matrix is singular"));
        }
        Ok(GlElement { p, n, entries })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let entries = (0..n * n).map(|k| (k / n == k % n) as u8).collect();
        GlElement { p, n, entries }
    }

    /// Index of `φ(x)` for every index `x`.
    pub fn permutation(&self, space: &VectorSpace) -> Vec<usize> {
        let (p, n) = (self.p, self.n);
        let mut image = vec![0u8; n];
        (0..space.size())
            .map(|x| {
                let coords = space.coords(x);
                for (r, out) in image.iter_mut().enumerate() {
                    let row = &self.entries[r * n..(r + 1) * n];
                    let s: u32 = row.iter().zip(coords).map(|(&a, &b)| a as u32 * b as u32).sum();
                    *out = (s % p) as u8;
                }
                space.index_of(&image)
            })
            .collect()
    }

    pub fn transpose(&self) -> GlElement {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n]).collect();
        GlElement { p: self.p, n, entries }
    }

    /// The inverse matrix, by Gauss-Jordan elimination mod p.
    pub fn inverse(&self) -> GlElement {
        let field = PrimeField::new(self.p).expect("validated");
        let n = self.n;
        let mut a: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut row: Vec<u32> = self.entries[r * n..(r + 1) * n].iter().map(|&e| e as u32).collect();
                row.extend((0..n).map(|c| (c == r) as u32));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0).expect("invertible");
            a.swap(col, pivot);
            let inv = field.inv(a[col][col]).expect("nonzero pivot");
            for x in a[col].iter_mut() {
                *x = field.mul(*x, inv);
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..2 * n {
                        let sub = field.mul(factor, a[col][c]);
                        a[r][c] = field.sub(a[r][c], sub);
                    }
                }
            }
        }
        let entries = a.iter().flat_map(|row| row[n..].iter().map(|&x| x as u8)).collect();
        GlElement { p: self.p, n, entries }
    }
}

/// `|GL(n, p)| = Π_{i<n} (p^n − p^i)`.
pub fn gl_order(n: usize, p: u32) -> u64 {
    let q = (p as u64).pow(n as u32);
    (0..n as u32).map(|i| q - (p as u64).pow(i)).product()
}

/// Every invertible matrix, found by scanning all `p^{n²}` matrices.
pub fn enumerate_gl(n: usize, p: u32) -> Result<Vec<GlElement>> {
    let field = PrimeField::new(p)?;
    let total = (p as u64)
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= GL_SCAN_LIMIT)
        .ok_or_else(|| Error::unsupported(format!("scanning {p}^{} matrices exceeds the limit", n * n)))?;
    let mut group = Vec::with_capacity(gl_order(n, p) as usize);
    let mut entries = vec![0u8; n * n];
    for index in 0..total {
        let mut rest = index;
        for e in entries.iter_mut() {
            *e = (rest % p as u64) as u8;
            rest /= p as u64;
        }
        let rows = entries.chunks(n).map(|r| r.iter().map(|&e| e as u32).collect()).collect();
        if rank_mod_p(rows, n, field) == n {
            group.push(GlElement {
                p,
                n,
                entries: entries.clone(),
            });
        }
    }
    Ok(group)
}

/// `x ↦ f(φ(x))`.
pub fn act(phi: &GlElement, f: &PAryFunction) -> Result<PAryFunction> {
    if phi.p != f.p() || phi.n != f.n() {
        return Err(Error::invalid("matrix and function dimensions differ"));
    }
    let checked = GlElement::new(phi.p, phi.n, phi.entries.clone())?;
    Ok(f.compose_permutation(&checked.permutation(&f.space())))
}

/// One orbit: members are indices into the input set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: PAryFunction,
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbits sorted by size, then by representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
    /// `orbit_of[i]` for each input function `i`.
    pub orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    /// Orbit index of a table, if it belongs to the input set.
    pub fn orbit_containing(&self, set: &[PAryFunction], f: &PAryFunction) -> Option<usize> {
        set.iter().position(|g| g == f).map(|i| self.orbit_of[i])
    }
}

/// Partitions `set` into orbits under the permutations induced by `group`.
///
/// Functions are bucketed by signature first, since the action preserves it.
/// Every image must lie in `set`; otherwise the first escaping image is
/// reported.
pub fn orbit_partition(set: &[PAryFunction], group: &[GlElement]) -> Result<OrbitPartition> {
    let Some(first) = set.first() else {
        return Ok(OrbitPartition {
            orbits: Vec::new(),
            orbit_of: Vec::new(),
        });
    };
    let space = first.space();
    let perms: Vec<Vec<usize>> = group.iter().map(|g| g.permutation(&space)).collect();
    let mut buckets: HashMap<Vec<usize>, HashMap<&[u8], usize>> = HashMap::new();
    for (i, f) in set.iter().enumerate() {
        if f.p() != first.p() || f.n() != first.n() {
            return Err(Error::invalid("functions in the set have different dimensions"));
        }
        buckets.entry(f.signature()).or_default().insert(f.values(), i);
    }
    let mut orbit_of = vec![usize::MAX; set.len()];
    let mut orbits = Vec::new();
    for (i, f) in set.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let bucket = &buckets[&f.signature()];
        let id = orbits.len();
        let mut members = Vec::new();
        for perm in &perms {
            let image = f.compose_permutation(perm);
            let Some(&j) = bucket.get(image.values()) else {
                return Err(Error::ClosureViolation(format!("{f} is mapped to {image}")));
            };
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                members.push(j);
            }
        }
        members.sort_unstable();
        let representative = members
            .iter()
            .map(|&j| &set[j])
            .min_by(|a, b| a.values().cmp(b.values()))
            .expect("orbit contains f")
            .clone();
        orbits.push(Orbit { representative, members });
    }
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by(|&a, &b| {
        (orbits[a].size(), orbits[a].representative.values())
            .cmp(&(orbits[b].size(), orbits[b].representative.values()))
    });
    let mut renumber = vec![0; orbits.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    for o in orbit_of.iter_mut() {
        *o = renumber[*o];
    }
    let mut slots: Vec<Option<Orbit>> = orbits.into_iter().map(Some).collect();
    let orbits = order.iter().map(|&old| slots[old].take().expect("each orbit once")).collect();
    Ok(OrbitPartition { orbits, orbit_of })
}

/// `rows[o][a−1]` is the orbit holding `a · rep_o`, or `None` if it leaves the set.
pub fn scalar_relations(partition: &OrbitPartition, set: &[PAryFunction]) -> Vec<Vec<Option<usize>>> {
    let index: HashMap<&[u8], usize> = set.iter().enumerate().map(|(i, f)| (f.values(), i)).collect();
    partition
        .orbits
        .iter()
        .map(|orbit| {
            let rep = &orbit.representative;
            (1..rep.p())
                .map(|a| {
                    let scaled = rep.scale(a);
                    index.get(scaled.values()).map(|&i| partition.orbit_of[i])
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::walsh_transform;

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_gl(2, 3).unwrap().len(), 48);
        assert_eq!(enumerate_gl(2, 5).unwrap().len(), 480);
        assert_eq!(gl_order(3, 3), 11232);
        assert!(matches!(enumerate_gl(4, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn identity_and_negation() {
        let f = PAryFunction::new(3, 2, vec![0, 2, 2, 1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(act(&GlElement::identity(3, 2), &f).unwrap(), f);
        let minus = GlElement::new(3, 2, vec![2, 0, 0, 2]).unwrap();
        assert_eq!(act(&minus, &f).unwrap(), f);
        assert!(GlElement::new(3, 2, vec![1, 1, 1, 1]).is_err());
    }

    #[test]
    fn walsh_covariance() {
        let f = PAryFunction::new(3, 2, vec![0, 1, 2, 2, 0, 1, 1, 0, 0]).unwrap();
        let space = f.space();
        for phi in enumerate_gl(2, 3).unwrap().iter().step_by(7) {
            let g = act(phi, &f).unwrap();
            let wf = walsh_transform(&f);
            let wg = walsh_transform(&g);
            let m = phi.inverse().transpose();
            let perm = m.permutation(&space);
            for u in 0..space.size() {
                assert_eq!(wg.values[u], wf.values[perm[u]]);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let space = VectorSpace::new(5, 2).unwrap();
        for phi in enumerate_gl(2, 5).unwrap().iter().step_by(13) {
            let forward = phi.permutation(&space);
            let back = phi.inverse().permutation(&space);
            assert!((0..space.size()).all(|x| back[forward[x]] == x));
        }
    }

    #[test]
    fn closure_violation_is_reported() {
        let f = PAryFunction::new(3, 2, vec![0, 1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        let group = enumerate_gl(2, 3).unwrap();
        assert!(matches!(orbit_partition(&[f], &group), Err(Error::ClosureViolation(_))));
    }
}
