//! Partial difference sets, weighted partial difference sets, intersection
//! numbers and association schemes on the additive group `GF(p)^n`.

use std::collections::{BTreeMap, BTreeSet};

use ndarray::Array2;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::VectorSpace;
use crate::function::PAryFunction;
use crate::graph::{SrgParams, ValueSet};
use crate::report::keyed_cells;

/// Counts `#{(a, b) ∈ A × B : a − b = d}` for every `d`.
fn difference_counts(space: &VectorSpace, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<i64> {
    let mut counts = vec![0i64; space.size()];
    for &x in a {
        for &y in b {
            counts[space.sub(x, y)] += 1;
        }
    }
    counts
}

/// Counts `#{(a, b) ∈ A × B : a + b = d}` for every `d`.
fn sum_counts(space: &VectorSpace, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<i64> {
    let mut counts = vec![0i64; space.size()];
    for &x in a {
        for &y in b {
            counts[space.add(x, y)] += 1;
        }
    }
    counts
}

fn observed(counts: &[i64], over: impl IntoIterator<Item = usize>) -> ValueSet {
    over.into_iter().map(|d| counts[d]).collect()
}

fn single(set: &ValueSet) -> Option<i64> {
    (set.len() == 1).then(|| *set.iter().next().expect("one element"))
}

/// Result of the partial-difference-set test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PdsOutcome {
    /// A PDS with the given parameters.
    Parameters(SrgParams),
    /// `D` is every nonzero element; `μ` is undefined.
    Complete { v: i64, k: i64, lambda: i64 },
    /// `D` is empty.
    Empty { v: i64 },
    NotPds,
}

impl PdsOutcome {
    pub fn parameters(&self) -> Option<SrgParams> {
        match self {
            PdsOutcome::Parameters(params) => Some(*params),
            _ => None,
        }
    }
}

/// Tests whether the differences of `d` cover each nonzero element of `d`
/// exactly `λ` times and each nonzero element outside `d` exactly `μ` times.
pub fn is_pds(space: &VectorSpace, d: &BTreeSet<usize>) -> Result<PdsOutcome> {
    if d.contains(&0) {
        return Err(Error::invalid("a partial difference set may not contain 0"));
    }
    if let Some(&bad) = d.iter().find(|&&x| x >= space.size()) {
        return Err(Error::invalid(format!("index {bad} is outside the group")));
    }
    let v = space.size() as i64;
    let k = d.len() as i64;
    if d.is_empty() {
        return Ok(PdsOutcome::Empty { v });
    }
    let counts = difference_counts(space, d, d);
    debug_assert_eq!(counts[0], k);
    let inside = observed(&counts, d.iter().copied());
    let outside = observed(&counts, (1..space.size()).filter(|x| !d.contains(x)));
    let Some(lambda) = single(&inside) else {
        return Ok(PdsOutcome::NotPds);
    };
    if outside.is_empty() {
        return Ok(PdsOutcome::Complete { v, k, lambda });
    }
    match single(&outside) {
        Some(mu) => Ok(PdsOutcome::Parameters(SrgParams { v, k, lambda, mu })),
        None => Ok(PdsOutcome::NotPds),
    }
}

/// `Some((v, k, λ))` when every nonzero element is a difference exactly `λ` times.
pub fn is_difference_set(space: &VectorSpace, d: &BTreeSet<usize>) -> Option<(i64, i64, i64)> {
    let counts = difference_counts(space, d, d);
    let values = observed(&counts, 1..space.size());
    single(&values).map(|lambda| (space.size() as i64, d.len() as i64, lambda))
}

/// Parameters of the complementary set `G ∖ (D ∪ {0})`.
pub fn complement_pds_params(params: SrgParams) -> SrgParams {
    let SrgParams { v, k, lambda, mu } = params;
    SrgParams {
        v,
        k: v - k - 1,
        lambda: v - 2 * k - 2 + mu,
        mu: v - 2 * k + lambda,
    }
}

/// Checks `μ′ = k′(1 − μ/k)` whenever the right-hand side is an integer.
pub fn complement_mu_identity(params: SrgParams) -> Option<bool> {
    let c = complement_pds_params(params);
    if params.k == 0 || (c.k * (params.k - params.mu)) % params.k != 0 {
        return None;
    }
    Some(c.mu == c.k * (params.k - params.mu) / params.k)
}

/// One Latin-square-type parametrization `(N², R(N−1), N+R²−3R, R²−R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatinSquareType {
    pub n: i64,
    pub r: i64,
    pub negative: bool,
}

/// All `(N, R)` with `N, R` both positive (Latin square type) or both
/// negative (negative Latin square type) that produce the given parameters.
pub fn latin_square_type(params: SrgParams) -> Vec<LatinSquareType> {
    let SrgParams { v, k, lambda, mu } = params;
    let root = (v as f64).sqrt().round() as i64;
    let mut found = Vec::new();
    if root * root != v || root < 2 {
        return found;
    }
    for n in [root, -root] {
        if k % (n - 1) != 0 {
            continue;
        }
        let r = k / (n - 1);
        let signs_agree = (n > 0 && r > 0) || (n < 0 && r < 0);
        if signs_agree && n + r * r - 3 * r == lambda && r * r - r == mu {
            found.push(LatinSquareType { n, r, negative: n < 0 });
        }
    }
    found
}

/// A partition of `GF(p)^n` into `D_0 = {0}`, weight classes `D_1, …, D_r`
/// and the complement `D_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCurves {
    pub p: u32,
    pub n: usize,
    pub classes: Vec<BTreeSet<usize>>,
    /// Set when the origin had to be removed from a weight class.
    pub origin_removed: bool,
}

impl LevelCurves {
    /// `D_i = f^{-1}(i) ∖ {0}` for `i = 1, …, p−1`.
    pub fn from_function(f: &PAryFunction) -> Self {
        let p = f.p();
        let mut weight_classes = vec![BTreeSet::new(); p as usize - 1];
        for x in 1..f.size() {
            let v = f.value(x);
            if v != 0 {
                weight_classes[v as usize - 1].insert(x);
            }
        }
        let mut curves = Self::assemble(p, f.n(), weight_classes);
        curves.origin_removed = f.value(0) != 0;
        curves
    }

    /// Custom weight classes; they must be disjoint and avoid 0.
    pub fn from_classes(p: u32, n: usize, weight_classes: Vec<BTreeSet<usize>>) -> Result<Self> {
        let space = VectorSpace::new(p, n)?;
        let mut seen = BTreeSet::new();
        for class in &weight_classes {
            for &x in class {
                if x == 0 || x >= space.size() {
                    return Err(Error::invalid(format!("index {x} cannot belong to a weight class")));
                }
                if !seen.insert(x) {
                    return Err(Error::invalid(format!("index {x} lies in two classes")));
                }
            }
        }
        Ok(Self::assemble(p, n, weight_classes))
    }

    fn assemble(p: u32, n: usize, weight_classes: Vec<BTreeSet<usize>>) -> Self {
        let size = (p as usize).pow(n as u32);
        let used: BTreeSet<usize> = weight_classes.iter().flatten().copied().collect();
        let complement = (1..size).filter(|x| !used.contains(x)).collect();
        let mut classes = vec![BTreeSet::from([0])];
        classes.extend(weight_classes);
        classes.push(complement);
        LevelCurves {
            p,
            n,
            classes,
            origin_removed: false,
        }
    }

    /// Number of weight classes `r`.
    pub fn r(&self) -> usize {
        self.classes.len() - 2
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(BTreeSet::len).collect()
    }

    pub fn space(&self) -> VectorSpace {
        VectorSpace::new(self.p, self.n).expect("validated")
    }

    /// True iff every class is closed under negation.
    pub fn is_symmetric(&self) -> bool {
        let space = self.space();
        self.classes.iter().all(|c| c.iter().all(|&x| c.contains(&space.neg(x))))
    }

    /// `A_i(x, y) = 1` iff `x − y ∈ D_i`.
    pub fn slice_matrices(&self) -> Vec<Array2<i64>> {
        let space = self.space();
        let mut class_of = vec![0usize; space.size()];
        for (i, c) in self.classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        (0..self.classes.len())
            .map(|i| {
                Array2::from_shape_fn((space.size(), space.size()), |(x, y)| {
                    (class_of[space.sub(x, y)] == i) as i64
                })
            })
            .collect()
    }

    /// The union `D_1 ∪ … ∪ D_r`.
    pub fn union(&self) -> BTreeSet<usize> {
        self.classes[1..=self.r()].iter().flatten().copied().collect()
    }
}

/// Intersection numbers as observed sets, `tables[k][i][j]`; `None` for empty `D_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectTables {
    pub tables: Vec<Option<Vec<Vec<ValueSet>>>>,
}

impl DirectTables {
    /// Integer tables when every cell is constant.
    pub fn constant(&self) -> Option<Vec<Option<Vec<Vec<i64>>>>> {
        self.tables
            .iter()
            .map(|t| match t {
                None => Some(None),
                Some(rows) => rows
                    .iter()
                    .map(|row| row.iter().map(single).collect::<Option<Vec<_>>>())
                    .collect::<Option<Vec<_>>>()
                    .map(Some),
            })
            .collect()
    }
}

/// `p_ij^k(d) = #{(a, b) ∈ D_i × D_j : a + b = d}` for every `d ∈ D_k`.
pub fn intersection_numbers_direct(curves: &LevelCurves) -> DirectTables {
    let space = curves.space();
    let m = curves.classes.len();
    let sums: Vec<Vec<Vec<i64>>> = (0..m)
        .map(|i| (0..m).map(|j| sum_counts(&space, &curves.classes[i], &curves.classes[j])).collect())
        .collect();
    let tables = (0..m)
        .map(|k| {
            let dk = &curves.classes[k];
            if dk.is_empty() {
                return None;
            }
            Some(
                (0..m)
                    .map(|i| (0..m).map(|j| observed(&sums[i][j], dk.iter().copied())).collect())
                    .collect(),
            )
        })
        .collect();
    DirectTables { tables }
}

fn serialize_ratio_tables<S: Serializer>(
    tables: &[Option<Vec<Vec<Ratio<i64>>>>],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Option<Vec<Vec<String>>>> = tables
        .iter()
        .map(|t| {
            t.as_ref()
                .map(|rows| rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
        })
        .collect();
    text.serialize(serializer)
}

/// Intersection numbers `Tr(A_i A_j A_k) / (p^n |D_k|)` as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceTables {
    #[serde(serialize_with = "serialize_ratio_tables")]
    pub tables: Vec<Option<Vec<Vec<Ratio<i64>>>>>,
    /// `traces[i][j][k] = Tr(A_i A_j A_k)`.
    pub traces: Vec<Vec<Vec<i64>>>,
}

impl TraceTables {
    /// `(k, i, j)` of every cell that is not an integer.
    pub fn non_integral_cells(&self) -> Vec<(usize, usize, usize)> {
        let mut cells = Vec::new();
        for (k, t) in self.tables.iter().enumerate() {
            if let Some(rows) = t {
                for (i, row) in rows.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        if !x.is_integer() {
                            cells.push((k, i, j));
                        }
                    }
                }
            }
        }
        cells
    }

    pub fn is_integral(&self) -> bool {
        self.non_integral_cells().is_empty()
    }

    /// `|D_k| p_ij^k = |D_i| p_kj^i` wherever both sides are defined.
    pub fn size_symmetry_holds(&self, sizes: &[usize]) -> bool {
        let m = sizes.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                (0..m).all(|k| match (&self.tables[k], &self.tables[i]) {
                    (Some(tk), Some(ti)) => {
                        tk[i][j] * Ratio::from(sizes[k] as i64) == ti[k][j] * Ratio::from(sizes[i] as i64)
                    }
                    _ => true,
                })
            })
        })
    }
}

fn trace_of_product(x: &Array2<i64>, y: &Array2<i64>) -> i64 {
    (x * &y.t()).sum()
}

pub fn intersection_numbers_trace(curves: &LevelCurves) -> TraceTables {
    trace_tables_from_slices(&curves.slice_matrices(), &curves.sizes())
}

/// The trace formula for arbitrary slice matrices with the given class sizes.
pub fn trace_tables_from_slices(slices: &[Array2<i64>], sizes: &[usize]) -> TraceTables {
    let m = slices.len();
    let order = slices[0].nrows() as i64;
    let products: Vec<Vec<Array2<i64>>> = (0..m)
        .map(|i| (0..m).map(|j| slices[i].dot(&slices[j])).collect())
        .collect();
    let traces: Vec<Vec<Vec<i64>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| trace_of_product(&products[i][j], &slices[k])).collect())
                .collect()
        })
        .collect();
    let tables = (0..m)
        .map(|k| {
            (sizes[k] > 0).then(|| {
                (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| Ratio::new(traces[i][j][k], order * sizes[k] as i64))
                            .collect()
                    })
                    .collect()
            })
        })
        .collect();
    TraceTables { tables, traces }
}

/// Difference-count tables of a weight partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpdsReport {
    pub sizes: Vec<usize>,
    /// `λ_{i,j,ℓ}`: how often `d ∈ D_ℓ` arises as `a − b`, `a ∈ D_i`, `b ∈ D_j`.
    #[serde(serialize_with = "keyed_cells")]
    pub lambda: BTreeMap<(usize, usize, usize), ValueSet>,
    /// `μ_{i,j}`: the same count for `d` in the complement class.
    #[serde(serialize_with = "keyed_cells")]
    pub mu: BTreeMap<(usize, usize), ValueSet>,
    pub symmetric: bool,
    pub is_weighted_pds: bool,
    pub p_tables: DirectTables,
    pub integrality: Vec<(usize, usize, usize)>,
    /// `(λ, μ)` of the union `D` when `Σ_{i,j} λ_{i,j,ℓ}` does not depend on `ℓ`.
    pub collapsed_pds: Option<(i64, i64)>,
}

pub fn is_weighted_pds(curves: &LevelCurves) -> WpdsReport {
    let space = curves.space();
    let r = curves.r();
    let complement = &curves.classes[r + 1];
    let mut lambda = BTreeMap::new();
    let mut mu = BTreeMap::new();
    for i in 1..=r {
        for j in 1..=r {
            let counts = difference_counts(&space, &curves.classes[i], &curves.classes[j]);
            for l in 1..=r {
                if !curves.classes[l].is_empty() {
                    lambda.insert((i, j, l), observed(&counts, curves.classes[l].iter().copied()));
                }
            }
            if !complement.is_empty() {
                mu.insert((i, j), observed(&counts, complement.iter().copied()));
            }
        }
    }
    let symmetric = curves.is_symmetric();
    let constant = lambda.values().chain(mu.values()).all(|s| s.len() == 1);
    let is_weighted_pds = symmetric && !curves.union().is_empty() && constant;

    let collapsed_pds = constant.then(|| {
        let mut per_class = BTreeSet::new();
        for l in 1..=r {
            if curves.classes[l].is_empty() {
                continue;
            }
            let total: i64 = (1..=r)
                .flat_map(|i| (1..=r).map(move |j| (i, j)))
                .map(|(i, j)| single(&lambda[&(i, j, l)]).expect("constant"))
                .sum();
            per_class.insert(total);
        }
        let mu_total: i64 = mu.values().map(|s| single(s).expect("constant")).sum();
        (per_class.len() == 1).then(|| (*per_class.iter().next().expect("one"), mu_total))
    });
    let trace = intersection_numbers_trace(curves);
    WpdsReport {
        sizes: curves.sizes(),
        lambda,
        mu,
        symmetric,
        is_weighted_pds,
        p_tables: intersection_numbers_direct(curves),
        integrality: trace.non_integral_cells(),
        collapsed_pds: collapsed_pds.flatten(),
    }
}

/// An association scheme built from the translation-invariant relations
/// `R_i = {(x, y) : x − y ∈ D_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociationScheme {
    /// Number of nonempty nontrivial relations.
    pub classes: usize,
    /// `p[k][i][j]`, `None` for empty relations.
    pub intersection_numbers: Vec<Option<Vec<Vec<i64>>>>,
    /// Results of the identities tying the last class to the weight classes.
    pub identities: Vec<(String, bool)>,
}

/// Builds the scheme of a weighted PDS and verifies its parameters pairwise.
pub fn build_association_scheme(curves: &LevelCurves) -> Result<AssociationScheme> {
    let report = is_weighted_pds(curves);
    if !report.is_weighted_pds {
        return Err(Error::NotApplicable("the classes do not form a weighted PDS".into()));
    }
    let space = curves.space();
    let size = space.size();
    let m = curves.classes.len();
    let r = curves.r();
    let mut class_of = vec![0usize; size];
    for (i, c) in curves.classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    // p_ij(x, y) = #{z : (x, z) ∈ R_i, (z, y) ∈ R_j}, checked over all pairs.
    let mut observed: Vec<Vec<Vec<ValueSet>>> = vec![vec![vec![BTreeSet::new(); m]; m]; m];
    for x in 0..size {
        for y in 0..size {
            let k = class_of[space.sub(x, y)];
            let mut counts = vec![vec![0i64; m]; m];
            for z in 0..size {
                counts[class_of[space.sub(x, z)]][class_of[space.sub(z, y)]] += 1;
            }
            for i in 0..m {
                for j in 0..m {
                    observed[k][i][j].insert(counts[i][j]);
                }
            }
        }
    }
    let mut tables = Vec::with_capacity(m);
    for (k, table) in observed.iter().enumerate() {
        if curves.classes[k].is_empty() {
            tables.push(None);
            continue;
        }
        let rows = table
            .iter()
            .map(|row| row.iter().map(single).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotApplicable(format!("relation {k} has non-constant parameters")))?;
        tables.push(Some(rows));
    }

    let sizes = curves.sizes();
    let k_of = |i: usize| sizes[i] as i64;
    let mu_of = |i: usize, j: usize| report.mu.get(&(i, j)).and_then(single).unwrap_or(0);
    let last = r + 1;
    let mut identities = Vec::new();
    if let Some(t_last) = &tables[last] {
        for i in 1..=r {
            let rhs = k_of(i) - (1..=r).map(|j| mu_of(i, j)).sum::<i64>();
            identities.push((format!("p_{{{i},{last}}}^{last} = k_{i} - sum_j mu_{{{i},j}}"), t_last[i][last] == rhs));
        }
        let rhs = k_of(last) - 1 - (1..=r).map(k_of).sum::<i64>()
            + (1..=r).flat_map(|i| (1..=r).map(move |j| (i, j))).map(|(i, j)| mu_of(i, j)).sum::<i64>();
        identities.push((format!("p_{{{last},{last}}}^{last} = k_{last} - 1 - sum k_i + sum mu_ij"), t_last[last][last] == rhs));
    }
    for l in 1..=r {
        let Some(t_l) = &tables[l] else { continue };
        for i in 1..=r {
            let rhs = k_of(i) - (i == l) as i64 - (1..=r).map(|j| t_l[i][j]).sum::<i64>();
            identities.push((format!("p_{{{i},{last}}}^{l} = k_{i} - delta_{{{i},{l}}} - sum_j p_{{{i},j}}^{l}"), t_l[i][last] == rhs));
        }
    }
    Ok(AssociationScheme {
        classes: tables.iter().skip(1).filter(|t| t.is_some()).count(),
        intersection_numbers: tables,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9_classes() -> (VectorSpace, BTreeSet<usize>, BTreeSet<usize>) {
        // GF(9) = GF(3)[x]/(x²+1) with a + bx ↦ (a, b): {1, 2} and {x, 2x}.
        let space = VectorSpace::new(3, 2).unwrap();
        (space, BTreeSet::from([1, 2]), BTreeSet::from([3, 6]))
    }

    #[test]
    fn quadratic_residues_of_gf9() {
        let (space, d1, d2) = gf9_classes();
        let d: BTreeSet<usize> = d1.union(&d2).copied().collect();
        let params = is_pds(&space, &d).unwrap().parameters().unwrap();
        assert_eq!(params, SrgParams { v: 9, k: 4, lambda: 1, mu: 2 });
        assert_eq!(complement_pds_params(params), params);
    }

    #[test]
    fn pds_edge_cases() {
        let space = VectorSpace::new(3, 2).unwrap();
        let all: BTreeSet<usize> = (1..9).collect();
        assert_eq!(
            is_pds(&space, &all).unwrap(),
            PdsOutcome::Complete { v: 9, k: 8, lambda: 7 }
        );
        assert!(is_pds(&space, &BTreeSet::from([0, 1])).is_err());
        assert_eq!(is_pds(&space, &BTreeSet::new()).unwrap(), PdsOutcome::Empty { v: 9 });
        assert_eq!(is_pds(&space, &BTreeSet::from([1, 3, 4, 8])).unwrap(), PdsOutcome::NotPds);
    }

    #[test]
    fn complement_parameters() {
        let p = SrgParams { v: 16, k: 6, lambda: 2, mu: 2 };
        assert_eq!(complement_pds_params(p), SrgParams { v: 16, k: 9, lambda: 4, mu: 6 });
        assert_eq!(complement_pds_params(complement_pds_params(p)), p);
        assert_eq!(complement_mu_identity(p), Some(true));
    }

    #[test]
    fn latin_square_types() {
        let found = latin_square_type(SrgParams { v: 9, k: 4, lambda: 1, mu: 2 });
        assert_eq!(
            found,
            [
                LatinSquareType { n: 3, r: 2, negative: false },
                LatinSquareType { n: -3, r: -1, negative: true }
            ]
        );
        assert_eq!(
            latin_square_type(SrgParams { v: 25, k: 16, lambda: 9, mu: 12 }),
            [LatinSquareType { n: 5, r: 4, negative: false }]
        );
        assert_eq!(
            latin_square_type(SrgParams { v: 4, k: 2, lambda: 0, mu: 2 }),
            [LatinSquareType { n: 2, r: 2, negative: false }]
        );
        assert!(latin_square_type(SrgParams { v: 10, k: 3, lambda: 0, mu: 1 }).is_empty());
    }

    #[test]
    fn weighted_pds_of_gf9_split() {
        let (_, d1, d2) = gf9_classes();
        let curves = LevelCurves::from_classes(3, 2, vec![d1, d2]).unwrap();
        let report = is_weighted_pds(&curves);
        assert!(report.is_weighted_pds);
        let one = |x| BTreeSet::from([x]);
        assert_eq!(report.lambda[&(1, 1, 1)], one(1));
        assert_eq!(report.lambda[&(1, 1, 2)], one(0));
        assert_eq!(report.mu[&(1, 2)], one(1));
        assert_eq!(report.mu[&(1, 1)], one(0));
        assert_eq!(report.collapsed_pds, Some((1, 2)));
    }

    #[test]
    fn zero_function_is_rejected() {
        let curves = LevelCurves::from_function(&PAryFunction::zero(3, 2).unwrap());
        assert!(!is_weighted_pds(&curves).is_weighted_pds);
        assert!(build_association_scheme(&curves).is_err());
    }

    #[test]
    fn diagonal_table() {
        let f = PAryFunction::new(3, 2, vec![0, 2, 2, 0, 0, 1, 0, 1, 0]).unwrap();
        let curves = LevelCurves::from_function(&f);
        let direct = intersection_numbers_direct(&curves).constant().unwrap();
        let t0 = direct[0].as_ref().unwrap();
        for (i, row) in t0.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { curves.classes[i].len() as i64 } else { 0 });
            }
        }
    }

    #[test]
    fn class_validation() {
        assert!(LevelCurves::from_classes(3, 2, vec![BTreeSet::from([0])]).is_err());
        assert!(LevelCurves::from_classes(3, 2, vec![BTreeSet::from([1]), BTreeSet::from([1])]).is_err());
    }
}
