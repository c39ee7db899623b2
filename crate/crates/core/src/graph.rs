//! Edge-weighted Cayley graphs of p-ary functions.
//!
//! The vertex set is `GF(p)^n` in vector-index order and the edge `(i, j)`
//! carries weight `f(η(i) − η(j))`; weight 0 means no edge.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ndarray::Array2;
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::VectorSpace;
use crate::function::PAryFunction;
use crate::report::keyed_cells;
use crate::transforms::fourier_transform;

/// A set of observed counts; a single element means the count is constant.
pub type ValueSet = BTreeSet<i64>;

#[derive(Clone, Debug)]
pub struct WeightedCayleyGraph {
    p: u32,
    n: usize,
    weights: Array2<u8>,
    self_loop_warning: bool,
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph or partial difference set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn counting_identity_holds(&self) -> bool {
        self.k * self.k - self.k == self.k * self.lambda + (self.v - self.k - 1) * self.mu
    }
}

pub fn build_cayley_graph(f: &PAryFunction) -> WeightedCayleyGraph {
    let space = f.space();
    let size = space.size();
    let weights = Array2::from_shape_fn((size, size), |(i, j)| f.value(space.sub(i, j)));
    WeightedCayleyGraph {
        p: f.p(),
        n: f.n(),
        weights,
        self_loop_warning: f.value(0) != 0,
    }
}

impl WeightedCayleyGraph {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &Array2<u8> {
        &self.weights
    }

    /// Set when `f(0) ≠ 0`, i.e. every vertex carries a self-loop.
    pub fn self_loop_warning(&self) -> bool {
        self.self_loop_warning
    }

    pub fn is_symmetric(&self) -> bool {
        self.weights == self.weights.t()
    }

    /// Weight of the edge `(i, j)` ignoring self-loops.
    fn edge(&self, i: usize, j: usize) -> u8 {
        if i == j {
            0
        } else {
            self.weights[[i, j]]
        }
    }

    /// The 0/1 slice for weight `w ∈ 0..=p`: `A_0 = I`, `A_w` marks off-diagonal
    /// entries equal to `w`, and `A_p` is the remaining complement.
    pub fn slice(&self, w: u32) -> Array2<i64> {
        let size = self.order();
        Array2::from_shape_fn((size, size), |(i, j)| {
            let hit = match w {
                0 => i == j,
                w if w == self.p => i != j && self.weights[[i, j]] == 0,
                w => i != j && self.weights[[i, j]] as u32 == w,
            };
            hit as i64
        })
    }

    pub fn slices(&self) -> Vec<Array2<i64>> {
        (0..=self.p).map(|w| self.slice(w)).collect()
    }

    /// 0/1 adjacency ignoring weights and self-loops.
    pub fn unweighted_adjacency(&self) -> Array2<i64> {
        let size = self.order();
        Array2::from_shape_fn((size, size), |(i, j)| (self.edge(i, j) != 0) as i64)
    }

    /// The weight matrix as integers.
    pub fn weight_matrix(&self) -> Array2<i64> {
        self.weights.mapv(|w| w as i64)
    }

    /// Rows of the weight matrix, space separated.
    pub fn matrix_dump(&self) -> String {
        let mut out = String::new();
        for row in self.weights.rows() {
            let cells: Vec<String> = row.iter().map(|w| w.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Graphviz rendering; each undirected edge appears once, labelled by weight.
    pub fn to_dot(&self) -> String {
        let space = VectorSpace::new(self.p, self.n).expect("validated");
        let mut out = String::from("graph cayley {\n");
        for i in 0..self.order() {
            out.push_str(&format!("  {i} [label=\"{}\"];\n", space.vector(i)));
        }
        for i in 0..self.order() {
            for j in i + 1..self.order() {
                let w = self.edge(i, j).max(self.edge(j, i));
                if w != 0 {
                    out.push_str(&format!("  {i} -- {j} [label=\"{w}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Connected components of the underlying undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    pub component_of: Vec<usize>,
}

pub fn connected_components(g: &WeightedCayleyGraph) -> Components {
    let size = g.order();
    let mut component_of = vec![usize::MAX; size];
    let mut count = 0;
    for start in 0..size {
        if component_of[start] != usize::MAX {
            continue;
        }
        component_of[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in 0..size {
                if component_of[w] == usize::MAX && (g.edge(v, w) != 0 || g.edge(w, v) != 0) {
                    component_of[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Components { count, component_of }
}

/// `p^{n − dim Span(supp f)}`, the component count predicted by the quotient space.
pub fn component_count_from_span(f: &PAryFunction) -> usize {
    let space = f.space();
    let dim = space.span_dimension(&f.support());
    (f.p() as usize).pow((f.n() - dim) as u32)
}

/// Eigenvalues `f̂(−a)` of the weight matrix for even `f`, indexed by `a`,
/// after checking `F·v_a = f̂(−a)·v_a` exactly for every character `v_a`.
pub fn spectrum_via_fourier(f: &PAryFunction) -> Result<Vec<CycInt>> {
    if !f.is_even() {
        return Err(Error::unsupported("the spectrum is computed for even functions only"));
    }
    let space = f.space();
    let fourier = fourier_transform(f);
    let eigenvalues: Vec<CycInt> = (0..space.size()).map(|a| fourier[space.neg(a)].clone()).collect();
    if !eigen_relation_holds(f, &space, &eigenvalues) {
        return Err(Error::InvalidInput("eigenvector relation failed".into()));
    }
    Ok(eigenvalues)
}

/// Checks `Σ_y f(x−y) ζ^{−⟨a,y⟩} = λ_a ζ^{−⟨a,x⟩}` for all `a, x`.
pub fn eigen_relation_holds(f: &PAryFunction, space: &VectorSpace, eigenvalues: &[CycInt]) -> bool {
    let p = f.p();
    let mut counts = vec![0i64; p as usize];
    for a in 0..space.size() {
        for x in 0..space.size() {
            counts.fill(0);
            for y in 0..space.size() {
                let k = (p - space.dot(a, y)) % p;
                counts[k as usize] += f.value(space.sub(x, y)) as i64;
            }
            let lhs = CycInt::from_exponent_counts(p, &counts);
            let rhs = eigenvalues[a].mul_zeta_pow(-(space.dot(a, x) as i64));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Spectrum of the unweighted Cayley graph (support indicator) of an even `f`.
pub fn unweighted_spectrum(f: &PAryFunction) -> Result<Vec<CycInt>> {
    let indicator = PAryFunction::new(
        f.p(),
        f.n(),
        f.values().iter().map(|&v| (v != 0) as u8).collect(),
    )?;
    spectrum_via_fourier(&indicator)
}

/// Integer eigenvalues in decreasing order, when all are rational.
pub fn rational_spectrum(eigenvalues: &[CycInt]) -> Option<Vec<i64>> {
    let mut values: Vec<i64> = eigenvalues.iter().map(CycInt::is_rational).collect::<Option<_>>()?;
    values.sort_unstable_by(|a, b| b.cmp(a));
    Some(values)
}

/// Classical SRG parameters of the unweighted graph; `None` for graphs that are
/// directed, irregular, disconnected, complete or edgeless, or not strongly regular.
pub fn is_strongly_regular_unweighted(g: &WeightedCayleyGraph) -> Option<SrgParams> {
    let a = g.unweighted_adjacency();
    if a != a.t() {
        return None;
    }
    let v = g.order() as i64;
    let degrees: BTreeSet<i64> = a.rows().into_iter().map(|r| r.sum()).collect();
    if degrees.len() != 1 {
        return None;
    }
    let k = *degrees.iter().next().expect("one degree");
    if k == 0 || k == v - 1 || connected_components(g).count != 1 {
        return None;
    }
    let a2 = a.dot(&a);
    let mut lambda = BTreeSet::new();
    let mut mu = BTreeSet::new();
    for i in 0..g.order() {
        for j in 0..g.order() {
            if i == j {
                continue;
            }
            if a[[i, j]] == 1 {
                lambda.insert(a2[[i, j]]);
            } else {
                mu.insert(a2[[i, j]]);
            }
        }
    }
    match (lambda.len(), mu.len()) {
        (1, 1) => Some(SrgParams {
            v,
            k,
            lambda: *lambda.iter().next()?,
            mu: *mu.iter().next()?,
        }),
        _ => None,
    }
}

/// Common weighted-neighbourhood counts `|N(u1,a1) ∩ N(u2,a2)|` split by the
/// relation between `u1` and `u2`: equal (`k`), joined by an edge of weight
/// `a3` (`λ`), or not adjacent (`μ`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedSrgVerdict {
    #[serde(serialize_with = "keyed_cells")]
    pub k: BTreeMap<(u8, u8), ValueSet>,
    #[serde(serialize_with = "keyed_cells")]
    pub lambda: BTreeMap<(u8, u8, u8), ValueSet>,
    #[serde(serialize_with = "keyed_cells")]
    pub mu: BTreeMap<(u8, u8), ValueSet>,
    pub connected: bool,
    pub complete: bool,
    pub is_edge_weighted_srg: bool,
}

impl WeightedSrgVerdict {
    fn all_singleton(&self) -> bool {
        self.k.values().chain(self.lambda.values()).chain(self.mu.values()).all(|s| s.len() == 1)
    }

    /// `Σ_{a1,a2} λ_{(a1,a2,a3)}` per `a3`, when every cell is constant.
    pub fn lambda_sums(&self) -> Option<BTreeMap<u8, i64>> {
        let mut sums = BTreeMap::new();
        for (&(_, _, a3), set) in &self.lambda {
            if set.len() != 1 {
                return None;
            }
            *sums.entry(a3).or_insert(0) += set.iter().next()?;
        }
        Some(sums)
    }

    pub fn mu_sum(&self) -> Option<i64> {
        self.mu
            .values()
            .map(|s| if s.len() == 1 { s.iter().next().copied() } else { None })
            .sum()
    }
}

pub fn weighted_srg_verdict(g: &WeightedCayleyGraph) -> WeightedSrgVerdict {
    let p = g.p();
    let size = g.order();
    let slices: Vec<Array2<i64>> = (1..p).map(|w| g.slice(w)).collect();
    let mut k = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    let mut mu = BTreeMap::new();
    for a1 in 1..p as u8 {
        for a2 in 1..p as u8 {
            let counts = slices[a1 as usize - 1].dot(&slices[a2 as usize - 1].t());
            for u1 in 0..size {
                for u2 in 0..size {
                    let c = counts[[u1, u2]];
                    let w = g.edge(u1, u2);
                    let cell: &mut ValueSet = if u1 == u2 {
                        k.entry((a1, a2)).or_default()
                    } else if w == 0 {
                        mu.entry((a1, a2)).or_default()
                    } else {
                        lambda.entry((a1, a2, w)).or_default()
                    };
                    cell.insert(c);
                }
            }
        }
    }
    let connected = connected_components(g).count == 1;
    let complete = (0..size).all(|i| (0..size).all(|j| i == j || g.edge(i, j) != 0));
    let mut verdict = WeightedSrgVerdict {
        k,
        lambda,
        mu,
        connected,
        complete,
        is_edge_weighted_srg: false,
    };
    verdict.is_edge_weighted_srg = connected && verdict.all_singleton();
    verdict
}

/// Distance-regularity data for one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRegularity {
    pub size: usize,
    pub diameter: usize,
    /// `(b_0, …, b_{d−1})` and `(c_1, …, c_d)` when distance regular.
    pub intersection_array: Option<(Vec<i64>, Vec<i64>)>,
}

impl ComponentRegularity {
    pub fn is_distance_regular(&self) -> bool {
        self.intersection_array.is_some()
    }
}

/// BFS shells from every vertex; `a_i, b_i, c_i` must not depend on the pair.
pub fn distance_regularity_check(g: &WeightedCayleyGraph) -> Vec<ComponentRegularity> {
    let adjacency = g.unweighted_adjacency();
    let size = g.order();
    let neighbours: Vec<Vec<usize>> = (0..size)
        .map(|v| (0..size).filter(|&w| adjacency[[v, w]] == 1 || adjacency[[w, v]] == 1).collect())
        .collect();
    let components = connected_components(g);
    let mut result = Vec::new();
    for c in 0..components.count {
        let members: Vec<usize> = (0..size).filter(|&v| components.component_of[v] == c).collect();
        // Per distance i: observed (b_i, c_i) pairs.
        let mut profile: BTreeMap<usize, BTreeSet<(i64, i64)>> = BTreeMap::new();
        let mut diameter = 0;
        for &start in &members {
            let mut dist = vec![usize::MAX; size];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &neighbours[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for &v in &members {
                let d = dist[v];
                diameter = diameter.max(d);
                let up = neighbours[v].iter().filter(|&&w| dist[w] == d + 1).count() as i64;
                let down = neighbours[v].iter().filter(|&&w| d > 0 && dist[w] == d - 1).count() as i64;
                profile.entry(d).or_default().insert((up, down));
            }
        }
        let constant = profile.values().all(|s| s.len() == 1);
        let intersection_array = constant.then(|| {
            let b = (0..diameter).map(|i| profile[&i].iter().next().expect("nonempty").0).collect();
            let c = (1..=diameter).map(|i| profile[&i].iter().next().expect("nonempty").1).collect();
            (b, c)
        });
        result.push(ComponentRegularity {
            size: members.len(),
            diameter,
            intersection_array,
        });
    }
    result
}

/// `A_{w_1} A_{w_2} ⋯ A_{w_k}`; entry `(x, y)` counts walks with that weight sequence.
pub fn matrix_walk_counts(g: &WeightedCayleyGraph, weight_sequence: &[u32]) -> Result<Array2<i64>> {
    let size = g.order();
    let mut product = Array2::<i64>::eye(size);
    for &w in weight_sequence {
        if w > g.p() {
            return Err(Error::invalid(format!("weight {w} exceeds {}", g.p())));
        }
        product = product.dot(&g.slice(w));
    }
    Ok(product)
}

pub fn trace(m: &Array2<i64>) -> i64 {
    m.diag().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::Anf;

    fn f32(values: [u8; 9]) -> PAryFunction {
        PAryFunction::new(3, 2, values.to_vec()).unwrap()
    }

    #[test]
    fn first_rows() {
        let g = build_cayley_graph(&f32([0, 2, 2, 0, 0, 1, 0, 1, 0]));
        assert_eq!(g.matrix_dump().lines().next().unwrap(), "0 2 2 0 0 1 0 1 0");
        let f = Anf::parse("x0^2+x0*x1", 5, 2).unwrap().evaluate();
        let g = build_cayley_graph(&f);
        assert_eq!(
            g.matrix_dump().lines().next().unwrap(),
            "0 1 4 4 1 0 2 1 2 0 0 3 3 0 4 0 4 0 3 3 0 0 2 1 2"
        );
        let zero = build_cayley_graph(&PAryFunction::zero(3, 2).unwrap());
        assert!(zero.weights().iter().all(|&w| w == 0));
    }

    #[test]
    fn slices_partition_all_ones() {
        let g = build_cayley_graph(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0]));
        let total = g.slices().into_iter().fold(Array2::<i64>::zeros((9, 9)), |acc, s| acc + s);
        assert!(total.iter().all(|&x| x == 1));
    }

    #[test]
    fn components() {
        let g = build_cayley_graph(&f32([0, 0, 0, 1, 0, 0, 1, 0, 0]));
        assert_eq!(connected_components(&g).count, 3);
        assert_eq!(component_count_from_span(&f32([0, 0, 0, 1, 0, 0, 1, 0, 0])), 3);
        let g = build_cayley_graph(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0]));
        assert_eq!(connected_components(&g).count, 1);
        let g = build_cayley_graph(&PAryFunction::zero(3, 2).unwrap());
        assert_eq!(connected_components(&g).count, 9);
    }

    #[test]
    fn spectra() {
        let spectrum = spectrum_via_fourier(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0])).unwrap();
        assert_eq!(rational_spectrum(&spectrum).unwrap(), [8, 2, 2, -1, -1, -1, -1, -4, -4]);
        let zero = spectrum_via_fourier(&PAryFunction::zero(3, 2).unwrap()).unwrap();
        assert!(zero.iter().all(CycInt::is_zero));
        assert!(spectrum_via_fourier(&f32([0, 1, 0, 0, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn srg_examples() {
        let b2 = build_cayley_graph(&f32([0, 2, 2, 1, 0, 0, 1, 0, 0]));
        assert_eq!(
            is_strongly_regular_unweighted(&b2),
            Some(SrgParams { v: 9, k: 4, lambda: 1, mu: 2 })
        );
        let f = Anf::parse("x0^2+x0*x1", 5, 2).unwrap().evaluate();
        let params = is_strongly_regular_unweighted(&build_cayley_graph(&f)).unwrap();
        assert_eq!(params, SrgParams { v: 25, k: 16, lambda: 9, mu: 12 });
        assert!(params.counting_identity_holds());
        let g = Anf::parse("x0^4+2*x0*x1", 5, 2).unwrap().evaluate();
        assert_eq!(is_strongly_regular_unweighted(&build_cayley_graph(&g)), None);
    }

    #[test]
    fn weighted_verdict_small() {
        let g = build_cayley_graph(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0]));
        let v = weighted_srg_verdict(&g);
        let single = |x: i64| BTreeSet::from([x]);
        assert_eq!(v.mu[&(2, 2)], single(0));
        assert_eq!(v.k[&(2, 2)], single(2));
        assert_eq!(v.lambda[&(2, 2, 2)], single(1));
        assert_eq!(v.lambda[&(2, 2, 1)], single(0));
    }

    #[test]
    fn distance_regular_examples() {
        let b2 = build_cayley_graph(&f32([0, 2, 2, 1, 0, 0, 1, 0, 0]));
        let dr = distance_regularity_check(&b2);
        assert_eq!(dr.len(), 1);
        assert_eq!(dr[0].diameter, 2);
        assert_eq!(dr[0].intersection_array, Some((vec![4, 2], vec![1, 2])));
        let triangles = build_cayley_graph(&f32([0, 0, 0, 1, 0, 0, 1, 0, 0]));
        let dr = distance_regularity_check(&triangles);
        assert_eq!(dr.len(), 3);
        assert!(dr.iter().all(|c| c.is_distance_regular() && c.diameter == 1));
    }

    #[test]
    fn slice_identity() {
        let g = build_cayley_graph(&f32([0, 2, 2, 0, 0, 1, 0, 1, 0]));
        let lhs = matrix_walk_counts(&g, &[1, 3]).unwrap();
        let rhs = g.slice(2) * 2 + g.slice(3);
        assert_eq!(lhs, rhs);
        assert_eq!(trace(&matrix_walk_counts(&g, &[0, 0, 0]).unwrap()), 9);
        assert!(matrix_walk_counts(&g, &[4]).is_err());
    }

    #[test]
    fn dot_export() {
        let g = build_cayley_graph(&f32([0, 0, 0, 1, 0, 0, 1, 0, 0]));
        let dot = g.to_dot();
        assert!(dot.starts_with("graph cayley {"));
        assert_eq!(dot.matches(" -- ").count(), 9);
    }
}
