//! Randomized depth-first search for Boolean bent functions on `GF(2)^n`.
//!
//! Vectors are assigned one at a time in a shuffled order. After each
//! assignment the partial Walsh sums `W[u] = Σ (−1)^{f(v) + u·v}` are updated
//! and a branch is abandoned once some `W[u]` can no longer reach `±2^{n/2}`
//! with the remaining vectors. A branch is also abandoned when the weight of
//! the partial assignment exceeds `2^{n−1} − 2^{n/2−1}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::VectorSpace;
use crate::function::PAryFunction;

/// Largest supported arity; the state holds `2^n` Walsh sums per stack frame.
pub const MAX_SEARCH_ARITY: usize = 12;

/// One assignment on the successful path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub vector: Vec<u8>,
    pub bit: u8,
    /// Partial Walsh sums right after this assignment, in vector-index order.
    pub walsh: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub function: PAryFunction,
    /// Root-first list of the assignments that led to `function`.
    pub trace: Vec<TraceStep>,
    /// Number of search nodes entered.
    pub nodes: u64,
}

/// Which pruning rules are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    pub spectral: bool,
    pub weight: bool,
}

impl Pruning {
    pub const FULL: Pruning = Pruning {
        spectral: true,
        weight: true,
    };
}

struct Problem {
    space: VectorSpace,
    target: i64,
    weight_bound: u32,
    pruning: Pruning,
}

impl Problem {
    fn new(n: usize, pruning: Pruning) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::unsupported("bent Boolean functions need an even arity"));
        }
        if n > MAX_SEARCH_ARITY {
            return Err(Error::unsupported(format!("arity above {MAX_SEARCH_ARITY}")));
        }
        let half = n as u32 / 2;
        Ok(Problem {
            space: VectorSpace::new(2, n)?,
            target: 1 << half,
            weight_bound: (1 << (n - 1)) - (1 << (half - 1)),
            pruning,
        })
    }

    fn size(&self) -> usize {
        self.space.size()
    }

    /// Adds the contribution of `f(v) = a`; false when the branch must be cut.
    fn apply(&self, walsh: &mut [i64], v: usize, a: u8, left: i64) -> bool {
        let mut ok = true;
        for (u, w) in walsh.iter_mut().enumerate() {
            *w += if (a as u32 + self.space.dot(u, v)).is_multiple_of(2) { 1 } else { -1 };
            if self.pruning.spectral {
                let (lo, hi) = (*w - left, *w + left);
                let reachable = (lo <= self.target && self.target <= hi) || (lo <= -self.target && -self.target <= hi);
                ok &= reachable;
            }
        }
        ok
    }
}

struct Frame {
    depth: usize,
    vector: usize,
    values: [u8; 2],
    tried: usize,
    walsh_before: Vec<i64>,
    weight_before: u32,
    chosen: Option<(u8, Vec<i64>)>,
}

/// Runs the search with a ChaCha generator seeded by `seed`.
pub fn search_bent(n: usize, seed: u64) -> Result<SearchOutcome> {
    let problem = Problem::new(n, Pruning::FULL)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..problem.size()).collect();
    order.shuffle(&mut rng);
    run(&problem, &order, |_| rng.gen::<f64>() > 0.5)
}

/// Depth-first search over a fixed order, trying bit `first(depth)` before its complement.
fn run(problem: &Problem, order: &[usize], mut first: impl FnMut(usize) -> bool) -> Result<SearchOutcome> {
    let size = problem.size();
    let mut stack: Vec<Frame> = Vec::with_capacity(size);
    let mut walsh = vec![0i64; size];
    let mut weight = 0u32;
    let mut nodes = 0u64;
    // Entering a node: `walsh`/`weight` describe the assignment of `stack.len()` vectors.
    let mut entering = true;
    loop {
        if entering {
            nodes += 1;
            let depth = stack.len();
            if depth == size {
                break;
            }
            if !(problem.pruning.weight && weight > problem.weight_bound) {
                let bit = first(depth) as u8;
                stack.push(Frame {
                    depth,
                    vector: order[size - 1 - depth],
                    values: [bit, 1 - bit],
                    tried: 0,
                    walsh_before: walsh.clone(),
                    weight_before: weight,
                    chosen: None,
                });
            }
        }
        // Advance the top frame to its next viable value, or fail it.
        let Some(frame) = stack.last_mut() else {
            return Err(Error::NotApplicable("no bent function below the root".into()));
        };
        entering = false;
        while frame.tried < 2 {
            let a = frame.values[frame.tried];
            frame.tried += 1;
            let mut next = frame.walsh_before.clone();
            let left = (size - frame.depth - 1) as i64;
            if problem.apply(&mut next, frame.vector, a, left) {
                walsh = next.clone();
                weight = frame.weight_before + a as u32;
                frame.chosen = Some((a, next));
                entering = true;
                break;
            }
        }
        if !entering {
            stack.pop();
        }
    }
    let mut values = vec![0u8; size];
    let mut trace = Vec::with_capacity(size);
    for frame in &stack {
        let (bit, w) = frame.chosen.clone().expect("complete path");
        values[frame.vector] = bit;
        trace.push(TraceStep {
            vector: problem.space.coords(frame.vector).to_vec(),
            bit,
            walsh: w,
        });
    }
    Ok(SearchOutcome {
        function: PAryFunction::new(2, problem.space.n(), values)?,
        trace,
        nodes,
    })
}

/// All complete assignments reached by exhaustive DFS over `order` with the given pruning.
pub fn enumerate_reachable(n: usize, order: &[usize], pruning: Pruning) -> Result<Vec<Vec<u8>>> {
    let problem = Problem::new(n, pruning)?;
    let size = problem.size();
    if order.len() != size {
        return Err(Error::invalid("order must list every vector once"));
    }
    let mut found = Vec::new();
    let mut values = vec![0u8; size];
    explore(&problem, order, 0, 0, &mut values, &vec![0i64; size], &mut found);
    found.sort();
    Ok(found)
}

fn explore(
    problem: &Problem,
    order: &[usize],
    depth: usize,
    weight: u32,
    values: &mut [u8],
    walsh: &[i64],
    found: &mut Vec<Vec<u8>>,
) {
    let size = problem.size();
    if depth == size {
        found.push(values.to_vec());
        return;
    }
    if problem.pruning.weight && weight > problem.weight_bound {
        return;
    }
    let v = order[size - 1 - depth];
    for a in [0u8, 1] {
        let mut next = walsh.to_vec();
        if problem.apply(&mut next, v, a, (size - depth - 1) as i64) {
            values[v] = a;
            explore(problem, order, depth + 1, weight + a as u32, values, &next, found);
            values[v] = 0;
        }
    }
}

/// Every bent Boolean function of `n` variables, by brute force.
pub fn brute_force_bent(n: usize) -> Result<Vec<Vec<u8>>> {
    if n > 4 {
        return Err(Error::unsupported("brute force is limited to n ≤ 4"));
    }
    let space = VectorSpace::new(2, n)?;
    let size = space.size();
    let target = 1i64 << n;
    let mut bent = Vec::new();
    for mask in 0u64..(1u64 << size) {
        let values: Vec<u8> = (0..size).map(|i| ((mask >> i) & 1) as u8).collect();
        let all = (0..size).all(|u| {
            let w: i64 = (0..size)
                .map(|x| if (values[x] as u32 + space.dot(u, x)).is_multiple_of(2) { 1 } else { -1 })
                .sum();
            w * w == target
        });
        if all {
            bent.push(values);
        }
    }
    bent.sort();
    Ok(bent)
}

/// Weight bound `2^{n−1} − 2^{n/2−1}` used by the weight pruning rule.
pub fn weight_bound(n: usize) -> Result<u32> {
    Problem::new(n, Pruning::FULL).map(|p| p.weight_bound)
}
