//! Exhaustive classification of even bent functions with `f(0) = 0`.
//!
//! A candidate family is a set of basis tables `B_0, …, B_{m−1}`; candidate
//! number `Σ d_k p^k` is the table `Σ d_k B_k mod p`. For the full even space
//! `B_k` is the indicator of one pair `{v, −v}`; for a degree-bounded family
//! it is an even-degree monomial. The scanner walks candidates with an
//! odometer, so moving to the next candidate adds one basis table.
//!
//! Candidates are split into chunks by their high digits. Chunks are scanned
//! independently and merged in chunk order, and finished chunks can be
//! recorded in a checkpoint file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::anf::to_anf;
use crate::combinatorics::{is_weighted_pds, LevelCurves};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::VectorSpace;
use crate::function::PAryFunction;
use crate::graph::{build_cayley_graph, is_strongly_regular_unweighted, weighted_srg_verdict, SrgParams, ValueSet};
use crate::orbits::{enumerate_gl, orbit_partition, scalar_relations, OrbitPartition};
use crate::transforms::{classify_regularity, counts_have_norm, walsh_transform};

/// The `(p, n)` pairs that run without `unsafe_scale`.
pub const SUPPORTED_SCALES: [(u32, usize); 3] = [(3, 2), (3, 3), (5, 2)];

/// Smallest number of chunks a scan is split into.
const MIN_CHUNKS: u64 = 64;

/// Chunks scanned between checkpoint writes.
const CHUNKS_PER_BATCH: usize = 16;

/// Orbit members compared against the representative's attributes.
const INVARIANCE_SAMPLE: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Every even function with `f(0) = 0`.
    Even,
    /// Even functions whose reduced polynomial has degree at most the bound.
    DegreeBound(u32),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Even => "even".into(),
            Family::DegreeBound(d) => format!("even, degree <= {d}"),
        }
    }
}

/// A candidate family together with its basis tables.
#[derive(Clone, Debug)]
pub struct CandidateSpace {
    p: u32,
    n: usize,
    family: Family,
    space: VectorSpace,
    /// Nonzero entries `(x, B_k(x))` of each basis table.
    basis: Vec<Vec<(usize, u8)>>,
    labels: Vec<String>,
    count: u64,
}

impl CandidateSpace {
    pub fn new(p: u32, n: usize, family: Family) -> Result<Self> {
        let space = VectorSpace::new(p, n)?;
        if p == 2 {
            return Err(Error::unsupported("the classification needs an odd prime"));
        }
        let (basis, labels) = match family {
            Family::Even => pair_basis(&space),
            Family::DegreeBound(d) => monomial_basis(&space, d),
        };
        let count = (p as u64)
            .checked_pow(basis.len() as u32)
            .ok_or_else(|| Error::unsupported(format!("{p}^{} candidates overflow a 64-bit counter", basis.len())))?;
        Ok(CandidateSpace {
            p,
            n,
            family,
            space,
            basis,
            labels,
            count,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of base-p digits of a candidate index.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// What each digit controls: a vector pair or a monomial.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn candidate(&self, index: u64) -> Result<PAryFunction> {
        if index >= self.count {
            return Err(Error::invalid(format!("candidate {index} is outside 0..{}", self.count)));
        }
        let mut values = vec![0u8; self.space.size()];
        let mut rest = index;
        for support in &self.basis {
            let digit = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
            for &(x, c) in support {
                values[x] = ((values[x] as u32 + digit * c as u32) % self.p) as u8;
            }
        }
        PAryFunction::new(self.p, self.n, values)
    }

    /// `(high digits, chunk count)` for the chunk layout.
    fn layout(&self) -> (usize, u64) {
        let digits = self.dimension();
        let mut high = 0;
        let mut chunks = 1u64;
        while high < digits && chunks < MIN_CHUNKS {
            high += 1;
            chunks *= self.p as u64;
        }
        (high, chunks)
    }
}

fn pair_basis(space: &VectorSpace) -> (Vec<Vec<(usize, u8)>>, Vec<String>) {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for v in 1..space.size() {
        let w = space.neg(v);
        if v < w {
            basis.push(vec![(v, 1), (w, 1)]);
            labels.push(format!("±{}", space.vector(v)));
        }
    }
    (basis, labels)
}

fn monomial_basis(space: &VectorSpace, bound: u32) -> (Vec<Vec<(usize, u8)>>, Vec<String>) {
    let p = space.p();
    let mut exponents: Vec<Vec<u8>> = (0..space.size())
        .map(|i| space.coords(i).to_vec())
        .filter(|e| {
            let degree: u32 = e.iter().map(|&x| x as u32).sum();
            degree >= 2 && degree <= bound && degree.is_multiple_of(2)
        })
        .collect();
    exponents.sort_by_key(|e| (e.iter().map(|&x| x as u32).sum::<u32>(), std::cmp::Reverse(e.clone())));
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for e in exponents {
        let support = (0..space.size())
            .filter_map(|x| {
                let value = space
                    .coords(x)
                    .iter()
                    .zip(&e)
                    .fold(1u32, |acc, (&c, &k)| acc * (c as u32).pow(k as u32) % p);
                (value != 0).then_some((x, value as u8))
            })
            .collect();
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
            .collect();
        basis.push(support);
        labels.push(factors.join("*"));
    }
    (basis, labels)
}

/// Early-abort bent test for even tables.
///
/// `W_f(0)` is decided from the value counts, which the odometer maintains
/// incrementally. Only candidates passing that test get the remaining `u`,
/// one per pair `{u, −u}` since `W_f(−u) = W_f(u)` for even `f`.
struct Scanner<'a> {
    cs: &'a CandidateSpace,
    /// `(−⟨u, x⟩) mod p` for each pair representative `u`, row by row.
    shifts: Vec<u8>,
    target: i64,
}

impl<'a> Scanner<'a> {
    fn new(cs: &'a CandidateSpace) -> Self {
        let space = &cs.space;
        let p = cs.p;
        let mut shifts = Vec::new();
        for u in 1..space.size() {
            if u < space.neg(u) {
                shifts.extend((0..space.size()).map(|x| ((p - space.dot(u, x)) % p) as u8));
            }
        }
        Scanner {
            cs,
            shifts,
            target: (p as i64).pow(cs.n as u32),
        }
    }

    fn remaining_spectrum_is_flat(&self, values: &[u8], counts: &mut [i64]) -> bool {
        let p = self.cs.p as u8;
        for shift in self.shifts.chunks_exact(values.len()) {
            counts.fill(0);
            for (&v, &s) in values.iter().zip(shift) {
                let mut k = v + s;
                if k >= p {
                    k -= p;
                }
                counts[k as usize] += 1;
            }
            if !counts_have_norm(counts, self.target) {
                return false;
            }
        }
        true
    }

    fn is_bent(&self, values: &[u8]) -> bool {
        let mut signature = vec![0i64; self.cs.p as usize];
        for &v in values {
            signature[v as usize] += 1;
        }
        counts_have_norm(&signature, self.target) && self.remaining_spectrum_is_flat(values, &mut signature)
    }

    /// Bent candidate indices in one chunk, ascending.
    fn scan_chunk(&self, chunk: u64, low: usize) -> Vec<u64> {
        let cs = self.cs;
        let p = cs.p;
        let per_chunk = (p as u64).pow(low as u32);
        let start = chunk * per_chunk;
        let mut values = vec![0u8; cs.space.size()];
        let mut rest = chunk;
        for support in &cs.basis[low..] {
            let digit = (rest % p as u64) as u32;
            rest /= p as u64;
            for &(x, c) in support {
                values[x] = ((values[x] as u32 + digit * c as u32) % p) as u8;
            }
        }
        let mut signature = vec![0i64; p as usize];
        for &v in &values {
            signature[v as usize] += 1;
        }
        let mut counts = vec![0i64; p as usize];
        let mut digits = vec![0u32; low];
        let mut found = Vec::new();
        for local in 0..per_chunk {
            if counts_have_norm(&signature, self.target) && self.remaining_spectrum_is_flat(&values, &mut counts) {
                found.push(start + local);
            }
            for (k, digit) in digits.iter_mut().enumerate() {
                for &(x, c) in &cs.basis[k] {
                    let old = values[x];
                    let mut new = old + c;
                    if new >= p as u8 {
                        new -= p as u8;
                    }
                    signature[old as usize] -= 1;
                    signature[new as usize] += 1;
                    values[x] = new;
                }
                *digit += 1;
                if *digit < p {
                    break;
                }
                *digit = 0;
            }
        }
        found
    }
}

/// Bent test by the full exact spectrum: every `W_f(u) · conj(W_f(u))` must
/// equal `p^n` in `Z[ζ_p]`.
pub fn naive_is_bent(f: &PAryFunction) -> bool {
    let target = CycInt::from_int(f.p(), (f.p() as i64).pow(f.n() as u32));
    walsh_transform(f).values.iter().all(|w| w.norm_sq() == target)
}

/// The early-abort test used by the scanner, on a single even table.
pub fn fast_is_bent(cs: &CandidateSpace, f: &PAryFunction) -> bool {
    Scanner::new(cs).is_bent(f.values())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    p: u32,
    n: usize,
    family: Family,
    chunks: u64,
    /// Bent indices of every finished chunk.
    done: BTreeMap<u64, Vec<u64>>,
}

impl Checkpoint {
    fn load(path: &Path) -> Result<Checkpoint> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// How a scan runs.
#[derive(Clone, Default)]
pub struct ScanOptions<'a> {
    pub execution: Execution,
    /// Where finished chunks are recorded.
    pub checkpoint: Option<PathBuf>,
    /// Continue from `checkpoint` instead of starting over.
    pub resume: bool,
    /// Called with `(finished chunks, total chunks)` after each batch.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanOutcome {
    pub candidates: u64,
    pub chunks: u64,
    /// Chunks taken from the checkpoint rather than scanned.
    pub resumed_chunks: u64,
    pub bent_indices: Vec<u64>,
}

/// Finds every bent candidate in `cs`.
pub fn scan_bent(cs: &CandidateSpace, options: &ScanOptions<'_>) -> Result<ScanOutcome> {
    let (high, chunks) = cs.layout();
    let low = cs.dimension() - high;
    let mut state = Checkpoint {
        p: cs.p,
        n: cs.n,
        family: cs.family,
        chunks,
        done: BTreeMap::new(),
    };
    if options.resume {
        let path = options
            .checkpoint
            .as_deref()
            .ok_or_else(|| Error::invalid("resuming needs a checkpoint path"))?;
        if path.exists() {
            let saved = Checkpoint::load(path)?;
            if (saved.p, saved.n, saved.family, saved.chunks) != (cs.p, cs.n, cs.family, chunks) {
                return Err(Error::invalid(format!(
                    "checkpoint {} belongs to a different run",
                    path.display()
                )));
            }
            state.done = saved.done;
        }
    }
    let resumed_chunks = state.done.len() as u64;
    let pending: Vec<u64> = (0..chunks).filter(|c| !state.done.contains_key(c)).collect();
    let scanner = Scanner::new(cs);
    for batch in pending.chunks(CHUNKS_PER_BATCH) {
        let found = options
            .execution
            .map_ordered(batch.len(), |i| scanner.scan_chunk(batch[i], low));
        for (&chunk, indices) in batch.iter().zip(found) {
            state.done.insert(chunk, indices);
        }
        if let Some(path) = &options.checkpoint {
            state.save(path)?;
        }
        if let Some(progress) = options.progress {
            progress(state.done.len() as u64, chunks);
        }
    }
    let bent_indices = state.done.into_values().flatten().collect();
    Ok(ScanOutcome {
        candidates: cs.count,
        chunks,
        resumed_chunks,
        bent_indices,
    })
}

/// Agreement between [`naive_is_bent`] and the scanner's test on random candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub samples: usize,
    pub seed: u64,
    pub disagreements: Vec<u64>,
    pub bent_in_sample: usize,
    /// Sampled indices whose verdict differs from membership in the scanned set.
    pub scan_mismatches: Vec<u64>,
    /// Scanned bent indices that fail the full-spectrum test.
    pub scanned_not_bent: Vec<u64>,
}

impl SampleCheck {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.scan_mismatches.is_empty() && self.scanned_not_bent.is_empty()
    }
}

/// Compares both bent tests on `samples` seeded random candidates and, when
/// `scanned` is given, against membership in that sorted index list. Every
/// index in `scanned` is also re-tested with [`naive_is_bent`].
pub fn cross_check_sample(
    cs: &CandidateSpace,
    samples: usize,
    seed: u64,
    scanned: Option<&[u64]>,
    execution: Execution,
) -> Result<SampleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..cs.count)).collect();
    let scanner = Scanner::new(cs);
    let verdicts = execution.map_ordered(indices.len(), |i| {
        let f = cs.candidate(indices[i]).expect("index below count");
        (naive_is_bent(&f), scanner.is_bent(f.values()))
    });
    let mut check = SampleCheck {
        samples,
        seed,
        disagreements: Vec::new(),
        bent_in_sample: 0,
        scan_mismatches: Vec::new(),
        scanned_not_bent: Vec::new(),
    };
    for (&index, (naive, fast)) in indices.iter().zip(verdicts) {
        check.bent_in_sample += naive as usize;
        if naive != fast {
            check.disagreements.push(index);
        }
        if let Some(set) = scanned {
            if set.binary_search(&index).is_ok() != naive {
                check.scan_mismatches.push(index);
            }
        }
    }
    if let Some(set) = scanned {
        let verdicts = execution.map_ordered(set.len(), |i| {
            naive_is_bent(&cs.candidate(set[i]).expect("scanned index below count"))
        });
        check.scanned_not_bent = set.iter().zip(verdicts).filter(|(_, ok)| !ok).map(|(&i, _)| i).collect();
    }
    Ok(check)
}

/// Properties of one function that are constant on `GL(n, p)` orbits.
///
/// Homogeneity is not among them. A linear substitution can create `x^p` terms
/// whose reduction lowers their degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionAttributes {
    pub signature: Vec<usize>,
    pub support_size: usize,
    pub is_bent: bool,
    pub is_weakly_regular: bool,
    pub is_regular: bool,
    pub mu: Option<String>,
    pub degree: u32,
    pub unweighted_srg: Option<SrgParams>,
    pub weighted_pds: bool,
    pub edge_weighted_srg: bool,
    pub complete: bool,
}

pub fn attributes(f: &PAryFunction) -> FunctionAttributes {
    let profile = classify_regularity(f);
    let graph = build_cayley_graph(f);
    let verdict = weighted_srg_verdict(&graph);
    FunctionAttributes {
        signature: f.signature(),
        support_size: f.support().len(),
        is_bent: profile.is_bent,
        is_weakly_regular: profile.is_weakly_regular,
        is_regular: profile.is_regular,
        mu: profile.mu.map(|m| m.label().to_string()),
        degree: to_anf(f).degree(),
        unweighted_srg: is_strongly_regular_unweighted(&graph),
        weighted_pds: is_weighted_pds(&LevelCurves::from_function(f)).is_weighted_pds,
        edge_weighted_srg: verdict.is_edge_weighted_srg,
        complete: verdict.complete,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    /// 1-based, in the partition's (size, representative) order.
    pub id: usize,
    pub size: usize,
    pub representative: String,
    pub anf: String,
    #[serde(flatten)]
    pub attributes: FunctionAttributes,
    /// Whether the representative's reduced polynomial is homogeneous.
    pub homogeneous: bool,
    /// How many of the checked members are homogeneous.
    pub homogeneous_members: usize,
    /// Orbit holding the dual of the representative, when it lies in the set.
    pub dual_orbit: Option<usize>,
    pub members_checked: usize,
    /// True iff every checked member has the representative's attributes.
    pub invariant: bool,
}

/// Degree bounds over a set of bent functions: `n(p−1)/2 + 1` in general and
/// `n(p−1)/2` for weakly regular ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBoundCheck {
    pub checked: usize,
    pub bound: u32,
    pub weakly_regular_bound: u32,
    pub max_degree: u32,
    pub max_weakly_regular_degree: Option<u32>,
    pub holds: bool,
}

pub fn degree_bound_check(p: u32, n: usize, bent: &[PAryFunction]) -> DegreeBoundCheck {
    let weakly_regular_bound = n as u32 * (p - 1) / 2;
    let bound = weakly_regular_bound + 1;
    let mut max_degree = 0;
    let mut max_wr = None;
    for f in bent {
        let degree = to_anf(f).degree();
        max_degree = max_degree.max(degree);
        if classify_regularity(f).is_weakly_regular {
            max_wr = Some(max_wr.unwrap_or(0).max(degree));
        }
    }
    DegreeBoundCheck {
        checked: bent.len(),
        bound,
        weakly_regular_bound,
        max_degree,
        max_weakly_regular_degree: max_wr,
        holds: max_degree <= bound && max_wr.is_none_or(|d| d <= weakly_regular_bound),
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions<'a> {
    pub family: Option<Family>,
    pub scan: ScanOptions<'a>,
    /// Allow `(p, n)` outside [`SUPPORTED_SCALES`].
    pub unsafe_scale: bool,
}

impl std::fmt::Debug for ScanOptions<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScanOptions")
            .field("execution", &self.execution)
            .field("checkpoint", &self.checkpoint)
            .field("resume", &self.resume)
            .finish_non_exhaustive()
    }
}

/// Everything learned from one classification run.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub p: u32,
    pub n: usize,
    pub family: String,
    pub candidates: u64,
    pub bent_count: usize,
    pub orbits: Vec<OrbitSummary>,
    /// `scalar_relations[o][a−1]`: 1-based orbit id of `a · rep_o`.
    pub scalar_relations: Vec<Vec<Option<usize>>>,
    pub degree_bounds: DegreeBoundCheck,
    #[serde(skip)]
    pub bent: Vec<PAryFunction>,
    #[serde(skip)]
    pub partition: OrbitPartition,
    #[serde(skip)]
    pub scan: ScanOutcome,
}

impl Classification {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.partition.sizes()
    }

    /// 1-based orbit id of `f`, if `f` is in the bent set.
    pub fn orbit_of(&self, f: &PAryFunction) -> Option<usize> {
        self.partition.orbit_containing(&self.bent, f).map(|o| o + 1)
    }

    /// One line per orbit: `orbit_id,size,signature,bent,regular,weakly_regular,homogeneous,weighted_pds`.
    pub fn csv_summary(&self) -> String {
        let mut out = String::from("orbit_id,size,signature,bent,regular,weakly_regular,homogeneous,weighted_pds\n");
        for o in &self.orbits {
            let a = &o.attributes;
            let signature: Vec<String> = a.signature.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                o.id,
                o.size,
                signature.join(" "),
                a.is_bent,
                a.is_regular,
                a.is_weakly_regular,
                o.homogeneous,
                a.weighted_pds
            ));
        }
        out
    }
}

/// Scans the candidate family, then partitions the bent set into `GL(n, p)` orbits.
pub fn classify(p: u32, n: usize, options: &ClassifyOptions<'_>) -> Result<Classification> {
    let family = options.family.unwrap_or(Family::Even);
    let cs = CandidateSpace::new(p, n, family)?;
    if !options.unsafe_scale && !SUPPORTED_SCALES.contains(&(p, n)) {
        return Err(Error::unsupported(format!(
            "GF({p})^{n} has {p}^{} = {} candidates and a group of order {}; pass the unsafe-scale option to run it anyway",
            cs.dimension(),
            cs.count(),
            crate::orbits::gl_order(n, p)
        )));
    }
    let scan = scan_bent(&cs, &options.scan)?;
    let bent = scan
        .bent_indices
        .iter()
        .map(|&i| cs.candidate(i))
        .collect::<Result<Vec<_>>>()?;
    let group = enumerate_gl(n, p)?;
    let partition = orbit_partition(&bent, &group)?;
    let execution = options.scan.execution;
    let orbits = execution.map_ordered(partition.orbits.len(), |o| {
        summarize_orbit(o, &partition, &bent)
    });
    let scalar_relations = scalar_relations(&partition, &bent)
        .into_iter()
        .map(|row| row.into_iter().map(|o| o.map(|o| o + 1)).collect())
        .collect();
    Ok(Classification {
        p,
        n,
        family: family.label(),
        candidates: cs.count(),
        bent_count: bent.len(),
        orbits,
        scalar_relations,
        degree_bounds: degree_bound_check(p, n, &bent),
        bent,
        partition,
        scan,
    })
}

fn summarize_orbit(o: usize, partition: &OrbitPartition, bent: &[PAryFunction]) -> OrbitSummary {
    let orbit = &partition.orbits[o];
    let rep = &orbit.representative;
    let attrs = attributes(rep);
    let step = orbit.size().div_ceil(INVARIANCE_SAMPLE);
    let checked: Vec<usize> = orbit.members.iter().step_by(step.max(1)).copied().collect();
    let invariant = checked.iter().all(|&m| attributes(&bent[m]) == attrs);
    let homogeneous_members = checked
        .iter()
        .filter(|&&m| to_anf(&bent[m]).is_homogeneous())
        .count();
    let dual_orbit = classify_regularity(rep)
        .dual
        .and_then(|d| partition.orbit_containing(bent, &d))
        .map(|d| d + 1);
    OrbitSummary {
        id: o + 1,
        size: orbit.size(),
        representative: rep.to_string(),
        anf: to_anf(rep).to_string(),
        attributes: attrs,
        homogeneous: to_anf(rep).is_homogeneous(),
        homogeneous_members,
        dual_orbit,
        members_checked: checked.len(),
        invariant,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma34Row {
    pub function: String,
    pub regular: bool,
    pub weakly_regular: bool,
    pub edge_weighted_srg: bool,
    pub complete: bool,
}

/// For bent `f` over `GF(3)^2`: the Cayley graph is an edge-weighted SRG that
/// is not complete iff `f` is regular, and an edge-weighted SRG that is
/// complete iff `f` is weakly regular but not regular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma34Verdict {
    pub rows: Vec<Lemma34Row>,
    pub non_complete_iff_regular: bool,
    pub complete_iff_weakly_regular_only: bool,
}

impl Lemma34Verdict {
    pub fn holds(&self) -> bool {
        self.non_complete_iff_regular && self.complete_iff_weakly_regular_only
    }
}

pub fn lemma34_check(bent: &[PAryFunction]) -> Result<Lemma34Verdict> {
    if bent.iter().any(|f| (f.p(), f.n()) != (3, 2)) {
        return Err(Error::invalid("the check applies to functions on GF(3)^2"));
    }
    let rows: Vec<Lemma34Row> = bent
        .iter()
        .map(|f| {
            let profile = classify_regularity(f);
            let verdict = weighted_srg_verdict(&build_cayley_graph(f));
            Lemma34Row {
                function: f.to_string(),
                regular: profile.is_regular,
                weakly_regular: profile.is_weakly_regular,
                edge_weighted_srg: verdict.is_edge_weighted_srg,
                complete: verdict.complete,
            }
        })
        .collect();
    let non_complete_iff_regular = rows
        .iter()
        .all(|r| (r.edge_weighted_srg && !r.complete) == r.regular);
    let complete_iff_weakly_regular_only = rows
        .iter()
        .all(|r| (r.edge_weighted_srg && r.complete) == (r.weakly_regular && !r.regular));
    Ok(Lemma34Verdict {
        rows,
        non_complete_iff_regular,
        complete_iff_weakly_regular_only,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureWitness {
    pub function: String,
    pub bent: bool,
    pub homogeneous: bool,
    pub weakly_regular: bool,
    /// `μ_{i,i}` for `i = 1, …, p−1`; `None` when the complement class is empty.
    pub mu_diagonal: Vec<Option<ValueSet>>,
}

/// Observations on two open statements, collected over a function list.
///
/// The first says an even bent `f` with `f(0) = 0` whose level curves form a
/// weighted PDS is homogeneous and weakly regular. The second says a weakly
/// regular bent `f` with a weighted PDS has `μ_{i,i} = 0` for all `i`. Both are
/// only reported on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub checked: usize,
    pub weighted_pds: usize,
    /// Bent functions with a weighted PDS that are not homogeneous or not weakly regular.
    pub homogeneity_counterexamples: Vec<ConjectureWitness>,
    /// Weakly regular bent functions with a weighted PDS and some `μ_{i,i} ≠ 0`.
    pub mu_counterexamples: Vec<ConjectureWitness>,
    /// Functions with a weighted PDS that are not weakly regular bent and have
    /// some `μ_{i,i} ≠ 0`, showing the hypothesis cannot be dropped.
    pub relaxed_mu_witnesses: Vec<ConjectureWitness>,
}

pub fn conjecture_report(functions: &[PAryFunction]) -> ConjectureReport {
    let mut report = ConjectureReport {
        checked: functions.len(),
        ..ConjectureReport::default()
    };
    for f in functions {
        let wpds = is_weighted_pds(&LevelCurves::from_function(f));
        if !wpds.is_weighted_pds {
            continue;
        }
        report.weighted_pds += 1;
        let profile = classify_regularity(f);
        let anf = to_anf(f);
        let mu_diagonal: Vec<Option<ValueSet>> = (1..f.p() as usize).map(|i| wpds.mu.get(&(i, i)).cloned()).collect();
        let mu_vanishes = mu_diagonal
            .iter()
            .all(|m| m.as_ref().is_none_or(|s| s.iter().all(|&v| v == 0)));
        let witness = ConjectureWitness {
            function: f.to_string(),
            bent: profile.is_bent,
            homogeneous: anf.is_homogeneous(),
            weakly_regular: profile.is_weakly_regular,
            mu_diagonal,
        };
        let even_bent = profile.is_bent && f.is_even() && f.value(0) == 0;
        if even_bent && !(witness.homogeneous && witness.weakly_regular) {
            report.homogeneity_counterexamples.push(witness.clone());
        }
        if profile.is_weakly_regular && !mu_vanishes {
            report.mu_counterexamples.push(witness.clone());
        }
        if !profile.is_weakly_regular && !mu_vanishes {
            report.relaxed_mu_witnesses.push(witness);
        }
    }
    report
}

/// Every candidate of a family, for small spaces.
pub fn all_candidates(cs: &CandidateSpace) -> Result<Vec<PAryFunction>> {
    if cs.count() > 1 << 20 {
        return Err(Error::unsupported(format!("{} candidates is too many to list", cs.count())));
    }
    (0..cs.count()).map(|i| cs.candidate(i)).collect()
}
