//! Reference data for the three classification suites and the published
//! intersection-number tables, with checks against computed results.
//!
//! The fixture lives in `test-data/classification.json`. Table cells are
//! strings so that fractional trace-formula entries such as `1/2` can be
//! stored exactly; a `null` table stands for an empty class `D_k`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::anf::Anf;
use crate::classify::{Classification, Family};
use crate::combinatorics::{intersection_numbers_direct, intersection_numbers_trace, LevelCurves};
use crate::error::{Error, Result};
use crate::function::PAryFunction;
use crate::graph::{build_cayley_graph, matrix_walk_counts, trace};
use crate::transforms::classify_regularity;

const FIXTURE: &str = include_str!("../test-data/classification.json");

#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub suites: Vec<Suite>,
    pub tables: Vec<TableFixture>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Suite {
    pub p: u32,
    pub n: usize,
    pub candidates: u64,
    pub bent: usize,
    pub orbit_sizes: Vec<usize>,
    pub functions: Vec<NamedFunction>,
    /// `[g, a, h]`: `g` and `a · h` lie in the same orbit.
    #[serde(default)]
    pub scalar_relations: Vec<(String, u32, String)>,
    /// `[i, j]`: `b_i = −b_j`.
    #[serde(default)]
    pub negations: Vec<(usize, usize)>,
    /// `[i, j, k]`: `b_i = b_j + b_k`.
    #[serde(default)]
    pub sums: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NamedFunction {
    pub name: String,
    #[serde(default)]
    pub values: Option<String>,
    #[serde(default)]
    pub anf: Option<String>,
    pub orbit_size: usize,
    pub regular: bool,
    pub weakly_regular: bool,
    #[serde(default)]
    pub weighted_pds: Option<bool>,
    /// Name of the dual, with `mu` the unit in `W_f(u) = μ ζ^{f*(u)} p^{n/2}`.
    #[serde(default)]
    pub dual: Option<String>,
    #[serde(default)]
    pub mu: Option<String>,
}

impl NamedFunction {
    pub fn function(&self, p: u32, n: usize) -> Result<PAryFunction> {
        match (&self.values, &self.anf) {
            (Some(values), _) => PAryFunction::parse_values(p, n, values),
            (None, Some(anf)) => Ok(Anf::parse(anf, p, n)?.evaluate()),
            (None, None) => Err(Error::invalid(format!("{} has neither values nor a polynomial", self.name))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub p: u32,
    pub n: usize,
    /// `direct` for difference counts, `trace` for `Tr(A_iA_jA_k)/(p^n|D_k|)`.
    pub method: String,
    pub functions: Vec<String>,
    pub sizes: Vec<usize>,
    /// `tables[k][i][j] = p_ij^k`.
    pub tables: Vec<Option<Vec<Vec<String>>>>,
    /// `Tr(A_iA_jA_k)` keyed by `"i,j,k"`.
    #[serde(default)]
    pub traces: BTreeMap<String, i64>,
    /// Weight classes `D_1, …` as coordinate lists.
    #[serde(default)]
    pub level_sets: Vec<Vec<Vec<u8>>>,
    /// Published cells that contradict the published tables themselves.
    #[serde(default)]
    pub misprints: Vec<Misprint>,
}

/// A published cell `p_ij^k` and the value forced by `|D_k| p_ij^k = |D_i| p_kj^i`.
#[derive(Clone, Debug, Deserialize)]
pub struct Misprint {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub printed: String,
    pub corrected: String,
}

pub fn golden() -> &'static Golden {
    static CELL: OnceLock<Golden> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(FIXTURE).expect("fixture parses"))
}

impl Golden {
    pub fn suite(&self, p: u32, n: usize) -> Option<&Suite> {
        self.suites.iter().find(|s| s.p == p && s.n == n)
    }

    /// Looks a named function up in the suite for `(p, n)`.
    pub fn function(&self, p: u32, n: usize, name: &str) -> Result<PAryFunction> {
        let suite = self
            .suite(p, n)
            .ok_or_else(|| Error::invalid(format!("no reference suite for GF({p})^{n}")))?;
        suite
            .functions
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::invalid(format!("no reference function {name}")))?
            .function(p, n)
    }
}

/// One named comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl GoldenCheck {
    fn new(name: impl Into<String>, expected: impl std::fmt::Debug, actual: impl std::fmt::Debug, passed: bool) -> Self {
        GoldenCheck {
            name: name.into(),
            passed,
            detail: if passed {
                format!("{actual:?}")
            } else {
                format!("expected {expected:?}, got {actual:?}")
            },
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, expected: T, actual: T) -> Self {
        let passed = expected == actual;
        Self::new(name, expected, actual, passed)
    }
}

fn parse_cell(cell: &str) -> Result<Ratio<i64>> {
    let bad = || Error::Parse {
        position: 0,
        message: format!("table cell {cell:?} is not a fraction"),
    };
    match cell.split_once('/') {
        Some((a, b)) => Ok(Ratio::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        None => Ok(Ratio::from_integer(cell.parse().map_err(|_| bad())?)),
    }
}

fn expected_tables(fixture: &TableFixture) -> Result<Tables> {
    fixture
        .tables
        .iter()
        .map(|t| {
            t.as_ref()
                .map(|rows| {
                    rows.iter()
                        .map(|row| row.iter().map(|c| parse_cell(c)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()
        })
        .collect()
}

/// The stored tables with every misprint replaced by its corrected value.
fn corrected_tables(fixture: &TableFixture) -> Result<Tables> {
    let mut tables = expected_tables(fixture)?;
    for m in &fixture.misprints {
        let cell = tables
            .get_mut(m.k)
            .and_then(|t| t.as_mut())
            .and_then(|t| t.get_mut(m.i))
            .and_then(|row| row.get_mut(m.j))
            .ok_or_else(|| Error::invalid(format!("misprint p_{}{}^{} is outside the table", m.i, m.j, m.k)))?;
        *cell = parse_cell(&m.corrected)?;
    }
    Ok(tables)
}

/// Problems with the misprint list: a printed value that is not in the stored
/// table, or a correction not forced by the size symmetry with an unaltered partner cell.
fn misprint_problems(fixture: &TableFixture) -> Result<Vec<String>> {
    let printed = expected_tables(fixture)?;
    let cell = |k: usize, i: usize, j: usize| printed.get(k)?.as_ref()?.get(i)?.get(j).copied();
    let mut problems = Vec::new();
    for m in &fixture.misprints {
        let name = format!("p_{}{}^{}", m.i, m.j, m.k);
        if cell(m.k, m.i, m.j) != Some(parse_cell(&m.printed)?) {
            problems.push(format!("{name} is not printed as {}", m.printed));
        }
        let partner_altered = fixture
            .misprints
            .iter()
            .any(|o| (o.k, o.i, o.j) == (m.i, m.k, m.j));
        let forced = cell(m.i, m.k, m.j).and_then(|partner| {
            let dk = *fixture.sizes.get(m.k)? as i64;
            let di = *fixture.sizes.get(m.i)? as i64;
            (dk != 0).then(|| partner * di / dk)
        });
        if partner_altered || forced != Some(parse_cell(&m.corrected)?) {
            problems.push(format!("{name} = {} is not forced by p_{}{}^{}", m.corrected, m.k, m.j, m.i));
        }
    }
    Ok(problems)
}

/// Computed tables for `f` by the fixture's method, as exact fractions.
fn computed_tables(f: &PAryFunction, method: &str) -> Result<Tables> {
    let curves = LevelCurves::from_function(f);
    match method {
        "direct" => Ok(intersection_numbers_direct(&curves)
            .tables
            .into_iter()
            .map(|t| {
                t.map(|rows| {
                    rows.into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|set| match set.len() {
                                    1 => Ratio::from_integer(*set.iter().next().expect("one value")),
                                    // A non-constant cell never equals a published value.
                                    _ => Ratio::new(-1, 7),
                                })
                                .collect()
                        })
                        .collect()
                })
            })
            .collect()),
        "trace" => Ok(intersection_numbers_trace(&curves).tables),
        other => Err(Error::invalid(format!("unknown table method {other:?}"))),
    }
}

/// One optional `p^k` table per class `k`, empty classes left as `None`.
type Tables = Vec<Option<Vec<Vec<Ratio<i64>>>>>;

/// Cells `(k, i, j, expected, actual)` where the tables disagree.
///
/// A stored all-zero table matches an empty class, for which nothing is
/// computed. A stored table may also omit trailing rows and columns of an
/// empty class, in which case the computed cells there must be zero.
fn table_mismatches(expected: &[Option<Vec<Vec<Ratio<i64>>>>], actual: &[Option<Vec<Vec<Ratio<i64>>>>]) -> Vec<String> {
    let zero = Ratio::from_integer(0);
    let mut out = Vec::new();
    if expected.len() != actual.len() {
        out.push(format!("{} stored tables, {} computed", expected.len(), actual.len()));
        return out;
    }
    for (k, (e, a)) in expected.iter().zip(actual).enumerate() {
        match (e, a) {
            (Some(e), Some(a)) => {
                for (i, row) in a.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        let want = e.get(i).and_then(|r| r.get(j)).unwrap_or(&zero);
                        if want != cell {
                            out.push(format!("p^{k}[{i}][{j}]: expected {want}, got {cell}"));
                        }
                    }
                }
                if e.len() > a.len() {
                    out.push(format!("p^{k}: stored table has {} rows, computed {}", e.len(), a.len()));
                }
            }
            (Some(e), None) => {
                if e.iter().flatten().any(|c| *c != zero) {
                    out.push(format!("p^{k}: class is empty but the stored table is not zero"));
                }
            }
            (None, None) => {}
            (None, Some(_)) => out.push(format!("p^{k}: no stored table")),
        }
    }
    out
}

/// Compares every stored intersection table for `(p, n)` with a fresh computation.
pub fn check_tables(p: u32, n: usize) -> Result<Vec<GoldenCheck>> {
    let data = golden();
    let mut checks = Vec::new();
    for fixture in data.tables.iter().filter(|t| t.p == p && t.n == n) {
        let expected = corrected_tables(fixture)?;
        if !fixture.misprints.is_empty() {
            let problems = misprint_problems(fixture)?;
            let cells: Vec<String> = fixture
                .misprints
                .iter()
                .map(|m| format!("p_{}{}^{} {} -> {}", m.i, m.j, m.k, m.printed, m.corrected))
                .collect();
            checks.push(GoldenCheck {
                name: format!("{} {} misprints forced by size symmetry", fixture.functions.join("/"), fixture.method),
                passed: problems.is_empty(),
                detail: if problems.is_empty() { cells.join(", ") } else { problems.join("; ") },
            });
        }
        for name in &fixture.functions {
            let f = data.function(p, n, name)?;
            let curves = LevelCurves::from_function(&f);
            checks.push(GoldenCheck::eq(format!("{name} class sizes"), fixture.sizes.clone(), curves.sizes()));
            let actual = computed_tables(&f, &fixture.method)?;
            let mismatches = table_mismatches(&expected, &actual);
            checks.push(GoldenCheck {
                name: format!("{name} {} intersection tables", fixture.method),
                passed: mismatches.is_empty(),
                detail: if mismatches.is_empty() {
                    format!("{} tables agree", expected.len())
                } else {
                    mismatches.join("; ")
                },
            });
            if !fixture.level_sets.is_empty() {
                let space = f.space();
                let actual_sets: Vec<Vec<Vec<u8>>> = curves.classes[1..=curves.r()]
                    .iter()
                    .map(|c| c.iter().map(|&x| space.coords(x).to_vec()).collect())
                    .collect();
                let mut expected_sets = fixture.level_sets.clone();
                for set in &mut expected_sets {
                    set.sort_by_key(|v| space.index_of(v));
                }
                checks.push(GoldenCheck::eq(format!("{name} level sets"), expected_sets, actual_sets));
            }
            if !fixture.traces.is_empty() {
                let graph = build_cayley_graph(&f);
                let mut mismatches = Vec::new();
                for (key, &want) in &fixture.traces {
                    let weights: Vec<u32> = key.split(',').map(|w| w.parse().expect("fixture key")).collect();
                    let got = trace(&matrix_walk_counts(&graph, &weights)?);
                    if got != want {
                        mismatches.push((key.clone(), want, got));
                    }
                }
                checks.push(GoldenCheck::new(
                    format!("{name} triple-product traces ({})", fixture.traces.len()),
                    "no mismatches",
                    &mismatches,
                    mismatches.is_empty(),
                ));
            }
        }
    }
    Ok(checks)
}

/// Where the computed tables differ from the tables exactly as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedComparison {
    pub function: String,
    pub method: String,
    /// `(k, i, j)` of every cell that differs from the printed value.
    pub differing: Vec<(usize, usize, usize)>,
    /// `(k, i, j)` of the cells recorded as misprints.
    pub misprints: Vec<(usize, usize, usize)>,
}

impl PrintedComparison {
    /// True iff the only disagreements are the recorded misprints.
    pub fn only_misprints(&self) -> bool {
        self.differing == self.misprints
    }
}

fn cell_position(mismatch: &str) -> Option<(usize, usize, usize)> {
    let rest = mismatch.strip_prefix("p^")?;
    let (k, rest) = rest.split_once('[')?;
    let (i, rest) = rest.split_once("][")?;
    let (j, _) = rest.split_once(']')?;
    Some((k.parse().ok()?, i.parse().ok()?, j.parse().ok()?))
}

/// Compares every stored table for `(p, n)` with the printed values, ignoring the misprint list.
pub fn compare_printed_tables(p: u32, n: usize) -> Result<Vec<PrintedComparison>> {
    let data = golden();
    let mut out = Vec::new();
    for fixture in data.tables.iter().filter(|t| t.p == p && t.n == n) {
        let printed = expected_tables(fixture)?;
        let mut misprints: Vec<_> = fixture.misprints.iter().map(|m| (m.k, m.i, m.j)).collect();
        misprints.sort_unstable();
        for name in &fixture.functions {
            let f = data.function(p, n, name)?;
            let actual = computed_tables(&f, &fixture.method)?;
            let mismatches = table_mismatches(&printed, &actual);
            let mut differing = Vec::new();
            for m in &mismatches {
                differing.push(
                    cell_position(m).ok_or_else(|| Error::invalid(format!("{name}: {m}")))?,
                );
            }
            differing.sort_unstable();
            out.push(PrintedComparison {
                function: name.clone(),
                method: fixture.method.clone(),
                differing,
                misprints: misprints.clone(),
            });
        }
    }
    Ok(out)
}

/// Compares a classification run with the stored suite for its `(p, n)`.
pub fn check_classification(c: &Classification) -> Result<Vec<GoldenCheck>> {
    let data = golden();
    let suite = data
        .suite(c.p, c.n)
        .ok_or_else(|| Error::invalid(format!("no reference suite for GF({})^{}", c.p, c.n)))?;
    let (p, n) = (c.p, c.n);
    let mut checks = Vec::new();
    // A degree-bounded run covers a smaller space that still holds every bent function.
    if c.family == Family::Even.label() {
        checks.push(GoldenCheck::eq("candidates", suite.candidates, c.candidates));
    }
    checks.push(GoldenCheck::eq("bent functions", suite.bent, c.bent_count));
    let mut expected_sizes = suite.orbit_sizes.clone();
    expected_sizes.sort_unstable();
    checks.push(GoldenCheck::eq("orbit sizes", expected_sizes, c.orbit_sizes()));
    checks.push(GoldenCheck::eq(
        "attributes constant on orbits",
        true,
        c.orbits.iter().all(|o| o.invariant),
    ));

    let mut named_orbits = BTreeMap::new();
    for entry in &suite.functions {
        let f = entry.function(p, n)?;
        let Some(id) = c.orbit_of(&f) else {
            checks.push(GoldenCheck::new(format!("{} is in the bent set", entry.name), true, false, false));
            continue;
        };
        named_orbits.insert(entry.name.clone(), id);
        let orbit = &c.orbits[id - 1];
        let a = &orbit.attributes;
        checks.push(GoldenCheck::eq(format!("{} orbit size", entry.name), entry.orbit_size, orbit.size));
        checks.push(GoldenCheck::eq(
            format!("{} regular / weakly regular", entry.name),
            (entry.regular, entry.weakly_regular),
            (a.is_regular, a.is_weakly_regular),
        ));
        if let Some(wpds) = entry.weighted_pds {
            checks.push(GoldenCheck::eq(format!("{} weighted PDS", entry.name), wpds, a.weighted_pds));
        }
        if let Some(dual_name) = &entry.dual {
            let profile = classify_regularity(&f);
            let expected = data.function(p, n, dual_name)?;
            checks.push(GoldenCheck::eq(
                format!("{} dual is {dual_name} with mu {}", entry.name, entry.mu.as_deref().unwrap_or("?")),
                (Some(expected), entry.mu.clone()),
                (profile.dual, profile.mu.map(|m| m.label().to_string())),
            ));
        }
    }
    if named_orbits.len() == suite.functions.len() && suite.functions.iter().all(|f| f.values.is_none()) {
        let distinct: std::collections::BTreeSet<_> = named_orbits.values().collect();
        checks.push(GoldenCheck::eq(
            "representatives lie in distinct orbits",
            suite.functions.len(),
            distinct.len(),
        ));
    }
    for (g, a, h) in &suite.scalar_relations {
        let scaled = data.function(p, n, h)?.scale(*a);
        let left = named_orbits.get(g).copied();
        let right = c.orbit_of(&scaled);
        checks.push(GoldenCheck::eq(format!("{g} ~ {a}{h}"), left, right));
    }
    for &(i, j) in &suite.negations {
        let bi = data.function(p, n, &format!("b_{i}"))?;
        let bj = data.function(p, n, &format!("b_{j}"))?;
        checks.push(GoldenCheck::eq(format!("b_{i} = -b_{j}"), bi, bj.scale(p - 1)));
    }
    for &(i, j, k) in &suite.sums {
        let bi = data.function(p, n, &format!("b_{i}"))?;
        let bj = data.function(p, n, &format!("b_{j}"))?;
        let bk = data.function(p, n, &format!("b_{k}"))?;
        let sum: Vec<u8> = bj.values().iter().zip(bk.values()).map(|(x, y)| ((x + y) as u32 % p) as u8).collect();
        checks.push(GoldenCheck::eq(format!("b_{i} = b_{j} + b_{k}"), bi.values().to_vec(), sum));
    }
    checks.extend(check_tables(p, n)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads() {
        let g = golden();
        assert_eq!(g.suites.len(), 3);
        assert_eq!(g.suite(3, 2).unwrap().functions.len(), 18);
        for suite in &g.suites {
            for f in &suite.functions {
                f.function(suite.p, suite.n).unwrap();
            }
        }
    }

    #[test]
    fn fraction_cells() {
        assert_eq!(parse_cell("3/2").unwrap(), Ratio::new(3, 2));
        assert_eq!(parse_cell("4").unwrap(), Ratio::from_integer(4));
        assert!(parse_cell("1/").is_err());
    }

    #[test]
    fn stored_tables_match() {
        let failures: Vec<String> = [(3, 2), (3, 3), (5, 2)]
            .into_iter()
            .flat_map(|(p, n)| check_tables(p, n).unwrap())
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn misprint_corrections_must_be_forced() {
        let mut fixture = golden()
            .tables
            .iter()
            .find(|t| t.functions == ["f_1"])
            .expect("f_1 tables")
            .clone();
        assert!(misprint_problems(&fixture).unwrap().is_empty());
        fixture.misprints[0].corrected = "3".into();
        assert_eq!(misprint_problems(&fixture).unwrap().len(), 1);
        fixture.misprints[0].printed = "5".into();
        assert_eq!(misprint_problems(&fixture).unwrap().len(), 2);
    }

    #[test]
    fn printed_tables_differ_only_at_misprints() {
        for (p, n) in [(3, 2), (3, 3), (5, 2)] {
            for c in compare_printed_tables(p, n).unwrap() {
                assert!(c.only_misprints(), "{c:?}");
            }
        }
        let f2 = compare_printed_tables(5, 2).unwrap();
        let f2 = f2.iter().find(|c| c.function == "f_2").unwrap();
        assert_eq!(f2.differing, [(1, 4, 4), (1, 4, 5), (1, 5, 4), (1, 5, 5)]);
    }
}
