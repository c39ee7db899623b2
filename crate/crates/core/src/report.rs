//! Serialization helpers and report formats shared by the CLI.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::anf::to_anf;
use crate::combinatorics::{
    build_association_scheme, intersection_numbers_trace, is_weighted_pds, latin_square_type, LatinSquareType,
    LevelCurves, TraceTables, WpdsReport,
};
use crate::function::PAryFunction;
use crate::graph::{
    build_cayley_graph, component_count_from_span, connected_components, distance_regularity_check,
    is_strongly_regular_unweighted, rational_spectrum, spectrum_via_fourier, unweighted_spectrum,
    weighted_srg_verdict, ComponentRegularity, SrgParams, WeightedSrgVerdict,
};
use crate::transforms::{classify_regularity, walsh_transform, BentProfile};

/// Tuple keys rendered as JSON object keys such as `"1,2"`.
pub trait CellKey {
    fn label(&self) -> String;
}

impl<T: ToString> CellKey for (T, T) {
    fn label(&self) -> String {
        format!("{},{}", self.0.to_string(), self.1.to_string())
    }
}

impl<T: ToString> CellKey for (T, T, T) {
    fn label(&self) -> String {
        format!("{},{},{}", self.0.to_string(), self.1.to_string(), self.2.to_string())
    }
}

pub fn keyed_cells<K: CellKey, S: Serializer>(
    cells: &BTreeMap<K, BTreeSet<i64>>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(cells.len()))?;
    for (key, values) in cells {
        map.serialize_entry(&key.label(), values)?;
    }
    map.end()
}

/// Renders a value set as `3` or `{4, 6}`.
pub fn value_set_text(values: &BTreeSet<i64>) -> String {
    if values.len() == 1 {
        values.iter().next().expect("one element").to_string()
    } else {
        let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Every verdict the crate can give about a single function.
#[derive(Clone, Debug, Serialize)]
pub struct Dossier {
    pub function: String,
    pub anf: String,
    pub degree: u32,
    pub homogeneous: bool,
    pub even: bool,
    pub signature: Vec<usize>,
    pub support_size: usize,
    pub profile: BentProfile,
    pub walsh: String,
    /// Set when `f(0) ≠ 0`, so every vertex carries a loop.
    pub self_loop_warning: bool,
    pub components: usize,
    pub components_from_span: usize,
    /// Eigenvalues of the weight matrix, decreasing, for even `f` with a rational spectrum.
    pub spectrum: Option<Vec<i64>>,
    pub unweighted_spectrum: Option<Vec<i64>>,
    pub unweighted_srg: Option<SrgParams>,
    pub latin_square_types: Vec<LatinSquareType>,
    pub weighted_srg: WeightedSrgVerdict,
    pub distance_regularity: Vec<ComponentRegularity>,
    pub wpds: WpdsReport,
    pub trace_tables: TraceTables,
    /// Identities of the association scheme, when the level curves form a weighted PDS.
    pub scheme_identities: Option<Vec<(String, bool)>>,
}

pub fn analyze(f: &PAryFunction) -> Dossier {
    let anf = to_anf(f);
    let graph = build_cayley_graph(f);
    let curves = LevelCurves::from_function(f);
    let unweighted_srg = is_strongly_regular_unweighted(&graph);
    let wpds = is_weighted_pds(&curves);
    let scheme_identities = wpds
        .is_weighted_pds
        .then(|| build_association_scheme(&curves).ok().map(|s| s.identities))
        .flatten();
    Dossier {
        function: f.to_string(),
        anf: anf.to_string(),
        degree: anf.degree(),
        homogeneous: anf.is_homogeneous(),
        even: f.is_even(),
        signature: f.signature(),
        support_size: f.support().len(),
        profile: classify_regularity(f),
        walsh: walsh_transform(f).dump(),
        self_loop_warning: graph.self_loop_warning(),
        components: connected_components(&graph).count,
        components_from_span: component_count_from_span(f),
        spectrum: spectrum_via_fourier(f).ok().and_then(|s| rational_spectrum(&s)),
        unweighted_spectrum: unweighted_spectrum(f).ok().and_then(|s| rational_spectrum(&s)),
        unweighted_srg,
        latin_square_types: unweighted_srg.map(latin_square_type).unwrap_or_default(),
        weighted_srg: weighted_srg_verdict(&graph),
        distance_regularity: distance_regularity_check(&graph),
        trace_tables: intersection_numbers_trace(&curves),
        wpds,
        scheme_identities,
    }
}

fn cells_text<K: CellKey>(out: &mut String, label: &str, cells: &BTreeMap<K, BTreeSet<i64>>) {
    let parts: Vec<String> = cells
        .iter()
        .map(|(k, v)| format!("{label}({})={}", k.label(), value_set_text(v)))
        .collect();
    for line in parts.chunks(6) {
        let _ = writeln!(out, "  {}", line.join("  "));
    }
}

fn bool_text(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Dossier {
    /// Plain-text rendering for terminals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = &self.profile;
        let _ = writeln!(out, "function      {}", self.function);
        let _ = writeln!(out, "anf           {}", self.anf);
        let _ = writeln!(
            out,
            "degree        {} ({})",
            self.degree,
            if self.homogeneous { "homogeneous" } else { "not homogeneous" }
        );
        let _ = writeln!(out, "even          {}", bool_text(self.even));
        let _ = writeln!(out, "signature     {:?}", self.signature);
        let _ = writeln!(out, "support size  {}", self.support_size);
        let _ = writeln!(
            out,
            "bent {}  weakly regular {}  regular {}",
            bool_text(p.is_bent),
            bool_text(p.is_weakly_regular),
            bool_text(p.is_regular)
        );
        if let (Some(mu), Some(dual)) = (p.mu, &p.dual) {
            let _ = writeln!(out, "mu {}  dual {}", mu.label(), dual);
        }
        out.push_str("walsh spectrum\n");
        for line in self.walsh.lines() {
            let _ = writeln!(out, "  {line}");
        }
        if self.self_loop_warning {
            out.push_str("warning: f(0) != 0, every vertex carries a loop\n");
        }
        let _ = writeln!(
            out,
            "components    {} (quotient by span of support: {})",
            self.components, self.components_from_span
        );
        if let Some(s) = &self.spectrum {
            let _ = writeln!(out, "spectrum      {s:?}");
        }
        if let Some(s) = &self.unweighted_spectrum {
            let _ = writeln!(out, "unweighted spectrum {s:?}");
        }
        match self.unweighted_srg {
            Some(s) => {
                let _ = writeln!(out, "unweighted SRG ({}, {}, {}, {})", s.v, s.k, s.lambda, s.mu);
                for t in &self.latin_square_types {
                    let kind = if t.negative { "negative Latin square type" } else { "Latin square type" };
                    let _ = writeln!(out, "  {kind} N={} R={}", t.n, t.r);
                }
            }
            None => out.push_str("unweighted SRG no\n"),
        }
        let w = &self.weighted_srg;
        let _ = writeln!(
            out,
            "edge-weighted SRG {}  (connected {}, complete {})",
            bool_text(w.is_edge_weighted_srg),
            bool_text(w.connected),
            bool_text(w.complete)
        );
        cells_text(&mut out, "k", &w.k);
        cells_text(&mut out, "mu", &w.mu);
        cells_text(&mut out, "lambda", &w.lambda);
        for (i, c) in self.distance_regularity.iter().enumerate() {
            match &c.intersection_array {
                Some((b, cc)) => {
                    let _ = writeln!(
                        out,
                        "component {i}: {} vertices, diameter {}, distance regular {{{b:?}; {cc:?}}}",
                        c.size, c.diameter
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "component {i}: {} vertices, diameter {}, not distance regular",
                        c.size, c.diameter
                    );
                }
            }
        }
        let r = &self.wpds;
        let _ = writeln!(out, "level curve sizes {:?}", r.sizes);
        let _ = writeln!(
            out,
            "weighted PDS  {} (classes symmetric {})",
            bool_text(r.is_weighted_pds),
            bool_text(r.symmetric)
        );
        cells_text(&mut out, "lambda", &r.lambda);
        cells_text(&mut out, "mu", &r.mu);
        if let Some((l, m)) = r.collapsed_pds {
            let _ = writeln!(out, "union of the classes is a PDS with lambda={l}, mu={m}");
        }
        out.push_str("intersection numbers by the trace formula\n");
        for (k, table) in self.trace_tables.tables.iter().enumerate() {
            match table {
                Some(rows) => {
                    let _ = writeln!(out, "  p^{k}");
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
                        let _ = writeln!(out, "   {}", cells.join(""));
                    }
                }
                None => {
                    let _ = writeln!(out, "  p^{k}: class is empty");
                }
            }
        }
        let non_integral = self.trace_tables.non_integral_cells();
        if !non_integral.is_empty() {
            let _ = writeln!(out, "non-integral cells (k, i, j): {non_integral:?}");
        }
        if let Some(ids) = &self.scheme_identities {
            for (name, ok) in ids {
                let _ = writeln!(out, "scheme identity {name}: {}", bool_text(*ok));
            }
        }
        out
    }
}
