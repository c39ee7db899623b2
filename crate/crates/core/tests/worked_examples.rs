use std::f64::consts::PI;

use num_complex::Complex64;
use pary_bent::combinatorics::{latin_square_type, LatinSquareType};
use pary_bent::golden::golden;
use pary_bent::graph::{build_cayley_graph, is_strongly_regular_unweighted, SrgParams};
use pary_bent::transforms::{classify_regularity, dual, walsh_transform};
use pary_bent::{Anf, PAryFunction};

fn unit(label: &str) -> Complex64 {
    match label {
        "1" => Complex64::new(1.0, 0.0),
        "-1" => Complex64::new(-1.0, 0.0),
        "i" => Complex64::new(0.0, 1.0),
        "-i" => Complex64::new(0.0, -1.0),
        other => panic!("unexpected unit {other}"),
    }
}

/// Checks `W_f(u) = μ ζ^{g(u)} p^{n/2}` for every `u` in floating point.
fn walsh_matches_dual(f: &PAryFunction, g: &PAryFunction, mu: Complex64) -> bool {
    let w = walsh_transform(f);
    let p = f.p() as f64;
    let scale = p.powf(f.n() as f64 / 2.0);
    (0..f.size()).all(|u| {
        let expected = mu * Complex64::from_polar(scale, 2.0 * PI * g.value(u) as f64 / p);
        (w.value(u).to_complex() - expected).norm() < 1e-9
    })
}

#[test]
fn stored_duals_and_units_agree_with_the_walsh_values() {
    let data = golden();
    let mut checked = 0;
    for suite in &data.suites {
        for entry in &suite.functions {
            let (Some(dual_name), Some(mu)) = (&entry.dual, &entry.mu) else { continue };
            let f = entry.function(suite.p, suite.n).unwrap();
            let g = data.function(suite.p, suite.n, dual_name).unwrap();
            assert!(walsh_matches_dual(&f, &g, unit(mu)), "{}", entry.name);
            assert_eq!(dual(&f).unwrap(), g, "{}", entry.name);
            checked += 1;
        }
    }
    assert!(checked >= 18);
}

#[test]
fn b12_is_its_own_dual_with_a_negative_unit() {
    let f = golden().function(3, 2, "b_12").unwrap();
    assert!(walsh_matches_dual(&f, &f, unit("-1")));
    assert_ne!(f, f.scale(2));
}

#[test]
fn mixed_quadratic_over_gf3_cubed_is_weakly_regular_but_not_regular() {
    let f = Anf::parse("x0*x1 + x2^2", 3, 3).unwrap().evaluate();
    let profile = classify_regularity(&f);
    assert!(profile.is_bent);
    assert!(profile.is_weakly_regular);
    assert!(!profile.is_regular);
    assert!(matches!(profile.mu.unwrap().label(), "i" | "-i"));
}

#[test]
fn quadratic_graph_over_gf5_squared_is_of_latin_square_type() {
    let f = Anf::parse("x0^2 + x0*x1", 5, 2).unwrap().evaluate();
    let srg = is_strongly_regular_unweighted(&build_cayley_graph(&f)).unwrap();
    assert_eq!(srg, SrgParams { v: 25, k: 16, lambda: 9, mu: 12 });
    assert!(latin_square_type(srg).contains(&LatinSquareType { n: 5, r: 4, negative: false }));
}

#[test]
fn small_latin_square_type_parameters() {
    let found = latin_square_type(SrgParams { v: 4, k: 2, lambda: 0, mu: 2 });
    assert!(found.contains(&LatinSquareType { n: 2, r: 2, negative: false }));
}
