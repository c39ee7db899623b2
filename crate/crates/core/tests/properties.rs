use std::f64::consts::PI;

use num_complex::Complex64;
use pary_bent::anf::{evaluate_anf, to_anf};
use pary_bent::combinatorics::complement_pds_params;
use pary_bent::graph::{build_cayley_graph, SrgParams};
use pary_bent::orbits::{act, GlElement};
use pary_bent::search::search_bent;
use pary_bent::transforms::{classify_regularity, derivative_is_balanced, dual, is_bent, walsh_transform};
use pary_bent::{vector_from_index, vector_index, CycInt, PAryFunction};
use proptest::prelude::*;

const SCALES: [(u32, usize); 3] = [(3, 2), (3, 3), (5, 2)];

fn cycint(p: u32) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-20i64..20, (p - 1) as usize).prop_map(move |c| CycInt::from_coeffs(p, c).unwrap())
}

fn cyc_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop::sample::select(vec![3u32, 5, 7]).prop_flat_map(|p| (cycint(p), cycint(p), cycint(p)))
}

fn function() -> impl Strategy<Value = PAryFunction> {
    prop::sample::select(SCALES.to_vec()).prop_flat_map(|(p, n)| {
        prop::collection::vec(0..p as u8, (p as usize).pow(n as u32))
            .prop_map(move |v| PAryFunction::new(p, n, v).unwrap())
    })
}

fn invertible(p: u32, n: usize) -> impl Strategy<Value = GlElement> {
    prop::collection::vec(0..p as u8, n * n).prop_filter_map("singular", move |e| GlElement::new(p, n, e).ok())
}

/// `Σ a_i x_i²` with every `a_i ≠ 0`: a nondegenerate quadratic form.
fn diagonal_form() -> impl Strategy<Value = PAryFunction> {
    prop::sample::select(SCALES.to_vec()).prop_flat_map(|(p, n)| {
        prop::collection::vec(1..p as i64, n).prop_map(move |a| {
            PAryFunction::from_fn(p, n, |x| a.iter().zip(x).map(|(c, &xi)| c * (xi as i64).pow(2)).sum()).unwrap()
        })
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6 * (1.0 + b.norm())
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.try_sub(&a).unwrap(), CycInt::zero(a.p()));
    }

    #[test]
    fn cyclotomic_arithmetic_agrees_with_complex_numbers((a, b, _) in cyc_triple()) {
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(close(a.try_mul(&b).unwrap().to_complex(), x * y));
        prop_assert!(close(a.conj().to_complex(), x.conj()));
        prop_assert!(close(a.mul_zeta_pow(1).to_complex(), x * Complex64::from_polar(1.0, 2.0 * PI / a.p() as f64)));
        prop_assert!(close(a.norm_sq().to_complex(), Complex64::from(x.norm_sqr())));
    }

    #[test]
    fn galois_automorphisms_are_ring_maps((a, b, _) in cyc_triple(), k in 1i64..7) {
        prop_assume!(k % a.p() as i64 != 0);
        let prod = a.try_mul(&b).unwrap().galois(k).unwrap();
        prop_assert_eq!(prod, a.galois(k).unwrap().try_mul(&b.galois(k).unwrap()).unwrap());
    }

    #[test]
    fn vector_indices_round_trip(index in 0usize..3125, n in 1usize..6) {
        let index = index % 5usize.pow(n as u32);
        let v = vector_from_index(index, 5, n);
        prop_assert_eq!(vector_index(&v, 5, n).unwrap(), index);
        prop_assert_eq!(v.coords()[0] as usize, index % 5);
    }

    #[test]
    fn normal_form_reproduces_the_table(f in function()) {
        let a = to_anf(&f);
        prop_assert_eq!(evaluate_anf(&a, f.p(), f.n()).unwrap(), f);
    }

    #[test]
    fn walsh_values_match_a_floating_point_sum(f in function(), u in 0usize..125) {
        let space = f.space();
        let u = u % space.size();
        let p = f.p() as f64;
        let expected: Complex64 = (0..space.size())
            .map(|x| {
                let e = (f.value(x) as u32 + f.p() - space.dot(u, x)) % f.p();
                Complex64::from_polar(1.0, 2.0 * PI * e as f64 / p)
            })
            .sum();
        let w = walsh_transform(&f);
        prop_assert!(close(w.value(u).to_complex(), expected));
        prop_assert!(w.parseval_holds());
    }

    #[test]
    fn bentness_is_balanced_derivatives(f in function()) {
        let balanced = (1..f.size()).all(|b| derivative_is_balanced(&f, b));
        prop_assert_eq!(is_bent(&f), balanced);
    }

    #[test]
    fn linear_substitution_preserves_bentness(
        (f, phi) in diagonal_form().prop_flat_map(|f| {
            let (p, n) = (f.p(), f.n());
            (Just(f), invertible(p, n))
        })
    ) {
        let g = act(&phi, &f).unwrap();
        prop_assert!(is_bent(&g));
        prop_assert_eq!(f.signature(), g.signature());
        prop_assert_eq!(classify_regularity(&f).mu, classify_regularity(&g).mu);
    }

    #[test]
    fn quadratic_forms_are_weakly_regular_and_their_double_dual_is_the_reflection(f in diagonal_form()) {
        let profile = classify_regularity(&f);
        prop_assert!(profile.is_bent && profile.is_weakly_regular);
        let d = dual(&f).unwrap();
        prop_assert_eq!(dual(&d).unwrap(), f.reflect());
    }

    #[test]
    fn cayley_graph_is_symmetric_exactly_for_even_functions(f in function()) {
        prop_assert_eq!(build_cayley_graph(&f).is_symmetric(), f.is_even());
    }

    #[test]
    fn complementing_twice_is_the_identity(v in 4i64..200, k in 1i64..50, lambda in 0i64..50, mu in 0i64..50) {
        let q = SrgParams { v, k, lambda, mu };
        prop_assert_eq!(complement_pds_params(complement_pds_params(q)), q);
    }

    #[test]
    fn search_returns_bent_functions(seed in any::<u64>()) {
        let out = search_bent(4, seed).unwrap();
        prop_assert!(is_bent(&out.function));
        prop_assert_eq!(search_bent(4, seed).unwrap().function, out.function);
    }
}
