//! Walsh and Fourier transforms, bentness, (weak) regularity and duals.

use serde::Serialize;

use crate::cyclotomic::{gauss_sum, CycInt};
use crate::error::{Error, Result};
use crate::field::VectorSpace;
use crate::function::PAryFunction;

/// `W_f(u) = Σ_x ζ^{f(x) − ⟨u,x⟩}` for every `u`, in vector-index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshSpectrum {
    pub p: u32,
    pub n: usize,
    pub values: Vec<CycInt>,
}

impl WalshSpectrum {
    pub fn value(&self, u: usize) -> &CycInt {
        &self.values[u]
    }

    /// `Σ_u |W_f(u)|² == p^{2n}`, evaluated exactly.
    pub fn parseval_holds(&self) -> bool {
        let total = self
            .values
            .iter()
            .fold(CycInt::zero(self.p), |acc, w| &acc + &w.norm_sq());
        total.is_rational() == Some((self.p as i64).pow(2 * self.n as u32))
    }

    /// One line per `u`: `u=<index> W=[a0,…] |W|^2=<value>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, w) in self.values.iter().enumerate() {
            let coeffs: Vec<String> = w.coeffs().iter().map(|c| c.to_string()).collect();
            let norm = w.norm_sq();
            let norm_text = match norm.is_rational() {
                Some(r) => r.to_string(),
                None => format!("[{norm}]"),
            };
            out.push_str(&format!("u={u} W=[{}] |W|^2={norm_text}\n", coeffs.join(",")));
        }
        out
    }
}

/// Counts `c[k] = #{x : f(x) − ⟨u,x⟩ ≡ k}` so that `W_f(u) = Σ_k c[k] ζ^k`.
pub fn walsh_exponent_counts(f: &PAryFunction, space: &VectorSpace, u: usize) -> Vec<i64> {
    let p = f.p();
    let mut counts = vec![0i64; p as usize];
    for x in 0..space.size() {
        let k = (f.value(x) as u32 + p - space.dot(u, x)) % p;
        counts[k as usize] += 1;
    }
    counts
}

pub fn walsh_transform(f: &PAryFunction) -> WalshSpectrum {
    let space = f.space();
    let values = (0..space.size())
        .map(|u| CycInt::from_exponent_counts(f.p(), &walsh_exponent_counts(f, &space, u)))
        .collect();
    WalshSpectrum {
        p: f.p(),
        n: f.n(),
        values,
    }
}

/// `f̂(y) = Σ_x f(x) ζ^{−⟨x,y⟩}` with values read as integers in `0..p`.
pub fn fourier_transform(f: &PAryFunction) -> Vec<CycInt> {
    let space = f.space();
    let p = f.p();
    (0..space.size())
        .map(|y| {
            let mut counts = vec![0i64; p as usize];
            for x in 0..space.size() {
                let k = (p - space.dot(x, y)) % p;
                counts[k as usize] += f.value(x) as i64;
            }
            CycInt::from_exponent_counts(p, &counts)
        })
        .collect()
}

/// Decides `|Σ_k c_k ζ^k|² = target` from the exponent counts alone.
///
/// `|W|² = Σ_d A(d) ζ^d` with `A(d) = Σ_k c_k c_{k+d}`, which equals the
/// integer `target` iff `A(1) = … = A(p−1)` and `A(0) − A(1) = target`.
pub fn counts_have_norm(counts: &[i64], target: i64) -> bool {
    let p = counts.len();
    let autocorrelation = |d: usize| -> i64 { (0..p).map(|k| counts[k] * counts[(k + d) % p]).sum() };
    let a1 = autocorrelation(1);
    if autocorrelation(0) - a1 != target {
        return false;
    }
    (2..p).all(|d| autocorrelation(d) == a1)
}

/// True iff `|W_f(u)|² = p^n` for every `u`.
pub fn is_bent(f: &PAryFunction) -> bool {
    let space = f.space();
    let target = (f.p() as i64).pow(f.n() as u32);
    (0..space.size()).all(|u| counts_have_norm(&walsh_exponent_counts(f, &space, u), target))
}

/// The unit `μ = W_f(0)/p^{n/2} · ζ^{−c}` written as `i^quarter_turns`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mu {
    pub quarter_turns: u8,
}

impl Mu {
    pub fn label(&self) -> &'static str {
        match self.quarter_turns % 4 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BentProfile {
    pub is_bent: bool,
    pub is_weakly_regular: bool,
    pub is_regular: bool,
    /// Present iff weakly regular.
    pub mu: Option<Mu>,
    /// `c` with `W_f(0) = μ ζ^c p^{n/2}`, present iff weakly regular.
    pub w0_zeta_exponent: Option<u32>,
    pub dual: Option<PAryFunction>,
}

impl BentProfile {
    fn not_weakly_regular(is_bent: bool) -> Self {
        BentProfile {
            is_bent,
            is_weakly_regular: false,
            is_regular: false,
            mu: None,
            w0_zeta_exponent: None,
            dual: None,
        }
    }
}

/// Finds `(s, c)` with `value = s ζ^c · scale`, `s = ±1`.
fn signed_zeta_multiple(value: &CycInt, scale: &CycInt) -> Option<(i64, u32)> {
    if let Some(c) = value.as_root_of_unity_multiple(scale) {
        return Some((1, c));
    }
    value.as_root_of_unity_multiple(&-scale).map(|c| (-1, c))
}

/// Expresses `W_f(0) = μ ζ^c p^{n/2}` with `μ ∈ {±1, ±i}`, exactly.
fn normalize_w0(w0: &CycInt, p: u32, n: usize) -> Option<(Mu, u32)> {
    if n.is_multiple_of(2) {
        let scale = CycInt::from_int(p, (p as i64).pow(n as u32 / 2));
        let (s, c) = signed_zeta_multiple(w0, &scale)?;
        return Some((Mu { quarter_turns: if s == 1 { 0 } else { 2 } }, c));
    }
    if p == 2 {
        return None;
    }
    // p^{n/2} is not in Q(ζ_p) for odd n; compare W_f(0)·g against p^{(n+1)/2}.
    let g = gauss_sum(p).expect("odd prime");
    let lifted = w0 * &g;
    let scale = CycInt::from_int(p, (p as i64).pow((n as u32).div_ceil(2)));
    let (s, c) = signed_zeta_multiple(&lifted, &scale)?;
    let quarter_turns = if p % 4 == 1 {
        // g = √p, so W_f(0)/p^{n/2} = s ζ^c.
        if s == 1 { 0 } else { 2 }
    } else {
        // g = i√p, so W_f(0)/p^{n/2} = −i s ζ^c.
        if s == 1 { 3 } else { 1 }
    };
    Some((Mu { quarter_turns }, c))
}

/// Bentness, weak regularity, regularity and the dual of `f`.
///
/// When weakly regular, `W_f(u) = μ ζ^{f*(u)} p^{n/2}` with `f*(u) = j_u + c`,
/// where `W_f(u) = ζ^{j_u} W_f(0)` and `W_f(0) = μ ζ^c p^{n/2}`. With this
/// normalization `f**(x) = f(−x)`.
pub fn classify_regularity(f: &PAryFunction) -> BentProfile {
    if !is_bent(f) {
        return BentProfile::not_weakly_regular(false);
    }
    let spectrum = walsh_transform(f);
    let w0 = spectrum.value(0);
    let mut exponents = Vec::with_capacity(spectrum.values.len());
    for w in &spectrum.values {
        match w.as_root_of_unity_multiple(w0) {
            Some(j) => exponents.push(j),
            None => return BentProfile::not_weakly_regular(true),
        }
    }
    let Some((mu, c)) = normalize_w0(w0, f.p(), f.n()) else {
        return BentProfile::not_weakly_regular(true);
    };
    let p = f.p();
    let dual_values = exponents.iter().map(|&j| ((j + c) % p) as u8).collect();
    BentProfile {
        is_bent: true,
        is_weakly_regular: true,
        is_regular: mu.quarter_turns == 0,
        mu: Some(mu),
        w0_zeta_exponent: Some(c),
        dual: Some(PAryFunction::from_table_unchecked(p, f.n(), dual_values)),
    }
}

/// The dual `f*` of a weakly regular bent function.
pub fn dual(f: &PAryFunction) -> Result<PAryFunction> {
    classify_regularity(f)
        .dual
        .ok_or_else(|| Error::unsupported("the dual is only defined for weakly regular bent functions"))
}

/// Checks `f**(x) = f(−x)`.
pub fn dual_of_dual_check(f: &PAryFunction) -> Result<bool> {
    let d = dual(f)?;
    let dd = dual(&d)?;
    Ok(dd == f.reflect())
}

/// Re-verifies `W_f(u) = μ ζ^{f*(u)} p^{n/2}` for every `u` by exact products.
pub fn verify_dual_relation(f: &PAryFunction, profile: &BentProfile) -> Result<bool> {
    let (Some(mu), Some(dual)) = (profile.mu, profile.dual.as_ref()) else {
        return Err(Error::unsupported("profile carries no dual"));
    };
    let (p, n) = (f.p(), f.n());
    let spectrum = walsh_transform(f);
    let (lift, power) = if n % 2 == 0 {
        (CycInt::one(p), (p as i64).pow(n as u32 / 2))
    } else {
        (gauss_sum(p)?, (p as i64).pow((n as u32).div_ceil(2)))
    };
    // The sign s with μ·(lift/p^{1/2 or 0}) = s.
    let s = match (n % 2, p % 4, mu.quarter_turns) {
        (0, _, 0) | (1, 1, 0) | (1, 3, 3) => 1,
        (0, _, 2) | (1, 1, 2) | (1, 3, 1) => -1,
        _ => return Ok(false),
    };
    Ok(spectrum.values.iter().enumerate().all(|(u, w)| {
        let expected = CycInt::zeta_pow(p, dual.value(u) as i64).scale(s * power);
        (w * &lift) == expected
    }))
}

/// True iff `x ↦ f(x+b) − f(x)` takes every value exactly `p^{n−1}` times.
pub fn derivative_is_balanced(f: &PAryFunction, b: usize) -> bool {
    let space = f.space();
    let p = f.p();
    let mut hits = vec![0usize; p as usize];
    for x in 0..space.size() {
        let d = (f.value(space.add(x, b)) as u32 + p - f.value(x) as u32) % p;
        hits[d as usize] += 1;
    }
    let expected = space.size() / p as usize;
    hits.iter().all(|&h| h == expected)
}

/// Tests `M · conj(M)^T = p^n I` for `M_{ij} = ζ^{f(η(i) − η(j))}`.
pub fn is_butson(f: &PAryFunction) -> bool {
    let space = f.space();
    let p = f.p();
    let size = space.size() as i64;
    let mut counts = vec![0i64; p as usize];
    for i in 0..space.size() {
        for k in 0..space.size() {
            counts.fill(0);
            for j in 0..space.size() {
                let a = f.value(space.sub(i, j)) as u32;
                let b = f.value(space.sub(k, j)) as u32;
                counts[((a + p - b) % p) as usize] += 1;
            }
            let entry = CycInt::from_exponent_counts(p, &counts);
            let expected = if i == k { size } else { 0 };
            if entry.is_rational() != Some(expected) {
                return false;
            }
        }
    }
    true
}

/// Checks `σ_k(W_f(u)) = W_{kf}(k·u)` for every `u`.
pub fn galois_covariance_check(f: &PAryFunction, k: u32) -> Result<bool> {
    let p = f.p();
    if k.is_multiple_of(p) {
        return Err(Error::invalid(format!("{k} is not a unit mod {p}")));
    }
    let space = f.space();
    let w = walsh_transform(f);
    let wk = walsh_transform(&f.scale(k));
    for u in 0..space.size() {
        if w.value(u).galois(k as i64)? != *wk.value(space.scale(k, u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the rational-`W_f(0)` signature identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureCheck {
    pub w0: i64,
    pub nonzero_levels_equal: bool,
    pub w0_matches_signature: bool,
    /// `None` unless `f` is bent; then whether `n` is even.
    pub bent_with_even_arity: Option<bool>,
}

/// When `W_f(0)` is rational, all nonzero level sets share one size and
/// `W_f(0) = |S_0| − |S_1|`; a bent `f` then needs even `n`.
pub fn rational_w0_signature_check(f: &PAryFunction) -> Result<SignatureCheck> {
    let w0 = walsh_transform(f).values[0].clone();
    let Some(w0) = w0.is_rational() else {
        return Err(Error::NotApplicable(format!("W_f(0) = {w0} is not rational")));
    };
    let sig = f.signature();
    let nonzero_levels_equal = sig[1..].iter().all(|&s| s == sig[1]);
    let w0_matches_signature = w0 == sig[0] as i64 - sig[1] as i64;
    let bent_with_even_arity = is_bent(f).then_some(f.n().is_multiple_of(2));
    Ok(SignatureCheck {
        w0,
        nonzero_levels_equal,
        w0_matches_signature,
        bent_with_even_arity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::Anf;

    fn f32(values: [u8; 9]) -> PAryFunction {
        PAryFunction::new(3, 2, values.to_vec()).unwrap()
    }

    fn poly(text: &str, p: u32, n: usize) -> PAryFunction {
        Anf::parse(text, p, n).unwrap().evaluate()
    }

    #[test]
    fn zero_function_spectrum() {
        let w = walsh_transform(&PAryFunction::zero(3, 2).unwrap());
        assert_eq!(w.values[0].is_rational(), Some(9));
        assert!(w.values[1..].iter().all(CycInt::is_zero));
        assert!(w.parseval_holds());
    }

    #[test]
    fn w0_examples_in_three_variables() {
        let w = walsh_transform(&poly("x0^2+x1^2+x2^2", 3, 3));
        // 9 + 6ζ + 12ζ² = −3 − 6ζ in the power basis.
        assert_eq!(w.values[0], CycInt::from_coeffs(3, vec![-3, -6]).unwrap());
        let w = walsh_transform(&poly("x0*x2 + 2x1^2 + 2x0^2x2^2", 3, 3));
        assert_eq!(w.values[0], CycInt::from_coeffs(3, vec![-3, -12]).unwrap());
    }

    #[test]
    fn fourier_example() {
        let values: Vec<i64> = fourier_transform(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0]))
            .iter()
            .map(|v| v.is_rational().unwrap())
            .collect();
        assert_eq!(values, [8, 2, 2, -1, -1, -4, -1, -4, -1]);
    }

    #[test]
    fn bentness_examples() {
        assert!(is_bent(&f32([0, 1, 1, 1, 2, 2, 1, 2, 2])));
        assert!(!is_bent(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0])));
        assert!(is_bent(&poly("x0^2+x0*x1", 5, 2)));
    }

    #[test]
    fn regularity_examples() {
        let b2 = f32([0, 2, 2, 1, 0, 0, 1, 0, 0]);
        let profile = classify_regularity(&b2);
        assert!(profile.is_regular);
        assert_eq!(profile.dual.unwrap().values(), &[0, 1, 1, 2, 0, 0, 2, 0, 0]);

        let b1 = f32([0, 1, 1, 1, 2, 2, 1, 2, 2]);
        let profile = classify_regularity(&b1);
        assert!(profile.is_weakly_regular && !profile.is_regular);
        assert_eq!(profile.mu.unwrap().label(), "-1");
        assert_eq!(profile.dual.unwrap().values(), &[0, 2, 2, 2, 1, 1, 2, 1, 1]);

        // A nondegenerate quadratic form: weakly regular even though W_f(0)/3^{3/2}
        // is not a cube root of unity.
        let quadratic = poly("x0*x1 + x2^2", 3, 3);
        let profile = classify_regularity(&quadratic);
        assert!(profile.is_weakly_regular && !profile.is_regular);

        let cubic_terms = PAryFunction::new(
            3,
            3,
            vec![0, 2, 2, 1, 1, 1, 1, 1, 1, 2, 0, 1, 1, 2, 0, 1, 0, 0, 2, 1, 0, 1, 0, 0, 1, 0, 2],
        )
        .unwrap();
        let profile = classify_regularity(&cubic_terms);
        assert!(profile.is_bent && !profile.is_weakly_regular);
    }

    #[test]
    fn odd_arity_weak_regularity() {
        let f = poly("x0^2+x1^2+x2^2", 3, 3);
        let profile = classify_regularity(&f);
        assert!(profile.is_weakly_regular && !profile.is_regular);
        assert!(verify_dual_relation(&f, &profile).unwrap());
        assert!(dual_of_dual_check(&f).unwrap());
    }

    #[test]
    fn double_dual_is_reflection() {
        for values in [[0, 2, 2, 1, 0, 0, 1, 0, 0], [0, 1, 1, 1, 2, 2, 1, 2, 2]] {
            assert!(dual_of_dual_check(&f32(values)).unwrap());
        }
        assert!(dual(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0])).is_err());
    }

    #[test]
    fn derivatives() {
        let b1 = f32([0, 1, 1, 1, 2, 2, 1, 2, 2]);
        assert!((1..9).all(|b| derivative_is_balanced(&b1, b)));
        let zero = PAryFunction::zero(3, 2).unwrap();
        assert!(!derivative_is_balanced(&zero, 1));
    }

    #[test]
    fn butson_examples() {
        assert!(is_butson(&f32([0, 2, 2, 0, 0, 1, 0, 1, 0])));
        assert!(!is_butson(&f32([0, 1, 1, 2, 0, 1, 2, 1, 0])));
        let boolean = PAryFunction::from_fn(2, 4, |x| (x[0] * x[1] + x[2] * x[3]) as i64).unwrap();
        assert!(is_butson(&boolean));
        assert!(is_bent(&boolean));
    }

    #[test]
    fn galois_covariance() {
        let b1 = f32([0, 1, 1, 1, 2, 2, 1, 2, 2]);
        assert!(galois_covariance_check(&b1, 1).unwrap());
        assert!(galois_covariance_check(&b1, 2).unwrap());
        assert!(galois_covariance_check(&b1, 3).is_err());
    }

    #[test]
    fn rational_w0() {
        let check = rational_w0_signature_check(&poly("x0^2+x0*x1", 5, 2)).unwrap();
        assert_eq!(check.w0, 5);
        assert!(check.nonzero_levels_equal && check.w0_matches_signature);
        assert_eq!(check.bent_with_even_arity, Some(true));
        let zero = rational_w0_signature_check(&PAryFunction::zero(3, 2).unwrap()).unwrap();
        assert_eq!(zero.w0, 9);
        assert!(matches!(
            rational_w0_signature_check(&poly("x0^2+x1^2+x2^2", 3, 3)),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn spectrum_dump_format() {
        let dump = walsh_transform(&f32([0, 2, 2, 1, 0, 0, 1, 0, 0])).dump();
        assert_eq!(dump.lines().count(), 9);
        assert!(dump.lines().all(|l| l.ends_with("|W|^2=9")));
        assert!(dump.starts_with("u=0 W=[3,0]"));
    }
}
