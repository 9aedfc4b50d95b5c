//! Information-theoretic functionals of real root multisets.
//!
//! For a multiset `α_1 > … > α_n` the module computes
//!
//! ```text
//! score_i  = Σ_{j≠i} 1/(α_i − α_j)                    (log-derivative field)
//! fisher   = (1/n) · Σ_i ( 2/(n−1) · score_i )²       (Fisher information)
//! entropy  = (2/(n(n−1))) · Σ_{i<j} ln|α_i − α_j|     (differential entropy)
//! epower   = exp(2·entropy)                           (entropy power)
//! ```
//!
//! all in natural logarithms. The three quantities play exactly the roles
//! their continuous namesakes play for probability densities: the heat-type
//! flow [`unit_variance_flow`](crate::conv::unit_variance_flow) raises
//! `entropy` at rate `fisher/2`, the unit-variance Hermite multiset has
//! `fisher = 1`, and `epower` satisfies a sum inequality under finite
//! additive convolution.
//!
//! Closed forms are provided for the Hermite family ([`hermite_entropy`])
//! and for the entropy defect of one monic-derivative step ([`c_constant`]);
//! [`entropy_from_integral`] recovers the entropy from Fisher information
//! along the flow, an independent route used to cross-check the direct
//! pairwise formula.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::conv::unit_variance_flow;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{real_roots, RootVector};

/// The score field: `score_i = Σ_{j≠i} 1/(α_i − α_j)`, in the same
/// (descending) order as the input roots.
///
/// The entries always sum to zero, and `Σ_i α_i·score_i = n(n−1)/2` exactly.
///
/// # Errors
///
/// [`Error::RepeatedRoot`] if two roots coincide exactly.
///
/// # Examples
///
/// ```
/// use fflab_core::info::score;
/// use fflab_core::roots::RootVector;
///
/// let s = score(&RootVector::new(vec![1.0, 0.0, -1.0])).unwrap();
/// assert_eq!(s, vec![1.5, 0.0, -1.5]);
/// ```
pub fn score(roots: &RootVector) -> Result<Vec<f64>> {
    let r = roots.as_slice();
    let n = r.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut sum = 0.0f64;
        for j in 0..n {
            if i == j {
                continue;
            }
            let gap = r[i] - r[j];
            if gap == 0.0 {
                return Err(Error::RepeatedRoot);
            }
            sum += 1.0 / gap;
        }
        out.push(sum);
    }
    Ok(out)
}

/// Fisher information `(1/n)·Σ_i (2/(n−1)·score_i)²`.
///
/// Normalized so that the unit-variance Hermite multiset has value exactly 1
/// for every `n`; scaling all roots by `c` divides the value by `c²`.
///
/// # Errors
///
/// [`Error::RepeatedRoot`] if two roots coincide exactly.
///
/// # Panics
///
/// Panics if there are fewer than two roots.
pub fn fisher(roots: &RootVector) -> Result<f64> {
    let n = roots.len();
    assert!(n >= 2, "fisher information requires at least two roots");
    let s = score(roots)?;
    let c = 2.0 / (n - 1) as f64;
    Ok(s.iter().map(|&v| (c * v) * (c * v)).sum::<f64>() / n as f64)
}

/// Differential entropy `(2/(n(n−1)))·Σ_{i<j} ln|α_i − α_j|` (natural log).
///
/// Scaling all roots by `c` adds `ln|c|`.
///
/// # Errors
///
/// [`Error::RepeatedRoot`] if two roots coincide exactly.
///
/// # Panics
///
/// Panics if there are fewer than two roots.
///
/// # Examples
///
/// ```
/// use fflab_core::info::entropy;
/// use fflab_core::roots::RootVector;
///
/// let chi = entropy(&RootVector::new(vec![1.0, -1.0])).unwrap();
/// assert_eq!(chi, 2.0_f64.ln());
/// ```
pub fn entropy(roots: &RootVector) -> Result<f64> {
    let n = roots.len();
    assert!(n >= 2, "entropy requires at least two roots");
    Ok(2.0 * sum_log_gaps(roots)? / (n * (n - 1)) as f64)
}

/// Entropy power `exp(2·entropy)`.
///
/// Equal to `discriminant^(1/binomial(n,2))`, the geometric mean of the
/// squared root gaps; scaling all roots by `c` multiplies it by `c²`.
///
/// # Errors
///
/// [`Error::RepeatedRoot`] if two roots coincide exactly.
pub fn entropy_power(roots: &RootVector) -> Result<f64> {
    Ok((2.0 * entropy(roots)?).exp())
}

/// Natural log of the discriminant, `Σ_{i<j} ln (α_i − α_j)²`.
///
/// Related to [`entropy`] by `log_discriminant = n(n−1)·entropy`; kept as a
/// separate accumulation so entropy-power identities can be checked through
/// two genuinely different routes.
///
/// # Errors
///
/// [`Error::RepeatedRoot`] if two roots coincide exactly.
///
/// # Panics
///
/// Panics if there are fewer than two roots.
pub fn log_discriminant(roots: &RootVector) -> Result<f64> {
    assert!(
        roots.len() >= 2,
        "log-discriminant requires at least two roots"
    );
    Ok(2.0 * sum_log_gaps(roots)?)
}

fn sum_log_gaps(roots: &RootVector) -> Result<f64> {
    let r = roots.as_slice();
    let mut sum = 0.0f64;
    for i in 0..r.len() {
        for j in (i + 1)..r.len() {
            let gap = r[i] - r[j];
            if gap == 0.0 {
                return Err(Error::RepeatedRoot);
            }
            sum += gap.abs().ln();
        }
    }
    Ok(sum)
}

/// Entropy of the unit-variance Hermite multiset, in closed form:
///
/// ```text
/// χ(n) = −(1/2)·ln(n−1) + (1/(n(n−1)))·Σ_{k=1}^{n} k·ln k
/// ```
///
/// Agrees with [`entropy`] evaluated on the roots of the unit-variance
/// Hermite polynomial; `χ(2) = ln 2` exactly.
///
/// # Panics
///
/// Panics if `n < 2`.
pub fn hermite_entropy(n: usize) -> f64 {
    assert!(n >= 2, "hermite entropy requires degree >= 2");
    let mut s = 0.0f64;
    for k in 2..=n {
        s += k as f64 * (k as f64).ln();
    }
    -0.5 * ((n - 1) as f64).ln() + s / (n * (n - 1)) as f64
}

/// The entropy defect of one monic-derivative step, in closed form:
///
/// ```text
/// C(n) = (1/2)·ln((n−2)/(n−1)) + ln(n)/(n−1)
///        − (2/(n(n−1)(n−2)))·Σ_{k=1}^{n−1} k·ln k
/// ```
///
/// Algebraically identical to `hermite_entropy(n) − hermite_entropy(n−1)`
/// (the difference route is kept as a cross-check in tests, not reused
/// here). Negative for every `n ≥ 3`; `C(3) = −0.2593655…`.
///
/// # Panics
///
/// Panics if `n < 3`.
pub fn c_constant(n: usize) -> f64 {
    assert!(n >= 3, "the derivative-step constant requires degree >= 3");
    let nf = n as f64;
    let mut s = 0.0f64;
    for k in 2..n {
        s += k as f64 * (k as f64).ln();
    }
    0.5 * ((nf - 2.0) / (nf - 1.0)).ln() + nf.ln() / (nf - 1.0)
        - 2.0 * s / (nf * (nf - 1.0) * (nf - 2.0))
}

/// Default flow-truncation time for [`entropy_from_integral`].
pub const DEFAULT_INTEGRAL_T_MAX: f64 = 200.0;

/// Default integrand-evaluation budget for [`entropy_from_integral`].
pub const DEFAULT_INTEGRAL_BUDGET: usize = 2000;

/// Entropy recovered from Fisher information along the unit-variance flow:
///
/// ```text
/// entropy(p) = hermite_entropy(n) + (1/2)·∫_0^∞ ( 1/(1+t) − fisher(p_t) ) dt,
/// p_t = p ⊞ √t_* Ȟ_n.
/// ```
///
/// The integral is evaluated by adaptive Simpson quadrature in the variable
/// `u = ln(1+t)` (integrand `1 − (1+t)·fisher(p_t)`, which decays like
/// `1/t`), truncated at `t_max`; the remainder is closed with the
/// Hermite-matched tail `(1/2)·ln((v+t_max)/(1+t_max))`, `v = Var(p)`, whose
/// error decays like `1/t_max²`. `budget` caps the number of integrand
/// evaluations (each one costs a convolution plus a root extraction).
///
/// This is an independent route to [`entropy`] — direct pairwise sums never
/// enter — so agreement between the two is a real consistency check of
/// flow, root extraction, and Fisher information together.
///
/// # Errors
///
/// Propagates [`Error::RepeatedRoot`] (repeated roots at `t = 0`) and any
/// root-extraction failure along the flow.
///
/// # Panics
///
/// Panics if `p.degree() < 2`, or if `t_max` or `budget` are not positive.
pub fn entropy_from_integral(p: &Polynomial, t_max: f64, budget: usize) -> Result<f64> {
    let n = p.degree();
    assert!(n >= 2, "entropy requires degree >= 2");
    assert!(t_max > 0.0, "integral truncation time must be positive");
    assert!(budget > 0, "evaluation budget must be positive");

    let mut evals = budget;
    let mut g = |u: f64| -> Result<f64> {
        let t = u.exp() - 1.0;
        let flowed = unit_variance_flow(p, t)?;
        let phi = fisher(&real_roots(&flowed)?)?;
        Ok(1.0 - (1.0 + t) * phi)
    };

    let upper = (1.0 + t_max).ln();
    let ga = g(0.0)?;
    let gm = g(0.5 * upper)?;
    let gb = g(upper)?;
    let whole = simpson(0.0, upper, ga, gm, gb);
    // Absolute target well below the 1e-3 consistency gate; the tail term
    // dominates the overall error anyway.
    let integral = adaptive_simpson(
        &mut g, 0.0, upper, ga, gm, gb, whole, 1e-9, 28, &mut evals,
    )?;

    let v = p.moments().variance;
    let tail = 0.5 * ((v + t_max) / (1.0 + t_max)).ln();
    Ok(hermite_entropy(n) + 0.5 * integral + tail)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Classic recursive adaptive Simpson with a shared evaluation budget; when
/// the budget or depth runs out the current Richardson-extrapolated estimate
/// is accepted.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: FnMut(f64) -> Result<f64>>(
    g: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    if *evals < 2 || depth == 0 {
        return Ok(whole);
    }
    *evals -= 2;
    let flm = g(0.5 * (a + m))?;
    let frm = g(0.5 * (m + b))?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let l = adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals)?;
    let r = adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::hermite_normalized;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn score_frozen_and_identities() {
        let r = RootVector::new(vec![2.0, 0.5, -1.0, -3.0]);
        let s = score(&r).unwrap();
        // Identities: Σ score = 0 and Σ α·score = n(n−1)/2.
        let sum: f64 = s.iter().sum();
        assert!(sum.abs() < 1e-12);
        let weighted: f64 = r.iter().zip(&s).map(|(a, v)| a * v).sum();
        assert!(close(weighted, 6.0, 1e-12));
    }

    #[test]
    fn repeated_roots_are_rejected() {
        let r = RootVector::new(vec![1.0, 1.0, 0.0]);
        assert!(matches!(score(&r), Err(Error::RepeatedRoot)));
        assert!(matches!(entropy(&r), Err(Error::RepeatedRoot)));
        assert!(matches!(fisher(&r), Err(Error::RepeatedRoot)));
    }

    #[test]
    fn fisher_is_one_on_unit_variance_hermite() {
        for n in 2..=25 {
            let r = real_roots(&hermite_normalized(n)).unwrap();
            let phi = fisher(&r).unwrap();
            assert!(close(phi, 1.0, 1e-10), "n={n}: {phi}");
        }
    }

    #[test]
    fn fisher_scales_inverse_quadratically() {
        let r = RootVector::new(vec![1.7, 0.3, -0.9, -2.2]);
        let phi = fisher(&r).unwrap();
        let phi3 = fisher(&r.scale(3.0)).unwrap();
        assert!(close(phi3, phi / 9.0, 1e-12));
    }

    #[test]
    fn entropy_frozen_values_and_scaling() {
        // {a, 0, −a}: gaps a, a, 2a → χ = (1/3)(2·ln a + ln 2a)
        let a = 1.75f64;
        let chi = entropy(&RootVector::new(vec![a, 0.0, -a])).unwrap();
        assert!(close(chi, (2.0 * a.ln() + (2.0 * a).ln()) / 3.0, 1e-14));

        let r = RootVector::new(vec![0.5, -0.25, 2.0]);
        let base = entropy(&r).unwrap();
        let scaled = entropy(&r.scale(-4.0)).unwrap();
        assert!(close(scaled, base + 4.0f64.ln(), 1e-13));
    }

    #[test]
    fn entropy_power_equals_discriminant_root() {
        // Two routes: exp(2χ) and exp(log_discriminant / C(n,2)).
        let r = RootVector::new(vec![1.9, 0.4, -0.6, -1.3]);
        let n = r.len() as f64;
        let via_entropy = entropy_power(&r).unwrap();
        let via_disc = (log_discriminant(&r).unwrap() / (n * (n - 1.0) / 2.0)).exp();
        assert!(close(via_entropy, via_disc, 1e-13));

        // {1, −1}: discriminant 4, entropy power 4^(1/1) = 4.
        let pair = RootVector::new(vec![1.0, -1.0]);
        assert!(close(entropy_power(&pair).unwrap(), 4.0, 1e-14));
    }

    #[test]
    fn entropy_power_scaling() {
        let r = RootVector::new(vec![2.0, 1.0, -0.5]);
        let base = entropy_power(&r).unwrap();
        let scaled = entropy_power(&r.scale(2.0)).unwrap();
        assert!(close(scaled, 4.0 * base, 1e-13));
    }

    #[test]
    fn hermite_entropy_closed_form_matches_roots() {
        assert!(close(hermite_entropy(2), 2.0f64.ln(), 1e-15));
        for n in 2..=16 {
            let direct = entropy(&real_roots(&hermite_normalized(n)).unwrap()).unwrap();
            let closed = hermite_entropy(n);
            assert!(close(direct, closed, 1e-10), "n={n}: {direct} vs {closed}");
        }
    }

    #[test]
    fn c_constant_frozen_value_and_difference_route() {
        assert!((c_constant(3) - (-0.25936551)).abs() < 1e-6);
        for n in 3..=60 {
            let closed = c_constant(n);
            let diff = hermite_entropy(n) - hermite_entropy(n - 1);
            assert!(
                (closed - diff).abs() <= 1e-12,
                "n={n}: {closed} vs {diff}"
            );
            assert!(closed < 0.0, "negativity at n={n}");
        }
    }

    #[test]
    fn derivative_step_entropy_defect_is_exactly_c_on_hermite() {
        // Ȟ_n′/n rescaled to unit variance is Ȟ_{n−1}; the entropy defect
        // χ_n − χ_{n−1} must equal the closed-form constant (which is
        // negative: the derivative step spreads the gap geometry).
        for n in 3..=10 {
            let outer = real_roots(&hermite_normalized(n)).unwrap();
            let inner = real_roots(&hermite_normalized(n).derivative_monic()).unwrap();
            let rescaled =
                inner.scale((((n - 1) as f64) / ((n - 2) as f64)).sqrt());
            let defect = entropy(&outer).unwrap() - entropy(&rescaled).unwrap();
            assert!(close(defect, c_constant(n), 1e-9), "n={n}");
        }
    }

    #[test]
    fn integral_route_recovers_entropy() {
        // Unit-variance Hermite: integrand is identically zero, so the
        // result is the closed form (tail is exactly zero too since v = 1).
        let h = hermite_normalized(6);
        let via_integral = entropy_from_integral(&h, 50.0, 400).unwrap();
        assert!(close(via_integral, hermite_entropy(6), 1e-9));

        // A non-Hermite multiset: agreement at the consistency gate.
        let p = Polynomial::from_roots(&RootVector::new(vec![1.6, 0.4, -0.7, -1.3]));
        let direct = entropy(&real_roots(&p).unwrap()).unwrap();
        let via_integral =
            entropy_from_integral(&p, DEFAULT_INTEGRAL_T_MAX, DEFAULT_INTEGRAL_BUDGET)
                .unwrap();
        assert!(
            (direct - via_integral).abs() < 1e-3,
            "{direct} vs {via_integral}"
        );
    }

    #[test]
    fn scaled_hermite_entropy_via_flow_consistency() {
        // After flowing Ȟ_n for time t the entropy is χ(n) + ln√(1+t).
        let n = 5;
        let t = 2.5;
        let flowed = unit_variance_flow(&hermite_normalized(n), t).unwrap();
        let chi = entropy(&real_roots(&flowed).unwrap()).unwrap();
        assert!(close(
            chi,
            hermite_entropy(n) + 0.5 * (1.0 + t).ln(),
            1e-10
        ));
    }
}
