//! Finite additive convolution of monic real-rooted polynomials, its exact
//! permutation-average oracle, and the induced heat flow.
//!
//! For two degree-`n` monic polynomials the additive convolution is defined
//! by averaging root sums over the symmetric group:
//!
//! ```text
//! (p ⊞ q)(x) = (1/n!) Σ_{π ∈ S_n} ∏_i (x − α_i − β_{π(i)})
//! ```
//!
//! Expanding the average gives a bilinear rule on signed coefficients,
//!
//! ```text
//! c_k = Σ_{i+j=k} w(n,i,j) · a_i · b_j,
//! w(n,i,j) = (n−i)!·(n−j)! / (n!·(n−i−j)!),
//! ```
//!
//! which [`convolve`] implements with the weights accumulated
//! multiplicatively (`w(n,0,k) = 1`, each step `(i,j) → (i+1,j−1)` multiplies
//! by `(n−j+1)/(n−i)`), avoiding factorial overflow.
//!
//! Because the weight rule is easy to get subtly wrong, the module also
//! carries [`convolve_oracle`]: a direct evaluation of the permutation
//! average in exact integer arithmetic, feasible for `n ≤`
//! [`ORACLE_MAX_DEGREE`]. The two routes are compared in tests and must never
//! be collapsed into one implementation.
//!
//! The heat flow `p ↦ e^{−(t/2)·d²/dx²} p` also comes in two deliberately
//! independent routes:
//!
//! * [`heat_flow`]: convolution with the rescaled Hermite polynomial
//!   `√t_* H_n` (defined for `t ≥ 0`);
//! * [`heat_flow_operator`]: the terminating series
//!   `Σ_k (−t/2)^k/k! · p^{(2k)}`, entire in `t` (negative `t` runs the flow
//!   backwards, which is useful for difference quotients).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{hermite, Polynomial};

/// Largest degree accepted by [`convolve_oracle`]: `8! = 40320` permutations
/// is still fast in exact arithmetic, `9!` is not worth the wait.
pub const ORACLE_MAX_DEGREE: usize = 8;

/// Finite additive convolution `p ⊞ q` via the coefficient weight rule.
///
/// The monomial `xⁿ` is the identity, and `(x − c)ⁿ` translates every root
/// by `c`. Means and variances of the root multisets are additive under ⊞.
///
/// # Errors
///
/// [`Error::DegreeMismatch`] if the degrees differ.
///
/// # Examples
///
/// ```
/// use fflab_core::conv::convolve;
/// use fflab_core::poly::Polynomial;
///
/// let p = Polynomial::from_plain_coeffs(&[1.0, 0.0, -1.0]).unwrap(); // x² - 1
/// let c = convolve(&p, &p).unwrap();
/// assert_eq!(c.plain_coeffs(), vec![1.0, 0.0, -2.0]);                // x² - 2
/// ```
pub fn convolve(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    let n = p.degree();
    if q.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: q.degree(),
        });
    }
    let a = p.signed_coeffs();
    let b = q.signed_coeffs();
    let mut c = vec![0.0f64; n + 1];
    c[0] = 1.0;
    for k in 1..=n {
        let mut w = 1.0f64; // w(n, 0, k)
        let mut sum = 0.0f64;
        for i in 0..=k {
            let j = k - i;
            sum += w * a[i] * b[j];
            if i < k {
                // w(n, i+1, j−1) / w(n, i, j)
                w *= (n - j + 1) as f64 / (n - i) as f64;
            }
        }
        c[k] = sum;
    }
    Ok(Polynomial::from_signed_unchecked(c))
}

/// Exact permutation-average convolution over the rationals.
///
/// Takes the two root multisets as exact rationals and returns the signed
/// coefficients of `(1/n!) Σ_π ∏_i (x − α_i − β_{π(i)})`, exactly. All work
/// happens in integer arithmetic: roots are scaled by the common denominator
/// `D`, every permutation's product polynomial is accumulated in `BigInt`,
/// and the normalization `n!·D^k` is divided out once at the end.
///
/// This is the ground truth the weight rule in [`convolve`] is validated
/// against; it must stay an independent computation.
///
/// # Errors
///
/// - [`Error::DegreeMismatch`] if the multiset sizes differ;
/// - [`Error::OracleDegreeTooLarge`] if `n >` [`ORACLE_MAX_DEGREE`].
///
/// # Examples
///
/// ```
/// use fflab_core::conv::{convolve_oracle, rational};
///
/// // roots {1, −1} ⊞ {1, −1}: the permutation average of
/// // (x−2)(x+2) and x·x is x² − 2.
/// let r = [rational(1, 1), rational(-1, 1)];
/// let c = convolve_oracle(&r, &r).unwrap();
/// assert_eq!(c[1], rational(0, 1));
/// assert_eq!(c[2], rational(-2, 1));
/// ```
pub fn convolve_oracle(
    alpha: &[BigRational],
    beta: &[BigRational],
) -> Result<Vec<BigRational>> {
    let n = alpha.len();
    if beta.len() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: beta.len(),
        });
    }
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::OracleDegreeTooLarge {
            n,
            max: ORACLE_MAX_DEGREE,
        });
    }
    if n == 0 {
        return Ok(vec![BigRational::one()]);
    }

    // Common denominator D and integer-scaled roots A_i = D·α_i, B_j = D·β_j.
    let mut d = BigInt::one();
    for r in alpha.iter().chain(beta.iter()) {
        d = d.lcm(r.denom());
    }
    let scaled_int = |r: &BigRational| -> BigInt {
        let s = r * BigRational::from_integer(d.clone());
        debug_assert!(s.denom().is_one());
        s.to_integer()
    };
    let a_int: Vec<BigInt> = alpha.iter().map(scaled_int).collect();
    let b_int: Vec<BigInt> = beta.iter().map(scaled_int).collect();

    // Accumulate Σ_π e_k(A_i + B_{π(i)}) exactly.
    let mut acc = vec![BigInt::zero(); n + 1];
    for_each_permutation(n, |perm| {
        let mut e = vec![BigInt::zero(); n + 1];
        e[0] = BigInt::one();
        for (i, &pi) in perm.iter().enumerate() {
            let root = &a_int[i] + &b_int[pi];
            for k in (1..=i + 1).rev() {
                let add = &root * &e[k - 1];
                e[k] += add;
            }
        }
        for k in 0..=n {
            acc[k] += &e[k];
        }
    });

    // a_k = acc_k / (n! · D^k): the D^k undoes the root scaling, n! averages.
    let mut n_fact = BigInt::one();
    for k in 2..=n {
        n_fact *= BigInt::from(k);
    }
    let mut dk = BigInt::one();
    let mut out = Vec::with_capacity(n + 1);
    for item in acc.into_iter() {
        out.push(BigRational::new(item, &n_fact * &dk));
        dk *= &d;
    }
    Ok(out)
}

/// Convenience constructor for an exact rational `num/den`.
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "rational denominator must be non-zero");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Heat flow at time `t ≥ 0` via convolution with the rescaled Hermite
/// polynomial: `e^{−(t/2)∂²} p = p ⊞ √t_* H_n`.
///
/// At `t = 0` the Hermite factor collapses to the convolution identity `xⁿ`
/// and `p` is returned unchanged.
///
/// # Errors
///
/// [`Error::NegativeTime`] if `t < 0`; use [`heat_flow_operator`] to run the
/// flow backwards.
///
/// # Examples
///
/// ```
/// use fflab_core::conv::heat_flow;
/// use fflab_core::poly::Polynomial;
///
/// let p = Polynomial::monomial(2);
/// let q = heat_flow(&p, 1.0).unwrap();
/// assert_eq!(q.plain_coeffs(), vec![1.0, 0.0, -1.0]); // x² - 1 = H_2
/// ```
pub fn heat_flow(p: &Polynomial, t: f64) -> Result<Polynomial> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime { t });
    }
    let n = p.degree();
    convolve(p, &hermite(n).scale(t.sqrt()))
}

/// Heat flow via the terminating operator series
/// `Σ_{k=0}^{⌊n/2⌋} (−t/2)^k/k! · p^{(2k)}`.
///
/// Exactly equals [`heat_flow`] for `t ≥ 0` (the dual-route identity the
/// tests pin down), but is a polynomial in `t` and therefore also valid for
/// `t < 0`, where it inverts the flow.
///
/// # Examples
///
/// ```
/// use fflab_core::conv::heat_flow_operator;
/// use fflab_core::poly::hermite;
///
/// // Running H_2 backwards to t = −1 recovers x².
/// let p = heat_flow_operator(&hermite(2), -1.0);
/// assert_eq!(p.plain_coeffs(), vec![1.0, 0.0, 0.0]);
/// ```
pub fn heat_flow_operator(p: &Polynomial, t: f64) -> Polynomial {
    let n = p.degree();
    // Coefficients indexed by power of x.
    let plain = p.plain_coeffs();
    let mut by_power = vec![0.0f64; n + 1];
    for (k, &c) in plain.iter().enumerate() {
        by_power[n - k] = c;
    }
    let mut acc = by_power.clone();
    let mut deriv = by_power;
    let mut factor = 1.0f64;
    for k in 1..=n / 2 {
        // Two more differentiations of the running derivative.
        for _ in 0..2 {
            for m in 1..deriv.len() {
                deriv[m - 1] = m as f64 * deriv[m];
            }
            let last = deriv.len() - 1;
            deriv[last] = 0.0;
        }
        factor *= -t / 2.0 / k as f64;
        for (m, slot) in acc.iter_mut().enumerate() {
            *slot += factor * deriv[m];
        }
    }
    let mut plain_out = vec![0.0f64; n + 1];
    for (m, &c) in acc.iter().enumerate() {
        plain_out[n - m] = c;
    }
    Polynomial::from_plain_coeffs(&plain_out)
        .expect("operator series preserves the monic leading coefficient")
}

/// Heat-type flow normalized so that exactly `t` is added to the root
/// variance: `p ↦ p ⊞ √t_* Ȟ_n` with `Ȟ_n` the unit-variance Hermite
/// polynomial.
///
/// This is the time scale on which the information functionals interact
/// cleanly (`Var(p_t) = Var(p) + t`, and for the unit-variance Hermite
/// itself `Ȟ_n ↦ √(1+t)_* Ȟ_n`).
///
/// # Errors
///
/// [`Error::NegativeTime`] if `t < 0`.
///
/// # Panics
///
/// Panics if `p.degree() < 2` (no unit-variance Hermite exists below
/// degree 2).
pub fn unit_variance_flow(p: &Polynomial, t: f64) -> Result<Polynomial> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime { t });
    }
    let n = p.degree();
    convolve(p, &crate::poly::hermite_normalized(n).scale(t.sqrt()))
}

/// Iterative Heap's algorithm: calls `f` with every permutation of
/// `0..n` exactly once.
fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            f(&perm);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

/// Exact-rational evaluation of the weight rule, used in tests to compare
/// against the permutation oracle without any floating-point slack.
#[cfg(test)]
fn convolve_exact_rule(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len() - 1;
    assert_eq!(b.len(), n + 1);
    let mut c = vec![BigRational::zero(); n + 1];
    c[0] = BigRational::one();
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    for k in 1..=n {
        let mut w = BigRational::one();
        let mut sum = BigRational::zero();
        for i in 0..=k {
            let j = k - i;
            sum += &w * &a[i] * &b[j];
            if i < k {
                w *= big(n - j + 1) / big(n - i);
            }
        }
        c[k] = sum;
    }
    c
}
