//! Monic real polynomials in signed-Vieta coefficient form.
//!
//! A degree-`n` monic polynomial is stored as the vector `(a_0, …, a_n)` of
//! its *signed* coefficients, meaning
//!
//! ```text
//! p(x) = Σ_{k=0}^{n} (-1)^k · a_k · x^{n-k},        a_0 = 1.
//! ```
//!
//! With this sign convention `a_k` equals the k-th elementary symmetric
//! function `e_k` of the roots, so Vieta bookkeeping has no sign juggling:
//! the first two moments of the root multiset are read off as
//! `m1 = a_1/n` and `m2 = (a_1² − 2·a_2)/n`.
//!
//! The *plain* descending coefficient sequence `c_k = (-1)^k · a_k` (the one
//! you would print, feed to Horner, or serialize as JSON) is available at the
//! boundary via [`Polynomial::plain_coeffs`] / [`Polynomial::from_plain_coeffs`].
//! Everything else in the crate works in signed form.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::roots::RootVector;

/// First and second moments of a root multiset, read off the coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// Mean of the roots, `m1 = (1/n) Σ α_i`.
    pub mean: f64,
    /// Second raw moment, `m2 = (1/n) Σ α_i²`.
    pub second: f64,
    /// Variance, `m2 − m1²`. Non-negative whenever the roots are real.
    pub variance: f64,
}

/// A monic polynomial with real coefficients, stored in signed-Vieta form.
///
/// See the [module docs](self) for the storage convention. The representation
/// invariant is `a_0 == 1` with every entry finite.
///
/// # Examples
///
/// ```
/// use fflab_core::poly::Polynomial;
/// use fflab_core::roots::RootVector;
///
/// // (x - 1)(x + 1) = x² - 1
/// let p = Polynomial::from_roots(&RootVector::new(vec![1.0, -1.0]));
/// assert_eq!(p.plain_coeffs(), vec![1.0, 0.0, -1.0]);
/// assert_eq!(p.eval(2.0), 3.0);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    /// Signed coefficients `(a_0, …, a_n)`; `a_0 == 1`, all finite.
    signed: Vec<f64>,
}

impl Polynomial {
    /// The monomial `x^n`. This is the identity of the additive convolution
    /// and the image of every polynomial under rescaling by zero.
    pub fn monomial(n: usize) -> Self {
        let mut signed = vec![0.0; n + 1];
        signed[0] = 1.0;
        Polynomial { signed }
    }

    /// Builds `∏_i (x − α_i)` by stable incremental multiplication of linear
    /// factors: adding a root `r` updates `e_k ← e_k + r·e_{k−1}` in place.
    pub fn from_roots(roots: &RootVector) -> Self {
        let n = roots.len();
        let mut signed = vec![0.0; n + 1];
        signed[0] = 1.0;
        for (i, &r) in roots.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                signed[k] += r * signed[k - 1];
            }
        }
        Polynomial { signed }
    }

    /// Constructs a polynomial directly from signed coefficients `(a_0, …, a_n)`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidCoefficients`] if the vector is empty, `a_0 != 1`, or
    /// any entry is non-finite.
    pub fn from_signed_coeffs(signed: Vec<f64>) -> Result<Self> {
        if signed.is_empty() {
            return Err(Error::InvalidCoefficients {
                reason: "coefficient vector is empty",
            });
        }
        if signed[0] != 1.0 {
            return Err(Error::InvalidCoefficients {
                reason: "signed coefficients must start with a_0 = 1",
            });
        }
        if signed.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCoefficients {
                reason: "non-finite coefficient",
            });
        }
        Ok(Polynomial { signed })
    }

    /// Internal constructor for coefficient vectors that already satisfy the
    /// invariant (built by arithmetic that preserves `a_0 = 1`).
    pub(crate) fn from_signed_unchecked(signed: Vec<f64>) -> Self {
        debug_assert!(!signed.is_empty() && signed[0] == 1.0);
        Polynomial { signed }
    }

    /// Parses plain descending coefficients `(c_0, …, c_n)` with
    /// `p(x) = Σ c_k x^{n−k}`, normalizing to monic by dividing through by the
    /// leading coefficient.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidCoefficients`] if the slice is empty, the leading
    /// coefficient is zero, or any entry is non-finite (including after the
    /// normalizing division).
    ///
    /// # Examples
    ///
    /// ```
    /// use fflab_core::poly::Polynomial;
    ///
    /// // 2x² - 2 normalizes to x² - 1
    /// let p = Polynomial::from_plain_coeffs(&[2.0, 0.0, -2.0]).unwrap();
    /// assert_eq!(p.plain_coeffs(), vec![1.0, 0.0, -1.0]);
    /// ```
    pub fn from_plain_coeffs(plain: &[f64]) -> Result<Self> {
        if plain.is_empty() {
            return Err(Error::InvalidCoefficients {
                reason: "coefficient vector is empty",
            });
        }
        let lead = plain[0];
        if lead == 0.0 {
            return Err(Error::InvalidCoefficients {
                reason: "leading coefficient is zero",
            });
        }
        if !lead.is_finite() {
            return Err(Error::InvalidCoefficients {
                reason: "non-finite leading coefficient",
            });
        }
        let mut signed = Vec::with_capacity(plain.len());
        let mut sign = 1.0;
        for &c in plain {
            let a = sign * c / lead;
            if !a.is_finite() {
                return Err(Error::InvalidCoefficients {
                    reason: "non-finite coefficient",
                });
            }
            signed.push(a);
            sign = -sign;
        }
        signed[0] = 1.0;
        Ok(Polynomial { signed })
    }

    /// Degree `n` of the polynomial.
    pub fn degree(&self) -> usize {
        self.signed.len() - 1
    }

    /// The signed coefficient `a_k` (equal to the elementary symmetric
    /// function `e_k` of the roots).
    ///
    /// # Panics
    ///
    /// Panics if `k > degree()`.
    pub fn signed_coeff(&self, k: usize) -> f64 {
        self.signed[k]
    }

    /// All signed coefficients `(a_0, …, a_n)`.
    pub fn signed_coeffs(&self) -> &[f64] {
        &self.signed
    }

    /// Plain descending coefficients `(c_0, …, c_n)` with `c_k = (-1)^k a_k`,
    /// the serialization form.
    pub fn plain_coeffs(&self) -> Vec<f64> {
        let mut plain = Vec::with_capacity(self.signed.len());
        let mut sign = 1.0;
        for &a in &self.signed {
            plain.push(sign * a);
            sign = -sign;
        }
        plain
    }

    /// Evaluates `p(x)` by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for &a in &self.signed {
            acc = acc * x + sign * a;
            sign = -sign;
        }
        acc
    }

    /// Evaluates `(p(x), p′(x))` in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        let mut sign = 1.0;
        for &a in &self.signed {
            dp = dp * x + p;
            p = p * x + sign * a;
            sign = -sign;
        }
        (p, dp)
    }

    /// The monic normalization `p′/n` of the derivative.
    ///
    /// In signed form this is the coefficient rescaling
    /// `b_k = ((n−k)/n) · a_k` for `k = 0, …, n−1`, so the mean of the roots
    /// is preserved and the variance contracts by `(n−2)/(n−1)`.
    ///
    /// # Panics
    ///
    /// Panics on degree-zero input.
    ///
    /// # Examples
    ///
    /// ```
    /// use fflab_core::poly::Polynomial;
    ///
    /// // (x³ - 3x)′/3 = x² - 1
    /// let p = Polynomial::from_plain_coeffs(&[1.0, 0.0, -3.0, 0.0]).unwrap();
    /// assert_eq!(p.derivative_monic().plain_coeffs(), vec![1.0, 0.0, -1.0]);
    /// ```
    pub fn derivative_monic(&self) -> Self {
        let n = self.degree();
        assert!(n >= 1, "derivative of a degree-zero polynomial");
        let nf = n as f64;
        let signed = self
            .signed
            .iter()
            .take(n)
            .enumerate()
            .map(|(k, &a)| ((n - k) as f64 / nf) * a)
            .collect();
        Polynomial::from_signed_unchecked(signed)
    }

    /// The rescaling `(c_* p)(x) = cⁿ · p(x/c)`, which multiplies every root
    /// by `c`. In signed form `a_k ← c^k · a_k`. By convention `0_* p = xⁿ`.
    ///
    /// # Examples
    ///
    /// ```
    /// use fflab_core::poly::Polynomial;
    ///
    /// let p = Polynomial::from_plain_coeffs(&[1.0, 0.0, -1.0]).unwrap(); // x² - 1
    /// assert_eq!(p.scale(2.0).plain_coeffs(), vec![1.0, 0.0, -4.0]);     // x² - 4
    /// assert_eq!(p.scale(0.0).plain_coeffs(), vec![1.0, 0.0, 0.0]);      // x²
    /// ```
    pub fn scale(&self, c: f64) -> Self {
        let mut signed = self.signed.clone();
        let mut factor = 1.0;
        for a in signed.iter_mut() {
            *a *= factor;
            factor *= c;
        }
        Polynomial::from_signed_unchecked(signed)
    }

    /// Translates every root by `t`; as a function, `q(x) = p(x − t)`.
    ///
    /// Computed by the in-place Ruffini–Horner Taylor shift on the plain
    /// coefficients, which is backward-stable at the degrees used here.
    ///
    /// # Examples
    ///
    /// ```
    /// use fflab_core::poly::Polynomial;
    ///
    /// let p = Polynomial::from_plain_coeffs(&[1.0, 0.0, -1.0]).unwrap(); // roots ±1
    /// assert_eq!(p.shift(1.0).plain_coeffs(), vec![1.0, -2.0, 0.0]);     // roots 2, 0
    /// ```
    pub fn shift(&self, t: f64) -> Self {
        let n = self.degree();
        let mut plain = self.plain_coeffs();
        // Coefficients of p(x + s) with s = −t: repeated synthetic division.
        let s = -t;
        for k in 0..n {
            for j in 1..=(n - k) {
                plain[j] += s * plain[j - 1];
            }
        }
        let mut signed = plain;
        let mut sign = 1.0;
        for a in signed.iter_mut() {
            *a *= sign;
            sign = -sign;
        }
        Polynomial::from_signed_unchecked(signed)
    }

    /// Mean, second moment, and variance of the root multiset, read off the
    /// first two signed coefficients (no root extraction).
    ///
    /// # Panics
    ///
    /// Panics on degree-zero input.
    pub fn moments(&self) -> Moments {
        let n = self.degree();
        assert!(n >= 1, "moments of a degree-zero polynomial");
        let nf = n as f64;
        let a1 = self.signed[1];
        let a2 = if n >= 2 { self.signed[2] } else { 0.0 };
        let mean = a1 / nf;
        let second = (a1 * a1 - 2.0 * a2) / nf;
        Moments {
            mean,
            second,
            variance: second - mean * mean,
        }
    }
}

/// The monic Hermite polynomial `H_n`, defined by the three-term recurrence
/// `H_{k+1} = x·H_k − k·H_{k−1}` with `H_0 = 1`, `H_1 = x`.
///
/// `H_n` is the degree-`n` heat flow image of `xⁿ` at unit time; its root
/// multiset has mean 0 and variance `n − 1`.
///
/// # Examples
///
/// ```
/// use fflab_core::poly::hermite;
///
/// assert_eq!(hermite(2).plain_coeffs(), vec![1.0, 0.0, -1.0]);       // x² - 1
/// assert_eq!(hermite(3).plain_coeffs(), vec![1.0, 0.0, -3.0, 0.0]);  // x³ - 3x
/// assert_eq!(hermite(3).moments().variance, 2.0);
/// ```
pub fn hermite(n: usize) -> Polynomial {
    // Work in plain descending coefficients; both H_k and the recurrence are
    // sign-stable there.
    let mut prev: Vec<f64> = vec![1.0]; // H_0
    if n == 0 {
        return Polynomial::monomial(0);
    }
    let mut cur: Vec<f64> = vec![1.0, 0.0]; // H_1 = x
    for k in 1..n {
        // next = x·cur − k·prev
        let mut next = vec![0.0; k + 2];
        next[..=k].copy_from_slice(&cur);
        for (j, &c) in prev.iter().enumerate() {
            next[j + 2] -= k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    let mut signed = cur;
    let mut sign = 1.0;
    for a in signed.iter_mut() {
        *a *= sign;
        sign = -sign;
    }
    Polynomial::from_signed_unchecked(signed)
}

/// The variance-normalized Hermite polynomial `Ȟ_n = (n−1)^{−1/2}_* H_n`,
/// whose root multiset has mean 0 and variance 1.
///
/// # Panics
///
/// Panics if `n < 2` (no degree-1 polynomial has positive variance to
/// normalize).
///
/// # Examples
///
/// ```
/// use fflab_core::poly::hermite_normalized;
///
/// // Ȟ_3 = x³ − (3/2)x
/// let h = hermite_normalized(3);
/// assert!((h.plain_coeffs()[2] - (-1.5)).abs() < 1e-15);
/// assert!((h.moments().variance - 1.0).abs() < 1e-15);
/// ```
pub fn hermite_normalized(n: usize) -> Polynomial {
    assert!(n >= 2, "variance normalization requires degree >= 2");
    hermite(n).scale(1.0 / ((n - 1) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn from_roots_matches_hand_expansion() {
        // (x − √3)(x − 0)(x + √3) = x³ − 3x
        let r = RootVector::new(vec![3.0f64.sqrt(), 0.0, -(3.0f64.sqrt())]);
        let p = Polynomial::from_roots(&r);
        let plain = p.plain_coeffs();
        assert!(close(plain[0], 1.0, 1e-15));
        assert!(plain[1].abs() < 1e-15);
        assert!(close(plain[2], -3.0, 1e-15));
        assert!(plain[3].abs() < 1e-15);
    }

    #[test]
    fn eval_and_derivative_agree_with_horner_by_hand() {
        // p = x³ − 3x, p(2) = 2, p′(2) = 3·4 − 3 = 9
        let p = Polynomial::from_plain_coeffs(&[1.0, 0.0, -3.0, 0.0]).unwrap();
        assert_eq!(p.eval(2.0), 2.0);
        let (v, dv) = p.eval_with_derivative(2.0);
        assert_eq!(v, 2.0);
        assert_eq!(dv, 9.0);
    }

    #[test]
    fn plain_roundtrip_normalizes_to_monic() {
        let p = Polynomial::from_plain_coeffs(&[-2.0, 4.0, 6.0]).unwrap();
        assert_eq!(p.plain_coeffs(), vec![1.0, -2.0, -3.0]);
        assert!(Polynomial::from_plain_coeffs(&[0.0, 1.0]).is_err());
        assert!(Polynomial::from_plain_coeffs(&[]).is_err());
        assert!(Polynomial::from_plain_coeffs(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn derivative_rescales_signed_coefficients() {
        // p = (x−1)(x−2)(x−3) = x³ − 6x² + 11x − 6; p′/3 = x² − 4x + 11/3
        let p = Polynomial::from_roots(&RootVector::new(vec![1.0, 2.0, 3.0]));
        let d = p.derivative_monic();
        let plain = d.plain_coeffs();
        assert!(close(plain[0], 1.0, 1e-15));
        assert!(close(plain[1], -4.0, 1e-15));
        assert!(close(plain[2], 11.0 / 3.0, 1e-15));
    }

    #[test]
    fn derivative_preserves_mean_and_contracts_variance() {
        let p = Polynomial::from_roots(&RootVector::new(vec![0.3, -1.4, 2.2, 5.0, -0.6]));
        let n = p.degree() as f64;
        let m = p.moments();
        let md = p.derivative_monic().moments();
        assert!(close(md.mean, m.mean, 1e-14));
        assert!(close(md.variance, (n - 2.0) / (n - 1.0) * m.variance, 1e-13));
    }

    #[test]
    fn scale_zero_gives_pure_power() {
        let p = Polynomial::from_roots(&RootVector::new(vec![1.0, 2.0, -0.5]));
        assert_eq!(p.scale(0.0), Polynomial::monomial(3));
    }

    #[test]
    fn scale_multiplies_variance_by_c_squared() {
        let p = Polynomial::from_roots(&RootVector::new(vec![1.0, 2.0, -0.5, 0.1]));
        let v = p.moments().variance;
        let v3 = p.scale(-3.0).moments().variance;
        assert!(close(v3, 9.0 * v, 1e-13));
    }

    #[test]
    fn shift_translates_roots() {
        let p = Polynomial::from_roots(&RootVector::new(vec![1.0, -2.0, 0.25]));
        let q = p.shift(1.5);
        let expect = Polynomial::from_roots(&RootVector::new(vec![2.5, -0.5, 1.75]));
        for (a, b) in q.signed_coeffs().iter().zip(expect.signed_coeffs()) {
            assert!(close(*a, *b, 1e-13));
        }
    }

    #[test]
    fn hermite_small_cases_and_appell_property() {
        assert_eq!(hermite(0).plain_coeffs(), vec![1.0]);
        assert_eq!(hermite(1).plain_coeffs(), vec![1.0, 0.0]);
        assert_eq!(hermite(4).plain_coeffs(), vec![1.0, 0.0, -6.0, 0.0, 3.0]);
        // H_n′/n = H_{n−1} for a range of degrees.
        for n in 2..=12 {
            let h = hermite(n);
            let lower = hermite(n - 1);
            for (a, b) in h
                .derivative_monic()
                .signed_coeffs()
                .iter()
                .zip(lower.signed_coeffs())
            {
                assert!(close(*a, *b, 1e-12), "Appell identity failed at n={n}");
            }
        }
    }

    #[test]
    fn hermite_variance_is_n_minus_one() {
        for n in 2..=32 {
            let v = hermite(n).moments().variance;
            assert!(close(v, (n - 1) as f64, 1e-12), "variance at n={n}");
        }
    }

    #[test]
    fn moments_on_degree_one() {
        let p = Polynomial::from_roots(&RootVector::new(vec![4.0]));
        let m = p.moments();
        assert_eq!(m.mean, 4.0);
        assert_eq!(m.second, 16.0);
        assert_eq!(m.variance, 0.0);
    }
}
