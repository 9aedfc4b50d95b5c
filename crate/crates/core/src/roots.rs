//! Real root multisets and polynomial root extraction.
//!
//! [`RootVector`] is the canonical representation of a real root multiset:
//! always sorted in descending order (`α_1 ≥ α_2 ≥ … ≥ α_n`), always finite.
//! [`real_roots`] recovers the multiset from a [`Polynomial`] by a conditioned
//! companion-matrix eigenvalue computation:
//!
//! 1. exact deflation of trailing-zero coefficients (roots at 0),
//! 2. a point-mass shortcut for numerically repeated-root inputs such as
//!    `(x − c)ⁿ`, where eigenvalue methods scatter the cluster on a circle of
//!    radius `ε^{1/n}`,
//! 3. centering by the coefficient mean,
//! 4. Francis double-shift QR on the Parlett–Reinsch-balanced companion
//!    matrix,
//! 5. complex Newton polish against the *original* coefficients, and
//! 6. discarding imaginary parts below [`IMAG_DISCARD`]; anything larger is a
//!    genuine complex pair and yields [`Error::NonRealRooted`].

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Relative imaginary-part threshold below which an eigenvalue is accepted as
/// a real root: keep `z = x + iy` when `|y| ≤ IMAG_DISCARD · (1 + |x|)`.
///
/// Polished eigenvalues of real-rooted inputs carry imaginary dust well below
/// 1e-12; genuinely complex pairs in this crate's workloads sit far above
/// 1e-6. The gap makes 1e-7 a safe separator.
pub const IMAG_DISCARD: f64 = 1e-7;

/// Default slack for interlacing checks, absorbing root-finder noise on
/// exactly-touching configurations.
pub const INTERLACING_SLACK: f64 = 1e-10;

/// QR iterations allowed per eigenvalue block before giving up.
const MAX_BLOCK_ITERS: usize = 30;

/// A non-empty multiset of real numbers kept sorted in descending order.
///
/// # Examples
///
/// ```
/// use fflab_core::roots::RootVector;
///
/// let r = RootVector::new(vec![-1.0, 2.0, 0.5]);
/// assert_eq!(r.as_slice(), &[2.0, 0.5, -1.0]);
/// assert_eq!(r.min_gap(), 1.5);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct RootVector {
    sorted: Vec<f64>,
}

impl RootVector {
    /// Sorts `values` descending and wraps them.
    ///
    /// # Panics
    ///
    /// Panics if `values` is empty or contains a non-finite entry.
    pub fn new(mut values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "root vector must be non-empty");
        assert!(
            values.iter().all(|v| v.is_finite()),
            "root vector entries must be finite"
        );
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        RootVector { sorted: values }
    }

    /// Number of roots (with multiplicity).
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    /// Always `false`; present for API completeness.
    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// The roots in descending order.
    pub fn as_slice(&self) -> &[f64] {
        &self.sorted
    }

    /// Consumes the vector, returning the descending-ordered entries.
    pub fn into_vec(self) -> Vec<f64> {
        self.sorted
    }

    /// Iterates over the roots in descending order.
    pub fn iter(&self) -> core::slice::Iter<'_, f64> {
        self.sorted.iter()
    }

    /// Arithmetic mean of the roots.
    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.sorted.len() as f64
    }

    /// Smallest adjacent gap `min_k (α_k − α_{k+1})`; zero iff a root repeats.
    ///
    /// # Panics
    ///
    /// Panics if there are fewer than two roots.
    pub fn min_gap(&self) -> f64 {
        assert!(self.sorted.len() >= 2, "min_gap requires at least two roots");
        self.sorted
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// The multiset translated so its mean is zero.
    pub fn centered(&self) -> Self {
        self.translate(-self.mean())
    }

    /// Every root translated by `t` (order is preserved).
    pub fn translate(&self, t: f64) -> Self {
        RootVector {
            sorted: self.sorted.iter().map(|&v| v + t).collect(),
        }
    }

    /// Every root multiplied by `c` (re-sorted, since negative `c` reverses
    /// the order).
    pub fn scale(&self, c: f64) -> Self {
        RootVector::new(self.sorted.iter().map(|&v| v * c).collect())
    }
}

impl core::ops::Index<usize> for RootVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.sorted[i]
    }
}

impl<'a> IntoIterator for &'a RootVector {
    type Item = &'a f64;
    type IntoIter = core::slice::Iter<'a, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.sorted.iter()
    }
}

/// Checks whether `inner` interlaces `outer` in the weak (≤, with slack)
/// sense: with both sorted descending and `outer` one root longer,
///
/// ```text
/// o_1 ≥ i_1 ≥ o_2 ≥ i_2 ≥ … ≥ i_{n−1} ≥ o_n      (each ≥ up to `slack`)
/// ```
///
/// # Errors
///
/// [`Error::InterlacingLength`] unless `outer.len() == inner.len() + 1`.
///
/// # Examples
///
/// ```
/// use fflab_core::roots::{is_interlacing, RootVector, INTERLACING_SLACK};
///
/// let outer = RootVector::new(vec![3.0, 1.0, -1.0]);
/// let inner = RootVector::new(vec![2.0, 0.0]);
/// assert!(is_interlacing(&outer, &inner, INTERLACING_SLACK).unwrap());
/// ```
pub fn is_interlacing(outer: &RootVector, inner: &RootVector, slack: f64) -> Result<bool> {
    if outer.len() != inner.len() + 1 {
        return Err(Error::InterlacingLength {
            outer: outer.len(),
            inner: inner.len(),
        });
    }
    for k in 0..inner.len() {
        if outer[k] < inner[k] - slack || inner[k] < outer[k + 1] - slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extracts the real roots of `p`, sorted descending.
///
/// See the [module docs](self) for the pipeline. The result has exactly
/// `p.degree()` entries (roots with multiplicity).
///
/// # Errors
///
/// - [`Error::NonRealRooted`] if some polished eigenvalue keeps an imaginary
///   part above `IMAG_DISCARD · (1 + |re|)`;
/// - [`Error::NoConvergence`] if the QR iteration stalls (not observed on
///   real-rooted inputs at the degrees this crate targets).
///
/// # Panics
///
/// Panics on degree-zero input.
///
/// # Examples
///
/// ```
/// use fflab_core::poly::hermite;
/// use fflab_core::roots::real_roots;
///
/// let r = real_roots(&hermite(3)).unwrap();
/// assert!((r[0] - 3.0_f64.sqrt()).abs() < 1e-12);
/// assert!(r[1].abs() < 1e-12);
/// assert!((r[2] + 3.0_f64.sqrt()).abs() < 1e-12);
/// ```
pub fn real_roots(p: &Polynomial) -> Result<RootVector> {
    let n = p.degree();
    assert!(n >= 1, "root extraction requires degree >= 1");

    // 1. Deflate exact trailing zeros: each contributes a root at 0.
    let plain = p.plain_coeffs();
    let mut m = n;
    while m >= 1 && plain[m] == 0.0 {
        m -= 1;
    }
    let zeros_at_origin = n - m;
    let mut roots: Vec<f64> = vec![0.0; zeros_at_origin];
    if m == 0 {
        return Ok(RootVector::new(roots));
    }
    let quotient = &plain[..=m];

    roots.extend(roots_of_deflated(quotient)?);
    Ok(RootVector::new(roots))
}

/// Roots of a monic plain-coefficient polynomial with non-zero constant term.
fn roots_of_deflated(plain: &[f64]) -> Result<Vec<f64>> {
    let m = plain.len() - 1;
    debug_assert!(m >= 1 && plain[0] == 1.0);

    if m == 1 {
        return Ok(vec![-plain[1]]);
    }

    // 2. Point-mass shortcut. The coefficient mean and variance cost nothing,
    //    and |q(μ)|^{1/m} estimates the geometric spread of the roots around
    //    μ. Both gates must agree before collapsing the multiset.
    let mu = -plain[1] / m as f64;
    let second = (plain[1] * plain[1] - 2.0 * plain[2]) / m as f64;
    let variance = second - mu * mu;
    let unit = 1.0 + mu.abs();
    if variance.abs() <= 1e-12 * unit * unit {
        let residual = horner(plain, mu).abs();
        let spread = residual.powf(1.0 / m as f64);
        if spread <= IMAG_DISCARD * unit {
            return Ok(vec![mu; m]);
        }
    }

    if m == 2 {
        return quadratic_roots(plain[1], plain[2]);
    }

    // 3. Center by the root mean. A single global rescaling is deliberately
    //    *not* applied: compressing the spectrum deep into the unit disk
    //    shrinks trailing coefficients to ~1e-30 and ruins the computation,
    //    whereas Parlett–Reinsch balancing performs the per-index diagonal
    //    scaling that companion matrices actually need.
    let centered = Polynomial::from_plain_coeffs(plain)
        .expect("deflated coefficients are monic and finite")
        .shift(-mu);
    let d = centered.plain_coeffs();
    if d.iter().skip(1).all(|&ck| ck == 0.0) {
        return Ok(vec![mu; m]);
    }

    // 4. Companion matrix, balancing, Francis QR.
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        a[i][m - 1] = -d[m - i];
        if i + 1 < m {
            a[i + 1][i] = 1.0;
        }
    }
    balance(&mut a);
    let eigen = hqr(&mut a)?;

    // 5–6. Map back to original coordinates, polish, discard imaginary dust.
    let mut out = Vec::with_capacity(m);
    for (lr, li) in eigen {
        let (mut zr, mut zi) = (lr + mu, li);
        polish_complex(plain, &mut zr, &mut zi);
        if zi.abs() > IMAG_DISCARD * (1.0 + zr.abs()) {
            return Err(Error::NonRealRooted { re: zr, im: zi });
        }
        out.push(polish_real(plain, zr));
    }
    Ok(out)
}

/// Stable monic quadratic solver for `x² + bx + c`.
fn quadratic_roots(b: f64, c: f64) -> Result<Vec<f64>> {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        let im = (-disc).sqrt() / 2.0;
        let re = -b / 2.0;
        if im > IMAG_DISCARD * (1.0 + re.abs()) {
            return Err(Error::NonRealRooted { re, im });
        }
        return Ok(vec![re, re]);
    }
    let sd = disc.sqrt();
    let q = -(b + copysign(sd, b)) / 2.0;
    if q == 0.0 {
        // b = 0 and disc = 0, hence c = 0.
        return Ok(vec![0.0, 0.0]);
    }
    Ok(vec![q, c / q])
}

fn copysign(magnitude: f64, sign: f64) -> f64 {
    if sign >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Plain-coefficient Horner evaluation.
fn horner(plain: &[f64], x: f64) -> f64 {
    plain.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Complex Horner evaluation returning `(p, p′)` at `z = zr + i·zi`.
fn horner_complex(plain: &[f64], zr: f64, zi: f64) -> (f64, f64, f64, f64) {
    let (mut pr, mut pi, mut dr, mut di) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &c in plain {
        let ndr = dr * zr - di * zi + pr;
        let ndi = dr * zi + di * zr + pi;
        let npr = pr * zr - pi * zi + c;
        let npi = pr * zi + pi * zr;
        dr = ndr;
        di = ndi;
        pr = npr;
        pi = npi;
    }
    (pr, pi, dr, di)
}

/// A few complex Newton steps against the original coefficients; keeps the
/// iterate with the smallest residual.
fn polish_complex(plain: &[f64], zr: &mut f64, zi: &mut f64) {
    let (mut br, mut bi) = (*zr, *zi);
    let (pr0, pi0, _, _) = horner_complex(plain, br, bi);
    let mut best = pr0 * pr0 + pi0 * pi0;
    let (mut xr, mut xi) = (br, bi);
    for _ in 0..5 {
        let (pr, pi, dr, di) = horner_complex(plain, xr, xi);
        let denom = dr * dr + di * di;
        if denom == 0.0 {
            break;
        }
        let sr = (pr * dr + pi * di) / denom;
        let si = (pi * dr - pr * di) / denom;
        xr -= sr;
        xi -= si;
        let (qr, qi, _, _) = horner_complex(plain, xr, xi);
        let res = qr * qr + qi * qi;
        if res < best {
            best = res;
            br = xr;
            bi = xi;
            if res == 0.0 {
                break;
            }
        }
    }
    *zr = br;
    *zi = bi;
}

/// Up to two real Newton steps, accepted only while the residual shrinks.
fn polish_real(plain: &[f64], mut x: f64) -> f64 {
    let mut best = horner(plain, x).abs();
    for _ in 0..2 {
        let (p, dp) = horner_pair(plain, x);
        if dp == 0.0 {
            break;
        }
        let cand = x - p / dp;
        let res = horner(plain, cand).abs();
        if res < best {
            best = res;
            x = cand;
        } else {
            break;
        }
    }
    x
}

fn horner_pair(plain: &[f64], x: f64) -> (f64, f64) {
    let (mut p, mut dp) = (0.0f64, 0.0f64);
    for &c in plain {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Parlett–Reinsch balancing: diagonal similarity with radix-2 scale factors
/// until row and column norms agree. Preserves the Hessenberg zero pattern.
fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    r += a[i][j].abs();
                    c += a[j][i].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut f = 1.0;
                let mut cc = c;
                let g = r / radix;
                let s = c + r;
                while cc < g {
                    f *= radix;
                    cc *= sqrdx;
                }
                let g = r * radix;
                while cc > g {
                    f /= radix;
                    cc /= sqrdx;
                }
                if (cc + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= ginv;
                    }
                    for row in a.iter_mut() {
                        row[i] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Francis double-shift QR on an upper-Hessenberg matrix; returns eigenvalues
/// as `(re, im)` pairs.
///
/// Classic algorithm (Wilkinson deflation test, exceptional shifts every ten
/// stalled iterations) with a per-block iteration cap.
#[allow(clippy::needless_range_loop)]
fn hqr(a: &mut [Vec<f64>]) -> Result<Vec<(f64, f64)>> {
    let n = a.len();
    let mut wr = vec![0.0f64; n];
    let mut wi = vec![0.0f64; n];

    let mut anorm = 0.0f64;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(wr.into_iter().zip(wi).collect());
    }

    let eps = f64::EPSILON;
    let mut t = 0.0f64;
    let mut nn = n as isize - 1;
    let mut total_iters = 0usize;

    'outer: while nn >= 0 {
        let mut its = 0usize;
        loop {
            // Look for a negligible subdiagonal element.
            let mut l = nn;
            while l >= 1 {
                let mut s = a[(l - 1) as usize][(l - 1) as usize].abs()
                    + a[l as usize][l as usize].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l as usize][(l - 1) as usize].abs() <= eps * s {
                    a[l as usize][(l - 1) as usize] = 0.0;
                    break;
                }
                l -= 1;
            }

            let mut x = a[nn as usize][nn as usize];
            if l == nn {
                // One eigenvalue isolated.
                wr[nn as usize] = x + t;
                wi[nn as usize] = 0.0;
                nn -= 1;
                continue 'outer;
            }

            let y = a[(nn - 1) as usize][(nn - 1) as usize];
            let mut w = a[nn as usize][(nn - 1) as usize] * a[(nn - 1) as usize][nn as usize];
            if l == nn - 1 {
                // A 2×2 block isolated.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + copysign(z, p);
                    wr[(nn - 1) as usize] = x + z;
                    wr[nn as usize] = if z != 0.0 { x - w / z } else { x + z };
                    wi[(nn - 1) as usize] = 0.0;
                    wi[nn as usize] = 0.0;
                } else {
                    wr[(nn - 1) as usize] = x + p;
                    wr[nn as usize] = x + p;
                    wi[nn as usize] = z;
                    wi[(nn - 1) as usize] = -z;
                }
                nn -= 2;
                continue 'outer;
            }

            // No deflation: perform a double-shift sweep.
            if its == MAX_BLOCK_ITERS {
                return Err(Error::NoConvergence {
                    iterations: total_iters,
                });
            }
            let mut y = y;
            if its == 10 || its == 20 {
                // Exceptional shift to break symmetry-induced stalls.
                t += x;
                for i in 0..=nn as usize {
                    a[i][i] -= x;
                }
                let s = a[nn as usize][(nn - 1) as usize].abs()
                    + a[(nn - 1) as usize][(nn - 2) as usize].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_iters += 1;

            // Find two consecutive small subdiagonal elements.
            let mut mm = nn - 2;
            let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
            while mm >= l {
                let z = a[mm as usize][mm as usize];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(mm + 1) as usize][mm as usize]
                    + a[mm as usize][(mm + 1) as usize];
                q = a[(mm + 1) as usize][(mm + 1) as usize] - z - rr - ss;
                r = a[(mm + 2) as usize][(mm + 1) as usize];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if mm == l {
                    break;
                }
                let u = a[mm as usize][(mm - 1) as usize].abs() * (q.abs() + r.abs());
                let v = z.abs()
                    * (p.abs()
                        + a[(mm + 1) as usize][(mm + 1) as usize].abs()
                        + a[(mm + 2) as usize][(mm + 2) as usize].abs());
                if u <= eps * v {
                    break;
                }
                mm -= 1;
            }
            for i in (mm + 2)..=nn {
                a[i as usize][(i - 2) as usize] = 0.0;
                if i != mm + 2 {
                    a[i as usize][(i - 3) as usize] = 0.0;
                }
            }

            for k in mm..=(nn - 1) {
                if k != mm {
                    p = a[k as usize][(k - 1) as usize];
                    q = a[(k + 1) as usize][(k - 1) as usize];
                    r = if k != nn - 1 {
                        a[(k + 2) as usize][(k - 1) as usize]
                    } else {
                        0.0
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = copysign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == mm {
                    if l != mm {
                        a[k as usize][(k - 1) as usize] = -a[k as usize][(k - 1) as usize];
                    }
                } else {
                    a[k as usize][(k - 1) as usize] = -s * x;
                }
                p += s;
                x = p / s;
                let yy = q / s;
                let zz = r / s;
                q /= p;
                r /= p;
                for j in k as usize..=nn as usize {
                    let mut pp = a[k as usize][j] + q * a[(k + 1) as usize][j];
                    if k != nn - 1 {
                        pp += r * a[(k + 2) as usize][j];
                        a[(k + 2) as usize][j] -= pp * zz;
                    }
                    a[(k + 1) as usize][j] -= pp * yy;
                    a[k as usize][j] -= pp * x;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l as usize..=mmin as usize {
                    let mut pp = x * a[i][k as usize] + yy * a[i][(k + 1) as usize];
                    if k != nn - 1 {
                        pp += zz * a[i][(k + 2) as usize];
                        a[i][(k + 2) as usize] -= pp * r;
                    }
                    a[i][(k + 1) as usize] -= pp * q;
                    a[i][k as usize] -= pp;
                }
            }
        }
    }

    Ok(wr.into_iter().zip(wi).collect())
}
