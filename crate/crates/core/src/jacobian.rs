//! Jacobians of the root maps, their closed-form factors, and the small
//! dense linear algebra needed to analyze them.
//!
//! Two maps on sorted root coordinates are studied:
//!
//! * the **derivative map** `α ↦ δ(α)`, sending the `n` roots of `p` to the
//!   `n−1` roots of its monic derivative, and
//! * the **convolution map** `(α, β) ↦ γ(α, β)`, sending two degree-`n` root
//!   multisets to the roots of `p ⊞ q`.
//!
//! The derivative map has a fully explicit Jacobian: the row-normalized
//! inverse-square kernel
//!
//! ```text
//! E_ij = (1/Z_i) · 1/(δ_i − α_j)²,       Z_i = Σ_j 1/(δ_i − α_j)²,
//! ```
//!
//! which is also the natural interpolation matrix onto the interlaced roots
//! (rows sum to 1, every column sums to `(n−1)/n`, and `E·α = δ`). Its
//! companion, the **differentiator**
//!
//! ```text
//! P_ij = 1/(√Z_i · (δ_i − α_j)),
//! ```
//!
//! is a coisometry (`P·Pᵀ = I`, `P·𝟙 = 0`) whose compression
//! `P·diag(α)·Pᵀ` has characteristic polynomial `p′/n` — the derivative
//! realized as a matrix spectrum.
//!
//! The convolution map has no closed-form Jacobian here; it is measured by
//! central finite differences ([`fd_jacobian`]) and checked against its
//! structural invariants (doubly stochastic blocks, translation and scaling
//! directions, top singular values `√2` and `1`).
//!
//! Linear algebra is deliberately small and self-contained: a row-major
//! [`Matrix`], a cyclic Jacobi eigensolver for symmetric matrices
//! ([`symmetric_eigen`]), and a Gram-matrix SVD ([`svd`]) adequate for the
//! `≤ 64×64` well-conditioned matrices produced by these maps.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::conv::convolve;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{real_roots, RootVector};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// An all-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if out of bounds.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if out of bounds.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    /// Matrix–vector product `M·v`.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != cols`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<f64>()
            })
            .collect()
    }

    /// Transposed product `Mᵀ·v`.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != rows`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j) * v[i])
                    .sum::<f64>()
            })
            .collect()
    }

    /// Per-row sums.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).sum())
            .collect()
    }

    /// Per-column sums.
    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Smallest entry (useful for non-negativity checks).
    pub fn min_entry(&self) -> f64 {
        self.data.iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Gram matrix `M·Mᵀ` (`rows × rows`).
    pub fn gram_rows(&self) -> Matrix {
        let mut g = Matrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for k in i..self.rows {
                let dot: f64 = (0..self.cols)
                    .map(|j| self.get(i, j) * self.get(k, j))
                    .sum();
                g.set(i, k, dot);
                g.set(k, i, dot);
            }
        }
        g
    }

    /// Gram matrix `Mᵀ·M` (`cols × cols`).
    pub fn gram_cols(&self) -> Matrix {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for k in i..self.cols {
                let dot: f64 = (0..self.rows)
                    .map(|r| self.get(r, i) * self.get(r, k))
                    .sum();
                g.set(i, k, dot);
                g.set(k, i, dot);
            }
        }
        g
    }
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Returns `(values, vectors)` with values sorted descending and
/// the k-th column of `vectors` the corresponding unit eigenvector.
///
/// Accuracy is `~‖A‖·1e−15` on the well-conditioned symmetric matrices this
/// crate produces; iteration stops when the off-diagonal Frobenius norm
/// falls below `1e−14·‖A‖` (at most 50 sweeps).
///
/// # Panics
///
/// Panics if `a` is not square.
pub fn symmetric_eigen(a: &Matrix) -> (Vec<f64>, Matrix) {
    assert_eq!(a.rows, a.cols, "symmetric eigensolver requires square input");
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let norm: f64 = m.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || n < 2 {
        let vals = (0..n).map(|i| m.get(i, i)).collect();
        return (vals, v);
    }

    for _sweep in 0..50 {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += m.get(i, j) * m.get(i, j);
                    }
                }
            }
            s.sqrt()
        };
        if off <= 1e-14 * norm {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let app = m.get(p, p);
                let aqq = m.get(q, q);
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for i in 0..n {
                    if i != p && i != q {
                        let aip = m.get(i, p);
                        let aiq = m.get(i, q);
                        m.set(i, p, c * aip - s * aiq);
                        m.set(p, i, c * aip - s * aiq);
                        m.set(i, q, s * aip + c * aiq);
                        m.set(q, i, s * aip + c * aiq);
                    }
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
    }

    // Sort eigenpairs descending by value.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)));
    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    (values, vectors)
}

/// A thin singular value decomposition: `values` sorted descending,
/// `left`/`right` holding the corresponding unit singular vectors as
/// columns (`rows × k` and `cols × k`, `k = min(rows, cols)`).
#[derive(Debug, Clone)]
pub struct Svd {
    /// Singular values, descending.
    pub values: Vec<f64>,
    /// Left singular vectors (columns).
    pub left: Matrix,
    /// Right singular vectors (columns).
    pub right: Matrix,
}

/// Singular value decomposition through the Gram matrix of the smaller side
/// (eigendecomposed by [`symmetric_eigen`]), with the other side recovered
/// as `Mᵀu/σ` (or `Mv/σ`).
///
/// Adequate for the small, mildly conditioned Jacobians this crate studies;
/// singular vectors for values below `1e−9·σ_max` are left as zero columns
/// (only the leading vectors are ever consumed).
pub fn svd(m: &Matrix) -> Svd {
    let k = m.rows.min(m.cols);
    let rows_smaller = m.rows <= m.cols;
    let gram = if rows_smaller {
        m.gram_rows()
    } else {
        m.gram_cols()
    };
    let (lambda, vecs) = symmetric_eigen(&gram);
    let values: Vec<f64> = lambda.iter().take(k).map(|&l| l.max(0.0).sqrt()).collect();
    let sigma_max = values.first().copied().unwrap_or(0.0);

    let mut left = Matrix::zeros(m.rows, k);
    let mut right = Matrix::zeros(m.cols, k);
    for j in 0..k {
        let v_small: Vec<f64> = (0..gram.rows()).map(|i| vecs.get(i, j)).collect();
        let sigma = values[j];
        if rows_smaller {
            for i in 0..m.rows {
                left.set(i, j, v_small[i]);
            }
            if sigma > 1e-9 * sigma_max {
                let other = m.tr_mul_vec(&v_small);
                for i in 0..m.cols {
                    right.set(i, j, other[i] / sigma);
                }
            }
        } else {
            for i in 0..m.cols {
                right.set(i, j, v_small[i]);
            }
            if sigma > 1e-9 * sigma_max {
                let other = m.mul_vec(&v_small);
                for i in 0..m.rows {
                    left.set(i, j, other[i] / sigma);
                }
            }
        }
    }
    Svd {
        values,
        left,
        right,
    }
}

/// Absolute cosine of the angle between two vectors (1 = aligned up to
/// sign, 0 = orthogonal).
///
/// # Panics
///
/// Panics if lengths differ or either vector is zero.
pub fn cosine_alignment(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(na > 0.0 && nb > 0.0, "cosine alignment of a zero vector");
    (dot / (na * nb)).abs()
}

/// Roots of the monic derivative of the polynomial with the given roots —
/// the derivative map `α ↦ δ(α)` in root coordinates.
///
/// Each critical point is bracketed between two adjacent roots (Rolle) and
/// located as the zero of the logarithmic derivative `Σ_j 1/(x − α_j)`,
/// which is strictly decreasing on that interval. Working directly in root
/// space keeps the result accurate to a few ulps regardless of how badly the
/// coefficient representation of the polynomial is conditioned, which
/// matters when this map sits inside a finite-difference quotient. A
/// repeated root is its own critical point and is passed through unchanged.
///
/// # Panics
///
/// Panics if fewer than two roots are supplied.
pub fn derivative_roots(alpha: &RootVector) -> RootVector {
    assert!(alpha.len() >= 2, "derivative map requires at least two roots");
    let a = alpha.as_slice();
    let mut out = Vec::with_capacity(a.len() - 1);
    // Roots are stored descending, so each window is (upper, lower).
    for w in a.windows(2) {
        out.push(critical_point(a, w[1], w[0]));
    }
    RootVector::new(out)
}

/// Zero of `S(x) = Σ_j 1/(x − α_j)` in the open interval `(lo, hi)`.
///
/// `S` falls strictly from `+∞` to `−∞` across the interval, so a Newton
/// step safeguarded by the sign bracket always converges; the bracket also
/// absorbs the infinities produced if an iterate lands exactly on a root.
fn critical_point(roots: &[f64], lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..128 {
        let mut s = 0.0f64;
        let mut ds = 0.0f64;
        for &r in roots {
            let d = x - r;
            s += 1.0 / d;
            ds -= 1.0 / (d * d);
        }
        if s == 0.0 {
            return x;
        }
        if s > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 2.0 * f64::EPSILON * x.abs().max(1.0) {
            return x;
        }
        let newton = x - s / ds;
        // NaN or out-of-bracket steps fail the comparison and fall back to
        // bisection, which alone already converges within the iteration cap.
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    0.5 * (lo + hi)
}

/// The explicit Jacobian `E` of the derivative map at `alpha` (with
/// `delta` the derivative's roots): `E_ij = (1/Z_i)·(δ_i − α_j)^{−2}`.
///
/// Rows sum to 1, columns sum to `(n−1)/n`, `E·α = δ`, and the two leading
/// singular pairs are analytic: `(𝟙, 𝟙)` with `σ₁ = √((n−1)/n)` and the
/// centered roots `(δ̊, α̊)` with `σ₂ = √((n−2)/n)`.
///
/// # Errors
///
/// - [`Error::InterlacingLength`] unless `delta` is one shorter than `alpha`;
/// - [`Error::RepeatedRoot`] if some `δ_i` equals some `α_j` exactly.
pub fn gauss_lucas_matrix(alpha: &RootVector, delta: &RootVector) -> Result<Matrix> {
    let n = alpha.len();
    if delta.len() + 1 != n {
        return Err(Error::InterlacingLength {
            outer: n,
            inner: delta.len(),
        });
    }
    let mut e = Matrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        let mut z = 0.0f64;
        for j in 0..n {
            let gap = delta[i] - alpha[j];
            if gap == 0.0 {
                return Err(Error::RepeatedRoot);
            }
            let w = 1.0 / (gap * gap);
            e.set(i, j, w);
            z += w;
        }
        for j in 0..n {
            let v = e.get(i, j) / z;
            e.set(i, j, v);
        }
    }
    Ok(e)
}

/// The differentiator `P_ij = (√Z_i·(δ_i − α_j))^{−1}`: a coisometry
/// (`P·Pᵀ = I`, `P·𝟙 = 0`) whose compression `P·diag(α)·Pᵀ` has
/// characteristic polynomial `p′/n`.
///
/// # Errors
///
/// Same conditions as [`gauss_lucas_matrix`].
pub fn differentiator_matrix(alpha: &RootVector, delta: &RootVector) -> Result<Matrix> {
    let n = alpha.len();
    if delta.len() + 1 != n {
        return Err(Error::InterlacingLength {
            outer: n,
            inner: delta.len(),
        });
    }
    let mut p = Matrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        let mut z = 0.0f64;
        for j in 0..n {
            let gap = delta[i] - alpha[j];
            if gap == 0.0 {
                return Err(Error::RepeatedRoot);
            }
            z += 1.0 / (gap * gap);
        }
        let zs = z.sqrt();
        for j in 0..n {
            p.set(i, j, 1.0 / (zs * (delta[i] - alpha[j])));
        }
    }
    Ok(p)
}

/// Central-difference Jacobian of a vector map `f` at `x` with step `h`.
///
/// # Errors
///
/// Propagates failures of `f` at the stencil points.
///
/// # Panics
///
/// Panics if `h` is not positive and finite.
pub fn fd_jacobian<F>(f: F, x: &[f64], h: f64) -> Result<Matrix>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    assert!(h > 0.0 && h.is_finite(), "step must be positive and finite");
    let base = f(x)?;
    let mut j = Matrix::zeros(base.len(), x.len());
    let mut pt = x.to_vec();
    for col in 0..x.len() {
        pt[col] = x[col] + h;
        let plus = f(&pt)?;
        pt[col] = x[col] - h;
        let minus = f(&pt)?;
        pt[col] = x[col];
        for row in 0..base.len() {
            j.set(row, col, (plus[row] - minus[row]) / (2.0 * h));
        }
    }
    Ok(j)
}

/// Finite-difference Jacobian of the derivative map at `alpha`.
///
/// # Errors
///
/// [`Error::StencilCrossing`] if `2h` is not safely below the minimum root
/// gap (perturbed roots would change their sort order, making difference
/// quotients meaningless).
pub fn derivative_map_fd_jacobian(alpha: &RootVector, h: f64) -> Result<Matrix> {
    let min_gap = alpha.min_gap();
    if 2.0 * h >= min_gap {
        return Err(Error::StencilCrossing { h, min_gap });
    }
    fd_jacobian(
        |x| Ok(derivative_roots(&RootVector::new(x.to_vec())).into_vec()),
        alpha.as_slice(),
        h,
    )
}

/// Roots of `p ⊞ q` as a function of the concatenated root coordinates —
/// the convolution map `(α, β) ↦ γ`.
///
/// # Errors
///
/// Propagates convolution and root-extraction failures.
pub fn convolution_roots(alpha: &RootVector, beta: &RootVector) -> Result<RootVector> {
    let p = Polynomial::from_roots(alpha);
    let q = Polynomial::from_roots(beta);
    real_roots(&convolve(&p, &q)?)
}

/// Finite-difference Jacobian of the convolution map at `(alpha, beta)`:
/// an `n × 2n` matrix over the concatenated coordinates `(α₁…α_n, β₁…β_n)`.
///
/// # Errors
///
/// - [`Error::StencilCrossing`] if `2h` is not safely below the smaller of
///   the two minimum root gaps;
/// - propagated convolution and root-extraction failures.
pub fn convolution_map_fd_jacobian(
    alpha: &RootVector,
    beta: &RootVector,
    h: f64,
) -> Result<Matrix> {
    let n = alpha.len();
    let min_gap = alpha.min_gap().min(beta.min_gap());
    if 2.0 * h >= min_gap {
        return Err(Error::StencilCrossing { h, min_gap });
    }
    let x: Vec<f64> = alpha
        .iter()
        .chain(beta.iter())
        .copied()
        .collect();
    fd_jacobian(
        |z| {
            let a = RootVector::new(z[..n].to_vec());
            let b = RootVector::new(z[n..].to_vec());
            Ok(convolution_roots(&a, &b)?.into_vec())
        },
        &x,
        h,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::hermite;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn jacobi_eigen_hand_case() {
        let mut a = Matrix::zeros(2, 2);
        a.set(0, 0, 2.0);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        a.set(1, 1, 2.0);
        let (vals, vecs) = symmetric_eigen(&a);
        assert!(close(vals[0], 3.0, 1e-14));
        assert!(close(vals[1], 1.0, 1e-14));
        // Leading eigenvector ∝ (1, 1).
        let ratio = vecs.get(0, 0) / vecs.get(1, 0);
        assert!(close(ratio, 1.0, 1e-12));
    }

    #[test]
    fn jacobi_eigen_diagonalizes_random_symmetric() {
        // Fixed pseudo-random symmetric 6×6, residual ‖Av − λv‖ per pair.
        let n = 6;
        let mut a = Matrix::zeros(n, n);
        let mut state = 88172645463325252u64;
        let mut rnd = || {
            // xorshift64: deterministic fixture values in [−1, 1]
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for i in 0..n {
            for j in i..n {
                let v = rnd();
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let (vals, vecs) = symmetric_eigen(&a);
        for k in 0..n {
            let v: Vec<f64> = (0..n).map(|i| vecs.get(i, k)).collect();
            let av = a.mul_vec(&v);
            for i in 0..n {
                assert!(close(av[i], vals[k] * v[i], 1e-12), "pair {k}");
            }
        }
    }

    #[test]
    fn svd_hand_case_and_orthogonality() {
        // M = [[3, 0, 0], [0, 2, 0]]: singular values 3, 2.
        let mut m = Matrix::zeros(2, 3);
        m.set(0, 0, 3.0);
        m.set(1, 1, 2.0);
        let s = svd(&m);
        assert!(close(s.values[0], 3.0, 1e-14));
        assert!(close(s.values[1], 2.0, 1e-14));
        // Recovered right vectors are unit and match e₁, e₂.
        assert!(close(s.right.get(0, 0).abs(), 1.0, 1e-12));
        assert!(close(s.right.get(1, 1).abs(), 1.0, 1e-12));
    }

    #[test]
    fn gauss_lucas_structure_on_cubic() {
        // p = x³ − x: α = {1, 0, −1}, δ = ±1/√3.
        let alpha = RootVector::new(vec![1.0, 0.0, -1.0]);
        let delta = derivative_roots(&alpha);
        let g = 1.0 / 3.0f64.sqrt();
        assert!(close(delta[0], g, 1e-12));
        assert!(close(delta[1], -g, 1e-12));

        let e = gauss_lucas_matrix(&alpha, &delta).unwrap();
        for r in e.row_sums() {
            assert!(close(r, 1.0, 1e-13));
        }
        for c in e.col_sums() {
            assert!(close(c, 2.0 / 3.0, 1e-13));
        }
        let mapped = e.mul_vec(alpha.as_slice());
        assert!(close(mapped[0], delta[0], 1e-13));
        assert!(close(mapped[1], delta[1], 1e-13));
        assert!(e.min_entry() > 0.0);
    }

    #[test]
    fn differentiator_is_coisometry_and_realizes_derivative() {
        let alpha = RootVector::new(vec![2.1, 0.7, -0.4, -1.9]);
        let delta = derivative_roots(&alpha);
        let p = differentiator_matrix(&alpha, &delta).unwrap();

        // P·Pᵀ = I
        let ppt = p.gram_rows();
        for i in 0..ppt.rows() {
            for j in 0..ppt.cols() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(close(ppt.get(i, j), expect, 1e-12));
            }
        }
        // P·𝟙 = 0
        for v in p.mul_vec(&[1.0; 4]) {
            assert!(v.abs() < 1e-12);
        }
        // Eigenvalues of P·diag(α)·Pᵀ are the derivative's roots.
        let n = alpha.len();
        let mut compressed = Matrix::zeros(n - 1, n - 1);
        for i in 0..n - 1 {
            for k in 0..n - 1 {
                let dot: f64 = (0..n)
                    .map(|j| p.get(i, j) * alpha[j] * p.get(k, j))
                    .sum();
                compressed.set(i, k, dot);
            }
        }
        let (vals, _) = symmetric_eigen(&compressed);
        for (v, d) in vals.iter().zip(delta.iter()) {
            assert!(close(*v, *d, 1e-11), "{v} vs {d}");
        }
    }

    #[test]
    fn derivative_map_fd_matches_analytic_jacobian() {
        let alpha = RootVector::new(vec![1.8, 0.5, -0.6, -2.0]);
        let delta = derivative_roots(&alpha);
        let analytic = gauss_lucas_matrix(&alpha, &delta).unwrap();
        let fd = derivative_map_fd_jacobian(&alpha, 1e-5).unwrap();
        for i in 0..analytic.rows() {
            for j in 0..analytic.cols() {
                assert!(
                    close(fd.get(i, j), analytic.get(i, j), 1e-6),
                    "({i},{j}): {} vs {}",
                    fd.get(i, j),
                    analytic.get(i, j)
                );
            }
        }
    }

    #[test]
    fn derivative_jacobian_singular_pairs_are_analytic() {
        let alpha = RootVector::new(vec![2.4, 1.1, -0.3, -1.2, -2.5]);
        let n = alpha.len() as f64;
        let delta = derivative_roots(&alpha);
        let e = gauss_lucas_matrix(&alpha, &delta).unwrap();
        let s = svd(&e);
        assert!(close(s.values[0], ((n - 1.0) / n).sqrt(), 1e-11));
        assert!(close(s.values[1], ((n - 2.0) / n).sqrt(), 1e-11));

        // σ₁ pair is the all-ones direction; σ₂ pair the centered roots.
        let ones_r: Vec<f64> = vec![1.0; alpha.len()];
        let ones_l: Vec<f64> = vec![1.0; delta.len()];
        let col = |m: &Matrix, k: usize| -> Vec<f64> {
            (0..m.rows()).map(|i| m.get(i, k)).collect()
        };
        assert!(cosine_alignment(&col(&s.right, 0), &ones_r) > 1.0 - 1e-10);
        assert!(cosine_alignment(&col(&s.left, 0), &ones_l) > 1.0 - 1e-10);
        assert!(
            cosine_alignment(&col(&s.right, 1), alpha.centered().as_slice()) > 1.0 - 1e-9
        );
        assert!(
            cosine_alignment(&col(&s.left, 1), delta.centered().as_slice()) > 1.0 - 1e-9
        );
    }

    #[test]
    fn convolution_jacobian_structure() {
        let alpha = RootVector::new(vec![1.9, 0.4, -1.1]);
        let beta = RootVector::new(vec![1.2, -0.2, -1.6]);
        let n = alpha.len();
        let j = convolution_map_fd_jacobian(&alpha, &beta, 1e-5).unwrap();
        assert_eq!((j.rows(), j.cols()), (n, 2 * n));

        // Both blocks are doubly stochastic to FD accuracy.
        for i in 0..n {
            let row_a: f64 = (0..n).map(|c| j.get(i, c)).sum();
            let row_b: f64 = (n..2 * n).map(|c| j.get(i, c)).sum();
            assert!(close(row_a, 1.0, 1e-6), "A row {i}");
            assert!(close(row_b, 1.0, 1e-6), "B row {i}");
        }
        for c in 0..2 * n {
            let col: f64 = (0..n).map(|i| j.get(i, c)).sum();
            assert!(close(col, 1.0, 1e-6), "column {c}");
        }
        assert!(j.min_entry() > -1e-7);

        // Translation directions: J·(𝟙⊕𝟙) = 2·𝟙 and J·(𝟙⊕−𝟙) = 0.
        let mut both = vec![1.0; 2 * n];
        for v in j.mul_vec(&both) {
            assert!(close(v, 2.0, 1e-6));
        }
        for slot in both.iter_mut().skip(n) {
            *slot = -1.0;
        }
        for v in j.mul_vec(&both) {
            assert!(v.abs() < 1e-6);
        }

        // Scaling direction: J·(α̊ ⊕ β̊) = γ̊.
        let gamma = convolution_roots(&alpha, &beta).unwrap();
        let scaled: Vec<f64> = alpha
            .centered()
            .iter()
            .chain(beta.centered().iter())
            .copied()
            .collect();
        let out = j.mul_vec(&scaled);
        for (o, g) in out.iter().zip(gamma.centered().iter()) {
            assert!(close(*o, *g, 1e-6), "{o} vs {g}");
        }

        // Top singular values √2 and 1.
        let s = svd(&j);
        assert!(close(s.values[0], 2.0f64.sqrt(), 1e-5));
        assert!(close(s.values[1], 1.0, 1e-5));
    }

    #[test]
    fn stencil_crossing_is_rejected() {
        let alpha = RootVector::new(vec![1.0, 0.99, -1.0]);
        assert!(matches!(
            derivative_map_fd_jacobian(&alpha, 0.01),
            Err(Error::StencilCrossing { .. })
        ));
    }

    #[test]
    fn fd_jacobian_exact_on_linear_maps() {
        // f(x) = A·x for a fixed matrix A: central differences are exact.
        let f = |x: &[f64]| -> Result<Vec<f64>> {
            Ok(vec![2.0 * x[0] - x[1], 0.5 * x[0] + 3.0 * x[1]])
        };
        let j = fd_jacobian(f, &[0.3, -0.7], 1e-4).unwrap();
        assert!(close(j.get(0, 0), 2.0, 1e-10));
        assert!(close(j.get(0, 1), -1.0, 1e-10));
        assert!(close(j.get(1, 0), 0.5, 1e-10));
        assert!(close(j.get(1, 1), 3.0, 1e-10));
    }

    #[test]
    fn hermite_derivative_map_consistency() {
        // δ(roots of H_n) = roots of H_{n−1} scaled by the Appell identity.
        let alpha = real_roots(&hermite(6)).unwrap();
        let delta = derivative_roots(&alpha);
        let expect = real_roots(&hermite(5)).unwrap();
        for (d, e) in delta.iter().zip(expect.iter()) {
            assert!(close(*d, *e, 1e-9), "{d} vs {e}");
        }
    }
}
