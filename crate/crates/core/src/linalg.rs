//! Dense complex-matrix kernels.
//!
//! Everything here works on small square matrices (the crate targets
//! dimensions up to a handful of levels). The Hermitian eigensolver and the
//! SVD are delegated to `nalgebra`; the wrappers fix the conventions the rest
//! of the crate relies on: ascending eigenvalues, a deterministic eigenvector
//! phase, symmetrization before solving, and the eigenvalue clamping policy
//! for positive semidefinite inputs.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result, C64};

/// Largest `max |H - H^dagger|` accepted by [`herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Eigenvalues in `[-PSD_CLAMP_TOL, 0)` are roundoff and clamped to zero;
/// anything below is a genuinely indefinite input.
pub const PSD_CLAMP_TOL: f64 = 1e-9;

/// Relative spectral floor: eigenvalues at or below `SPECTRAL_FLOOR * max(1, lambda_max)`
/// are treated as exact zeros before taking square roots or fractional powers.
///
/// Without it a rank-deficient state leaves eigenvalues of order 1e-17 whose
/// square roots (~3e-9) pollute fidelities far beyond the 1e-10 level.
pub const SPECTRAL_FLOOR: f64 = 1e-14;

/// Components with modulus below this are skipped when fixing eigenvector phases.
const PHASE_ZERO: f64 = 1e-12;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_ITER: usize = 10_000;

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension { dim, min: 1 });
        }
        if entries.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Builds a matrix from separate real and imaginary row-major parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim {
            return Err(Error::BadShape {
                dim,
                expected: dim,
                found: im.len(),
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, i) in re.iter().zip(im) {
            if r.len() != dim || i.len() != dim {
                return Err(Error::BadShape {
                    dim,
                    expected: dim,
                    found: r.len().max(i.len()),
                });
            }
            entries.extend(r.iter().zip(i).map(|(&a, &b)| C64::new(a, b)));
        }
        Self::from_row_major(dim, &entries)
    }

    /// Wraps an `nalgebra` matrix, checking that it is square and finite.
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::BadDimension { dim: 0, min: 1 });
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Wraps a real matrix.
    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::from_matrix(m.map(|x| C64::new(x, 0.0)))
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Entrywise real part, as a complex matrix.
    pub fn real_part(&self) -> Self {
        Self(self.0.map(|z| C64::new(z.re, 0.0)))
    }

    pub fn re(&self) -> DMatrix<f64> {
        self.0.map(|z| z.re)
    }

    pub fn im(&self) -> DMatrix<f64> {
        self.0.map(|z| z.im)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus of an imaginary part.
    pub fn max_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `max |A - A^dagger|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A^dagger) / 2`.
    pub fn symmetrized(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    /// `max |A - B|` entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.0[(i, k)] * other.0[(k, i)];
            }
        }
        acc
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// Spectral decomposition `H = V diag(lambda) V^dagger` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V f(Lambda) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_matrix();
        let n = v.nrows();
        let mut scaled = v.clone();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let s = f(lam);
            for i in 0..n {
                scaled[(i, k)] *= s;
            }
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues.
///
/// The input is symmetrized as `(H + H^dagger)/2` before solving. Each
/// eigenvector column is rotated so that its first non-negligible component
/// is real and non-negative.
pub fn herm_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let deviation = h.hermitian_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = h.symmetrized().0;
    let eig = SymmetricEigen::try_new(sym, EIG_EPS, EIG_MAX_ITER).ok_or(Error::NoConvergence {
        iterations: EIG_MAX_ITER,
    })?;

    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut vectors = DMatrix::<C64>::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let col = eig.eigenvectors.column(src);
        let phase = col
            .iter()
            .find(|z| z.norm() > PHASE_ZERO)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        for i in 0..n {
            vectors[(i, dst)] = col[i] * phase;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: values,
        eigenvectors: ComplexMatrix(vectors),
    })
}

/// Eigendecomposition of a PSD matrix with the clamping policy applied:
/// eigenvalues below `-PSD_CLAMP_TOL` are an error, the rest are clamped to
/// zero and floored with [`SPECTRAL_FLOOR`].
pub fn psd_eig(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let mut eig = herm_eig(a)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let floor = SPECTRAL_FLOOR * eig.max_eigenvalue().max(1.0);
    for lam in &mut eig.eigenvalues {
        if *lam <= floor {
            *lam = 0.0;
        }
    }
    Ok(eig)
}

/// Clamped, ascending spectrum of a PSD matrix.
pub fn psd_spectrum(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(psd_eig(a)?.eigenvalues)
}

/// Principal square root of a PSD matrix.
pub fn mat_sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(psd_eig(a)?.reconstruct_with(f64::sqrt))
}

/// `A^p` for PSD `A` and `p > 0`, with `0^p := 0`.
pub fn mat_pow_psd(a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    Ok(psd_eig(a)?.reconstruct_with(|x| if x > 0.0 { x.powf(p) } else { 0.0 }))
}

/// Sum of singular values, `Tr sqrt(A^dagger A)`.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    a.0.singular_values().iter().sum()
}

/// `sqrt(Tr(A^dagger A))`.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Sum of the second-order principal minors, via `((Tr A)^2 - Tr(A^2)) / 2`.
pub fn e2_sum_principal_minors(a: &ComplexMatrix) -> C64 {
    let tr = a.trace();
    (tr * tr - a.trace_product(a)) * 0.5
}
