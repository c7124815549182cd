//! Validated quantum states and the objects that act on them.
//!
//! "Real" always refers to the computational (reference) basis.

mod basis;
mod compress;
pub mod io;
mod operations;
pub mod random;

pub use basis::{
    change_basis, computational_basis, example_y_bases, qubit_mubs, qutrit_mubs, OrthonormalBasis,
};
pub use compress::{lift_qubit_mubs, real_compress};
pub use operations::{apply_channel, dephase, Dephased, RealOperation, RealProjectorSet};

use nalgebra::DMatrix;

use crate::linalg::{self, ComplexMatrix};
use crate::{Error, Result, C64};

/// Hermiticity tolerance (max norm) for density matrices.
pub const STATE_HERMITIAN_TOL: f64 = 1e-10;
/// `|Tr rho - 1|` tolerance.
pub const STATE_TRACE_TOL: f64 = 1e-10;
/// Norm tolerance for pure state amplitudes.
pub const PURE_NORM_TOL: f64 = 1e-12;
/// Default imaginary-part threshold for [`DensityMatrix::is_real`].
pub const REAL_TOL: f64 = 1e-10;
/// Slack allowed on `|r|^2 <= 1`.
pub const BLOCH_TOL: f64 = 1e-12;
/// `1 - |r|^2` below this is roundoff on a pure state and reads as zero.
pub const PURE_SNAP: f64 = 1e-14;

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `mat` as a density matrix.
    ///
    /// The stored matrix is symmetrized; eigenvalues in the roundoff band
    /// `[-1e-9, 0)` are clamped to zero and the trace renormalized to one.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let deviation = mat.hermitian_defect();
        if deviation > STATE_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let sym = mat.symmetrized();
        let trace = sym.trace().re;
        if (trace - 1.0).abs() > STATE_TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let eig = linalg::herm_eig(&sym)?;
        let min = eig.min_eigenvalue();
        if min < -linalg::PSD_CLAMP_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        let fixed = if min < 0.0 {
            eig.reconstruct_with(|x| x.max(0.0)).symmetrized()
        } else {
            sym
        };
        let tr = fixed.trace().re;
        Ok(Self {
            mat: fixed.scale(1.0 / tr),
        })
    }

    /// Wraps a matrix already known to be a state up to roundoff; only the
    /// Hermitian part is kept.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        Self {
            mat: mat.symmetrized(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Projector onto the `k`-th computational basis vector.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut diag = vec![0.0; dim];
        diag[k] = 1.0;
        Self {
            mat: ComplexMatrix::from_real_diagonal(&diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat.get(row, col)
    }

    /// `Re(rho) = (rho + rho*) / 2`, the entrywise real part.
    pub fn real_part(&self) -> Self {
        Self {
            mat: self.mat.real_part(),
        }
    }

    /// Entrywise complex conjugate `rho*` (equal to the transpose).
    pub fn conjugate(&self) -> Self {
        Self {
            mat: self.mat.conj(),
        }
    }

    pub fn max_imag(&self) -> f64 {
        self.mat.max_imag()
    }

    /// True when every imaginary part is at most `tol` in modulus.
    pub fn is_real_within(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    pub fn is_real(&self) -> bool {
        self.is_real_within(REAL_TOL)
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        self.check_dim(other)?;
        let m = &self.mat.scale(lambda) + &other.mat.scale(1.0 - lambda);
        Ok(Self::from_trusted(m))
    }

    /// `p * self (+) (1 - p) * other` on the direct sum of the two spaces.
    pub fn direct_sum(&self, other: &Self, p: f64) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::<C64>::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a))
            .copy_from(&(self.mat.as_matrix() * C64::new(p, 0.0)));
        m.view_mut((a, a), (b, b))
            .copy_from(&(other.mat.as_matrix() * C64::new(1.0 - p, 0.0)));
        Self::from_trusted(ComplexMatrix::from_matrix_unchecked(m))
    }

    /// Clamped ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::psd_spectrum(&self.mat).expect("density matrix spectrum")
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amp: Vec<C64>,
}

impl PureState {
    /// Accepts `amp` if its Euclidean norm is 1 within `1e-12`.
    pub fn new(amp: Vec<C64>) -> Result<Self> {
        if amp.is_empty() {
            return Err(Error::BadDimension { dim: 0, min: 1 });
        }
        let norm = vec_norm(&amp);
        if !norm.is_finite() || (norm - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amp })
    }

    /// Rescales `amp` to unit norm.
    pub fn normalized(amp: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amp);
        if amp.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amp: amp.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub(crate) fn from_trusted(amp: Vec<C64>) -> Self {
        Self { amp }
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }

    pub fn conjugate(&self) -> Self {
        Self {
            amp: self.amp.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `<psi*|psi> = sum_i psi_i^2`.
    pub fn conjugate_overlap(&self) -> C64 {
        self.amp.iter().map(|z| z * z).sum()
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| self.amp[i] * self.amp[j].conj());
        DensityMatrix::from_trusted(ComplexMatrix::from_matrix_unchecked(m))
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Qubit Bloch vector `r` with `rho = (I + r . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !norm_sq.is_finite() || norm_sq > 1.0 + BLOCH_TOL {
            return Err(Error::BlochOutOfBall {
                norm: norm_sq.sqrt(),
            });
        }
        Ok(Self { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `1 - |r|^2`, snapped to zero within [`PURE_SNAP`].
    pub fn mixedness(&self) -> f64 {
        snap_mixedness(self.norm_sq())
    }

    /// Density matrix `(I + r . sigma) / 2`.
    pub fn to_density(&self) -> DensityMatrix {
        let (x, y, z) = (self.x, self.y, self.z);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.5 * (1.0 + z), 0.0),
                C64::new(0.5 * x, -0.5 * y),
                C64::new(0.5 * x, 0.5 * y),
                C64::new(0.5 * (1.0 - z), 0.0),
            ],
        );
        DensityMatrix::from_trusted(ComplexMatrix::from_matrix_unchecked(m))
    }

    /// `r_k = Tr(rho sigma_k)`.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                found: rho.dim(),
            });
        }
        let off = rho.get(1, 0);
        let x = 2.0 * off.re;
        let y = 2.0 * off.im;
        let z = rho.get(0, 0).re - rho.get(1, 1).re;
        // a valid state always lands in the ball up to roundoff
        let n = (x * x + y * y + z * z).sqrt();
        let s = if n > 1.0 { 1.0 / n } else { 1.0 };
        Ok(Self {
            x: x * s,
            y: y * s,
            z: z * s,
        })
    }
}

/// `1 - r_sq` clamped at zero and snapped to zero within [`PURE_SNAP`].
pub fn snap_mixedness(r_sq: f64) -> f64 {
    let m = 1.0 - r_sq;
    if m < PURE_SNAP {
        0.0
    } else {
        m
    }
}

/// `(I + r . sigma) / 2`.
pub fn from_bloch(r: &BlochVector) -> DensityMatrix {
    r.to_density()
}

/// Bloch vector of a qubit state.
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    BlochVector::from_density(rho)
}

/// `Re(rho)`.
pub fn real_part(rho: &DensityMatrix) -> DensityMatrix {
    rho.real_part()
}

/// `rho*`.
pub fn conjugate(rho: &DensityMatrix) -> DensityMatrix {
    rho.conjugate()
}

/// The maximally imaginary qubit state `|+i> = (|0> + i|1>)/sqrt(2)`.
pub fn plus_i() -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PureState::from_trusted(vec![C64::new(s, 0.0), C64::new(0.0, s)])
}

/// `p |+i><+i| + (1 - p) I/2`.
pub fn plus_i_mixture(p: f64) -> Result<DensityMatrix> {
    plus_i()
        .projector()
        .mix(&DensityMatrix::maximally_mixed(2), p)
}
