//! Imaginarity measures.
//!
//! Every measure compares a state with its real part `Re(rho)` or its
//! conjugate `rho*`. Logarithms are base 2. A state that passes
//! [`DensityMatrix::is_real`] scores exactly zero on every measure, so noise
//! never shows up as a tiny negative value.

mod divergence;
mod panel;
mod qubit;

pub use divergence::{
    gqjsd, measure_from_divergence, relative_entropy, tsallis_divergence, Divergence, Gqjsd,
    Infidelity, RelativeEntropy, TraceNormDistance, Tsallis,
};
pub use panel::{compute_panels, MeasurePanel, DEFAULT_ALPHA};
pub use qubit::{
    m_g_qubit_bloch, m_re_qubit_bloch, max_real_fidelity_sq_qubit, optimal_real_state_mg_qubit,
    OptimalRealState,
};

use crate::linalg::{self, ComplexMatrix};
use crate::states::{change_basis, DensityMatrix, OrthonormalBasis, PureState};
use crate::{Error, Result};

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_dim(sigma)?;
    let s = linalg::mat_sqrt_psd(rho.matrix())?;
    let inner = (&(&s * sigma.matrix()) * &s).symmetrized();
    let f: f64 = linalg::psd_spectrum(&inner)?.iter().map(|x| x.sqrt()).sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Affinity `Tr(sqrt(rho) sqrt(sigma))`, clamped to `[0, 1]`.
pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_dim(sigma)?;
    let a = linalg::mat_sqrt_psd(rho.matrix())?;
    let b = linalg::mat_sqrt_psd(sigma.matrix())?;
    Ok(a.trace_product(&b).re.clamp(0.0, 1.0))
}

/// `Tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().trace_product(rho.matrix()).re
}

/// Von Neumann entropy in bits.
pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `1/2 ||rho - sigma||_tr`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_dim(sigma)?;
    Ok(0.5 * linalg::trace_norm(&(rho.matrix() - sigma.matrix())))
}

fn same_dim_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    fidelity(rho, sigma).expect("fidelity of two valid states of equal dimension")
}

fn zero_if_real(rho: &DensityMatrix, f: impl FnOnce() -> f64) -> f64 {
    if rho.is_real() {
        0.0
    } else {
        f().max(0.0)
    }
}

/// Trace-norm imaginarity `1/2 ||rho - rho*||_tr`.
pub fn m_tr(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || {
        let diff: ComplexMatrix = rho.matrix() - rho.conjugate().matrix();
        0.5 * linalg::trace_norm(&diff)
    })
}

/// Relative-entropy imaginarity `S(Re rho) - S(rho)`.
pub fn m_rel(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || vn_entropy(&rho.real_part()) - vn_entropy(rho))
}

/// Geometric imaginarity `(1 - F(rho, rho*)) / 2`.
pub fn m_g(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || {
        0.5 * (1.0 - same_dim_fidelity(rho, &rho.conjugate()))
    })
}

/// `1 - sqrt((1 + F(rho, rho*)) / 2)`.
pub fn m_g_prime(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || {
        1.0 - ((1.0 + same_dim_fidelity(rho, &rho.conjugate())) / 2.0).sqrt()
    })
}

/// `1 - F(rho, Re rho)`.
pub fn m_re(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || {
        measure_from_divergence(rho, &Infidelity).expect("infidelity on equal dimensions")
    })
}

/// `1 - A(rho, rho*)`.
pub fn m_t_half(rho: &DensityMatrix) -> f64 {
    zero_if_real(rho, || {
        1.0 - affinity(rho, &rho.conjugate()).expect("affinity on equal dimensions")
    })
}

/// Tsallis imaginarity `D_alpha(rho || Re rho)`.
pub fn m_tsallis(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(zero_if_real(rho, || {
        measure_from_divergence(rho, &Tsallis(alpha)).expect("tsallis on equal dimensions")
    }))
}

/// `J_alpha(rho, Re rho)`.
pub fn m_gqjsd(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(zero_if_real(rho, || {
        measure_from_divergence(rho, &Gqjsd(alpha)).expect("gqjsd on equal dimensions")
    }))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::BadAlpha { alpha })
    }
}

/// `1 - sqrt((1 + |<psi*|psi>|^2) / 2)`.
pub fn m_re_pure(psi: &PureState) -> f64 {
    let c = psi.conjugate_overlap().norm_sqr();
    (1.0 - ((1.0 + c) / 2.0).sqrt()).max(0.0)
}

/// `(1 - |<psi*|psi>|) / 2`.
pub fn m_g_pure(psi: &PureState) -> f64 {
    (0.5 * (1.0 - psi.conjugate_overlap().norm())).max(0.0)
}

/// `m_re` of `rho` written in basis `b`.
pub fn m_re_under_basis(rho: &DensityMatrix, b: &OrthonormalBasis) -> Result<f64> {
    Ok(m_re(&change_basis(rho, b)?))
}
