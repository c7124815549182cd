use super::{check_alpha, fidelity};
use crate::linalg;
use crate::states::DensityMatrix;
use crate::Result;

/// Weight of `rho` on a null direction of `sigma` above which the relative
/// entropy is infinite.
const SUPPORT_TOL: f64 = 1e-10;

/// A distance-like functional `D(rho, sigma)` between states of equal
/// dimension.
///
/// [`measure_from_divergence`] turns one into an imaginarity measure. The
/// resulting measure is only meaningful if `D` is faithful, contractive
/// under CPTP maps and jointly convex; none of that is checked here.
pub trait Divergence {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64>;
}

impl<F> Divergence for F
where
    F: Fn(&DensityMatrix, &DensityMatrix) -> Result<f64>,
{
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        self(rho, sigma)
    }
}

/// `1 - F(rho, sigma)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Infidelity;

impl Divergence for Infidelity {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        Ok(1.0 - fidelity(rho, sigma)?)
    }
}

/// `||rho - sigma||_tr` (no factor 1/2).
#[derive(Debug, Clone, Copy, Default)]
pub struct TraceNormDistance;

impl Divergence for TraceNormDistance {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        rho.check_dim(sigma)?;
        Ok(linalg::trace_norm(&(rho.matrix() - sigma.matrix())))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RelativeEntropy;

impl Divergence for RelativeEntropy {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        relative_entropy(rho, sigma)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tsallis(pub f64);

impl Divergence for Tsallis {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        tsallis_divergence(rho, sigma, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Gqjsd(pub f64);

impl Divergence for Gqjsd {
    fn divergence(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        gqjsd(rho, sigma, self.0)
    }
}

/// `D(rho, Re rho)`.
pub fn measure_from_divergence<D: Divergence + ?Sized>(rho: &DensityMatrix, d: &D) -> Result<f64> {
    d.divergence(rho, &rho.real_part())
}

/// Umegaki relative entropy `Tr rho (log rho - log sigma)` in bits; infinite
/// when the support of `rho` is not inside that of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_dim(sigma)?;
    let eig = linalg::psd_eig(sigma.matrix())?;
    let v = eig.eigenvectors.as_matrix();
    let r = rho.matrix().as_matrix();
    let mut cross = 0.0;
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        let col = v.column(k);
        let weight = (col.adjoint() * r * col)[(0, 0)].re;
        if lam > 0.0 {
            cross += weight * lam.log2();
        } else if weight > SUPPORT_TOL {
            return Ok(f64::INFINITY);
        }
    }
    let neg_entropy: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum();
    Ok(neg_entropy - cross)
}

/// Tsallis relative entropy `(Tr(rho^a sigma^(1-a)) - 1) / (a - 1)`, `a` in `(0, 1)`.
pub fn tsallis_divergence(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    rho.check_dim(sigma)?;
    let a = linalg::mat_pow_psd(rho.matrix(), alpha)?;
    let b = linalg::mat_pow_psd(sigma.matrix(), 1.0 - alpha)?;
    let t = a.trace_product(&b).re;
    Ok((t - 1.0) / (alpha - 1.0))
}

/// Generalized quantum Jensen-Shannon divergence
/// `(D_a(rho || m) + D_a(sigma || m)) / 2` with `m = (rho + sigma) / 2`.
pub fn gqjsd(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<f64> {
    let m = rho.mix(sigma, 0.5)?;
    Ok(0.5 * (tsallis_divergence(rho, &m, alpha)? + tsallis_divergence(sigma, &m, alpha)?))
}
