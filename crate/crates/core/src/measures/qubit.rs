//! Closed forms for qubits in terms of the Bloch vector.

use crate::states::{BlochVector, DensityMatrix, REAL_TOL};

/// `r_y^2` this close to 1 makes the optimal real state ambiguous.
const DEGENERATE_TOL: f64 = 1e-12;

/// `m_re` of `(I + r . sigma) / 2` without an eigensolver.
pub fn m_re_qubit_bloch(r: &BlochVector) -> f64 {
    if is_real(r) {
        return 0.0;
    }
    let y2 = r.y() * r.y();
    let mixed = r.mixedness();
    let inner = ((mixed * (mixed + y2)).sqrt() + 2.0 - mixed - y2) / 2.0;
    (1.0 - inner.sqrt()).max(0.0)
}

/// `m_g` of `(I + r . sigma) / 2`: `(1 - sqrt(1 - r_y^2)) / 2`.
pub fn m_g_qubit_bloch(r: &BlochVector) -> f64 {
    if is_real(r) {
        return 0.0;
    }
    0.5 * (1.0 - (1.0 - r.y() * r.y()).max(0.0).sqrt())
}

// Im(rho_10) = r_y / 2, so this matches `DensityMatrix::is_real`.
fn is_real(r: &BlochVector) -> bool {
    0.5 * r.y().abs() <= REAL_TOL
}

/// Largest `F^2(rho, sigma)` over real qubit states `sigma`:
/// `(sqrt(1 - r_y^2) + 1) / 2`.
pub fn max_real_fidelity_sq_qubit(r: &BlochVector) -> f64 {
    ((1.0 - r.y() * r.y()).max(0.0).sqrt() + 1.0) / 2.0
}

/// Real qubit state closest to `rho` in fidelity.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRealState {
    pub state: DensityMatrix,
    /// Set when `r_y^2 = 1`: every real state on the x-z disk is then
    /// optimal and `state` is `I/2`.
    pub degenerate: bool,
}

/// `sigma* = (I + x0 sigma_x + z0 sigma_z) / 2` with
/// `(x0, z0) = (r_x, r_z) / sqrt(1 - r_y^2)`.
pub fn optimal_real_state_mg_qubit(r: &BlochVector) -> OptimalRealState {
    let y2 = r.y() * r.y();
    if (1.0 - y2).abs() <= DEGENERATE_TOL {
        return OptimalRealState {
            state: DensityMatrix::maximally_mixed(2),
            degenerate: true,
        };
    }
    let s = (1.0 - y2).sqrt();
    let (mut x0, mut z0) = (r.x() / s, r.z() / s);
    let n = x0.hypot(z0);
    if n > 1.0 {
        x0 /= n;
        z0 /= n;
    }
    let sigma = BlochVector::new(x0, 0.0, z0).expect("inside the unit disk");
    OptimalRealState {
        state: sigma.to_density(),
        degenerate: false,
    }
}
