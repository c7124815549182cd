use nalgebra::DMatrix;

use super::DensityMatrix;
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Max `|sum K^T K - I|` for a Kraus set.
pub const KRAUS_TOL: f64 = 1e-10;
/// Imaginary parts below this count as zero when importing Kraus operators.
pub const KRAUS_REAL_TOL: f64 = 1e-12;
/// Projector checks (symmetry, idempotence, rank, resolution of identity).
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Branches with probability below this are dropped.
pub const BRANCH_CUTOFF: f64 = 1e-12;

/// CPTP map whose Kraus operators have real entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealOperation {
    kraus: Vec<DMatrix<f64>>,
}

impl RealOperation {
    /// Accepts `d' x d` real Kraus operators with `sum K^T K = I_d`.
    pub fn new(kraus: Vec<DMatrix<f64>>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or(Error::IncompleteKraus { defect: 1.0 })?;
        let (rows, cols) = first.shape();
        if let Some(k) = kraus.iter().find(|k| k.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: k.ncols(),
            });
        }
        let op = Self { kraus };
        let defect = op.completeness_defect();
        if defect > KRAUS_TOL {
            return Err(Error::IncompleteKraus { defect });
        }
        Ok(op)
    }

    /// Imports complex Kraus operators whose imaginary parts vanish.
    pub fn from_complex(kraus: Vec<DMatrix<C64>>) -> Result<Self> {
        let max_imag = kraus
            .iter()
            .flat_map(|k| k.iter())
            .map(|z| z.im.abs())
            .fold(0.0, f64::max);
        if max_imag > KRAUS_REAL_TOL {
            return Err(Error::NotReal { max_imag });
        }
        Self::new(kraus.into_iter().map(|k| k.map(|z| z.re)).collect())
    }

    pub fn identity(d: usize) -> Self {
        Self {
            kraus: vec![DMatrix::identity(d, d)],
        }
    }

    /// Complete dephasing in the computational basis.
    pub fn dephasing(d: usize) -> Self {
        let kraus = (0..d)
            .map(|k| {
                let mut m = DMatrix::zeros(d, d);
                m[(k, k)] = 1.0;
                m
            })
            .collect();
        Self { kraus }
    }

    pub fn kraus(&self) -> &[DMatrix<f64>] {
        &self.kraus
    }

    pub fn input_dim(&self) -> usize {
        self.kraus[0].ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn completeness_defect(&self) -> f64 {
        let d = self.input_dim();
        let sum = self
            .kraus
            .iter()
            .fold(DMatrix::<f64>::zeros(d, d), |acc, k| {
                acc + k.transpose() * k
            });
        (sum - DMatrix::identity(d, d)).abs().max()
    }

    fn conjugate_by(k: &DMatrix<f64>, rho: &DensityMatrix) -> DMatrix<C64> {
        let kc = k.map(|x| C64::new(x, 0.0));
        &kc * rho.matrix().as_matrix() * kc.transpose()
    }

    /// Normalized branch states `K_l rho K_l^T / p_l` with their probabilities;
    /// branches with `p_l < 1e-12` are dropped.
    pub fn branches(&self, rho: &DensityMatrix) -> Result<Vec<(f64, DensityMatrix)>> {
        self.check_input(rho)?;
        Ok(self
            .kraus
            .iter()
            .filter_map(|k| {
                let m = Self::conjugate_by(k, rho);
                let p = m.trace().re;
                (p >= BRANCH_CUTOFF).then(|| {
                    let state = ComplexMatrix::from_matrix_unchecked(m).scale(1.0 / p);
                    (p, DensityMatrix::from_trusted(state))
                })
            })
            .collect())
    }

    fn check_input(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

/// `Phi(rho) = sum_l K_l rho K_l^T`.
pub fn apply_channel(rho: &DensityMatrix, phi: &RealOperation) -> Result<DensityMatrix> {
    phi.check_input(rho)?;
    let d = phi.output_dim();
    let out = phi
        .kraus
        .iter()
        .fold(DMatrix::<C64>::zeros(d, d), |acc, k| {
            acc + RealOperation::conjugate_by(k, rho)
        });
    Ok(DensityMatrix::from_trusted(
        ComplexMatrix::from_matrix_unchecked(out),
    ))
}

/// Complete set of `d` rank-one projectors with real entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealProjectorSet {
    projectors: Vec<DMatrix<f64>>,
}

impl RealProjectorSet {
    pub fn new(projectors: Vec<DMatrix<f64>>) -> Result<Self> {
        let d = projectors.first().map(|p| p.nrows()).unwrap_or(0);
        if d == 0 || projectors.len() != d {
            return Err(Error::InvalidProjectors {
                reason: format!("expected {d} projectors, got {}", projectors.len()),
            });
        }
        let mut sum = DMatrix::<f64>::zeros(d, d);
        for (i, p) in projectors.iter().enumerate() {
            if p.shape() != (d, d) {
                return Err(Error::InvalidProjectors {
                    reason: format!("projector {i} has shape {:?}", p.shape()),
                });
            }
            let asym = (p - p.transpose()).abs().max();
            let idem = (p * p - p).abs().max();
            let rank = (p.trace() - 1.0).abs();
            if asym > PROJECTOR_TOL || idem > PROJECTOR_TOL || rank > PROJECTOR_TOL {
                return Err(Error::InvalidProjectors {
                    reason: format!(
                        "projector {i}: asymmetry {asym:e}, idempotence {idem:e}, rank defect {rank:e}"
                    ),
                });
            }
            sum += p;
        }
        let defect = (sum - DMatrix::identity(d, d)).abs().max();
        if defect > PROJECTOR_TOL {
            return Err(Error::InvalidProjectors {
                reason: format!("projectors do not sum to identity (defect {defect:e})"),
            });
        }
        Ok(Self { projectors })
    }

    /// Projectors onto the columns of a real orthogonal matrix.
    pub fn from_orthogonal(o: &DMatrix<f64>) -> Result<Self> {
        let projectors = o
            .column_iter()
            .map(|v| v * v.transpose())
            .collect::<Vec<_>>();
        Self::new(projectors)
    }

    pub fn computational(d: usize) -> Self {
        Self::from_orthogonal(&DMatrix::identity(d, d)).expect("identity projectors")
    }

    pub fn projectors(&self) -> &[DMatrix<f64>] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors.len()
    }
}

/// Outcome of a projective dephasing.
#[derive(Debug, Clone)]
pub struct Dephased {
    /// `sum_i Pi_i rho Pi_i`.
    pub state: DensityMatrix,
    /// `(p_i, rho_i)` with `rho_i = Pi_i rho Pi_i / p_i`; zero-probability
    /// branches omitted.
    pub branches: Vec<(f64, DensityMatrix)>,
}

/// Dephases `rho` with the real projectors `p`.
pub fn dephase(rho: &DensityMatrix, p: &RealProjectorSet) -> Result<Dephased> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: rho.dim(),
        });
    }
    let op = RealOperation {
        kraus: p.projectors.clone(),
    };
    Ok(Dephased {
        state: apply_channel(rho, &op)?,
        branches: op.branches(rho)?,
    })
}
