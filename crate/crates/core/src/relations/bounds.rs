use super::{BoundReport, Relation, Tolerances};
use crate::linalg::{self, ComplexMatrix};
use crate::measures::{fidelity, m_g, m_re, m_re_pure, m_re_under_basis, m_t_half, m_tr, purity};
use crate::states::{
    lift_qubit_mubs, qubit_mubs, qutrit_mubs, real_compress, snap_mixedness, BlochVector,
    DensityMatrix, OrthonormalBasis, PureState,
};
use crate::{Error, Result};

/// Constant of the qutrit complementarity relation.
pub const QUTRIT_CONSTANT: f64 = 31.0 / 14.0;

/// `E_2(rho Re rho)` below this is treated as zero; its square root would
/// otherwise turn roundoff into a visible shift of the lower bound.
const E2_ROUNDOFF: f64 = 1e-14;
/// `E_2` below `-NEGATIVE_MINOR_TOL` signals a numerical problem.
const NEGATIVE_MINOR_TOL: f64 = 1e-10;

/// `M_Re <= M_g <= 1 - (1 - M_Re)^2`.
pub fn check_sandwich_mg(rho: &DensityMatrix, tol: &Tolerances) -> [BoundReport; 2] {
    let mre = m_re(rho);
    let mg = m_g(rho);
    [
        BoundReport::new("sandwich_lower", mre, mg, Relation::Le, tol.bound),
        BoundReport::new(
            "sandwich_upper",
            mg,
            1.0 - (1.0 - mre).powi(2),
            Relation::Le,
            tol.bound,
        ),
    ]
}

/// `M_Re <= M_T,1/2 / 2`.
pub fn check_tsallis_corollary(rho: &DensityMatrix, tol: &Tolerances) -> BoundReport {
    BoundReport::new(
        "tsallis_corollary",
        m_re(rho),
        0.5 * m_t_half(rho),
        Relation::Le,
        tol.bound,
    )
}

/// `f2 = 1 - [1/d + sqrt((d-1)^2 - (d-1) M_tr^2) / d]^(1/2)`.
pub fn trace_norm_lower_bound(d: usize, mtr: f64) -> f64 {
    let d = d as f64;
    let inner = ((d - 1.0).powi(2) - (d - 1.0) * mtr * mtr).max(0.0).sqrt();
    1.0 - (1.0 / d + inner / d).sqrt()
}

/// `f1 = 1 - (P - M_tr^2)^(1/2)`.
pub fn trace_norm_upper_bound(purity: f64, mtr: f64) -> f64 {
    1.0 - (purity - mtr * mtr).max(0.0).sqrt()
}

/// `f2 <= M_Re <= f1` and `(1 - M_Re)^2 + M_tr^2 >= P`.
pub fn check_trace_norm_bounds(rho: &DensityMatrix, tol: &Tolerances) -> [BoundReport; 3] {
    let mre = m_re(rho);
    let mtr = m_tr(rho);
    let p = purity(rho);
    [
        BoundReport::new(
            "trace_norm_lower",
            trace_norm_lower_bound(rho.dim(), mtr),
            mre,
            Relation::Le,
            tol.bound,
        ),
        BoundReport::new(
            "trace_norm_upper",
            mre,
            trace_norm_upper_bound(p, mtr),
            Relation::Le,
            tol.bound,
        ),
        BoundReport::new(
            "purity_relation",
            (1.0 - mre).powi(2) + mtr * mtr,
            p,
            Relation::Ge,
            tol.bound,
        ),
    ]
}

/// `L <= F(rho, Re rho)^2 <= U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityBracket {
    pub lower: f64,
    pub fidelity_sq: f64,
    pub upper: f64,
}

/// Principal-minor bracket of `F(rho, Re rho)^2`:
/// `U = P - h/4 + sqrt((1 - P)(1 - P + h/4))`, `L = P - h/4 + 2 sqrt(E_2(rho Re rho))`
/// with `h = ||rho - rho*||_HS^2`.
pub fn lemma1_fidelity_bounds(rho: &DensityMatrix) -> Result<FidelityBracket> {
    let re = rho.real_part();
    let p = purity(rho);
    let diff: ComplexMatrix = rho.matrix() - rho.conjugate().matrix();
    let q = linalg::hs_norm(&diff).powi(2) / 4.0;
    let e2 = linalg::e2_sum_principal_minors(&(rho.matrix() * re.matrix())).re;
    if e2 < -NEGATIVE_MINOR_TOL {
        return Err(Error::NegativeMinorSum { value: e2 });
    }
    let e2 = if e2 < E2_ROUNDOFF { 0.0 } else { e2 };
    let mixedness = (1.0 - p).max(0.0);
    let f = fidelity(rho, &re)?;
    Ok(FidelityBracket {
        lower: p - q + 2.0 * e2.sqrt(),
        fidelity_sq: f * f,
        upper: p - q + (mixedness * (mixedness + q)).sqrt(),
    })
}

pub fn check_lemma1(rho: &DensityMatrix, tol: &Tolerances) -> Result<[BoundReport; 2]> {
    let b = lemma1_fidelity_bounds(rho)?;
    Ok([
        BoundReport::new(
            "lemma1_lower",
            b.lower,
            b.fidelity_sq,
            Relation::Le,
            tol.lemma,
        ),
        BoundReport::new(
            "lemma1_upper",
            b.fidelity_sq,
            b.upper,
            Relation::Le,
            tol.lemma,
        ),
    ])
}

/// `F(rho, Re rho)^2 <= 1/d + sqrt(4(d-1)^2 - 2d(d-1)(Tr rho^2 - Tr rho rho*)) / (2d)`.
pub fn lemma2_maxu_bound(rho: &DensityMatrix, tol: &Tolerances) -> BoundReport {
    let d = rho.dim() as f64;
    let f = fidelity(rho, &rho.real_part()).expect("equal dimensions");
    let gap = purity(rho) - rho.matrix().trace_product(rho.conjugate().matrix()).re;
    let rad = (4.0 * (d - 1.0).powi(2) - 2.0 * d * (d - 1.0) * gap).max(0.0);
    BoundReport::new(
        "lemma2_cap",
        f * f,
        1.0 / d + rad.sqrt() / (2.0 * d),
        Relation::Le,
        tol.lemma,
    )
}

/// `sum_k (1 - M_Re^{B_k}(rho))^2`.
pub fn mub_sum(rho: &DensityMatrix, bases: &[OrthonormalBasis]) -> Result<f64> {
    bases.iter().try_fold(0.0, |acc, b| {
        Ok(acc + (1.0 - m_re_under_basis(rho, b)?).powi(2))
    })
}

/// `(sqrt((1 - |r|^2)(3 - 2|r|^2)) + 3 + 2|r|^2) / 2`.
pub fn qubit_complementarity_rhs(r_sq: f64) -> f64 {
    let m = snap_mixedness(r_sq);
    ((m * (1.0 + 2.0 * m)).sqrt() + 5.0 - 2.0 * m) / 2.0
}

fn require_dim(rho: &DensityMatrix, expected: usize) -> Result<()> {
    if rho.dim() != expected {
        return Err(Error::WrongDimension {
            expected,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Three-MUB relation for qubits; equality exactly for pure states.
pub fn check_qubit_complementarity(rho: &DensityMatrix, tol: &Tolerances) -> Result<BoundReport> {
    require_dim(rho, 2)?;
    let r = BlochVector::from_density(rho)?;
    Ok(BoundReport::new(
        "qubit_complementarity",
        mub_sum(rho, &qubit_mubs())?,
        qubit_complementarity_rhs(r.norm_sq()),
        Relation::Ge,
        tol.bound,
    ))
}

fn amplitudes_in(psi: &PureState, b: &OrthonormalBasis) -> Result<PureState> {
    if psi.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: psi.dim(),
        });
    }
    let u = b.unitary().as_matrix();
    let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
    Ok(PureState::from_trusted(
        (u.adjoint() * v).iter().copied().collect(),
    ))
}

/// `sum_i (1 - M_Re^{Y_i}(psi))^2 = 5/2` for given bases `Y_i`.
pub fn check_pure_complementarity_with(
    psi: &PureState,
    bases: &[OrthonormalBasis],
    tol: &Tolerances,
) -> Result<BoundReport> {
    let sum = bases.iter().try_fold(0.0, |acc, b| {
        Ok::<_, Error>(acc + (1.0 - m_re_pure(&amplitudes_in(psi, b)?)).powi(2))
    })?;
    Ok(BoundReport::new(
        "pure_complementarity",
        sum,
        2.5,
        Relation::Eq,
        tol.equality,
    ))
}

/// Pure-state relation with the bases built by compressing `psi` into a
/// qubit subspace.
pub fn check_pure_complementarity(psi: &PureState, tol: &Tolerances) -> Result<BoundReport> {
    let bases = lift_qubit_mubs(&real_compress(psi))?;
    check_pure_complementarity_with(psi, &bases, tol)
}

/// `sum_k (1 - M_Re^{Z_k})^2 > (31/14) P` over the four qutrit MUBs.
pub fn check_qutrit_complementarity(rho: &DensityMatrix, tol: &Tolerances) -> Result<BoundReport> {
    require_dim(rho, 3)?;
    Ok(BoundReport::new(
        "qutrit_complementarity",
        mub_sum(rho, &qutrit_mubs())?,
        QUTRIT_CONSTANT * purity(rho),
        Relation::Gt,
        tol.strict,
    ))
}
