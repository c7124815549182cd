use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;

use super::DensityMatrix;
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Max `|U^dagger U - I|` accepted for a basis.
pub const BASIS_TOL: f64 = 1e-10;

/// Orthonormal basis stored as the columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    label: String,
    u: ComplexMatrix,
}

impl OrthonormalBasis {
    pub fn new(label: impl Into<String>, u: ComplexMatrix) -> Result<Self> {
        let d = u.dim();
        let defect = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(d));
        if defect > BASIS_TOL {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(Self {
            label: label.into(),
            u,
        })
    }

    /// Builds a basis from its vectors (each becomes a column).
    pub fn from_vectors(label: impl Into<String>, vectors: &[Vec<C64>]) -> Result<Self> {
        let d = vectors.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        let m = DMatrix::from_fn(d, d, |i, j| vectors[j][i]);
        Self::new(label, ComplexMatrix::from_matrix(m)?)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// The unitary whose columns are the basis vectors.
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.u.as_matrix().column(k).iter().copied().collect()
    }

    /// `max |U^dagger U - I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        (&self.u.adjoint() * &self.u).max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }

    /// `max |<b_i|c_j>|^2 - 1/d|` over all cross pairs.
    pub fn unbiasedness_defect(&self, other: &Self) -> f64 {
        let overlaps = &self.u.adjoint() * &other.u;
        let target = 1.0 / self.dim() as f64;
        overlaps
            .as_matrix()
            .iter()
            .map(|z| (z.norm_sqr() - target).abs())
            .fold(0.0, f64::max)
    }
}

/// Matrix of `rho` in basis `b`: entries `<b_i|rho|b_j>`.
pub fn change_basis(rho: &DensityMatrix, b: &OrthonormalBasis) -> Result<DensityMatrix> {
    if rho.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: b.dim(),
        });
    }
    let m = &(&b.u.adjoint() * rho.matrix()) * &b.u;
    Ok(DensityMatrix::from_trusted(m))
}

pub fn computational_basis(dim: usize) -> OrthonormalBasis {
    OrthonormalBasis {
        label: "computational".into(),
        u: ComplexMatrix::identity(dim),
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Eigenbases of `sigma_z`, `sigma_y` and `sigma_x`:
/// `B1 = {|0>, |1>}`, `B2 = {(|0> + i|1>)/sqrt2, (|0> - i|1>)/sqrt2}`,
/// `B3 = {(|0> + |1>)/sqrt2, -i(|0> - |1>)/sqrt2}`.
pub fn qubit_mubs() -> [OrthonormalBasis; 3] {
    let s = FRAC_1_SQRT_2;
    let b1 = vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(1., 0.)]];
    let b2 = vec![vec![c(s, 0.), c(0., s)], vec![c(s, 0.), c(0., -s)]];
    let b3 = vec![vec![c(s, 0.), c(s, 0.)], vec![c(0., -s), c(0., s)]];
    [
        OrthonormalBasis::from_vectors("B1", &b1).expect("B1"),
        OrthonormalBasis::from_vectors("B2", &b2).expect("B2"),
        OrthonormalBasis::from_vectors("B3", &b3).expect("B3"),
    ]
}

/// Complete set of four qutrit MUBs built from `omega = exp(2 pi i / 3)`.
pub fn qutrit_mubs() -> [OrthonormalBasis; 4] {
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    let one = c(1., 0.);
    let s = 1.0 / 3f64.sqrt();
    let scaled = |v: [C64; 3]| v.iter().map(|z| z * s).collect::<Vec<_>>();
    let z1 = vec![
        vec![one, c(0., 0.), c(0., 0.)],
        vec![c(0., 0.), one, c(0., 0.)],
        vec![c(0., 0.), c(0., 0.), one],
    ];
    let z2 = vec![
        scaled([one, one, one]),
        scaled([one, w, w2]),
        scaled([one, w2, w]),
    ];
    let z3 = vec![
        scaled([one, w, w]),
        scaled([one, w2, one]),
        scaled([one, one, w2]),
    ];
    let z4 = vec![
        scaled([one, w2, w2]),
        scaled([one, one, w]),
        scaled([one, w, one]),
    ];
    [
        OrthonormalBasis::from_vectors("Z1", &z1).expect("Z1"),
        OrthonormalBasis::from_vectors("Z2", &z2).expect("Z2"),
        OrthonormalBasis::from_vectors("Z3", &z3).expect("Z3"),
        OrthonormalBasis::from_vectors("Z4", &z4).expect("Z4"),
    ]
}

/// The explicit qutrit bases `Y1, Y2, Y3` adapted to
/// `(|0> + |1> + i|2>)/sqrt3`.
pub fn example_y_bases() -> [OrthonormalBasis; 3] {
    let sq2 = 2f64.sqrt();
    let a = (sq2 + 2.0) / 4.0;
    let b = (sq2 - 2.0) / 4.0;
    let s = FRAC_1_SQRT_2;
    let y1 = vec![
        vec![c(1., 0.), c(0., 0.), c(0., 0.)],
        vec![c(0., 0.), c(1., 0.), c(0., 0.)],
        vec![c(0., 0.), c(0., 0.), c(1., 0.)],
    ];
    let y2 = vec![
        vec![c(a, 0.), c(b, 0.), c(0., 0.5)],
        vec![c(b, 0.), c(a, 0.), c(0., 0.5)],
        vec![c(0.5, 0.), c(0.5, 0.), c(0., -s)],
    ];
    let y3 = vec![
        vec![c(a, 0.), c(b, 0.), c(0.5, 0.)],
        vec![c(b, 0.), c(a, 0.), c(0.5, 0.)],
        vec![c(0., -0.5), c(0., -0.5), c(0., s)],
    ];
    [
        OrthonormalBasis::from_vectors("Y1", &y1).expect("Y1"),
        OrthonormalBasis::from_vectors("Y2", &y2).expect("Y2"),
        OrthonormalBasis::from_vectors("Y3", &y3).expect("Y3"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{from_bloch, random, to_bloch, BlochVector};

    #[test]
    fn qubit_catalog_matches_listed_vectors() {
        let [b1, b2, _] = qubit_mubs();
        assert_eq!(b1.unitary(), &ComplexMatrix::identity(2));
        let v = b2.vector(1);
        assert!((v[0] - c(FRAC_1_SQRT_2, 0.)).norm() < 1e-15);
        assert!((v[1] - c(0., -FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn qubit_mubs_are_unbiased() {
        let bases = qubit_mubs();
        for i in 0..3 {
            assert!(bases[i].orthonormality_defect() < 1e-12);
            for j in (i + 1)..3 {
                assert!(bases[i].unbiasedness_defect(&bases[j]) < 1e-12);
            }
        }
    }

    #[test]
    fn qutrit_catalog_matches_listed_vectors() {
        let z = qutrit_mubs();
        let s = 1.0 / 3f64.sqrt();
        for x in z[1].vector(0) {
            assert!((x - c(s, 0.)).norm() < 1e-15);
        }
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let v = z[2].vector(0);
        assert!((v[0] - c(s, 0.)).norm() < 1e-15);
        assert!((v[1] - w * s).norm() < 1e-15);
        assert!((v[2] - w * s).norm() < 1e-15);
    }

    #[test]
    fn qutrit_mubs_are_mutually_unbiased() {
        let z = qutrit_mubs();
        let mut pairs = 0;
        for i in 0..4 {
            assert!(z[i].orthonormality_defect() < 1e-12);
            for j in (i + 1)..4 {
                assert!(z[i].unbiasedness_defect(&z[j]) < 1e-12);
                pairs += 9;
            }
        }
        assert_eq!(pairs, 54);
    }

    #[test]
    fn y_bases_match_listed_amplitudes() {
        let [y1, y2, y3] = example_y_bases();
        assert_eq!(y1.unitary(), &ComplexMatrix::identity(3));
        assert!((y2.vector(0)[0].re - (2f64.sqrt() + 2.0) / 4.0).abs() < 1e-15);
        let v = y2.vector(2);
        assert!((v[0] - c(0.5, 0.)).norm() < 1e-15);
        assert!((v[1] - c(0.5, 0.)).norm() < 1e-15);
        assert!((v[2] - c(0., -FRAC_1_SQRT_2)).norm() < 1e-15);
        for b in [y1, y2, y3] {
            assert!(b.orthonormality_defect() < 1e-12);
        }
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let r = OrthonormalBasis::from_vectors(
            "bad",
            &[vec![c(1., 0.), c(0., 0.)], vec![c(1., 0.), c(0., 0.)]],
        );
        assert!(matches!(r, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn computational_basis_leaves_state_unchanged() {
        let mut rng = random::seeded_rng(2);
        let rho = random::random_mixed(3, 3, &mut rng).unwrap();
        let out = change_basis(&rho, &computational_basis(3)).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn qubit_mub_frames_permute_bloch_components() {
        let r = BlochVector::new(0.3, -0.4, 0.5).unwrap();
        let rho = from_bloch(&r);
        let [_, b2, b3] = qubit_mubs();
        // B2 frame: (r_x, r_y, r_z) -> (r_z, r_x, r_y)
        let r2 = to_bloch(&change_basis(&rho, &b2).unwrap()).unwrap();
        assert!((r2.x() - r.z()).abs() < 1e-14);
        assert!((r2.y() - r.x()).abs() < 1e-14);
        assert!((r2.z() - r.y()).abs() < 1e-14);
        // B3 frame: (r_x, r_y, r_z) -> (r_y, r_z, r_x)
        let r3 = to_bloch(&change_basis(&rho, &b3).unwrap()).unwrap();
        assert!((r3.x() - r.y()).abs() < 1e-14);
        assert!((r3.y() - r.z()).abs() < 1e-14);
        assert!((r3.z() - r.x()).abs() < 1e-14);
    }

    #[test]
    fn change_basis_preserves_spectrum_and_purity() {
        let mut rng = random::seeded_rng(6);
        let z = qutrit_mubs();
        for _ in 0..50 {
            let rho = random::random_mixed(3, 3, &mut rng).unwrap();
            let ev = rho.eigenvalues();
            let p = rho.matrix().trace_product(rho.matrix()).re;
            for b in &z {
                let out = change_basis(&rho, b).unwrap();
                for (a, b) in ev.iter().zip(out.eigenvalues()) {
                    assert!((a - b).abs() < 1e-10);
                }
                let q = out.matrix().trace_product(out.matrix()).re;
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn change_basis_checks_dimension() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            change_basis(&rho, &computational_basis(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
