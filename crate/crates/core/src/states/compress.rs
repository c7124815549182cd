use nalgebra::{DMatrix, DVector};

use super::{qubit_mubs, OrthonormalBasis, PureState};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Residual norm below which a Gram-Schmidt candidate counts as dependent.
const GS_TOL: f64 = 1e-10;
/// Max `|O^T O - I|` accepted by [`lift_qubit_mubs`].
const ORTHOGONAL_TOL: f64 = 1e-10;

/// Real orthogonal `O` such that `O psi` is supported on the first two
/// coordinates.
///
/// The first two rows span `{Re(psi), Im(psi)}`; the remaining rows complete
/// an orthonormal set using canonical vectors chosen by largest residual.
pub fn real_compress(psi: &PureState) -> DMatrix<f64> {
    let d = psi.dim();
    let mut u = DVector::from_iterator(d, psi.amplitudes().iter().map(|z| z.re));
    let mut v = DVector::from_iterator(d, psi.amplitudes().iter().map(|z| z.im));
    if u.norm() < GS_TOL {
        std::mem::swap(&mut u, &mut v);
    }

    let mut rows: Vec<DVector<f64>> = Vec::with_capacity(d);
    rows.push(&u / u.norm());
    let w = &v - &rows[0] * rows[0].dot(&v);
    let wn = w.norm();
    if wn >= GS_TOL {
        rows.push(w / wn);
    }

    while rows.len() < d {
        let (best, residual) = (0..d)
            .map(|k| {
                let mut r = DVector::<f64>::zeros(d);
                r[k] = 1.0;
                for q in &rows {
                    r -= q * q[k];
                }
                r
            })
            .map(|r| {
                let n = r.norm();
                (r, n)
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("d > 0");
        // re-orthogonalize once more for stability
        let mut r = best / residual;
        for q in &rows {
            r -= q * q.dot(&r);
        }
        let n = r.norm();
        rows.push(r / n);
    }

    DMatrix::from_fn(d, d, |i, j| rows[i][j])
}

/// Bases `Y_i = O^T (B_i (+) I_{d-2})` built from the qubit MUBs `B_i`.
pub fn lift_qubit_mubs(o: &DMatrix<f64>) -> Result<[OrthonormalBasis; 3]> {
    let d = o.nrows();
    if !o.is_square() || d < 2 {
        return Err(Error::BadDimension { dim: d, min: 2 });
    }
    let defect = (o.transpose() * o - DMatrix::identity(d, d)).abs().max();
    if defect > ORTHOGONAL_TOL {
        return Err(Error::NotOrthogonal { defect });
    }
    let ot = o.transpose().map(|x| C64::new(x, 0.0));
    let lift = |b: &OrthonormalBasis, label: &str| -> Result<OrthonormalBasis> {
        let mut w = DMatrix::<C64>::identity(d, d);
        w.view_mut((0, 0), (2, 2))
            .copy_from(b.unitary().as_matrix());
        OrthonormalBasis::new(label, ComplexMatrix::from_matrix(&ot * w)?)
    };
    let [b1, b2, b3] = qubit_mubs();
    Ok([lift(&b1, "Y1")?, lift(&b2, "Y2")?, lift(&b3, "Y3")?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::random;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn compressed(o: &DMatrix<f64>, psi: &PureState) -> Vec<C64> {
        let a = DVector::from_column_slice(psi.amplitudes());
        let out = o.map(|x| c(x, 0.)) * a;
        out.iter().copied().collect()
    }

    fn orthogonality_defect(o: &DMatrix<f64>) -> f64 {
        (o.transpose() * o - DMatrix::identity(o.nrows(), o.nrows()))
            .abs()
            .max()
    }

    #[test]
    fn basis_vector_compresses_to_itself() {
        let psi = PureState::new(vec![c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let o = real_compress(&psi);
        let out = compressed(&o, &psi);
        assert!((out[0].norm() - 1.0).abs() < 1e-15);
        assert!(out[1].norm() < 1e-15 && out[2].norm() < 1e-15);
    }

    #[test]
    fn example_qutrit_state_compresses() {
        let s = 1.0 / 3f64.sqrt();
        let psi = PureState::new(vec![c(s, 0.), c(s, 0.), c(0., s)]).unwrap();
        let o = real_compress(&psi);
        assert!(orthogonality_defect(&o) < 1e-12);
        let out = compressed(&o, &psi);
        assert!(out[2].norm() < 1e-12);
        let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_state_compresses_to_real_vector() {
        let mut rng = random::seeded_rng(1);
        let psi = random::random_real_pure(4, &mut rng).unwrap();
        let out = compressed(&real_compress(&psi), &psi);
        assert!(out.iter().all(|z| z.im.abs() < 1e-15));
        assert!(out[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn purely_imaginary_state() {
        let psi = PureState::new(vec![c(0., 0.6), c(0., 0.8), c(0., 0.)]).unwrap();
        let o = real_compress(&psi);
        assert!(orthogonality_defect(&o) < 1e-12);
        assert!(compressed(&o, &psi)[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn random_pure_states_compress() {
        let mut rng = random::seeded_rng(2);
        for d in 3..=5 {
            for _ in 0..1000 {
                let psi = random::random_pure(d, &mut rng).unwrap();
                let o = real_compress(&psi);
                assert!(orthogonality_defect(&o) < 1e-10);
                let tail: f64 = compressed(&o, &psi)[2..]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(tail < 1e-10);
            }
        }
    }

    #[test]
    fn lift_of_identity_is_qubit_catalog() {
        let ys = lift_qubit_mubs(&DMatrix::identity(2, 2)).unwrap();
        for (y, b) in ys.iter().zip(qubit_mubs()) {
            assert!(y.unitary().max_abs_diff(b.unitary()) < 1e-15);
        }
    }

    #[test]
    fn lifted_bases_are_orthonormal() {
        let mut rng = random::seeded_rng(3);
        for d in 3..=5 {
            let psi = random::random_pure(d, &mut rng).unwrap();
            for y in lift_qubit_mubs(&real_compress(&psi)).unwrap() {
                assert!(y.orthonormality_defect() < 1e-10);
            }
        }
    }

    #[test]
    fn lift_rejects_non_orthogonal() {
        let m = DMatrix::from_element(2, 2, 1.0);
        assert!(matches!(
            lift_qubit_mubs(&m),
            Err(Error::NotOrthogonal { .. })
        ));
    }
}
