//! Seeded random ensembles.
//!
//! Every sampler takes an explicit generator, so a fixed seed always yields the
//! same states. [`substream`] derives independent per-index generators from one
//! master seed.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{BlochVector, DensityMatrix, PureState, RealOperation, RealProjectorSet};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for stream `index` under master `seed`.
pub fn substream(seed: u64, index: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadDimension { dim: d, min: 2 });
    }
    Ok(())
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<PureState> {
    check_dim(d)?;
    let amp: Vec<C64> = (0..d).map(|_| complex_normal(rng)).collect();
    PureState::normalized(amp)
}

/// Random real pure state.
pub fn random_real_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<PureState> {
    check_dim(d)?;
    let amp: Vec<C64> = (0..d).map(|_| C64::new(normal(rng), 0.0)).collect();
    PureState::normalized(amp)
}

fn induced_state(g: DMatrix<C64>) -> DensityMatrix {
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::from_trusted(ComplexMatrix::from_matrix_unchecked(w).scale(1.0 / tr))
}

fn check_rank(d: usize, rank: usize) -> Result<()> {
    check_dim(d)?;
    if rank == 0 || rank > d {
        return Err(Error::BadRank { rank, dim: d });
    }
    Ok(())
}

/// Ginibre-induced mixed state `G G^dagger / Tr(G G^dagger)` with `G` a
/// `d x rank` complex Gaussian matrix.
pub fn random_mixed<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_rank(d, rank)?;
    let g = DMatrix::from_fn(d, rank, |_, _| complex_normal(rng));
    Ok(induced_state(g))
}

/// Real counterpart of [`random_mixed`]: `G` has real Gaussian entries.
pub fn random_real_state<R: Rng + ?Sized>(
    d: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    check_rank(d, rank)?;
    let g = DMatrix::from_fn(d, rank, |_, _| C64::new(normal(rng), 0.0));
    Ok(induced_state(g))
}

/// Uniform sample from the Bloch ball.
pub fn random_bloch_in_ball<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let radius = rng.random::<f64>().cbrt();
    random_bloch_direction(rng, radius)
}

/// Uniformly random direction scaled to `radius` (at most 1).
pub fn random_bloch_direction<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> BlochVector {
    loop {
        let v = [normal(rng), normal(rng), normal(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            let s = radius.min(1.0) / n;
            return BlochVector::new(v[0] * s, v[1] * s, v[2] * s).expect("inside ball");
        }
    }
}

/// Haar-random real orthogonal `n x n` matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Real operation with `n_kraus` Kraus operators cut from the first `d`
/// columns of a Haar-random `(n_kraus d) x (n_kraus d)` orthogonal matrix.
pub fn random_real_channel<R: Rng + ?Sized>(
    d: usize,
    n_kraus: usize,
    rng: &mut R,
) -> Result<RealOperation> {
    if n_kraus == 0 {
        return Err(Error::IncompleteKraus { defect: 1.0 });
    }
    check_dim(d)?;
    let o = random_orthogonal(n_kraus * d, rng);
    let kraus = (0..n_kraus)
        .map(|l| o.view((l * d, 0), (d, d)).into_owned())
        .collect();
    RealOperation::new(kraus)
}

/// Rank-one real projectors onto the columns of a random orthogonal matrix.
pub fn random_real_projectors<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<RealProjectorSet> {
    check_dim(d)?;
    RealProjectorSet::from_orthogonal(&random_orthogonal(d, rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn purity(rho: &DensityMatrix) -> f64 {
        rho.matrix().trace_product(rho.matrix()).re
    }

    #[test]
    fn rank_one_is_pure() {
        let mut rng = seeded_rng(1);
        let rho = random_mixed(3, 1, &mut rng).unwrap();
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_rank_purity_band() {
        let mut rng = seeded_rng(2);
        let mean = (0..2000)
            .map(|_| purity(&random_mixed(3, 3, &mut rng).unwrap()))
            .sum::<f64>()
            / 2000.0;
        assert!(mean > 1.0 / 3.0 && mean < 1.0, "mean purity {mean}");
    }

    #[test]
    fn same_seed_same_state() {
        let a = random_mixed(4, 2, &mut seeded_rng(99)).unwrap();
        let b = random_mixed(4, 2, &mut seeded_rng(99)).unwrap();
        assert_eq!(a, b);
        let p = random_pure(3, &mut substream(5, 17)).unwrap();
        let q = random_pure(3, &mut substream(5, 17)).unwrap();
        assert_eq!(p, q);
        let r = random_pure(3, &mut substream(5, 18)).unwrap();
        assert_ne!(p, r);
    }

    #[test]
    fn bad_rank_and_dimension() {
        let mut rng = seeded_rng(0);
        assert!(matches!(
            random_mixed(3, 0, &mut rng),
            Err(Error::BadRank { .. })
        ));
        assert!(matches!(
            random_mixed(3, 4, &mut rng),
            Err(Error::BadRank { .. })
        ));
        assert!(matches!(
            random_pure(1, &mut rng),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = seeded_rng(7);
        for d in 2..=5 {
            for rank in 1..=d {
                let rho = random_mixed(d, rank, &mut rng).unwrap();
                assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
                let real = random_real_state(d, rank, &mut rng).unwrap();
                assert_eq!(real.max_imag(), 0.0);
            }
        }
    }

    #[test]
    fn orthogonal_sampler_is_orthogonal() {
        let mut rng = seeded_rng(3);
        for n in 2..=8 {
            let o = random_orthogonal(n, &mut rng);
            let defect = (o.transpose() * &o - DMatrix::identity(n, n)).abs().max();
            assert!(defect < 1e-12);
        }
    }

    #[test]
    fn single_kraus_channel_is_rotation() {
        let mut rng = seeded_rng(4);
        let ch = random_real_channel(3, 1, &mut rng).unwrap();
        assert_eq!(ch.kraus().len(), 1);
        let k = &ch.kraus()[0];
        assert!((k.transpose() * k - DMatrix::identity(3, 3)).abs().max() < 1e-12);
    }

    #[test]
    fn random_channels_are_complete() {
        let mut rng = seeded_rng(5);
        for i in 0..100 {
            let ch = random_real_channel(2 + i % 3, 1 + i % 4, &mut rng).unwrap();
            assert!(ch.completeness_defect() < 1e-10);
        }
        let a = random_real_channel(3, 2, &mut seeded_rng(42)).unwrap();
        let b = random_real_channel(3, 2, &mut seeded_rng(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_ball_samples_stay_inside() {
        let mut rng = seeded_rng(10);
        for _ in 0..1000 {
            assert!(random_bloch_in_ball(&mut rng).norm_sq() <= 1.0 + 1e-12);
        }
    }
}
