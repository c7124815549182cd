//! Brute-force optimizers for the quantities the closed forms claim to solve.
//! Budgets are fixed so every call is deterministic.

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use nalgebra::DMatrix;
use rand::Rng;

use crate::linalg::{self, ComplexMatrix};
use crate::states::{random, BlochVector, DensityMatrix};
use crate::{Error, Result, C64};

const GRID: usize = 200;
const REFINE_ITERS: usize = 50;
const MAX_MOVES_PER_STEP: usize = 100;
const RESTARTS: usize = 32;
const NM_MAX_ITERS: u64 = 600;
const ORACLE_SEED: u64 = 0x7ace_d157;

/// Fidelity squared between a qubit with Bloch vector `r` and the real state
/// with Bloch vector `(x, 0, z)`, from `F^2 = 2 sqrt(det rho det sigma) + Tr(rho sigma)`.
fn real_qubit_fidelity_sq(r: &BlochVector, x: f64, z: f64) -> f64 {
    let dets = ((1.0 - r.norm_sq()).max(0.0) * (1.0 - x * x - z * z).max(0.0)).sqrt();
    0.5 * (dets + 1.0 + r.x() * x + r.z() * z)
}

fn project_to_disk(x: f64, z: f64) -> (f64, f64) {
    let n = x.hypot(z);
    if n > 1.0 {
        (x / n, z / n)
    } else {
        (x, z)
    }
}

/// Maximizes `F(rho, sigma)` over real qubit states by a 200x200 grid over the
/// x-z disk followed by a shrinking 5x5 pattern search. Returns the maximizer
/// and the fidelity.
pub fn brute_max_fidelity_real_qubit(rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let r = BlochVector::from_density(rho)?;
    let f2 = |x: f64, z: f64| real_qubit_fidelity_sq(&r, x, z);

    let step = 2.0 / (GRID - 1) as f64;
    let mut best = (0.0, 0.0);
    let mut best_val = f2(0.0, 0.0);
    for i in 0..GRID {
        for j in 0..GRID {
            let (x, z) = (-1.0 + i as f64 * step, -1.0 + j as f64 * step);
            if x * x + z * z > 1.0 {
                continue;
            }
            let v = f2(x, z);
            if v > best_val {
                best_val = v;
                best = (x, z);
            }
        }
    }

    let mut h = step;
    for _ in 0..REFINE_ITERS {
        for _ in 0..MAX_MOVES_PER_STEP {
            let mut moved = false;
            let center = best;
            for di in -2..=2 {
                for dj in -2..=2 {
                    let (x, z) = project_to_disk(
                        center.0 + di as f64 * h / 2.0,
                        center.1 + dj as f64 * h / 2.0,
                    );
                    let v = f2(x, z);
                    if v > best_val {
                        best_val = v;
                        best = (x, z);
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        h /= 2.0;
    }

    let sigma = BlochVector::new(best.0, 0.0, best.1)
        .expect("projected onto the disk")
        .to_density();
    Ok((sigma, best_val.clamp(0.0, 1.0).sqrt()))
}

struct RealStateDistance<'a> {
    rho: &'a ComplexMatrix,
    d: usize,
}

impl RealStateDistance<'_> {
    /// `L L^T / Tr(L L^T)` for the lower-triangular `L` packed row by row.
    fn state(&self, p: &[f64]) -> Option<ComplexMatrix> {
        let mut l = DMatrix::<f64>::zeros(self.d, self.d);
        let mut k = 0;
        for i in 0..self.d {
            for j in 0..=i {
                l[(i, j)] = p[k];
                k += 1;
            }
        }
        let s = &l * l.transpose();
        let tr = s.trace();
        (tr > 1e-300)
            .then(|| ComplexMatrix::from_matrix_unchecked(s.map(|x| C64::new(x / tr, 0.0))))
    }
}

impl CostFunction for RealStateDistance<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(match self.state(p) {
            Some(sigma) => linalg::trace_norm(&(self.rho - &sigma)),
            None => 2.0,
        })
    }
}

/// `min ||rho - sigma||_tr` over real states `sigma`, by Nelder-Mead from 32
/// random starts over Cholesky-style factors. Only `d` in {2, 3}.
pub fn brute_min_trace_distance_real(rho: &DensityMatrix) -> Result<f64> {
    let d = rho.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::WrongDimension {
            expected: 3,
            found: d,
        });
    }
    let n = d * (d + 1) / 2;
    let mut rng = random::seeded_rng(ORACLE_SEED);
    let mut best = f64::INFINITY;
    for _ in 0..RESTARTS {
        let x0: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let simplex: Vec<Vec<f64>> = std::iter::once(x0.clone())
            .chain((0..n).map(|i| {
                let mut v = x0.clone();
                v[i] += 0.5;
                v
            }))
            .collect();
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-12)
            .expect("valid tolerance");
        let problem = RealStateDistance {
            rho: rho.matrix(),
            d,
        };
        let res = Executor::new(problem, solver)
            .configure(|s| s.max_iters(NM_MAX_ITERS))
            .run()
            .map_err(|_| Error::NoConvergence {
                iterations: NM_MAX_ITERS as usize,
            })?;
        best = best.min(res.state().best_cost);
    }
    Ok(best)
}
