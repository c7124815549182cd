//! One-parameter families evaluated on a uniform grid.

use std::str::FromStr;

use rayon::prelude::*;

use imkit::measures::{m_g, m_g_prime, m_gqjsd, m_re, m_rel, m_t_half, m_tr, m_tsallis, purity};
use imkit::states::plus_i_mixture;
use imkit::{BlochVector, DensityMatrix};

use crate::table::{Cell, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `p |+i><+i| + (1 - p) I/2`, `p` in `[0, 1]`.
    PlusI,
    /// Qubit with Bloch vector `(0, r_y, 0)`, `r_y` in `[0, 1]`.
    BlochRy,
}

impl Family {
    fn parameter(self) -> &'static str {
        match self {
            Family::PlusI => "p",
            Family::BlochRy => "r_y",
        }
    }

    fn state(self, t: f64) -> Result<DensityMatrix, CliError> {
        match self {
            Family::PlusI => plus_i_mixture(t).map_err(CliError::Core),
            Family::BlochRy => Ok(BlochVector::new(0.0, t, 0.0)
                .map_err(CliError::Core)?
                .to_density()),
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "plus-i" => Ok(Family::PlusI),
            "bloch-ry" => Ok(Family::BlochRy),
            _ => Err(CliError::Usage(format!(
                "unknown family `{s}`; expected plus-i or bloch-ry"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Purity,
    MTr,
    MRel,
    MG,
    MGPrime,
    MRe,
    MTHalf,
    MTsallis,
    MGqjsd,
}

impl Measure {
    pub const ALL: [(Measure, &'static str); 9] = [
        (Measure::Purity, "purity"),
        (Measure::MTr, "m_tr"),
        (Measure::MRel, "m_rel"),
        (Measure::MG, "m_g"),
        (Measure::MGPrime, "m_g_prime"),
        (Measure::MRe, "m_re"),
        (Measure::MTHalf, "m_t_half"),
        (Measure::MTsallis, "m_tsallis"),
        (Measure::MGqjsd, "m_gqjsd"),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(m, _)| *m == self)
            .expect("listed")
            .1
    }

    fn takes_alpha(self) -> bool {
        matches!(self, Measure::MTsallis | Measure::MGqjsd)
    }

    fn eval(self, rho: &DensityMatrix, alpha: f64) -> Result<f64, CliError> {
        Ok(match self {
            Measure::Purity => purity(rho),
            Measure::MTr => m_tr(rho),
            Measure::MRel => m_rel(rho),
            Measure::MG => m_g(rho),
            Measure::MGPrime => m_g_prime(rho),
            Measure::MRe => m_re(rho),
            Measure::MTHalf => m_t_half(rho),
            Measure::MTsallis => m_tsallis(rho, alpha).map_err(CliError::Core)?,
            Measure::MGqjsd => m_gqjsd(rho, alpha).map_err(CliError::Core)?,
        })
    }
}

impl FromStr for Measure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(m, _)| *m)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|(_, n)| *n).collect();
                CliError::Usage(format!(
                    "unknown measure `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// `steps + 1` evenly spaced points of `family`, one column per measure
/// (and per alpha for the alpha-dependent ones).
pub fn sweep(
    family: Family,
    measures: &[Measure],
    alphas: &[f64],
    steps: usize,
) -> Result<Table, CliError> {
    if measures.is_empty() {
        return Err(CliError::Usage("sweep needs at least one --measure".into()));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let mut columns = vec![family.parameter().to_string()];
    let mut plan = Vec::new();
    for &m in measures {
        if m.takes_alpha() {
            for &a in alphas {
                columns.push(format!("{}_{a}", m.name()));
                plan.push((m, a));
            }
        } else {
            columns.push(m.name().to_string());
            plan.push((m, f64::NAN));
        }
    }
    let rows = (0..=steps)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 / steps as f64;
            let rho = family.state(t)?;
            let mut row = vec![Cell::Num(t)];
            for &(m, a) in &plan {
                row.push(Cell::Num(m.eval(&rho, a)?));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(columns);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}
