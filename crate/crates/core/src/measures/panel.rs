use rayon::prelude::*;
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{check_alpha, m_g, m_g_prime, m_gqjsd, m_re, m_rel, m_t_half, m_tr, m_tsallis, purity};
use crate::states::{change_basis, DensityMatrix, OrthonormalBasis};
use crate::Result;

pub const DEFAULT_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMeasures {
    pub alpha: f64,
    pub m_tsallis: f64,
    pub m_gqjsd: f64,
}

/// Every measure of one state, as one table row.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurePanel {
    pub id: String,
    pub dim: usize,
    pub purity: f64,
    pub m_tr: f64,
    pub m_rel: f64,
    pub m_g: f64,
    pub m_g_prime: f64,
    pub m_re: f64,
    pub m_t_half: f64,
    pub by_alpha: Vec<AlphaMeasures>,
    /// Basis the state was rewritten in, if not the computational one.
    pub basis_label: Option<String>,
}

impl MeasurePanel {
    pub fn compute(id: impl Into<String>, rho: &DensityMatrix, alphas: &[f64]) -> Result<Self> {
        for &a in alphas {
            check_alpha(a)?;
        }
        let by_alpha = alphas
            .iter()
            .map(|&alpha| {
                Ok(AlphaMeasures {
                    alpha,
                    m_tsallis: m_tsallis(rho, alpha)?,
                    m_gqjsd: m_gqjsd(rho, alpha)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            id: id.into(),
            dim: rho.dim(),
            purity: purity(rho),
            m_tr: m_tr(rho),
            m_rel: m_rel(rho),
            m_g: m_g(rho),
            m_g_prime: m_g_prime(rho),
            m_re: m_re(rho),
            m_t_half: m_t_half(rho),
            by_alpha,
            basis_label: None,
        })
    }

    /// Panel of `rho` rewritten in basis `b`.
    pub fn compute_in_basis(
        id: impl Into<String>,
        rho: &DensityMatrix,
        b: &OrthonormalBasis,
        alphas: &[f64],
    ) -> Result<Self> {
        let mut panel = Self::compute(id, &change_basis(rho, b)?, alphas)?;
        panel.basis_label = Some(b.label().to_string());
        Ok(panel)
    }

    /// CSV header matching [`MeasurePanel::values`].
    pub fn columns(alphas: &[f64]) -> Vec<String> {
        let mut cols: Vec<String> = [
            "id",
            "dim",
            "purity",
            "m_tr",
            "m_rel",
            "m_g",
            "m_g_prime",
            "m_re",
            "m_t_half",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        for a in alphas {
            cols.push(format!("m_tsallis_{a}"));
            cols.push(format!("m_gqjsd_{a}"));
        }
        cols.push("basis".into());
        cols
    }

    fn numeric(&self) -> Vec<(String, f64)> {
        let mut out = vec![
            ("purity".to_string(), self.purity),
            ("m_tr".to_string(), self.m_tr),
            ("m_rel".to_string(), self.m_rel),
            ("m_g".to_string(), self.m_g),
            ("m_g_prime".to_string(), self.m_g_prime),
            ("m_re".to_string(), self.m_re),
            ("m_t_half".to_string(), self.m_t_half),
        ];
        for a in &self.by_alpha {
            out.push((format!("m_tsallis_{}", a.alpha), a.m_tsallis));
            out.push((format!("m_gqjsd_{}", a.alpha), a.m_gqjsd));
        }
        out
    }

    pub fn values(&self) -> Vec<String> {
        let mut row = vec![self.id.clone(), self.dim.to_string()];
        row.extend(self.numeric().into_iter().map(|(_, v)| v.to_string()));
        row.push(self.basis_label.clone().unwrap_or_default());
        row
    }
}

impl Serialize for MeasurePanel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let numeric = self.numeric();
        let mut map = s.serialize_map(Some(numeric.len() + 3))?;
        map.serialize_entry("id", &self.id)?;
        map.serialize_entry("dim", &self.dim)?;
        for (k, v) in &numeric {
            map.serialize_entry(k, v)?;
        }
        map.serialize_entry("basis", &self.basis_label)?;
        map.end()
    }
}

/// Panels for many states, evaluated in parallel, returned in input order.
pub fn compute_panels(
    states: &[(String, DensityMatrix)],
    alphas: &[f64],
) -> Result<Vec<MeasurePanel>> {
    states
        .par_iter()
        .map(|(id, rho)| MeasurePanel::compute(id.clone(), rho, alphas))
        .collect()
}
