//! Bounds and complementarity relations as checkable reports.
//!
//! Each check evaluates both sides of an inequality for one state and returns
//! a [`BoundReport`]. [`run_audit`] applies a list of checks to a seeded
//! random ensemble. The `brute_*` oracles solve the underlying optimization
//! problems numerically, independent of the closed forms.

mod audit;
mod bounds;
mod oracles;

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

pub use audit::{
    decile_min_slack, qutrit_scatter, run_audit, AuditConfig, CheckKind, CheckSummary, DecileSlack,
    EnsembleAudit, ScatterPoint,
};
pub use bounds::{
    check_lemma1, check_pure_complementarity, check_pure_complementarity_with,
    check_qubit_complementarity, check_qutrit_complementarity, check_sandwich_mg,
    check_trace_norm_bounds, check_tsallis_corollary, lemma1_fidelity_bounds, lemma2_maxu_bound,
    mub_sum, qubit_complementarity_rhs, trace_norm_lower_bound, trace_norm_upper_bound,
    FidelityBracket, QUTRIT_CONSTANT,
};
pub use oracles::{brute_max_fidelity_real_qubit, brute_min_trace_distance_real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Lt,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// Tolerances applied when judging reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Non-strict inequalities between measures.
    pub bound: f64,
    /// Equalities.
    pub equality: f64,
    /// Strict inequalities pass when `slack > -strict`.
    pub strict: f64,
    /// A strict inequality is reported as strictly satisfied when `slack > strict_margin`.
    pub strict_margin: f64,
    /// The fidelity bracket and cap on `F(rho, Re rho)^2`.
    pub lemma: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            bound: 1e-8,
            equality: 1e-8,
            strict: 1e-9,
            strict_margin: 1e-12,
            lemma: 1e-9,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 5] = ["bound", "equality", "strict", "strict_margin", "lemma"];

    /// Overrides one tolerance by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "bound" => &mut self.bound,
            "equality" => &mut self.equality,
            "strict" => &mut self.strict,
            "strict_margin" => &mut self.strict_margin,
            "lemma" => &mut self.lemma,
            _ => return Err(Error::UnknownTolerance(key.to_string())),
        };
        *slot = value;
        Ok(())
    }
}

/// One evaluated relation `lhs (relation) rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub state_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// Signed margin by which the relation holds; negative means violated.
    /// Equalities report `-|lhs - rhs|`.
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl BoundReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, relation: Relation, tolerance: f64) -> Self {
        let slack = match relation {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge | Relation::Gt => lhs - rhs,
            Relation::Eq => -(lhs - rhs).abs(),
        };
        let pass = match relation {
            Relation::Eq | Relation::Le | Relation::Ge => slack >= -tolerance,
            Relation::Lt | Relation::Gt => slack > -tolerance,
        };
        Self {
            name: name.to_string(),
            state_id: String::new(),
            lhs,
            rhs,
            relation,
            slack,
            tolerance,
            pass,
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.state_id = id.into();
        self
    }

    /// Both sides agree within the tolerance.
    pub fn tight(&self) -> bool {
        (self.lhs - self.rhs).abs() <= self.tolerance
    }

    /// Strict satisfaction beyond `margin`.
    pub fn strictly_holds(&self, margin: f64) -> bool {
        self.slack > margin
    }
}
