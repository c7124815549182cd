use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{
    check_lemma1, check_pure_complementarity, check_qubit_complementarity,
    check_qutrit_complementarity, check_sandwich_mg, check_trace_norm_bounds,
    check_tsallis_corollary, lemma2_maxu_bound,
};
use super::{BoundReport, Tolerances};
use crate::measures::purity;
use crate::states::random::{random_mixed, random_pure, substream};
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Pure states for `pure_compl` come from stream indices starting here, so
/// they never collide with the mixed-state streams.
const PURE_STREAM_OFFSET: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Sandwich,
    Tsallis,
    TraceNorm,
    Lemma1,
    Lemma2,
    QubitCompl,
    PureCompl,
    QutritCompl,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Sandwich,
        CheckKind::Tsallis,
        CheckKind::TraceNorm,
        CheckKind::Lemma1,
        CheckKind::Lemma2,
        CheckKind::QubitCompl,
        CheckKind::PureCompl,
        CheckKind::QutritCompl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Sandwich => "sandwich",
            CheckKind::Tsallis => "tsallis",
            CheckKind::TraceNorm => "trace_norm",
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::QubitCompl => "qubit_compl",
            CheckKind::PureCompl => "pure_compl",
            CheckKind::QutritCompl => "qutrit_compl",
        }
    }

    pub fn applies_to(self, dim: usize) -> bool {
        match self {
            CheckKind::QubitCompl => dim == 2,
            CheckKind::QutritCompl => dim == 3,
            _ => dim >= 2,
        }
    }

    /// Every check that can run at dimension `dim`.
    pub fn applicable(dim: usize) -> Vec<CheckKind> {
        Self::ALL
            .into_iter()
            .filter(|c| c.applies_to(dim))
            .collect()
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheckName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub dim: usize,
    pub n_states: usize,
    pub seed: u64,
    pub checks: Vec<CheckKind>,
    /// Ginibre rank of the mixed states; full rank when `None`.
    pub rank: Option<usize>,
    pub tolerances: Tolerances,
}

impl AuditConfig {
    pub fn new(dim: usize, n_states: usize, seed: u64, checks: Vec<CheckKind>) -> Self {
        Self {
            dim,
            n_states,
            seed,
            checks,
            rank: None,
            tolerances: Tolerances::default(),
        }
    }

    /// Same as [`AuditConfig::new`] with checks given by name.
    pub fn from_names(dim: usize, n_states: usize, seed: u64, names: &[&str]) -> Result<Self> {
        let checks = names
            .iter()
            .map(|n| n.parse())
            .collect::<Result<Vec<CheckKind>>>()?;
        Ok(Self::new(dim, n_states, seed, checks))
    }
}

/// Mixed state `index` of an audit ensemble.
pub fn audit_state(dim: usize, rank: usize, seed: u64, index: u64) -> Result<DensityMatrix> {
    random_mixed(dim, rank, &mut substream(seed, index))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleAudit {
    pub seed: u64,
    pub n_states: usize,
    pub dim: usize,
    pub reports: Vec<BoundReport>,
    pub violations: usize,
    pub worst_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub trials: usize,
    pub violations: usize,
    pub worst_slack: f64,
}

impl EnsembleAudit {
    fn from_reports(config: &AuditConfig, reports: Vec<BoundReport>) -> Self {
        let violations = reports.iter().filter(|r| !r.pass).count();
        let worst_slack = reports
            .iter()
            .map(|r| r.slack)
            .fold(f64::INFINITY, f64::min);
        Self {
            seed: config.seed,
            n_states: config.n_states,
            dim: config.dim,
            reports,
            violations,
            worst_slack,
        }
    }

    /// One row per report: `check,state_id,lhs,rhs,slack,pass`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["check", "state_id", "lhs", "rhs", "slack", "pass"])
            .expect("in-memory write");
        for r in &self.reports {
            w.write_record([
                r.name.clone(),
                r.state_id.clone(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.slack.to_string(),
                r.pass.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit serializes")
    }

    /// Per-report-name totals, in order of first appearance.
    pub fn summary(&self) -> Vec<CheckSummary> {
        let mut out: Vec<CheckSummary> = Vec::new();
        for r in &self.reports {
            let pos = match out.iter().position(|s| s.check == r.name) {
                Some(p) => p,
                None => {
                    out.push(CheckSummary {
                        check: r.name.clone(),
                        trials: 0,
                        violations: 0,
                        worst_slack: f64::INFINITY,
                    });
                    out.len() - 1
                }
            };
            let s = &mut out[pos];
            s.trials += 1;
            s.violations += usize::from(!r.pass);
            s.worst_slack = s.worst_slack.min(r.slack);
        }
        out
    }
}

fn state_reports(config: &AuditConfig, rank: usize, index: usize) -> Result<Vec<BoundReport>> {
    let id = format!("s{index}");
    let tol = &config.tolerances;
    let rho = audit_state(config.dim, rank, config.seed, index as u64)?;
    let mut out = Vec::new();
    for check in &config.checks {
        match check {
            CheckKind::Sandwich => out.extend(check_sandwich_mg(&rho, tol)),
            CheckKind::Tsallis => out.push(check_tsallis_corollary(&rho, tol)),
            CheckKind::TraceNorm => out.extend(check_trace_norm_bounds(&rho, tol)),
            CheckKind::Lemma1 => out.extend(check_lemma1(&rho, tol)?),
            CheckKind::Lemma2 => out.push(lemma2_maxu_bound(&rho, tol)),
            CheckKind::QubitCompl => out.push(check_qubit_complementarity(&rho, tol)?),
            CheckKind::QutritCompl => out.push(check_qutrit_complementarity(&rho, tol)?),
            CheckKind::PureCompl => {
                let mut rng = substream(config.seed, PURE_STREAM_OFFSET + index as u64);
                let psi = random_pure(config.dim, &mut rng)?;
                out.push(check_pure_complementarity(&psi, tol)?);
            }
        }
    }
    Ok(out.into_iter().map(|r| r.with_id(id.clone())).collect())
}

/// Applies `config.checks` to `config.n_states` seeded random states.
///
/// State `i` is drawn from its own substream of `config.seed`, so the
/// ensemble does not depend on which checks run or on the thread count.
pub fn run_audit(config: &AuditConfig) -> Result<EnsembleAudit> {
    if config.checks.is_empty() {
        return Err(Error::EmptyChecks);
    }
    if let Some(c) = config.checks.iter().find(|c| !c.applies_to(config.dim)) {
        return Err(Error::CheckNotApplicable {
            check: c.name().to_string(),
            dim: config.dim,
        });
    }
    let rank = config.rank.unwrap_or(config.dim);
    let per_state = (0..config.n_states)
        .into_par_iter()
        .map(|i| state_reports(config, rank, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleAudit::from_reports(
        config,
        per_state.into_iter().flatten().collect(),
    ))
}

/// One qutrit of the complementarity scatter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterPoint {
    pub state_id: String,
    pub purity: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Full-rank Ginibre qutrits with both sides of the qutrit relation. Uses the
/// same states as a `dim = 3` audit with the same seed.
pub fn qutrit_scatter(n: usize, seed: u64) -> Result<Vec<ScatterPoint>> {
    let tol = Tolerances::default();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let rho = audit_state(3, 3, seed, i as u64)?;
            let r = check_qutrit_complementarity(&rho, &tol)?;
            Ok(ScatterPoint {
                state_id: format!("s{i}"),
                purity: purity(&rho),
                lhs: r.lhs,
                rhs: r.rhs,
                slack: r.slack,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecileSlack {
    pub purity_min: f64,
    pub purity_max: f64,
    pub count: usize,
    pub min_slack: f64,
}

/// Minimum slack within each of ten equal-count purity groups, ordered from
/// least to most pure.
pub fn decile_min_slack(points: &[ScatterPoint]) -> Vec<DecileSlack> {
    let mut sorted: Vec<&ScatterPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.purity.total_cmp(&b.purity));
    let n = sorted.len();
    let groups = n.min(10);
    let mut out = Vec::with_capacity(groups);
    let mut start = 0;
    for g in 0..groups {
        let len = n / groups + usize::from(g < n % groups);
        let chunk = &sorted[start..start + len];
        start += len;
        out.push(DecileSlack {
            purity_min: chunk[0].purity,
            purity_max: chunk[len - 1].purity,
            count: len,
            min_slack: chunk.iter().map(|p| p.slack).fold(f64::INFINITY, f64::min),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in CheckKind::ALL {
            assert_eq!(c.name().parse::<CheckKind>().unwrap(), c);
        }
        assert!(matches!(
            "bogus".parse::<CheckKind>(),
            Err(Error::UnknownCheckName(_))
        ));
    }

    #[test]
    fn sandwich_audit_shape() {
        let cfg = AuditConfig::new(2, 100, 7, vec![CheckKind::Sandwich]);
        let audit = run_audit(&cfg).unwrap();
        assert_eq!(audit.reports.len(), 200);
        assert_eq!(audit.violations, 0);
        assert_eq!(audit.summary().len(), 2);
    }

    #[test]
    fn audit_errors() {
        let empty = AuditConfig::new(2, 10, 7, vec![]);
        assert!(matches!(run_audit(&empty), Err(Error::EmptyChecks)));
        let wrong = AuditConfig::new(4, 10, 7, vec![CheckKind::QutritCompl]);
        assert!(matches!(
            run_audit(&wrong),
            Err(Error::CheckNotApplicable { .. })
        ));
        assert!(AuditConfig::from_names(2, 1, 1, &["sandwich", "nope"]).is_err());
    }

    #[test]
    fn states_do_not_depend_on_checks() {
        let a = run_audit(&AuditConfig::new(3, 20, 5, vec![CheckKind::Sandwich])).unwrap();
        let b = run_audit(&AuditConfig::new(
            3,
            20,
            5,
            vec![CheckKind::Tsallis, CheckKind::Sandwich],
        ))
        .unwrap();
        let pick = |x: &EnsembleAudit| {
            x.reports
                .iter()
                .filter(|r| r.name.starts_with("sandwich"))
                .cloned()
                .collect::<Vec<_>>()
        };
        assert_eq!(pick(&a), pick(&b));
    }

    #[test]
    fn csv_is_deterministic() {
        let cfg = AuditConfig::new(2, 30, 9, CheckKind::applicable(2));
        let a = run_audit(&cfg).unwrap().to_csv();
        let b = run_audit(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("check,state_id,lhs,rhs,slack,pass\n"));
        assert!(!a.contains('\r'));
    }

    #[test]
    fn deciles_split_evenly() {
        let pts: Vec<ScatterPoint> = (0..25)
            .map(|i| ScatterPoint {
                state_id: format!("s{i}"),
                purity: (25 - i) as f64,
                lhs: 0.0,
                rhs: 0.0,
                slack: i as f64,
            })
            .collect();
        let d = decile_min_slack(&pts);
        assert_eq!(d.len(), 10);
        assert_eq!(d.iter().map(|x| x.count).sum::<usize>(), 25);
        assert!(d.windows(2).all(|w| w[0].purity_max <= w[1].purity_min));
        assert_eq!(d[0].purity_min, 1.0);
    }
}
