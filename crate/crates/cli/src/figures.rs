//! Datasets behind the five figures. Every row is re-checked against the
//! relation it illustrates while it is generated.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use imkit::measures::{m_g, m_g_prime, m_re, m_re_qubit_bloch, m_t_half, m_tr, purity};
use imkit::relations::qutrit_scatter;
use imkit::relations::{check_qubit_complementarity, qubit_complementarity_rhs};
use imkit::relations::{check_trace_norm_bounds, trace_norm_lower_bound, trace_norm_upper_bound};
use imkit::states::plus_i_mixture;
use imkit::{BlochVector, Tolerances};

use crate::table::{Cell, Table};
use crate::CliError;

pub const FIG1_GRID: usize = 201;
/// Points per unit interval on the `p` and `|r|^2` axes.
pub const LINE_STEPS: usize = 100;
pub const FIG5_STATES: usize = 2000;

const MAX_M_RE: f64 = 1.0 - FRAC_1_SQRT_2;
/// Grid points this far outside the unit ball are rounding artifacts.
const BALL_SLACK: f64 = 1e-12;

/// A figure's rows plus the rows that failed their check.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub table: Table,
    pub violations: Vec<String>,
}

pub struct FigureConfig {
    pub seed: u64,
    pub n: Option<usize>,
    pub tolerances: Tolerances,
}

pub fn figure(which: u8, cfg: &FigureConfig) -> Result<Dataset, CliError> {
    match which {
        1 => fig1(&cfg.tolerances),
        2 => fig2(&cfg.tolerances),
        3 => fig3(&cfg.tolerances),
        4 => fig4(&cfg.tolerances),
        5 => fig5(cfg),
        other => Err(CliError::Usage(format!(
            "unknown figure {other}; expected 1 to 5"
        ))),
    }
}

fn grid(k: usize, lo: f64, n: usize) -> f64 {
    lo + (1.0 - lo) * k as f64 / (n - 1) as f64
}

fn line(k: usize) -> f64 {
    k as f64 / LINE_STEPS as f64
}

/// `m_re` over the admissible half-disk `r_y^2 + r_xz^2 <= 1`, placed at
/// azimuth 45 degrees, and over the full `r_z = 0` disk.
fn fig1(tol: &Tolerances) -> Result<Dataset, CliError> {
    let mut points = Vec::new();
    for i in 0..FIG1_GRID {
        let r_y = grid(i, -1.0, FIG1_GRID);
        for j in 0..FIG1_GRID {
            let r_xz = grid(j, 0.0, FIG1_GRID);
            let c = r_xz * FRAC_1_SQRT_2;
            points.push(("half_disk", c, r_y, c));
        }
    }
    for i in 0..FIG1_GRID {
        let r_y = grid(i, -1.0, FIG1_GRID);
        for j in 0..FIG1_GRID {
            points.push(("slice_rz0", grid(j, -1.0, FIG1_GRID), r_y, 0.0));
        }
    }
    points.retain(|&(_, x, y, z)| x * x + y * y + z * z <= 1.0 + BALL_SLACK);

    let rows: Vec<(Vec<Cell>, Option<String>)> = points
        .par_iter()
        .enumerate()
        .map(|(idx, &(series, x, y, z))| {
            let r = BlochVector::new(x, y, z).expect("grid point inside the ball");
            let fast = m_re_qubit_bloch(&r);
            let generic = m_re(&r.to_density());
            let r_xz = x.hypot(z);
            let bad = (fast - generic).abs() > tol.equality
                || fast < -tol.bound
                || fast > MAX_M_RE + tol.bound;
            let row = vec![series.into(), x.into(), y.into(), z.into(), r_xz.into(), fast.into()];
            let msg = bad.then(|| {
                format!("fig1 row {idx} ({series}, r = ({x}, {y}, {z})): closed form {fast} vs generic {generic}")
            });
            (row, msg)
        })
        .collect();
    Ok(collect(
        ["series", "r_x", "r_y", "r_z", "r_xz", "m_re"],
        rows,
    ))
}

/// `p |+i><+i| + (1 - p) I/2` against the closed forms of `m_g` and `m_re`.
fn fig2(tol: &Tolerances) -> Result<Dataset, CliError> {
    let mut rows = Vec::new();
    for k in 0..=LINE_STEPS {
        let p = line(k);
        let rho = plus_i_mixture(p).map_err(CliError::Core)?;
        let s = (1.0 - p * p).sqrt();
        let (g_closed, re_closed) = ((1.0 - s) / 2.0, 1.0 - ((s + 1.0) / 2.0).sqrt());
        let (g, t, re, gp) = (m_g(&rho), 0.5 * m_t_half(&rho), m_re(&rho), m_g_prime(&rho));
        let worst = [g - g_closed, t - g_closed, re - re_closed, gp - re_closed]
            .iter()
            .fold(0.0f64, |a, d| a.max(d.abs()));
        let msg = (worst > tol.equality)
            .then(|| format!("fig2 row {k} (p = {p}): off the closed forms by {worst:e}"));
        rows.push((
            vec![p.into(), g.into(), t.into(), re.into(), gp.into()],
            msg,
        ));
    }
    Ok(collect(
        ["p", "m_g", "m_t_half_over_2", "m_re", "m_g_prime"],
        rows,
    ))
}

/// Trace-norm bounds `f2 <= m_re <= f1` on the same family.
fn fig3(tol: &Tolerances) -> Result<Dataset, CliError> {
    let mut rows = Vec::new();
    for k in 0..=LINE_STEPS {
        let p = line(k);
        let rho = plus_i_mixture(p).map_err(CliError::Core)?;
        let (mtr, pur) = (m_tr(&rho), purity(&rho));
        let f1 = trace_norm_upper_bound(pur, mtr);
        let f2 = trace_norm_lower_bound(2, mtr);
        let [lower, upper, _] = check_trace_norm_bounds(&rho, tol);
        let msg = (!lower.pass || !upper.pass).then(|| {
            format!(
                "fig3 row {k} (p = {p}): f2 = {f2}, m_re = {}, f1 = {f1}",
                lower.rhs
            )
        });
        rows.push((
            vec![
                p.into(),
                pur.into(),
                mtr.into(),
                f1.into(),
                f2.into(),
                lower.rhs.into(),
            ],
            msg,
        ));
    }
    Ok(collect(["p", "purity", "m_tr", "f1", "f2", "m_re"], rows))
}

/// Lower bound of the qubit MUB relation against `|r|^2`, with the left-hand
/// side evaluated along the `y` axis and along the `(1, 1, 1)` diagonal.
fn fig4(tol: &Tolerances) -> Result<Dataset, CliError> {
    let mut rows = Vec::new();
    for k in 0..=LINE_STEPS {
        let r_sq = line(k);
        let r = r_sq.sqrt();
        let d = r / 3f64.sqrt();
        let mut lhs = Vec::new();
        let mut failed = Vec::new();
        for (name, v) in [("y", (0.0, r, 0.0)), ("diag", (d, d, d))] {
            let b = BlochVector::new(v.0, v.1, v.2).map_err(CliError::Core)?;
            let rep = check_qubit_complementarity(&b.to_density(), tol).map_err(CliError::Core)?;
            if !rep.pass || rep.lhs > 3.0 + tol.bound {
                failed.push(format!("{name}: lhs {} vs rhs {}", rep.lhs, rep.rhs));
            }
            lhs.push(rep.lhs);
        }
        let rhs = qubit_complementarity_rhs(r_sq);
        let msg = (!failed.is_empty())
            .then(|| format!("fig4 row {k} (|r|^2 = {r_sq}): {}", failed.join("; ")));
        rows.push((
            vec![r_sq.into(), rhs.into(), lhs[0].into(), lhs[1].into()],
            msg,
        ));
    }
    Ok(collect(["r_sq", "rhs", "lhs_y", "lhs_diag"], rows))
}

/// Full-rank random qutrits: purity against both sides of the qutrit relation.
fn fig5(cfg: &FigureConfig) -> Result<Dataset, CliError> {
    let points = qutrit_scatter(cfg.n.unwrap_or(FIG5_STATES), cfg.seed).map_err(CliError::Core)?;
    let margin = cfg.tolerances.strict;
    let rows = points
        .into_iter()
        .map(|pt| {
            let msg = (pt.slack <= -margin).then(|| {
                format!(
                    "fig5 {}: lhs {} <= rhs {} (slack {:e})",
                    pt.state_id, pt.lhs, pt.rhs, pt.slack
                )
            });
            let row = vec![
                pt.state_id.into(),
                pt.purity.into(),
                pt.lhs.into(),
                pt.rhs.into(),
                pt.slack.into(),
            ];
            (row, msg)
        })
        .collect();
    Ok(collect(["state_id", "purity", "lhs", "rhs", "slack"], rows))
}

fn collect<const N: usize>(columns: [&str; N], rows: Vec<(Vec<Cell>, Option<String>)>) -> Dataset {
    let mut table = Table::new(columns);
    let mut violations = Vec::new();
    for (row, msg) in rows {
        table.push(row);
        violations.extend(msg);
    }
    Dataset { table, violations }
}
