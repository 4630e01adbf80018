//! One-dimensional parameter sweeps.

use std::fmt;
use std::str::FromStr;

use drgame::{compare_outcomes, ConfigSpec, GameConfig, GameError, Member, OutcomeReport};
use rayon::prelude::*;

use crate::table::{linspace, Cell, Table};

pub const MAX_SWEEP_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    DA,
    DB,
    Beta,
    ManualCost,
}

impl SweepVariable {
    pub const ALL: [SweepVariable; 4] = [
        SweepVariable::DB,
        SweepVariable::DA,
        SweepVariable::Beta,
        SweepVariable::ManualCost,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::DA => "d_A",
            SweepVariable::DB => "d_B",
            SweepVariable::Beta => "beta",
            SweepVariable::ManualCost => "C",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown sweep variable `{s}` (expected one of d_B, d_A, beta, C)"))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("sweep range must satisfy lo < hi, got [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },
    #[error("sweep needs between 2 and {max} points, got {count}")]
    PointCount { count: usize, max: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A uniform grid over one parameter, all others taken from `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub base: ConfigSpec,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, lo: f64, hi: f64, count: usize, base: ConfigSpec) -> Result<Self, SweepError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(SweepError::EmptyRange { lo, hi });
        }
        if !(2..=MAX_SWEEP_POINTS).contains(&count) {
            return Err(SweepError::PointCount {
                count,
                max: MAX_SWEEP_POINTS,
            });
        }
        base.build::<f64>()?;
        Ok(Self {
            variable,
            lo,
            hi,
            count,
            base,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.count)
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub x: f64,
    pub outcome: Result<OutcomeReport<f64>, GameError>,
}

/// Solves every grid point in parallel; rows come back in ascending order.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let base = spec.base.build::<f64>().expect("validated in SweepSpec::new");
    let d_a = base.diversity(Member::A);
    let d_b = base.diversity(Member::B);
    spec.points()
        .into_par_iter()
        .map(|x| {
            let config: Result<GameConfig<f64>, GameError> = match spec.variable {
                SweepVariable::DA => Ok(base.with_diversities(x, d_b)),
                SweepVariable::DB => Ok(base.with_diversities(d_a, x)),
                SweepVariable::ManualCost => base.with_manual_cost(x),
                SweepVariable::Beta => ConfigSpec {
                    beta: x,
                    ..spec.base.clone()
                }
                .build(),
            };
            SweepRow {
                x,
                outcome: config.and_then(|c| compare_outcomes(&c)),
            }
        })
        .collect()
}

pub const RESULT_COLUMNS: [&str; 12] = [
    "alpha_A*",
    "alpha_B*",
    "kind",
    "theta_T*",
    "theta_T_B",
    "e_T*",
    "e_T_B",
    "delta_e_A",
    "delta_e_B",
    "L_T*",
    "L_T_B",
    "failed",
];

/// The result columns of one solved point, `NaN` everywhere on failure.
pub fn result_cells(outcome: &Result<OutcomeReport<f64>, GameError>) -> Vec<Cell> {
    match outcome {
        Ok(r) => vec![
            r.equilibrium.profile.alpha_a.into(),
            r.equilibrium.profile.alpha_b.into(),
            Cell::text(r.equilibrium.kind.as_str()),
            r.theta_t_star.into(),
            r.theta_t_b.into(),
            r.e_t_star.into(),
            r.e_t_b.into(),
            r.delta_e_a.into(),
            r.delta_e_b.into(),
            r.l_t_star.into(),
            r.l_t_b.into(),
            Cell::text("0"),
        ],
        Err(_) => {
            let mut cells = vec![Cell::Num(f64::NAN); RESULT_COLUMNS.len()];
            cells[2] = Cell::text("");
            cells[RESULT_COLUMNS.len() - 1] = Cell::text("1");
            cells
        }
    }
}

pub fn sweep_table(variable: SweepVariable, rows: &[SweepRow]) -> Table {
    let mut table = Table::new(std::iter::once(variable.name()).chain(RESULT_COLUMNS));
    for row in rows {
        let mut cells = vec![Cell::Num(row.x)];
        cells.extend(result_cells(&row.outcome));
        table.push(cells);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ConfigSpec {
        ConfigSpec {
            theta_a: 3.0,
            theta_b: 0.0,
            ..ConfigSpec::default()
        }
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(SweepVariable::DB, 1.0, 1.0, 10, base()).is_err());
        assert!(SweepSpec::new(SweepVariable::DB, -1.0, 1.0, 1, base()).is_err());
        assert!(SweepSpec::new(SweepVariable::DB, -1.0, 1.0, 100_001, base()).is_err());
        let bad = ConfigSpec { beta: -1.0, ..base() };
        assert!(SweepSpec::new(SweepVariable::DB, -1.0, 1.0, 10, bad).is_err());
    }

    #[test]
    fn failed_points_are_flagged() {
        let spec = SweepSpec::new(SweepVariable::Beta, -1.0, 1.0, 3, base()).unwrap();
        let rows = run_sweep(&spec);
        assert!(rows[0].outcome.is_err());
        assert!(rows[2].outcome.is_ok());
        let csv = sweep_table(spec.variable, &rows).to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[1].ends_with(",1"));
        assert!(lines[3].ends_with(",0"));
    }

    #[test]
    fn symmetric_points_on_default_grid() {
        let spec = SweepSpec::new(SweepVariable::DB, -5.0, 5.0, 401, base()).unwrap();
        let rows = run_sweep(&spec);
        let at = |d: f64| {
            rows.iter()
                .find(|r| (r.x - d).abs() < 1e-12)
                .unwrap()
                .outcome
                .as_ref()
                .unwrap()
        };
        assert!((at(-3.0).equilibrium.profile.alpha_b - 8.0 / 9.0).abs() < 1e-8);
        assert!((at(3.0).equilibrium.profile.alpha_a - 2.0 / 3.0).abs() < 1e-8);
        assert!(rows.windows(2).all(|w| w[0].x < w[1].x));
    }

    #[test]
    fn revelation_falls_with_cost_scale() {
        let base = ConfigSpec {
            theta_a: 3.0,
            theta_b: 3.0,
            ..ConfigSpec::default()
        };
        let spec = SweepSpec::new(SweepVariable::Beta, 0.25, 2.0, 50, base).unwrap();
        let alphas: Vec<f64> = run_sweep(&spec)
            .iter()
            .map(|r| r.outcome.as_ref().unwrap().equilibrium.profile.alpha_a)
            .collect();
        assert!(alphas.windows(2).all(|w| w[1] < w[0]));
    }
}
