//! Data behind the standard figures.

use std::fmt;
use std::str::FromStr;

use drgame::{compare_outcomes, trigger_price, ConfigSpec, GameError, OutcomeReport};
use rayon::prelude::*;

use crate::plot::PlotSpec;
use crate::sweep::{run_sweep, sweep_table, SweepError, SweepSpec, SweepVariable, MAX_SWEEP_POINTS};
use crate::table::{linspace, Cell, Table};

pub const SWEEP_RANGE: (f64, f64) = (-5.0, 5.0);
pub const DEFAULT_LINE_POINTS: usize = 401;
pub const DEFAULT_HEATMAP_POINTS: usize = 101;
pub const MAX_HEATMAP_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7,
        Figure::Fig8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Figure::Fig3 => "Equilibrium revelation levels",
            Figure::Fig4 => "Team decision gap",
            Figure::Fig5 => "Team preference loss",
            Figure::Fig6 => "Individual preference loss change",
            Figure::Fig7 => "Team total loss by manual cost",
            Figure::Fig8 => "Team total loss by trigger price",
        }
    }

    /// The sweep each figure is built from.
    pub fn description(self) -> &'static str {
        match self {
            Figure::Fig3 => "alpha_A*, alpha_B* with d_A = 3, beta = 1, d_B over [-5, 5]",
            Figure::Fig4 => "|theta_T* - theta_T_B| over (d_A, d_B) in [-5, 5]^2, beta = 1 (heatmap)",
            Figure::Fig5 => "e_T* and e_T_B for d_A in {0.5, 3}, beta = 1, d_B over [-5, 5]",
            Figure::Fig6 => "delta_e_A, delta_e_B with d_A = 3, beta = 1, d_B over [-5, 5]",
            Figure::Fig7 => "L_T* and L_T_B for C in {0.5, 2}, d_A = 3, beta = 1, d_B over [-5, 5]",
            Figure::Fig8 => "L_T* and L_T_B for beta in {1, 0.5, 0.25}, C = 2, d_A = 3, d_B over [-5, 5]",
        }
    }

    pub fn default_points(self) -> usize {
        match self {
            Figure::Fig4 => DEFAULT_HEATMAP_POINTS,
            _ => DEFAULT_LINE_POINTS,
        }
    }

    pub fn valid_ids() -> String {
        Self::ALL.map(Figure::id).join(", ")
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|fig| fig.id() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (valid ids: {})", Self::valid_ids()))
    }
}

#[derive(Debug, Clone)]
pub struct FigureData {
    pub figure: Figure,
    pub table: Table,
    pub plot: PlotSpec,
}

fn base(d_a: f64, beta: f64, manual_cost: f64) -> ConfigSpec {
    ConfigSpec {
        theta_a: d_a,
        theta_b: 0.0,
        beta,
        manual_cost,
        ..ConfigSpec::default()
    }
}

fn d_b_sweep(base: ConfigSpec, points: usize) -> Result<SweepSpec, SweepError> {
    SweepSpec::new(SweepVariable::DB, SWEEP_RANGE.0, SWEEP_RANGE.1, points, base)
}

/// Selected columns of a `d_B` sweep, prefixed by fixed series columns.
fn project(
    series: &[(&str, f64)],
    spec: &SweepSpec,
    columns: &[&str],
    pick: impl Fn(&OutcomeReport<f64>) -> Vec<Cell>,
) -> Result<Table, SweepError> {
    let mut table = Table::new(
        series
            .iter()
            .map(|(n, _)| *n)
            .chain(["d_B", "kind"])
            .chain(columns.iter().copied()),
    );
    for row in run_sweep(spec) {
        let r = row.outcome?;
        let mut cells: Vec<Cell> = series.iter().map(|&(_, v)| Cell::Num(v)).collect();
        cells.push(Cell::Num(row.x));
        cells.push(Cell::text(r.equilibrium.kind.as_str()));
        cells.extend(pick(&r));
        table.push(cells);
    }
    Ok(table)
}

pub fn generate(figure: Figure, points: usize) -> Result<FigureData, SweepError> {
    let max = if figure == Figure::Fig4 {
        MAX_HEATMAP_POINTS
    } else {
        MAX_SWEEP_POINTS
    };
    if !(2..=max).contains(&points) {
        return Err(SweepError::PointCount { count: points, max });
    }
    let lines = |group: Option<&str>, ys: &[&str], y_label: &str| PlotSpec::Lines {
        x: "d_B".to_string(),
        ys: ys.iter().map(|s| s.to_string()).collect(),
        group: group.map(str::to_string),
        y_label: y_label.to_string(),
    };
    let (table, plot) = match figure {
        Figure::Fig3 => {
            let spec = d_b_sweep(base(3.0, 1.0, 0.0), points)?;
            let rows = run_sweep(&spec);
            if let Some(Err(e)) = rows.iter().map(|r| r.outcome.as_ref().map(|_| ())).find(Result::is_err) {
                return Err(e.clone().into());
            }
            (
                sweep_table(spec.variable, &rows),
                lines(None, &["alpha_A*", "alpha_B*"], "revelation level"),
            )
        }
        Figure::Fig4 => (
            gap_heatmap(points)?,
            PlotSpec::Heatmap {
                x: "d_A".to_string(),
                y: "d_B".to_string(),
                value: "decision_gap".to_string(),
            },
        ),
        Figure::Fig5 => {
            let mut table: Option<Table> = None;
            for d_a in [0.5, 3.0] {
                let spec = d_b_sweep(base(d_a, 1.0, 0.0), points)?;
                let part = project(&[("d_A", d_a)], &spec, &["e_T*", "e_T_B"], |r| {
                    vec![r.e_t_star.into(), r.e_t_b.into()]
                })?;
                merge(&mut table, part);
            }
            (
                table.expect("two series"),
                lines(Some("d_A"), &["e_T*", "e_T_B"], "team preference loss"),
            )
        }
        Figure::Fig6 => {
            let spec = d_b_sweep(base(3.0, 1.0, 0.0), points)?;
            let table = project(
                &[],
                &spec,
                &["e_A*", "e_A_B", "delta_e_A", "e_B*", "e_B_B", "delta_e_B"],
                |r| {
                    vec![
                        r.equilibrium.loss_a.preference.into(),
                        r.baseline.e_a.into(),
                        r.delta_e_a.into(),
                        r.equilibrium.loss_b.preference.into(),
                        r.baseline.e_b.into(),
                        r.delta_e_b.into(),
                    ]
                },
            )?;
            (
                table,
                lines(None, &["delta_e_A", "delta_e_B"], "change in preference loss"),
            )
        }
        Figure::Fig7 => {
            let mut table: Option<Table> = None;
            for c in [0.5, 2.0] {
                let spec = d_b_sweep(base(3.0, 1.0, c), points)?;
                let part = project(&[("C", c)], &spec, &["L_T*", "L_T_B", "break_even_C"], |r| {
                    vec![r.l_t_star.into(), r.l_t_b.into(), r.break_even_c.into()]
                })?;
                merge(&mut table, part);
            }
            (
                table.expect("two series"),
                lines(Some("C"), &["L_T*", "L_T_B"], "team total loss"),
            )
        }
        Figure::Fig8 => {
            let mut table: Option<Table> = None;
            for beta in [1.0, 0.5, 0.25] {
                let b = base(3.0, beta, 2.0);
                let p = trigger_price(&b.function_pair::<f64>()?)?;
                let spec = d_b_sweep(b, points)?;
                let part = project(
                    &[("beta", beta), ("trigger_price", p)],
                    &spec,
                    &["L_T*", "L_T_B"],
                    |r| vec![r.l_t_star.into(), r.l_t_b.into()],
                )?;
                merge(&mut table, part);
            }
            (
                table.expect("three series"),
                lines(Some("beta"), &["L_T*", "L_T_B"], "team total loss"),
            )
        }
    };
    Ok(FigureData { figure, table, plot })
}

fn merge(acc: &mut Option<Table>, part: Table) {
    match acc {
        Some(t) => t.extend(part),
        None => *acc = Some(part),
    }
}

fn gap_heatmap(points: usize) -> Result<Table, GameError> {
    let axis = linspace(SWEEP_RANGE.0, SWEEP_RANGE.1, points);
    let template = base(0.0, 1.0, 0.0).build::<f64>()?;
    let rows: Vec<Vec<Cell>> = axis
        .par_iter()
        .map(|&d_a| {
            axis.iter()
                .map(|&d_b| {
                    let r = compare_outcomes(&template.with_diversities(d_a, d_b))?;
                    Ok(vec![
                        d_a.into(),
                        d_b.into(),
                        Cell::text(r.equilibrium.kind.as_str()),
                        r.theta_t_star.into(),
                        r.theta_t_b.into(),
                        r.decision_gap.into(),
                    ])
                })
                .collect::<Result<Vec<_>, GameError>>()
        })
        .collect::<Result<Vec<_>, GameError>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut table = Table::new(["d_A", "d_B", "kind", "theta_T*", "theta_T_B", "decision_gap"]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}
