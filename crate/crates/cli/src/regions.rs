//! Equilibrium-kind maps over the `(d_A, d_B)` plane.

use drgame::{classify_equilibrium, ConfigSpec, EquilibriumKind, GameConfig, GameError};
use rayon::prelude::*;

use crate::table::{linspace, Cell, Table};

pub const MAX_REGION_CELLS: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        Self { lo, hi, count }
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("axis range must satisfy lo < hi with at least 2 points, got [{lo}, {hi}] x {count}")]
    BadAxis { lo: f64, hi: f64, count: usize },
    #[error("grid of {cells} cells exceeds the limit of {max}")]
    TooManyCells { cells: usize, max: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec {
    pub d_a: Axis,
    pub d_b: Axis,
    pub base: ConfigSpec,
}

impl RegionSpec {
    pub fn new(d_a: Axis, d_b: Axis, base: ConfigSpec) -> Result<Self, RegionError> {
        for axis in [d_a, d_b] {
            if !axis.lo.is_finite() || !axis.hi.is_finite() || axis.lo >= axis.hi || axis.count < 2 {
                return Err(RegionError::BadAxis {
                    lo: axis.lo,
                    hi: axis.hi,
                    count: axis.count,
                });
            }
        }
        let cells = d_a.count.saturating_mul(d_b.count);
        if cells > MAX_REGION_CELLS {
            return Err(RegionError::TooManyCells {
                cells,
                max: MAX_REGION_CELLS,
            });
        }
        base.function_pair::<f64>()?;
        Ok(Self { d_a, d_b, base })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell {
    pub d_a: f64,
    pub d_b: f64,
    pub kind: EquilibriumKind,
}

/// Classifies every cell without solving; rows are `d_A`-major.
pub fn region_map(spec: &RegionSpec) -> Result<Vec<RegionCell>, RegionError> {
    let pair = spec.base.function_pair::<f64>()?;
    let template = GameConfig::from_diversities(0.0, 0.0, pair, spec.base.manual_cost)?;
    let d_bs = spec.d_b.points();
    let cells = spec
        .d_a
        .points()
        .into_par_iter()
        .flat_map_iter(|d_a| {
            let template = &template;
            d_bs.iter().map(move |&d_b| RegionCell {
                d_a,
                d_b,
                kind: classify_equilibrium(&template.with_diversities(d_a, d_b)).kind,
            })
        })
        .collect();
    Ok(cells)
}

pub fn region_table(cells: &[RegionCell]) -> Table {
    let mut table = Table::new(["d_A", "d_B", "kind"]);
    for c in cells {
        table.push(vec![c.d_a.into(), c.d_b.into(), Cell::text(c.kind.as_str())]);
    }
    table
}
