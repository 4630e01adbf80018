//! Single-configuration commands: solve and verify.

use std::fmt::Write;
use std::io;
use std::path::{Path, PathBuf};

use drgame::{
    brute_force_equilibrium, compare_outcomes, derived_quantities, load_config, solve_equilibrium, verify_equilibrium,
    ConfigError, ConfigSpec, EquilibriumResult, GameConfig, GridSpec, OracleError, OutcomeReport, ParsedConfig,
    RevelationProfile, VerificationReport,
};

use crate::sweep::{result_cells, RESULT_COLUMNS};
use crate::table::{format_sig9, Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Io { .. } => 1,
            CliError::Solver(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_config_file(path: &Path) -> Result<(GameConfig<f64>, ParsedConfig), CliError> {
    load_config::<f64>(&read_text(path)?).map_err(|source| CliError::Config {
        path: path.to_path_buf(),
        source,
    })
}

pub fn solve(config: &GameConfig<f64>) -> Result<OutcomeReport<f64>, CliError> {
    compare_outcomes(config).map_err(|e| CliError::Solver(e.to_string()))
}

pub fn solve_summary(spec: &ConfigSpec, config: &GameConfig<f64>, r: &OutcomeReport<f64>) -> String {
    let g = format_sig9;
    let dq = derived_quantities(config);
    let eq = &r.equilibrium;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "config: theta_A = {}, theta_B = {}, mu_G = {}, functions = {}, beta = {}, C = {}",
        g(spec.theta_a),
        g(spec.theta_b),
        g(spec.mu_g),
        spec.functions,
        g(spec.beta),
        g(spec.manual_cost)
    );
    let kappa = dq.kappa.map_or_else(|| "undefined".to_string(), g);
    let _ = writeln!(
        s,
        "d_A = {}, d_B = {}, kappa = {}, trigger price = {}",
        g(dq.d_a),
        g(dq.d_b),
        kappa,
        g(dq.trigger_price)
    );
    let _ = writeln!(s, "equilibrium: {}", eq.kind);
    let _ = writeln!(s, "alpha* = ({}, {})", g(eq.profile.alpha_a), g(eq.profile.alpha_b));
    let _ = writeln!(s, "iterations = {}, residual = {}", eq.iterations, g(eq.residual));
    for (name, loss) in [("A", &eq.loss_a), ("B", &eq.loss_b)] {
        let _ = writeln!(
            s,
            "member {name}: preference loss {}, communication cost {}, total {}",
            g(loss.preference),
            g(loss.communication),
            g(loss.total())
        );
    }
    let _ = writeln!(
        s,
        "team decision: theta_T* = {}, manual theta_T_B = {}, gap = {}",
        g(r.theta_t_star),
        g(r.theta_t_b),
        g(r.decision_gap)
    );
    let _ = writeln!(
        s,
        "team preference loss: e_T* = {}, manual e_T_B = {}, delta_e_A = {}, delta_e_B = {}",
        g(r.e_t_star),
        g(r.e_t_b),
        g(r.delta_e_a),
        g(r.delta_e_b)
    );
    let _ = writeln!(
        s,
        "team total loss: L_T* = {}, manual L_T_B = {}",
        g(r.l_t_star),
        g(r.l_t_b)
    );
    let _ = writeln!(s, "break-even manual cost: {}", g(r.break_even_c));
    s
}

pub fn solve_table(spec: &ConfigSpec, r: &OutcomeReport<f64>) -> Table {
    let mut table = Table::new(
        ["theta_A", "theta_B", "mu_G", "beta", "C"]
            .into_iter()
            .chain(RESULT_COLUMNS)
            .chain(["decision_gap", "break_even_C"]),
    );
    let mut row: Vec<Cell> = [spec.theta_a, spec.theta_b, spec.mu_g, spec.beta, spec.manual_cost]
        .map(Cell::Num)
        .into();
    row.extend(result_cells(&Ok(r.clone())));
    row.push(r.decision_gap.into());
    row.push(r.break_even_c.into());
    table.push(row);
    table
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub step: f64,
    pub solved: EquilibriumResult<f64>,
    /// The profile under test: the solved one unless overridden.
    pub checked: RevelationProfile<f64>,
    pub overridden: bool,
    pub oracle: Result<RevelationProfile<f64>, OracleError>,
    pub deviation: VerificationReport<f64>,
}

impl VerifyReport {
    pub fn oracle_gap(&self) -> Option<f64> {
        self.oracle.as_ref().ok().map(|o| {
            (self.checked.alpha_a - o.alpha_a)
                .abs()
                .max((self.checked.alpha_b - o.alpha_b).abs())
        })
    }

    pub fn passed(&self) -> bool {
        self.oracle_gap().is_some_and(|gap| gap <= 2.0 * self.step + 1e-12) && self.deviation.passed
    }

    pub fn render(&self) -> String {
        let g = format_sig9;
        let mut s = String::new();
        let _ = writeln!(s, "grid step: {}", g(self.step));
        let _ = writeln!(
            s,
            "solved: {} ({}, {}), residual {}",
            self.solved.kind,
            g(self.solved.profile.alpha_a),
            g(self.solved.profile.alpha_b),
            g(self.solved.residual)
        );
        if self.overridden {
            let _ = writeln!(
                s,
                "checking asserted profile ({}, {})",
                g(self.checked.alpha_a),
                g(self.checked.alpha_b)
            );
        }
        match &self.oracle {
            Ok(o) => {
                let _ = writeln!(
                    s,
                    "brute force: ({}, {}), max component gap {} (allowed {})",
                    g(o.alpha_a),
                    g(o.alpha_b),
                    g(self.oracle_gap().unwrap_or(f64::NAN)),
                    g(2.0 * self.step)
                );
            }
            Err(e) => {
                let _ = writeln!(s, "brute force: {e}");
            }
        }
        for scan in &self.deviation.scans {
            let _ = writeln!(
                s,
                "deviation scan {}: loss {}, best grid alpha {} with loss {}, improvement {}",
                scan.member,
                g(scan.loss_at_profile),
                g(scan.best_grid_alpha),
                g(scan.best_grid_loss),
                g(scan.improvement)
            );
        }
        let _ = writeln!(
            s,
            "deviation tolerance {}: {}",
            g(self.deviation.tolerance),
            if self.deviation.passed {
                "ok"
            } else {
                "profitable deviation found"
            }
        );
        let _ = writeln!(s, "result: {}", if self.passed() { "agree" } else { "MISMATCH" });
        s
    }
}

pub fn run_verify(
    config: &GameConfig<f64>,
    step: f64,
    asserted: Option<RevelationProfile<f64>>,
) -> Result<VerifyReport, CliError> {
    let grid = GridSpec::for_config(config, step).map_err(|e| CliError::Usage(format!("--step: {e}")))?;
    let solved = solve_equilibrium(config).map_err(|e| CliError::Solver(e.to_string()))?;
    let checked = asserted.unwrap_or(solved.profile);
    let oracle = brute_force_equilibrium(config, &grid, drgame::oracle::DEFAULT_MAX_ROUNDS);
    let deviation = verify_equilibrium(config, &checked, step).map_err(|e| CliError::Usage(format!("--step: {e}")))?;
    Ok(VerifyReport {
        step,
        solved,
        checked,
        overridden: asserted.is_some(),
        oracle,
        deviation,
    })
}
