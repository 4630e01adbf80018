use std::path::Path;
use std::process::{Command, Output};

use drgame::{ConfigSpec, EquilibriumKind};
use drgame_cli::regions::{region_map, Axis, RegionSpec};
use tempfile::TempDir;

fn drgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_kind_and_profile() {
    let dir = TempDir::new().unwrap();
    let conflicting = write_config(&dir, "c.cfg", "theta_A = 3\ntheta_B = -3\nbeta = 1\n");
    let o = drgame(&["solve", "--config", &conflicting]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("equilibrium: BPR-Conflicting"));
    assert!(text.contains("alpha* = (0.888888889, 0.888888889)"));

    let none = write_config(&dir, "n.cfg", "theta_A = 0.5\ntheta_B = 0.5\n");
    assert!(stdout(&drgame(&["solve", "--config", &none])).contains("equilibrium: NR"));
}

#[test]
fn solve_writes_csv_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.cfg", "theta_A = 3\ntheta_B = 3\n");
    let out = dir.path().join("out.csv");
    let o = drgame(&["solve", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("3,3,0,1,0,0.666666667,0.666666667,BPR-Aligned,"));
}

#[test]
fn parse_and_usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write_config(&dir, "b.cfg", "theta_A = 3\ntheta_B = 3\nbeta = -1\n");
    let o = drgame(&["solve", "--config", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta"));

    let broken = write_config(&dir, "s.cfg", "theta_A = 3\ntheta_B\n");
    let o = drgame(&["solve", "--config", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let good = write_config(&dir, "g.cfg", "theta_A = 3\ntheta_B = 3\n");
    assert_eq!(
        drgame(&["solve", "--config", &good, "--points", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        drgame(&["verify", "--config", &good, "--plot", "x.svg"]).status.code(),
        Some(1)
    );
    assert_eq!(drgame(&["sweep", "--points", "1"]).status.code(), Some(1));
    assert_eq!(drgame(&["frobnicate"]).status.code(), Some(1));

    let o = drgame(&["reproduce", "fig2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fig3, fig4, fig5, fig6, fig7, fig8"));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let conflicting = write_config(&dir, "c.cfg", "theta_A = 3\ntheta_B = -3\n");
    let aligned = write_config(&dir, "a.cfg", "theta_A = 3\ntheta_B = 3\n");
    assert_eq!(
        drgame(&["verify", "--config", &conflicting, "--step", "1e-3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        drgame(&["verify", "--config", &aligned, "--step", "1e-3"])
            .status
            .code(),
        Some(0)
    );
    let o = drgame(&["verify", "--config", &aligned, "--assert-profile", "0.5,0.5"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("0.5, 0.5") && text.contains("0.667, 0.667") && text.contains("MISMATCH"));
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_drgame"))
            .args(["sweep", "--var", "d_B", "--range", "-5,5", "--points", "401", "--out"])
            .arg(&out)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "4");
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 402);
}

#[test]
fn regions_and_plots_are_written() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("r.csv");
    let svg = dir.path().join("r.svg");
    let o = drgame(&[
        "regions",
        "--points",
        "21",
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 21 * 21 + 1);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn reproduce_every_figure() {
    let dir = TempDir::new().unwrap();
    for fig in ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8"] {
        let out = dir.path().join(format!("{fig}.csv"));
        let plot = dir.path().join(format!("{fig}.svg"));
        let o = drgame(&[
            "reproduce",
            fig,
            "--points",
            "41",
            "--out",
            out.to_str().unwrap(),
            "--plot",
            plot.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{fig}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(Path::new(&plot).exists());
    }
}

#[test]
fn region_map_is_exchange_symmetric() {
    for beta in [0.25, 1.0, 4.0] {
        let base = ConfigSpec {
            beta,
            ..ConfigSpec::default()
        };
        let axis = Axis::new(-5.0, 5.0, 101);
        let cells = region_map(&RegionSpec::new(axis, axis, base).unwrap()).unwrap();
        let n = axis.count;
        for i in 0..n {
            for j in 0..n {
                let here = cells[i * n + j];
                let mirror = cells[j * n + i];
                assert_eq!(here.d_a, mirror.d_b);
                assert_eq!(
                    here.kind,
                    mirror.kind.swapped(),
                    "beta={beta} at ({}, {})",
                    here.d_a,
                    here.d_b
                );
            }
        }
        let kind_at = |a: f64, b: f64| cells.iter().find(|c| c.d_a == a && c.d_b == b).unwrap().kind;
        if beta == 1.0 {
            assert_eq!(kind_at(0.5, 0.5), EquilibriumKind::Nr);
            assert_eq!(kind_at(3.0, 0.5), EquilibriumKind::OprA);
            assert_eq!(kind_at(0.5, 3.0), EquilibriumKind::OprB);
            assert_eq!(kind_at(3.0, -3.0), EquilibriumKind::BprConflicting);
            assert_eq!(kind_at(0.0, 0.0), EquilibriumKind::Nr);
        }
    }
}
