//! Minimal standalone SVG rendering of line charts and heatmaps.

use std::fmt::Write;

use crate::table::{Cell, Table};

#[derive(Debug, Clone, PartialEq)]
pub enum PlotSpec {
    /// One polyline per `ys` column, repeated for each distinct `group` value.
    Lines {
        x: String,
        ys: Vec<String>,
        group: Option<String>,
        y_label: String,
    },
    /// Nearest-neighbour cells; text values get a categorical palette.
    Heatmap { x: String, y: String, value: String },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlotError {
    #[error("plot column `{0}` not found")]
    MissingColumn(String),
    #[error("plot column `{0}` is not numeric")]
    NotNumeric(String),
    #[error("nothing to plot")]
    Empty,
}

const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn render_svg(table: &Table, spec: &PlotSpec, title: &str) -> Result<String, PlotError> {
    match spec {
        PlotSpec::Lines { x, ys, group, y_label } => render_lines(table, x, ys, group.as_deref(), y_label, title),
        PlotSpec::Heatmap { x, y, value } => render_heatmap(table, x, y, value, title),
    }
}

fn numeric(table: &Table, name: &str) -> Result<Vec<f64>, PlotError> {
    table
        .column(name)
        .ok_or_else(|| PlotError::MissingColumn(name.to_string()))?
        .map(|c| c.as_f64().ok_or_else(|| PlotError::NotNumeric(name.to_string())))
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.3}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn plot_w() -> f64 {
        WIDTH - LEFT - RIGHT
    }

    fn plot_h() -> f64 {
        HEIGHT - TOP - BOTTOM
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * Self::plot_w()
    }

    fn py(&self, y: f64) -> f64 {
        TOP + Self::plot_h() - (y - self.y.0) / (self.y.1 - self.y.0) * Self::plot_h()
    }
}

fn range(values: impl Iterator<Item = f64>, pad: bool) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo > hi {
        return None;
    }
    if lo == hi {
        return Some((lo - 1.0, hi + 1.0));
    }
    let m = if pad { 0.05 * (hi - lo) } else { 0.0 };
    Some((lo - m, hi + m))
}

fn header(svg: &mut String, title: &str) {
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + Frame::plot_w() / 2.0,
        escape(title)
    );
}

fn axes(svg: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (x0, y0) = (LEFT, TOP + Frame::plot_h());
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        Frame::plot_w(),
        Frame::plot_h()
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let xv = frame.x.0 + t * (frame.x.1 - frame.x.0);
        let px = frame.px(xv);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            tick_label(xv)
        );
        let yv = frame.y.0 + t * (frame.y.1 - frame.y.0);
        let py = frame.py(yv);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + Frame::plot_w() / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        TOP + Frame::plot_h() / 2.0,
        escape(y_label)
    );
}

fn legend(svg: &mut String, entries: &[(String, String)]) {
    let x = WIDTH - RIGHT + 16.0;
    for (i, (label, color)) in entries.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{x}" y="{}" width="12" height="12" fill="{color}"/>"#,
            y - 10.0
        );
        let _ = writeln!(svg, r#"<text x="{}" y="{y}">{}</text>"#, x + 18.0, escape(label));
    }
}

fn render_lines(
    table: &Table,
    x_name: &str,
    ys: &[String],
    group: Option<&str>,
    y_label: &str,
    title: &str,
) -> Result<String, PlotError> {
    let xs = numeric(table, x_name)?;
    let groups: Vec<Option<f64>> = match group {
        Some(g) => numeric(table, g)?.into_iter().map(Some).collect(),
        None => vec![None; xs.len()],
    };
    let mut keys: Vec<Option<f64>> = Vec::new();
    for g in &groups {
        if !keys.contains(g) {
            keys.push(*g);
        }
    }
    let columns: Vec<Vec<f64>> = ys.iter().map(|y| numeric(table, y)).collect::<Result<_, _>>()?;
    let x_range = range(xs.iter().copied(), false).ok_or(PlotError::Empty)?;
    let y_range = range(columns.iter().flatten().copied(), true).ok_or(PlotError::Empty)?;
    let frame = Frame { x: x_range, y: y_range };

    let mut svg = String::new();
    header(&mut svg, title);
    axes(&mut svg, &frame, x_name, y_label);
    let mut entries = Vec::new();
    for (k, key) in keys.iter().enumerate() {
        for (c, (name, values)) in ys.iter().zip(&columns).enumerate() {
            let color = PALETTE[(k * ys.len() + c) % PALETTE.len()];
            let dash = if k > 0 && ys.len() > 1 {
                r#" stroke-dasharray="6 3""#
            } else {
                ""
            };
            let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
            for i in (0..xs.len()).filter(|&i| groups[i] == *key) {
                if values[i].is_finite() && xs[i].is_finite() {
                    segments
                        .last_mut()
                        .expect("non-empty")
                        .push((frame.px(xs[i]), frame.py(values[i])));
                } else if !segments.last().expect("non-empty").is_empty() {
                    segments.push(Vec::new());
                }
            }
            for seg in segments.iter().filter(|s| !s.is_empty()) {
                let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{}"/>"#,
                    pts.join(" ")
                );
            }
            let label = match (group, key) {
                (Some(g), Some(v)) => format!("{name} ({g} = {})", tick_label(*v)),
                _ => name.clone(),
            };
            entries.push((label, color.to_string()));
        }
    }
    legend(&mut svg, &entries);
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn sorted_unique(values: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    v.dedup();
    v
}

/// Piecewise-linear ramp from dark blue through teal to yellow.
fn ramp(t: f64) -> String {
    const STOPS: [(f64, [f64; 3]); 3] = [
        (0.0, [68.0, 1.0, 84.0]),
        (0.5, [33.0, 145.0, 140.0]),
        (1.0, [253.0, 231.0, 37.0]),
    ];
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let (a, b) = if t <= 0.5 {
        (STOPS[0], STOPS[1])
    } else {
        (STOPS[1], STOPS[2])
    };
    let s = (t - a.0) / (b.0 - a.0);
    let c: Vec<u8> = (0..3).map(|i| (a.1[i] + s * (b.1[i] - a.1[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn render_heatmap(table: &Table, x_name: &str, y_name: &str, value: &str, title: &str) -> Result<String, PlotError> {
    let xs = numeric(table, x_name)?;
    let ys = numeric(table, y_name)?;
    let cells: Vec<&Cell> = table
        .column(value)
        .ok_or_else(|| PlotError::MissingColumn(value.to_string()))?
        .collect();
    let ux = sorted_unique(&xs);
    let uy = sorted_unique(&ys);
    if ux.is_empty() || uy.is_empty() {
        return Err(PlotError::Empty);
    }
    let half = |u: &[f64]| if u.len() > 1 { (u[1] - u[0]) / 2.0 } else { 0.5 };
    let frame = Frame {
        x: (ux[0] - half(&ux), ux[ux.len() - 1] + half(&ux)),
        y: (uy[0] - half(&uy), uy[uy.len() - 1] + half(&uy)),
    };
    let cw = Frame::plot_w() / ux.len() as f64;
    let ch = Frame::plot_h() / uy.len() as f64;

    let categories: Vec<String> = {
        let mut seen = Vec::new();
        for c in &cells {
            if let Cell::Text(s) = c {
                if !seen.contains(s) {
                    seen.push(s.clone());
                }
            }
        }
        seen.sort();
        seen
    };
    let numeric_range = range(cells.iter().filter_map(|c| c.as_f64()), false);
    let color = |c: &Cell| -> String {
        match c {
            Cell::Text(s) => {
                let i = categories.iter().position(|k| k == s).unwrap_or(0);
                PALETTE[i % PALETTE.len()].to_string()
            }
            Cell::Num(v) => {
                let (lo, hi) = numeric_range.unwrap_or((0.0, 1.0));
                ramp((v - lo) / (hi - lo))
            }
        }
    };

    let mut svg = String::new();
    header(&mut svg, title);
    for ((x, y), c) in xs.iter().zip(&ys).zip(&cells) {
        let (Ok(i), Ok(j)) = (
            ux.binary_search_by(|u| u.partial_cmp(x).expect("finite")),
            uy.binary_search_by(|u| u.partial_cmp(y).expect("finite")),
        ) else {
            continue;
        };
        let _ = writeln!(
            svg,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
            LEFT + i as f64 * cw,
            TOP + Frame::plot_h() - (j + 1) as f64 * ch,
            cw + 0.05,
            ch + 0.05,
            color(c)
        );
    }
    axes(&mut svg, &frame, x_name, y_name);
    let entries: Vec<(String, String)> = if categories.is_empty() {
        let (lo, hi) = numeric_range.unwrap_or((0.0, 1.0));
        (0..=4)
            .rev()
            .map(|k| {
                let t = k as f64 / 4.0;
                let label = if k == 4 {
                    format!("{value} {}", tick_label(lo + t * (hi - lo)))
                } else {
                    tick_label(lo + t * (hi - lo))
                };
                (label, ramp(t))
            })
            .collect()
    } else {
        categories
            .iter()
            .map(|k| (k.clone(), color(&Cell::Text(k.clone()))))
            .collect()
    };
    legend(&mut svg, &entries);
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_has_one_polyline_per_series() {
        let mut t = Table::new(["g", "x", "y"]);
        for g in [1.0, 2.0] {
            for x in [0.0, 1.0, 2.0] {
                t.push(vec![g.into(), x.into(), (g * x).into()]);
            }
        }
        let spec = PlotSpec::Lines {
            x: "x".into(),
            ys: vec!["y".into()],
            group: Some("g".into()),
            y_label: "y".into(),
        };
        let svg = render_svg(&t, &spec, "t").unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("y (g = 2)"));
    }

    #[test]
    fn categorical_heatmap_lists_kinds() {
        let mut t = Table::new(["a", "b", "kind"]);
        t.push(vec![0.0.into(), 0.0.into(), Cell::text("NR")]);
        t.push(vec![0.0.into(), 1.0.into(), Cell::text("OPR-B")]);
        let spec = PlotSpec::Heatmap {
            x: "a".into(),
            y: "b".into(),
            value: "kind".into(),
        };
        let svg = render_svg(&t, &spec, "regions").unwrap();
        assert!(svg.contains(">NR<") && svg.contains(">OPR-B<"));
    }

    #[test]
    fn missing_column_is_reported() {
        let t = Table::new(["x"]);
        let spec = PlotSpec::Heatmap {
            x: "x".into(),
            y: "y".into(),
            value: "v".into(),
        };
        assert_eq!(
            render_svg(&t, &spec, "").unwrap_err(),
            PlotError::MissingColumn("y".into())
        );
    }
}
