//! Minimal SVG line plots of end-effector paths.

use std::fmt::Write as _;

const PANEL: f64 = 320.0;
const MARGIN: f64 = 36.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub struct Series<'a> {
    pub label: String,
    pub points: &'a [[f64; 3]],
}

/// Planar plots get a single X-Y panel; spatial ones get X-Y, X-Z and Y-Z.
pub fn plot_paths(title: &str, series: &[Series<'_>], planar: bool) -> String {
    let panels: &[(usize, usize, &str)] = if planar {
        &[(0, 1, "X-Y")]
    } else {
        &[(0, 1, "X-Y"), (0, 2, "X-Z"), (1, 2, "Y-Z")]
    };
    let width = panels.len() as f64 * (PANEL + MARGIN) + MARGIN;
    let legend_h = 16.0 * series.len() as f64;
    let height = PANEL + 2.0 * MARGIN + legend_h + 12.0;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{MARGIN}" y="20" font-size="13">{}</text>"#, escape(title)).unwrap();
    for (p, &(a, b, name)) in panels.iter().enumerate() {
        let x0 = MARGIN + p as f64 * (PANEL + MARGIN);
        let y0 = MARGIN;
        panel(&mut s, series, a, b, name, x0, y0);
    }
    for (i, ser) in series.iter().enumerate() {
        let y = PANEL + 2.0 * MARGIN + 16.0 * i as f64;
        let c = COLORS[i % COLORS.len()];
        writeln!(
            s,
            r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="{c}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            MARGIN + 20.0,
            MARGIN + 26.0,
            y + 4.0,
            escape(&ser.label)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn panel(s: &mut String, series: &[Series<'_>], a: usize, b: usize, name: &str, x0: f64, y0: f64) {
    let pts = series.iter().flat_map(|ser| ser.points.iter());
    let (mut lo_a, mut hi_a, mut lo_b, mut hi_b) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts.filter(|p| p[a].is_finite() && p[b].is_finite()) {
        lo_a = lo_a.min(p[a]);
        hi_a = hi_a.max(p[a]);
        lo_b = lo_b.min(p[b]);
        hi_b = hi_b.max(p[b]);
    }
    if !lo_a.is_finite() {
        (lo_a, hi_a, lo_b, hi_b) = (-1.0, 1.0, -1.0, 1.0);
    }
    // equal aspect so the path shape is not distorted
    let span = (hi_a - lo_a).max(hi_b - lo_b).max(1e-12) * 1.1;
    let (ca, cb) = ((lo_a + hi_a) / 2.0, (lo_b + hi_b) / 2.0);
    let map = |p: &[f64; 3]| {
        (
            x0 + (p[a] - ca) / span * PANEL + PANEL / 2.0,
            y0 + PANEL / 2.0 - (p[b] - cb) / span * PANEL,
        )
    };
    writeln!(s, r##"<rect x="{x0}" y="{y0}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#999"/>"##).unwrap();
    writeln!(s, r#"<text x="{}" y="{}">{name}  (span {:.4} m)</text>"#, x0 + 4.0, y0 + PANEL + 14.0, span).unwrap();
    for (i, ser) in series.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser
            .points
            .iter()
            .filter(|p| p[a].is_finite() && p[b].is_finite())
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        if pts.is_empty() {
            continue;
        }
        writeln!(s, r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#, pts.join(" ")).unwrap();
        if let Some(last) = ser.points.last() {
            let (x, y) = map(last);
            writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{c}"/>"#).unwrap();
        }
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
