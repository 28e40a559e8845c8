//! SVG line charts of a trajectory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::simulate::Trajectory;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

struct Chart<'a> {
    title: &'a str,
    x_label: &'a str,
    y_label: &'a str,
    xs: &'a [f64],
    ys: &'a [f64],
    reference: Option<(&'a str, f64)>,
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Chart<'_> {
    fn render(&self) -> String {
        let (x0, x1) = range(self.xs.iter().copied());
        let (y0, y1) = range(self.ys.iter().copied().chain(self.reference.map(|r| r.1)));
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for k in 0..=TICKS {
            let f = k as f64 / TICKS as f64;
            let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
            let (px, py) = (sx(xv), sy(yv));
            let _ = writeln!(
                s,
                r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{}" stroke="#ddd"/><text x="{px:.2}" y="{}" text-anchor="middle">{xv:.3}</text>"##,
                TOP + ph,
                TOP + ph + 16.0
            );
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="#ddd"/><text x="{}" y="{:.2}" text-anchor="end">{yv:.4}</text>"##,
                LEFT + pw,
                LEFT - 6.0,
                py + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 12.0,
            escape(self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            TOP + ph / 2.0,
            escape(self.y_label)
        );
        if let Some((label, value)) = self.reference {
            let py = sy(value);
            let _ = writeln!(
                s,
                r##"<line id="reference" data-value="{value}" x1="{LEFT}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="#c33" stroke-dasharray="6 4"><title>{}</title></line>"##,
                LEFT + pw,
                escape(label)
            );
        }
        let points: Vec<String> = self
            .xs
            .iter()
            .zip(self.ys)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline id="series" data-points="{}" fill="none" stroke="#1f5fa8" stroke-width="1.5" points="{}"/>"##,
            points.len(),
            points.join(" ")
        );
        s.push_str("</svg>\n");
        s
    }
}

/// Output against time, with the target as a dashed reference line.
pub fn output_svg(trajectory: &Trajectory, title: &str) -> String {
    let mut xs = vec![0.0];
    xs.extend(trajectory.times());
    let mut ys = vec![trajectory.initial_output];
    ys.extend(trajectory.outputs());
    Chart {
        title,
        x_label: "time",
        y_label: "output",
        xs: &xs,
        ys: &ys,
        reference: Some(("target", trajectory.o_d)),
    }
    .render()
}

/// Applied control against time.
pub fn control_svg(trajectory: &Trajectory, title: &str) -> String {
    Chart {
        title,
        x_label: "time",
        y_label: "control",
        xs: &trajectory.times(),
        ys: &trajectory.controls(),
        reference: None,
    }
    .render()
}

/// Writes `<name>-output.svg` and `<name>-control.svg` into `dir`.
pub fn emit_plots(trajectory: &Trajectory, dir: impl AsRef<Path>, name: &str) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let files = [
        (
            dir.join(format!("{name}-output.svg")),
            output_svg(trajectory, &format!("{name}: output")),
        ),
        (
            dir.join(format!("{name}-control.svg")),
            control_svg(trajectory, &format!("{name}: control")),
        ),
    ];
    let mut written = Vec::new();
    for (path, svg) in files {
        std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
