//! Self-contained SVG line chart of a spectrum: citation count and median deviation
//! against reference publication year. Output depends only on the rows.

use std::fmt::Write;

use rootcite::SpectroscopyRow;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COUNT_COLOUR: &str = "#c0392b";
const DEV_COLOUR: &str = "#2471a3";

/// Step from {1, 2, 5} × 10^k giving at most `max_ticks` intervals over `span`.
fn tick_step(span: f64, max_ticks: f64) -> f64 {
    let raw = (span / max_ticks).max(1.0);
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_spectrum(rows: &[SpectroscopyRow], title: &str) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let (x0, x1) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => (a.rpy as f64, b.rpy as f64),
        _ => (0.0, 1.0),
    };
    let x_span = (x1 - x0).max(1.0);
    let y_min = rows.iter().map(|r| r.median_dev).min().unwrap_or(0).min(0) as f64;
    let y_max = rows.iter().map(|r| (r.count as i64).max(r.median_dev)).max().unwrap_or(0).max(1) as f64;
    let y_step = tick_step(y_max - y_min, 8.0);
    let y_lo = (y_min / y_step).floor() * y_step;
    let y_hi = (y_max / y_step).ceil() * y_step;
    let px = |year: f64| LEFT + (year - x0) / x_span * plot_w;
    let py = |v: f64| TOP + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title)).unwrap();

    // grid and y ticks
    let mut v = y_lo;
    while v <= y_hi + y_step / 2.0 {
        let y = py(v);
        writeln!(s, r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##, LEFT + plot_w).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, v as i64).unwrap();
        v += y_step;
    }
    // x ticks
    let x_step = tick_step(x_span, 12.0);
    let mut year = (x0 / x_step).ceil() * x_step;
    while year <= x1 {
        let x = px(year);
        let base = TOP + plot_h;
        writeln!(s, r#"<line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, base + 5.0).unwrap();
        writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, base + 18.0, year as i64).unwrap();
        year += x_step;
    }
    // axes, zero line, labels
    writeln!(s, r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{:.2}" stroke="black"/>"#, TOP + plot_h).unwrap();
    writeln!(s, r#"<line x1="{LEFT:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, TOP + plot_h, LEFT + plot_w, TOP + plot_h).unwrap();
    writeln!(s, r#"<line x1="{LEFT:.2}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="black" stroke-dasharray="4 3"/>"#, py(0.0), LEFT + plot_w).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Reference publication year</text>"#, LEFT + plot_w / 2.0, HEIGHT - 18.0).unwrap();
    writeln!(s, r#"<text x="18" y="{0:.2}" text-anchor="middle" transform="rotate(-90 18 {0:.2})">Citations</text>"#, TOP + plot_h / 2.0).unwrap();

    let series = |value: &dyn Fn(&SpectroscopyRow) -> f64| -> String {
        rows.iter().map(|r| format!("{:.2},{:.2}", px(r.rpy as f64), py(value(r)))).collect::<Vec<_>>().join(" ")
    };
    writeln!(s, r#"<polyline fill="none" stroke="{COUNT_COLOUR}" stroke-width="1.5" points="{}"/>"#, series(&|r| r.count as f64)).unwrap();
    writeln!(s, r#"<polyline fill="none" stroke="{DEV_COLOUR}" stroke-width="1.5" points="{}"/>"#, series(&|r| r.median_dev as f64)).unwrap();

    // legend
    let lx = LEFT + plot_w - 200.0;
    for (i, (colour, label)) in [(COUNT_COLOUR, "count"), (DEV_COLOUR, "median_dev")].into_iter().enumerate() {
        let y = TOP + 12.0 + 16.0 * i as f64;
        writeln!(s, r#"<line x1="{lx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{colour}" stroke-width="2"/>"#, lx + 24.0).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, lx + 30.0, y + 4.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
