//! Minimal SVG emitter for log-log plots. Output is byte-stable: every
//! coordinate is printed with fixed precision.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Scatter,
    Line,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub mark: Mark,
    pub color: &'static str,
    /// Data-space points; both coordinates must be positive.
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogLogPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub annotation: Option<String>,
    /// Text placed in an XML comment after the prolog.
    pub comment: Option<String>,
    /// Extra x values the axis must cover.
    pub x_extent: Vec<f64>,
}

/// Decade range `[10^lo, 10^hi]` covering `values`.
fn decades(values: impl Iterator<Item = f64>) -> (i32, i32) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v.log10());
        hi = hi.max(v.log10());
    }
    let (lo, hi) = (lo.floor() as i32, hi.ceil() as i32);
    (lo, if hi == lo { lo + 1 } else { hi })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl LogLogPlot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        LogLogPlot {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
            annotation: None,
            comment: None,
            x_extent: Vec::new(),
        }
    }

    pub fn series(mut self, label: &str, mark: Mark, color: &'static str, points: Vec<(f64, f64)>) -> Self {
        self.series.push(Series {
            label: label.into(),
            mark,
            color,
            points,
        });
        self
    }

    pub fn annotate(mut self, text: impl Into<String>) -> Self {
        self.annotation = Some(text.into());
        self
    }

    pub fn comment(mut self, text: impl Into<String>) -> Self {
        self.comment = Some(text.into());
        self
    }

    pub fn cover_x(mut self, lo: f64, hi: f64) -> Self {
        self.x_extent.extend([lo, hi]);
        self
    }

    pub fn render(&self) -> Result<String> {
        let all = || self.series.iter().flat_map(|s| s.points.iter().copied());
        if all().next().is_none() {
            return Err(Error::invalid("plot has no points"));
        }
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !all().all(|(x, y)| positive(x) && positive(y)) || !self.x_extent.iter().all(|&x| positive(x)) {
            return Err(Error::invalid("log-log plot needs positive finite coordinates"));
        }
        let (x0, x1) = decades(all().map(|p| p.0).chain(self.x_extent.iter().copied()));
        let (y0, y1) = decades(all().map(|p| p.1));
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x.log10() - x0 as f64) / (x1 - x0) as f64 * pw;
        let sy = |y: f64| TOP + ph - (y.log10() - y0 as f64) / (y1 - y0) as f64 * ph;

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        if let Some(c) = &self.comment {
            let _ = writeln!(s, "<!-- {} -->", c.replace("--", "- -"));
        }
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        // decade grid and tick labels
        for d in x0..=x1 {
            let x = sx(10f64.powi(d));
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"##,
                TOP + ph,
                TOP + ph + 18.0
            );
        }
        for d in y0..=y1 {
            let y = sy(10f64.powi(d));
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
                LEFT + pw,
                LEFT - 6.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 10.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );
        for (i, series) in self.series.iter().enumerate() {
            let _ = writeln!(s, r#"<g class="series" data-label="{}">"#, escape(&series.label));
            match series.mark {
                Mark::Scatter => {
                    for &(x, y) in &series.points {
                        let _ = writeln!(
                            s,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                            sx(x),
                            sy(y),
                            series.color
                        );
                    }
                }
                Mark::Line => {
                    let path: Vec<String> = series
                        .points
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                        path.join(" "),
                        series.color
                    );
                }
            }
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="{}">{}</text>"#,
                LEFT + 10.0,
                TOP + 16.0 + 16.0 * i as f64,
                series.color,
                escape(&series.label)
            );
            let _ = writeln!(s, "</g>");
        }
        if let Some(a) = &self.annotation {
            let _ = writeln!(
                s,
                r#"<text class="annotation" x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT + pw - 10.0,
                TOP + ph - 12.0,
                escape(a)
            );
        }
        let _ = writeln!(s, "</svg>");
        Ok(s)
    }
}
