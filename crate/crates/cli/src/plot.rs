//! SVG rendering of the real affine curve `f(x, y, 1) = 0` together with its
//! real bitangents.

use std::fmt::Write as _;

use num_complex::Complex64;

use bitangent_core::projgeom::{ProjLine, TernaryQuartic};

use crate::error::CliError;

const PLOT_SIZE: f64 = 640.0;
const MARGIN: f64 = 20.0;
const LEGEND_WIDTH: f64 = 300.0;
const PALETTE: [&str; 12] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#1f78b4",
    "#b2df8a", "#fb9a99", "#cab2d6", "#666666",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn from_values(v: &[f64]) -> Result<Self, CliError> {
        let [xmin, xmax, ymin, ymax] = v else {
            return Err(CliError::Usage(format!(
                "--window takes xmin,xmax,ymin,ymax, got {} values",
                v.len()
            )));
        };
        let w = Window {
            xmin: *xmin,
            xmax: *xmax,
            ymin: *ymin,
            ymax: *ymax,
        };
        if !v.iter().all(|x| x.is_finite()) || w.xmin >= w.xmax || w.ymin >= w.ymax {
            return Err(CliError::Usage(format!("invalid window {v:?}")));
        }
        Ok(w)
    }

    /// Square window around the given points, or `[-2, 2]²`.
    pub fn around(points: &[[f64; 2]]) -> Self {
        let finite: Vec<&[f64; 2]> = points
            .iter()
            .filter(|p| p[0].abs() < 1e3 && p[1].abs() < 1e3)
            .collect();
        if finite.is_empty() {
            return Window {
                xmin: -2.0,
                xmax: 2.0,
                ymin: -2.0,
                ymax: 2.0,
            };
        }
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in finite {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let centre = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let half = ((hi[0] - lo[0]).max(hi[1] - lo[1]) * 0.625).max(1.0);
        Window {
            xmin: centre[0] - half,
            xmax: centre[0] + half,
            ymin: centre[1] - half,
            ymax: centre[1] + half,
        }
    }

    fn to_canvas(self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.xmin) / (self.xmax - self.xmin) * PLOT_SIZE,
            MARGIN + (self.ymax - y) / (self.ymax - self.ymin) * PLOT_SIZE,
        )
    }

    /// The part of `a x + b y + c = 0` inside the window.
    fn clip(&self, [a, b, c]: [f64; 3]) -> Option<([f64; 2], [f64; 2])> {
        let mut pts: Vec<[f64; 2]> = Vec::new();
        let eps = 1e-12 * (self.xmax - self.xmin).max(self.ymax - self.ymin);
        if b.abs() > 1e-300 {
            for x in [self.xmin, self.xmax] {
                let y = -(a * x + c) / b;
                if y >= self.ymin - eps && y <= self.ymax + eps {
                    pts.push([x, y]);
                }
            }
        }
        if a.abs() > 1e-300 {
            for y in [self.ymin, self.ymax] {
                let x = -(b * y + c) / a;
                if x >= self.xmin - eps && x <= self.xmax + eps {
                    pts.push([x, y]);
                }
            }
        }
        let dir = [-b, a];
        let along = |p: &[f64; 2]| p[0] * dir[0] + p[1] * dir[1];
        let first = pts.iter().min_by(|p, q| along(p).total_cmp(&along(q)))?;
        let last = pts.iter().max_by(|p, q| along(p).total_cmp(&along(q)))?;
        (along(last) - along(first) > eps).then_some((*first, *last))
    }
}

pub struct PlotLine {
    /// Real coefficients of the line.
    pub coords: [f64; 3],
    pub class: usize,
}

pub struct PlotInput<'a> {
    pub quartic: &'a TernaryQuartic,
    pub lines: Vec<PlotLine>,
    /// Legend text per class.
    pub legend: Vec<String>,
    pub window: Window,
    pub grid: usize,
    pub title: String,
}

pub struct Plot {
    pub svg: String,
    /// Whether a real curve was drawn. Curves with non-real coefficients
    /// have at most finitely many real points; they are drawn lines-only
    /// and count as not found.
    pub curve_found: bool,
}

/// Zero-crossing segments of the grid samples, in window coordinates.
fn contour(values: &[Vec<f64>], w: &Window, n: usize) -> Vec<([f64; 2], [f64; 2])> {
    let dx = (w.xmax - w.xmin) / n as f64;
    let dy = (w.ymax - w.ymin) / n as f64;
    let at = |i: usize, j: usize| [w.xmin + i as f64 * dx, w.ymin + j as f64 * dy];
    let cross = |p: [f64; 2], q: [f64; 2], fp: f64, fq: f64| {
        let t = fp / (fp - fq);
        [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
    };
    let mut segments = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let f = corners.map(|(a, b)| values[b][a]);
            let p = corners.map(|(a, b)| at(a, b));
            // edges: bottom, right, top, left
            let hits: Vec<Option<[f64; 2]>> = (0..4)
                .map(|k| {
                    let (a, b) = (k, (k + 1) % 4);
                    ((f[a] > 0.0) != (f[b] > 0.0)).then(|| cross(p[a], p[b], f[a], f[b]))
                })
                .collect();
            let found: Vec<[f64; 2]> = hits.iter().flatten().copied().collect();
            match found.len() {
                2 => segments.push((found[0], found[1])),
                4 => {
                    let centre = f.iter().sum::<f64>() / 4.0;
                    let [b, r, t, l] = [found[0], found[1], found[2], found[3]];
                    if (centre > 0.0) == (f[0] > 0.0) {
                        segments.push((b, r));
                        segments.push((t, l));
                    } else {
                        segments.push((l, b));
                        segments.push((r, t));
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render(input: &PlotInput) -> Plot {
    let w = &input.window;
    let n = input.grid;
    let real_coeffs = input.quartic.is_real();
    let segments = if real_coeffs {
        let values: Vec<Vec<f64>> = (0..=n)
            .map(|j| {
                let y = w.ymin + j as f64 * (w.ymax - w.ymin) / n as f64;
                (0..=n)
                    .map(|i| {
                        let x = w.xmin + i as f64 * (w.xmax - w.xmin) / n as f64;
                        input
                            .quartic
                            .eval(&[
                                Complex64::new(x, 0.0),
                                Complex64::new(y, 0.0),
                                Complex64::new(1.0, 0.0),
                            ])
                            .re
                    })
                    .collect()
            })
            .collect();
        contour(&values, w, n)
    } else {
        Vec::new()
    };
    let curve_found = !segments.is_empty();

    let width = PLOT_SIZE + 2.0 * MARGIN + LEGEND_WIDTH;
    let height = PLOT_SIZE + 2.0 * MARGIN + 30.0;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r#"<title>{}</title>"#, escape(&input.title));
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r##"<rect id="window" x="{MARGIN}" y="{MARGIN}" width="{PLOT_SIZE}" height="{PLOT_SIZE}" fill="none" stroke="#999999" stroke-dasharray="6,4"/>"##
    );

    if curve_found {
        let mut d = String::new();
        for (a, b) in &segments {
            let (x0, y0) = w.to_canvas(a[0], a[1]);
            let (x1, y1) = w.to_canvas(b[0], b[1]);
            let _ = write!(d, "M{x0:.2} {y0:.2}L{x1:.2} {y1:.2}");
        }
        let _ = writeln!(
            svg,
            r#"<path id="curve" d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }

    let lx = PLOT_SIZE + 2.0 * MARGIN;
    let _ = writeln!(svg, r#"<g id="bitangents" stroke-width="1">"#);
    let mut hidden = 0;
    for l in &input.lines {
        let Some((a, b)) = w.clip(l.coords) else {
            hidden += 1;
            continue;
        };
        let (x0, y0) = w.to_canvas(a[0], a[1]);
        let (x1, y1) = w.to_canvas(b[0], b[1]);
        let _ = writeln!(
            svg,
            r#"<line class="orbit{}" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="{}"/>"#,
            l.class,
            PALETTE[l.class % PALETTE.len()]
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<g id="legend" font-family="sans-serif" font-size="12">"#
    );
    for (k, text) in input.legend.iter().enumerate() {
        let y = MARGIN + 10.0 + 20.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"/>"#,
            lx + 24.0,
            PALETTE[k % PALETTE.len()]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 30.0,
            y + 4.0,
            escape(text)
        );
    }
    let _ = writeln!(svg, "</g>");
    if hidden > 0 {
        let y = MARGIN + 10.0 + 20.0 * input.legend.len() as f64;
        let _ = writeln!(
            svg,
            r#"<text id="hidden" x="{lx}" y="{}" font-family="sans-serif" font-size="12">{hidden} real bitangent(s) outside the window or at infinity</text>"#,
            y + 4.0
        );
    }

    let note = if !real_coeffs {
        Some("warning: non-real coefficients, curve not drawn")
    } else if !curve_found {
        Some("warning: no real points of the curve in this window")
    } else {
        None
    };
    if let Some(note) = note {
        let _ = writeln!(
            svg,
            r##"<text id="warning" x="{MARGIN}" y="{}" font-family="sans-serif" font-size="14" fill="#b00000">{note}</text>"##,
            PLOT_SIZE + 2.0 * MARGIN + 16.0
        );
    }
    svg.push_str("</svg>\n");
    Plot { svg, curve_found }
}

pub fn real_coords(l: &ProjLine) -> [f64; 3] {
    l.coords().map(|c| c.re)
}
