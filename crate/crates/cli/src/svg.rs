//! Fixed-layout SVG polylines: an 800×800 canvas, data scaled uniformly into
//! a 20-unit margin, y up, three decimals.

use besselmap::ComplexValue;

pub const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub class: &'static str,
    pub stroke: &'static str,
    /// Connected pieces; each becomes one polyline.
    pub runs: Vec<Vec<ComplexValue>>,
}

fn bounds(curves: &[Curve]) -> Option<(f64, f64, f64, f64)> {
    let mut it = curves.iter().flat_map(|c| c.runs.iter().flatten());
    let first = it.next()?;
    Some(it.fold((first.re, first.re, first.im, first.im), |(x0, x1, y0, y1), p| {
        (x0.min(p.re), x1.max(p.re), y0.min(p.im), y1.max(p.im))
    }))
}

pub fn polyline_count(curves: &[Curve]) -> usize {
    curves.iter().map(|c| c.runs.len()).sum()
}

pub fn render(curves: &[Curve], comments: &[String]) -> String {
    let (x0, x1, y0, y1) = bounds(curves).unwrap_or((-1.0, 1.0, -1.0, 1.0));
    let span = (x1 - x0).max(y1 - y0);
    let scale = if span > 0.0 { (CANVAS - 2.0 * MARGIN) / span } else { 1.0 };
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let half = 0.5 * CANVAS;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n",
        c = CANVAS
    ));
    for c in comments {
        out.push_str(&format!("<!-- {} -->\n", c.replace("--", "- -")));
    }
    out.push_str(&format!("<rect width=\"{c}\" height=\"{c}\" fill=\"white\"/>\n", c = CANVAS));
    for curve in curves {
        for run in &curve.runs {
            let pts: Vec<String> = run
                .iter()
                .map(|p| format!("{:.3},{:.3}", half + (p.re - cx) * scale, half - (p.im - cy) * scale))
                .collect();
            out.push_str(&format!(
                "<polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                curve.class,
                curve.stroke,
                pts.join(" ")
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
