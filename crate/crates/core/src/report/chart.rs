use std::fmt::Write as _;

use crate::econ::{gain_curve, monthly_cost, CostParams, NcfValue, ResidenceOption};

use super::ReportError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// Monthly housing plus transport.
    CostVsDistance,
    /// Saving against living in the same place without telecommuting.
    GainVsDistance,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 620.0;
const TOP: f64 = 60.0;
const BOTTOM: f64 = 520.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

struct Series {
    ncf: f64,
    /// (miles, dollars), ascending in miles.
    points: Vec<(f64, f64)>,
}

fn series(options: &[ResidenceOption], ncfs: &[NcfValue], params: &CostParams, kind: CurveKind) -> Vec<Series> {
    match kind {
        CurveKind::CostVsDistance => {
            let mut order: Vec<&ResidenceOption> = options.iter().collect();
            order.sort_by(|a, b| a.distance.total_cmp(&b.distance));
            ncfs.iter()
                .map(|&ncf| Series {
                    ncf: ncf.value(),
                    points: order
                        .iter()
                        .map(|o| (o.distance, monthly_cost(o, ncf, params)))
                        .filter(|(_, c)| c.feasible)
                        .map(|(d, c)| (d, c.total.as_dollars()))
                        .collect(),
                })
                .collect()
        }
        CurveKind::GainVsDistance => {
            let points = gain_curve(options, ncfs, params);
            ncfs.iter()
                .map(|&ncf| Series {
                    ncf: ncf.value(),
                    points: points
                        .iter()
                        .filter(|p| p.feasible && p.ncf == ncf)
                        .map(|p| (p.option.distance, p.gain.as_dollars()))
                        .collect(),
                })
                .collect()
        }
    }
}

/// Step of 1, 2 or 5 times a power of ten giving about five intervals.
fn nice_step(max: f64) -> f64 {
    let raw = max / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * magnitude)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * magnitude)
}

/// One polyline per NCF value, distance on a log10(1 + miles) axis. The
/// output depends only on the inputs.
pub fn emit_curves(
    options: &[ResidenceOption],
    ncfs: &[NcfValue],
    params: &CostParams,
    kind: CurveKind,
) -> Result<String, ReportError> {
    if ncfs.is_empty() {
        return Err(ReportError::NoSeries);
    }
    let all = series(options, ncfs, params, kind);
    if let Some(s) = all.iter().find(|s| s.points.len() < 2) {
        return Err(ReportError::TooFewPoints {
            ncf: s.ncf,
            points: s.points.len(),
        });
    }

    let max_miles = all.iter().flat_map(|s| &s.points).map(|p| p.0).fold(0.0, f64::max);
    let x_span = (1.0 + max_miles).log10().ceil().max(1.0);
    let max_dollars = all.iter().flat_map(|s| &s.points).map(|p| p.1).fold(0.0, f64::max);
    let (y_step, y_max) = if max_dollars > 0.0 {
        let step = nice_step(max_dollars);
        (step, (max_dollars / step).ceil() * step)
    } else {
        (1.0, 5.0)
    };
    let x = |miles: f64| LEFT + (1.0 + miles).log10() / x_span * (RIGHT - LEFT);
    let y = |dollars: f64| BOTTOM - dollars / y_max * (BOTTOM - TOP);

    let (title, y_label) = match kind {
        CurveKind::CostVsDistance => ("Monthly housing and transport cost", "USD per month"),
        CurveKind::GainVsDistance => ("Monthly gain from telecommuting", "USD per month"),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="30" font-family="sans-serif" font-size="18" text-anchor="middle">{title}</text>"#,
        (LEFT + RIGHT) / 2.0
    );

    let mut tick = 0.0;
    while tick <= y_max + y_step / 2.0 {
        let ty = y(tick);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{ty:.2}" x2="{RIGHT}" y2="{ty:.2}" stroke="#dddddd" stroke-width="1"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            ty + 4.0,
            tick.round() as i64
        );
        tick += y_step;
    }
    let mut miles: f64 = 0.0;
    while (1.0 + miles).log10() <= x_span + 1e-9 {
        let tx = x(miles);
        let _ = writeln!(
            svg,
            r##"<line x1="{tx:.2}" y1="{TOP}" x2="{tx:.2}" y2="{BOTTOM}" stroke="#dddddd" stroke-width="1"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{tx:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            BOTTOM + 18.0,
            miles as i64
        );
        miles = if miles == 0.0 { 10.0 } else { miles * 10.0 };
    }
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="#000000" stroke-width="1"/>"##,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">Commute distance (miles, log scale)</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 45.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.2})">{y_label}</text>"#,
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    );

    for (i, s) in all.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = s.points.iter().map(|&(d, v)| format!("{:.2},{:.2}", x(d), y(v))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>NCF {}</title></polyline>"#,
            points.join(" "),
            s.ncf
        );
        let ly = TOP + 20.0 * i as f64 + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="640" y1="{ly:.2}" x2="670" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="678" y="{:.2}" font-family="sans-serif" font-size="12">NCF = {}</text>"#,
            ly + 4.0,
            s.ncf
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
