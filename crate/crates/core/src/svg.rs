//! Minimal hand-emitted SVG line plots and heatmaps. The CSV tables
//! are the authoritative artifacts; these documents are a convenience
//! for eyeballing the scans.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 54.0;

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn finite_bounds(points: impl Iterator<Item = (f64, f64)>) -> Option<(f64, f64, f64, f64)> {
    let mut bounds: Option<(f64, f64, f64, f64)> = None;
    for (x, y) in points {
        if !x.is_finite() || !y.is_finite() {
            continue;
        }
        bounds = Some(match bounds {
            None => (x, x, y, y),
            Some((x0, x1, y0, y1)) => (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
        });
    }
    bounds
}

fn header(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" ",
            "text-anchor=\"middle\">{title}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title
    )
}

fn axis_labels(x0: f64, x1: f64, y0: f64, y1: f64) -> String {
    let bottom = HEIGHT - MARGIN;
    let right = WIDTH - MARGIN;
    format!(
        concat!(
            "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
            "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
            "<text x=\"{m}\" y=\"{lb}\" font-family=\"sans-serif\" font-size=\"11\">{x0:.4}</text>\n",
            "<text x=\"{r}\" y=\"{lb}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{x1:.4}</text>\n",
            "<text x=\"{ly}\" y=\"{b}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{y0:.4}</text>\n",
            "<text x=\"{ly}\" y=\"{tt}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{y1:.4}</text>\n"
        ),
        m = MARGIN,
        b = bottom,
        r = right,
        t = MARGIN,
        lb = bottom + 18.0,
        ly = MARGIN - 6.0,
        tt = MARGIN + 4.0,
        x0 = x0,
        x1 = x1,
        y0 = y0,
        y1 = y1,
    )
}

/// Render one or more named (x, y) series as polylines.
pub fn line_plot(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let all = series.iter().flat_map(|(_, pts)| pts.iter().copied());
    let Some((x0, x1, y0, y1)) = finite_bounds(all) else {
        return header(title) + "</svg>\n";
    };
    let xspan = if x1 > x0 { x1 - x0 } else { 1.0 };
    let yspan = if y1 > y0 { y1 - y0 } else { 1.0 };
    let sx = |x: f64| MARGIN + (x - x0) / xspan * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / yspan * (HEIGHT - 2.0 * MARGIN);

    let mut out = header(title);
    out.push_str(&axis_labels(x0, x1, y0, y1));
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let mut path = String::new();
        for &(x, y) in pts {
            if !x.is_finite() || !y.is_finite() {
                continue;
            }
            if !path.is_empty() {
                path.push(' ');
            }
            path.push_str(&format!("{:.2},{:.2}", sx(x), sy(y)));
        }
        out.push_str(&format!(
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{color}\">{name}</text>\n",
            WIDTH - MARGIN - 150.0,
            MARGIN + 16.0 * (i as f64 + 1.0),
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn ramp(t: f64) -> String {
    // blue -> white -> red
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let s = t / 0.5;
        (
            (33.0 + s * (255.0 - 33.0)) as u8,
            (102.0 + s * (255.0 - 102.0)) as u8,
            (172.0 + s * (255.0 - 172.0)) as u8,
        )
    } else {
        let s = (t - 0.5) / 0.5;
        (
            (255.0 - s * (255.0 - 178.0)) as u8,
            (255.0 - s * (255.0 - 24.0)) as u8,
            (255.0 - s * (255.0 - 43.0)) as u8,
        )
    };
    format!("#{r:02x}{g:02x}{b:02x}")
}

/// Render a value grid as a heatmap: one cell per (x, y) pair, values
/// in row-major order over ys then xs.
pub fn heatmap(title: &str, xs: &[f64], ys: &[f64], values: &[f64]) -> String {
    let mut out = header(title);
    if xs.is_empty() || ys.is_empty() || values.len() != xs.len() * ys.len() {
        out.push_str("</svg>\n");
        return out;
    }
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let (v0, v1) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let span = if v1 > v0 { v1 - v0 } else { 1.0 };

    let cw = (WIDTH - 2.0 * MARGIN) / xs.len() as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / ys.len() as f64;
    for (j, _) in ys.iter().enumerate() {
        for (i, _) in xs.iter().enumerate() {
            let v = values[j * xs.len() + i];
            let color = if v.is_finite() {
                ramp((v - v0) / span)
            } else {
                "#999999".to_string()
            };
            // row 0 at the bottom
            let x = MARGIN + i as f64 * cw;
            let y = HEIGHT - MARGIN - (j as f64 + 1.0) * ch;
            out.push_str(&format!(
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\"/>\n",
                cw + 0.3,
                ch + 0.3,
            ));
        }
    }
    out.push_str(&axis_labels(
        xs[0],
        *xs.last().unwrap(),
        ys[0],
        *ys.last().unwrap(),
    ));
    out.push_str(&format!(
        "<text x=\"{:.0}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"11\">range [{v0:.6}, {v1:.6}]</text>\n",
        MARGIN,
        HEIGHT - 10.0,
    ));
    out.push_str("</svg>\n");
    out
}
