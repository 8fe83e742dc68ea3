//! Report emission: the JSON document schema, CSV rows, and the minimal
//! hand-emitted SVG line chart.

use serde::Serialize;
use serde_json::{json, Value};

use orderstats::statistics::{PartialRow, StatReport};

/// One named verification inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub bound: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, value: f64, bound: f64) -> Check {
        Check {
            name: name.into(),
            pass,
            value,
            bound,
        }
    }
}

/// Top-level JSON document. Key order is fixed by the struct; nested maps
/// serialize with sorted keys, so output is byte-reproducible.
#[derive(Debug, Serialize)]
pub struct Document {
    pub tool_version: &'static str,
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl Document {
    pub fn new(command: &str, params: Value, results: Value) -> Document {
        Document {
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            params,
            results,
            checks: Vec::new(),
            meta: None,
        }
    }

    pub fn with_meta(mut self, runtime_ms: u128) -> Document {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.meta = Some(json!({
            "runtime_ms": runtime_ms as u64,
            "timestamp_unix": timestamp,
        }));
        self
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("report serialization");
        out.push(b'\n');
        out
    }
}

/// StatReport fields destined for `results` (runtime goes to `meta`,
/// workers to `params`).
pub fn stat_results(report: &StatReport) -> Value {
    let mut v = json!({
        "tag": report.tag,
        "x": report.x,
        "lhs": report.lhs,
        "main_term": report.main_term,
        "diff": report.diff,
    });
    let map = v.as_object_mut().unwrap();
    if let Some(n) = report.n {
        map.insert("n".into(), json!(n));
    }
    if let Some(y) = report.y {
        map.insert("y".into(), json!(y));
    }
    if let Some(r) = report.ratio {
        map.insert("ratio".into(), json!(r));
    }
    v
}

pub fn partials_csv(rows: &[PartialRow]) -> String {
    let mut out = String::from("at,lhs,main_term,ratio\n");
    for row in rows {
        let ratio = row
            .ratio
            .map(|r| r.to_string())
            .unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", row.at, row.lhs, row.main_term, ratio));
    }
    out
}

/// Minimal line chart of ratio against the running key (prime or modulus),
/// with a dashed reference line at ratio = 1.
pub fn ratio_chart_svg(rows: &[PartialRow], title: &str) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const ML: f64 = 70.0; // left margin
    const MR: f64 = 20.0;
    const MT: f64 = 40.0;
    const MB: f64 = 50.0;

    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.ratio.map(|ratio| (r.at as f64, ratio)))
        .collect();
    let (x_min, x_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    let (mut y_min, mut y_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
            (lo.min(y), hi.max(y))
        });
    // Keep the reference line in frame and avoid a degenerate scale.
    y_min = y_min.min(1.0) - 0.02;
    y_max = y_max.max(1.0) + 0.02;
    let x_span = (x_max - x_min).max(1.0);
    let y_span = y_max - y_min;

    let sx = |x: f64| ML + (x - x_min) / x_span * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - y_min) / y_span * (H - MT - MB);

    let mut path = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            path.push(' ');
        }
        path.push_str(&format!("{:.2},{:.2}", sx(x), sy(y)));
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{title}</text>\n",
        W / 2.0
    ));
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        H - MB
    ));
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    // Reference line at ratio = 1.
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{0:.2}\" x2=\"{1:.1}\" y2=\"{0:.2}\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
        sy(1.0),
        W - MR
    ));
    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        sx(x_min), H - MB + 18.0, x_min as u64
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        sx(x_max), H - MB + 18.0, x_max as u64
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{y_min:.3}</text>\n",
        ML - 6.0,
        sy(y_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{y_max:.3}</text>\n",
        ML - 6.0,
        sy(y_max)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">1.000</text>\n",
        ML - 6.0,
        sy(1.0)
    ));
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{path}\"/>\n"
    ));
    svg.push_str("</svg>\n");
    svg
}
