//! Deterministic SVG dot chart for the indicator table.
//!
//! One labeled row per portfolio with two marks on a fixed [0, 1] axis:
//! a circle for `rao_stirling` and a square for `div`. Identical tables
//! render to identical bytes.

use std::fmt::Write;

use diverse::OutputTable;

const WIDTH: f64 = 720.0;
const MARGIN_LEFT: f64 = 170.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 56.0;
const MARGIN_BOTTOM: f64 = 30.0;
const ROW_HEIGHT: f64 = 24.0;

const RAO_COLOR: &str = "#1f77b4";
const DIV_COLOR: &str = "#d62728";

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders the table as a self-contained SVG document.
pub fn render(table: &OutputTable) -> String {
    let rows = table.len();
    let height = MARGIN_TOP + rows as f64 * ROW_HEIGHT + MARGIN_BOTTOM;
    let span = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let x = |v: f64| MARGIN_LEFT + v.clamp(0.0, 1.0) * span;
    let chart_bottom = MARGIN_TOP + rows as f64 * ROW_HEIGHT;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, "<title>diversity indicators by portfolio</title>");
    let _ = writeln!(
        svg,
        r##"<rect class="bg" width="{WIDTH}" height="{height}" fill="#ffffff"/>"##
    );

    // legend
    let _ = writeln!(
        svg,
        r#"<circle cx="{:.1}" cy="20" r="5" fill="{RAO_COLOR}"/>"#,
        MARGIN_LEFT + 5.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="24" fill="#333">rao_stirling</text>"##,
        MARGIN_LEFT + 15.0
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{:.1}" y="15" width="10" height="10" fill="{DIV_COLOR}"/>"#,
        MARGIN_LEFT + 115.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="24" fill="#333">div</text>"##,
        MARGIN_LEFT + 130.0
    );

    // x axis grid and tick labels
    for tick in 0..=4 {
        let v = tick as f64 / 4.0;
        let tx = x(v);
        let _ = writeln!(
            svg,
            r##"<line class="grid" x1="{tx:.1}" y1="{:.1}" x2="{tx:.1}" y2="{:.1}" stroke="#dddddd"/>"##,
            MARGIN_TOP - 6.0,
            chart_bottom + 6.0
        );
        let _ = writeln!(
            svg,
            r##"<text class="tick-label" x="{tx:.1}" y="{:.1}" text-anchor="middle" fill="#666">{}</text>"##,
            MARGIN_TOP - 12.0,
            format_args!("{v:.2}")
        );
    }

    for (i, record) in table.records().iter().enumerate() {
        let y = MARGIN_TOP + i as f64 * ROW_HEIGHT + ROW_HEIGHT / 2.0;
        let label = escape_xml(&table.display_label(i));
        let _ = writeln!(
            svg,
            r##"<line class="row-guide" x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#eeeeee"/>"##,
            MARGIN_LEFT,
            WIDTH - MARGIN_RIGHT
        );
        let rao_x = x(record.rao_stirling);
        let div_x = x(record.div);
        let _ = writeln!(
            svg,
            r##"<line class="row-range" x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#999999"/>"##,
            rao_x.min(div_x),
            rao_x.max(div_x)
        );
        let _ = writeln!(
            svg,
            r##"<text class="row-label" x="{:.1}" y="{:.1}" text-anchor="end" fill="#333">{label}</text>"##,
            MARGIN_LEFT - 10.0,
            y + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<circle class="mark-rao" cx="{rao_x:.1}" cy="{y:.1}" r="5" fill="{RAO_COLOR}"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<rect class="mark-div" x="{:.1}" y="{:.1}" width="10" height="10" fill="{DIV_COLOR}"/>"#,
            div_x - 5.0,
            y - 5.0
        );
    }

    svg.push_str("</svg>\n");
    svg
}
