//! Deterministic strand-diagram emission for braid words.
//!
//! Diagrams read left to right (one column per letter) with strands indexed
//! bottom-up: object 0 is the bottom strand. Frozen chirality convention: a
//! positive letter draws the strand rising from position `i` over the strand
//! descending from position `i+1`; a negative letter is the mirror image.
//! The convention affects diagrams only, never represented matrices.

use crate::braid_core::word::BraidWord;

/// Output format for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    /// Fixed-width character art.
    Text,
    /// Standalone SVG markup.
    Svg,
}

/// Renders a strand diagram of the word. `mobile`, when given, is the
/// 0-based starting position of a strand to highlight (used by weave
/// renderings; text output ignores it).
///
/// Output is a pure function of the inputs, so repeated renders are
/// byte-identical.
pub fn render(word: &BraidWord, format: RenderFormat, mobile: Option<usize>) -> String {
    match format {
        RenderFormat::Text => render_text(word),
        RenderFormat::Svg => render_svg(word, mobile),
    }
}

fn render_text(word: &BraidWord) -> String {
    let n = word.context().len();
    let left: Vec<String> = word
        .context()
        .charges()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let right: Vec<String> = word
        .final_context()
        .charges()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let labw = left.iter().map(String::len).max().unwrap_or(0);

    // Text row r (top-down) holds strand height h = n − r/2 when r is even;
    // odd rows are the gaps where crossings show their over-strand.
    let rows_total = 2 * n - 1;
    let mut rows: Vec<String> = Vec::with_capacity(rows_total);
    for r in 0..rows_total {
        let mut s = String::new();
        if r % 2 == 0 {
            let label = &left[n - 1 - r / 2];
            for _ in 0..labw - label.len() {
                s.push(' ');
            }
            s.push_str(label);
            s.push_str(" --");
        } else {
            for _ in 0..labw + 3 {
                s.push(' ');
            }
        }
        rows.push(s);
    }

    for &(i, sign) in word.letters() {
        // σ_i crosses strand heights i and i+1; their text rows and the gap
        // between them form the 3×3 crossing cell.
        let top_row = 2 * (n - 1 - i as usize);
        for (r, row) in rows.iter_mut().enumerate() {
            let cell = if r == top_row {
                "\\ /"
            } else if r == top_row + 1 {
                if sign > 0 {
                    " / "
                } else {
                    " \\ "
                }
            } else if r == top_row + 2 {
                "/ \\"
            } else if r % 2 == 0 {
                "---"
            } else {
                "   "
            };
            row.push_str(cell);
        }
    }

    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        out.push_str(row);
        if r % 2 == 0 {
            out.push_str("-- ");
            out.push_str(&right[n - 1 - r / 2]);
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}

/// Geometry constants for the SVG layout (integer pixels keep the output
/// byte-stable).
const SVG_MARGIN: i64 = 24;
const SVG_COL: i64 = 28;
const SVG_PITCH: i64 = 28;
const SVG_LABEL_GUTTER: i64 = 34;
const STRAND_COLOR: &str = "#1a1a1a";
const MOBILE_COLOR: &str = "#c0392b";
const HALO_COLOR: &str = "#ffffff";

fn render_svg(word: &BraidWord, mobile: Option<usize>) -> String {
    let n = word.context().len();
    let cols = word.len() as i64;
    let x0 = SVG_MARGIN + SVG_LABEL_GUTTER;
    let x_end = x0 + SVG_COL * (cols + 1);
    let width = x_end + SVG_LABEL_GUTTER + SVG_MARGIN;
    let height = 2 * SVG_MARGIN + SVG_PITCH * (n as i64 - 1);
    // Bottom-up: position p sits at height p+1 from the bottom.
    let y_of = |p: usize| SVG_MARGIN + SVG_PITCH * (n as i64 - 1 - p as i64);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    let line = |out: &mut String, x1: i64, y1: i64, x2: i64, y2: i64, color: &str, w: i64| {
        out.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" \
             stroke-width=\"{w}\" stroke-linecap=\"round\"/>\n"
        ));
    };
    let color_of = |is_mobile: bool| if is_mobile { MOBILE_COLOR } else { STRAND_COLOR };

    // Track where the highlighted strand currently is.
    let mut mobile_pos = mobile;

    // Lead-in segments.
    for p in 0..n {
        line(
            &mut out,
            x0,
            y_of(p),
            x0 + SVG_COL / 2,
            y_of(p),
            color_of(mobile_pos == Some(p)),
            2,
        );
    }

    for (t, &(i, sign)) in word.letters().iter().enumerate() {
        let xl = x0 + SVG_COL / 2 + SVG_COL * t as i64;
        let xr = xl + SVG_COL;
        let lo = i as usize - 1;
        let hi = i as usize;
        for p in 0..n {
            if p != lo && p != hi {
                line(&mut out, xl, y_of(p), xr, y_of(p), color_of(mobile_pos == Some(p)), 2);
            }
        }
        let asc = (xl, y_of(lo), xr, y_of(hi), color_of(mobile_pos == Some(lo)));
        let desc = (xl, y_of(hi), xr, y_of(lo), color_of(mobile_pos == Some(hi)));
        let (under, over) = if sign > 0 { (desc, asc) } else { (asc, desc) };
        line(&mut out, under.0, under.1, under.2, under.3, under.4, 2);
        line(&mut out, over.0, over.1, over.2, over.3, HALO_COLOR, 7);
        line(&mut out, over.0, over.1, over.2, over.3, over.4, 2);
        mobile_pos = match mobile_pos {
            Some(p) if p == lo => Some(hi),
            Some(p) if p == hi => Some(lo),
            other => other,
        };
    }

    // Tail segments.
    let x_tail = x0 + SVG_COL / 2 + SVG_COL * cols;
    for p in 0..n {
        line(
            &mut out,
            x_tail,
            y_of(p),
            x_end,
            y_of(p),
            color_of(mobile_pos == Some(p)),
            2,
        );
    }

    // Charge labels on both ends.
    let text_el = |out: &mut String, x: i64, y: i64, anchor: &str, label: &str| {
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\" \
             fill=\"{STRAND_COLOR}\" text-anchor=\"{anchor}\">{label}</text>\n"
        ));
    };
    for (p, c) in word.context().charges().iter().enumerate() {
        text_el(&mut out, x0 - 6, y_of(p) + 4, "end", &c.to_string());
    }
    for (p, c) in word.final_context().charges().iter().enumerate() {
        text_el(&mut out, x_end + 6, y_of(p) + 4, "start", &c.to_string());
    }

    out.push_str("</svg>\n");
    out
}
