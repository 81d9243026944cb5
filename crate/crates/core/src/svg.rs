use std::fmt::Write;

use crate::layout::CloudLayout;
use crate::scalar::Scalar;

fn escape_into(out: &mut String, s: &str) {
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
}

/// Renders a layout as a standalone SVG 1.1 document.
///
/// Each word is a `<text>` anchored at its box center, filled from the
/// palette by placement rank, and tagged with `data-term`/`data-weight` so a
/// client can map clicks back to terms. Output is byte-deterministic.
pub fn render_svg<T: Scalar>(layout: &CloudLayout<T>) -> String {
    let cfg = &layout.config;
    let mut out = String::with_capacity(256 + 160 * layout.placed.len());
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = cfg.width,
        h = cfg.height
    );
    for (rank, word) in layout.placed.iter().enumerate() {
        let fill = &cfg.palette[rank % cfg.palette.len()];
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"{:.2}\" font-family=\"",
            word.x, word.y, word.font_size
        );
        escape_into(&mut out, &cfg.font_family);
        out.push_str("\" fill=\"");
        escape_into(&mut out, fill);
        out.push_str("\" text-anchor=\"middle\" dominant-baseline=\"central\" data-term=\"");
        escape_into(&mut out, &word.term);
        let _ = write!(out, "\" data-weight=\"{:.2}\">", word.weight);
        escape_into(&mut out, &word.term);
        out.push_str("</text>\n");
    }
    out.push_str("</svg>\n");
    out
}
