use pcloud_core::analysis::SuggestionRow;
use pcloud_core::GapEntry;

fn pad_to(rows: &[Vec<String>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect()
}

/// Left-aligns the first `left` columns, right-aligns the rest.
fn render(rows: Vec<Vec<String>>, left: usize) -> String {
    let widths = pad_to(&rows);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, &w))| {
                if i < left {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn gap_table(entries: &[GapEntry]) -> String {
    let mut rows = vec![["term", "sub%", "pc%", "ratio", "flag"].map(String::from).to_vec()];
    rows.extend(entries.iter().map(|e| {
        vec![
            e.term.clone(),
            format!("{:.2}", e.sub_share * 100.0),
            format!("{:.2}", e.pc_share * 100.0),
            format!("{:.3}", e.ratio),
            if e.flagged { "GAP".into() } else { String::new() },
        ]
    }));
    render(rows, 1)
}

pub fn suggestion_table(rows: &[SuggestionRow]) -> String {
    let mut out = vec![["rank", "reviewer", "score", "assigned"].map(String::from).to_vec()];
    out.extend(rows.iter().enumerate().map(|(i, r)| {
        vec![
            (i + 1).to_string(),
            r.reviewer_id.clone(),
            format!("{:.6}", r.score),
            if r.assigned { "yes".into() } else { "no".into() },
        ]
    }));
    render(out, 2)
}
