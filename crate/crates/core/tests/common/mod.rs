//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

/// Character-at-a-time tokenizer written without `split`/`trim_matches`.
pub fn naive_tokens(text: &str) -> Vec<String> {
    let lowered: Vec<char> = text.to_lowercase().chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lowered.len() {
        let keep = |c: char| c.is_alphabetic() || c.is_numeric() || c == '-' || c == '\'';
        if !keep(lowered[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < lowered.len() && keep(lowered[i]) {
            i += 1;
        }
        let mut lo = start;
        let mut hi = i;
        while lo < hi && (lowered[lo] == '-' || lowered[lo] == '\'') {
            lo += 1;
        }
        while hi > lo && (lowered[hi - 1] == '-' || lowered[hi - 1] == '\'') {
            hi -= 1;
        }
        let word: String = lowered[lo..hi].iter().collect();
        if hi - lo >= 2 && word.chars().any(|c| c.is_alphabetic()) {
            out.push(word);
        }
    }
    out
}

/// Integer recount of filtered title and abstract tokens over documents.
pub fn naive_recount(docs: &[(String, String)], stopwords: &HashSet<String>) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for (title, abstract_text) in docs {
        for word in naive_tokens(title).into_iter().chain(naive_tokens(abstract_text)) {
            if !stopwords.contains(&word) {
                *counts.entry(word).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Pairwise padded-box overlap and canvas-containment check, computed from
/// box edges rather than center distances.
pub fn layout_violations(boxes: &[(f64, f64, f64, f64)], padding: f64, width: f64, height: f64) -> (usize, usize) {
    let edges: Vec<[f64; 4]> = boxes
        .iter()
        .map(|&(x, y, w, h)| {
            let pw = w + padding;
            let ph = h + padding;
            [x - pw / 2.0, x + pw / 2.0, y - ph / 2.0, y + ph / 2.0]
        })
        .collect();
    let mut overlaps = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let a = edges[i];
            let b = edges[j];
            let ix = a[1].min(b[1]) - a[0].max(b[0]);
            let iy = a[3].min(b[3]) - a[2].max(b[2]);
            if ix > 0.0 && iy > 0.0 {
                overlaps += 1;
            }
        }
    }
    let outside = boxes
        .iter()
        .filter(|&&(x, y, w, h)| x - w / 2.0 < 0.0 || x + w / 2.0 > width || y - h / 2.0 < 0.0 || y + h / 2.0 > height)
        .count();
    (overlaps, outside)
}

/// Plain cosine over string-keyed maps.
pub fn naive_cosine(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let dot: f64 = a.iter().filter_map(|(k, x)| b.get(k).map(|y| x * y)).sum();
    let na: f64 = a.values().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.values().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}
