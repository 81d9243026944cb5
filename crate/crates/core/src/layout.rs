//! Word-cloud geometry: font scaling, a fixed font-metric model and
//! Archimedean-spiral placement with padded axis-aligned collision boxes.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::scalar::Scalar;
use crate::text::{top_terms, TermWeights};

/// Width of one glyph as a fraction of the font size.
pub const GLYPH_WIDTH_FACTOR: f64 = 0.6;
/// Line height as a fraction of the font size.
pub const LINE_HEIGHT_FACTOR: f64 = 1.2;
/// Smallest canvas side accepted, in pixels.
pub const MIN_CANVAS_SIDE: u32 = 16;

/// Candidates whose padded box comes closer than this to a placed one are
/// rejected, so float rounding can never produce a touching overlap.
const COLLISION_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct CloudConfig<T> {
    pub width: u32,
    pub height: u32,
    pub min_font_size: T,
    pub max_font_size: T,
    pub padding: T,
    /// Radial growth of the spiral per full turn, in pixels.
    pub spiral_step: T,
    /// Angular increment between candidates, in radians.
    pub angle_step: T,
    /// Number of heaviest terms considered. Zero yields an empty cloud.
    pub max_words: usize,
    /// Zero keeps the spiral start angle at 0; anything else picks a
    /// seed-derived start angle.
    pub seed: u64,
    pub font_family: String,
    pub palette: Vec<String>,
}

impl<T: Scalar> Default for CloudConfig<T> {
    fn default() -> Self {
        Self {
            width: 800,
            height: 600,
            min_font_size: T::lit(12.0),
            max_font_size: T::lit(64.0),
            padding: T::lit(4.0),
            spiral_step: T::lit(6.0),
            angle_step: T::lit(0.1),
            max_words: 100,
            seed: 0,
            font_family: "Helvetica, Arial, sans-serif".into(),
            palette: ["#1f4e79", "#2e7d32", "#b23c17", "#6a1b9a", "#00838f", "#8d6e00"]
                .map(String::from)
                .to_vec(),
        }
    }
}

fn is_hex_color(s: &str) -> bool {
    let Some(digits) = s.strip_prefix('#') else {
        return false;
    };
    matches!(digits.len(), 3 | 6) && digits.chars().all(|c| c.is_ascii_hexdigit())
}

fn positive_finite<T: Scalar>(v: T) -> bool {
    v.is_finite() && v > T::zero()
}

impl<T: Scalar> CloudConfig<T> {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.width < MIN_CANVAS_SIDE {
            return Err(ParamError::new("width", format!("must be at least {MIN_CANVAS_SIDE}")));
        }
        if self.height < MIN_CANVAS_SIDE {
            return Err(ParamError::new("height", format!("must be at least {MIN_CANVAS_SIDE}")));
        }
        if !positive_finite(self.min_font_size) {
            return Err(ParamError::new("minFontSize", "must be positive"));
        }
        if !(self.max_font_size.is_finite() && self.max_font_size >= self.min_font_size) {
            return Err(ParamError::new("maxFontSize", "must be at least minFontSize"));
        }
        if !(self.padding.is_finite() && self.padding >= T::zero()) {
            return Err(ParamError::new("padding", "must be nonnegative"));
        }
        if !positive_finite(self.spiral_step) {
            return Err(ParamError::new("spiralStep", "must be positive"));
        }
        if !positive_finite(self.angle_step) {
            return Err(ParamError::new("angleStep", "must be positive"));
        }
        if self.palette.is_empty() {
            return Err(ParamError::new("palette", "needs at least one color"));
        }
        if let Some(bad) = self.palette.iter().find(|c| !is_hex_color(c)) {
            return Err(ParamError::new("palette", format!("`{bad}` is not a hex color")));
        }
        Ok(())
    }

    fn width_t(&self) -> T {
        T::from_u32(self.width).expect("u32 fits")
    }

    fn height_t(&self) -> T {
        T::from_u32(self.height).expect("u32 fits")
    }

    /// Spiral start angle in `[0, 2π)`.
    pub fn start_angle(&self) -> T {
        if self.seed == 0 {
            return T::zero();
        }
        let u: f64 = ChaCha8Rng::seed_from_u64(self.seed).gen();
        T::lit(u * TAU)
    }
}

/// One placed word. `x`/`y` is the box center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct WordBox<T> {
    pub term: String,
    pub weight: T,
    pub font_size: T,
    pub x: T,
    pub y: T,
    pub box_width: T,
    pub box_height: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct CloudLayout<T> {
    pub config: CloudConfig<T>,
    pub placed: Vec<WordBox<T>>,
    pub skipped: Vec<(String, T)>,
}

/// Linear map of `weight` from `[wmin, wmax]` onto the configured font range.
/// A degenerate range maps to the largest font.
pub fn scale_font<T: Scalar>(weight: T, wmin: T, wmax: T, cfg: &CloudConfig<T>) -> Result<T, ParamError> {
    if !(wmin <= weight && weight <= wmax) {
        return Err(ParamError::new("weight", format!("{weight} outside [{wmin}, {wmax}]")));
    }
    if wmax == wmin {
        return Ok(cfg.max_font_size);
    }
    let span = cfg.max_font_size - cfg.min_font_size;
    let size = cfg.min_font_size + span * ((weight - wmin) / (wmax - wmin));
    Ok(size.max(cfg.min_font_size).min(cfg.max_font_size))
}

/// Box size of `term` at `font_size` under the fixed metric model.
pub fn measure_text<T: Scalar>(term: &str, font_size: T) -> Result<(T, T), ParamError> {
    if term.is_empty() {
        return Err(ParamError::new("term", "cannot measure an empty term"));
    }
    let chars = T::from_count(term.chars().count());
    Ok((
        T::lit(GLYPH_WIDTH_FACTOR) * font_size * chars,
        T::lit(LINE_HEIGHT_FACTOR) * font_size,
    ))
}

struct Padded<T> {
    x: T,
    y: T,
    half_w: T,
    half_h: T,
}

impl<T: Scalar> Padded<T> {
    fn collides(&self, other: &Padded<T>, margin: T) -> bool {
        (self.x - other.x).abs() < self.half_w + other.half_w + margin
            && (self.y - other.y).abs() < self.half_h + other.half_h + margin
    }
}

/// Lays the heaviest `cfg.max_words` terms out along an Archimedean spiral
/// from the canvas center, heaviest first. Words for which no free spot is
/// found before the spiral radius exceeds the canvas diagonal are skipped.
pub fn place_words<T: Scalar>(weights: &TermWeights<T>, cfg: &CloudConfig<T>) -> Result<CloudLayout<T>, ParamError> {
    cfg.validate()?;
    let chosen = top_terms(weights, cfg.max_words);
    let mut layout = CloudLayout {
        config: cfg.clone(),
        placed: Vec::with_capacity(chosen.len()),
        skipped: Vec::new(),
    };
    let (Some(&(_, wmax)), Some(&(_, wmin))) = (chosen.first(), chosen.last()) else {
        return Ok(layout);
    };

    let two = T::lit(2.0);
    let width = cfg.width_t();
    let height = cfg.height_t();
    let (cx, cy) = (width / two, height / two);
    let eccentricity = height / width;
    let diagonal = width.hypot(height);
    let phi0 = cfg.start_angle();
    let turn = T::lit(TAU);
    let margin = T::lit(COLLISION_MARGIN);

    let mut occupied: Vec<Padded<T>> = Vec::with_capacity(chosen.len());
    for (term, weight) in chosen {
        let font_size = scale_font(weight, wmin, wmax, cfg)?;
        let (box_width, box_height) = measure_text(&term, font_size)?;
        let half_w = (box_width + cfg.padding) / two;
        let half_h = (box_height + cfg.padding) / two;
        if half_w + half_w > width || half_h + half_h > height {
            layout.skipped.push((term, weight));
            continue;
        }

        let mut spot = None;
        for j in 0usize.. {
            let theta = T::from_count(j) * cfg.angle_step;
            let r = cfg.spiral_step * theta / turn;
            if r > diagonal {
                break;
            }
            let angle = theta + phi0;
            let x = cx + r * angle.cos();
            let y = cy + eccentricity * r * angle.sin();
            if x - half_w < T::zero() || x + half_w > width || y - half_h < T::zero() || y + half_h > height {
                continue;
            }
            let candidate = Padded { x, y, half_w, half_h };
            if occupied.iter().any(|o| o.collides(&candidate, margin)) {
                continue;
            }
            spot = Some(candidate);
            break;
        }

        match spot {
            Some(p) => {
                layout.placed.push(WordBox {
                    term,
                    weight,
                    font_size,
                    x: p.x,
                    y: p.y,
                    box_width,
                    box_height,
                });
                occupied.push(p);
            }
            None => layout.skipped.push((term, weight)),
        }
    }
    Ok(layout)
}
