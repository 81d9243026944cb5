//! Word clouds and coverage analysis for programme committee chairs.
//!
//! Submissions and reviewer publications go through a sanitizing text
//! pipeline into term weights. Those weights drive word-cloud layouts
//! rendered as SVG, a term-level comparison of submission demand with PC
//! competence, and cosine-ranked reviewer suggestions.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod analysis;
pub mod cloud;
pub mod corpus;
pub mod error;
pub mod layout;
mod scalar;
pub mod svg;
pub mod text;

pub use error::ParamError;
pub use scalar::Scalar;

pub type TermWeights = text::TermWeights<f64>;
pub type TermDistribution = analysis::TermDistribution<f64>;
pub type CloudConfig = layout::CloudConfig<f64>;
pub type CloudLayout = layout::CloudLayout<f64>;
pub type WordBox = layout::WordBox<f64>;
pub type GapEntry = analysis::GapEntry<f64>;
pub type GapThresholds = analysis::GapThresholds<f64>;
pub type Suggestion = analysis::Suggestion<f64>;

pub type TermWeights32 = text::TermWeights<f32>;
pub type CloudConfig32 = layout::CloudConfig<f32>;
pub type CloudLayout32 = layout::CloudLayout<f32>;
