//! Normal distribution utilities and normality diagnostics.

mod normal;
mod qq;
mod shapiro_wilk;

pub use normal::{normal_cdf, normal_pdf, normal_quantile, normal_sf};
pub use qq::{qq_points, QqData, QqPoint};
pub use shapiro_wilk::{shapiro_wilk, NormalityResult, SHAPIRO_WILK_MAX_N, SHAPIRO_WILK_MIN_N};
