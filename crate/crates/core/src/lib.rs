//! Frequentist statistics from first principles.
//!
//! The crate covers the descriptive toolbox (frequency tables, empirical
//! CDFs, location/dispersion/shape/concentration measures), bivariate
//! association and simple regression, finite probability spaces, thirteen
//! parametric distribution laws, sampling and point estimation, and the
//! classical confidence intervals and hypothesis tests, together with
//! Likert item analysis and a few matrix tools.
//!
//! ```
//! use freqstat::data::RawSample;
//! use freqstat::descriptive;
//!
//! let sample = RawSample::metric(vec![2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
//! let d = descriptive::dispersion(&sample).unwrap();
//! assert!((d.variance - 32.0 / 7.0).abs() < 1e-12);
//! ```

pub mod bivariate;
pub mod data;
pub mod descriptive;
pub mod distributions;
pub mod error;
pub mod inference;
pub mod likert;
pub mod matrix;
pub mod probability;
pub mod sampling;
pub mod special;

pub use error::{Measure, Result, StatError};
