//! Stylometric feature extraction, maximum-margin classification and
//! prompted LLM detection.

mod eval;
mod grid;
mod llm;
mod model;
mod scaler;
mod schema;
mod units;

pub use eval::{evaluate, write_eval_csv, EvalReport};
pub use grid::{grid_search, GridConfig, GridResult};
pub use llm::{build_detection_prompt, llm_detect, parse_detection, LlmLabel, DETECTION_QUESTION};
pub use model::{train, Kernel, MarginModel, TrainOptions, MODEL_FORMAT, MODEL_VERSION};
pub use scaler::{Scaler, Scaling};
pub use schema::{
    featurize, featurize_all, fit_schema, Family, FeatureSchema, FeatureVector, FitParams, PUNCTUATION_MARKS,
};
pub use units::{explode, Granularity, Unit};
