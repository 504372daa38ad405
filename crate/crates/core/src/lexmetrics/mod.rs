//! Lexical density, sophistication and variation measures, descriptive
//! length statistics and per-group summaries.

mod counts;
mod descriptive;
mod freq;
mod profile;
mod report;

pub use counts::{lexical_counts, LexicalCounts};
pub use descriptive::{descriptive_stats, DescriptiveStats};
pub use freq::FrequencyList;
pub use profile::{lexical_profile, profile_corpus, profile_document, LexicalProfile, DEFAULT_SEED};
pub use report::{group_report, write_group_report, GroupRow, Measures};
