//! Machine-essay generation, quality filtering, level assignment, balanced
//! sampling and train/dev/test splitting.

mod client;
mod filter;
mod generate;
mod job;
mod level;
mod mock;
mod prompt;
mod sample;
mod split;

pub use client::{ClientError, CompletionClient, HttpClient, API_KEY_ENV};
pub use filter::{
    filter_corpus, filter_essay, sentence_similar, sentence_similar_with, FilterConfig, FilterReason, FilterReport,
    FilterVerdict, Similarity,
};
pub use generate::{generate, slot_id, GenerationOutcome, SlotFailure};
pub use job::GenerationJob;
pub use level::{level_assign, Scale};
pub use mock::{MockMode, MockServer};
pub use prompt::{default_target_words, render_prompt, PromptTemplate, PROMPT_PRESETS};
pub use sample::{balanced_sample, largest_remainder};
pub use split::{split, SplitSizes, SplitSpec, SplitSummary};
