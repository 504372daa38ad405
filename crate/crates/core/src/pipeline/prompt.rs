use serde::{Deserialize, Serialize};

use crate::text::Source;
use crate::{Error, Result};

/// The five instruction suffixes that were compared when choosing a prompt.
/// `{words}` is replaced by the target length.
pub const PROMPT_PRESETS: [(&str, &str); 5] = [
    ("01", " Do you agree or disagree? Use specific reasons and examples to support your answer. Write an essay of roughly {words} words."),
    ("02", " Do you agree or disagree? It is a test for English writing. Please write an essay of roughly {words} words."),
    ("03", " Do you agree or disagree? Pretend you are the best student in a writing class. Write an essay of roughly {words} words, with a large vocabulary and a wide range of sentence structures to impress your professor."),
    ("04", " Do you agree or disagree? Pretend you are a professional American writer. Write an essay of roughly {words} words, with the potential of winning a Nobel prize in literature."),
    ("05", " Do you agree or disagree? From an undergraduate student's perspective, write an essay of roughly {words} words to illustrate your idea."),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    #[serde(default)]
    pub pre_text: String,
    pub essay_prompt: String,
    #[serde(default = "default_post_text")]
    pub post_text: String,
    pub target_words: u32,
}

fn default_post_text() -> String {
    PROMPT_PRESETS[0].1.to_string()
}

/// 300 words for WECCL, 400 for TOEFL, 500 for GRE.
pub fn default_target_words(source: Source) -> u32 {
    match source {
        Source::Weccl => 300,
        Source::Toefl | Source::Other => 400,
        Source::Gre => 500,
    }
}

impl PromptTemplate {
    /// The prompt actually used for generation: the essay prompt followed by
    /// preset 01.
    pub fn standard(essay_prompt: impl Into<String>, target_words: u32) -> Self {
        PromptTemplate {
            pre_text: String::new(),
            essay_prompt: essay_prompt.into(),
            post_text: default_post_text(),
            target_words,
        }
    }

    pub fn preset(id: &str, essay_prompt: impl Into<String>, target_words: u32) -> Option<Self> {
        let (_, post) = PROMPT_PRESETS.iter().find(|(p, _)| *p == id)?;
        Some(PromptTemplate {
            pre_text: String::new(),
            essay_prompt: essay_prompt.into(),
            post_text: post.to_string(),
            target_words,
        })
    }
}

pub fn render_prompt(template: &PromptTemplate) -> Result<String> {
    if template.essay_prompt.trim().is_empty() {
        return Err(Error::MissingEssayPrompt);
    }
    let words = template.target_words.to_string();
    Ok(format!("{}{}{}", template.pre_text, template.essay_prompt, template.post_text).replace("{words}", &words))
}
