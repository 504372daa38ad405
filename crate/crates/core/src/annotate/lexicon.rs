use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::LazyLock;

use super::PosTag;
use crate::{Error, Result};

const CLOSED_CLASS: &str = "
the DT|a DT|an DT|this DT|that IN DT WDT|these DT|those DT|some DT|any DT|all DT PDT|every DT|each DT|no DT|another DT|either DT|neither DT|both DT|half PDT
i PRP|me PRP|you PRP|he PRP|him PRP|she PRP|her PRP$ PRP|it PRP|we PRP|us PRP|they PRP|them PRP
myself PRP|yourself PRP|himself PRP|herself PRP|itself PRP|ourselves PRP|yourselves PRP|themselves PRP|oneself PRP
my PRP$|your PRP$|his PRP$|its PRP$|our PRP$|their PRP$
who WP|whom WP|what WP|whoever WP|whatever WDT|whose WP$|which WDT|whichever WDT
how WRB|when WRB|where WRB|why WRB|whenever WRB|wherever WRB
of IN|in IN|on IN|at IN|by IN|for IN|with IN|about IN|against IN|between IN|into IN|through IN|during IN|before IN|after IN
above IN|below IN|from IN|up IN RP|down IN RP|over IN|under IN|since IN|without IN|within IN|along IN|among IN|across IN
behind IN|beyond IN|near IN|upon IN|toward IN|towards IN|despite IN|throughout IN|than IN|because IN|if IN|although IN
though IN|while IN|whereas IN|unless IN|until IN|till IN|whether IN|as IN RB|like IN|so IN RB|once RB|onto IN|off IN RP|out IN RP
per IN|via IN|besides IN|except IN|around IN|beside IN|inside IN|outside IN|underneath IN|past NN
and CC|or CC|but CC|nor CC|yet RB|plus CC
to TO
can MD|could MD|may MD|might MD|must MD|shall MD|should MD|will MD|would MD|'ll MD|'d MD|ought MD
be VB|is VBZ|are VBP|am VBP|was VBD|were VBD|been VBN|being VBG|'s VBZ|'re VBP|'m VBP|'ve VBP
have VBP|has VBZ|had VBD|having VBG|do VBP|does VBZ|did VBD|done VBN|doing VBG
there EX|not RB|n't RB|also RB|very RB|too RB|just RB|only RB|even RB|still RB|already RB|always RB|never RB|often RB
sometimes RB|usually RB|rarely RB|seldom RB|however RB|therefore RB|moreover RB|furthermore RB|thus RB|hence RB|instead RB
perhaps RB|maybe RB|quite RB|rather RB|almost RB|enough RB|really RB|indeed RB|here RB|now RB|then RB|today NN|again RB
ever RB|soon RB|later RB|finally RB|firstly RB|secondly RB|thirdly RB|lastly RB|meanwhile RB|otherwise RB
nevertheless RB|nonetheless RB|well RB|away RB|together RB|ago RB|back RB|alone RB|else RB|anyway RB|somewhat RB
more JJR RBR|less JJR RBR|most JJS RBS|least JJS RBS|better JJR|best JJS|worse JJR|worst JJS
much JJ RB|many JJ|few JJ|several JJ|such JJ|own JJ|other JJ|first JJ|second JJ|third JJ|last JJ|next JJ|same JJ
one CD|two CD|three CD|four CD|five CD|six CD|seven CD|eight CD|nine CD|ten CD|eleven CD|twelve CD|twenty CD
hundred CD|thousand CD|million CD|billion CD|dozen NN
something NN|anything NN|everything NN|nothing NN|someone NN|anyone NN|everyone NN|nobody NN|somebody NN|everybody NN|anybody NN
oh UH|yes UH|please UH|okay UH|ok UH
";

/// Word-to-tag lexicon used by the baseline tagger and by the adverb test
/// of lexical-word classification.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<PosTag>>,
    adjectives: HashSet<String>,
}

static BUILTIN: LazyLock<Lexicon> = LazyLock::new(|| {
    let mut lex = Lexicon::default();
    for group in CLOSED_CLASS.split(['|', '\n']) {
        let mut parts = group.split_whitespace();
        let Some(word) = parts.next() else { continue };
        for tag in parts {
            lex.insert(word, PosTag::of(tag));
        }
    }
    let open = Lexicon::parse(include_str!("../../data/lexicon.tsv")).expect("bundled lexicon is valid");
    lex.extend(&open);
    lex
});

impl Lexicon {
    /// Closed-class words plus the bundled open-class list.
    pub fn builtin() -> &'static Lexicon {
        &BUILTIN
    }

    /// Parses `word<TAB>tag` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Lexicon> {
        let mut lex = Lexicon::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or_else(|| Error::MalformedLine {
                line: i + 1,
                reason: "expected word<TAB>tag".into(),
            })?;
            let tag = PosTag::new(tag.trim()).ok_or_else(|| Error::TagNotInInventory {
                line: i + 1,
                tag: tag.trim().to_string(),
            })?;
            lex.insert(&word.trim().to_lowercase(), tag);
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Lexicon> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn insert(&mut self, word: &str, tag: PosTag) {
        let tags = self.entries.entry(word.to_string()).or_default();
        if !tags.contains(&tag) {
            tags.push(tag);
        }
        if tag.as_str() == "JJ" {
            self.adjectives.insert(word.to_string());
        }
    }

    /// Appends `other`'s entries; existing preferences keep priority.
    pub fn extend(&mut self, other: &Lexicon) {
        let mut words: Vec<_> = other.entries.keys().collect();
        words.sort();
        for w in words {
            for &t in &other.entries[w] {
                self.insert(w, t);
            }
        }
    }

    /// Candidate tags for a case-folded word, most preferred first.
    pub fn tags(&self, lower: &str) -> &[PosTag] {
        self.entries.get(lower).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_tag(&self, lower: &str, tag: &str) -> bool {
        self.tags(lower).iter().any(|t| t.as_str() == tag)
    }

    pub fn is_adjective(&self, lower: &str) -> bool {
        self.adjectives.contains(lower)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
