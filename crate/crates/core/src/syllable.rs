//! Pseudo-syllable segmentation for Malayalam and Telugu.
//!
//! A pseudo-syllable is a base letter (independent vowel, consonant or
//! chillu) together with the modifiers that follow it: dependent vowel
//! signs, virama, anusvara, visarga, candrabindu and length marks. A virama
//! pulls the next consonant into the same unit, so conjuncts such as `പ്പ`
//! stay whole. Zero-width joiners are kept in the text for round-tripping
//! but are not part of a syllable's identity.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

/// The two scripts the scorer understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Script {
    Malayalam,
    Telugu,
}

impl Script {
    pub fn block(self) -> (char, char) {
        match self {
            Script::Malayalam => ('\u{0D00}', '\u{0D7F}'),
            Script::Telugu => ('\u{0C00}', '\u{0C7F}'),
        }
    }

    pub fn contains(self, c: char) -> bool {
        let (lo, hi) = self.block();
        (lo..=hi).contains(&c)
    }

    pub fn name(self) -> &'static str {
        match self {
            Script::Malayalam => "malayalam",
            Script::Telugu => "telugu",
        }
    }

    fn of_char(c: char) -> Option<Script> {
        [Script::Malayalam, Script::Telugu]
            .into_iter()
            .find(|s| s.contains(c))
    }

    /// Character class used by the segmenter and the tokenizer.
    pub fn classify(self, c: char) -> CharClass {
        if c == ZWJ || c == ZWNJ {
            return CharClass::Joiner;
        }
        if !self.contains(c) {
            return CharClass::Foreign;
        }
        match self {
            Script::Malayalam => classify_malayalam(c as u32),
            Script::Telugu => classify_telugu(c as u32),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Script {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "malayalam" | "ml" | "mal" => Ok(Script::Malayalam),
            "telugu" | "te" | "tel" => Ok(Script::Telugu),
            other => Err(Error::UnknownScript(other.to_string())),
        }
    }
}

/// Role of a code point inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    /// Independent vowel, avagraha and other letters that always open a unit.
    Vowel,
    /// Consonant; joins the current unit when it follows a virama.
    Consonant,
    /// Atomic final consonant (Malayalam chillu, Telugu nakaara pollu).
    Chillu,
    /// Dependent vowel sign, anusvara, visarga, candrabindu, nukta, length mark.
    Modifier,
    Virama,
    /// ZWJ / ZWNJ.
    Joiner,
    /// In-block code point that is not part of words: digits, fractions, signs.
    Symbol,
    /// Outside the script block.
    Foreign,
}

impl CharClass {
    /// Whether the code point can appear inside a word of the script.
    pub fn is_word_char(self) -> bool {
        !matches!(self, CharClass::Symbol | CharClass::Foreign)
    }

    fn is_combining(self) -> bool {
        matches!(
            self,
            CharClass::Modifier | CharClass::Virama | CharClass::Joiner
        )
    }
}

fn classify_malayalam(cp: u32) -> CharClass {
    match cp {
        0x0D00..=0x0D04 => CharClass::Modifier,
        0x0D05..=0x0D14 => CharClass::Vowel,
        0x0D15..=0x0D3A => CharClass::Consonant,
        0x0D3B | 0x0D3C | 0x0D4D => CharClass::Virama,
        0x0D3D => CharClass::Vowel,
        0x0D3E..=0x0D4C => CharClass::Modifier,
        0x0D4E => CharClass::Vowel,
        0x0D54..=0x0D56 => CharClass::Chillu,
        0x0D57 => CharClass::Modifier,
        0x0D5F..=0x0D61 => CharClass::Vowel,
        0x0D62 | 0x0D63 => CharClass::Modifier,
        0x0D7A..=0x0D7F => CharClass::Chillu,
        _ => CharClass::Symbol,
    }
}

fn classify_telugu(cp: u32) -> CharClass {
    match cp {
        0x0C00..=0x0C04 => CharClass::Modifier,
        0x0C05..=0x0C14 => CharClass::Vowel,
        0x0C15..=0x0C39 => CharClass::Consonant,
        0x0C3C => CharClass::Modifier,
        0x0C3D => CharClass::Vowel,
        0x0C3E..=0x0C4C => CharClass::Modifier,
        0x0C4D => CharClass::Virama,
        0x0C55 | 0x0C56 => CharClass::Modifier,
        0x0C58..=0x0C5A => CharClass::Consonant,
        0x0C5D => CharClass::Chillu,
        0x0C60 | 0x0C61 => CharClass::Vowel,
        0x0C62 | 0x0C63 => CharClass::Modifier,
        _ => CharClass::Symbol,
    }
}

/// One segmented unit. `text` keeps every code point of the input,
/// including joiners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudoSyllable {
    text: String,
}

impl PseudoSyllable {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Identity used for stems and n-grams: the text with ZWJ/ZWNJ removed.
    pub fn key(&self) -> Cow<'_, str> {
        if self.text.contains([ZWJ, ZWNJ]) {
            Cow::Owned(
                self.text
                    .chars()
                    .filter(|&c| c != ZWJ && c != ZWNJ)
                    .collect(),
            )
        } else {
            Cow::Borrowed(&self.text)
        }
    }
}

impl fmt::Display for PseudoSyllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

/// Determine which of the two scripts a word is written in.
pub fn detect_script(word: &str) -> Result<Script> {
    let word = nfc(word);
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut found: Option<Script> = None;
    for c in word.chars() {
        if c == ZWJ || c == ZWNJ {
            continue;
        }
        match Script::of_char(c) {
            None => {
                return Err(Error::NonTargetScript {
                    word: word.clone(),
                    ch: c,
                });
            }
            Some(s) => match found {
                Some(prev) if prev != s => return Err(Error::MixedScript(word.clone())),
                _ => found = Some(s),
            },
        }
    }
    found.ok_or(Error::NonTargetScript {
        word: word.clone(),
        ch: ZWJ,
    })
}

/// Split a word into pseudo-syllables. The input is NFC-normalized first;
/// joining the returned units reproduces that normalized form.
pub fn segment(word: &str, script: Script) -> Result<Vec<PseudoSyllable>> {
    let word = nfc(word);
    segment_normalized(&word, script)
}

pub(crate) fn segment_normalized(word: &str, script: Script) -> Result<Vec<PseudoSyllable>> {
    let mut out: Vec<PseudoSyllable> = Vec::new();
    let mut current = String::new();
    // set after a virama: the next consonant belongs to the current unit
    let mut binding = false;

    for c in word.chars() {
        let class = script.classify(c);
        if class.is_combining() {
            if current.is_empty() {
                return Err(Error::OrphanModifier {
                    word: word.to_string(),
                    ch: c,
                });
            }
            current.push(c);
            binding = class == CharClass::Virama;
            continue;
        }
        match class {
            CharClass::Foreign => {
                return Err(Error::NonTargetScript {
                    word: word.to_string(),
                    ch: c,
                });
            }
            CharClass::Consonant if binding => {
                current.push(c);
            }
            _ => {
                if !current.is_empty() {
                    out.push(PseudoSyllable {
                        text: std::mem::take(&mut current),
                    });
                }
                current.push(c);
            }
        }
        binding = false;
    }
    if current.is_empty() {
        return Err(Error::EmptyWord);
    }
    out.push(PseudoSyllable { text: current });
    Ok(out)
}

/// Concatenate syllables back into a word.
pub fn join(syllables: &[PseudoSyllable]) -> String {
    syllables.iter().map(PseudoSyllable::as_str).collect()
}
