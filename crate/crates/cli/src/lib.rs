//! Input handling and output records for the `insrobust` command-line tool.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use insrobust::{Alphabet, Classification, Error, InsertionWitness, Verdict, Word};
use serde::{Deserialize, Serialize};

/// How input strings are split into symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolMode {
    /// One symbol per byte. Bytes map to the code points U+0000..U+00FF.
    Bytes,
    /// One symbol per Unicode scalar value.
    Unicode,
}

impl SymbolMode {
    pub fn symbols(self, s: &str) -> Vec<char> {
        match self {
            SymbolMode::Bytes => s.bytes().map(char::from).collect(),
            SymbolMode::Unicode => s.chars().collect(),
        }
    }
}

/// Failure of a CLI command, carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::ClassifierMismatch { .. } | Error::TheoremViolation(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

/// Resolves the alphabet for a batch: the explicit one if given, otherwise
/// the sorted set of symbols across all words.
pub fn resolve_alphabet(
    explicit: Option<&str>,
    words: &[String],
    mode: SymbolMode,
) -> Result<Arc<Alphabet>, CliError> {
    match explicit {
        Some(spec) => {
            let alphabet = Alphabet::new(mode.symbols(spec))
                .map_err(|e| CliError::usage(format!("--alphabet: {e}")))?;
            alphabet
                .require_nontrivial()
                .map_err(|e| CliError::usage(format!("--alphabet: {e}")))?;
            Ok(alphabet)
        }
        None => {
            let symbols: BTreeSet<char> = words.iter().flat_map(|w| mode.symbols(w)).collect();
            if symbols.len() < 2 {
                return Err(CliError::usage(format!(
                    "inferred alphabet has {} symbol(s); pass --alphabet with at least two symbols",
                    symbols.len()
                )));
            }
            Alphabet::new(symbols.into_iter().collect()).map_err(CliError::from)
        }
    }
}

pub fn parse_word(alphabet: &Arc<Alphabet>, s: &str, mode: SymbolMode) -> Result<Word, CliError> {
    let indices = mode
        .symbols(s)
        .into_iter()
        .map(|c| alphabet.index_of(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::usage(format!("word {s:?}: {e}")))?;
    Ok(Word::from_indices(alphabet, indices)?)
}

/// Splits input text into words, one per line. Blank lines are skipped; the
/// returned count says how many.
pub fn split_lines(text: &str) -> (Vec<String>, usize) {
    let mut blank = 0;
    let words = text
        .lines()
        .filter_map(|line| {
            let t = line.trim();
            if t.is_empty() {
                blank += 1;
                None
            } else {
                Some(t.to_string())
            }
        })
        .collect();
    (words, blank)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub position: usize,
    pub letter: String,
    pub root: String,
    pub power: usize,
}

/// One classified word, as written in `jsonl` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub word: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
}

impl OutputRecord {
    pub fn new(word: &Word, classification: &Classification) -> Self {
        let mut record = Self {
            word: word.to_string(),
            verdict: classification.verdict().as_str().to_string(),
            root: None,
            exponent: None,
            witnesses: None,
        };
        match classification {
            Classification::NonPrimitive { root, exponent } => {
                record.root = Some(root.to_string());
                record.exponent = Some(*exponent);
            }
            Classification::InsRobust => {}
            Classification::NonInsRobust { witnesses } => {
                let mut list: Vec<WitnessRecord> = witnesses.iter().map(witness_record).collect();
                list.sort_by(|a, b| (a.position, &a.letter).cmp(&(b.position, &b.letter)));
                record.witnesses = Some(list);
            }
        }
        record
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Re-checks the record against its word: the verdict must be known and
    /// every witness must turn the word into `root^power`.
    pub fn validate(&self, alphabet: &Arc<Alphabet>, mode: SymbolMode) -> Result<(), CliError> {
        let word = parse_word(alphabet, &self.word, mode)?;
        let verdict = [Verdict::NonPrimitive, Verdict::InsRobust, Verdict::NonInsRobust]
            .into_iter()
            .find(|v| v.as_str() == self.verdict)
            .ok_or_else(|| CliError::usage(format!("unknown verdict {:?}", self.verdict)))?;
        match verdict {
            Verdict::NonPrimitive => {
                let root = parse_word(alphabet, self.root.as_deref().unwrap_or(""), mode)?;
                if root.pow(self.exponent.unwrap_or(0)) != word {
                    return Err(CliError::usage(format!("root does not rebuild {}", self.word)));
                }
            }
            Verdict::InsRobust => {}
            Verdict::NonInsRobust => {
                let witnesses = self.witnesses.as_deref().unwrap_or(&[]);
                if witnesses.is_empty() {
                    return Err(CliError::usage(format!("{} has no witnesses", self.word)));
                }
                for w in witnesses {
                    let letter = mode.symbols(&w.letter);
                    let [letter] = letter[..] else {
                        return Err(CliError::usage(format!("bad letter {:?}", w.letter)));
                    };
                    let witness = InsertionWitness {
                        position: w.position,
                        letter: alphabet.index_of(letter)?,
                        root: parse_word(alphabet, &w.root, mode)?,
                        power: w.power,
                    };
                    witness.validate(&word)?;
                }
            }
        }
        Ok(())
    }
}

fn witness_record(w: &InsertionWitness) -> WitnessRecord {
    WitnessRecord {
        position: w.position,
        letter: w.letter_char().to_string(),
        root: w.root.to_string(),
        power: w.power,
    }
}

/// Reads `INSROBUST_THREADS`: `Some(0)` means sequential.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("INSROBUST_THREADS").ok()?.trim().parse().ok()
}
