//! Primitive / ins-robust / non-ins-robust classification.
//!
//! A primitive word `w` of length `n` is *ins-robust* when inserting any
//! letter of the alphabet at any of the `n + 1` positions leaves it
//! primitive. Three classifiers live here:
//!
//! * [`classify_oracle`] tries every insertion. `O(n^2 |V|)`.
//! * [`classify_fast`] uses the cyclic characterization: a primitive `w` is
//!   non-ins-robust iff some rotation of `w` has a period `p` with
//!   `p | n + 1` and `p <= n`. Every rotation is a length-`n` window of `ww`,
//!   so each admissible `p` costs one linear scan.
//! * [`algorithm1_paper`] is the runs-based procedure exactly as published,
//!   kept as an executable record. It is not a correct classifier; see its
//!   docs.

use std::fmt;

use crate::counting::divisors;
use crate::error::{Error, Result};
use crate::repetitions::maximal_repetitions;
use crate::word::{insert, primitive_root, Word};

/// An insertion that turns a word into a proper power:
/// `insert(w, position, letter) = root^power`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsertionWitness {
    pub position: usize,
    /// Symbol index into the word's alphabet.
    pub letter: u8,
    pub root: Word,
    pub power: usize,
}

impl InsertionWitness {
    pub fn letter_char(&self) -> char {
        self.root.alphabet().symbol(self.letter)
    }

    /// Checks the witness against `w`: the insertion must produce exactly
    /// `root^power` with `root` primitive, `power >= 2` and `|root| <= |w|`.
    pub fn validate(&self, w: &Word) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidWitness(msg));
        if self.power < 2 {
            return bad(format!("power {} is below 2", self.power));
        }
        if self.root.alphabet() != w.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let inserted = insert(w, self.position, self.letter)?;
        if inserted != self.root.pow(self.power) {
            return bad(format!(
                "inserting {:?} at {} into {w} gives {inserted}, not ({})^{}",
                self.letter_char(),
                self.position,
                self.root,
                self.power
            ));
        }
        if !self.root.is_primitive()? {
            return bad(format!("root {} is not primitive", self.root));
        }
        if self.root.len() > w.len() || !(w.len() + 1).is_multiple_of(self.root.len()) {
            return bad(format!("root length {} is inadmissible", self.root.len()));
        }
        Ok(())
    }

    fn from_insertion(w: &Word, position: usize, letter: u8) -> Result<Option<Self>> {
        let (root, power) = primitive_root(&insert(w, position, letter)?)?;
        Ok((power >= 2).then_some(Self {
            position,
            letter,
            root,
            power,
        }))
    }
}

/// The three-way verdict without payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    NonPrimitive,
    InsRobust,
    NonInsRobust,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NonPrimitive => "non-primitive",
            Verdict::InsRobust => "ins-robust",
            Verdict::NonInsRobust => "non-ins-robust",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NonPrimitive { root: Word, exponent: usize },
    InsRobust,
    /// Never empty.
    NonInsRobust { witnesses: Vec<InsertionWitness> },
}

impl Classification {
    pub fn verdict(&self) -> Verdict {
        match self {
            Classification::NonPrimitive { .. } => Verdict::NonPrimitive,
            Classification::InsRobust => Verdict::InsRobust,
            Classification::NonInsRobust { .. } => Verdict::NonInsRobust,
        }
    }

    pub fn witnesses(&self) -> &[InsertionWitness] {
        match self {
            Classification::NonInsRobust { witnesses } => witnesses,
            _ => &[],
        }
    }
}

fn check_input(w: &Word) -> Result<()> {
    w.alphabet().require_nontrivial()?;
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(())
}

/// Classifies `w` by trying all `(n + 1) * |V|` insertions.
///
/// Witnesses are listed for every failing insertion, ordered by position and
/// then by letter.
pub fn classify_oracle(w: &Word) -> Result<Classification> {
    check_input(w)?;
    let (root, exponent) = primitive_root(w)?;
    if exponent > 1 {
        return Ok(Classification::NonPrimitive { root, exponent });
    }
    let k = w.alphabet().size();
    let mut witnesses = Vec::new();
    for position in 0..=w.len() {
        for letter in 0..k {
            if let Some(wit) = InsertionWitness::from_insertion(w, position, letter as u8)? {
                witnesses.push(wit);
            }
        }
    }
    Ok(if witnesses.is_empty() {
        Classification::InsRobust
    } else {
        Classification::NonInsRobust { witnesses }
    })
}

/// Classifies `w` with the divisor scan over `ww`.
///
/// Runs in `O(n * d(n + 1))` where `d` counts divisors. A non-ins-robust
/// verdict carries one witness: the one for the smallest period `p`, then the
/// smallest offset into `ww`.
///
/// ```
/// use insrobust::{Alphabet, Verdict, classify_fast};
/// let v = Alphabet::binary();
/// assert_eq!(classify_fast(&v.word("abba").unwrap()).unwrap().verdict(), Verdict::InsRobust);
/// let c = classify_fast(&v.word("aabaa").unwrap()).unwrap();
/// let wit = &c.witnesses()[0];
/// assert_eq!((wit.position, wit.letter_char(), wit.root.to_string(), wit.power), (5, 'b', "aab".into(), 2));
/// ```
pub fn classify_fast(w: &Word) -> Result<Classification> {
    check_input(w)?;
    let (root, exponent) = primitive_root(w)?;
    if exponent > 1 {
        return Ok(Classification::NonPrimitive { root, exponent });
    }
    let n = w.len();
    let doubled = w.indices().repeat(2);
    for p in divisors(n as u64 + 1) {
        let p = p as usize;
        if p > n {
            break;
        }
        if let Some(offset) = periodic_window(&doubled, n, p) {
            return witness_from_window(w, &doubled, offset, p)
                .map(|wit| Classification::NonInsRobust { witnesses: vec![wit] });
        }
    }
    Ok(Classification::InsRobust)
}

/// Smallest `i < n` such that `doubled[i..i + n]` has period `p`.
fn periodic_window(doubled: &[u8], n: usize, p: usize) -> Option<usize> {
    let need = n - p;
    if need == 0 {
        return Some(0);
    }
    let mut streak = 0;
    for k in 0..2 * n - p {
        if doubled[k] == doubled[k + p] {
            streak += 1;
            if streak == need {
                return Some(k + 1 - need);
            }
        } else {
            streak = 0;
        }
    }
    None
}

/// The window `ww[i..i + n]` is the rotation `x^(k-1) x'` with `|x| = p`, so
/// appending `x`'s last letter completes `x^k`. In `w` that is an insertion
/// at offset `i`, or at the end when `i = 0`.
fn witness_from_window(w: &Word, doubled: &[u8], offset: usize, p: usize) -> Result<InsertionWitness> {
    let n = w.len();
    let position = if offset == 0 { n } else { offset };
    let letter = doubled[offset + p - 1];
    let witness = InsertionWitness::from_insertion(w, position, letter)?.ok_or_else(|| {
        Error::TheoremViolation(format!(
            "period-{p} window at offset {offset} of {w}{w} did not yield a proper power"
        ))
    })?;
    witness.validate(w)?;
    Ok(witness)
}

/// Convenience wrapper: `Ok(true)` iff [`classify_fast`] says ins-robust.
pub fn is_ins_robust(w: &Word) -> Result<bool> {
    Ok(classify_fast(w)?.verdict() == Verdict::InsRobust)
}

/// The published runs-based recognizer, transcribed literally.
///
/// With `v = uu` and `S` the maximal repetitions of `v`, it returns false as
/// soon as some run `(p, l)` satisfies `|u| mod p = 0 and p < |u|`, or
/// `p <= |u| and (|u| + 1) mod p = 0 and l >= |u|`, and true otherwise.
///
/// It disagrees with [`classify_oracle`] in both directions. The first test
/// fires on any short run whose period divides `|u|`, e.g. `"bb"` inside
/// `"abbaabba"`, so ins-robust words such as `"abba"` are rejected. Runs
/// have exponent at least 2, while the periodic rotation that makes a word
/// non-ins-robust can have exponent `2 - 1/p`, so `"ababc"` over `{a, b, c}`
/// (insert `c` to get `"abcabc"`) is accepted.
pub fn algorithm1_paper(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let doubled = w.indices().repeat(2);
    for run in maximal_repetitions(&doubled) {
        let (p, l) = (run.period, run.length);
        if n.is_multiple_of(p) && p < n {
            return Ok(false);
        }
        if p <= n && (n + 1).is_multiple_of(p) && l >= n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A letter `b` with `w · b^|w|` ins-robust, trying letters in alphabet
/// order. At most one letter can fail, so one always exists.
pub fn density_extension(w: &Word) -> Result<u8> {
    check_input(w)?;
    let n = w.len();
    for b in 0..w.alphabet().size() as u8 {
        if classify_fast(&w.extend_with(b, n)?)?.verdict() == Verdict::InsRobust {
            return Ok(b);
        }
    }
    Err(Error::TheoremViolation(format!(
        "no letter b makes {w}·b^{n} ins-robust"
    )))
}

/// `w = root^r · u1 · u2 · root^s` with `root = u1 · c · u2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub r: usize,
    pub u1: Word,
    pub u2: Word,
    pub s: usize,
}

impl Decomposition {
    pub fn reconstruct(&self, root: &Word) -> Result<Word> {
        root.pow(self.r)
            .concat(&self.u1)?
            .concat(&self.u2)?
            .concat(&root.pow(self.s))
    }
}

/// Splits a non-ins-robust word along a validated witness.
///
/// ```
/// use insrobust::{Alphabet, classify_oracle, non_ins_robust_decomposition};
/// let w = Alphabet::binary().word("aab").unwrap();
/// let c = classify_oracle(&w).unwrap();
/// let d = non_ins_robust_decomposition(&w, &c.witnesses()[0]).unwrap();
/// assert_eq!((d.r, d.u1.to_string(), d.u2.to_string(), d.s), (0, "a".into(), "".into(), 1));
/// ```
pub fn non_ins_robust_decomposition(w: &Word, witness: &InsertionWitness) -> Result<Decomposition> {
    witness.validate(w)?;
    let m = witness.root.len();
    let r = witness.position / m;
    let j = witness.position % m;
    let decomposition = Decomposition {
        r,
        u1: witness.root.factor(0..j),
        u2: witness.root.factor(j + 1..m),
        s: witness.power - r - 1,
    };
    if decomposition.reconstruct(&witness.root)? != *w {
        return Err(Error::InvalidWitness(format!(
            "decomposition of {w} along {witness:?} does not reconstruct it"
        )));
    }
    Ok(decomposition)
}
