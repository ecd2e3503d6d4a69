//! Alphabets, words and the basic primitivity machinery.
//!
//! A [`Word`] stores symbol indices into a shared [`Alphabet`]. Words are
//! immutable values: every operation that "changes" a word returns a new one.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported alphabet. Symbol indices are stored as `u8`.
pub const MAX_ALPHABET: usize = 256;

/// An ordered set of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from symbols in the given order.
    pub fn new(symbols: Vec<char>) -> Result<Arc<Self>> {
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::AlphabetTooLarge(symbols.len()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::DuplicateSymbol(*c));
            }
        }
        Ok(Arc::new(Self { symbols }))
    }

    /// Alphabet whose symbols are the characters of `s`, in order.
    ///
    /// ```
    /// use insrobust::Alphabet;
    /// let v = Alphabet::parse("abc").unwrap();
    /// assert_eq!(v.size(), 3);
    /// assert!(Alphabet::parse("aba").is_err());
    /// ```
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        Self::new(s.chars().collect())
    }

    /// The alphabet `{a, b}`.
    pub fn binary() -> Arc<Self> {
        Self::parse("ab").expect("valid alphabet")
    }

    /// The alphabet `{a, b, c}`.
    pub fn ternary() -> Arc<Self> {
        Self::parse("abc").expect("valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    pub fn index_of(&self, c: char) -> Result<u8> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(|i| i as u8)
            .ok_or(Error::ForeignSymbol(c))
    }

    /// Fails with [`Error::UnaryAlphabet`] unless there are at least two symbols.
    pub fn require_nontrivial(&self) -> Result<()> {
        if self.size() < 2 {
            Err(Error::UnaryAlphabet(self.size()))
        } else {
            Ok(())
        }
    }

    /// Parses `s` into a word over this alphabet.
    pub fn word(self: &Arc<Self>, s: &str) -> Result<Word> {
        let symbols = s
            .chars()
            .map(|c| self.index_of(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            alphabet: Arc::clone(self),
            symbols,
        })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    symbols: Vec<u8>,
}

impl Word {
    /// Builds a word from raw symbol indices, validating each index.
    pub fn from_indices(alphabet: &Arc<Alphabet>, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols
            .iter()
            .find(|&&s| s as usize >= alphabet.size())
        {
            return Err(Error::SymbolIndexOutOfRange {
                index: bad as usize,
                size: alphabet.size(),
            });
        }
        Ok(Self {
            alphabet: Arc::clone(alphabet),
            symbols,
        })
    }

    pub(crate) fn from_indices_unchecked(alphabet: &Arc<Alphabet>, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < alphabet.size()));
        Self {
            alphabet: Arc::clone(alphabet),
            symbols,
        }
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        Self::from_indices_unchecked(alphabet, Vec::new())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn indices(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The factor `w[range]`.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Self {
        Self::from_indices_unchecked(&self.alphabet, self.symbols[range].to_vec())
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Self {
        Self::from_indices_unchecked(&self.alphabet, self.symbols.repeat(k))
    }

    pub fn concat(&self, other: &Word) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Self::from_indices_unchecked(&self.alphabet, symbols))
    }

    /// `self` followed by `count` copies of the letter with index `letter`.
    pub fn extend_with(&self, letter: u8, count: usize) -> Result<Self> {
        self.check_letter(letter)?;
        let mut symbols = self.symbols.clone();
        symbols.resize(self.len() + count, letter);
        Ok(Self::from_indices_unchecked(&self.alphabet, symbols))
    }

    fn check_letter(&self, letter: u8) -> Result<()> {
        if (letter as usize) < self.alphabet.size() {
            Ok(())
        } else {
            Err(Error::SymbolIndexOutOfRange {
                index: letter as usize,
                size: self.alphabet.size(),
            })
        }
    }

    pub fn is_primitive(&self) -> Result<bool> {
        is_primitive(self)
    }

    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        primitive_root(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols
            .iter()
            .try_for_each(|&s| write!(f, "{}", self.alphabet.symbol(s)))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

/// Failure function: entry `i` is the length of the longest proper border of
/// `s[..=i]`. Linear time.
pub fn border_array<T: Eq>(s: &[T]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

/// Z-array: entry `i` is the length of the longest common prefix of `s` and
/// `s[i..]`, with `z[0] = |s|`.
pub fn z_array<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = z[i - l].min(r - i);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// Smallest period of a non-empty slice.
pub(crate) fn smallest_period<T: Eq>(s: &[T]) -> usize {
    debug_assert!(!s.is_empty());
    s.len() - border_array(s)[s.len() - 1]
}

/// Length of the primitive root of a non-empty slice.
pub(crate) fn root_length<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    let q = smallest_period(s);
    if n.is_multiple_of(q) {
        q
    } else {
        n
    }
}

/// Whether `w` is not a proper power of a shorter word. Linear time.
pub fn is_primitive(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(root_length(w.indices()) == w.len())
}

/// The unique primitive `root` and `exponent` with `root^exponent = w`.
pub fn primitive_root(w: &Word) -> Result<(Word, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let q = root_length(w.indices());
    Ok((w.factor(0..q), w.len() / q))
}

/// `w[i..] · w[..i]`.
pub fn rotate(w: &Word, i: usize) -> Result<Word> {
    if i > w.len() {
        return Err(Error::OffsetOutOfRange {
            offset: i,
            len: w.len(),
        });
    }
    let mut symbols = Vec::with_capacity(w.len());
    symbols.extend_from_slice(&w.indices()[i..]);
    symbols.extend_from_slice(&w.indices()[..i]);
    Ok(Word::from_indices_unchecked(w.alphabet(), symbols))
}

pub fn reverse(w: &Word) -> Word {
    let mut symbols = w.indices().to_vec();
    symbols.reverse();
    Word::from_indices_unchecked(w.alphabet(), symbols)
}

/// `w[..pos] · c · w[pos..]` where `c` is a symbol index.
pub fn insert(w: &Word, pos: usize, c: u8) -> Result<Word> {
    if pos > w.len() {
        return Err(Error::OffsetOutOfRange {
            offset: pos,
            len: w.len(),
        });
    }
    w.check_letter(c)?;
    let mut symbols = Vec::with_capacity(w.len() + 1);
    symbols.extend_from_slice(&w.indices()[..pos]);
    symbols.push(c);
    symbols.extend_from_slice(&w.indices()[pos..]);
    Ok(Word::from_indices_unchecked(w.alphabet(), symbols))
}

/// [`insert`] taking the letter as a character.
pub fn insert_char(w: &Word, pos: usize, c: char) -> Result<Word> {
    insert(w, pos, w.alphabet().index_of(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::binary().word(s).unwrap()
    }

    fn naive_borders(s: &[u8]) -> Vec<usize> {
        (0..s.len())
            .map(|i| {
                let p = &s[..=i];
                (0..p.len())
                    .rev()
                    .find(|&k| p[..k] == p[p.len() - k..])
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn border_examples() {
        assert_eq!(border_array(b"aab"), vec![0, 1, 0]);
        assert_eq!(border_array(b"aaaa"), vec![0, 1, 2, 3]);
        assert_eq!(naive_borders(b"abaab"), vec![0, 0, 1, 1, 2]);
        assert_eq!(border_array(b"abaab"), vec![0, 0, 1, 1, 2]);
        assert!(border_array::<u8>(&[]).is_empty());
    }

    #[test]
    fn border_matches_naive() {
        for s in [&b"abacabadabacaba"[..], b"aabaabaaab", b"abcabcab", b"zzzz"] {
            assert_eq!(border_array(s), naive_borders(s));
        }
    }

    #[test]
    fn z_matches_naive() {
        let s = b"aabxaabxcaabxaabxay";
        let z = z_array(s);
        for i in 1..s.len() {
            let naive = (0..s.len() - i).take_while(|&k| s[k] == s[i + k]).count();
            assert_eq!(z[i], naive);
        }
        assert_eq!(z[0], s.len());
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&w("abab")).unwrap());
        assert!(is_primitive(&w("a")).unwrap());
        assert!(is_primitive(&w("aabaa")).unwrap());
        assert_eq!(is_primitive(&w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(&w("abab")).unwrap(), (w("ab"), 2));
        assert_eq!(primitive_root(&w("aaa")).unwrap(), (w("a"), 3));
        assert_eq!(primitive_root(&w("aabaab")).unwrap(), (w("aab"), 2));
        assert_eq!(primitive_root(&w("aabaa")).unwrap(), (w("aabaa"), 1));
        assert!(primitive_root(&w("")).is_err());
    }

    #[test]
    fn rotation() {
        assert_eq!(rotate(&w("aab"), 1).unwrap(), w("aba"));
        assert_eq!(rotate(&w("aab"), 0).unwrap(), w("aab"));
        assert_eq!(rotate(&w("aab"), 3).unwrap(), w("aab"));
        assert_eq!(rotate(&w("abba"), 2).unwrap(), w("baab"));
        assert!(matches!(
            rotate(&w("aab"), 4),
            Err(Error::OffsetOutOfRange { offset: 4, len: 3 })
        ));
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse(&w("aab")), w("baa"));
        assert_eq!(reverse(&w("")), w(""));
        assert_eq!(reverse(&w("abba")), w("abba"));
    }

    #[test]
    fn insertion() {
        assert_eq!(insert_char(&w("ab"), 1, 'a').unwrap(), w("aab"));
        assert_eq!(insert_char(&w("aab"), 1, 'b').unwrap(), w("abab"));
        assert_eq!(insert_char(&w(""), 0, 'a').unwrap(), w("a"));
        assert!(insert_char(&w("ab"), 3, 'a').is_err());
        assert_eq!(insert_char(&w("ab"), 0, 'c'), Err(Error::ForeignSymbol('c')));
        assert!(insert(&w("ab"), 0, 2).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::parse(""), Err(Error::EmptyAlphabet));
        assert_eq!(Alphabet::parse("aa"), Err(Error::DuplicateSymbol('a')));
        let big: Vec<char> = (0..257u32).map(|i| char::from_u32(0x100 + i).unwrap()).collect();
        assert_eq!(Alphabet::new(big), Err(Error::AlphabetTooLarge(257)));
        let max: Vec<char> = (0..256u32).map(|i| char::from_u32(0x100 + i).unwrap()).collect();
        let v = Alphabet::new(max).unwrap();
        assert_eq!(v.index_of('\u{1ff}').unwrap(), 255);
        assert_eq!(Alphabet::parse("a").unwrap().require_nontrivial(), Err(Error::UnaryAlphabet(1)));
        assert!(Alphabet::binary().word("abc").is_err());
    }

    #[test]
    fn display_round_trip() {
        let v = Alphabet::parse("xy").unwrap();
        assert_eq!(v.word("xyyx").unwrap().to_string(), "xyyx");
        assert_eq!(v.to_string(), "xy");
    }
}
