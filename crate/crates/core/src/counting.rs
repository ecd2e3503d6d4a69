//! Exact counts of primitive words, the bound on non-ins-robust words, and
//! exhaustive censuses.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::classify::{classify_fast, classify_oracle, Verdict};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Default cap on the number of words a census may classify.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Distinct prime factors of `n`, ascending, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// All divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of primitive words of length `n` over `k` letters.
///
/// Inclusion–exclusion over the distinct primes dividing `n`: each squarefree
/// divisor `d` contributes `mu(d) * k^(n/d)`.
///
/// ```
/// use insrobust::count_primitive;
/// assert_eq!(count_primitive(6, 2).unwrap(), 54u32.into());
/// ```
pub fn count_primitive(n: u64, k: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::LengthTooSmall { got: 0, min: 1 });
    }
    let primes = prime_factors(n);
    let base = BigInt::from(k);
    let mut sum = BigInt::zero();
    for mask in 0u32..(1 << primes.len()) {
        let d: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let term = base.pow(exponent(n / d));
        if mask.count_ones() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum.to_biguint().expect("primitive count is non-negative"))
}

fn exponent(e: u64) -> u32 {
    u32::try_from(e).expect("exponent fits in u32")
}

fn power(k: u64, n: u64) -> BigUint {
    BigUint::from(k).pow(exponent(n))
}

/// Number of non-primitive words of length `n >= 1`.
pub fn count_nonprimitive(n: u64, k: u64) -> Result<BigUint> {
    Ok(power(k, n) - count_primitive(n, k)?)
}

/// Exact counts for words of length `n` over `k` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: u64,
    pub k: u64,
    pub total: BigUint,
    pub primitive: BigUint,
    pub nonprimitive: BigUint,
    /// `(n + 1) * (Z(n + 1) - k)`; absent for `n < 2`.
    pub qibar_upper: Option<BigUint>,
    /// `primitive - qibar_upper`; may be negative, which makes it vacuous.
    pub qi_lower: Option<BigInt>,
}

impl CountReport {
    /// A negative lower bound says nothing.
    pub fn is_vacuous(&self) -> bool {
        self.qi_lower.as_ref().is_some_and(|b| *b < BigInt::zero())
    }
}

/// Counts plus bounds. Requires `n >= 2` and `k >= 2`.
///
/// ```
/// use insrobust::count_report;
/// let r = count_report(3, 2).unwrap();
/// assert_eq!(r.qibar_upper.unwrap(), 8u32.into());
/// assert_eq!(r.qi_lower.unwrap(), (-2).into());
/// ```
pub fn count_report(n: u64, k: u64) -> Result<CountReport> {
    if n < 2 {
        return Err(Error::LengthTooSmall { got: n as usize, min: 2 });
    }
    let mut report = primitive_counts(n, k)?;
    let upper = BigUint::from(n + 1) * (count_nonprimitive(n + 1, k)? - BigUint::from(k));
    report.qi_lower = Some(BigInt::from(report.primitive.clone()) - BigInt::from(upper.clone()));
    report.qibar_upper = Some(upper);
    Ok(report)
}

/// Counts without the bounds; valid for every `n >= 1`.
pub fn primitive_counts(n: u64, k: u64) -> Result<CountReport> {
    if k < 2 {
        return Err(Error::UnaryAlphabet(k as usize));
    }
    let total = power(k, n);
    let primitive = count_primitive(n, k)?;
    Ok(CountReport {
        n,
        k,
        nonprimitive: &total - &primitive,
        total,
        primitive,
        qibar_upper: None,
        qi_lower: None,
    })
}

/// Which classifier a census uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Classifier {
    #[default]
    Fast,
    Oracle,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub list_words: bool,
    pub budget: u128,
    pub classifier: Classifier,
    /// Classify with both classifiers and fail on any disagreement.
    pub audit: bool,
    /// `Some(0)` runs sequentially, `Some(t)` uses `t` workers, `None` uses
    /// rayon's default pool.
    pub threads: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            list_words: false,
            budget: DEFAULT_BUDGET,
            classifier: Classifier::Fast,
            audit: false,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub non_primitive: u64,
    pub ins_robust: u64,
    pub non_ins_robust: u64,
}

impl Tally {
    pub fn total(&self) -> u64 {
        self.non_primitive + self.ins_robust + self.non_ins_robust
    }

    pub fn get(&self, verdict: Verdict) -> u64 {
        match verdict {
            Verdict::NonPrimitive => self.non_primitive,
            Verdict::InsRobust => self.ins_robust,
            Verdict::NonInsRobust => self.non_ins_robust,
        }
    }

    fn bump(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::NonPrimitive => self.non_primitive += 1,
            Verdict::InsRobust => self.ins_robust += 1,
            Verdict::NonInsRobust => self.non_ins_robust += 1,
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.non_primitive += other.non_primitive;
        self.ins_robust += other.ins_robust;
        self.non_ins_robust += other.non_ins_robust;
    }
}

/// Words of each class in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordLists {
    pub non_primitive: Vec<Word>,
    pub ins_robust: Vec<Word>,
    pub non_ins_robust: Vec<Word>,
}

impl WordLists {
    pub fn get(&self, verdict: Verdict) -> &[Word] {
        match verdict {
            Verdict::NonPrimitive => &self.non_primitive,
            Verdict::InsRobust => &self.ins_robust,
            Verdict::NonInsRobust => &self.non_ins_robust,
        }
    }

    fn push(&mut self, verdict: Verdict, w: Word) {
        match verdict {
            Verdict::NonPrimitive => self.non_primitive.push(w),
            Verdict::InsRobust => self.ins_robust.push(w),
            Verdict::NonInsRobust => self.non_ins_robust.push(w),
        }
    }

    fn append(&mut self, other: WordLists) {
        self.non_primitive.extend(other.non_primitive);
        self.ins_robust.extend(other.ins_robust);
        self.non_ins_robust.extend(other.non_ins_robust);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub k: usize,
    pub counts: Tally,
    pub words: Option<WordLists>,
}

/// The `index`-th word of length `n` in lexicographic order.
pub fn word_at(alphabet: &Arc<Alphabet>, n: usize, mut index: u64) -> Word {
    let k = alphabet.size() as u64;
    let mut symbols = vec![0u8; n];
    for slot in symbols.iter_mut().rev() {
        *slot = (index % k) as u8;
        index /= k;
    }
    Word::from_indices_unchecked(alphabet, symbols)
}

/// All words of length `n` in lexicographic order.
pub fn words_of_length(alphabet: &Arc<Alphabet>, n: usize) -> impl Iterator<Item = Word> + '_ {
    let count = (alphabet.size() as u64).checked_pow(n as u32).expect("word count fits in u64");
    (0..count).map(move |i| word_at(alphabet, n, i))
}

const CHUNK: u64 = 1 << 12;

/// Classifies every word of length `n` over `alphabet`.
///
/// Results do not depend on the worker count: shards are merged in index
/// order.
pub fn census(n: usize, alphabet: &Arc<Alphabet>, options: &CensusOptions) -> Result<CensusReport> {
    alphabet.require_nontrivial()?;
    if n == 0 {
        return Err(Error::LengthTooSmall { got: 0, min: 1 });
    }
    let k = alphabet.size();
    let needed = (k as u128)
        .checked_pow(n as u32)
        .filter(|&c| c <= options.budget && c <= u64::MAX as u128)
        .ok_or(Error::BudgetExceeded {
            needed: (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX),
            budget: options.budget,
        })? as u64;

    let shard = |chunk: u64| -> Result<(Tally, WordLists)> {
        let mut tally = Tally::default();
        let mut lists = WordLists::default();
        for index in chunk * CHUNK..((chunk + 1) * CHUNK).min(needed) {
            let w = word_at(alphabet, n, index);
            let verdict = classify_with(&w, options)?;
            tally.bump(verdict);
            if options.list_words {
                lists.push(verdict, w);
            }
        }
        Ok((tally, lists))
    };

    let chunks = needed.div_ceil(CHUNK);
    let shards: Vec<(Tally, WordLists)> = match options.threads {
        Some(0) => (0..chunks).map(shard).collect::<Result<_>>()?,
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(|| (0..chunks).into_par_iter().map(shard).collect::<Result<_>>())?,
        None => (0..chunks).into_par_iter().map(shard).collect::<Result<_>>()?,
    };

    let mut counts = Tally::default();
    let mut lists = WordLists::default();
    for (tally, part) in shards {
        counts.merge(&tally);
        lists.append(part);
    }
    Ok(CensusReport {
        n,
        k,
        counts,
        words: options.list_words.then_some(lists),
    })
}

fn classify_with(w: &Word, options: &CensusOptions) -> Result<Verdict> {
    let primary = match options.classifier {
        Classifier::Fast => classify_fast(w)?.verdict(),
        Classifier::Oracle => classify_oracle(w)?.verdict(),
    };
    if options.audit {
        let fast = classify_fast(w)?.verdict();
        let oracle = classify_oracle(w)?.verdict();
        if fast != oracle {
            return Err(Error::ClassifierMismatch {
                word: w.to_string(),
                fast: fast.to_string(),
                oracle: oracle.to_string(),
            });
        }
    }
    Ok(primary)
}
