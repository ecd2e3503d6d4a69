//! Maximal repetitions (runs) and maximal periodicities.
//!
//! [`find_maximal_repetitions`] is a Main–Lorentz style divide and conquer:
//! at each level it finds the runs crossing the split point using Z-arrays
//! over the halves and their reversals, so the whole computation is
//! `O(n log n)`. [`runs_bruteforce`] checks every `(start, length, period)`
//! triple directly and exists to validate it.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::word::{smallest_period, z_array, Word};

/// Default length bound for [`runs_bruteforce`].
pub const BRUTEFORCE_BOUND: usize = 64;

/// A maximal periodic factor `w[start..start + length]` with minimal period
/// `period`. When produced as a run its exponent is at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub start: usize,
    pub length: usize,
    pub period: usize,
}

impl Run {
    pub fn new(start: usize, length: usize, period: usize) -> Self {
        Self {
            start,
            length,
            period,
        }
    }

    /// One past the last position of the factor.
    pub fn end(&self) -> usize {
        self.start + self.length
    }

    /// `length / period`, reduced.
    pub fn exponent(&self) -> Ratio<usize> {
        Ratio::new(self.length, self.period)
    }

    pub fn exponent_f64(&self) -> f64 {
        self.length as f64 / self.period as f64
    }
}

/// All maximal repetitions of `w`, sorted by `(start, length)`.
///
/// ```
/// use insrobust::{Alphabet, Run, find_maximal_repetitions};
/// let w = Alphabet::binary().word("aabaab").unwrap();
/// assert_eq!(
///     find_maximal_repetitions(&w),
///     vec![Run::new(0, 2, 1), Run::new(0, 6, 3), Run::new(3, 2, 1)],
/// );
/// ```
pub fn find_maximal_repetitions(w: &Word) -> Vec<Run> {
    maximal_repetitions(w.indices())
}

/// [`find_maximal_repetitions`] over any slice.
pub fn maximal_repetitions<T: Eq>(s: &[T]) -> Vec<Run> {
    let mut found: HashMap<(usize, usize), usize> = HashMap::new();
    if s.len() >= 2 {
        crossing_runs(s, 0, s.len(), &mut found);
    }
    let mut runs: Vec<Run> = found
        .into_iter()
        .map(|((start, end), period)| Run::new(start, end - start, period))
        .collect();
    runs.sort_unstable();
    runs
}

fn crossing_runs<T: Eq>(s: &[T], lo: usize, hi: usize, found: &mut HashMap<(usize, usize), usize>) {
    if hi - lo < 2 {
        return;
    }
    let mid = lo + (hi - lo) / 2;
    let left = &s[lo..mid];
    let right = &s[mid..hi];
    let rev_left: Vec<&T> = left.iter().rev().collect();
    let rev_segment: Vec<&T> = s[lo..hi].iter().rev().collect();
    let right_refs: Vec<&T> = right.iter().collect();
    let segment_refs: Vec<&T> = s[lo..hi].iter().collect();

    let z_right = z_array(right);
    let z_rev_left = z_array(&rev_left);
    // Common suffix of s[lo..mid] and s[lo..mid + p], read at index hi - mid - p.
    let suffix_vs_left = lcp_with(&rev_left, &rev_segment);
    // Common prefix of s[mid..hi] and s[mid - p..hi], read at index mid - p - lo.
    let prefix_vs_right = lcp_with(&right_refs, &segment_refs);

    let mut record = |start: usize, end: usize, period: usize| {
        if end - start < 2 * period {
            return;
        }
        // Truncated by the segment: the full run is found higher up.
        if start > 0 && s[start - 1] == s[start - 1 + period] {
            return;
        }
        if end < s.len() && s[end] == s[end - period] {
            return;
        }
        found
            .entry((start, end))
            .and_modify(|p| *p = (*p).min(period))
            .or_insert(period);
    };

    // Period p with both mid and mid + p inside the run.
    for p in 1..=right.len() {
        let forward = z_right.get(p).copied().unwrap_or(0);
        let backward = suffix_vs_left[hi - mid - p];
        if backward >= 1 {
            record(mid - backward, mid + p + forward, p);
        }
    }
    // Period p with both mid - p and mid inside the run.
    for p in 1..=left.len() {
        let forward = prefix_vs_right[mid - p - lo];
        let backward = z_rev_left.get(p).copied().unwrap_or(0);
        if forward >= 1 {
            record(mid - p - backward, mid + forward, p);
        }
    }

    crossing_runs(s, lo, mid, found);
    crossing_runs(s, mid, hi, found);
}

/// Entry `j` is the longest common prefix of `pattern` and `text[j..]`.
fn lcp_with<T: Eq>(pattern: &[T], text: &[T]) -> Vec<usize> {
    let joined: Vec<Option<&T>> = pattern
        .iter()
        .map(Some)
        .chain(std::iter::once(None))
        .chain(text.iter().map(Some))
        .collect();
    let z = z_array(&joined);
    z[pattern.len() + 1..].to_vec()
}

/// Brute-force runs with the default length bound of [`BRUTEFORCE_BOUND`].
pub fn runs_bruteforce(w: &Word) -> Result<Vec<Run>> {
    runs_bruteforce_bounded(w, BRUTEFORCE_BOUND)
}

/// Brute-force runs: every factor is tested for its smallest period and for
/// maximality. Sorted like [`find_maximal_repetitions`].
pub fn runs_bruteforce_bounded(w: &Word, bound: usize) -> Result<Vec<Run>> {
    if w.len() > bound {
        return Err(Error::WordTooLong { len: w.len(), bound });
    }
    let s = w.indices();
    let n = s.len();
    let has_period = |start: usize, end: usize, p: usize| (start..end - p).all(|k| s[k] == s[k + p]);
    let mut runs = Vec::new();
    for start in 0..n {
        for end in start + 2..=n {
            let len = end - start;
            let Some(p) = (1..=len / 2).find(|&p| has_period(start, end, p)) else {
                continue;
            };
            let left_extends = start > 0 && has_period(start - 1, end, p);
            let right_extends = end < n && has_period(start, end + 1, p);
            if !left_extends && !right_extends {
                runs.push(Run::new(start, len, p));
            }
        }
    }
    runs.sort_unstable();
    Ok(runs)
}

/// Maximal periodic factors with exponent at least `min_exponent`.
///
/// Unlike runs, these may have exponent below 2: `"aba"` in `"aabaab"` has
/// period 2 and exponent 3/2. `O(n^2)` and up; meant for short words.
pub fn maximal_periodicities(w: &Word, min_exponent: Ratio<usize>) -> Result<Vec<Run>> {
    if min_exponent <= Ratio::from_integer(1) {
        return Err(Error::InvalidThreshold(format!(
            "minimum exponent must exceed 1, got {min_exponent}"
        )));
    }
    let s = w.indices();
    let n = s.len();
    let mut out = Vec::new();
    for p in 1..n {
        let mut k = 0;
        while k + p < n {
            if s[k] != s[k + p] {
                k += 1;
                continue;
            }
            let first = k;
            while k + p < n && s[k] == s[k + p] {
                k += 1;
            }
            let run = Run::new(first, k - first + p, p);
            if run.exponent() >= min_exponent && smallest_period(&s[first..run.end()]) == p {
                out.push(run);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
