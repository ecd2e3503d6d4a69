//! Seeded timing harness for the classifiers.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_fast, classify_oracle};
use crate::error::Result;
use crate::word::{Alphabet, Word};

/// Uniformly random word, reproducible from `seed`.
pub fn random_word(alphabet: &Arc<Alphabet>, n: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.size();
    let symbols = (0..n).map(|_| rng.random_range(0..k) as u8).collect();
    Word::from_indices_unchecked(alphabet, symbols)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub mean: f64,
    pub median: f64,
    pub min: f64,
}

impl Timing {
    fn from_samples(mut secs: Vec<f64>) -> Self {
        secs.sort_by(f64::total_cmp);
        let len = secs.len();
        let median = if len % 2 == 1 {
            secs[len / 2]
        } else {
            (secs[len / 2 - 1] + secs[len / 2]) / 2.0
        };
        Self {
            mean: secs.iter().sum::<f64>() / len as f64,
            median,
            min: secs[0],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub fast: Timing,
    /// Only measured for `n <= oracle_cutoff`.
    pub oracle: Option<Timing>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub oracle_cutoff: usize,
}

/// Times both classifiers on fresh random words. Trial `t` at size `n` uses
/// seed `seed + t`, so rows are reproducible.
pub fn run_bench(alphabet: &Arc<Alphabet>, config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let trials = config.trials.max(1);
    let mut rows = Vec::with_capacity(config.sizes.len());
    for &n in &config.sizes {
        let words: Vec<Word> = (0..trials)
            .map(|t| random_word(alphabet, n, config.seed.wrapping_add(t as u64)))
            .collect();
        let fast = time_each(&words, |w| classify_fast(w).map(drop))?;
        let oracle = if n <= config.oracle_cutoff {
            Some(time_each(&words, |w| classify_oracle(w).map(drop))?)
        } else {
            None
        };
        rows.push(BenchRow { n, fast, oracle });
    }
    Ok(rows)
}

fn time_each(words: &[Word], mut f: impl FnMut(&Word) -> Result<()>) -> Result<Timing> {
    let mut samples = Vec::with_capacity(words.len());
    for w in words {
        let start = Instant::now();
        f(w)?;
        samples.push(start.elapsed().as_secs_f64());
    }
    Ok(Timing::from_samples(samples))
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(n, _)| n.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.max(1e-12).ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// Parses `"1024"`, `"1024,4096"` or a doubling range `"4096..1048576"`.
pub fn parse_sizes(spec: &str) -> Option<Vec<usize>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi): (usize, usize) = (lo.trim().parse().ok()?, hi.trim().parse().ok()?);
        if lo == 0 || lo > hi {
            return None;
        }
        let mut sizes = Vec::new();
        let mut n = lo;
        while n <= hi {
            sizes.push(n);
            n = n.checked_mul(2)?;
        }
        return Some(sizes);
    }
    spec.split(',').map(|s| s.trim().parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e3, 1e4, 1e5].iter().map(|&n| (n, 3.0 * n * n)).collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn random_words_are_reproducible() {
        let v = Alphabet::binary();
        assert_eq!(random_word(&v, 100, 7), random_word(&v, 100, 7));
        assert_ne!(random_word(&v, 100, 7), random_word(&v, 100, 8));
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("1024"), Some(vec![1024]));
        assert_eq!(parse_sizes("4..32"), Some(vec![4, 8, 16, 32]));
        assert_eq!(parse_sizes("1,2, 3"), Some(vec![1, 2, 3]));
        assert_eq!(parse_sizes("x"), None);
        assert_eq!(parse_sizes("8..4"), None);
    }

    #[test]
    fn smoke() {
        let cfg = BenchConfig {
            sizes: vec![64],
            trials: 1,
            seed: 1,
            oracle_cutoff: 64,
        };
        let rows = run_bench(&Alphabet::binary(), &cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].oracle.is_some());
    }
}
