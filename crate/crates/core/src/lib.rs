//! Primitive words and ins-robust primitive words.
//!
//! A word is *primitive* when it is not a proper power `v^k`, `k >= 2`. A
//! primitive word is *ins-robust* when it stays primitive after inserting
//! any single letter of the alphabet at any position. This crate decides
//! both properties, with witnesses, and provides the machinery around them:
//!
//! * [`word`]: alphabets, words, border and Z arrays, primitive roots.
//! * [`repetitions`]: maximal repetitions (runs) and maximal periodicities.
//! * [`classify`]: the brute-force oracle, the fast divisor-scan classifier,
//!   the literal published runs-based procedure, density extensions and the
//!   `u^r u1 u2 u^s` decomposition of non-ins-robust words.
//! * [`counting`]: exact primitive-word counts, the bound on ins-robust
//!   words, and exhaustive censuses.
//! * [`bench`]: seeded timing harness.
//!
//! ```
//! use insrobust::{Alphabet, Verdict, classify_fast};
//!
//! let v = Alphabet::binary();
//! let aab = v.word("aab").unwrap();
//! let c = classify_fast(&aab).unwrap();
//! assert_eq!(c.verdict(), Verdict::NonInsRobust);
//! // Inserting 'b' after the first letter gives (ab)^2.
//! let wit = &c.witnesses()[0];
//! assert_eq!(insrobust::insert(&aab, wit.position, wit.letter).unwrap(), wit.root.pow(wit.power));
//! ```

pub mod bench;
pub mod classify;
pub mod counting;
mod error;
pub mod repetitions;
pub mod word;

pub use classify::{
    algorithm1_paper, classify_fast, classify_oracle, density_extension, is_ins_robust,
    non_ins_robust_decomposition, Classification, Decomposition, InsertionWitness, Verdict,
};
pub use counting::{
    census, count_primitive, count_report, primitive_counts, CensusOptions, CensusReport,
    Classifier, CountReport, Tally,
};
pub use error::{Error, Result};
pub use repetitions::{
    find_maximal_repetitions, maximal_periodicities, runs_bruteforce, Run,
};
pub use word::{
    border_array, insert, insert_char, is_primitive, primitive_root, reverse, rotate, Alphabet,
    Word,
};

/// The guide under `book/`, compiled so that its listings run as doc-tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/primitivity.md")]
    pub mod primitivity {}
    #[doc = include_str!("../../../book/src/runs.md")]
    pub mod runs {}
    #[doc = include_str!("../../../book/src/ins_robust.md")]
    pub mod ins_robust {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    pub mod witnesses {}
    #[doc = include_str!("../../../book/src/density.md")]
    pub mod density {}
    #[doc = include_str!("../../../book/src/counting.md")]
    pub mod counting {}
    #[doc = include_str!("../../../book/src/runs_recognizer.md")]
    pub mod runs_recognizer {}
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
