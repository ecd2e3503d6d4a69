//! Exhaustive and property-based checks of the library's invariants.

use std::sync::Arc;
use std::time::Instant;

use insrobust::bench::{loglog_slope, random_word};
use insrobust::counting::{count_nonprimitive, words_of_length};
use insrobust::repetitions::BRUTEFORCE_BOUND;
use insrobust::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn verdict(w: &Word) -> Verdict {
    classify_fast(w).unwrap().verdict()
}

fn words_up_to(v: &Arc<Alphabet>, max: usize) -> impl Iterator<Item = Word> + '_ {
    (1..=max).flat_map(move |n| words_of_length(v, n))
}

/// Primitivity by trying every proper divisor as a root length.
fn brute_is_primitive(s: &[u8]) -> bool {
    let n = s.len();
    !(1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| s[i] == s[i - d]))
}

#[test]
fn primitivity_matches_divisor_oracle() {
    let v = Alphabet::binary();
    for w in words_up_to(&v, 14) {
        assert_eq!(is_primitive(&w).unwrap(), brute_is_primitive(w.indices()), "{w}");
    }
}

#[test]
fn primitivity_invariant_under_reversal() {
    for v in [Alphabet::binary(), Alphabet::ternary()] {
        for w in words_up_to(&v, 12) {
            assert_eq!(is_primitive(&w).unwrap(), is_primitive(&reverse(&w)).unwrap(), "{w}");
        }
    }
}

#[test]
fn primitivity_invariant_under_rotation() {
    let v = Alphabet::binary();
    for w in words_up_to(&v, 12) {
        let p = is_primitive(&w).unwrap();
        for i in 0..=w.len() {
            assert_eq!(is_primitive(&rotate(&w, i).unwrap()).unwrap(), p, "{w} rotated by {i}");
        }
    }
}

#[test]
fn border_array_is_linear() {
    let v = Alphabet::binary();
    let mut points = Vec::new();
    for exp in 12..=20 {
        let n = 1usize << exp;
        // Periodic input exercises the fallback chain more than random input.
        let w = random_word(&v, 64, exp as u64).pow(n / 64);
        let best = (0..5)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(border_array(w.indices()));
                t.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        points.push((n as f64, best));
    }
    let slope = loglog_slope(&points);
    assert!(slope <= 1.2, "border_array log-log slope {slope:.3}");
}

fn check_run_shape(w: &Word, run: &Run) {
    let s = w.indices();
    assert!(run.length >= 2 * run.period, "{w}: {run:?} has exponent below 2");
    let factor = &s[run.start..run.end()];
    assert!((run.period..factor.len()).all(|i| factor[i] == factor[i - run.period]));
    assert!(
        (1..run.period).all(|q| (q..factor.len()).any(|i| factor[i] != factor[i - q])),
        "{w}: {run:?} period is not minimal"
    );
    if run.start > 0 {
        assert_ne!(s[run.start - 1], s[run.start - 1 + run.period], "{w}: {run:?} extends left");
    }
    if run.end() < s.len() {
        assert_ne!(s[run.end()], s[run.end() - run.period], "{w}: {run:?} extends right");
    }
}

#[test]
fn runs_have_minimal_periods_and_are_maximal() {
    let v = Alphabet::ternary();
    for seed in 0..300 {
        let w = random_word(&v, 200, seed);
        let runs = find_maximal_repetitions(&w);
        for run in &runs {
            check_run_shape(&w, run);
        }
        let mut ends: Vec<(usize, usize)> = runs.iter().map(|r| (r.start, r.end())).collect();
        ends.dedup();
        assert_eq!(ends.len(), runs.len(), "{w}: two runs share (start, end)");
    }
}

#[test]
fn runs_on_highly_periodic_words() {
    let v = Alphabet::binary();
    let fib = {
        let (mut a, mut b) = (String::from("a"), String::from("ab"));
        while b.len() < BRUTEFORCE_BOUND {
            let next = format!("{b}{a}");
            a = b;
            b = next;
        }
        b[..BRUTEFORCE_BOUND].to_string()
    };
    for s in [fib.as_str(), &"aab".repeat(21), &"abaabab".repeat(9)] {
        let w = v.word(s).unwrap();
        assert_eq!(find_maximal_repetitions(&w), runs_bruteforce(&w).unwrap(), "{s}");
    }
}

fn has_period(s: &[u8], p: usize) -> bool {
    (p..s.len()).all(|i| s[i] == s[i - p])
}

/// Some rotation of `w` equals `u^k u'` with `u = u' a` and `k >= 1`,
/// found by enumerating `u` directly.
fn has_cyclic_form(w: &Word) -> bool {
    let n = w.len();
    (0..n).any(|r| {
        let rot = rotate(w, r).unwrap();
        let s = rot.indices();
        (1..=n.div_ceil(2))
            .filter(|m| (n + 1).is_multiple_of(*m))
            .any(|m| has_period(s, m))
    })
}

#[test]
fn cyclic_form_characterizes_non_ins_robust() {
    let v = Alphabet::binary();
    for w in words_up_to(&v, 12) {
        match verdict(&w) {
            Verdict::NonPrimitive => {}
            Verdict::InsRobust => assert!(!has_cyclic_form(&w), "{w}"),
            Verdict::NonInsRobust => assert!(has_cyclic_form(&w), "{w}"),
        }
    }
}

#[test]
fn failing_density_extensions_have_square_structure() {
    let v = Alphabet::binary();
    for n in 1..=10 {
        for w in words_of_length(&v, n) {
            for a in 0..2u8 {
                if w.indices().iter().all(|&c| c == a) {
                    continue;
                }
                let ext = w.extend_with(a, n).unwrap();
                if verdict(&ext) != Verdict::NonInsRobust {
                    continue;
                }
                // w a^n = u u a^(|u| - 1) with u holding exactly one non-a letter.
                assert_eq!((2 * n + 1) % 3, 0, "{ext}");
                let m = (2 * n + 1) / 3;
                let u = ext.factor(0..m);
                let tail = Word::from_indices(&v, vec![a; m - 1]).unwrap();
                assert_eq!(u.concat(&u).unwrap().concat(&tail).unwrap(), ext);
                assert_eq!(u.indices().iter().filter(|&&c| c != a).count(), 1, "{u}");
            }
        }
    }
}

#[test]
fn witnesses_are_always_valid() {
    for v in [Alphabet::binary(), Alphabet::ternary()] {
        for w in words_up_to(&v, 8) {
            for c in [classify_fast(&w).unwrap(), classify_oracle(&w).unwrap()] {
                if let Classification::NonPrimitive { root, exponent } = &c {
                    assert_eq!(root.pow(*exponent), w);
                    assert!(is_primitive(root).unwrap());
                }
                for wit in c.witnesses() {
                    wit.validate(&w).unwrap();
                    assert!(wit.power >= 2);
                }
            }
        }
    }
}

#[test]
fn fast_witness_is_smallest_period() {
    let v = Alphabet::binary();
    for w in words_up_to(&v, 11) {
        let fast = classify_fast(&w).unwrap();
        let oracle = classify_oracle(&w).unwrap();
        if let (Some(f), false) = (fast.witnesses().first(), oracle.witnesses().is_empty()) {
            let smallest = oracle.witnesses().iter().map(|x| x.root.len()).min().unwrap();
            assert_eq!(f.root.len(), smallest, "{w}");
        }
    }
}

#[test]
fn decomposition_reconstructs_every_witness() {
    let v = Alphabet::ternary();
    for w in words_up_to(&v, 7) {
        for wit in classify_oracle(&w).unwrap().witnesses() {
            let d = non_ins_robust_decomposition(&w, wit).unwrap();
            assert!(d.r + d.s >= 1);
            assert_eq!(d.r + d.s + 1, wit.power);
            let mut u = d.u1.indices().to_vec();
            u.push(wit.letter);
            u.extend_from_slice(d.u2.indices());
            assert_eq!(u, wit.root.indices());
        }
    }
}

#[test]
fn primitive_counts_sum_over_divisors() {
    for k in 1..=4u64 {
        for n in 1..=20u64 {
            let sum: BigUint = insrobust::counting::divisors(n)
                .into_iter()
                .map(|d| count_primitive(d, k).unwrap())
                .sum();
            assert_eq!(sum, BigUint::from(k).pow(n as u32), "n={n} k={k}");
        }
    }
}

#[test]
fn primitive_counts_at_primes() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for k in 2..=5u64 {
            let expected = BigUint::from(k).pow(p as u32) - BigUint::from(k);
            assert_eq!(count_primitive(p, k).unwrap(), expected);
        }
    }
}

#[test]
fn census_nonprimitive_matches_formula() {
    let v = Alphabet::binary();
    for n in 1..=14usize {
        let r = census(n, &v, &CensusOptions::default()).unwrap();
        assert_eq!(r.counts.total(), 1 << n);
        assert_eq!(
            BigUint::from(r.counts.non_primitive),
            count_nonprimitive(n as u64, 2).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn optional_fixture_families() {
    let v = Alphabet::binary();
    // a^n b a^m b with m > n + 1, m != 2n: ins-robust.
    for n in 1..6 {
        for m in n + 2..n + 8 {
            if m == 2 * n {
                continue;
            }
            let s = format!("{}b{}b", "a".repeat(n), "a".repeat(m));
            assert_eq!(verdict(&v.word(&s).unwrap()), Verdict::InsRobust, "{s}");
        }
    }
    // a^(p+1) b^(p+1) a^(p+1) b^p: non-ins-robust.
    for p in 1..8 {
        let s = format!(
            "{}{}{}{}",
            "a".repeat(p + 1),
            "b".repeat(p + 1),
            "a".repeat(p + 1),
            "b".repeat(p)
        );
        assert_eq!(verdict(&v.word(&s).unwrap()), Verdict::NonInsRobust, "{s}");
    }
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = (usize, Vec<u8>)> {
    (2usize..=4).prop_flat_map(move |k| (Just(k), prop::collection::vec(0..k as u8, 1..=max_len)))
}

fn build(k: usize, symbols: Vec<u8>) -> Word {
    let v = Alphabet::new(('a'..).take(k).collect()).unwrap();
    Word::from_indices(&v, symbols).unwrap()
}

proptest! {
    #[test]
    fn root_reconstructs_word((k, s) in word_strategy(80)) {
        let w = build(k, s);
        let (root, e) = primitive_root(&w).unwrap();
        prop_assert_eq!(root.pow(e), w.clone());
        prop_assert!(is_primitive(&root).unwrap());
        prop_assert_eq!(e == 1, is_primitive(&w).unwrap());
    }

    #[test]
    fn powers_are_not_primitive((k, s) in word_strategy(20), e in 2usize..5) {
        let w = build(k, s).pow(e);
        prop_assert!(!is_primitive(&w).unwrap());
        prop_assert_eq!(primitive_root(&w).unwrap().1 % e, 0);
    }

    #[test]
    fn fast_agrees_with_oracle((k, s) in word_strategy(40)) {
        let w = build(k, s);
        let fast = classify_fast(&w).unwrap();
        let oracle = classify_oracle(&w).unwrap();
        prop_assert_eq!(fast.verdict(), oracle.verdict());
        if let Some(wit) = fast.witnesses().first() {
            prop_assert!(oracle.witnesses().contains(wit));
        }
    }

    #[test]
    fn planted_witnesses_are_found((k, s) in word_strategy(12), e in 2usize..6, cut in 0usize..100) {
        // Deleting one letter from a proper power gives a word that is
        // non-ins-robust or non-primitive.
        let power = build(k, s).pow(e);
        let pos = cut % power.len();
        let mut symbols = power.indices().to_vec();
        symbols.remove(pos);
        let w = Word::from_indices(power.alphabet(), symbols).unwrap();
        prop_assert_ne!(classify_fast(&w).unwrap().verdict(), Verdict::InsRobust);
    }

    #[test]
    fn runs_match_bruteforce((k, s) in word_strategy(64)) {
        let w = build(k, s);
        prop_assert_eq!(find_maximal_repetitions(&w), runs_bruteforce(&w).unwrap());
    }
}
