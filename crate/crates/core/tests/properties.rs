mod common;

use nativeness::lexicon::init_scores;
use nativeness::model::{self, NgramIndex, Role, PROB_FLOOR};
use nativeness::optimizer::{run_uns, score_step, Problem};
use nativeness::syllable::{self, Script};
use nativeness::{Hyperparams, Lexicon};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn shapes() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..TOY_SYLLABLES.len(), 1..=6), 1..=12)
}

proptest! {
    #[test]
    fn segmentation_roundtrips(shape in prop::collection::vec(0..TOY_SYLLABLES.len(), 1..=8)) {
        let word = spell(&shape);
        let segs = syllable::segment(&word, Script::Malayalam).unwrap();
        prop_assert_eq!(syllable::join(&segs), word.clone());
        let expected: Vec<&str> = shape.iter().map(|&i| TOY_SYLLABLES[i]).collect();
        let got: Vec<&str> = segs.iter().map(|s| s.as_str()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn golden_words_survive_renormalization(idx in 0usize..50) {
        for (file, script) in [("golden_malayalam.txt", Script::Malayalam), ("golden_telugu.txt", Script::Telugu)] {
            let entries = golden_entries(file);
            let (word, _) = &entries[idx % entries.len()];
            let once = syllable::segment(word, script).unwrap();
            let twice = syllable::segment(&syllable::join(&once), script).unwrap();
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn normalization_keeps_floor(mut w in prop::collection::vec(0.0..1e3f64, 1..60), tiny in 0usize..60) {
        let len = w.len();
        w[tiny % len] = 0.0;
        model::normalize_with_floor(&mut w, PROB_FLOOR);
        let total: f64 = w.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(w.iter().all(|&p| p >= PROB_FLOOR));
    }

    #[test]
    fn mirror_symmetry_general_scores(
        shapes in shapes(),
        raw in prop::collection::vec(0.01..0.99f64, 12),
        seed in any::<u64>(),
    ) {
        let lex = toy_lexicon(&shapes);
        let index = NgramIndex::build(&lex, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_distribution(&mut rng, &index, Role::Native);
        let l = random_distribution(&mut rng, &index, Role::Loanword);
        let w = &raw[..lex.len()];
        let flipped: Vec<f64> = w.iter().map(|x| 1.0 - x).collect();
        let a = model::update_native(&index, w, &n, &l);
        let b = model::update_loanword(&index, &flipped, &l, &n);
        for (x, y) in a.probs().iter().zip(b.probs()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn diverse_set_matches_string_recount(shapes in shapes(), rho in 1usize..4, stem_length in 1usize..4) {
        let lex = toy_lexicon(&shapes);
        let words: Vec<String> = lex.words().iter().map(|w| w.as_str().to_string()).collect();
        let naive = naive_diversity(&words, Script::Malayalam, stem_length);
        let stems = lex.stem_index(stem_length);
        prop_assert_eq!(stems.diversities(), &naive[..]);
        let expected: Vec<bool> = naive.iter().map(|&d| d > rho).collect();
        prop_assert_eq!(stems.diverse_mask(rho), expected);
    }

    #[test]
    fn init_scores_clamped_and_monotone(shapes in shapes(), tau in 1usize..20) {
        let lex = toy_lexicon(&shapes);
        let hp = Hyperparams { tau, ..Default::default() };
        let stems = lex.stem_index(hp.stem_length);
        let s = init_scores(&stems, &hp);
        let d = stems.diversities();
        for i in 0..s.len() {
            prop_assert!((0.01..=0.99).contains(&s[i]));
            for j in 0..s.len() {
                if d[i] <= d[j] {
                    prop_assert!(s[i] <= s[j]);
                }
            }
        }
    }

    #[test]
    fn larger_alpha_pushes_diverse_words_up(
        shapes in shapes(),
        w in 0.01..0.99f64,
        a1 in 0.0..3.0f64,
        a2 in 0.0..3.0f64,
        seed in any::<u64>(),
    ) {
        let lex = toy_lexicon(&shapes);
        let index = NgramIndex::build(&lex, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_distribution(&mut rng, &index, Role::Native);
        let l = random_distribution(&mut rng, &index, Role::Loanword);
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let counts = index.counts(0);
        prop_assert!(score_step(counts, true, w, lo, &n, &l) <= score_step(counts, true, w, hi, &n, &l));
        prop_assert_eq!(
            score_step(counts, false, w, lo, &n, &l),
            score_step(counts, false, w, hi, &n, &l)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn runs_are_deterministic_and_order_free(shapes in shapes(), n in 1usize..=2) {
        let lex = toy_lexicon(&shapes);
        let mut reversed: Vec<String> = lex.words().iter().map(|w| w.as_str().to_string()).collect();
        reversed.reverse();
        let lex2 = Lexicon::from_words(&reversed, Script::Malayalam).unwrap();
        let hp = Hyperparams { ngram_n: n, ..Default::default() };
        let a = run_uns(&lex, &hp).unwrap();
        let b = run_uns(&lex2, &hp).unwrap();
        prop_assert_eq!(&a.state.scores, &b.state.scores);
        prop_assert_eq!(&a.state.trace, &b.state.trace);
        prop_assert!(a.state.scores.iter().all(|s| (0.01..=0.99).contains(s)));
    }
}

#[test]
fn problem_rejects_bad_hyperparams() {
    let lex = toy_lexicon(&[vec![0, 1]]);
    for hp in [
        Hyperparams {
            rho: 0,
            ..Default::default()
        },
        Hyperparams {
            tau: 0,
            ..Default::default()
        },
        Hyperparams {
            alpha: -1.0,
            ..Default::default()
        },
        Hyperparams {
            ngram_n: 3,
            ..Default::default()
        },
    ] {
        assert!(Problem::new(&lex, &hp).is_err(), "{hp:?}");
    }
}
