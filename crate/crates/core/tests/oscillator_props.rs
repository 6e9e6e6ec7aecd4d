use std::collections::BTreeMap;

use asepx::mlq::{m_element, Row};
use asepx::oscillator::{
    normal_order, s_element, tail_bound, trace_qh, trace_truncated, FockTruncation, Gen, NormalForm, OscWord,
};
use asepx::scalar::Field;
use asepx::{Rational, RationalFunctionT};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn tp(k: i64) -> RationalFunctionT {
    RationalFunctionT::t().powi(k)
}

fn gen() -> impl Strategy<Value = Gen> {
    prop_oneof![Just(Gen::APlus), Just(Gen::AMinus), Just(Gen::K)]
}

fn word(max: usize) -> impl Strategy<Value = OscWord> {
    prop::collection::vec(gen(), 0..=max).prop_map(OscWord::new)
}

fn balanced(max_pairs: usize, max_k: usize) -> impl Strategy<Value = OscWord> {
    (0..=max_pairs, 0..=max_k)
        .prop_flat_map(|(p, k)| {
            let mut letters = vec![Gen::APlus; p];
            letters.extend(vec![Gen::AMinus; p]);
            letters.extend(vec![Gen::K; k]);
            Just(letters).prop_shuffle()
        })
        .prop_map(OscWord::new)
}

/// Every single local rewrite of `w`, as a linear combination of words.
fn rewrites(w: &OscWord) -> Vec<Vec<(RationalFunctionT, OscWord)>> {
    use Gen::*;
    let l = w.letters();
    let one = RationalFunctionT::one();
    let mut out = Vec::new();
    for pos in 0..l.len().saturating_sub(1) {
        let splice = |mid: &[Gen]| {
            let mut v = l[..pos].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&l[pos + 2..]);
            OscWord::new(v)
        };
        let combo = match (l[pos], l[pos + 1]) {
            (AMinus, APlus) => vec![(one.clone(), splice(&[])), (-tp(1), splice(&[K]))],
            (APlus, AMinus) => vec![(one.clone(), splice(&[])), (-one.clone(), splice(&[K]))],
            (K, APlus) => vec![(tp(1), splice(&[APlus, K]))],
            (APlus, K) => vec![(tp(-1), splice(&[K, APlus]))],
            (K, AMinus) => vec![(tp(-1), splice(&[AMinus, K]))],
            (AMinus, K) => vec![(tp(1), splice(&[K, AMinus]))],
            _ => continue,
        };
        out.push(combo);
    }
    out
}

fn term_word(p: usize, e: usize, m: usize) -> OscWord {
    let mut v = vec![Gen::APlus; p];
    v.extend(vec![Gen::K; e]);
    v.extend(vec![Gen::AMinus; m]);
    OscWord::new(v)
}

fn all_words(len: usize) -> Vec<OscWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Gen>| {
                [Gen::APlus, Gen::AMinus, Gen::K].into_iter().map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(OscWord::new).collect()
}

#[test]
fn k_persistence_up_to_length_eight() {
    let mut checked = 0;
    for len in 1..=8 {
        for w in all_words(len) {
            if w.ladder() != 0 || w.count(Gen::K) == 0 {
                continue;
            }
            let nf = normal_order(&w);
            assert!(nf.min_k_power().map_or(true, |e| e >= 1), "{w}: {nf}");
            assert!(trace_qh(&w, &Rational::one()).is_ok());
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn hand_traces() {
    let one = RationalFunctionT::one();
    // Σ_{d≥1} (1 - t^d) t^{d-1}
    let got = trace_qh(&"+k-".parse().unwrap(), &Rational::one()).unwrap();
    assert_eq!(got, &one / &(&one - &tp(2)));
    let q = r(1, 3);
    let qq = RationalFunctionT::constant(q.clone());
    let got = trace_qh(&"kk".parse().unwrap(), &q).unwrap();
    assert_eq!(got, &one / &(&one - &(&qq * &tp(2))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewriting_is_confluent(w in word(7)) {
        let nf = normal_order(&w);
        for combo in rewrites(&w) {
            let mut acc = NormalForm::zero();
            for (c, v) in &combo {
                acc.add_scaled(&normal_order(v), c);
            }
            prop_assert_eq!(&acc, &nf, "{}", w);
        }
    }

    #[test]
    fn normal_form_terms_share_the_imbalance(w in word(8)) {
        let nf = normal_order(&w);
        for &(p, _, m) in nf.terms().keys() {
            prop_assert_eq!(p as i64 - m as i64, w.ladder());
            prop_assert!(p == 0 || m == 0);
        }
    }

    #[test]
    fn normal_form_matches_truncated_matrices(w in word(7), tn in 1i64..4) {
        let t0 = r(tn, 5);
        let fock = FockTruncation::new(12);
        let nf = normal_order(&w);
        let safe = 12 - w.count(Gen::APlus).max(nf.terms().keys().map(|k| k.0).max().unwrap_or(0));
        for d in 0..safe {
            let mut lhs: BTreeMap<usize, Rational> = BTreeMap::new();
            if let Some((out, c)) = fock.apply_word(&w, &t0, d) {
                lhs.insert(out, c);
            }
            let mut rhs: BTreeMap<usize, Rational> = BTreeMap::new();
            for (&(p, e, m), c) in nf.terms() {
                if let Some((out, x)) = fock.apply_word(&term_word(p, e, m), &t0, d) {
                    *rhs.entry(out).or_insert_with(Rational::zero) += c.eval(&t0).unwrap() * x;
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            prop_assert_eq!(&lhs, &rhs, "{} at level {}", w, d);
        }
    }

    #[test]
    fn truncated_trace_within_tail_bound(
        w in balanced(3, 3),
        qn in -3i64..=3,
        tn in -3i64..=3,
    ) {
        prop_assume!(tn != 0);
        let (q0, t0) = (r(qn, 4), r(tn, 4));
        let exact = match trace_qh(&w, &q0) {
            Ok(f) => f.eval(&t0).unwrap(),
            Err(_) => return Ok(()),
        };
        let approx = trace_truncated(&w, &q0, &t0, 30);
        let bound = tail_bound(&w, &q0, &t0, 30).unwrap();
        prop_assert!((exact - approx).abs() <= bound, "{}", w);
    }

    #[test]
    fn matrix_and_trace_formulas_agree(
        len in 2usize..=7,
        seed in any::<u64>(),
        qn in -5i64..=5,
        qd in 1i64..=5,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=len.min(5));
        let l = rng.gen_range(0..m);
        let pick = |rng: &mut rand_chacha::ChaCha8Rng, k: usize| {
            let rows = Row::all(len, k);
            rows[rng.gen_range(0..rows.len())]
        };
        let i = pick(&mut rng, l);
        let j = pick(&mut rng, m);
        // a inside j half the time, so that most cases are nonzero
        let a = if rng.gen_bool(0.5) {
            let cols = j.columns();
            let mut mask = 0u64;
            for &c in cols.iter().take(l) {
                mask |= 1 << c;
            }
            Row::from_mask(mask, len).unwrap()
        } else {
            pick(&mut rng, l)
        };
        let b = Row::from_mask(j.mask() & !a.mask(), len).unwrap();
        let q = r(qn, qd);
        prop_assert_eq!(
            s_element(&q, &i, &j, &a, &b).unwrap(),
            m_element(&q, &i, &j, &a, &b).unwrap()
        );
    }
}
