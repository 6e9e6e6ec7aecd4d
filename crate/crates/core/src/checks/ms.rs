use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{spectral_points, CheckReport};
use crate::error::Result;
use crate::mlq::{m_element, Row};
use crate::oscillator::s_element;
use crate::Rational;

/// Random `(i, j, a, b)` with `L <= max_len`, `l < m <= 5`. The image `a`
/// is drawn inside `j` so that most instances are nonzero.
pub fn random_ms_instance<R: Rng>(rng: &mut R, max_len: usize) -> (Row, Row, Row, Row) {
    let len = rng.gen_range(1..=max_len.min(64));
    let m = rng.gen_range(1..=len.min(5));
    let l = rng.gen_range(0..m);
    let pick = |rng: &mut R, k: usize| {
        let rows = Row::all(len, k);
        rows[rng.gen_range(0..rows.len())]
    };
    let i = pick(rng, l);
    let j = pick(rng, m);
    let mut cols = j.columns();
    cols.shuffle(rng);
    let amask = cols[..l].iter().fold(0u64, |acc, &c| acc | 1 << c);
    let a = Row::from_mask(amask, len).expect("subset of j");
    let b = Row::from_mask(j.mask() & !amask, len).expect("subset of j");
    (i, j, a, b)
}

/// `m_element = s_element` on `trials` random instances, each at
/// `points` random rational `q` with `t` symbolic.
pub fn check_ms(max_len: usize, trials: usize, points: usize, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("ms-theorem", 0, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qs = spectral_points(seed, points, &[Rational::from_integer(0.into())]);
    rep.points = qs.iter().map(|q| format!("q={q}")).collect();
    for _ in 0..trials {
        let (i, j, a, b) = random_ms_instance(&mut rng, max_len);
        for q in &qs {
            let lhs = m_element(q, &i, &j, &a, &b)?;
            let rhs = s_element(q, &i, &j, &a, &b)?;
            rep.comparisons += 1;
            if lhs != rhs {
                rep.fail(format!("i={i} j={j} a={a} b={b} q={q}: M = {lhs}, S = {rhs}"));
                return Ok(rep);
            }
        }
    }
    Ok(rep)
}
