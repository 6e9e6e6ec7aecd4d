use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Rational;

/// Default bound on `|numerator|` and denominator of random points.
pub const POINT_BOUND: i64 = 1_000_000;

/// Deterministic pseudo-random rational for polynomial identity testing.
///
/// Never returns 0, 1, -1 or a member of `avoid`.
pub fn random_point(seed: u64, avoid: &[Rational]) -> Rational {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_point_with(&mut rng, POINT_BOUND, avoid)
}

/// Draw from `rng` with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`. `bound` must be at least 2.
pub fn random_point_with<R: Rng>(rng: &mut R, bound: i64, avoid: &[Rational]) -> Rational {
    assert!(bound >= 2, "random point bound must be at least 2");
    loop {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(1..=bound);
        let r = Rational::new(BigInt::from(p), BigInt::from(q));
        if r.numer().magnitude() == r.denom().magnitude() || p == 0 {
            continue;
        }
        if avoid.contains(&r) {
            continue;
        }
        return r;
    }
}

/// Like [`random_point_with`] but restricted to `0 < |r| < 1`, for points
/// where geometric tails must converge.
pub fn random_small_point<R: Rng>(rng: &mut R, bound: i64, avoid: &[Rational]) -> Rational {
    loop {
        let r = random_point_with(rng, bound, avoid);
        if r.numer().magnitude() < r.denom().magnitude() {
            return r;
        }
    }
}
