use num_traits::{One, Signed, Zero};

use super::{diagonal_symbol, Gen, OscWord};
use crate::scalar::Field;
use crate::Rational;

/// The Fock space cut to `|0⟩, …, |D-1⟩`; `a⁺` kills `|D-1⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockTruncation {
    dim: usize,
}

impl FockTruncation {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 2, "Fock truncation needs at least two levels");
        FockTruncation { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `g|d⟩` as `(level, coefficient)`, `None` when it vanishes.
    pub fn apply<F: Field>(&self, g: Gen, t: &F, d: usize) -> Option<(usize, F)> {
        match g {
            Gen::APlus => (d + 1 < self.dim).then(|| (d + 1, F::one())),
            Gen::AMinus => (d > 0).then(|| (d - 1, F::one() - t.powi(d as i64))),
            Gen::K => Some((d, t.powi(d as i64))),
        }
    }

    pub fn apply_word<F: Field>(&self, w: &OscWord, t: &F, d: usize) -> Option<(usize, F)> {
        let mut level = d;
        let mut c = F::one();
        for &g in w.letters().iter().rev() {
            let (next, f) = self.apply(g, t, level)?;
            level = next;
            c = c * f;
            if c.is_zero() {
                return None;
            }
        }
        Some((level, c))
    }

    /// Dense matrix, `m[row][col] = ⟨row|w|col⟩`.
    pub fn matrix<F: Field>(&self, w: &OscWord, t: &F) -> Vec<Vec<F>> {
        let mut m = vec![vec![F::zero(); self.dim]; self.dim];
        for col in 0..self.dim {
            if let Some((row, c)) = self.apply_word(w, t, col) {
                m[row][col] = c;
            }
        }
        m
    }
}

/// `Σ_{d < D-P} q0^d ⟨d|w|d⟩` in the `D`-level truncation, where `P` is
/// the number of `a⁺` letters; below that cut the truncation is exact.
pub fn trace_truncated(w: &OscWord, q0: &Rational, t0: &Rational, dim: usize) -> Rational {
    let fock = FockTruncation::new(dim);
    let cut = dim.saturating_sub(w.count(Gen::APlus));
    let mut acc = Rational::zero();
    let mut qd = Rational::one();
    for d in 0..cut {
        if let Some((out, c)) = fock.apply_word(w, t0, d) {
            if out == d {
                acc += &qd * c;
            }
        }
        qd *= q0;
    }
    acc
}

/// Upper bound on `|trace_qh(w)(t0) - trace_truncated(w, q0, t0, dim)|`.
/// `None` if some geometric ratio `|q0 t0^e|` is not below one.
pub fn tail_bound(w: &OscWord, q0: &Rational, t0: &Rational, dim: usize) -> Option<Rational> {
    let (coeffs, delta) = diagonal_symbol(w);
    if delta != 0 {
        return Some(Rational::zero());
    }
    let cut = dim.saturating_sub(w.count(Gen::APlus)) as i64;
    let mut bound = Rational::zero();
    for (e, c) in coeffs {
        let r = (q0 * t0.powi(e as i64)).abs();
        if r >= Rational::one() {
            return None;
        }
        let c = c.eval(t0).ok()?.abs();
        bound += c * r.powi(cut) / (Rational::one() - r);
    }
    Some(bound)
}
