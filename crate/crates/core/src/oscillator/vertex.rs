use num_traits::{Zero};

use super::{trace_qh, Gen, OscWord};
use crate::error::{Error, Result};
use crate::mlq::Row;
use crate::{PolyT, Rational, RationalFunctionT};

/// Nonzero five-vertex weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SWeight {
    One,
    K,
    AMinus,
    APlus,
}

impl SWeight {
    pub fn generator(self) -> Option<Gen> {
        match self {
            SWeight::One => None,
            SWeight::K => Some(Gen::K),
            SWeight::AMinus => Some(Gen::AMinus),
            SWeight::APlus => Some(Gen::APlus),
        }
    }

    /// Change of the Fock level.
    pub fn level_shift(self) -> i64 {
        match self {
            SWeight::APlus => 1,
            SWeight::AMinus => -1,
            _ => 0,
        }
    }
}

/// `S^{ab}_{ij}` with `i` left, `a` right, `j` bottom, `b` top.
pub fn s_weight(i: u8, a: u8, j: u8, b: u8) -> Option<SWeight> {
    match (i, a, j, b) {
        (0, 0, 0, 0) | (1, 1, 1, 0) => Some(SWeight::One),
        (0, 0, 1, 1) => Some(SWeight::K),
        (0, 1, 1, 0) => Some(SWeight::AMinus),
        (1, 0, 0, 0) => Some(SWeight::APlus),
        _ => None,
    }
}

/// Oscillator word `S^{a_1 b_1}_{i_1 j_1} ⋯ S^{a_L b_L}_{i_L j_L}`, `None`
/// if some site weight vanishes.
pub fn s_word(i: &Row, j: &Row, a: &Row, b: &Row) -> Option<OscWord> {
    let mut w = OscWord::identity();
    for r in 0..j.len() {
        let bit = |x: &Row| x.has(r) as u8;
        if let Some(g) = s_weight(bit(i), bit(a), bit(j), bit(b))?.generator() {
            w.push(g);
        }
    }
    Some(w)
}

/// `(1 - q t^{m-l}) tr(q^h S^{a_1 b_1}_{i_1 j_1} ⋯)` for `l = |i| < m = |j|`.
pub fn s_element(q: &Rational, i: &Row, j: &Row, a: &Row, b: &Row) -> Result<RationalFunctionT> {
    let len = j.len();
    if i.len() != len || a.len() != len || b.len() != len {
        return Err(Error::InvalidInput("rows of different lengths".into()));
    }
    let (l, m) = (i.count(), j.count());
    if l >= m {
        return Err(Error::InvalidInput(format!("need l < m, got l = {l}, m = {m}")));
    }
    let Some(w) = s_word(i, j, a, b) else {
        return Ok(RationalFunctionT::zero());
    };
    let pref = &PolyT::one() - &PolyT::monomial(q.clone(), m - l);
    Ok(RationalFunctionT::from_poly(pref) * trace_qh(&w, q)?)
}
