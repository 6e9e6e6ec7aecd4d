//! Multiline queues: row-to-row pairings, their weights, the operator M̌,
//! the layered composition 𝕄 and the projection Π onto ring configurations.
//!
//! Columns are 0-based internally. A pairing arrow leaves a ball of the
//! lower row and travels leftward (cyclically) until it reaches its target
//! in the row above.

mod direct;
mod tensor;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::asep::Multiplicity;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{PolyT, Rational, RationalFunctionT};

pub use direct::{mlq_enumerate_direct, mlq_queues, queues_of, Arrow, Queue};
pub use tensor::{big_m_apply, big_m_apply_vector, mcheck_apply, mcheck_apply_at, mlq_state, project_pi, TensorVector};

/// Longest supported ring.
pub const MAX_LEN: usize = 64;

/// A row of `L` sites, each empty or holding one ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    bits: u64,
    len: usize,
}

impl Row {
    pub fn from_mask(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_LEN || (len < 64 && bits >> len != 0) {
            return Err(Error::InvalidInput(format!("mask {bits:#b} does not fit {len} columns")));
        }
        Ok(Row { bits, len })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_LEN {
            return Err(Error::InvalidInput(format!("rows longer than {MAX_LEN} are unsupported")));
        }
        let mut mask = 0;
        for (k, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => mask |= 1 << k,
                _ => return Err(Error::InvalidInput(format!("row entry {b} is not 0 or 1"))),
            }
        }
        Ok(Row { bits: mask, len: bits.len() })
    }

    pub fn empty(len: usize) -> Self {
        Row { bits: 0, len }
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of balls.
    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn has(&self, col: usize) -> bool {
        self.bits >> col & 1 == 1
    }

    /// Occupied columns, left to right.
    pub fn columns(&self) -> Vec<usize> {
        (0..self.len).filter(|&c| self.has(c)).collect()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|c| self.has(c) as u8).collect()
    }

    /// All rows of length `len` with `count` balls, in increasing mask order.
    pub fn all(len: usize, count: usize) -> Vec<Row> {
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(count);
        combos(len, count, 0, &mut pick, &mut |cols| {
            let bits = cols.iter().fold(0u64, |m, &c| m | 1 << c);
            out.push(Row { bits, len });
        });
        out.sort();
        out
    }
}

fn combos(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for c in start..n {
        if n - c < k - pick.len() {
            break;
        }
        pick.push(c);
        combos(n, k, c + 1, pick, f);
        pick.pop();
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.len {
            write!(f, "{}", self.has(c) as u8)?;
        }
        Ok(())
    }
}

impl FromStr for Row {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("not a row: {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Row::from_bits(&bits)
    }
}

/// Rows `(b_n, …, b_1)` of a ball system, top row last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSystem {
    rows: Vec<Row>,
}

impl BallSystem {
    /// Rows are given as `(b_n, …, b_1)`; occupancies must satisfy
    /// `L > l_1 > … > l_n ≥ 1`.
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidInput("a ball system needs at least one row".into()));
        };
        let len = first.len();
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::InvalidInput("rows of a ball system must have equal length".into()));
        }
        let occ: Vec<usize> = rows.iter().map(Row::count).collect();
        let ok = occ[0] >= 1 && occ.windows(2).all(|w| w[0] < w[1]) && *occ.last().unwrap() < len;
        if !ok {
            return Err(Error::InvalidInput(format!("occupancies {occ:?} are not strictly increasing inside 1..{len}")));
        }
        Ok(BallSystem { rows })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The sector `(m_0, …, m_n)` this ball system belongs to.
    pub fn multiplicity(&self) -> Multiplicity {
        let occ: Vec<usize> = self.rows.iter().rev().map(Row::count).collect();
        let mut counts = vec![self.len() - occ[0]];
        for r in 0..occ.len() {
            counts.push(occ[r] - occ.get(r + 1).copied().unwrap_or(0));
        }
        Multiplicity::new(counts)
    }
}

/// Row occupancies `(l_n, …, l_1)` of a basic sector.
pub fn occupancies(m: &Multiplicity) -> Result<Vec<usize>> {
    m.require_basic()?;
    Ok((1..=m.n()).rev().map(|r| m.l(r)).collect())
}

/// One arrow of a pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStep {
    pub source: usize,
    pub target: usize,
    pub wrapped: bool,
    pub skipped: usize,
    pub free: usize,
    pub trivial: bool,
}

/// A complete pairing of a lower row into the row above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingOutcome {
    pub target: Row,
    pub steps: Vec<PairStep>,
}

/// Free balls of `free` strictly between `target` and `source`, walking
/// leftward from `source`.
fn skipped_between(free: u64, source: usize, target: usize, len: usize) -> usize {
    let below = |c: usize| if c >= 64 { u64::MAX } else { (1u64 << c) - 1 };
    let open = if target < source {
        below(source) & !below(target + 1)
    } else {
        below(source) | (below(len) & !below(target + 1))
    };
    (free & open).count_ones() as usize
}

/// All pairings of `lower` into `upper`, balls processed left to right.
pub fn enumerate_pairings(lower: &Row, upper: &Row) -> Result<Vec<PairingOutcome>> {
    enumerate_pairings_ordered(lower, upper, &lower.columns())
}

/// All pairings of `lower` into `upper`, processing the lower balls in the
/// given column order.
pub fn enumerate_pairings_ordered(lower: &Row, upper: &Row, order: &[usize]) -> Result<Vec<PairingOutcome>> {
    if lower.len() != upper.len() {
        return Err(Error::InvalidInput("rows of different length".into()));
    }
    if lower.count() >= upper.count() {
        return Err(Error::InvalidInput(format!(
            "cannot pair {} balls into {}",
            lower.count(),
            upper.count()
        )));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != lower.columns() {
        return Err(Error::InvalidInput("order is not a permutation of the lower balls".into()));
    }
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(order.len());
    pair_rec(order, upper.bits, upper.len, &mut steps, &mut out);
    Ok(out
        .into_iter()
        .map(|steps: Vec<PairStep>| {
            let bits = steps.iter().fold(0u64, |m, s| m | 1 << s.target);
            PairingOutcome { target: Row { bits, len: upper.len }, steps }
        })
        .collect())
}

fn pair_rec(order: &[usize], free: u64, len: usize, steps: &mut Vec<PairStep>, out: &mut Vec<Vec<PairStep>>) {
    let Some((&s, rest)) = order.split_first() else {
        out.push(steps.clone());
        return;
    };
    let nfree = free.count_ones() as usize;
    let targets: Vec<usize> = if free >> s & 1 == 1 {
        vec![s]
    } else {
        (0..len).filter(|&c| free >> c & 1 == 1).collect()
    };
    for t in targets {
        steps.push(PairStep {
            source: s,
            target: t,
            wrapped: t > s,
            skipped: if t == s { 0 } else { skipped_between(free, s, t, len) },
            free: nfree,
            trivial: t == s,
        });
        pair_rec(rest, free & !(1 << t), len, steps, out);
        steps.pop();
    }
}

/// Weight of a single non-trivial arrow:
/// `(1-t) t^skipped qeff^wrapped / (1 - qeff t^free)`.
pub fn step_weight(wrapped: bool, skipped: usize, free: usize, qeff: &Rational) -> RationalFunctionT {
    let one = Rational::one();
    let mut num = PolyT::monomial(one.clone(), skipped + 1);
    num = &PolyT::monomial(one.clone(), skipped) - &num;
    if wrapped {
        num = num.scale(qeff);
    }
    let den = &PolyT::one() - &PolyT::monomial(qeff.clone(), free);
    RationalFunctionT::normalize(num, den).expect("1 - qeff t^free is a nonzero polynomial")
}

/// Product of the arrow weights; trivial arrows contribute 1.
pub fn pairing_weight(p: &PairingOutcome, qeff: &Rational) -> RationalFunctionT {
    p.steps
        .iter()
        .filter(|s| !s.trivial)
        .fold(RationalFunctionT::one(), |acc, s| {
            acc * step_weight(s.wrapped, s.skipped, s.free, qeff)
        })
}

/// Pairing weights of `lower` into `upper` summed by image.
pub(crate) fn grouped_weights(
    lower: &Row,
    upper: &Row,
    qeff: &Rational,
    cache: &mut HashMap<(bool, usize, usize), RationalFunctionT>,
) -> Result<Vec<(Row, RationalFunctionT)>> {
    let mut by_image: Vec<(Row, RationalFunctionT)> = Vec::new();
    for p in enumerate_pairings(lower, upper)? {
        let mut w = RationalFunctionT::one();
        for s in p.steps.iter().filter(|s| !s.trivial) {
            let f = cache
                .entry((s.wrapped, s.skipped, s.free))
                .or_insert_with(|| step_weight(s.wrapped, s.skipped, s.free, qeff));
            w = &w * f;
        }
        match by_image.iter_mut().find(|(a, _)| *a == p.target) {
            Some((_, acc)) => *acc = &*acc + &w,
            None => by_image.push((p.target, w)),
        }
    }
    by_image.retain(|(_, w)| !w.is_zero());
    Ok(by_image)
}

/// Matrix element `M(q,t)^{a,b}_{i,j}`: zero unless `a + b = j`, otherwise
/// the total weight of the pairings of `i` into `j` with image `a`.
pub fn m_element(q: &Rational, i: &Row, j: &Row, a: &Row, b: &Row) -> Result<RationalFunctionT> {
    if a.bits & b.bits != 0 || a.bits | b.bits != j.bits || a.len != j.len || b.len != j.len {
        return Ok(RationalFunctionT::zero());
    }
    let total = enumerate_pairings(i, j)?
        .iter()
        .filter(|p| p.target == *a)
        .fold(RationalFunctionT::zero(), |acc, p| acc + pairing_weight(p, q));
    Ok(total)
}

/// `q^k` as an exact rational.
pub(crate) fn qpow(q: &Rational, k: usize) -> Rational {
    q.powi(k as i64)
}
