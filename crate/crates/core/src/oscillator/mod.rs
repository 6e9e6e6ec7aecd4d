//! The t-oscillator algebra `⟨a⁺, a⁻, k⟩` with
//! `k a^± = t^{±1} a^± k`, `a⁻a⁺ = 1 - tk`, `a⁺a⁻ = 1 - k`,
//! its Fock representation, normal ordering and traces.
//!
//! Normal forms use the basis `(a⁺)^p k^e` and `k^e (a⁻)^m`. The relation
//! `a⁺a⁻ = 1 - k` makes this basis unique, at the price of Laurent
//! coefficients in `t`: `a⁺ k a⁻ = t⁻¹(k - k²)`.

mod fock;
mod vertex;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{PolyT, Rational, RationalFunctionT};

pub use fock::{tail_bound, trace_truncated, FockTruncation};
pub use vertex::{s_element, s_weight, s_word, SWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    APlus,
    AMinus,
    K,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::APlus => '+',
            Gen::AMinus => '-',
            Gen::K => 'k',
        }
    }
}

/// A product of generators of a single oscillator mode, leftmost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OscWord(pub Vec<Gen>);

impl OscWord {
    pub fn new(letters: Vec<Gen>) -> Self {
        OscWord(letters)
    }

    pub fn identity() -> Self {
        OscWord(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    /// Ladder imbalance `#a⁺ - #a⁻`.
    pub fn ladder(&self) -> i64 {
        self.count(Gen::APlus) as i64 - self.count(Gen::AMinus) as i64
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    pub fn concat(&self, other: &OscWord) -> OscWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OscWord(v)
    }
}

impl fmt::Display for OscWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{}", g.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for OscWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(OscWord::identity());
        }
        s.chars()
            .map(|c| match c {
                '+' => Ok(Gen::APlus),
                '-' => Ok(Gen::AMinus),
                'k' => Ok(Gen::K),
                _ => Err(Error::Parse(format!("bad oscillator letter {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OscWord)
    }
}

/// Laurent polynomial in `t` with integer coefficients, keyed by exponent.
type Laurent = BTreeMap<i64, BigInt>;

/// Polynomial in `x = t^h` with Laurent coefficients, keyed by `x` degree.
type Symbol = BTreeMap<usize, Laurent>;

fn add_term(s: &mut Symbol, xdeg: usize, tdeg: i64, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let row = s.entry(xdeg).or_default();
    let e = row.entry(tdeg).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        row.remove(&tdeg);
        if row.is_empty() {
            s.remove(&xdeg);
        }
    }
}

/// `w|d⟩ = P(t^d) |d + Δ⟩`: returns `(P, Δ)`.
fn fock_symbol(w: &OscWord) -> (Symbol, i64) {
    let mut p: Symbol = BTreeMap::new();
    add_term(&mut p, 0, 0, BigInt::one());
    let mut s = 0i64;
    for &g in w.0.iter().rev() {
        match g {
            Gen::APlus => s += 1,
            Gen::K => {
                p = p.into_iter()
                    .map(|(x, row)| (x + 1, row.into_iter().map(|(e, c)| (e + s, c)).collect()))
                    .collect();
            }
            Gen::AMinus => {
                let mut next = p.clone();
                for (&x, row) in &p {
                    for (&e, c) in row {
                        add_term(&mut next, x + 1, e + s, -c.clone());
                    }
                }
                p = next;
                s -= 1;
            }
        }
    }
    (p, s)
}

/// Exact division of `p` by `Π_{i<m} (1 - t^{-i} x)`.
fn divide_lowering(mut p: Symbol, m: usize) -> Symbol {
    for i in 0..m as i64 {
        // divide by (1 - t^{-i} x): leading x coefficient -t^{-i}
        let mut q: Symbol = BTreeMap::new();
        while let Some((&top, _)) = p.iter().next_back() {
            if top == 0 {
                break;
            }
            let row = p[&top].clone();
            // quotient term: row * (-t^i) x^{top-1}
            for (&e, c) in &row {
                add_term(&mut q, top - 1, e + i, -c.clone());
                // subtract quotient term times divisor
                add_term(&mut p, top - 1, e + i, c.clone());
                add_term(&mut p, top, e, -c.clone());
            }
        }
        assert!(p.is_empty(), "lowering word does not vanish on low levels");
        p = q;
    }
    p
}

fn laurent_to_ratfunc(l: &Laurent) -> RationalFunctionT {
    let Some((&low, _)) = l.iter().next() else {
        return RationalFunctionT::zero();
    };
    let shift = low.min(0);
    let mut coeffs = vec![Rational::zero(); (*l.keys().next_back().unwrap() - shift + 1) as usize];
    for (&e, c) in l {
        coeffs[(e - shift) as usize] = Rational::from_integer(c.clone());
    }
    let num = PolyT::new(coeffs);
    let den = PolyT::monomial(Rational::one(), (-shift) as usize);
    RationalFunctionT::normalize(num, den).expect("monomial denominator")
}

/// `Σ c_{p,e,m} (a⁺)^p k^e (a⁻)^m` with `min(p, m) = 0`; all terms share
/// the ladder imbalance `p - m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(usize, usize, usize), RationalFunctionT>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize, usize), RationalFunctionT> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: usize, e: usize, m: usize) -> RationalFunctionT {
        self.terms.get(&(p, e, m)).cloned().unwrap_or_else(RationalFunctionT::zero)
    }

    /// Ladder imbalance of the terms; `None` for zero.
    pub fn ladder(&self) -> Option<i64> {
        self.terms.keys().next().map(|&(p, _, m)| p as i64 - m as i64)
    }

    pub fn add_scaled(&mut self, other: &NormalForm, c: &RationalFunctionT) {
        for (k, v) in &other.terms {
            let e = self.terms.entry(*k).or_insert_with(RationalFunctionT::zero);
            *e = &*e + &(v * c);
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    /// Smallest `k` exponent over all terms.
    pub fn min_k_power(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, e, _)| e).min()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(p, e, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            let mut mono = String::new();
            for (g, n) in [("a+", p), ("k", e), ("a-", m)] {
                match n {
                    0 => {}
                    1 => mono.push_str(&format!(" {g}")),
                    _ => mono.push_str(&format!(" {g}^{n}")),
                }
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// Normal form of a word, read off its action on the Fock space.
pub fn normal_order(w: &OscWord) -> NormalForm {
    let (p, delta) = fock_symbol(w);
    let mut terms = BTreeMap::new();
    if delta >= 0 {
        for (e, l) in &p {
            terms.insert((delta as usize, *e, 0), laurent_to_ratfunc(l));
        }
    } else {
        let m = (-delta) as usize;
        // k^e (a⁻)^m |d⟩ = t^{e(d-m)} Π_{i<m} (1 - t^{d-i}) |d-m⟩
        for (e, l) in divide_lowering(p, m) {
            let l: Laurent = l.into_iter().map(|(k, c)| (k + (e * m) as i64, c)).collect();
            terms.insert((0, e, m), laurent_to_ratfunc(&l));
        }
    }
    NormalForm { terms }
}

/// `tr(q^h w)` over the Fock space, as an exact rational function of `t`.
pub fn trace_qh(w: &OscWord, q: &Rational) -> Result<RationalFunctionT> {
    let (p, delta) = fock_symbol(w);
    if delta != 0 {
        return Err(Error::UnbalancedWord(delta));
    }
    let mut acc = RationalFunctionT::zero();
    for (&e, l) in &p {
        // Σ_d q^d t^{ed} = 1 / (1 - q t^e)
        if e == 0 && q.is_one() {
            return Err(Error::DivergentTrace(format!("word {w} has a k-free term at q = 1")));
        }
        let den = &PolyT::one() - &PolyT::monomial(q.clone(), e);
        let c = laurent_to_ratfunc(l);
        acc = &acc + &(&c * &RationalFunctionT::normalize(PolyT::one(), den)?);
    }
    Ok(acc)
}

/// Coefficients `c_e(t)` with `w|d⟩ = Σ_e c_e t^{ed} |d+Δ⟩`, and `Δ`.
pub fn diagonal_symbol(w: &OscWord) -> (BTreeMap<usize, RationalFunctionT>, i64) {
    let (p, delta) = fock_symbol(w);
    (p.iter().map(|(e, l)| (*e, laurent_to_ratfunc(l))).collect(), delta)
}
