use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Config, Multiplicity, SectorBasis};
use crate::scalar::Field;
use crate::{PolyT, RationalFunctionT};

/// Rate `t^{θ(α<β)}` of the swap `|α,β⟩ -> |β,α⟩`.
fn rate(alpha: u8, beta: u8) -> PolyT {
    if alpha < beta {
        PolyT::t()
    } else {
        PolyT::one()
    }
}

/// Dense `H^loc` on `|α,β⟩`, index `α(n+1)+β`, rows are outputs.
pub fn local_markov(n: usize) -> Vec<Vec<PolyT>> {
    let d = n + 1;
    let mut h = vec![vec![PolyT::zero(); d * d]; d * d];
    for a in 0..d {
        for b in 0..d {
            if a == b {
                continue;
            }
            let w = rate(a as u8, b as u8);
            let col = a * d + b;
            let row = b * d + a;
            h[row][col] = &h[row][col] + &w;
            h[col][col] = &h[col][col] - &w;
        }
    }
    h
}

/// Sparse square matrix with polynomial entries; absent means zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), PolyT>,
}

impl SparseMatrix {
    pub fn get(&self, r: usize, c: usize) -> PolyT {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(PolyT::zero)
    }

    fn add(&mut self, r: usize, c: usize, v: &PolyT) {
        let e = self.entries.entry((r, c)).or_insert_with(PolyT::zero);
        *e = &*e + v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn column_sums(&self) -> Vec<PolyT> {
        let mut s = vec![PolyT::zero(); self.dim];
        for (&(_, c), v) in &self.entries {
            s[c] = &s[c] + v;
        }
        s
    }

    pub fn apply(&self, v: &[RationalFunctionT]) -> Vec<RationalFunctionT> {
        let mut out = vec![RationalFunctionT::zero(); self.dim];
        for (&(r, c), a) in &self.entries {
            if v[c].is_zero() {
                continue;
            }
            out[r] = &out[r] + &(&RationalFunctionT::from_poly(a.clone()) * &v[c]);
        }
        out
    }

    /// Substitute a numeric `t`.
    pub fn eval<F: Field>(&self, t0: &F, embed: impl Fn(&crate::Rational) -> F) -> Vec<Vec<F>> {
        let mut m = vec![vec![F::zero(); self.dim]; self.dim];
        for (&(r, c), a) in &self.entries {
            m[r][c] = a.eval_in(t0, &embed);
        }
        m
    }
}

/// `H = Σ_i H^loc_{i,i+1}` on a sector, with the bond `(L, 1)` included.
pub fn markov_sector(m: &Multiplicity) -> (SectorBasis, SparseMatrix) {
    let basis = SectorBasis::new(m);
    let len = m.len();
    let mut h = SparseMatrix {
        dim: basis.len(),
        entries: BTreeMap::new(),
    };
    for (col, c) in basis.configs().iter().enumerate() {
        for i in 0..len {
            let j = (i + 1) % len;
            let (a, b) = (c.0[i], c.0[j]);
            if a == b {
                continue;
            }
            let w = rate(a, b);
            let mut s = c.0.clone();
            s.swap(i, j);
            let row = basis.index_of(&Config(s)).expect("swap stays in sector");
            h.add(row, col, &w);
            h.add(col, col, &-&w);
        }
    }
    (basis, h)
}
