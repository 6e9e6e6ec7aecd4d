//! Layer operators `X_α(z)` built by the rank recursion
//! `X_α(z) = Σ_i X̃_i(z) T(z)_{iα}`, and matrix-product stationary weights.

mod trace;
pub(crate) mod word;

use std::fmt;

use crate::error::{Error, Result};
use crate::oscillator::{FockTruncation, Gen};
use crate::scalar::Field;

pub use trace::{mp_stationary, mp_trace};
pub use word::{equal_on_window, op_matrix, ModeMatrix, ModeWord, OpSum, Witness};

/// Number of oscillator modes used at rank `n`.
pub fn mode_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `z^zdeg` times a mode word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XTerm {
    pub zdeg: usize,
    pub word: ModeWord,
}

impl XTerm {
    pub fn new(zdeg: usize, word: ModeWord) -> Self {
        XTerm { zdeg, word }
    }

    pub fn mul(&self, other: &XTerm) -> XTerm {
        XTerm::new(self.zdeg + other.zdeg, self.word.mul(&other.word))
    }
}

/// A finite sum of terms, stored expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XOperator {
    pub n: usize,
    pub terms: Vec<XTerm>,
}

impl XOperator {
    pub fn modes(&self) -> usize {
        mode_count(self.n)
    }

    /// Evaluate at `z = z0`.
    pub fn at<F: Field>(&self, z0: &F) -> OpSum<F> {
        OpSum {
            terms: self
                .terms
                .iter()
                .map(|x| (z0.powi(x.zdeg as i64), x.word.clone()))
                .collect(),
        }
    }

    /// `(1 - t) dX/dz` at `z = 1`.
    pub fn hat<F: Field>(&self, t: &F) -> OpSum<F> {
        let f = F::one() - t.clone();
        OpSum {
            terms: self
                .terms
                .iter()
                .filter(|x| x.zdeg > 0)
                .map(|x| (F::from_i64(x.zdeg as i64) * f.clone(), x.word.clone()))
                .collect(),
        }
    }

    /// Terms as `(zdeg, "w_1|…|w_modes")`.
    pub fn rendered(&self) -> Vec<(usize, String)> {
        self.terms.iter().map(|x| (x.zdeg, x.word.render(self.modes()))).collect()
    }
}

impl fmt::Display for XOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|x| match (x.zdeg, x.word.is_identity()) {
                (0, _) => x.word.to_string(),
                (1, true) => "z".to_string(),
                (d, true) => format!("z^{d}"),
                (1, false) => format!("z {}", x.word),
                (d, false) => format!("z^{d} {}", x.word),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T(z)_{ij}` for `0 ≤ i < n`, `0 ≤ j ≤ n`; `None` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    pub n: usize,
    pub entries: Vec<Vec<Option<XTerm>>>,
}

impl TMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<&XTerm> {
        self.entries[i][j].as_ref()
    }
}

pub fn build_t(n: usize) -> TMatrix {
    assert!(n >= 1, "T is defined for n >= 1");
    let ks = |from: usize| {
        (from..n).fold(ModeWord::identity(), |acc, r| acc.mul(&ModeWord::gen(r, Gen::K)))
    };
    let raise = |i: usize| {
        if i == 0 {
            ModeWord::identity()
        } else {
            ModeWord::gen(i, Gen::APlus)
        }
    };
    let entries = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| match j {
                    0 => Some(XTerm::new(0, raise(i))),
                    _ if j <= i => None,
                    _ if j == i + 1 => Some(XTerm::new(1, ks(j))),
                    _ => Some(XTerm::new(
                        1,
                        raise(i).mul(&ModeWord::gen(j - 1, Gen::AMinus)).mul(&ks(j)),
                    )),
                })
                .collect()
        })
        .collect();
    TMatrix { n, entries }
}

/// `X_0(z), …, X_n(z)`.
pub fn build_all_x(n: usize) -> Vec<XOperator> {
    match n {
        0 => vec![XOperator {
            n,
            terms: vec![XTerm::new(0, ModeWord::identity())],
        }],
        1 => vec![
            XOperator {
                n,
                terms: vec![XTerm::new(0, ModeWord::identity())],
            },
            XOperator {
                n,
                terms: vec![XTerm::new(1, ModeWord::identity())],
            },
        ],
        _ => {
            let lower = build_all_x(n - 1);
            let t = build_t(n);
            (0..=n)
                .map(|alpha| {
                    let mut terms = Vec::new();
                    for (i, xi) in lower.iter().enumerate() {
                        let Some(tia) = t.get(i, alpha) else { continue };
                        for x in &xi.terms {
                            let shifted = XTerm::new(x.zdeg, x.word.shifted(n - 1));
                            terms.push(shifted.mul(tia));
                        }
                    }
                    XOperator { n, terms }
                })
                .collect()
        }
    }
}

pub fn build_x(n: usize, alpha: usize) -> Result<XOperator> {
    if alpha > n {
        return Err(Error::InvalidInput(format!("species {alpha} out of range for n = {n}")));
    }
    Ok(build_all_x(n).swap_remove(alpha))
}

/// Truncated matrix of `X(z0)` with `t` substituted.
pub fn x_matrix<F: Field>(x: &XOperator, z0: &F, t: &F, trunc: FockTruncation) -> ModeMatrix<F> {
    op_matrix(&x.at(z0), x.modes(), t, trunc)
}
