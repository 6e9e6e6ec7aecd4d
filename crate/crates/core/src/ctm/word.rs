use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oscillator::{FockTruncation, Gen, OscWord};
use crate::scalar::Field;

/// A product of oscillator words on distinct modes, numbered from 1.
/// Modes carrying the identity are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeWord(BTreeMap<usize, OscWord>);

impl ModeWord {
    pub fn identity() -> Self {
        ModeWord::default()
    }

    pub fn single(mode: usize, w: OscWord) -> Self {
        assert!(mode >= 1, "modes are numbered from 1");
        let mut m = BTreeMap::new();
        if !w.is_identity() {
            m.insert(mode, w);
        }
        ModeWord(m)
    }

    pub fn gen(mode: usize, g: Gen) -> Self {
        Self::single(mode, OscWord::new(vec![g]))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn modes(&self) -> impl Iterator<Item = (usize, &OscWord)> {
        self.0.iter().map(|(&m, w)| (m, w))
    }

    pub fn word(&self, mode: usize) -> OscWord {
        self.0.get(&mode).cloned().unwrap_or_default()
    }

    pub fn max_mode(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// `self * other`, letter strings concatenated mode by mode.
    pub fn mul(&self, other: &ModeWord) -> ModeWord {
        let mut out = self.0.clone();
        for (&m, w) in &other.0 {
            out.entry(m)
                .and_modify(|x| *x = x.concat(w))
                .or_insert_with(|| w.clone());
        }
        ModeWord(out)
    }

    /// Relabel mode `r` as `r + offset`.
    pub fn shifted(&self, offset: usize) -> ModeWord {
        ModeWord(self.0.iter().map(|(&m, w)| (m + offset, w.clone())).collect())
    }

    /// `"w_1|w_2|…|w_modes"` with `1` for the identity.
    pub fn render(&self, modes: usize) -> String {
        (1..=modes.max(self.max_mode()))
            .map(|m| self.word(m).to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for ModeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, w)| format!("{w}_{m}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ModeWord {
    type Err = Error;
    /// Inverse of [`ModeWord::render`].
    fn from_str(s: &str) -> Result<Self> {
        let mut out = ModeWord::identity();
        for (i, part) in s.split('|').enumerate() {
            out = out.mul(&ModeWord::single(i + 1, part.parse()?));
        }
        Ok(out)
    }
}

/// A linear combination of mode words with coefficients in `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpSum<F> {
    pub terms: Vec<(F, ModeWord)>,
}

impl<F: Field> OpSum<F> {
    pub fn zero() -> Self {
        OpSum { terms: Vec::new() }
    }

    pub fn word(c: F, w: ModeWord) -> Self {
        OpSum { terms: vec![(c, w)] }
    }

    pub fn scalar(c: F) -> Self {
        Self::word(c, ModeWord::identity())
    }

    pub fn add(&mut self, other: &OpSum<F>) {
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn scale(&self, c: &F) -> OpSum<F> {
        OpSum {
            terms: self.terms.iter().map(|(a, w)| (a.clone() * c.clone(), w.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &OpSum<F>) -> OpSum<F> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                terms.push((a.clone() * b.clone(), u.mul(v)));
            }
        }
        OpSum { terms }
    }

    pub fn max_mode(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.max_mode()).max().unwrap_or(0)
    }

    /// Largest number of `a⁺` letters of any word on `mode`.
    pub fn raising_bound(&self, mode: usize) -> usize {
        self.terms.iter().map(|(_, w)| w.word(mode).count(Gen::APlus)).max().unwrap_or(0)
    }
}

/// Sparse matrix on `F^{⊗modes}` truncated to `dim` levels per mode.
/// Basis states are occupation vectors `(d_1, …, d_modes)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeMatrix<F> {
    pub modes: usize,
    pub dim: usize,
    pub entries: BTreeMap<(Vec<usize>, Vec<usize>), F>,
}

impl<F: Field> ModeMatrix<F> {
    pub fn get(&self, row: &[usize], col: &[usize]) -> F {
        self.entries
            .get(&(row.to_vec(), col.to_vec()))
            .cloned()
            .unwrap_or_else(F::zero)
    }
}

/// An operator sum with the action of every mode word tabulated per level.
pub(crate) struct Compiled<F> {
    tables: Vec<Vec<Option<(usize, F)>>>,
    terms: Vec<(F, Vec<(usize, usize)>)>,
}

impl<F: Field> Compiled<F> {
    pub(crate) fn new(op: &OpSum<F>, t: &F, fock: FockTruncation) -> Self {
        let mut index: HashMap<&OscWord, usize> = HashMap::new();
        let mut tables = Vec::new();
        let terms = op
            .terms
            .iter()
            .map(|(c, w)| {
                let steps = w
                    .modes()
                    .map(|(m, word)| {
                        let k = *index.entry(word).or_insert_with(|| {
                            tables.push((0..fock.dim()).map(|d| fock.apply_word(word, t, d)).collect());
                            tables.len() - 1
                        });
                        (m - 1, k)
                    })
                    .collect();
                (c.clone(), steps)
            })
            .collect();
        Compiled { tables, terms }
    }

    /// `op |col⟩` as a sparse vector.
    pub(crate) fn apply(&self, col: &[usize]) -> BTreeMap<Vec<usize>, F> {
        let mut out: BTreeMap<Vec<usize>, F> = BTreeMap::new();
        let mut state = col.to_vec();
        'terms: for (c, steps) in &self.terms {
            state.copy_from_slice(col);
            let mut coef = c.clone();
            for &(m, k) in steps {
                match &self.tables[k][state[m]] {
                    Some((d, f)) => {
                        state[m] = *d;
                        coef = coef * f.clone();
                    }
                    None => continue 'terms,
                }
            }
            match out.get_mut(&state) {
                Some(e) => *e = e.clone() + coef,
                None => {
                    out.insert(state.clone(), coef);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// All occupation vectors with `d_r < bound[r]`.
pub(crate) fn window(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..b).map(move |d| {
                    let mut v = v.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

/// Truncated matrix of an operator sum. Columns whose levels stay at most
/// `dim - 1 - P` (with `P` the raising bound of the mode) agree with the
/// untruncated operator.
pub fn op_matrix<F: Field>(op: &OpSum<F>, modes: usize, t: &F, fock: FockTruncation) -> ModeMatrix<F> {
    let comp = Compiled::new(op, t, fock);
    let mut entries = BTreeMap::new();
    for col in window(&vec![fock.dim(); modes]) {
        for (row, v) in comp.apply(&col) {
            entries.insert((row, col.clone()), v);
        }
    }
    ModeMatrix {
        modes,
        dim: fock.dim(),
        entries,
    }
}

/// A column of the safe window where two operator sums differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub column: Vec<usize>,
    pub row: Vec<usize>,
}

/// Compare `lhs` and `rhs` on every column of the safe window.
pub fn equal_on_window<F: Field>(
    lhs: &OpSum<F>,
    rhs: &OpSum<F>,
    modes: usize,
    t: &F,
    fock: FockTruncation,
) -> std::result::Result<usize, Witness> {
    let bounds: Vec<usize> = (1..=modes)
        .map(|m| {
            let p = lhs.raising_bound(m).max(rhs.raising_bound(m));
            fock.dim().saturating_sub(p)
        })
        .collect();
    let (cl, cr) = (Compiled::new(lhs, t, fock), Compiled::new(rhs, t, fock));
    let cols = window(&bounds);
    for col in &cols {
        let a = cl.apply(col);
        let b = cr.apply(col);
        if a != b {
            let row = a
                .keys()
                .chain(b.keys())
                .find(|k| a.get(*k) != b.get(*k))
                .cloned()
                .unwrap_or_default();
            return Err(Witness {
                column: col.clone(),
                row,
            });
        }
    }
    Ok(cols.len())
}
