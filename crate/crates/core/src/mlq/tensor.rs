use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{grouped_weights, occupancies, qpow, BallSystem, Row};
use crate::asep::{Config, Multiplicity, SectorBasis, SectorVector};
use crate::error::{Error, Result};
use crate::{Rational, RationalFunctionT};

/// A vector in `V_{s_1} ⊗ … ⊗ V_{s_k}`, slots left to right, where `V_s`
/// is spanned by rows with `s` balls. The slot occupancies travel with the
/// vector because M̌ changes them.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    len: usize,
    occupancy: Vec<usize>,
    terms: BTreeMap<Vec<Row>, RationalFunctionT>,
}

impl TensorVector {
    pub fn zero(len: usize, occupancy: Vec<usize>) -> Self {
        TensorVector { len, occupancy, terms: BTreeMap::new() }
    }

    /// The basis vector `v_{r_1} ⊗ … ⊗ v_{r_k}`.
    pub fn basis(rows: Vec<Row>) -> Result<Self> {
        let len = rows.first().map_or(0, Row::len);
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::InvalidInput("tensor slots of different length".into()));
        }
        let occupancy = rows.iter().map(Row::count).collect();
        let mut terms = BTreeMap::new();
        terms.insert(rows, RationalFunctionT::one());
        Ok(TensorVector { len, occupancy, terms })
    }

    /// `Σ_b v_{b_n} ⊗ … ⊗ v_{b_1}` over all ball systems of a sector.
    pub fn all_ball_systems(m: &Multiplicity) -> Result<Self> {
        let occ = occupancies(m)?;
        let len = m.len();
        let mut acc: Vec<Vec<Row>> = vec![Vec::new()];
        for &l in &occ {
            let rows = Row::all(len, l);
            acc = acc
                .into_iter()
                .flat_map(|pre| {
                    rows.iter().map(move |r| {
                        let mut v = pre.clone();
                        v.push(*r);
                        v
                    })
                })
                .collect();
        }
        let terms = acc.into_iter().map(|rows| (rows, RationalFunctionT::one())).collect();
        Ok(TensorVector { len, occupancy: occ, terms })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn occupancy(&self) -> &[usize] {
        &self.occupancy
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Row>, RationalFunctionT> {
        &self.terms
    }

    pub fn coefficient(&self, rows: &[Row]) -> RationalFunctionT {
        self.terms.get(rows).cloned().unwrap_or_else(RationalFunctionT::zero)
    }

    pub fn add_term(&mut self, rows: Vec<Row>, c: RationalFunctionT) -> Result<()> {
        let occ: Vec<usize> = rows.iter().map(Row::count).collect();
        if occ != self.occupancy || rows.iter().any(|r| r.len() != self.len) {
            return Err(Error::OccupancyMismatch(format!(
                "term with occupancies {occ:?} added to slots {:?}",
                self.occupancy
            )));
        }
        add_into(&mut self.terms, rows, c);
        Ok(())
    }
}

fn add_into(terms: &mut BTreeMap<Vec<Row>, RationalFunctionT>, rows: Vec<Row>, c: RationalFunctionT) {
    match terms.entry(rows) {
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = &*e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// M̌(q) on a two-slot vector: `v_i ⊗ v_j ↦ Σ_a M^{a,j-a}_{i,j} v_{j-a} ⊗ v_a`.
pub fn mcheck_apply(q: &Rational, v: &TensorVector) -> Result<TensorVector> {
    if v.occupancy.len() != 2 {
        return Err(Error::OccupancyMismatch(format!(
            "M̌ needs two slots, got {}",
            v.occupancy.len()
        )));
    }
    mcheck_apply_at(q, v, 0)
}

/// M̌(q) acting on slots `pos` and `pos + 1`.
pub fn mcheck_apply_at(q: &Rational, v: &TensorVector, pos: usize) -> Result<TensorVector> {
    let (l, m) = match (v.occupancy.get(pos), v.occupancy.get(pos + 1)) {
        (Some(&l), Some(&m)) if l < m => (l, m),
        _ => {
            return Err(Error::OccupancyMismatch(format!(
                "M̌ on slots {pos},{} of {:?}",
                pos + 1,
                v.occupancy
            )))
        }
    };
    let mut occupancy = v.occupancy.clone();
    occupancy[pos] = m - l;
    occupancy[pos + 1] = l;
    let mut out = TensorVector::zero(v.len, occupancy);
    let mut steps = HashMap::new();
    let mut images: HashMap<(Row, Row), Vec<(Row, RationalFunctionT)>> = HashMap::new();
    for (rows, c) in &v.terms {
        let (i, j) = (rows[pos], rows[pos + 1]);
        if !images.contains_key(&(i, j)) {
            let g = grouped_weights(&i, &j, q, &mut steps)?;
            images.insert((i, j), g);
        }
        for (a, w) in &images[&(i, j)] {
            let mut next = rows.clone();
            next[pos] = Row::from_mask(j.mask() & !a.mask(), v.len)?;
            next[pos + 1] = *a;
            add_into(&mut out.terms, next, c * w);
        }
    }
    Ok(out)
}

/// 𝕄(q) = A_{n-1} ⋯ A_1 applied to `v_{b_n} ⊗ … ⊗ v_{b_1}`.
pub fn big_m_apply(q: &Rational, b: &BallSystem) -> Result<TensorVector> {
    big_m_apply_vector(q, TensorVector::basis(b.rows().to_vec())?)
}

/// 𝕄(q) on an arbitrary vector with `n` slots (component `k` at slot
/// `n - k`). `A_j` applies M̌(q^{n-k+1}) to components `(k, k-1)` for
/// `k = n, n-1, …, j+1`.
pub fn big_m_apply_vector(q: &Rational, mut v: TensorVector) -> Result<TensorVector> {
    let n = v.occupancy.len();
    for j in 1..n {
        for k in (j + 1..=n).rev() {
            v = mcheck_apply_at(&qpow(q, n - k + 1), &v, n - k)?;
        }
    }
    Ok(v)
}

/// Π: `v_{c_1} ⊗ … ⊗ v_{c_n} ↦ |c_1 + 2c_2 + … + n c_n⟩`.
pub fn project_pi(v: &TensorVector) -> Result<SectorVector> {
    let used: usize = v.occupancy.iter().sum();
    if used > v.len {
        return Err(Error::OccupancyMismatch(format!(
            "{used} balls on {} sites",
            v.len
        )));
    }
    let mut counts = vec![v.len - used];
    counts.extend(&v.occupancy);
    if counts.len() < 2 {
        return Err(Error::OccupancyMismatch("no color slots".into()));
    }
    let basis = SectorBasis::new(&Multiplicity::new(counts));
    let mut out = SectorVector::zeros(basis);
    for (rows, c) in &v.terms {
        let mut sites = vec![0u8; v.len];
        for (p, r) in rows.iter().enumerate() {
            for col in r.columns() {
                if sites[col] != 0 {
                    return Err(Error::OverlappingSupport(col));
                }
                sites[col] = p as u8 + 1;
            }
        }
        let k = out
            .basis
            .index_of(&Config(sites))
            .expect("occupancies fix the sector");
        out.values[k] = &out.values[k] + c;
    }
    Ok(out)
}

/// `Π(𝕄(q) Σ_b v_{b_n} ⊗ … ⊗ v_{b_1})`, the multiline-queue sum of a
/// basic sector. At `q = 1` it is proportional to the stationary state.
pub fn mlq_state(m: &Multiplicity, q: &Rational) -> Result<SectorVector> {
    let v = big_m_apply_vector(q, TensorVector::all_ball_systems(m)?)?;
    project_pi(&v)
}
