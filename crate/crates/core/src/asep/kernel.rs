use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::markov::{markov_sector, SparseMatrix};
use super::{Multiplicity, SectorBasis};
use crate::error::{Error, Result};
use crate::scalar::intpoly::IntPoly;
use crate::{PolyT, Rational, RationalFunctionT};

/// The stationary vector of a sector, canonicalized (see [`canonicalize`]).
///
/// The null vector is shift invariant, so elimination runs on the quotient
/// by cyclic orbits: one unknown and one equation per orbit.
pub fn stationary_kernel(m: &Multiplicity) -> Result<(SectorBasis, Vec<PolyT>)> {
    m.require_basic()?;
    let (basis, h) = markov_sector(m);
    let orbit = orbit_labels(&basis);
    let k = orbit.iter().max().map_or(0, |&o| o + 1);
    let mut reps = vec![usize::MAX; k];
    for (i, &o) in orbit.iter().enumerate() {
        reps[o] = reps[o].min(i);
    }
    let mut reduced = SparseMatrix {
        dim: k,
        entries: BTreeMap::new(),
    };
    for (&(r, c), a) in &h.entries {
        if reps[orbit[r]] != r {
            continue;
        }
        let e = reduced
            .entries
            .entry((orbit[r], orbit[c]))
            .or_insert_with(PolyT::zero);
        *e = &*e + a;
    }
    reduced.entries.retain(|_, a| !a.is_zero());
    let y = null_vector(&reduced)?;
    Ok((basis, canonicalize_polys(orbit.iter().map(|&o| y[o].clone()).collect())?))
}

/// Same result as [`stationary_kernel`] but eliminating on the whole sector.
pub fn stationary_kernel_full(m: &Multiplicity) -> Result<(SectorBasis, Vec<PolyT>)> {
    m.require_basic()?;
    let (basis, h) = markov_sector(m);
    let v = null_vector(&h)?;
    Ok((basis, canonicalize_polys(v)?))
}

/// Orbit number of each basis element under cyclic shift, numbered in
/// order of first appearance.
pub fn orbit_labels(basis: &SectorBasis) -> Vec<usize> {
    let shift = basis.shift_permutation();
    let mut label = vec![usize::MAX; basis.len()];
    let mut next = 0;
    for i in 0..basis.len() {
        if label[i] != usize::MAX {
            continue;
        }
        let mut j = i;
        while label[j] == usize::MAX {
            label[j] = next;
            j = shift[j];
        }
        next += 1;
    }
    label
}

/// Null vector of `h` by fraction-free (Bareiss) elimination over `Z[t]`.
///
/// Pivots are chosen by lowest degree. With the last free unknown set to
/// the final pivot, every unknown is a minor of `h`, so back substitution
/// only needs exact division and everything stays in `Z[t]`.
pub fn null_vector(h: &SparseMatrix) -> Result<Vec<PolyT>> {
    let k = h.dim;
    let mut a = vec![vec![IntPoly::default(); k]; k];
    for (&(r, c), v) in &h.entries {
        a[r][c] = IntPoly::from_poly(v)?;
    }
    let mut cols: Vec<usize> = (0..k).collect();
    let mut prev = IntPoly::constant(1);
    let mut rank = 0;
    for s in 0..k {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(s) {
            for (j, e) in row.iter().enumerate().skip(s) {
                if !e.is_zero() && best.map_or(true, |(bd, _, _)| e.degree() < bd) {
                    best = Some((e.degree(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(s, pi);
        for row in a.iter_mut() {
            row.swap(s, pj);
        }
        cols.swap(s, pj);
        let piv = a[s][s].clone();
        let (top, rest) = a.split_at_mut(s + 1);
        let prow = &top[s];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[s]);
            for j in s + 1..k {
                let mut num = piv.mul(&row[j]);
                if !f.is_zero() && !prow[j].is_zero() {
                    num = num.sub(&f.mul(&prow[j]));
                }
                row[j] = num.exact_div(&prev);
            }
        }
        prev = piv;
        rank = s + 1;
    }
    if rank + 1 != k {
        return Err(Error::KernelDimension(k - rank));
    }
    let mut x = vec![IntPoly::default(); k];
    x[k - 1] = prev;
    for i in (0..k - 1).rev() {
        let mut s = IntPoly::default();
        for j in i + 1..k {
            if !a[i][j].is_zero() && !x[j].is_zero() {
                s = s.sub(&a[i][j].mul(&x[j]));
            }
        }
        x[i] = s.exact_div(&a[i][i]);
    }
    let mut out = vec![PolyT::zero(); k];
    for (pos, &c) in cols.iter().enumerate() {
        out[c] = x[pos].to_poly();
    }
    Ok(out)
}

/// Scale a nonzero vector of rational functions to integer polynomials
/// without common polynomial factor, with collective integer content 1,
/// and with a positive leading coefficient in the first entry that is
/// nonzero (for a sector vector that is the lexicographically smallest
/// configuration).
pub fn canonicalize(v: &[RationalFunctionT]) -> Result<Vec<PolyT>> {
    let mut l = PolyT::one();
    for f in v {
        let g = l.gcd(f.den());
        l = (&l * f.den()).div_rem(&g).0;
    }
    canonicalize_polys(v.iter().map(|f| (f.num() * &l).div_rem(f.den()).0).collect())
}

/// [`canonicalize`] for a vector that is already polynomial.
pub fn canonicalize_polys(mut polys: Vec<PolyT>) -> Result<Vec<PolyT>> {
    let first = polys
        .iter()
        .position(|f| !f.is_zero())
        .ok_or_else(|| Error::InvalidInput("cannot canonicalize the zero vector".into()))?;
    let distinct: HashSet<&PolyT> = polys.iter().collect();
    let g = distinct.into_iter().fold(PolyT::zero(), |acc, p| acc.gcd(p));
    polys = polys.iter().map(|p| p.div_rem(&g).0).collect();

    let mut den_lcm = BigInt::one();
    for p in &polys {
        for c in p.coeffs() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let mut content = BigInt::zero();
    for p in &polys {
        for c in p.coeffs() {
            content = content.gcd(&(c * Rational::from_integer(den_lcm.clone())).to_integer());
        }
    }
    let mut factor = Rational::new(den_lcm, content);
    if polys[first].leading().unwrap().is_negative() {
        factor = -factor;
    }
    Ok(polys.iter().map(|p| p.scale(&factor)).collect())
}
