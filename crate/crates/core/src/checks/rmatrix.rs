use std::collections::BTreeMap;

use super::{spectral_points, CheckReport};
use crate::error::{Error, Result};
use crate::scalar::Field;
use num_traits::One;
use crate::{Rational, RationalFunctionT};

/// `R(z)^{a,b}_{i,j}`.
pub fn r_element<F: Field>(z: &F, t: &F, a: usize, b: usize, i: usize, j: usize) -> Result<F> {
    let den = F::one() - t.clone() * z.clone();
    if den.is_zero() {
        return Err(Error::Pole(format!("t z = 1 at z = {z:?}")));
    }
    if i == j {
        return Ok(if a == i && b == j { F::one() } else { F::zero() });
    }
    if a == i && b == j {
        let tf = if i < j { t.clone() } else { F::one() };
        Ok((F::one() - z.clone()) * tf / den)
    } else if a == j && b == i {
        let zf = if i > j { z.clone() } else { F::one() };
        Ok((F::one() - t.clone()) * zf / den)
    } else {
        Ok(F::zero())
    }
}

/// Nonzero `R(z)^{a,b}_{i,j}` for fixed `(i, j)`, keyed by `(a, b)`.
pub fn r_matrix_column<F: Field>(z: &F, t: &F, i: usize, j: usize) -> Result<Vec<((usize, usize), F)>> {
    let mut out = Vec::new();
    for (a, b) in [(i, j), (j, i)] {
        if out.iter().any(|(k, _)| *k == (a, b)) {
            continue;
        }
        let v = r_element(z, t, a, b, i, j)?;
        if !v.is_zero() {
            out.push(((a, b), v));
        }
    }
    Ok(out)
}

type Vector<F> = BTreeMap<Vec<usize>, F>;

fn add_to<F: Field>(v: &mut Vector<F>, k: Vec<usize>, c: F) {
    let e = v.entry(k).or_insert_with(F::zero);
    *e = e.clone() + c;
}

/// `Ř(z) = P R(z)` on tensor factors `pos, pos + 1`.
fn apply_rcheck<F: Field>(v: &Vector<F>, z: &F, t: &F, pos: usize) -> Result<Vector<F>> {
    let mut out = BTreeMap::new();
    for (k, c) in v {
        for ((a, b), r) in r_matrix_column(z, t, k[pos], k[pos + 1])? {
            let mut key = k.clone();
            key[pos] = b;
            key[pos + 1] = a;
            add_to(&mut out, key, c.clone() * r);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `Ř_23(y) Ř_12(xy) Ř_23(x) = Ř_12(x) Ř_23(xy) Ř_12(y)` on all of
/// `(C^{n+1})^{⊗3}`, symbolic in `t`.
pub fn check_ybe(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    // both sides carry the denominator (1-tx)(1-ty)(1-txy); numerators have
    // degree 2 in x
    let mut rep = CheckReport::new("ybe", n, Some(2));
    let xs = spectral_points(seed, trials, &[]);
    let ys = spectral_points(seed ^ 0x5eed, trials, &[]);
    let t = RationalFunctionT::t();
    let emb = |r: &Rational| RationalFunctionT::constant(r.clone());
    for (x0, y0) in xs.iter().zip(&ys) {
        rep.points.push(format!("x={x0} y={y0}"));
        let (x, y, xy) = (emb(x0), emb(y0), emb(&(x0 * y0)));
        for i1 in 0..=n {
            for i2 in 0..=n {
                for i3 in 0..=n {
                    let v: Vector<RationalFunctionT> =
                        [(vec![i1, i2, i3], RationalFunctionT::one())].into_iter().collect();
                    // rightmost factor acts first
                    let lhs = apply_rcheck(&apply_rcheck(&apply_rcheck(&v, &x, &t, 1)?, &xy, &t, 0)?, &y, &t, 1)?;
                    let rhs = apply_rcheck(&apply_rcheck(&apply_rcheck(&v, &y, &t, 0)?, &xy, &t, 1)?, &x, &t, 0)?;
                    rep.comparisons += 1;
                    if lhs != rhs {
                        rep.fail(format!("column ({i1},{i2},{i3}) at x={x0}, y={y0}"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `R(z)^{a,b}_{i,j} = z^{δ_{j0}-δ_{b0}} t^{-θ(i≠0,j=0)+θ(a=0,b≠0)} R(z)^{a-1,b-1}_{i-1,j-1}`
/// with indices mod `n+1`, symbolic in `t`.
pub fn check_quasi_periodicity(n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("quasi-periodicity", n, Some(2));
    let t = RationalFunctionT::t();
    let m = n + 1;
    let dec = |x: usize| (x + n) % m;
    for z0 in spectral_points(seed, trials, &[]) {
        rep.points.push(format!("z={z0}"));
        let z = RationalFunctionT::constant(z0.clone());
        for a in 0..m {
            for b in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        let lhs = r_element(&z, &t, a, b, i, j)?;
                        let zp = (j == 0) as i64 - (b == 0) as i64;
                        let tp = -((i != 0 && j == 0) as i64) + (a == 0 && b != 0) as i64;
                        let rhs = z.powi(zp) * t.powi(tp) * r_element(&z, &t, dec(a), dec(b), dec(i), dec(j))?;
                        rep.comparisons += 1;
                        if lhs != rhs {
                            rep.fail(format!("R^{{{a},{b}}}_{{{i},{j}}} at z={z0}"));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn stochastic_columns() {
        let t = RationalFunctionT::t();
        let z = RationalFunctionT::constant(r(3, 7));
        for n in 1..=3 {
            for i in 0..=n {
                for j in 0..=n {
                    let mut s = RationalFunctionT::zero();
                    for a in 0..=n {
                        for b in 0..=n {
                            s = s + r_element(&z, &t, a, b, i, j).unwrap();
                        }
                    }
                    assert!(s.is_one());
                }
            }
        }
    }

    #[test]
    fn at_one_it_is_a_permutation() {
        let t = r(2, 9);
        let one = Rational::one();
        for i in 0..3 {
            for j in 0..3 {
                let col = r_matrix_column(&one, &t, i, j).unwrap();
                assert_eq!(col, vec![((j, i), Rational::one())]);
            }
        }
        assert!(r_element(&one, &one, 0, 1, 0, 1).is_err());
    }

    #[test]
    fn quasi_periodic_specializations() {
        let t = r(1, 3);
        let z = r(5, 2);
        let n = 3;
        for al in 0..n {
            let rr = |a, b, i, j| r_element(&z, &t, a, b, i, j).unwrap();
            assert_eq!(rr(al + 1, 0, al + 1, 0), rr(al, n, al, n) / &t);
            assert_eq!(rr(0, al + 1, 0, al + 1), rr(n, al, n, al) * &t);
            assert_eq!(rr(al + 1, 0, 0, al + 1), rr(al, n, n, al) / &z);
            assert_eq!(rr(0, al + 1, al + 1, 0), rr(n, al, al, n) * &z);
        }
    }

    #[test]
    fn yang_baxter_small() {
        for n in 1..=2 {
            let rep = check_ybe(n, 2, 11).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let rep = check_quasi_periodicity(2, 2, 3).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
