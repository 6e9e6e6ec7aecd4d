use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rmatrix::r_matrix_column;
use super::{spectral_points, CheckReport};
use crate::ctm::word::window;
use crate::ctm::{build_all_x, build_t, equal_on_window, mode_count, op_matrix, ModeWord, OpSum, TMatrix, XOperator};
use crate::error::Result;
use crate::oscillator::FockTruncation;
use crate::scalar::Field;
use crate::{Rational, RationalFunctionT};

type RF = RationalFunctionT;

fn t_entry<F: Field>(t: &TMatrix, i: usize, j: usize, z: &F) -> OpSum<F> {
    match t.get(i, j) {
        Some(x) => OpSum::word(z.powi(x.zdeg as i64), x.word.clone()),
        None => OpSum::zero(),
    }
}

/// `X̂_α = (1 - t) dX_α/dz` at `z = 1`, symbolic in `t`.
pub fn hat_operators(n: usize) -> Vec<OpSum<RF>> {
    let t = RF::t();
    build_all_x(n).iter().map(|x| x.hat(&t)).collect()
}

/// Rank-reducing RTT = TTR:
/// `Σ_{a',b'<n} R(y/x)^{a',b'}_{i,j} T(y)_{b'b} T(x)_{a'a} = Σ_{i',j'≤n} T(x)_{ii'} T(y)_{jj'} R(y/x)^{a,b}_{i',j'}`.
pub fn check_rtt(n: usize, trials: usize, seed: u64, fock: FockTruncation) -> Result<CheckReport> {
    // cleared by x(x - ty); T has degree 1 in z: degree 3 in x
    let mut rep = CheckReport::new("rtt", n, Some(3));
    let tm = build_t(n);
    let modes = n - 1;
    let xs = spectral_points(seed, trials, &[]);
    let ys = spectral_points(seed ^ 0x5eed, trials, &[]);
    let ts = spectral_points(seed ^ 0x7a11, trials, &[]);
    for ((x, y), t) in xs.iter().zip(&ys).zip(&ts) {
        rep.points.push(format!("x={x} y={y} t={t}"));
        let ratio = y / x;
        let mut by_upper: BTreeMap<(usize, usize), Vec<((usize, usize), Rational)>> = BTreeMap::new();
        for i in 0..=n {
            for j in 0..=n {
                for ((a, b), r) in r_matrix_column(&ratio, t, i, j)? {
                    by_upper.entry((a, b)).or_default().push(((i, j), r));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let col = r_matrix_column(&ratio, t, i, j)?;
                for a in 0..=n {
                    for b in 0..=n {
                        let mut lhs = OpSum::zero();
                        for ((ap, bp), r) in &col {
                            if *ap < n && *bp < n {
                                lhs.add(&t_entry(&tm, *bp, b, y).mul(&t_entry(&tm, *ap, a, x)).scale(r));
                            }
                        }
                        let mut rhs = OpSum::zero();
                        for ((ip, jp), r) in by_upper.get(&(a, b)).into_iter().flatten() {
                            rhs.add(&t_entry(&tm, i, *ip, x).mul(&t_entry(&tm, j, *jp, y)).scale(r));
                        }
                        match equal_on_window(&lhs, &rhs, modes, t, fock) {
                            Ok(cols) => rep.comparisons += cols,
                            Err(w) => rep.fail(format!(
                                "a={a} b={b} i={i} j={j} at x={x}, y={y}, t={t}: column {:?}, row {:?}",
                                w.column, w.row
                            )),
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// ZF algebra: `X_α(y) X_β(x) = Σ_{γ,δ} R(y/x)^{β,α}_{γ,δ} X_γ(x) X_δ(y)`.
pub fn check_zf(n: usize, trials: usize, seed: u64, fock: FockTruncation) -> Result<CheckReport> {
    // cleared by (x - ty); X has degree at most n in z
    let mut rep = CheckReport::new("zf", n, Some(n + 1));
    let ops = build_all_x(n);
    let modes = mode_count(n);
    let xs = spectral_points(seed, trials, &[]);
    let ys = spectral_points(seed ^ 0x5eed, trials, &[]);
    let ts = spectral_points(seed ^ 0x7a11, trials, &[]);
    for ((x, y), t) in xs.iter().zip(&ys).zip(&ts) {
        rep.points.push(format!("x={x} y={y} t={t}"));
        let ratio = y / x;
        let at_x: Vec<OpSum<Rational>> = ops.iter().map(|o| o.at(x)).collect();
        let at_y: Vec<OpSum<Rational>> = ops.iter().map(|o| o.at(y)).collect();
        let mut by_upper: BTreeMap<(usize, usize), Vec<((usize, usize), Rational)>> = BTreeMap::new();
        for g in 0..=n {
            for d in 0..=n {
                for (k, r) in r_matrix_column(&ratio, t, g, d)? {
                    by_upper.entry(k).or_default().push(((g, d), r));
                }
            }
        }
        for alpha in 0..=n {
            for beta in 0..=n {
                let lhs = at_y[alpha].mul(&at_x[beta]);
                let mut rhs = OpSum::zero();
                for ((g, d), r) in by_upper.get(&(beta, alpha)).into_iter().flatten() {
                    rhs.add(&at_x[*g].mul(&at_y[*d]).scale(r));
                }
                match equal_on_window(&lhs, &rhs, modes, t, fock) {
                    Ok(cols) => rep.comparisons += cols,
                    Err(w) => rep.fail(format!(
                        "alpha={alpha} beta={beta} at x={x}, y={y}, t={t}: column {:?}, row {:?}",
                        w.column, w.row
                    )),
                }
            }
        }
    }
    Ok(rep)
}

/// Hat relation with `X = X(1)`:
/// `t^{θ(α>β)} X_β X_α - t^{θ(α<β)} X_α X_β = X_α X̂_β - X̂_α X_β`, symbolic in `t`.
pub fn check_hat(n: usize, fock: FockTruncation) -> Result<CheckReport> {
    let mut rep = CheckReport::new("hat", n, None);
    rep.points.push("t=symbolic".into());
    let t = RF::t();
    let one = RF::one();
    let ops: Vec<OpSum<RF>> = build_all_x(n).iter().map(|o| o.at(&one)).collect();
    let hats = hat_operators(n);
    let modes = mode_count(n);
    for alpha in 0..=n {
        for beta in 0..=n {
            let mut lhs = ops[beta].mul(&ops[alpha]).scale(&t.powi((alpha > beta) as i64));
            lhs.add(&ops[alpha].mul(&ops[beta]).scale(&-t.powi((alpha < beta) as i64)));
            let mut rhs = ops[alpha].mul(&hats[beta]);
            rhs.add(&hats[alpha].mul(&ops[beta]).scale(&-RF::one()));
            match equal_on_window(&lhs, &rhs, modes, &t, fock) {
                Ok(cols) => rep.comparisons += cols,
                Err(w) => rep.fail(format!(
                    "alpha={alpha} beta={beta}: column {:?}, row {:?}",
                    w.column, w.row
                )),
            }
        }
    }
    Ok(rep)
}

/// `X_α(z) = Σ_i X̃_i(z) T(z)_{iα}` as truncated matrices at random
/// `(z0, t0)`. The right side is assembled as a tensor product of the
/// rank `n - 1` operators on their own modes with `T` on modes `1..n`.
pub fn check_recursion(n: usize, trials: usize, seed: u64, fock: FockTruncation) -> Result<CheckReport> {
    assert!(n >= 2, "the recursion check needs n >= 2");
    let mut rep = CheckReport::new("recursion", n, Some(n));
    let ops = build_all_x(n);
    let lower = build_all_x(n - 1);
    let tm = build_t(n);
    let modes = mode_count(n);
    let split = n - 1;
    let zs = spectral_points(seed, trials, &[]);
    let ts = spectral_points(seed ^ 0x5eed, trials, &[]);
    for (z0, t0) in zs.iter().zip(&ts) {
        rep.points.push(format!("z={z0} t={t0}"));
        for (alpha, x) in ops.iter().enumerate() {
            match recursion_columns(x, &lower, &tm, alpha, split, modes, z0, t0, fock) {
                Ok(cols) => rep.comparisons += cols,
                Err(msg) => rep.fail(format!("alpha={alpha} at z={z0}, t={t0}: {msg}")),
            }
        }
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn recursion_columns(
    x: &XOperator,
    lower: &[XOperator],
    tm: &TMatrix,
    alpha: usize,
    split: usize,
    modes: usize,
    z0: &Rational,
    t0: &Rational,
    fock: FockTruncation,
) -> std::result::Result<usize, String> {
    let lhs = x.at(z0);
    let sub_modes = modes - split;
    // lhs regrouped as Σ_g g ⊗ B_g with g a word on modes 1..split; the
    // column action is then a product of small precomputed actions
    let mut grouped: BTreeMap<ModeWord, OpSum<Rational>> = BTreeMap::new();
    for (c, w) in &lhs.terms {
        let (mut head, mut tail) = (ModeWord::identity(), ModeWord::identity());
        for (m, word) in w.modes() {
            if m <= split {
                head = head.mul(&ModeWord::single(m, word.clone()));
            } else {
                tail = tail.mul(&ModeWord::single(m - split, word.clone()));
            }
        }
        grouped.entry(head).or_insert_with(OpSum::zero).add(&OpSum::word(c.clone(), tail));
    }
    let lhs_factors: Vec<(Columns, Columns)> = grouped
        .into_iter()
        .map(|(g, b)| {
            let gm = op_matrix(&OpSum::word(Rational::one(), g), split, t0, fock);
            (by_column(gm.entries), by_column(op_matrix(&b, sub_modes, t0, fock).entries))
        })
        .collect();
    // rhs from separately built T and rank n - 1 operators
    let mut rhs_factors = Vec::new();
    for (i, xi) in lower.iter().enumerate() {
        let Some(ti) = tm.get(i, alpha) else { continue };
        let tsum = OpSum::word(z0.powi(ti.zdeg as i64), ti.word.clone());
        let tmat = op_matrix(&tsum, split, t0, fock);
        let xmat = op_matrix(&xi.at(z0), sub_modes, t0, fock);
        rhs_factors.push((by_column(tmat.entries), by_column(xmat.entries)));
    }
    let dim = fock.dim();
    let (lhs_int, rhs_int) = integral(&lhs_factors, &rhs_factors, dim);
    let bounds: Vec<usize> = (1..=modes).map(|m| dim.saturating_sub(lhs.raising_bound(m))).collect();
    let sub_stride = dim.pow(sub_modes as u32);
    let mut count = 0;
    for col in window(&bounds) {
        let (u, v) = col.split_at(split);
        let (u, v) = (encode(u, dim), encode(v, dim));
        if kron_apply(&lhs_int, u, v, sub_stride) != kron_apply(&rhs_int, u, v, sub_stride) {
            return Err(format!("column {col:?}"));
        }
        count += 1;
    }
    Ok(count)
}

/// Integer column actions `(weight, A, B)`: `weight · A ⊗ B` is the
/// rational factor pair times a common denominator shared by both sides.
type IntFactor = (BigInt, IntColumns, IntColumns);
type IntColumns = HashMap<usize, Vec<(usize, BigInt)>>;

fn integral(lhs: &[(Columns, Columns)], rhs: &[(Columns, Columns)], dim: usize) -> (Vec<IntFactor>, Vec<IntFactor>) {
    let scale = |c: &Columns| -> (BigInt, IntColumns) {
        let den = c
            .values()
            .flatten()
            .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let cols = c
            .iter()
            .map(|(col, entries)| {
                let ints = entries
                    .iter()
                    .map(|(row, x)| (encode(row, dim), x.numer() * (&den / x.denom())))
                    .collect();
                (encode(col, dim), ints)
            })
            .collect();
        (den, cols)
    };
    let scaled = |fs: &[(Columns, Columns)]| -> Vec<IntFactor> {
        fs.iter()
            .map(|(a, b)| {
                let ((da, ia), (db, ib)) = (scale(a), scale(b));
                (da * db, ia, ib)
            })
            .collect()
    };
    let (mut l, mut r) = (scaled(lhs), scaled(rhs));
    let common = l.iter().chain(&r).fold(BigInt::one(), |acc, f| acc.lcm(&f.0));
    for f in l.iter_mut().chain(r.iter_mut()) {
        f.0 = &common / &f.0;
    }
    (l, r)
}

fn encode(levels: &[usize], dim: usize) -> usize {
    levels.iter().fold(0, |acc, &d| acc * dim + d)
}

/// `Σ w (A ⊗ B) |u, v⟩` over encoded columns, as a sorted sparse vector.
fn kron_apply(factors: &[IntFactor], u: usize, v: usize, sub_stride: usize) -> Vec<(usize, BigInt)> {
    let mut out: Vec<(usize, BigInt)> = Vec::new();
    for (w, a, b) in factors {
        let (Some(au), Some(bv)) = (a.get(&u), b.get(&v)) else { continue };
        for (ru, cu) in au {
            let wc = w * cu;
            for (rv, cv) in bv {
                out.push((ru * sub_stride + rv, &wc * cv));
            }
        }
    }
    out.sort_by_key(|e| e.0);
    let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(out.len());
    for (k, c) in out {
        match merged.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => merged.push((k, c)),
        }
    }
    merged.retain(|e| !e.1.is_zero());
    merged
}

type Columns = BTreeMap<Vec<usize>, Vec<(Vec<usize>, Rational)>>;

fn by_column(entries: BTreeMap<(Vec<usize>, Vec<usize>), Rational>) -> Columns {
    let mut out: Columns = BTreeMap::new();
    for ((row, col), v) in entries {
        out.entry(col).or_default().push((row, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_identities() {
        let fock = FockTruncation::new(8);
        for rep in [
            check_rtt(2, 2, 1, fock).unwrap(),
            check_zf(2, 2, 2, fock).unwrap(),
            check_hat(2, fock).unwrap(),
            check_recursion(2, 2, 3, fock).unwrap(),
        ] {
            assert!(rep.passed(), "{rep}");
            assert!(rep.comparisons > 0);
        }
    }

    #[test]
    fn transposed_structure_function_is_detected() {
        let fock = FockTruncation::new(6);
        let t = RF::t();
        let (x, y) = (RF::constant(Rational::from_i64(3)), RF::constant(Rational::new(2.into(), 7.into())));
        let ratio = &y / &x;
        let ops = build_all_x(2);
        let (alpha, beta) = (0, 2);
        let lhs = ops[alpha].at(&y).mul(&ops[beta].at(&x));
        let mut rhs = OpSum::zero();
        for ((g, d), r) in r_matrix_column(&ratio, &t, alpha, beta).unwrap() {
            // R^{γ,δ}_{α,β} in place of R^{β,α}_{γ,δ}
            rhs.add(&ops[g].at(&x).mul(&ops[d].at(&y)).scale(&r));
        }
        assert!(equal_on_window(&lhs, &rhs, 1, &t, fock).is_err());
    }

    #[test]
    fn recursion_with_wrong_column_is_detected() {
        let fock = FockTruncation::new(6);
        let (z0, t0) = (Rational::new(3.into(), 5.into()), Rational::new((-2).into(), 7.into()));
        let ops = build_all_x(3);
        let lower = build_all_x(2);
        let tm = build_t(3);
        let modes = mode_count(3);
        assert!(recursion_columns(&ops[1], &lower, &tm, 1, 2, modes, &z0, &t0, fock).is_ok());
        assert!(recursion_columns(&ops[1], &lower, &tm, 2, 2, modes, &z0, &t0, fock).is_err());
    }

    #[test]
    fn rank_one_reduces_to_scalars() {
        let fock = FockTruncation::new(4);
        assert!(check_zf(1, 3, 9, fock).unwrap().passed());
        assert!(check_hat(1, fock).unwrap().passed());
        assert!(check_rtt(1, 2, 4, fock).unwrap().passed());
    }

    #[test]
    fn rank_two_hat_operators() {
        let t = RF::t();
        let one = RF::one();
        let h = hat_operators(2);
        let f = &one - &t;
        assert_eq!(h[0].terms, vec![(f.clone(), "+".parse().unwrap())]);
        assert_eq!(h[1].terms, vec![(f.clone(), "k".parse().unwrap())]);
        assert_eq!(
            h[2].terms,
            vec![(f.clone(), "-".parse().unwrap()), (&f * &RF::from_i64(2), "1".parse().unwrap())]
        );
    }
}
