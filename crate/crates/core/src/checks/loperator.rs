use std::collections::BTreeMap;

use super::rmatrix::r_matrix_column;
use super::{spectral_points, CheckReport};
use crate::ctm::{build_t, ModeWord};
use crate::error::Result;
use crate::oscillator::{normal_order, Gen};
use crate::scalar::Field;
use num_traits::{One, Zero};
use crate::{Rational, RationalFunctionT};

/// `D_l`: compositions of `l` into `n + 1` parts, lexicographic.
pub fn compositions(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(parts: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=rest {
            cur.push(k);
            go(parts - 1, rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n + 1, l, &mut Vec::new(), &mut out);
    out
}

/// `L(z)^{β,b}_{α,a}`.
pub fn l_element<F: Field>(z: &F, t: &F, beta: usize, b: &[usize], alpha: usize, a: &[usize]) -> F {
    let n = a.len() - 1;
    let conserved = (0..=n).all(|k| a[k] + (k == alpha) as usize == b[k] + (k == beta) as usize);
    if !conserved {
        return F::zero();
    }
    let above: usize = a[beta + 1..].iter().sum();
    let zf = if alpha == beta { z.clone() } else { F::one() };
    let mut v = t.powi(above as i64) * (F::one() - t.powi(a[beta] as i64) * zf);
    if alpha > beta {
        v = v * z.clone();
    }
    v
}

type Vector<F> = BTreeMap<Vec<usize>, F>;

/// `L(z)^β_α` applied to a vector on `𝓕_l`.
fn apply_l<F: Field>(v: &Vector<F>, z: &F, t: &F, beta: usize, alpha: usize) -> Vector<F> {
    let mut out = BTreeMap::new();
    for (a, c) in v {
        let mut b = a.clone();
        b[alpha] += 1;
        if b[beta] == 0 {
            continue;
        }
        b[beta] -= 1;
        let w = l_element(z, t, beta, &b, alpha, a);
        if w.is_zero() {
            continue;
        }
        let e = out.entry(b).or_insert_with(F::zero);
        *e = e.clone() + c.clone() * w;
    }
    out.retain(|_, c: &mut F| !c.is_zero());
    out
}

fn add_scaled<F: Field>(acc: &mut Vector<F>, v: Vector<F>, c: &F) {
    for (k, x) in v {
        let e = acc.entry(k).or_insert_with(F::zero);
        *e = e.clone() + x * c.clone();
    }
}

/// `Σ R(x/y)^{a',b'}_{i,j} L(y)^b_{b'} L(x)^a_{a'} = Σ L(x)^{i'}_i L(y)^{j'}_j R(x/y)^{a,b}_{i',j'}`
/// on every basis vector of `𝓕_l`, symbolic in `t`.
pub fn check_rll(n: usize, l: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    // cleared by y(y - tx): total degree 3 in (x, y), degree 2 in x
    let mut rep = CheckReport::new("rll", n, Some(2));
    rep.name = format!("rll l={l}");
    let t = RationalFunctionT::t();
    let basis = compositions(n, l);
    let xs = spectral_points(seed, trials, &[]);
    let ys = spectral_points(seed ^ 0x5eed, trials, &[]);
    for (x0, y0) in xs.iter().zip(&ys) {
        rep.points.push(format!("x={x0} y={y0}"));
        let x = RationalFunctionT::constant(x0.clone());
        let y = RationalFunctionT::constant(y0.clone());
        let ratio = RationalFunctionT::constant(x0 / y0);
        // R^{a,b}_{i',j'} for fixed (a, b): (i', j') ∈ {(a,b), (b,a)}
        let mut by_upper: BTreeMap<(usize, usize), Vec<((usize, usize), RationalFunctionT)>> = BTreeMap::new();
        for i in 0..=n {
            for j in 0..=n {
                for ((a, b), r) in r_matrix_column(&ratio, &t, i, j)? {
                    by_upper.entry((a, b)).or_default().push(((i, j), r));
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                let col = r_matrix_column(&ratio, &t, i, j)?;
                for a in 0..=n {
                    for b in 0..=n {
                        for m in &basis {
                            let v: Vector<RationalFunctionT> =
                                [(m.clone(), RationalFunctionT::one())].into_iter().collect();
                            let mut lhs = BTreeMap::new();
                            for ((ap, bp), r) in &col {
                                let w = apply_l(&apply_l(&v, &x, &t, a, *ap), &y, &t, b, *bp);
                                add_scaled(&mut lhs, w, r);
                            }
                            let mut rhs = BTreeMap::new();
                            for ((ip, jp), r) in by_upper.get(&(a, b)).into_iter().flatten() {
                                let w = apply_l(&apply_l(&v, &y, &t, *jp, j), &x, &t, *ip, i);
                                add_scaled(&mut rhs, w, r);
                            }
                            lhs.retain(|_, c| !c.is_zero());
                            rhs.retain(|_, c| !c.is_zero());
                            rep.comparisons += 1;
                            if lhs != rhs {
                                rep.fail(format!("a={a} b={b} i={i} j={j} on {m:?} at x={x0}, y={y0}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `𝓛^β_α` for `0 ≤ α, β ≤ n` over modes `1..=n`; `None` is zero.
pub type CalL = Vec<Vec<Option<ModeWord>>>;

pub fn build_cal_l(n: usize) -> CalL {
    let ks = |from: usize| (from..=n).fold(ModeWord::identity(), |acc, r| acc.mul(&ModeWord::gen(r, Gen::K)));
    (0..=n)
        .map(|alpha| {
            (0..=n)
                .map(|beta| {
                    if alpha > beta {
                        None
                    } else if alpha == beta {
                        Some(ks(beta + 1))
                    } else {
                        let raise = if alpha == 0 {
                            ModeWord::identity()
                        } else {
                            ModeWord::gen(alpha, Gen::APlus)
                        };
                        Some(raise.mul(&ModeWord::gen(beta, Gen::AMinus)).mul(&ks(beta + 1)))
                    }
                })
                .collect()
        })
        .collect()
}

/// `𝓛^β_α = T(z)_{α,β+1} (a⁻_n)^{δ_{βn}} (z⁻¹ k_n)^{θ(β≠n)}` with
/// `T_{α,n+1} = T_{α0}`, for `α < n`; compared exactly in `z` and per
/// mode in normal form.
pub fn check_ltt(n: usize) -> CheckReport {
    let mut rep = CheckReport::new("lt-link", n, None);
    let cal = build_cal_l(n);
    let t = build_t(n);
    for alpha in 0..n {
        for beta in 0..=n {
            rep.comparisons += 1;
            let col = if beta == n { 0 } else { beta + 1 };
            let rhs = t.get(alpha, col).map(|x| {
                let (tail, zshift) = if beta == n {
                    (ModeWord::gen(n, Gen::AMinus), 0)
                } else {
                    (ModeWord::gen(n, Gen::K), 1)
                };
                (x.zdeg as i64 - zshift, x.word.mul(&tail))
            });
            let ok = match (&cal[alpha][beta], rhs) {
                (None, None) => true,
                (Some(lw), Some((zdeg, rw))) => {
                    zdeg == 0 && (1..=n).all(|m| normal_order(&lw.word(m)) == normal_order(&rw.word(m)))
                }
                _ => false,
            };
            if !ok {
                rep.fail(format!("entry alpha={alpha} beta={beta}"));
            }
        }
    }
    rep
}

/// Action of `L(0)^β_α` on `|m⟩ ∈ 𝓕_l`, as `(image, coefficient)`.
pub fn l_zero_action(t: &Rational, beta: usize, alpha: usize, m: &[usize]) -> Option<(Vec<usize>, Rational)> {
    let v: Vector<Rational> = [(m.to_vec(), Rational::from_i64(1))].into_iter().collect();
    apply_l(&v, &Rational::from_i64(0), t, beta, alpha).into_iter().next()
}
