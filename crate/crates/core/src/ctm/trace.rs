use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{build_all_x, mode_count};
use crate::asep::{canonicalize, Config, Multiplicity, SectorBasis, SectorVector};
use crate::error::{Error, Result};
use crate::oscillator::{trace_qh, Gen, OscWord};
use crate::scalar::Field;
use crate::{Rational, RationalFunctionT};

struct SiteTerm {
    zdeg: usize,
    words: Vec<Vec<Gen>>,
    ladder: Vec<i64>,
}

/// `tr(X_{σ_1}(z0) ⋯ X_{σ_L}(z0))` over all modes, at `q = 1`.
pub fn mp_trace(sigma: &Config, z0: &Rational) -> Result<RationalFunctionT> {
    let n = sigma.sites().iter().copied().max().unwrap_or(0) as usize;
    sigma.multiplicity(n).require_basic()?;
    let modes = mode_count(n);
    let ops = build_all_x(n);
    let site_terms: Vec<Vec<SiteTerm>> = ops
        .iter()
        .map(|x| {
            x.terms
                .iter()
                .map(|term| {
                    let words: Vec<Vec<Gen>> =
                        (1..=modes).map(|m| term.word.word(m).letters().to_vec()).collect();
                    let ladder = words
                        .iter()
                        .map(|w| OscWord::new(w.clone()).ladder())
                        .collect();
                    SiteTerm {
                        zdeg: term.zdeg,
                        words,
                        ladder,
                    }
                })
                .collect()
        })
        .collect();

    // reachable ladder change from site k to the end, per mode
    let len = sigma.len();
    let mut lo = vec![vec![0i64; modes]; len + 1];
    let mut hi = vec![vec![0i64; modes]; len + 1];
    for k in (0..len).rev() {
        let terms = &site_terms[sigma.sites()[k] as usize];
        for m in 0..modes {
            let min = terms.iter().map(|s| s.ladder[m]).min().unwrap_or(0);
            let max = terms.iter().map(|s| s.ladder[m]).max().unwrap_or(0);
            lo[k][m] = lo[k + 1][m] + min;
            hi[k][m] = hi[k + 1][m] + max;
        }
    }

    let mut monomials: HashMap<Vec<Vec<Gen>>, Rational> = HashMap::new();
    let mut words = vec![Vec::new(); modes];
    let mut ladder = vec![0i64; modes];
    let ctx = Expand {
        sigma: sigma.sites(),
        site_terms: &site_terms,
        lo: &lo,
        hi: &hi,
        z0,
    };
    ctx.run(0, 0, &mut words, &mut ladder, &mut monomials);

    let mut cache: HashMap<Vec<Gen>, RationalFunctionT> = HashMap::new();
    let mut total = RationalFunctionT::zero();
    let one = Rational::one();
    for (key, c) in monomials {
        if c.is_zero() {
            continue;
        }
        let mut prod = RationalFunctionT::constant(c);
        for w in key {
            let tr = match cache.get(&w) {
                Some(v) => v.clone(),
                None => {
                    let v = trace_qh(&OscWord::new(w.clone()), &one).map_err(|e| match e {
                        Error::DivergentTrace(m) => {
                            Error::DivergentTrace(format!("non-basic sector or internal error: {m}"))
                        }
                        e => e,
                    })?;
                    cache.insert(w, v.clone());
                    v
                }
            };
            prod = &prod * &tr;
        }
        total = &total + &prod;
    }
    Ok(total)
}

struct Expand<'a> {
    sigma: &'a [u8],
    site_terms: &'a [Vec<SiteTerm>],
    lo: &'a [Vec<i64>],
    hi: &'a [Vec<i64>],
    z0: &'a Rational,
}

impl Expand<'_> {
    fn run(
        &self,
        k: usize,
        zdeg: usize,
        words: &mut Vec<Vec<Gen>>,
        ladder: &mut Vec<i64>,
        out: &mut HashMap<Vec<Vec<Gen>>, Rational>,
    ) {
        if k == self.sigma.len() {
            let e = out.entry(words.clone()).or_insert_with(Rational::zero);
            *e += self.z0.powi(zdeg as i64);
            return;
        }
        for term in &self.site_terms[self.sigma[k] as usize] {
            let feasible = (0..ladder.len()).all(|m| {
                let l = ladder[m] + term.ladder[m];
                l + self.lo[k + 1][m] <= 0 && l + self.hi[k + 1][m] >= 0
            });
            if !feasible {
                continue;
            }
            let marks: Vec<usize> = words.iter().map(|w| w.len()).collect();
            for (m, w) in term.words.iter().enumerate() {
                words[m].extend_from_slice(w);
                ladder[m] += term.ladder[m];
            }
            self.run(k + 1, zdeg + term.zdeg, words, ladder, out);
            for (m, &mark) in marks.iter().enumerate() {
                words[m].truncate(mark);
                ladder[m] -= term.ladder[m];
            }
        }
    }
}

/// Matrix-product weights of a basic sector at `z = 1`, canonicalized.
pub fn mp_stationary(m: &Multiplicity) -> Result<SectorVector> {
    m.require_basic()?;
    let basis = SectorBasis::new(m);
    let one = Rational::one();
    let raw = basis
        .configs()
        .iter()
        .map(|c| mp_trace(c, &one))
        .collect::<Result<Vec<_>>>()?;
    let values = canonicalize(&raw)?
        .into_iter()
        .map(RationalFunctionT::from_poly)
        .collect();
    Ok(SectorVector { basis, values })
}
