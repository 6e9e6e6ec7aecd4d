use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Config, Multiplicity, SectorBasis};
use crate::error::{Error, Result};

const BATCHES: usize = 32;

/// Time-averaged occupation of each configuration with batch-means
/// standard errors.
#[derive(Clone, Debug)]
pub struct Empirical {
    pub mass: Vec<f64>,
    pub stderr: Vec<f64>,
    pub events: u64,
}

/// Continuous-time simulation of the ring with swap rate
/// `t^{θ(σ<σ')}` for every adjacent unequal pair `(σ, σ')`.
pub fn gillespie(
    m: &Multiplicity,
    t_value: f64,
    horizon: f64,
    burn_in: f64,
    seed: u64,
) -> Result<(SectorBasis, Empirical)> {
    if !(t_value >= 0.0) || !(horizon > 0.0) || !(burn_in >= 0.0) {
        return Err(Error::InvalidInput("need t >= 0, horizon > 0, burn_in >= 0".into()));
    }
    let basis = SectorBasis::new(m);
    let len = m.len();
    let moves: Vec<Vec<(usize, f64)>> = basis
        .configs()
        .iter()
        .map(|c| {
            (0..len)
                .filter_map(|i| {
                    let j = (i + 1) % len;
                    let (a, b) = (c.0[i], c.0[j]);
                    if a == b {
                        return None;
                    }
                    let mut s = c.0.clone();
                    s.swap(i, j);
                    let rate = if a < b { t_value } else { 1.0 };
                    Some((basis.index_of(&Config(s)).unwrap(), rate))
                })
                .filter(|&(_, r)| r > 0.0)
                .collect()
        })
        .collect();
    let totals: Vec<f64> = moves.iter().map(|mv| mv.iter().map(|&(_, r)| r).sum()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = basis.len();
    let mut state = 0usize;
    let mut now = 0.0;
    let end = burn_in + horizon;
    let width = horizon / BATCHES as f64;
    let mut batch = vec![vec![0.0; dim]; BATCHES];
    let mut events = 0u64;

    while now < end {
        let total = totals[state];
        let dt = if total > 0.0 {
            -(1.0 - rng.gen::<f64>()).ln() / total
        } else {
            f64::INFINITY
        };
        let next = (now + dt).min(end);
        deposit(&mut batch, state, now.max(burn_in), next, burn_in, width);
        now = next;
        if now >= end {
            break;
        }
        let mut u = rng.gen::<f64>() * total;
        let mut pick = moves[state].last().unwrap().0;
        for &(s, r) in &moves[state] {
            if u < r {
                pick = s;
                break;
            }
            u -= r;
        }
        state = pick;
        if now >= burn_in {
            events += 1;
        }
    }

    let means: Vec<Vec<f64>> = batch.iter().map(|b| b.iter().map(|x| x / width).collect()).collect();
    let mut mass = vec![0.0; dim];
    let mut stderr = vec![0.0; dim];
    for k in 0..dim {
        let mu = means.iter().map(|b| b[k]).sum::<f64>() / BATCHES as f64;
        let var = means.iter().map(|b| (b[k] - mu).powi(2)).sum::<f64>() / (BATCHES as f64 - 1.0);
        mass[k] = mu;
        stderr[k] = (var / BATCHES as f64).sqrt();
    }
    Ok((basis, Empirical { mass, stderr, events }))
}

/// Credit the interval `[a, b)` spent in `state` to the time batches.
fn deposit(batch: &mut [Vec<f64>], state: usize, mut a: f64, b: f64, origin: f64, width: f64) {
    while a < b {
        let k = (((a - origin) / width) as usize).min(batch.len() - 1);
        let edge = if k + 1 == batch.len() { b } else { origin + (k + 1) as f64 * width };
        let stop = edge.min(b);
        batch[k][state] += stop - a;
        a = stop;
    }
}
