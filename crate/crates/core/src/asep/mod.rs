//! Ring configurations, sectors, the Markov matrix and its stationary vector.

mod gillespie;
mod kernel;
mod markov;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::{PolyT, RationalFunctionT};

pub use gillespie::{gillespie, Empirical};
pub use kernel::{canonicalize, canonicalize_polys, null_vector, orbit_labels, stationary_kernel, stationary_kernel_full};
pub use markov::{local_markov, markov_sector, SparseMatrix};

/// A ring configuration `(σ_1, …, σ_L)` with species labels `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config(pub Vec<u8>);

impl Config {
    pub fn new(sites: Vec<u8>) -> Self {
        Config(sites)
    }

    pub fn sites(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Particle content with species `0..=n`.
    pub fn multiplicity(&self, n: usize) -> Multiplicity {
        let mut counts = vec![0; n + 1];
        for &s in &self.0 {
            counts[s as usize] += 1;
        }
        Multiplicity::new(counts)
    }
}

/// `(σ_1, …, σ_L) -> (σ_L, σ_1, …, σ_{L-1})`.
pub fn cyclic_shift(c: &Config) -> Config {
    let mut v = c.0.clone();
    v.rotate_right(1);
    Config(v)
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Config {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a configuration: {s:?}"));
        let sites = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Config(sites))
    }
}

/// Particle content `(m_0, …, m_n)` of a sector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity(Vec<usize>);

impl Multiplicity {
    pub fn new(counts: Vec<usize>) -> Self {
        assert!(counts.len() >= 2, "need at least species 0 and 1");
        Multiplicity(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Number of particle species `n`.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Ring length `L`.
    pub fn len(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `l_i = m_i + … + m_n`; `l_0 = L`.
    pub fn l(&self, i: usize) -> usize {
        self.0[i..].iter().sum()
    }

    pub fn is_basic(&self) -> bool {
        self.0.iter().all(|&m| m >= 1)
    }

    pub fn require_basic(&self) -> Result<()> {
        if self.is_basic() {
            Ok(())
        } else {
            Err(Error::NonBasicSector(self.0.clone()))
        }
    }
}

impl FromStr for Multiplicity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("not a multiplicity: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if counts.len() < 2 {
            return Err(Error::InvalidInput("multiplicity needs at least two entries".into()));
        }
        Ok(Multiplicity(counts))
    }
}

/// All configurations of a sector in lexicographic order.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    mult: Multiplicity,
    configs: Vec<Config>,
    index: HashMap<Config, usize>,
}

impl SectorBasis {
    pub fn new(mult: &Multiplicity) -> Self {
        let mut configs = Vec::new();
        let mut counts = mult.counts().to_vec();
        let mut cur = Vec::with_capacity(mult.len());
        fill(&mut counts, &mut cur, mult.len(), &mut configs);
        let index = configs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        SectorBasis {
            mult: mult.clone(),
            configs,
            index,
        }
    }

    pub fn multiplicity(&self) -> &Multiplicity {
        &self.mult
    }

    pub fn configs(&self) -> &[Config] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn index_of(&self, c: &Config) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Position of the cyclic shift of each basis element.
    pub fn shift_permutation(&self) -> Vec<usize> {
        self.configs
            .iter()
            .map(|c| self.index[&cyclic_shift(c)])
            .collect()
    }
}

/// A value for every configuration of a sector.
#[derive(Clone, Debug)]
pub struct SectorVector {
    pub basis: SectorBasis,
    pub values: Vec<RationalFunctionT>,
}

impl SectorVector {
    pub fn zeros(basis: SectorBasis) -> Self {
        let values = vec![RationalFunctionT::zero(); basis.len()];
        SectorVector { basis, values }
    }

    pub fn get(&self, c: &Config) -> Option<&RationalFunctionT> {
        self.basis.index_of(c).map(|k| &self.values[k])
    }

    /// Canonical integer-polynomial form, see [`canonicalize`].
    pub fn canonical(&self) -> Result<Vec<PolyT>> {
        canonicalize(&self.values)
    }
}

fn fill(counts: &mut [usize], cur: &mut Vec<u8>, len: usize, out: &mut Vec<Config>) {
    if cur.len() == len {
        out.push(Config(cur.clone()));
        return;
    }
    for s in 0..counts.len() {
        if counts[s] > 0 {
            counts[s] -= 1;
            cur.push(s as u8);
            fill(counts, cur, len, out);
            cur.pop();
            counts[s] += 1;
        }
    }
}
