//! The identity ladder behind the matrix-product construction: the R
//! matrix and Yang-Baxter, RLL = LLR on `𝓕_l`, the oscillator link
//! `𝓛 = T k`, rank-reducing RTT = TTR, the ZF algebra, the hat relation,
//! stationarity, and the queue and vertex forms of the layer transfer
//! matrix.
//!
//! R-matrix identities keep `t` symbolic and put the spectral parameters at
//! random exact rationals. Operator identities are compared on the safe
//! window of truncated Fock spaces at random exact `(x, y, t)`. After
//! clearing the `1 - tz` denominators each identity is polynomial in the
//! spectral parameters; every report records that degree next to the
//! number of points used.

mod loperator;
mod ms;
mod operators;
mod rmatrix;
mod stationary;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::random::random_point_with;
use crate::Rational;

pub use ms::{check_ms, random_ms_instance};
pub use loperator::{build_cal_l, check_ltt, check_rll, compositions, l_element, l_zero_action, CalL};
pub use operators::{check_hat, check_recursion, check_rtt, check_zf, hat_operators};
pub use rmatrix::{check_quasi_periodicity, check_ybe, r_element, r_matrix_column};
pub use stationary::{verify_stationary, StationaryReport};

/// Bound on numerators and denominators of random check points.
pub const CHECK_POINT_BOUND: i64 = 1000;

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub n: usize,
    /// Evaluation points, printed as `name=p/q` lists.
    pub points: Vec<String>,
    /// Matrix elements or columns compared.
    pub comparisons: usize,
    /// Degree of the cleared identity in the sampled variables.
    pub degree_bound: Option<usize>,
    pub failure: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(name: &str, n: usize, degree_bound: Option<usize>) -> Self {
        CheckReport {
            name: name.to_string(),
            n,
            points: Vec::new(),
            comparisons: 0,
            degree_bound,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// More distinct points than the degree bound.
    pub fn covered(&self) -> bool {
        self.degree_bound.map_or(true, |d| self.points.len() > d)
    }

    pub(crate) fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{} n={}: {status}, {} comparisons at {} points",
            self.name,
            self.n,
            self.comparisons,
            self.points.len()
        )?;
        if let Some(d) = self.degree_bound {
            write!(f, ", degree bound {d}")?;
        }
        if let Some(m) = &self.failure {
            write!(f, ": {m}")?;
        }
        Ok(())
    }
}

/// `count` random spectral points avoiding the given values.
pub fn spectral_points(seed: u64, count: usize, avoid: &[Rational]) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let mut taken = avoid.to_vec();
        taken.extend(out.iter().cloned());
        out.push(random_point_with(&mut rng, CHECK_POINT_BOUND, &taken));
    }
    out
}
