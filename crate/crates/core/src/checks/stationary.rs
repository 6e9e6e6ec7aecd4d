use super::CheckReport;
use crate::asep::{markov_sector, stationary_kernel, Multiplicity, SectorVector};
use crate::ctm::mp_stationary;
use crate::error::Result;
use crate::mlq::mlq_state;
use crate::{PolyT, Rational};

use num_traits::{One, Zero};

/// The three constructions of a sector's stationary vector, canonicalized.
#[derive(Clone, Debug)]
pub struct StationaryReport {
    pub multiplicity: Multiplicity,
    pub kernel: Vec<PolyT>,
    pub mlq: Vec<PolyT>,
    pub mp: Vec<PolyT>,
    /// `H` applied to the matrix-product vector vanishes.
    pub annihilated: bool,
    pub check: CheckReport,
}

impl StationaryReport {
    pub fn all_equal(&self) -> bool {
        self.kernel == self.mlq && self.kernel == self.mp
    }
}

pub fn verify_stationary(m: &Multiplicity) -> Result<StationaryReport> {
    m.require_basic()?;
    let (_, kernel) = stationary_kernel(m)?;
    let mlq = canonical(&mlq_state(m, &Rational::one())?)?;
    let mp_vec = mp_stationary(m)?;
    let mp = canonical(&mp_vec)?;
    let (_, h) = markov_sector(m);
    let annihilated = h.apply(&mp_vec.values).iter().all(|v| v.is_zero());
    let mut check = CheckReport::new("stationary", m.n(), None);
    check.comparisons = kernel.len();
    if !annihilated {
        check.fail("H does not annihilate the matrix-product vector".into());
    }
    if kernel != mlq {
        check.fail("kernel and multiline-queue vectors differ".into());
    }
    if kernel != mp {
        check.fail("kernel and matrix-product vectors differ".into());
    }
    Ok(StationaryReport {
        multiplicity: m.clone(),
        kernel,
        mlq,
        mp,
        annihilated,
        check,
    })
}

fn canonical(v: &SectorVector) -> Result<Vec<PolyT>> {
    v.canonical()
}
