//! The perfect dimer product state on odd-even pairs (1,2)(3,4)…(M−1,M) and
//! its closed-form correlator values.
//!
//! The state is the normalized product over all M/2 pairs of
//! (b†_{2i−1} + b†_{2i})/√2 on the vacuum, living in the hard-core basis at
//! half filling. The xy closed forms refer to the current-bond variant; the
//! kinetic-bond values are their exact negatives.

use num_complex::Complex64;

use crate::correlators::DimerOperator;
use crate::eigensolver::GroundState;
use crate::fock::FockBasis;
use crate::{Error, Result};
use std::sync::Arc;

/// Disjoint odd-even site pairs covering the chain.
#[derive(Clone, Debug)]
pub struct DimerPairing {
    pairs: Vec<(usize, usize)>,
}

impl DimerPairing {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 || m % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "dimer pairing needs an even site count >= 2, got {m}"
            )));
        }
        Ok(DimerPairing {
            pairs: (1..=m / 2).map(|i| (2 * i - 1, 2 * i)).collect(),
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn site_count(&self) -> usize {
        2 * self.pairs.len()
    }
}

/// Perfect dimer state over the odd-even pairing: 2^{M/2} configurations with
/// one particle per pair, all at amplitude 2^{−M/4}. Solver metadata is
/// zeroed; the state is constructed, not solved.
pub fn perfect_dimer_state(m: usize) -> Result<GroundState> {
    let pairing = DimerPairing::new(m)?;
    let half = m / 2;
    let basis = Arc::new(FockBasis::new(m, half, 1)?);
    let amp = Complex64::new((2f64.powi(half as i32)).sqrt().recip(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
    let mut occ = vec![0u8; m];
    for pattern in 0u64..(1 << half) {
        occ.iter_mut().for_each(|o| *o = 0);
        for (i, &(left, right)) in pairing.pairs().iter().enumerate() {
            let site = if pattern >> i & 1 == 0 { left } else { right };
            occ[site - 1] = 1;
        }
        let idx = basis.rank_slice(&occ)?;
        amps[idx] = amp;
    }
    GroundState::from_amplitudes(basis, amps)
}

/// Re-expresses a state in the same (M, N) sector with a higher occupation
/// cap; amplitudes carry over, all new configurations get zero.
pub fn embed_soft_core(gs: &GroundState, n_max: u8) -> Result<GroundState> {
    let src = gs.basis.as_ref();
    if n_max < src.occupation_cap() {
        return Err(Error::InvalidArgument(format!(
            "target occupation cap {n_max} below the source cap {}",
            src.occupation_cap()
        )));
    }
    let target = Arc::new(FockBasis::new(
        src.site_count(),
        src.particle_count(),
        n_max,
    )?);
    let mut amps = vec![Complex64::new(0.0, 0.0); target.dimension()];
    for (s, occ) in src.iter().enumerate() {
        amps[target.rank_slice(occ)?] = gs.amplitudes[s];
    }
    GroundState::from_amplitudes(target, amps)
}

fn check_closed_form_domain(m: usize, delta: Option<i64>) -> Result<()> {
    if m % 2 != 0 || m < 8 {
        return Err(Error::InvalidArgument(format!(
            "closed forms hold for even M >= 8, got {m}"
        )));
    }
    if let Some(d) = delta {
        if d.unsigned_abs() as usize > m - 3 {
            return Err(Error::InvalidArgument(format!(
                "separation {d} outside [-(M-3), M-3] for M = {m}"
            )));
        }
    }
    Ok(())
}

/// Closed-form xy dimer correlator (current-bond variant) of the perfect
/// dimer state.
pub fn dimer_xy_delta_closed(m: usize, delta: i64) -> Result<f64> {
    check_closed_form_domain(m, Some(delta))?;
    let d = delta.unsigned_abs();
    Ok(match d {
        0 => -3.0 / 8.0,
        1 => (5.0 * m as f64 - 14.0) / (16.0 * (m as f64 - 3.0)),
        _ => {
            if d % 2 == 0 {
                -0.25
            } else {
                0.25
            }
        }
    })
}

/// Closed-form zz dimer correlator of the perfect dimer state.
pub fn dimer_zz_delta_closed(m: usize, delta: i64) -> Result<f64> {
    check_closed_form_domain(m, Some(delta))?;
    let d = delta.unsigned_abs();
    Ok(match d {
        0 => 1.0 / 8.0,
        1 => -(3.0 * m as f64 - 8.0) / (32.0 * (m as f64 - 3.0)),
        _ => {
            if d % 2 == 0 {
                1.0 / 16.0
            } else {
                -1.0 / 16.0
            }
        }
    })
}

/// Closed-form Δ-averaged dimer order parameter of the perfect dimer state.
pub fn dimer_average_closed(m: usize, op: DimerOperator) -> Result<f64> {
    check_closed_form_domain(m, None)?;
    let mf = m as f64;
    Ok(match op {
        DimerOperator::XyCurrent => 1.0 / (8.0 * (mf - 3.0)),
        DimerOperator::XyKinetic => -1.0 / (8.0 * (mf - 3.0)),
        DimerOperator::Zz => (2.0 - mf) / 16.0 / ((2.0 * mf - 5.0) * (mf - 3.0)),
    })
}
