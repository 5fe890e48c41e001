//! Momentum-space observables: one-body correlation matrix ⟨b†_i b_j⟩,
//! momentum density n_q on a uniform grid over (−π, π], condensate fraction
//! η, dominant mode q_max, mode entropy S_q, and the free-boson dispersion
//! oracles.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigensolver::GroundState;
use crate::{Error, Result};

/// Default momentum-grid resolution.
pub const DEFAULT_GRID_SIZE: usize = 1000;

/// Densities this far below zero are rounding noise and get clipped; anything
/// lower is treated as an internal failure.
const NEGATIVE_DENSITY_TOL: f64 = 1e-12;

/// Tolerance for classifying q_max as commensurate (0 or ±π).
const COMMENSURATE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MomentumProfile {
    /// Uniform grid over (−π, π], ascending; contains 0 and π exactly for
    /// even grid sizes.
    pub q_grid: Vec<f64>,
    /// n_q ≥ 0 per grid point (clipped rounding noise).
    pub densities: Vec<f64>,
    /// max_q n_q / N.
    pub eta: f64,
    /// Argmax momentum; ties resolve toward smaller |q|, then positive sign.
    pub q_max: f64,
    /// Mode entropy −Σ ρ_q ln ρ_q of the sum-normalized density.
    pub s_q: f64,
    /// s_q / ln(grid size) ∈ [0, 1].
    pub s_q_normalized: f64,
}

/// M×M Hermitian matrix G with G[i][j] = ⟨b†_{i+1} b_{j+1}⟩; trace N,
/// positive semidefinite.
pub fn one_body_matrix(gs: &GroundState) -> DMatrix<Complex64> {
    let basis = gs.basis.as_ref();
    let m = basis.site_count();
    let psi = &gs.amplitudes;
    let cap = basis.occupation_cap();

    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let values: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if i == j {
                let mut acc = 0.0f64;
                for (s, occ) in basis.iter().enumerate() {
                    let w = psi[s].norm_sqr();
                    if w != 0.0 {
                        acc += occ[i] as f64 * w;
                    }
                }
                Complex64::new(acc, 0.0)
            } else {
                // ⟨ψ| b†_{i+1} b_{j+1} |ψ⟩: hop j -> i applied to the ket.
                let mut acc = Complex64::new(0.0, 0.0);
                let mut moved = vec![0u8; m];
                for (s, occ) in basis.iter().enumerate() {
                    let a = psi[s];
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let n_from = occ[j];
                    let n_to = occ[i];
                    if n_from == 0 || n_to >= cap {
                        continue;
                    }
                    moved.copy_from_slice(occ);
                    moved[j] -= 1;
                    moved[i] += 1;
                    let t = basis
                        .rank_slice(&moved)
                        .expect("hop target stays inside the basis");
                    let w = ((n_from as f64) * (n_to as f64 + 1.0)).sqrt();
                    acc += psi[t].conj() * w * a;
                }
                acc
            }
        })
        .collect();

    let mut g = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        g[(i, j)] = v;
        if i != j {
            g[(j, i)] = v.conj();
        }
    }
    g
}

/// Momentum density profile of `gs` on an `n_q`-point grid. Requires
/// `n_q >= M`.
pub fn momentum_profile(gs: &GroundState, n_q: usize) -> Result<MomentumProfile> {
    let m = gs.basis.site_count();
    if n_q < m {
        return Err(Error::InvalidArgument(format!(
            "momentum grid size {n_q} must be at least the site count {m}"
        )));
    }
    let g = one_body_matrix(gs);

    let q_grid: Vec<f64> =
        (1..=n_q).map(|k| (2.0 * k as f64 - n_q as f64) * std::f64::consts::PI / n_q as f64).collect();

    let raw: Vec<f64> = q_grid
        .par_iter()
        .map(|&q| {
            let phases: Vec<Complex64> =
                (0..m).map(|i| Complex64::from_polar(1.0, q * i as f64)).collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                for j in 0..m {
                    acc += phases[i].conj() * g[(i, j)] * phases[j];
                }
            }
            acc.re / m as f64
        })
        .collect();

    let mut densities = Vec::with_capacity(n_q);
    for (k, &d) in raw.iter().enumerate() {
        if d < -NEGATIVE_DENSITY_TOL {
            return Err(Error::Internal(format!(
                "momentum density {d:.3e} at q = {:.6} below the rounding floor",
                q_grid[k]
            )));
        }
        densities.push(d.max(0.0));
    }

    let total: f64 = densities.iter().sum();
    if total <= 0.0 {
        return Err(Error::Internal(
            "momentum density vanished on the whole grid (requires N >= 1)".into(),
        ));
    }

    let mut best = 0usize;
    for k in 1..n_q {
        let (d, q) = (densities[k], q_grid[k]);
        let (bd, bq) = (densities[best], q_grid[best]);
        if d > bd
            || (d == bd && (q.abs() < bq.abs() || (q.abs() == bq.abs() && q > bq)))
        {
            best = k;
        }
    }
    let q_max = q_grid[best];
    let n = gs.basis.particle_count();
    let eta = if n > 0 { densities[best] / n as f64 } else { 0.0 };

    let ln_nq = (n_q as f64).ln();
    let mut s_q = 0.0f64;
    for &d in &densities {
        if d > 0.0 {
            let rho = d / total;
            s_q -= rho * rho.ln();
        }
    }
    let s_q = s_q.clamp(0.0, ln_nq);

    Ok(MomentumProfile {
        q_grid,
        densities,
        eta,
        q_max,
        s_q,
        s_q_normalized: s_q / ln_nq,
    })
}

/// Free-boson dispersion −2 t1 cos q − 2 t2 cos 2q.
pub fn dispersion(q: f64, t1: f64, t2: f64) -> f64 {
    -2.0 * t1 * q.cos() - 2.0 * t2 * (2.0 * q).cos()
}

/// Minimizing momenta of the dispersion for t2 < 0, by the ratio t1/t2:
/// {0} for t1/t2 ≤ −4, {±arccos(−t1/(4 t2))} between, {π} for t1/t2 ≥ 4.
/// Returned ascending.
pub fn qmax_free(t1: f64, t2: f64) -> Result<Vec<f64>> {
    if t2.is_nan() || t2 >= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "free-boson minimizer rule requires t2 < 0, got {t2}; for t2 >= 0 evaluate the dispersion directly"
        )));
    }
    let ratio = t1 / t2;
    if ratio <= -4.0 {
        Ok(vec![0.0])
    } else if ratio >= 4.0 {
        Ok(vec![std::f64::consts::PI])
    } else {
        let q = (-t1 / (4.0 * t2)).acos();
        Ok(vec![-q, q])
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Commensurability {
    Commensurate,
    Incommensurate,
}

impl Commensurability {
    pub fn label(&self) -> &'static str {
        match self {
            Commensurability::Commensurate => "C",
            Commensurability::Incommensurate => "IC",
        }
    }
}

impl std::fmt::Display for Commensurability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Lifshitz classification of the dominant mode: commensurate iff q_max is 0
/// or ±π (within 1e-9).
pub fn classify_commensurate(q_max: f64) -> Commensurability {
    let a = q_max.abs();
    if a <= COMMENSURATE_TOL || (a - std::f64::consts::PI).abs() <= COMMENSURATE_TOL {
        Commensurability::Commensurate
    } else {
        Commensurability::Incommensurate
    }
}
