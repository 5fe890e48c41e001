//! Chiral-current and dimer order parameters: local expectations, two-point
//! correlators at separation Δ, and Δ-averaged scalars.
//!
//! Bond and site labels are 1-based. The chiral current on bond j is
//! κ_j = (1/2i)(b†_j b_{j+1} − b†_{j+1} b_j). The dimer xy operator at an
//! interior site j comes in two variants that differ by a factor of i on each
//! bond term: the kinetic-bond form (1/2)(h_{j−1,j} − h_{j,j+1}) with
//! h_{a,b} = b†_a b_b + b†_b b_a, and the current-bond form with 1/(2i) in
//! place of 1/2. The zz operator is diagonal:
//! (1/2 − n_j)(1/2 − n_{j−1}) − (1/2 − n_{j+1})(1/2 − n_j).
//!
//! Two-point correlators store one value per Δ, already divided by the term
//! count at that separation; the Δ-averaged scalar applies only the outer
//! 1/(2M−3) (chiral) or 1/(2M−5) (dimer) weight on top.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigensolver::{dot, GroundState};
use crate::fock::FockBasis;
use crate::hops::accumulate_hop;
use crate::{Error, Result};

/// Expectations are discarded as non-real above this imaginary part.
const IMAG_TOL: f64 = 1e-12;

/// The two inequivalent xy dimer operators.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DimerVariant {
    /// Symmetric bond-kinetic-energy difference, coefficient 1/2 (Hermitian).
    KineticBond,
    /// Bond-current difference, coefficient 1/(2i) (anti-Hermitian); its
    /// correlators are exactly the negatives of the kinetic-bond ones.
    CurrentBond,
}

impl DimerVariant {
    pub fn label(&self) -> &'static str {
        match self {
            DimerVariant::KineticBond => "kinetic-bond",
            DimerVariant::CurrentBond => "current-bond",
        }
    }
}

impl std::fmt::Display for DimerVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Channel + variant selector for the dimer correlator family.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DimerOperator {
    XyKinetic,
    XyCurrent,
    Zz,
}

impl DimerOperator {
    pub fn xy(variant: DimerVariant) -> Self {
        match variant {
            DimerVariant::KineticBond => DimerOperator::XyKinetic,
            DimerVariant::CurrentBond => DimerOperator::XyCurrent,
        }
    }

    pub fn channel(&self) -> &'static str {
        match self {
            DimerOperator::XyKinetic | DimerOperator::XyCurrent => "xy",
            DimerOperator::Zz => "zz",
        }
    }

    pub fn variant(&self) -> Option<DimerVariant> {
        match self {
            DimerOperator::XyKinetic => Some(DimerVariant::KineticBond),
            DimerOperator::XyCurrent => Some(DimerVariant::CurrentBond),
            DimerOperator::Zz => None,
        }
    }

    /// Sign s in O† = s·O.
    fn adjoint_sign(&self) -> f64 {
        match self {
            DimerOperator::XyCurrent => -1.0,
            _ => 1.0,
        }
    }
}

/// Δ-resolved correlator values with their weighted average.
#[derive(Clone, Debug)]
pub struct CorrelatorReport {
    /// Δ ↦ value for Δ ∈ [−Δ_max, Δ_max]; symmetric by construction.
    pub per_delta: BTreeMap<i64, f64>,
    /// κ̄_z or D̄ weighted average over the stored Δ range.
    pub average: f64,
    /// Which xy variant produced this (None for chiral and zz).
    pub variant: Option<DimerVariant>,
}

fn strict_real(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > IMAG_TOL {
        return Err(Error::Internal(format!(
            "{what} should be real, got imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// κ_j |v⟩ for bond j.
fn apply_chiral(basis: &FockBasis, v: &[Complex64], j: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    let c = Complex64::new(0.0, -0.5); // 1/(2i)
    accumulate_hop(basis, v, j, j + 1, c, &mut out);
    accumulate_hop(basis, v, j + 1, j, -c, &mut out);
    out
}

/// Dimer operator at interior site j applied to |v⟩.
fn apply_dimer(basis: &FockBasis, v: &[Complex64], j: usize, op: DimerOperator) -> Vec<Complex64> {
    match op {
        DimerOperator::Zz => {
            let mut out = Vec::with_capacity(v.len());
            for (s, occ) in basis.iter().enumerate() {
                let n = |site: usize| 0.5 - occ[site - 1] as f64;
                let w = n(j) * (n(j - 1) - n(j + 1));
                out.push(v[s] * w);
            }
            out
        }
        DimerOperator::XyKinetic | DimerOperator::XyCurrent => {
            let c = match op {
                DimerOperator::XyKinetic => Complex64::new(0.5, 0.0),
                _ => Complex64::new(0.0, -0.5),
            };
            let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
            accumulate_hop(basis, v, j - 1, j, c, &mut out);
            accumulate_hop(basis, v, j, j - 1, c, &mut out);
            accumulate_hop(basis, v, j, j + 1, -c, &mut out);
            accumulate_hop(basis, v, j + 1, j, -c, &mut out);
            out
        }
    }
}

fn check_bond(m: usize, j: usize) -> Result<()> {
    if j < 1 || j > m - 1 {
        return Err(Error::InvalidArgument(format!(
            "bond index {j} outside [1, {}]",
            m - 1
        )));
    }
    Ok(())
}

fn check_interior(m: usize, j: usize) -> Result<()> {
    if j < 2 || j > m - 1 {
        return Err(Error::InvalidArgument(format!(
            "dimer site index {j} outside [2, {}]",
            m - 1
        )));
    }
    Ok(())
}

/// ⟨κ_j⟩ on bond j ∈ [1, M−1].
pub fn chiral_local(gs: &GroundState, j: usize) -> Result<f64> {
    let m = gs.basis.site_count();
    check_bond(m, j)?;
    let w = apply_chiral(&gs.basis, &gs.amplitudes, j);
    strict_real(dot(&gs.amplitudes, &w), "chiral current expectation")
}

/// κ_j |ψ⟩ for every bond, in bond order.
fn chiral_bond_states(gs: &GroundState) -> Vec<Vec<Complex64>> {
    let m = gs.basis.site_count();
    (1..m)
        .into_par_iter()
        .map(|j| apply_chiral(&gs.basis, &gs.amplitudes, j))
        .collect()
}

fn chiral_delta_sum(states: &[Vec<Complex64>], d: usize) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..states.len() - d {
        acc += dot(&states[j], &states[j + d]);
    }
    strict_real(acc, "chiral correlator")
}

/// κ_z^Δ = Σ_{j=1}^{M−1−|Δ|} ⟨κ_j κ_{j+|Δ|}⟩ (unnormalized sum); requires
/// |Δ| ≤ M−2.
pub fn chiral_correlator(gs: &GroundState, delta: i64) -> Result<f64> {
    let m = gs.basis.site_count();
    let d = delta.unsigned_abs() as usize;
    if d > m - 2 {
        return Err(Error::InvalidArgument(format!(
            "chiral separation {delta} outside [-(M-2), M-2] for M = {m}"
        )));
    }
    chiral_delta_sum(&chiral_bond_states(gs), d)
}

/// All κ_z^Δ plus κ̄_z = 1/(2M−3) Σ_Δ κ_z^Δ/(M−1−|Δ|).
pub fn chiral_report(gs: &GroundState) -> Result<CorrelatorReport> {
    let m = gs.basis.site_count();
    let states = chiral_bond_states(gs);
    let values: Result<Vec<f64>> = (0..=m - 2)
        .into_par_iter()
        .map(|d| chiral_delta_sum(&states, d))
        .collect();
    let values = values?;
    let mut per_delta = BTreeMap::new();
    for (d, &v) in values.iter().enumerate() {
        per_delta.insert(d as i64, v);
        per_delta.insert(-(d as i64), v);
    }
    let average = per_delta
        .iter()
        .map(|(&d, &v)| v / (m - 1 - d.unsigned_abs() as usize) as f64)
        .sum::<f64>()
        / (2 * m - 3) as f64;
    Ok(CorrelatorReport {
        per_delta,
        average,
        variant: None,
    })
}

/// κ̄_z alone.
pub fn chiral_average(gs: &GroundState) -> Result<f64> {
    chiral_report(gs).map(|r| r.average)
}

/// ⟨dimer xy operator at j⟩ for j ∈ [2, M−1]. The kinetic-bond variant is
/// Hermitian and returns the real part; the current-bond variant is
/// anti-Hermitian, so its expectation is purely imaginary and the imaginary
/// part is returned.
pub fn dimer_local_xy(gs: &GroundState, j: usize, variant: DimerVariant) -> Result<f64> {
    let m = gs.basis.site_count();
    check_interior(m, j)?;
    let w = apply_dimer(&gs.basis, &gs.amplitudes, j, DimerOperator::xy(variant));
    let z = dot(&gs.amplitudes, &w);
    match variant {
        DimerVariant::KineticBond => strict_real(z, "kinetic-bond dimer expectation"),
        DimerVariant::CurrentBond => {
            if z.re.abs() > IMAG_TOL {
                return Err(Error::Internal(format!(
                    "current-bond dimer expectation should be imaginary, got real part {:.3e}",
                    z.re
                )));
            }
            Ok(z.im)
        }
    }
}

/// ⟨dimer zz operator at j⟩ for j ∈ [2, M−1].
pub fn dimer_local_zz(gs: &GroundState, j: usize) -> Result<f64> {
    let m = gs.basis.site_count();
    check_interior(m, j)?;
    let w = apply_dimer(&gs.basis, &gs.amplitudes, j, DimerOperator::Zz);
    strict_real(dot(&gs.amplitudes, &w), "zz dimer expectation")
}

/// O_j |ψ⟩ for every interior site j ∈ [2, M−1], in site order.
fn dimer_site_states(gs: &GroundState, op: DimerOperator) -> Vec<Vec<Complex64>> {
    let m = gs.basis.site_count();
    (2..m)
        .into_par_iter()
        .map(|j| apply_dimer(&gs.basis, &gs.amplitudes, j, op))
        .collect()
}

fn dimer_delta_value(states: &[Vec<Complex64>], d: usize, op: DimerOperator) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..states.len() - d {
        acc += dot(&states[j], &states[j + d]);
    }
    let raw = strict_real(acc, "dimer correlator")?;
    Ok(op.adjoint_sign() * raw / (states.len() - d) as f64)
}

/// 𝓓^Δ = (1/(M−2−|Δ|)) Σ_{j=2}^{M−1−|Δ|} ⟨𝓓_j 𝓓_{j+|Δ|}⟩; requires
/// |Δ| ≤ M−3.
pub fn dimer_correlator(gs: &GroundState, delta: i64, op: DimerOperator) -> Result<f64> {
    let m = gs.basis.site_count();
    let d = delta.unsigned_abs() as usize;
    if m < 3 || d > m - 3 {
        return Err(Error::InvalidArgument(format!(
            "dimer separation {delta} outside [-(M-3), M-3] for M = {m}"
        )));
    }
    dimer_delta_value(&dimer_site_states(gs, op), d, op)
}

/// All 𝓓^Δ plus D̄ = 1/(2M−5) Σ_Δ 𝓓^Δ; requires M ≥ 4.
pub fn dimer_report(gs: &GroundState, op: DimerOperator) -> Result<CorrelatorReport> {
    let m = gs.basis.site_count();
    if m < 4 {
        return Err(Error::InvalidArgument(format!(
            "dimer averages need at least 4 sites, got {m}"
        )));
    }
    let states = dimer_site_states(gs, op);
    let values: Result<Vec<f64>> = (0..=m - 3)
        .into_par_iter()
        .map(|d| dimer_delta_value(&states, d, op))
        .collect();
    let values = values?;
    let mut per_delta = BTreeMap::new();
    for (d, &v) in values.iter().enumerate() {
        per_delta.insert(d as i64, v);
        per_delta.insert(-(d as i64), v);
    }
    let average = per_delta.values().sum::<f64>() / (2 * m - 5) as f64;
    Ok(CorrelatorReport {
        per_delta,
        average,
        variant: op.variant(),
    })
}

/// D̄ alone.
pub fn dimer_average(gs: &GroundState, op: DimerOperator) -> Result<f64> {
    dimer_report(gs, op).map(|r| r.average)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolver::{ground_state, GroundState, SolverOptions};
    use crate::fock::{FockBasis, FockConfig};
    use crate::hamiltonian::{build_hamiltonian, Boundary, CouplingParams};
    use std::sync::Arc;

    fn fock_state(m: usize, n: usize, cap: u8, occ: &[u8]) -> GroundState {
        let basis = Arc::new(FockBasis::new(m, n, cap).unwrap());
        let idx = basis.rank(&FockConfig::new(occ.to_vec())).unwrap();
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        amps[idx] = Complex64::new(1.0, 0.0);
        GroundState::from_amplitudes(basis, amps).unwrap()
    }

    fn superposition(m: usize, n: usize, cap: u8, terms: &[(&[u8], Complex64)]) -> GroundState {
        let basis = Arc::new(FockBasis::new(m, n, cap).unwrap());
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        for (occ, a) in terms {
            let idx = basis.rank(&FockConfig::new(occ.to_vec())).unwrap();
            amps[idx] = *a;
        }
        GroundState::from_amplitudes(basis, amps).unwrap()
    }

    fn two_site_dimer() -> GroundState {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        superposition(2, 1, 1, &[(&[1, 0], s), (&[0, 1], s)])
    }

    fn perfect_dimer_m4() -> GroundState {
        let h = Complex64::new(0.5, 0.0);
        superposition(
            4,
            2,
            1,
            &[
                (&[1, 0, 1, 0], h),
                (&[1, 0, 0, 1], h),
                (&[0, 1, 1, 0], h),
                (&[0, 1, 0, 1], h),
            ],
        )
    }

    #[test]
    fn chiral_local_vanishes_on_real_states() {
        let gs = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        for j in 1..=3 {
            assert_eq!(chiral_local(&gs, j).unwrap(), 0.0);
        }
        let basis = Arc::new(FockBasis::new(5, 2, 1).unwrap());
        let params = CouplingParams::hardcore(1.3, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let solved = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        for j in 1..=4 {
            assert!(chiral_local(&solved, j).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn chiral_local_complex_superposition() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let gs = superposition(
            2,
            1,
            1,
            &[
                (&[1, 0], Complex64::new(s, 0.0)),
                (&[0, 1], Complex64::new(0.0, s)),
            ],
        );
        assert!((chiral_local(&gs, 1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn chiral_local_bad_bond() {
        let gs = two_site_dimer();
        assert!(chiral_local(&gs, 0).is_err());
        assert!(chiral_local(&gs, 2).is_err());
    }

    #[test]
    fn chiral_correlator_two_site_dimer() {
        let gs = two_site_dimer();
        assert!((chiral_correlator(&gs, 0).unwrap() - 0.25).abs() < 1e-15);
        assert!(chiral_correlator(&gs, 1).is_err());
    }

    #[test]
    fn chiral_correlator_neel() {
        let gs = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        assert!((chiral_correlator(&gs, 0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(chiral_correlator(&gs, 1).unwrap(), 0.0);
        assert_eq!(chiral_correlator(&gs, -2).unwrap(), 0.0);
        assert!(chiral_correlator(&gs, 3).is_err());
    }

    #[test]
    fn chiral_average_examples() {
        let neel = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        assert!((chiral_average(&neel).unwrap() - 0.05).abs() < 1e-15);
        let dimer = two_site_dimer();
        assert!((chiral_average(&dimer).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn chiral_report_consistency() {
        let basis = Arc::new(FockBasis::new(6, 3, 1).unwrap());
        let params = CouplingParams::hardcore(0.9, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        let report = chiral_report(&gs).unwrap();
        let m = 6i64;
        for d in 0..=m - 2 {
            let v = report.per_delta[&d];
            assert_eq!(v, report.per_delta[&(-d)]);
            assert!((v - chiral_correlator(&gs, d).unwrap()).abs() < 1e-12);
        }
        let recomputed: f64 = report
            .per_delta
            .iter()
            .map(|(&d, &v)| v / (m - 1 - d.abs()) as f64)
            .sum::<f64>()
            / (2 * m - 3) as f64;
        assert!((report.average - recomputed).abs() < 1e-12);
        assert!(report.variant.is_none());
    }

    #[test]
    fn chiral_gauge_symmetry() {
        let basis = Arc::new(FockBasis::new(6, 3, 1).unwrap());
        let opts = SolverOptions::default();
        let hp = build_hamiltonian(&basis, &CouplingParams::hardcore(1.1, -1.0, Boundary::Open))
            .unwrap();
        let hm = build_hamiltonian(&basis, &CouplingParams::hardcore(-1.1, -1.0, Boundary::Open))
            .unwrap();
        let kp = chiral_average(&ground_state(&hp, &basis, &opts).unwrap()).unwrap();
        let km = chiral_average(&ground_state(&hm, &basis, &opts).unwrap()).unwrap();
        assert!((kp - km).abs() < 1e-10);
    }

    #[test]
    fn dimer_local_xy_examples() {
        let neel = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        for j in 2..=3 {
            assert_eq!(dimer_local_xy(&neel, j, DimerVariant::KineticBond).unwrap(), 0.0);
        }
        // Left bond (1,2) dimerized, right bond empty.
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let left = superposition(4, 1, 1, &[(&[1, 0, 0, 0], s), (&[0, 1, 0, 0], s)]);
        let kin = dimer_local_xy(&left, 2, DimerVariant::KineticBond).unwrap();
        assert!((kin - 0.5).abs() < 1e-15);
        // The current-bond operator is −i times the kinetic one, so on a real
        // state its imaginary part is the negated kinetic value.
        let cur = dimer_local_xy(&left, 2, DimerVariant::CurrentBond).unwrap();
        assert!((cur + 0.5).abs() < 1e-15);
        assert!(dimer_local_xy(&left, 1, DimerVariant::KineticBond).is_err());
        assert!(dimer_local_xy(&left, 4, DimerVariant::KineticBond).is_err());
    }

    #[test]
    fn dimer_local_zz_examples() {
        let neel = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        assert_eq!(dimer_local_zz(&neel, 2).unwrap(), 0.0);
        let full = fock_state(4, 4, 1, &[1, 1, 1, 1]);
        for j in 2..=3 {
            assert_eq!(dimer_local_zz(&full, j).unwrap(), 0.0);
        }
        assert!(dimer_local_zz(&neel, 1).is_err());
    }

    #[test]
    fn perfect_dimer_same_site_values() {
        let gs = perfect_dimer_m4();
        // Appendix same-site values are site-independent, so they already
        // hold at M=4.
        let xy0 = dimer_correlator(&gs, 0, DimerOperator::XyCurrent).unwrap();
        assert!((xy0 + 0.375).abs() < 1e-14, "xy0 = {xy0}");
        let zz0 = dimer_correlator(&gs, 0, DimerOperator::Zz).unwrap();
        assert!((zz0 - 0.125).abs() < 1e-14, "zz0 = {zz0}");
    }

    #[test]
    fn kinetic_is_exact_negation_of_current() {
        let basis = Arc::new(FockBasis::new(6, 3, 1).unwrap());
        let params = CouplingParams::hardcore(1.7, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        for d in 0..=3 {
            let kin = dimer_correlator(&gs, d, DimerOperator::XyKinetic).unwrap();
            let cur = dimer_correlator(&gs, d, DimerOperator::XyCurrent).unwrap();
            assert_eq!(kin, -cur, "d = {d}");
        }
        let kin_avg = dimer_average(&gs, DimerOperator::XyKinetic).unwrap();
        let cur_avg = dimer_average(&gs, DimerOperator::XyCurrent).unwrap();
        assert_eq!(kin_avg, -cur_avg);
    }

    #[test]
    fn dimer_delta_symmetry_and_range() {
        let gs = perfect_dimer_m4();
        for op in [DimerOperator::XyKinetic, DimerOperator::XyCurrent, DimerOperator::Zz] {
            let plus = dimer_correlator(&gs, 1, op).unwrap();
            let minus = dimer_correlator(&gs, -1, op).unwrap();
            assert_eq!(plus, minus);
            assert!(dimer_correlator(&gs, 2, op).is_err());
        }
    }

    #[test]
    fn dimer_report_recomputes_average() {
        let basis = Arc::new(FockBasis::new(6, 3, 1).unwrap());
        let params = CouplingParams::hardcore(2.0, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        for op in [DimerOperator::XyKinetic, DimerOperator::Zz] {
            let report = dimer_report(&gs, op).unwrap();
            assert_eq!(report.per_delta.len() as i64, 2 * 3 + 1);
            let recomputed: f64 = report.per_delta.values().sum::<f64>() / 7.0;
            assert!((report.average - recomputed).abs() < 1e-12);
            for (&d, &v) in &report.per_delta {
                assert!((v - dimer_correlator(&gs, d, op).unwrap()).abs() < 1e-12);
            }
            assert_eq!(report.variant, op.variant());
        }
    }

    #[test]
    fn neel_dimer_average_cancels() {
        // Per-Δ contributions of a hard-core alternating Fock state cancel
        // in the weighted sum at any even or odd M with uniform bond weights.
        let neel4 = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        assert!(dimer_average(&neel4, DimerOperator::XyKinetic).unwrap().abs() < 1e-15);
        let neel5 = fock_state(5, 3, 1, &[1, 0, 1, 0, 1]);
        assert!(dimer_average(&neel5, DimerOperator::XyKinetic).unwrap().abs() < 1e-15);
    }

    #[test]
    fn uniform_filling_zz_zero() {
        let full = fock_state(5, 5, 1, &[1, 1, 1, 1, 1]);
        let report = dimer_report(&full, DimerOperator::Zz).unwrap();
        for &v in report.per_delta.values() {
            assert_eq!(v, 0.0);
        }
        assert_eq!(report.average, 0.0);
    }

    #[test]
    fn dimer_report_needs_four_sites() {
        let basis = Arc::new(FockBasis::new(3, 1, 1).unwrap());
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        amps[0] = Complex64::new(1.0, 0.0);
        let gs = GroundState::from_amplitudes(basis, amps).unwrap();
        assert!(dimer_report(&gs, DimerOperator::Zz).is_err());
        // Δ = 0 still works at M = 3 because one interior site exists.
        assert!(dimer_correlator(&gs, 0, DimerOperator::Zz).is_ok());
    }

    #[test]
    fn operator_selectors() {
        assert_eq!(DimerOperator::xy(DimerVariant::KineticBond), DimerOperator::XyKinetic);
        assert_eq!(DimerOperator::XyCurrent.channel(), "xy");
        assert_eq!(DimerOperator::Zz.channel(), "zz");
        assert_eq!(DimerOperator::Zz.variant(), None);
        assert_eq!(DimerVariant::KineticBond.label(), "kinetic-bond");
        assert_eq!(DimerVariant::CurrentBond.to_string(), "current-bond");
    }
}
