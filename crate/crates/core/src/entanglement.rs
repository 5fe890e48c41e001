//! Schmidt analysis over site bipartitions, half-chain entanglement entropy,
//! and the generalized geometric measure (GGM).
//!
//! Particle-number conservation makes the A:B amplitude matrix block-diagonal
//! by the particle count k held in A; each block's squared singular values are
//! the eigenvalues of the reduced state ρ_A restricted to that sector. Blocks
//! that are exactly zero contribute nothing and are skipped, so reported
//! spectra omit structural zeros (a Fock product state reports {1}).

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigensolver::{lanczos_lowest, GroundState};
use crate::fock::FockBasis;
use crate::{Error, Result};

/// Largest site count for which `GgmScope::All` enumerates by default.
pub const DEFAULT_GGM_CEILING: usize = 16;

/// Blocks whose Gram side exceeds this use the iterative top-eigenvalue path.
const DENSE_BLOCK_LIMIT: usize = 512;

/// Bipartitions whose λ² lies within this of the maximum count as tied; the
/// smallest bitmask among them is reported.
const GGM_TIE_TOL: f64 = 1e-12;

const SPECTRUM_SUM_TOL: f64 = 1e-10;
const NEGATIVE_EIG_TOL: f64 = 1e-12;

/// A proper, non-empty subset A of the chain's sites. Bit i−1 of the mask is
/// site i; the canonical representative of an A:B split is the side holding
/// site 1.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Bipartition {
    mask: u64,
    m: usize,
}

impl Bipartition {
    pub fn from_mask(m: usize, mask: u64) -> Result<Self> {
        if m < 2 || m > 63 {
            return Err(Error::InvalidArgument(format!(
                "bipartitions need 2 to 63 sites, got {m}"
            )));
        }
        let full = (1u64 << m) - 1;
        if mask == 0 || mask & !full != 0 || mask == full {
            return Err(Error::InvalidArgument(format!(
                "subset mask {mask:#b} is not a proper non-empty subset of {m} sites"
            )));
        }
        Ok(Bipartition { mask, m })
    }

    /// Builds A from 1-based site indices.
    pub fn from_sites(m: usize, sites: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &s in sites {
            if s < 1 || s > m {
                return Err(Error::InvalidArgument(format!(
                    "site {s} outside [1, {m}]"
                )));
            }
            let bit = 1u64 << (s - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidArgument(format!("duplicate site {s}")));
            }
            mask |= bit;
        }
        Self::from_mask(m, mask)
    }

    /// Contiguous left half {1..M/2}; requires even M.
    pub fn half_chain(m: usize) -> Result<Self> {
        if m % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "half-chain cut needs an even site count, got {m}"
            )));
        }
        Self::from_mask(m, (1u64 << (m / 2)) - 1)
    }

    /// Odd sites {1, 3, 5, …} versus even sites.
    pub fn parity_split(m: usize) -> Result<Self> {
        let full = (1u64 << m) - 1;
        Self::from_mask(m, 0x5555_5555_5555_5555u64 & full)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn site_count(&self) -> usize {
        self.m
    }

    /// 1-based sites in A, ascending.
    pub fn sites_a(&self) -> Vec<usize> {
        (1..=self.m).filter(|s| self.mask >> (s - 1) & 1 == 1).collect()
    }

    pub fn a_len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn complement(&self) -> Self {
        let full = (1u64 << self.m) - 1;
        Bipartition {
            mask: full & !self.mask,
            m: self.m,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.mask & 1 == 1
    }

    /// The representative whose A side holds site 1.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.complement()
        }
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "A={{")?;
        for (i, s) in self.sites_a().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Eigenvalues of a reduced state, descending, with derived scalars.
#[derive(Clone, Debug)]
pub struct SchmidtSpectrum {
    /// Non-negative, descending, summing to 1; structural zero sectors
    /// omitted.
    pub eigenvalues: Vec<f64>,
    /// −Σ λ ln λ with 0 ln 0 = 0.
    pub entropy: f64,
    /// Largest eigenvalue (squared top Schmidt coefficient).
    pub lambda_max_sq: f64,
}

/// Splits the amplitude vector into per-sector A:B matrices. Sector k's block
/// has rows indexed by A-configurations holding k particles and columns by
/// B-configurations holding N−k, both in ascending basis order. Blocks with
/// no nonzero amplitude are dropped.
fn amplitude_blocks(
    basis: &FockBasis,
    amps: &[Complex64],
    mask: u64,
) -> Result<Vec<DMatrix<Complex64>>> {
    let m = basis.site_count();
    let n = basis.particle_count();
    let cap = basis.occupation_cap();
    let a_pos: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
    let b_pos: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
    let (ma, mb) = (a_pos.len(), b_pos.len());

    let cap_a = ma * cap as usize;
    let cap_b = mb * cap as usize;
    let mut sub_a: Vec<Option<FockBasis>> = Vec::with_capacity(n + 1);
    let mut sub_b: Vec<Option<FockBasis>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k <= cap_a && n - k <= cap_b {
            sub_a.push(Some(FockBasis::new_subsystem(ma, k, cap)?));
            sub_b.push(Some(FockBasis::new_subsystem(mb, n - k, cap)?));
        } else {
            sub_a.push(None);
            sub_b.push(None);
        }
    }

    let mut blocks: Vec<Option<DMatrix<Complex64>>> = vec![None; n + 1];
    let mut occ_a = vec![0u8; ma];
    let mut occ_b = vec![0u8; mb];
    for (s, occ) in basis.iter().enumerate() {
        let a = amps[s];
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut k = 0usize;
        for (t, &p) in a_pos.iter().enumerate() {
            occ_a[t] = occ[p];
            k += occ[p] as usize;
        }
        for (t, &p) in b_pos.iter().enumerate() {
            occ_b[t] = occ[p];
        }
        let ba = sub_a[k].as_ref().expect("sector implied by a basis config");
        let bb = sub_b[k].as_ref().expect("sector implied by a basis config");
        let block = blocks[k].get_or_insert_with(|| {
            DMatrix::from_element(ba.dimension(), bb.dimension(), Complex64::new(0.0, 0.0))
        });
        block[(ba.rank_slice(&occ_a)?, bb.rank_slice(&occ_b)?)] = a;
    }
    Ok(blocks.into_iter().flatten().collect())
}

/// All eigenvalues of the block's smaller-side Gram matrix (the squared
/// singular values), unordered.
fn gram_eigenvalues(block: &DMatrix<Complex64>) -> Vec<f64> {
    let (r, c) = block.shape();
    if block.iter().all(|z| z.im == 0.0) {
        let real = block.map(|z| z.re);
        let g = if r <= c {
            &real * real.transpose()
        } else {
            real.transpose() * &real
        };
        nalgebra::SymmetricEigen::new(g).eigenvalues.iter().copied().collect()
    } else {
        let g = if r <= c {
            block * block.adjoint()
        } else {
            block.adjoint() * block
        };
        nalgebra::SymmetricEigen::new(g).eigenvalues.iter().copied().collect()
    }
}

/// Largest squared singular value; dense Gram eigendecomposition up to
/// `dense_limit` on the smaller side, matrix-free Lanczos beyond it.
fn top_squared_singular(block: &DMatrix<Complex64>, dense_limit: usize) -> Result<f64> {
    let (r, c) = block.shape();
    let small = r.min(c);
    if small <= dense_limit {
        return Ok(gram_eigenvalues(block).into_iter().fold(0.0f64, f64::max));
    }
    // Largest eigenvalue of the Gram matrix = −(lowest eigenvalue of −G).
    // Scaling to unit Frobenius norm makes the absolute residual tolerance
    // act as a relative one.
    let fro2 = block.norm_squared();
    if fro2 == 0.0 {
        return Ok(0.0);
    }
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        let xv = nalgebra::DVector::from_column_slice(x);
        let y = if r <= c {
            block * (block.adjoint() * xv)
        } else {
            block.adjoint() * (block * xv)
        };
        y.iter().map(|z| -z / fro2).collect()
    };
    let eig = lanczos_lowest(small, &apply, 1e-12, 5000, 7)?;
    Ok((-eig.value * fro2).max(0.0))
}

/// Schmidt spectrum of the reduced state on the partition's A side.
pub fn schmidt_spectrum(gs: &GroundState, partition: &Bipartition) -> Result<SchmidtSpectrum> {
    let basis = gs.basis.as_ref();
    if partition.site_count() != basis.site_count() {
        return Err(Error::DimensionMismatch(format!(
            "partition over {} sites applied to a {}-site basis",
            partition.site_count(),
            basis.site_count()
        )));
    }
    let blocks = amplitude_blocks(basis, &gs.amplitudes, partition.mask())?;
    let mut eigenvalues: Vec<f64> = Vec::new();
    for block in &blocks {
        eigenvalues.extend(gram_eigenvalues(block));
    }
    if eigenvalues.is_empty() {
        return Err(Error::Internal("no nonzero Schmidt sector found".into()));
    }
    for &ev in &eigenvalues {
        if ev < -NEGATIVE_EIG_TOL {
            return Err(Error::Internal(format!(
                "reduced-state eigenvalue {ev:.3e} below the rounding floor"
            )));
        }
    }
    let mut eigenvalues: Vec<f64> = eigenvalues.into_iter().map(|ev| ev.max(0.0)).collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = eigenvalues.iter().sum();
    if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
        return Err(Error::Internal(format!(
            "Schmidt spectrum sums to {sum}, expected 1"
        )));
    }
    let entropy = -eigenvalues
        .iter()
        .filter(|&&ev| ev > 0.0)
        .map(|&ev| ev * ev.ln())
        .sum::<f64>();
    let entropy = entropy.max(0.0);
    let lambda_max_sq = eigenvalues[0];
    Ok(SchmidtSpectrum {
        eigenvalues,
        entropy,
        lambda_max_sq,
    })
}

/// Entanglement entropy of the contiguous left half {1..M/2}; M must be even.
pub fn half_chain_entropy(gs: &GroundState) -> Result<f64> {
    let partition = Bipartition::half_chain(gs.basis.site_count())?;
    Ok(schmidt_spectrum(gs, &partition)?.entropy)
}

/// Which bipartitions the GGM maximization enumerates.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GgmScope {
    /// Every canonical bipartition (2^{M−1} − 1 subsets). Gated by a site
    /// ceiling.
    All,
    /// Contiguous blocks (either side), plus the odd/even parity split.
    ContiguousParity,
}

#[derive(Clone, Debug)]
pub struct GgmResult {
    /// 1 − max λ², clamped into [0, 1).
    pub value: f64,
    /// The maximal squared Schmidt coefficient over the scope.
    pub lambda_max_sq: f64,
    /// Smallest-bitmask partition attaining the maximum within 1e-12.
    pub argmax: Bipartition,
}

fn all_canonical_masks(m: usize) -> Vec<u64> {
    (0..(1u64 << (m - 1)) - 1).map(|k| 2 * k + 1).collect()
}

fn contiguous_parity_masks(m: usize) -> Vec<u64> {
    let full = (1u64 << m) - 1;
    let mut set = BTreeSet::new();
    for i in 1..=m {
        for j in i..=m {
            let seg = ((1u64 << (j - i + 1)) - 1) << (i - 1);
            if seg == full {
                continue;
            }
            set.insert(if seg & 1 == 1 { seg } else { full & !seg });
        }
    }
    set.insert(0x5555_5555_5555_5555u64 & full);
    set.into_iter().collect()
}

/// GGM with the default full-enumeration ceiling of 16 sites.
pub fn ggm(gs: &GroundState, scope: GgmScope) -> Result<GgmResult> {
    ggm_with_ceiling(gs, scope, DEFAULT_GGM_CEILING)
}

/// 𝓖 = 1 − max λ² over the scope's canonical bipartitions, with a
/// deterministic smallest-bitmask argmax under 1e-12 ties.
pub fn ggm_with_ceiling(gs: &GroundState, scope: GgmScope, ceiling: usize) -> Result<GgmResult> {
    let basis = gs.basis.as_ref();
    let m = basis.site_count();
    if scope == GgmScope::All && m > ceiling {
        return Err(Error::InvalidArgument(format!(
            "full bipartition enumeration over {m} sites exceeds the ceiling {ceiling}; \
             use the contiguous+parity scope or raise the ceiling"
        )));
    }
    let masks = match scope {
        GgmScope::All => all_canonical_masks(m),
        GgmScope::ContiguousParity => contiguous_parity_masks(m),
    };
    let lambdas = masks
        .par_iter()
        .map(|&mask| {
            let blocks = amplitude_blocks(basis, &gs.amplitudes, mask)?;
            let mut top = 0.0f64;
            for block in &blocks {
                top = top.max(top_squared_singular(block, DENSE_BLOCK_LIMIT)?);
            }
            Ok(top)
        })
        .collect::<Result<Vec<f64>>>()?;

    let max = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let idx = lambdas
        .iter()
        .position(|&v| v >= max - GGM_TIE_TOL)
        .expect("max came from the same list");
    Ok(GgmResult {
        value: (1.0 - max).max(0.0),
        lambda_max_sq: max,
        argmax: Bipartition::from_mask(m, masks[idx])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolver::{ground_state, GroundState, SolverOptions};
    use crate::fock::{FockBasis, FockConfig};
    use crate::hamiltonian::{build_hamiltonian, Boundary, CouplingParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn fock_state(m: usize, n: usize, cap: u8, occ: &[u8]) -> GroundState {
        let basis = Arc::new(FockBasis::new(m, n, cap).unwrap());
        let idx = basis.rank(&FockConfig::new(occ.to_vec())).unwrap();
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        amps[idx] = Complex64::new(1.0, 0.0);
        GroundState::from_amplitudes(basis, amps).unwrap()
    }

    fn superposition(m: usize, n: usize, cap: u8, terms: &[(&[u8], f64)]) -> GroundState {
        let basis = Arc::new(FockBasis::new(m, n, cap).unwrap());
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        for (occ, a) in terms {
            let idx = basis.rank(&FockConfig::new(occ.to_vec())).unwrap();
            amps[idx] = Complex64::new(*a, 0.0);
        }
        GroundState::from_amplitudes(basis, amps).unwrap()
    }

    fn perfect_dimer_m4() -> GroundState {
        superposition(
            4,
            2,
            1,
            &[
                (&[1, 0, 1, 0], 0.5),
                (&[1, 0, 0, 1], 0.5),
                (&[0, 1, 1, 0], 0.5),
                (&[0, 1, 0, 1], 0.5),
            ],
        )
    }

    #[test]
    fn bipartition_construction_and_canonical_form() {
        let p = Bipartition::from_sites(6, &[1, 3, 5]).unwrap();
        assert_eq!(p.mask(), 0b010101);
        assert_eq!(p.sites_a(), vec![1, 3, 5]);
        assert!(p.is_canonical());
        let q = Bipartition::from_sites(6, &[2, 4, 6]).unwrap();
        assert!(!q.is_canonical());
        assert_eq!(q.canonical().mask(), p.mask());
        assert_eq!(p.complement().mask(), q.mask());
        assert_eq!(Bipartition::half_chain(6).unwrap().mask(), 0b000111);
        assert!(Bipartition::half_chain(5).is_err());
        assert_eq!(Bipartition::parity_split(5).unwrap().mask(), 0b10101);
        assert_eq!(p.to_string(), "A={1,3,5}");

        assert!(Bipartition::from_mask(6, 0).is_err());
        assert!(Bipartition::from_mask(6, 0b111111).is_err());
        assert!(Bipartition::from_mask(6, 1 << 6).is_err());
        assert!(Bipartition::from_sites(6, &[0]).is_err());
        assert!(Bipartition::from_sites(6, &[7]).is_err());
        assert!(Bipartition::from_sites(6, &[2, 2]).is_err());
        assert!(Bipartition::from_sites(6, &[]).is_err());
    }

    #[test]
    fn fock_state_spectrum_is_unit() {
        let gs = fock_state(4, 2, 2, &[2, 0, 0, 0]);
        for mask in [0b0001u64, 0b0011, 0b0101, 0b1001, 0b0111] {
            let p = Bipartition::from_mask(4, mask).unwrap();
            let s = schmidt_spectrum(&gs, &p).unwrap();
            assert_eq!(s.eigenvalues, vec![1.0]);
            assert_eq!(s.entropy, 0.0);
            assert_eq!(s.lambda_max_sq, 1.0);
        }
    }

    #[test]
    fn two_site_dimer_spectrum_and_ggm() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let gs = superposition(2, 1, 1, &[(&[1, 0], s), (&[0, 1], s)]);
        let spec = schmidt_spectrum(&gs, &Bipartition::from_sites(2, &[1]).unwrap()).unwrap();
        assert_eq!(spec.eigenvalues.len(), 2);
        assert!((spec.eigenvalues[0] - 0.5).abs() < 1e-15);
        assert!((spec.eigenvalues[1] - 0.5).abs() < 1e-15);
        assert!((spec.entropy - std::f64::consts::LN_2).abs() < 1e-14);
        let g = ggm(&gs, GgmScope::All).unwrap();
        assert!((g.value - 0.5).abs() < 1e-14);
        assert_eq!(g.argmax.mask(), 1);
    }

    #[test]
    fn w_state_ggm_with_tie_break() {
        let a = 1.0 / 3f64.sqrt();
        let gs = superposition(3, 1, 1, &[(&[1, 0, 0], a), (&[0, 1, 0], a), (&[0, 0, 1], a)]);
        let g = ggm(&gs, GgmScope::All).unwrap();
        assert!((g.value - 1.0 / 3.0).abs() < 1e-12);
        // All three canonical cuts tie at λ² = 2/3; the smallest mask wins.
        assert_eq!(g.argmax.mask(), 0b001);
    }

    #[test]
    fn product_state_ggm_zero() {
        let gs = fock_state(5, 3, 1, &[1, 1, 0, 1, 0]);
        let g = ggm(&gs, GgmScope::All).unwrap();
        assert!(g.value <= 1e-10);
        assert!((g.lambda_max_sq - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn perfect_dimer_half_chain_and_ggm() {
        let gs = perfect_dimer_m4();
        assert!(half_chain_entropy(&gs).unwrap() < 1e-12);
        let g = ggm(&gs, GgmScope::All).unwrap();
        assert!(g.value <= 1e-10);
        // {1,2} is the smallest product cut; {1} alone stays entangled.
        assert_eq!(g.argmax.mask(), 0b0011);
        let single = schmidt_spectrum(&gs, &Bipartition::from_mask(4, 1).unwrap()).unwrap();
        assert!((single.lambda_max_sq - 0.5).abs() < 1e-14);
    }

    #[test]
    fn central_dimer_cut_gives_ln2() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let gs = superposition(4, 1, 1, &[(&[0, 1, 0, 0], s), (&[0, 0, 1, 0], s)]);
        let e = half_chain_entropy(&gs).unwrap();
        assert!((e - std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn half_chain_needs_even_sites() {
        let gs = fock_state(5, 2, 1, &[1, 0, 1, 0, 0]);
        assert!(half_chain_entropy(&gs).is_err());
    }

    #[test]
    fn solved_state_spectra_are_normalized() {
        let basis = Arc::new(FockBasis::new(6, 3, 2).unwrap());
        let params = CouplingParams::soft(1.4, -1.0, 2.0, Boundary::Open, 2);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        for mask in [0b000001u64, 0b000111, 0b010101, 0b011010] {
            let p = Bipartition::from_mask(6, mask).unwrap();
            let s = schmidt_spectrum(&gs, &p).unwrap();
            let sum: f64 = s.eigenvalues.iter().sum();
            assert!((sum - 1.0).abs() < 1e-10);
            assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            assert!(s.eigenvalues.iter().all(|&ev| ev >= 0.0));
            assert!(s.entropy >= 0.0);
        }
    }

    #[test]
    fn complement_spectra_agree() {
        let basis = Arc::new(FockBasis::new(8, 4, 1).unwrap());
        let params = CouplingParams::hardcore(0.8, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        for mask in [0b0000_0001u64, 0b0001_0110, 0b0101_0101, 0b0000_1111] {
            let p = Bipartition::from_mask(8, mask).unwrap();
            let sa = schmidt_spectrum(&gs, &p).unwrap();
            let sb = schmidt_spectrum(&gs, &p.complement()).unwrap();
            let shared = sa.eigenvalues.len().min(sb.eigenvalues.len());
            for i in 0..shared {
                assert!((sa.eigenvalues[i] - sb.eigenvalues[i]).abs() < 1e-10);
            }
            for &extra in sa.eigenvalues[shared..]
                .iter()
                .chain(sb.eigenvalues[shared..].iter())
            {
                assert!(extra.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn iterative_top_singular_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let block = DMatrix::from_fn(80, 60, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let dense = top_squared_singular(&block, 512).unwrap();
        let iterative = top_squared_singular(&block, 1).unwrap();
        assert!(
            (dense - iterative).abs() <= 1e-11 * dense.max(1.0),
            "dense {dense} vs iterative {iterative}"
        );
        let real_block = block.map(|z| Complex64::new(z.re, 0.0));
        let dense_r = top_squared_singular(&real_block, 512).unwrap();
        let iterative_r = top_squared_singular(&real_block, 1).unwrap();
        assert!((dense_r - iterative_r).abs() <= 1e-11 * dense_r.max(1.0));
    }

    #[test]
    fn enumeration_ceiling() {
        let gs = fock_state(6, 3, 1, &[1, 0, 1, 0, 1, 0]);
        let err = ggm_with_ceiling(&gs, GgmScope::All, 4).unwrap_err();
        assert!(err.to_string().contains("contiguous"));
        assert!(ggm_with_ceiling(&gs, GgmScope::ContiguousParity, 4).is_ok());
        assert!(ggm_with_ceiling(&gs, GgmScope::All, 6).is_ok());
    }

    #[test]
    fn restricted_mask_set() {
        let masks = contiguous_parity_masks(6);
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        let full = 0b111111u64;
        for &mask in &masks {
            assert!(mask & 1 == 1, "canonical masks hold site 1: {mask:#b}");
            assert!(mask != 0 && mask != full);
        }
        // prefixes
        for j in 1..6 {
            assert!(masks.contains(&((1u64 << j) - 1)));
        }
        // complement of the interior segment {2,3}
        assert!(masks.contains(&0b111001));
        // parity split
        assert!(masks.contains(&0b010101));
        // strictly smaller than full enumeration
        assert!(masks.len() < all_canonical_masks(6).len());
    }

    #[test]
    fn restricted_scope_matches_full_on_contiguous_argmax() {
        let basis = Arc::new(FockBasis::new(8, 4, 1).unwrap());
        let params = CouplingParams::hardcore(2.0, -1.0, Boundary::Open);
        let h = build_hamiltonian(&basis, &params).unwrap();
        let gs = ground_state(&h, &basis, &SolverOptions::default()).unwrap();
        let all = ggm(&gs, GgmScope::All).unwrap();
        let restricted = ggm(&gs, GgmScope::ContiguousParity).unwrap();
        assert!(restricted.lambda_max_sq <= all.lambda_max_sq + 1e-12);
        if contiguous_parity_masks(8).contains(&all.argmax.mask()) {
            assert!((restricted.value - all.value).abs() < 1e-12);
            assert_eq!(restricted.argmax.mask(), all.argmax.mask());
        }
    }

    #[test]
    fn mismatched_partition_rejected() {
        let gs = fock_state(4, 2, 1, &[1, 0, 1, 0]);
        let p = Bipartition::from_sites(6, &[1, 2]).unwrap();
        assert!(schmidt_spectrum(&gs, &p).is_err());
    }
}
