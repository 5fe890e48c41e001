//! Particle-number-conserving bosonic Fock space with a per-site occupation cap.
//!
//! Configurations are ordered ascending-lexicographically with site 1 most
//! significant; this order is fixed because sparse-matrix layouts and
//! regression files depend on it. Ranking and unranking run in O(M) using
//! precomputed counting tables over (sites remaining, particles remaining).

use crate::{Error, Result};

/// Occupation-number configuration: `occupations()[i]` is the boson count on
/// site `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockConfig(Vec<u8>);

impl FockConfig {
    pub fn new(occupations: Vec<u8>) -> Self {
        FockConfig(occupations)
    }

    pub fn occupations(&self) -> &[u8] {
        &self.0
    }

    /// Boson count on 1-based `site`.
    pub fn occupation(&self, site: usize) -> u8 {
        self.0[site - 1]
    }

    pub fn site_count(&self) -> usize {
        self.0.len()
    }

    pub fn particle_count(&self) -> usize {
        self.0.iter().map(|&o| o as usize).sum()
    }
}

impl std::fmt::Display for FockConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// Complete ordered basis of all occupation configurations with `N` particles
/// on `M` sites, each site holding at most `n_max` bosons.
///
/// Immutable after construction; safe to share across threads.
pub struct FockBasis {
    m: usize,
    n: usize,
    n_max: u8,
    /// Flat row-major storage of all configurations, `dimension * m` entries.
    occ: Vec<u8>,
    /// `counts[s][p]`: number of ways to place `p` particles on `s` sites.
    counts: Vec<Vec<u64>>,
    dim: usize,
}

impl std::fmt::Debug for FockBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockBasis")
            .field("M", &self.m)
            .field("N", &self.n)
            .field("n_max", &self.n_max)
            .field("dimension", &self.dim)
            .finish()
    }
}

/// Hard cap on stored basis size; beyond this the flat occupation table would
/// not fit in sane memory and callers should restrict the sector instead.
const MAX_DIMENSION: u64 = 200_000_000;

/// Default soft-core occupation cap: `min(N, 5)`. Results at half filling are
/// converged in the cap well before 5 for the couplings in scope; a fixed
/// documented default keeps runs reproducible. Hard-core mode forces 1.
pub fn default_soft_cap(n: usize) -> u8 {
    n.clamp(1, 5) as u8
}

impl FockBasis {
    /// Enumerates the full basis. Requires `M >= 2`, `n_max >= 1` and
    /// feasibility `N <= M * n_max`.
    pub fn new(m: usize, n: usize, n_max: u8) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidBasis(format!("need at least 2 sites, got {m}")));
        }
        Self::build(m, n, n_max)
    }

    /// Enumerates a single-block sub-basis used for bipartition factors;
    /// unlike [`FockBasis::new`] this accepts `M >= 1`.
    pub(crate) fn new_subsystem(m: usize, n: usize, n_max: u8) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidBasis("need at least 1 site".into()));
        }
        Self::build(m, n, n_max)
    }

    fn build(m: usize, n: usize, n_max: u8) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidBasis(format!("occupation cap must be >= 1, got {n_max}")));
        }
        if n > m * n_max as usize {
            return Err(Error::InvalidBasis(format!(
                "infeasible sector: {n} particles on {m} sites with cap {n_max}"
            )));
        }
        let counts = counting_tables(m, n, n_max);
        let dim64 = counts[m][n];
        if dim64 > MAX_DIMENSION {
            return Err(Error::InvalidBasis(format!(
                "basis dimension {dim64} exceeds supported maximum {MAX_DIMENSION}"
            )));
        }
        let dim = dim64 as usize;

        let mut occ = Vec::with_capacity(dim * m);
        let mut config = vec![0u8; m];
        enumerate_rec(m, n, n_max, 0, &mut config, &mut occ);
        debug_assert_eq!(occ.len(), dim * m);

        Ok(FockBasis { m, n, n_max, occ, counts, dim })
    }

    pub fn site_count(&self) -> usize {
        self.m
    }

    pub fn particle_count(&self) -> usize {
        self.n
    }

    pub fn occupation_cap(&self) -> u8 {
        self.n_max
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Occupation slice of the configuration at `index` (no copy).
    pub fn occ_slice(&self, index: usize) -> &[u8] {
        &self.occ[index * self.m..(index + 1) * self.m]
    }

    /// Iterator over all configurations as occupation slices, in basis order.
    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.occ.chunks_exact(self.m)
    }

    /// Combinatorial rank of `config` in the basis order, O(M).
    pub fn rank(&self, config: &FockConfig) -> Result<usize> {
        self.rank_slice(config.occupations())
    }

    pub(crate) fn rank_slice(&self, occ: &[u8]) -> Result<usize> {
        if occ.len() != self.m {
            return Err(Error::ConfigNotInBasis(format!(
                "configuration has {} sites, basis has {}",
                occ.len(),
                self.m
            )));
        }
        let mut remaining = self.n;
        let mut index = 0u64;
        for (site, &o) in occ.iter().enumerate() {
            if o > self.n_max {
                return Err(Error::ConfigNotInBasis(format!(
                    "occupation {o} on site {} exceeds cap {}",
                    site + 1,
                    self.n_max
                )));
            }
            let o = o as usize;
            if o > remaining {
                return Err(Error::ConfigNotInBasis(format!(
                    "configuration holds more than {} particles",
                    self.n
                )));
            }
            let sites_left = self.m - site - 1;
            for k in 0..o {
                index += self.counts[sites_left][remaining - k];
            }
            remaining -= o;
        }
        if remaining != 0 {
            return Err(Error::ConfigNotInBasis(format!(
                "configuration holds fewer than {} particles",
                self.n
            )));
        }
        Ok(index as usize)
    }

    /// Inverse of [`FockBasis::rank`], O(M).
    pub fn unrank(&self, index: usize) -> Result<FockConfig> {
        if index >= self.dim {
            return Err(Error::IndexOutOfRange { index, dim: self.dim });
        }
        let mut rem_index = index as u64;
        let mut remaining = self.n;
        let mut occ = vec![0u8; self.m];
        for site in 0..self.m {
            let sites_left = self.m - site - 1;
            let cap = (self.n_max as usize).min(remaining);
            let mut chosen = cap;
            for k in 0..=cap {
                let block = self.counts[sites_left][remaining - k];
                if rem_index < block {
                    chosen = k;
                    break;
                }
                rem_index -= block;
            }
            occ[site] = chosen as u8;
            remaining -= chosen;
        }
        debug_assert_eq!(remaining, 0);
        Ok(FockConfig(occ))
    }
}

/// `counts[s][p]` for `s <= m`, `p <= n`: compositions of `p` into `s` parts,
/// each part at most `n_max`. Checked u64 arithmetic; panics are impossible
/// below `MAX_DIMENSION`-scale sectors because the table entries bound the
/// basis dimension.
fn counting_tables(m: usize, n: usize, n_max: u8) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; n + 1]; m + 1];
    counts[0][0] = 1;
    for s in 1..=m {
        for p in 0..=n {
            let mut total: u64 = 0;
            for k in 0..=(n_max as usize).min(p) {
                total = total
                    .checked_add(counts[s - 1][p - k])
                    .expect("basis counting overflowed u64");
            }
            counts[s][p] = total;
        }
    }
    counts
}

fn enumerate_rec(m: usize, remaining: usize, n_max: u8, site: usize, config: &mut [u8], out: &mut Vec<u8>) {
    if site == m {
        if remaining == 0 {
            out.extend_from_slice(config);
        }
        return;
    }
    let sites_left = m - site - 1;
    for o in 0..=(n_max as usize).min(remaining) {
        // Prune branches that cannot absorb the remaining particles.
        if remaining - o > sites_left * n_max as usize {
            continue;
        }
        config[site] = o as u8;
        enumerate_rec(m, remaining - o, n_max, site + 1, config, out);
    }
    config[site] = 0;
}
