//! Sparse Hamiltonian assembly for the one-dimensional Bose-Hubbard chain
//!
//!   H = -t1 Σ_⟨ij⟩ (b†_i b_j + h.c.) - t2 Σ_⟨⟨ij⟩⟩ (b†_i b_j + h.c.)
//!       + (U/2) Σ_i n_i (n_i - 1)
//!
//! over a [`FockBasis`] sector, with open or periodic boundaries and an
//! optional hard-core constraint. In the hard-core limit the model maps onto
//! the spin-1/2 XX chain with exchanges J1 = -2 t1, J2 = -2 t2.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::fock::FockBasis;
use crate::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Boundary {
    Open,
    Periodic,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Open => write!(f, "open"),
            Boundary::Periodic => write!(f, "periodic"),
        }
    }
}

/// Model parameters. `hardcore` implies `n_max == 1` (checked by
/// [`CouplingParams::validate`]).
#[derive(Copy, Clone, Debug)]
pub struct CouplingParams {
    /// Nearest-neighbor hopping amplitude.
    pub t1: f64,
    /// Next-nearest-neighbor hopping amplitude.
    pub t2: f64,
    /// Onsite interaction strength.
    pub u: f64,
    pub boundary: Boundary,
    pub hardcore: bool,
    /// Per-site occupation cap; must match the basis it is used with.
    pub n_max: u8,
}

impl CouplingParams {
    pub fn hardcore(t1: f64, t2: f64, boundary: Boundary) -> Self {
        CouplingParams { t1, t2, u: 0.0, boundary, hardcore: true, n_max: 1 }
    }

    pub fn soft(t1: f64, t2: f64, u: f64, boundary: Boundary, n_max: u8) -> Self {
        CouplingParams { t1, t2, u, boundary, hardcore: false, n_max }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("t1", self.t1), ("t2", self.t2), ("U", self.u)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameters(format!("{name} must be finite, got {v}")));
            }
        }
        if self.hardcore && self.n_max != 1 {
            return Err(Error::InvalidParameters(format!(
                "hardcore mode forces n_max = 1, got {}",
                self.n_max
            )));
        }
        if self.n_max < 1 {
            return Err(Error::InvalidParameters("n_max must be >= 1".into()));
        }
        Ok(())
    }
}

/// Exchange couplings of the equivalent spin-1/2 XX chain in the hard-core
/// limit: J1 = -2 t1, J2 = -2 t2.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct SpinCouplings {
    pub j1: f64,
    pub j2: f64,
}

pub fn hardcore_spin_couplings(params: &CouplingParams) -> SpinCouplings {
    SpinCouplings { j1: -2.0 * params.t1, j2: -2.0 * params.t2 }
}

/// Hermitian-capable sparse matrix in CSR layout.
///
/// Immutable after assembly. [`SparseOperator::apply`] is pure, parallelized
/// over output rows, and byte-deterministic regardless of worker count
/// (each row is reduced sequentially).
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<Complex64>,
    hermitian: bool,
}

impl SparseOperator {
    /// Builds from (row, col, value) triplets: validates indices, sorts,
    /// merges duplicates, and drops exact zeros.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
        hermitian: bool,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, u32, Complex64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::DimensionMismatch(format!(
                    "triplet ({r},{c}) outside dimension {dim}"
                )));
            }
            entries.push((r, c as u32, v));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_ptr = vec![0usize; dim + 1];
        let mut col = Vec::with_capacity(entries.len());
        let mut val: Vec<Complex64> = Vec::with_capacity(entries.len());
        let mut rows = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if let (Some(&lr), Some(&lc)) = (rows.last(), col.last()) {
                if lr == r && lc == c {
                    *val.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            col.push(c);
            val.push(v);
        }
        // Drop merged entries that cancelled to exactly zero.
        let mut k = 0;
        while k < val.len() {
            if val[k] == Complex64::new(0.0, 0.0) {
                rows.remove(k);
                col.remove(k);
                val.remove(k);
            } else {
                k += 1;
            }
        }
        for &r in &rows {
            row_ptr[r + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(SparseOperator { dim, row_ptr, col, val, hermitian })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    /// Iterates stored entries as (row, col, value), row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.col[k] as usize, self.val[k]))
        })
    }

    /// Stored value at (row, col), or zero if absent. O(log row_nnz).
    pub fn get(&self, row: usize, colv: usize) -> Complex64 {
        let lo = self.row_ptr[row];
        let hi = self.row_ptr[row + 1];
        match self.col[lo..hi].binary_search(&(colv as u32)) {
            Ok(k) => self.val[lo + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Matrix-vector product. Errors on length mismatch.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs operator dimension {}",
                v.len(),
                self.dim
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        out.par_iter_mut().enumerate().for_each(|(r, o)| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.val[k] * v[self.col[k] as usize];
            }
            *o = acc;
        });
        Ok(out)
    }

    /// Max |A[i,j] - conj(A[j,i])| over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect = 0.0f64;
        for (r, c, v) in self.entries() {
            let vt = self.get(c, r);
            defect = defect.max((v - vt.conj()).norm());
        }
        defect
    }

    /// Dense copy; intended for small cross-check paths only.
    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut m = nalgebra::DMatrix::from_element(self.dim, self.dim, Complex64::new(0.0, 0.0));
        for (r, c, v) in self.entries() {
            m[(r, c)] += v;
        }
        m
    }
}

type BondList = Vec<(usize, usize)>;

/// NN and NNN bond lists as 1-based site pairs. Periodic boundaries require
/// M >= 5: below that the NNN wraparound duplicates or self-connects bonds.
fn bonds(m: usize, boundary: Boundary) -> Result<(BondList, BondList)> {
    let mut nn: BondList = (1..m).map(|i| (i, i + 1)).collect();
    let mut nnn: BondList = (1..m.saturating_sub(1)).map(|i| (i, i + 2)).collect();
    if boundary == Boundary::Periodic {
        if m < 5 {
            return Err(Error::InvalidParameters(format!(
                "periodic boundaries need at least 5 sites, got {m}"
            )));
        }
        nn.push((m, 1));
        nnn.push((m - 1, 1));
        nnn.push((m, 2));
    }
    Ok((nn, nnn))
}

/// Assembles the Hamiltonian over `basis`. The hopping element between
/// configurations differing by one particle moved from site j to site i is
/// -t * sqrt(n_j (n_i + 1)) evaluated on the source configuration; moves that
/// would exceed the cap produce no entry. The diagonal is (U/2) Σ n_i(n_i-1).
pub fn build_hamiltonian(basis: &FockBasis, params: &CouplingParams) -> Result<SparseOperator> {
    params.validate()?;
    if params.n_max != basis.occupation_cap() {
        return Err(Error::InvalidParameters(format!(
            "params n_max {} does not match basis cap {}",
            params.n_max,
            basis.occupation_cap()
        )));
    }
    let m = basis.site_count();
    let (nn, nnn) = bonds(m, params.boundary)?;
    let mut hop_bonds: Vec<(usize, usize, f64)> = Vec::new();
    if params.t1 != 0.0 {
        hop_bonds.extend(nn.iter().map(|&(i, j)| (i, j, params.t1)));
    }
    if params.t2 != 0.0 {
        hop_bonds.extend(nnn.iter().map(|&(i, j)| (i, j, params.t2)));
    }

    let dim = basis.dimension();
    let cap = basis.occupation_cap();
    let u = params.u;

    // Row-parallel assembly: the row for source s holds the diagonal plus one
    // entry per allowed move out of s. Hermiticity is automatic because the
    // hopping weight is symmetric under move reversal.
    let rows: Vec<Vec<(u32, Complex64)>> = (0..dim)
        .into_par_iter()
        .map(|s| {
            let occ = basis.occ_slice(s);
            let mut row: Vec<(u32, Complex64)> = Vec::with_capacity(2 * hop_bonds.len() + 1);
            if u != 0.0 {
                let mut diag = 0.0;
                for &o in occ {
                    let o = o as f64;
                    diag += o * (o - 1.0);
                }
                if diag != 0.0 {
                    row.push((s as u32, Complex64::new(0.5 * u * diag, 0.0)));
                }
            }
            let mut moved = vec![0u8; m];
            for &(i, j, t) in &hop_bonds {
                for (to, from) in [(i, j), (j, i)] {
                    let n_from = occ[from - 1];
                    let n_to = occ[to - 1];
                    if n_from == 0 || n_to >= cap {
                        continue;
                    }
                    moved.copy_from_slice(occ);
                    moved[from - 1] -= 1;
                    moved[to - 1] += 1;
                    let tgt = basis
                        .rank_slice(&moved)
                        .expect("hop target stays inside the number-conserving basis");
                    let w = -t * ((n_from as f64) * (n_to as f64 + 1.0)).sqrt();
                    row.push((tgt as u32, Complex64::new(w, 0.0)));
                }
            }
            row.sort_by_key(|&(c, _)| c);
            row
        })
        .collect();

    let nnz = rows.iter().map(|r| r.len()).sum();
    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut col = Vec::with_capacity(nnz);
    let mut val = Vec::with_capacity(nnz);
    row_ptr.push(0);
    for row in rows {
        let mut prev: Option<u32> = None;
        for (c, v) in row {
            if prev == Some(c) {
                let last: &mut Complex64 = val.last_mut().unwrap();
                *last += v;
            } else {
                col.push(c);
                val.push(v);
                prev = Some(c);
            }
        }
        row_ptr.push(col.len());
    }
    Ok(SparseOperator { dim, row_ptr, col, val, hermitian: true })
}
