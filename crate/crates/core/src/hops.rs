//! Shared single-hop operator application used by observable modules.

use num_complex::Complex64;

use crate::fock::FockBasis;

/// In-place `out += scale * (b†_to b_from) v` for the hop `b†_to b_from`
/// (1-based sites, `to != from`). Moves that would exceed the occupation cap
/// or drain an empty site contribute nothing; accumulation lets callers build
/// bond combinations without extra allocations.
pub(crate) fn accumulate_hop(
    basis: &FockBasis,
    v: &[Complex64],
    to: usize,
    from: usize,
    scale: Complex64,
    out: &mut [Complex64],
) {
    let m = basis.site_count();
    let cap = basis.occupation_cap();
    let mut moved = vec![0u8; m];
    for (s, occ) in basis.iter().enumerate() {
        let a = v[s];
        if a == Complex64::ZERO {
            continue;
        }
        let n_from = occ[from - 1];
        let n_to = occ[to - 1];
        if n_from == 0 || n_to >= cap {
            continue;
        }
        moved.copy_from_slice(occ);
        moved[from - 1] -= 1;
        moved[to - 1] += 1;
        let t = basis
            .rank_slice(&moved)
            .expect("single-hop target stays inside the number-conserving basis");
        let weight = ((n_from as f64) * (n_to as f64 + 1.0)).sqrt();
        out[t] += scale * weight * a;
    }
}
