use std::sync::Arc;

use rustfft::{num_complex::Complex64, Fft, FftPlanner};

use crate::{Error, Result};

/// Sign class of a wavenumber in the real trigonometric basis.
///
/// `Plus` means `k` lies in the upper half-lattice (`k2 > 0`, or `k2 = 0 and
/// k1 > 0`) and carries the `sin<k,x>` basis function; `Minus` is the mirror
/// set carrying `cos<k,x>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSign {
    Plus,
    Minus,
}

/// Returns true when `k` belongs to the upper half-lattice.
#[inline]
pub fn is_plus(k: [i32; 2]) -> bool {
    k[1] > 0 || (k[1] == 0 && k[0] > 0)
}

/// `k -> k^perp = (-k2, k1)`.
#[inline]
pub fn perp(k: [i32; 2]) -> [i32; 2] {
    [-k[1], k[0]]
}

/// Hot-loop table entry for one `(sin, cos)` pair at `k` in the upper
/// half-lattice: coefficient slots and physical-grid spectrum slots for both
/// `k` and `-k`.
#[derive(Debug, Clone, Copy)]
pub struct PlusMode {
    pub k: [i32; 2],
    pub ksq: f64,
    /// Coefficient index of the `sin<k,x>` mode (entry `k`).
    pub sin_idx: usize,
    /// Coefficient index of the `cos<k,x>` mode (entry `-k`).
    pub cos_idx: usize,
    /// Row-major index of wavenumber `k` on the FFT grid.
    pub grid_plus: usize,
    /// Row-major index of wavenumber `-k` on the FFT grid.
    pub grid_minus: usize,
}

/// Truncated wavenumber lattice `{k in Z^2 \ {0} : |k|_inf <= n_g}` with the
/// real basis bookkeeping and shared FFT plans for the dealiased physical
/// grid.
///
/// Storage geometry uses the sup-norm cutoff (FFT alignment); analytic
/// projections and norms use the Euclidean `|k|`.
pub struct Lattice {
    n_g: usize,
    m: usize,
    entries: Vec<[i32; 2]>,
    ksq: Vec<f64>,
    /// Dense map from `(k1 + n_g) * (2 n_g + 1) + (k2 + n_g)` to entry index.
    index: Vec<i32>,
    plus_modes: Vec<PlusMode>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("n_g", &self.n_g)
            .field("m", &self.m)
            .field("dim", &self.entries.len())
            .finish()
    }
}

/// Smallest 5-smooth integer `>= x` (sizes rustfft handles efficiently).
fn next_fast_fft(x: usize) -> usize {
    let mut m = x;
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r % p == 0 {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}

impl Lattice {
    /// Builds the lattice with cutoff `n_g >= 1`. The physical grid is the
    /// smallest FFT-friendly size `m >= 3 n_g + 1`, which keeps quadratic
    /// products alias-free on the retained modes (2/3-rule).
    pub fn new(n_g: usize) -> Result<Arc<Self>> {
        if n_g == 0 {
            return Err(Error::InvalidParameter {
                name: "n_g",
                reason: "lattice cutoff must be positive".into(),
            });
        }
        let m = next_fast_fft(3 * n_g + 1);
        let side = 2 * n_g as i32 + 1;
        let mut entries = Vec::new();
        // Fixed deterministic order: k2 major, then k1.
        for k2 in -(n_g as i32)..=n_g as i32 {
            for k1 in -(n_g as i32)..=n_g as i32 {
                if k1 == 0 && k2 == 0 {
                    continue;
                }
                entries.push([k1, k2]);
            }
        }
        let mut index = vec![-1i32; (side * side) as usize];
        for (i, k) in entries.iter().enumerate() {
            let slot = (k[0] + n_g as i32) * side + (k[1] + n_g as i32);
            index[slot as usize] = i as i32;
        }
        let ksq: Vec<f64> = entries
            .iter()
            .map(|k| (k[0] * k[0] + k[1] * k[1]) as f64)
            .collect();

        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(m);
        let inv = planner.plan_fft_inverse(m);

        let mut lattice = Lattice {
            n_g,
            m,
            entries,
            ksq,
            index,
            plus_modes: Vec::new(),
            fwd,
            inv,
        };
        let plus_modes = lattice
            .entries
            .iter()
            .filter(|&&k| is_plus(k))
            .map(|&k| {
                let km = [-k[0], -k[1]];
                PlusMode {
                    k,
                    ksq: (k[0] * k[0] + k[1] * k[1]) as f64,
                    sin_idx: lattice.entry(k).unwrap(),
                    cos_idx: lattice.entry(km).unwrap(),
                    grid_plus: lattice.grid_index(k),
                    grid_minus: lattice.grid_index(km),
                }
            })
            .collect();
        lattice.plus_modes = plus_modes;
        Ok(Arc::new(lattice))
    }

    /// Sup-norm cutoff of the lattice.
    pub fn cutoff(&self) -> usize {
        self.n_g
    }

    /// Number of real degrees of freedom (lattice entries).
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Physical FFT grid size per axis.
    pub fn grid_size(&self) -> usize {
        self.m
    }

    /// All lattice wavenumbers in storage order.
    pub fn entries(&self) -> &[[i32; 2]] {
        &self.entries
    }

    /// `|k|^2` per entry, aligned with `entries`.
    pub fn ksq(&self) -> &[f64] {
        &self.ksq
    }

    /// Upper half-lattice table (one row per `sin`/`cos` pair).
    pub fn plus_modes(&self) -> &[PlusMode] {
        &self.plus_modes
    }

    /// Entry index of wavenumber `k`, if on the lattice.
    pub fn entry(&self, k: [i32; 2]) -> Option<usize> {
        let n = self.n_g as i32;
        if k[0].abs() > n || k[1].abs() > n || (k[0] == 0 && k[1] == 0) {
            return None;
        }
        let side = 2 * n + 1;
        let slot = (k[0] + n) * side + (k[1] + n);
        let i = self.index[slot as usize];
        (i >= 0).then_some(i as usize)
    }

    /// Basis sign of entry `i`.
    pub fn sign(&self, i: usize) -> ModeSign {
        if is_plus(self.entries[i]) {
            ModeSign::Plus
        } else {
            ModeSign::Minus
        }
    }

    /// Row-major spectrum index of wavenumber `k` on the `m x m` grid.
    #[inline]
    pub fn grid_index(&self, k: [i32; 2]) -> usize {
        let m = self.m as i32;
        let i1 = k[0].rem_euclid(m) as usize;
        let i2 = k[1].rem_euclid(m) as usize;
        i2 * self.m + i1
    }

    pub(crate) fn fft_forward(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.fwd.process_with_scratch(buf, scratch);
    }

    pub(crate) fn fft_inverse(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.inv.process_with_scratch(buf, scratch);
    }

    pub(crate) fn fft_scratch_len(&self) -> usize {
        self.fwd
            .get_inplace_scratch_len()
            .max(self.inv.get_inplace_scratch_len())
    }

    /// Checks that `n <= n_g` for projections.
    pub fn check_cutoff(&self, n: usize) -> Result<()> {
        if n > self.n_g {
            Err(Error::CutoffTooLarge {
                requested: n,
                lattice: self.n_g,
            })
        } else {
            Ok(())
        }
    }
}

/// Two lattices are interchangeable when they were built with the same
/// cutoff; fields reference lattices through `Arc`, so pointer equality is
/// the common fast path.
pub fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || a.n_g == b.n_g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_lattice_partition_matches_definition() {
        let lat = Lattice::new(3).unwrap();
        for &k in lat.entries() {
            let plus = is_plus(k);
            let minus_of_neg = is_plus([-k[0], -k[1]]);
            assert!(plus != minus_of_neg, "exactly one of k, -k is plus: {k:?}");
        }
        assert!(is_plus([1, 0]));
        assert!(is_plus([0, 1]));
        assert!(is_plus([-3, 1]));
        assert!(!is_plus([-1, 0]));
        assert!(!is_plus([0, -1]));
    }

    #[test]
    fn every_k_appears_once_and_origin_excluded() {
        let n = 4usize;
        let lat = Lattice::new(n).unwrap();
        assert_eq!(lat.dim(), (2 * n + 1) * (2 * n + 1) - 1);
        assert!(lat.entry([0, 0]).is_none());
        let mut seen = std::collections::HashSet::new();
        for &k in lat.entries() {
            assert!(seen.insert(k), "duplicate {k:?}");
            assert!(k[0].abs() as usize <= n && k[1].abs() as usize <= n);
        }
    }

    #[test]
    fn perp_map() {
        assert_eq!(perp([1, 0]), [0, 1]);
        assert_eq!(perp([2, 3]), [-3, 2]);
    }

    #[test]
    fn grid_is_alias_free_for_products() {
        for n_g in [1, 4, 8, 16, 32] {
            let lat = Lattice::new(n_g).unwrap();
            assert!(lat.grid_size() >= 3 * n_g + 1);
        }
    }
}
