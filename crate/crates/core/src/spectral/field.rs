use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lattice::{same_lattice, Lattice};
use crate::{Error, Result};

/// Mean-zero scalar field on the torus, stored as real coefficients in the
/// orthonormal trigonometric basis of the truncated lattice.
///
/// The coefficient vector doubles as the state `w_t` and as direction
/// vectors (`xi`, `phi`, `psi`, `rho`) for the variational solvers.
#[derive(Clone)]
pub struct VorticityField {
    lattice: Arc<Lattice>,
    coeffs: Vec<f64>,
}

impl std::fmt::Debug for VorticityField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VorticityField")
            .field("lattice", &self.lattice)
            .field("l2", &self.norm(0.0))
            .finish()
    }
}

/// Divergence-free velocity recovered from vorticity; a pair of scalar
/// spectral fields on the same lattice.
#[derive(Clone, Debug)]
pub struct VelocityField {
    pub x: VorticityField,
    pub y: VorticityField,
}

impl VorticityField {
    pub fn zero(lattice: &Arc<Lattice>) -> Self {
        VorticityField {
            lattice: lattice.clone(),
            coeffs: vec![0.0; lattice.dim()],
        }
    }

    pub fn from_coeffs(lattice: &Arc<Lattice>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != lattice.dim() {
            return Err(Error::DimensionMismatch {
                expected: lattice.dim(),
                got: coeffs.len(),
            });
        }
        Ok(VorticityField {
            lattice: lattice.clone(),
            coeffs,
        })
    }

    /// Single basis mode `e_k` (unit coefficient).
    pub fn basis_mode(lattice: &Arc<Lattice>, k: [i32; 2]) -> Result<Self> {
        let idx = lattice.entry(k).ok_or(Error::CutoffTooLarge {
            requested: k[0].unsigned_abs().max(k[1].unsigned_abs()) as usize,
            lattice: lattice.cutoff(),
        })?;
        let mut f = Self::zero(lattice);
        f.coeffs[idx] = 1.0;
        Ok(f)
    }

    /// Gaussian random field with coefficient standard deviation
    /// `amp * (1 + |k|^2)^(-decay/2)`.
    pub fn random<R: Rng + ?Sized>(
        lattice: &Arc<Lattice>,
        amp: f64,
        decay: f64,
        rng: &mut R,
    ) -> Self {
        let mut f = Self::zero(lattice);
        for (i, c) in f.coeffs.iter_mut().enumerate() {
            let scale = amp * (1.0 + lattice.ksq()[i]).powf(-decay / 2.0);
            *c = scale * rng.sample::<f64, _>(rand_distr::StandardNormal);
        }
        f
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Weighted norm `||w||_alpha = (sum |k|^(2 alpha) w_k^2)^(1/2)`;
    /// `alpha = 0` is the `H` (L^2) norm.
    pub fn norm(&self, alpha: f64) -> f64 {
        self.norm_sq(alpha).sqrt()
    }

    /// Squared weighted norm.
    pub fn norm_sq(&self, alpha: f64) -> f64 {
        let ksq = self.lattice.ksq();
        if alpha == 0.0 {
            self.coeffs.iter().map(|c| c * c).sum()
        } else if alpha == 1.0 {
            self.coeffs
                .iter()
                .zip(ksq)
                .map(|(c, &k2)| k2 * c * c)
                .sum()
        } else {
            self.coeffs
                .iter()
                .zip(ksq)
                .map(|(c, &k2)| k2.powf(alpha) * c * c)
                .sum()
        }
    }

    /// L^2 inner product (the basis is orthonormal).
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert!(same_lattice(&self.lattice, &other.lattice));
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&mut self, s: f64) {
        for c in &mut self.coeffs {
            *c *= s;
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        debug_assert!(same_lattice(&self.lattice, &other.lattice));
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.scale(s);
        out
    }

    /// Checks both fields live on compatible lattices.
    pub fn check_same_lattice(&self, other: &Self) -> Result<()> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }
}

/// Flat serialization row: `(k1, k2, tag, coefficient)`.
///
/// `tag` is `"+"` for sin modes (upper half-lattice) and `"-"` for cos
/// modes.
#[derive(Debug, Serialize, Deserialize)]
pub struct CoeffRow {
    pub k1: i32,
    pub k2: i32,
    pub tag: char,
    pub coeff: f64,
}

/// Lattice metadata header accompanying serialized fields.
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldHeader {
    pub cutoff: usize,
    pub dim: usize,
}

impl VorticityField {
    pub fn to_rows(&self) -> Vec<CoeffRow> {
        self.lattice
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &k)| CoeffRow {
                k1: k[0],
                k2: k[1],
                tag: if super::lattice::is_plus(k) { '+' } else { '-' },
                coeff: self.coeffs[i],
            })
            .collect()
    }

    pub fn header(&self) -> FieldHeader {
        FieldHeader {
            cutoff: self.lattice.cutoff(),
            dim: self.lattice.dim(),
        }
    }

    pub fn from_rows(lattice: &Arc<Lattice>, rows: &[CoeffRow]) -> Result<Self> {
        let mut f = Self::zero(lattice);
        for row in rows {
            let idx = lattice.entry([row.k1, row.k2]).ok_or(Error::Config(format!(
                "wavenumber ({}, {}) outside lattice",
                row.k1, row.k2
            )))?;
            f.coeffs[idx] = row.coeff;
        }
        Ok(f)
    }
}
