//! Spectral operators: Biot-Savart, derivatives, projections, the dealiased
//! bilinear term and its linearization/adjoint kernels.
//!
//! Coefficient-space transfer rules in the orthonormal real basis (with
//! `k` in the upper half-lattice, `k_perp = (-k2, k1)`):
//!
//! * `K (a sin_k) = -a k_perp / |k|^2 cos_k`, `K (a cos_k) = +a k_perp / |k|^2 sin_k`
//! * `d_j (a sin_k) = a k_j cos_k`, `d_j (a cos_k) = -a k_j sin_k`
//!
//! All quadratic terms go through the alias-free grid in divergence form
//! `B(u, w) = -(u . grad) w = -div(u w)` (valid since every velocity here is
//! divergence-free), so the computed coefficients are the exact Galerkin
//! projection and skew-symmetry holds to round-off.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::engine::{grids_from_coeffs, store_from_complex, with_forward_pair, Workspace};
use super::field::{VelocityField, VorticityField};
use super::lattice::{perp, Lattice};
use crate::Result;

thread_local! {
    static WORKSPACES: RefCell<HashMap<usize, Workspace>> = RefCell::new(HashMap::new());
}

/// Runs `f` with this thread's FFT workspace for the lattice's grid size.
pub fn with_workspace<R>(lat: &Lattice, f: impl FnOnce(&mut Workspace) -> R) -> R {
    WORKSPACES.with(|cell| {
        let mut map = cell.borrow_mut();
        let ws = map
            .entry(lat.grid_size())
            .or_insert_with(|| Workspace::new(lat));
        f(ws)
    })
}

/// Biot-Savart transfer on raw coefficients: writes the two velocity
/// component coefficient vectors.
pub fn biot_savart_coeffs(lat: &Lattice, w: &[f64], u1: &mut [f64], u2: &mut [f64]) {
    u1.fill(0.0);
    u2.fill(0.0);
    for pm in lat.plus_modes() {
        let kp = perp(pm.k);
        let f = 1.0 / pm.ksq;
        let (kp1, kp2) = (kp[0] as f64 * f, kp[1] as f64 * f);
        let a_sin = w[pm.sin_idx];
        let a_cos = w[pm.cos_idx];
        u1[pm.cos_idx] = -a_sin * kp1;
        u2[pm.cos_idx] = -a_sin * kp2;
        u1[pm.sin_idx] = a_cos * kp1;
        u2[pm.sin_idx] = a_cos * kp2;
    }
}

/// Partial derivative `d/dx_axis` on raw coefficients.
pub fn derivative_coeffs(lat: &Lattice, w: &[f64], axis: usize, out: &mut [f64]) {
    out.fill(0.0);
    for pm in lat.plus_modes() {
        let kj = pm.k[axis] as f64;
        out[pm.cos_idx] = w[pm.sin_idx] * kj;
        out[pm.sin_idx] = -w[pm.cos_idx] * kj;
    }
}

/// `u = K w`: divergence-free velocity with `curl u = w`.
pub fn biot_savart(w: &VorticityField) -> VelocityField {
    let lat = w.lattice();
    let mut c1 = vec![0.0; lat.dim()];
    let mut c2 = vec![0.0; lat.dim()];
    biot_savart_coeffs(lat, w.coeffs(), &mut c1, &mut c2);
    VelocityField {
        x: VorticityField::from_coeffs(lat, c1).expect("same lattice"),
        y: VorticityField::from_coeffs(lat, c2).expect("same lattice"),
    }
}

/// Which part of the spectrum `project` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectPart {
    /// `P_N`: modes with Euclidean `|k| <= N`.
    Low,
    /// `Q_N = I - P_N`.
    High,
}

/// Orthogonal projection `P_N` / `Q_N` by Euclidean wavenumber modulus.
pub fn project(w: &VorticityField, n: usize, part: ProjectPart) -> Result<VorticityField> {
    let lat = w.lattice();
    lat.check_cutoff(n)?;
    let mut out = w.clone();
    project_in_place(lat, out.coeffs_mut(), n, part);
    Ok(out)
}

pub fn project_in_place(lat: &Lattice, coeffs: &mut [f64], n: usize, part: ProjectPart) {
    let n2 = (n * n) as f64;
    for (c, &k2) in coeffs.iter_mut().zip(lat.ksq()) {
        let low = k2 <= n2;
        let keep = match part {
            ProjectPart::Low => low,
            ProjectPart::High => !low,
        };
        if !keep {
            *c = 0.0;
        }
    }
}

/// Physical grids of a state needed by the stepping kernels. `u1, u2` are
/// the Biot-Savart velocity; `w` the state itself (forward kernels);
/// `dw1, dw2` its gradient (adjoint kernels).
pub struct StateGrids {
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub w: Option<Vec<f64>>,
    pub dw1: Option<Vec<f64>>,
    pub dw2: Option<Vec<f64>>,
}

/// Scratch coefficient vectors reused across kernel calls.
pub struct KernelScratch {
    pub ca: Vec<f64>,
    pub cb: Vec<f64>,
    pub ga: Vec<f64>,
    pub gb: Vec<f64>,
    pub gc: Vec<f64>,
    pub gd: Vec<f64>,
}

impl KernelScratch {
    pub fn new(lat: &Lattice) -> Self {
        let d = lat.dim();
        let g = lat.grid_size() * lat.grid_size();
        KernelScratch {
            ca: vec![0.0; d],
            cb: vec![0.0; d],
            ga: vec![0.0; g],
            gb: vec![0.0; g],
            gc: vec![0.0; g],
            gd: vec![0.0; g],
        }
    }
}

impl StateGrids {
    /// Grids for forward (state / tangent) kernels: velocity pair and the
    /// state itself. Two complex FFTs.
    pub fn forward(lat: &Lattice, w: &[f64], sc: &mut KernelScratch, ws: &mut Workspace) -> Self {
        let g = ws.grid_len();
        let mut u1 = vec![0.0; g];
        let mut u2 = vec![0.0; g];
        let mut wg = vec![0.0; g];
        biot_savart_coeffs(lat, w, &mut sc.ca, &mut sc.cb);
        grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut u1, Some(&mut u2), ws);
        grids_from_coeffs(lat, w, None, &mut wg, None, ws);
        StateGrids {
            u1,
            u2,
            w: Some(wg),
            dw1: None,
            dw2: None,
        }
    }

    /// Grids for adjoint kernels: velocity pair and the state gradient.
    /// Two complex FFTs.
    pub fn adjoint(lat: &Lattice, w: &[f64], sc: &mut KernelScratch, ws: &mut Workspace) -> Self {
        let g = ws.grid_len();
        let mut u1 = vec![0.0; g];
        let mut u2 = vec![0.0; g];
        let mut d1 = vec![0.0; g];
        let mut d2 = vec![0.0; g];
        biot_savart_coeffs(lat, w, &mut sc.ca, &mut sc.cb);
        grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut u1, Some(&mut u2), ws);
        derivative_coeffs(lat, w, 0, &mut sc.ca);
        derivative_coeffs(lat, w, 1, &mut sc.cb);
        grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut d1, Some(&mut d2), ws);
        StateGrids {
            u1,
            u2,
            w: None,
            dw1: Some(d1),
            dw2: Some(d2),
        }
    }
}

/// Nonlinearity `N(w) = B(K w, w) = -div(u w)`, using precomputed forward
/// grids of the state. One forward FFT.
pub fn nonlinear_term(
    lat: &Lattice,
    grids: &StateGrids,
    sc: &mut KernelScratch,
    out: &mut [f64],
    ws: &mut Workspace,
) {
    let wg = grids.w.as_ref().expect("forward grids carry w");
    for i in 0..wg.len() {
        sc.ga[i] = grids.u1[i] * wg[i];
        sc.gb[i] = grids.u2[i] * wg[i];
    }
    let (ga, gb) = (&sc.ga, &sc.gb);
    with_forward_pair(lat, ga, gb, ws, |spec| {
        for pm in lat.plus_modes() {
            let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
            let c = Complex64::new(0.0, -1.0) * (pm.k[0] as f64 * a + pm.k[1] as f64 * b);
            store_from_complex(out, pm, c);
        }
    });
}

/// Linearized drift `B~(w, xi) = B(K w, xi) + B(K xi, w)`, using forward
/// grids of the frozen state. Three complex FFTs.
pub fn linearized_term(
    lat: &Lattice,
    grids: &StateGrids,
    xi: &[f64],
    sc: &mut KernelScratch,
    out: &mut [f64],
    ws: &mut Workspace,
) {
    let wg = grids.w.as_ref().expect("forward grids carry w");
    biot_savart_coeffs(lat, xi, &mut sc.ca, &mut sc.cb);
    grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut sc.ga, Some(&mut sc.gb), ws);
    grids_from_coeffs(lat, xi, None, &mut sc.gc, None, ws);
    for i in 0..wg.len() {
        let q1 = grids.u1[i] * sc.gc[i] + sc.ga[i] * wg[i];
        let q2 = grids.u2[i] * sc.gc[i] + sc.gb[i] * wg[i];
        sc.ga[i] = q1;
        sc.gb[i] = q2;
    }
    let (ga, gb) = (&sc.ga, &sc.gb);
    with_forward_pair(lat, ga, gb, ws, |spec| {
        for pm in lat.plus_modes() {
            let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
            let c = Complex64::new(0.0, -1.0) * (pm.k[0] as f64 * a + pm.k[1] as f64 * b);
            store_from_complex(out, pm, c);
        }
    });
}

/// Symmetric two-field driver `B(K f, g) + B(K g, f)` for the second
/// variation. Four complex FFTs.
pub fn symmetric_bilinear(
    lat: &Lattice,
    f: &[f64],
    g: &[f64],
    sc: &mut KernelScratch,
    out: &mut [f64],
    ws: &mut Workspace,
) {
    biot_savart_coeffs(lat, f, &mut sc.ca, &mut sc.cb);
    grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut sc.ga, Some(&mut sc.gb), ws);
    biot_savart_coeffs(lat, g, &mut sc.ca, &mut sc.cb);
    grids_from_coeffs(lat, &sc.ca, Some(&sc.cb), &mut sc.gc, Some(&mut sc.gd), ws);
    // grids of f and g themselves
    let glen = sc.ga.len();
    let mut fg = vec![0.0; glen];
    let mut gg = vec![0.0; glen];
    grids_from_coeffs(lat, f, Some(g), &mut fg, Some(&mut gg), ws);
    for i in 0..glen {
        let q1 = sc.ga[i] * gg[i] + sc.gc[i] * fg[i];
        let q2 = sc.gb[i] * gg[i] + sc.gd[i] * fg[i];
        sc.ga[i] = q1;
        sc.gb[i] = q2;
    }
    let (ga, gb) = (&sc.ga, &sc.gb);
    with_forward_pair(lat, ga, gb, ws, |spec| {
        for pm in lat.plus_modes() {
            let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
            let c = Complex64::new(0.0, -1.0) * (pm.k[0] as f64 * a + pm.k[1] as f64 * b);
            store_from_complex(out, pm, c);
        }
    });
}

/// Adjoint of the linearized drift:
/// `B~*(w) rho = div(u_w rho) - K*(rho grad w)`, satisfying
/// `<B~(w, xi), rho> = <xi, B~*(w) rho>`. Three complex FFTs with adjoint
/// grids of the frozen state.
pub fn linearized_adjoint_term(
    lat: &Lattice,
    grids: &StateGrids,
    rho: &[f64],
    sc: &mut KernelScratch,
    out: &mut [f64],
    ws: &mut Workspace,
) {
    let d1 = grids.dw1.as_ref().expect("adjoint grids carry dw");
    let d2 = grids.dw2.as_ref().expect("adjoint grids carry dw");
    grids_from_coeffs(lat, rho, None, &mut sc.ga, None, ws);
    let glen = sc.ga.len();
    for i in 0..glen {
        let r = sc.ga[i];
        sc.gb[i] = grids.u1[i] * r;
        sc.gc[i] = grids.u2[i] * r;
        sc.gd[i] = d1[i] * r;
        sc.ga[i] = d2[i] * r;
    }
    // First pair: (u1 rho, u2 rho) -> +div part.
    let mut div_part = vec![Complex64::default(); lat.plus_modes().len()];
    let (gb, gc) = (&sc.gb, &sc.gc);
    with_forward_pair(lat, gb, gc, ws, |spec| {
        for (j, pm) in lat.plus_modes().iter().enumerate() {
            let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
            div_part[j] = Complex64::new(0.0, 1.0) * (pm.k[0] as f64 * a + pm.k[1] as f64 * b);
        }
    });
    // Second pair: (rho d1 w, rho d2 w) -> -K* part, with
    // (K* F)(k) = i k_perp . F_hat / |k|^2.
    let (gd, ga) = (&sc.gd, &sc.ga);
    with_forward_pair(lat, gd, ga, ws, |spec| {
        for (j, pm) in lat.plus_modes().iter().enumerate() {
            let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
            let kp = perp(pm.k);
            let kstar = Complex64::new(0.0, 1.0)
                * (kp[0] as f64 * a + kp[1] as f64 * b)
                / pm.ksq;
            store_from_complex(out, pm, div_part[j] - kstar);
        }
    });
}

/// Galerkin bilinear term `B(u, w) = -(u . grad) w` for a divergence-free
/// velocity `u`, computed alias-free in divergence form.
pub fn bilinear_b(u: &VelocityField, w: &VorticityField) -> Result<VorticityField> {
    u.x.check_same_lattice(w)?;
    let lat = w.lattice();
    let mut out = VorticityField::zero(lat);
    with_workspace(lat, |ws| {
        let g = ws.grid_len();
        let mut u1 = vec![0.0; g];
        let mut u2 = vec![0.0; g];
        let mut wg = vec![0.0; g];
        grids_from_coeffs(lat, u.x.coeffs(), Some(u.y.coeffs()), &mut u1, Some(&mut u2), ws);
        grids_from_coeffs(lat, w.coeffs(), None, &mut wg, None, ws);
        for i in 0..g {
            u1[i] *= wg[i];
            u2[i] *= wg[i];
        }
        with_forward_pair(lat, &u1, &u2, ws, |spec| {
            for pm in lat.plus_modes() {
                let (a, b) = spec.unpack(pm.grid_plus, pm.grid_minus);
                let c =
                    Complex64::new(0.0, -1.0) * (pm.k[0] as f64 * a + pm.k[1] as f64 * b);
                store_from_complex(out.coeffs_mut(), pm, c);
            }
        });
    });
    Ok(out)
}

/// `B~(w, xi)` on fields (convenience wrapper over the kernel).
pub fn linearized_b(w: &VorticityField, xi: &VorticityField) -> Result<VorticityField> {
    w.check_same_lattice(xi)?;
    let lat = w.lattice();
    let mut out = VorticityField::zero(lat);
    with_workspace(lat, |ws| {
        let mut sc = KernelScratch::new(lat);
        let grids = StateGrids::forward(lat, w.coeffs(), &mut sc, ws);
        linearized_term(lat, &grids, xi.coeffs(), &mut sc, out.coeffs_mut(), ws);
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Lattice;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_field(lat: &Arc<Lattice>, seed: u64) -> VorticityField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VorticityField::random(lat, 1.0, 1.0, &mut rng)
    }

    #[test]
    fn biot_savart_zero_is_zero() {
        let lat = Lattice::new(4).unwrap();
        let u = biot_savart(&VorticityField::zero(&lat));
        assert_eq!(u.x.norm(0.0), 0.0);
        assert_eq!(u.y.norm(0.0), 0.0);
    }

    #[test]
    fn biot_savart_isometry() {
        let lat = Lattice::new(8).unwrap();
        let w = rand_field(&lat, 3);
        let u = biot_savart(&w);
        for alpha in [0.0, 0.5, 1.0, 2.0] {
            let ku = (u.x.norm_sq(alpha) + u.y.norm_sq(alpha)).sqrt();
            let wn = w.norm(alpha - 1.0);
            assert!(
                (ku - wn).abs() <= 1e-12 * wn.max(1.0),
                "alpha={alpha}: {ku} vs {wn}"
            );
        }
    }

    /// curl(K w) = w, evaluated by spectral differentiation.
    #[test]
    fn biot_savart_curl_recovers_vorticity() {
        let lat = Lattice::new(6).unwrap();
        for k in [[1, 0], [0, 1], [2, -1], [-3, 2]] {
            let w = VorticityField::basis_mode(&lat, k).unwrap();
            let u = biot_savart(&w);
            let mut d1u2 = vec![0.0; lat.dim()];
            let mut d2u1 = vec![0.0; lat.dim()];
            derivative_coeffs(&lat, u.y.coeffs(), 0, &mut d1u2);
            derivative_coeffs(&lat, u.x.coeffs(), 1, &mut d2u1);
            for i in 0..lat.dim() {
                let curl = d1u2[i] - d2u1[i];
                assert!(
                    (curl - w.coeffs()[i]).abs() < 1e-13,
                    "mode {k:?} entry {i}"
                );
            }
        }
        // And divergence-free: d1 u1 + d2 u2 = 0.
        let w = rand_field(&lat, 5);
        let u = biot_savart(&w);
        let mut d1 = vec![0.0; lat.dim()];
        let mut d2 = vec![0.0; lat.dim()];
        derivative_coeffs(&lat, u.x.coeffs(), 0, &mut d1);
        derivative_coeffs(&lat, u.y.coeffs(), 1, &mut d2);
        for i in 0..lat.dim() {
            assert!((d1[i] + d2[i]).abs() < 1e-13);
        }
    }

    /// Oracle: bilinear term by direct evaluation on a fine grid plus exact
    /// trapezoid (= spectral) quadrature of the projection integrals.
    #[test]
    fn bilinear_matches_direct_convolution_oracle() {
        let lat = Lattice::new(3).unwrap();
        let w = rand_field(&lat, 11);
        let z = rand_field(&lat, 12);
        let u = biot_savart(&z);
        let b = bilinear_b(&u, &w).unwrap();

        // Direct: evaluate u, grad w on an oversized grid, project.
        let mfine = 32usize; // > 3 * 3 + 1, alias-free for this product
        let norm = 1.0 / (std::f64::consts::SQRT_2 * std::f64::consts::PI);
        let eval = |coeffs: &[f64], j1: usize, j2: usize| -> f64 {
            let x1 = 2.0 * std::f64::consts::PI * j1 as f64 / mfine as f64;
            let x2 = 2.0 * std::f64::consts::PI * j2 as f64 / mfine as f64;
            let mut v = 0.0;
            for (i, &k) in lat.entries().iter().enumerate() {
                let phase = k[0] as f64 * x1 + k[1] as f64 * x2;
                let basis = if crate::spectral::lattice::is_plus(k) {
                    phase.sin()
                } else {
                    phase.cos()
                };
                v += coeffs[i] * basis * norm;
            }
            v
        };
        let mut dw1 = vec![0.0; lat.dim()];
        let mut dw2 = vec![0.0; lat.dim()];
        derivative_coeffs(&lat, w.coeffs(), 0, &mut dw1);
        derivative_coeffs(&lat, w.coeffs(), 1, &mut dw2);

        let cell = (2.0 * std::f64::consts::PI / mfine as f64).powi(2);
        let mut expected = vec![0.0; lat.dim()];
        for j2 in 0..mfine {
            for j1 in 0..mfine {
                let bval = -(eval(u.x.coeffs(), j1, j2) * eval(&dw1, j1, j2)
                    + eval(u.y.coeffs(), j1, j2) * eval(&dw2, j1, j2));
                let x1 = 2.0 * std::f64::consts::PI * j1 as f64 / mfine as f64;
                let x2 = 2.0 * std::f64::consts::PI * j2 as f64 / mfine as f64;
                for (i, &k) in lat.entries().iter().enumerate() {
                    let phase = k[0] as f64 * x1 + k[1] as f64 * x2;
                    let basis = if crate::spectral::lattice::is_plus(k) {
                        phase.sin()
                    } else {
                        phase.cos()
                    };
                    expected[i] += bval * basis * norm * cell;
                }
            }
        }
        for i in 0..lat.dim() {
            assert!(
                (b.coeffs()[i] - expected[i]).abs() < 1e-10,
                "entry {i}: {} vs {}",
                b.coeffs()[i],
                expected[i]
            );
        }
    }

    #[test]
    fn bilinear_single_mode_self_transport_vanishes() {
        let lat = Lattice::new(5).unwrap();
        for k in [[1, 0], [2, 1], [-1, 3]] {
            let e = VorticityField::basis_mode(&lat, k).unwrap();
            let u = biot_savart(&e);
            let b = bilinear_b(&u, &e).unwrap();
            assert!(b.norm(0.0) < 1e-13, "B(K e_k, e_k) = 0 for {k:?}");
        }
    }

    #[test]
    fn skew_symmetry_and_energy_conservation() {
        let lat = Lattice::new(8).unwrap();
        for seed in 0..5 {
            let z = rand_field(&lat, 100 + seed);
            let v = rand_field(&lat, 200 + seed);
            let w = rand_field(&lat, 300 + seed);
            let u = biot_savart(&z);
            let buv = bilinear_b(&u, &v).unwrap();
            let buw = bilinear_b(&u, &w).unwrap();
            let s = buv.dot(&w) + buw.dot(&v);
            let scale = (u.x.norm_sq(1.0) + u.y.norm_sq(1.0)).sqrt() * v.norm(1.0) * w.norm(0.0);
            assert!(s.abs() <= 1e-12 * scale.max(1.0), "skew residual {s}");
            // v = w special case: energy conservation of the nonlinearity
            let uw = biot_savart(&w);
            let bww = bilinear_b(&uw, &w).unwrap();
            assert!(bww.dot(&w).abs() <= 1e-12 * w.norm(1.0).powi(2).max(1.0));
        }
    }

    #[test]
    fn projections_partition_and_orthogonality() {
        let lat = Lattice::new(8).unwrap();
        let w = rand_field(&lat, 42);
        let lo = project(&w, 4, ProjectPart::Low).unwrap();
        let hi = project(&w, 4, ProjectPart::High).unwrap();
        let sum = lo.add(&hi);
        for i in 0..lat.dim() {
            assert_eq!(sum.coeffs()[i], w.coeffs()[i]);
        }
        assert!(lo.dot(&hi).abs() < 1e-15);
        // Idempotence
        let lo2 = project(&lo, 4, ProjectPart::Low).unwrap();
        for i in 0..lat.dim() {
            assert_eq!(lo2.coeffs()[i], lo.coeffs()[i]);
        }
        // High block Poincare: ||Q_N w||_1 >= N ||Q_N w||
        assert!(hi.norm(1.0) >= 4.0 * hi.norm(0.0) - 1e-12);
        // P_N e_k = e_k iff |k| <= N
        let e = VorticityField::basis_mode(&lat, [3, 0]).unwrap();
        let pe = project(&e, 4, ProjectPart::Low).unwrap();
        assert_eq!(pe.coeffs(), e.coeffs());
        let e8 = VorticityField::basis_mode(&lat, [8, 3]).unwrap();
        let pe8 = project(&e8, 4, ProjectPart::Low).unwrap();
        assert_eq!(pe8.norm(0.0), 0.0);
    }

    #[test]
    fn norms_on_single_modes_and_interpolation() {
        let lat = Lattice::new(6).unwrap();
        let e = VorticityField::basis_mode(&lat, [3, 4]).unwrap();
        for alpha in [-1.0, 0.0, 0.5, 1.0] {
            let expect = 25.0f64.powf(alpha / 2.0 * 2.0).sqrt(); // |k|^alpha with |k| = 5
            assert!((e.norm(alpha) - 5.0f64.powf(alpha)).abs() < 1e-12);
            let _ = expect;
        }
        assert_eq!(VorticityField::zero(&lat).norm(1.5), 0.0);
        // ||w||_{1/2}^2 <= ||w|| ||w||_1
        for seed in 0..5 {
            let w = rand_field(&lat, 500 + seed);
            assert!(w.norm_sq(0.5) <= w.norm(0.0) * w.norm(1.0) + 1e-12);
        }
    }

    #[test]
    fn linearized_adjoint_duality() {
        let lat = Lattice::new(6).unwrap();
        let w = rand_field(&lat, 7);
        let xi = rand_field(&lat, 8);
        let rho = rand_field(&lat, 9);
        let bt = linearized_b(&w, &xi).unwrap();
        let mut out = VorticityField::zero(&lat);
        with_workspace(&lat, |ws| {
            let mut sc = KernelScratch::new(&lat);
            let grids = StateGrids::adjoint(&lat, w.coeffs(), &mut sc, ws);
            linearized_adjoint_term(&lat, &grids, rho.coeffs(), &mut sc, out.coeffs_mut(), ws);
        });
        let lhs = bt.dot(&rho);
        let rhs = xi.dot(&out);
        assert!(
            (lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0),
            "duality {lhs} vs {rhs}"
        );
    }
}
