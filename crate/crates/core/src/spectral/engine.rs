//! Dealiased transforms between the real coefficient basis and the physical
//! grid. Two real fields ride in one complex FFT (real and imaginary parts),
//! which halves the transform count in the stepping kernels.

use rustfft::num_complex::Complex64;

use super::lattice::Lattice;

/// Normalization of the orthonormal real basis against raw `exp(i<k,x>)`
/// coefficients: `e_k_hat = sin<k,x> / (sqrt(2) pi)` etc., so the complex
/// coefficient at `+k` of a field `sum a_s e_k_sin + a_c e_k_cos` is
/// `GAMMA * (a_c - i a_s)`.
const GAMMA: f64 = 1.0 / (2.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI);

/// Per-worker scratch for FFT work; not shared across threads.
pub struct Workspace {
    m: usize,
    buf: Vec<Complex64>,
    tr: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Workspace {
    pub fn new(lattice: &Lattice) -> Self {
        let m = lattice.grid_size();
        Workspace {
            m,
            buf: vec![Complex64::default(); m * m],
            tr: vec![Complex64::default(); m * m],
            scratch: vec![Complex64::default(); lattice.fft_scratch_len()],
        }
    }

    pub fn grid_len(&self) -> usize {
        self.m * self.m
    }
}

/// Cache-blocked square transpose `dst = src^T`.
fn transpose(m: usize, src: &[Complex64], dst: &mut [Complex64]) {
    const B: usize = 16;
    for ib in (0..m).step_by(B) {
        for jb in (0..m).step_by(B) {
            for i in ib..(ib + B).min(m) {
                let row = i * m;
                for j in jb..(jb + B).min(m) {
                    dst[j * m + i] = src[row + j];
                }
            }
        }
    }
}

fn fft2_inverse(lat: &Lattice, ws: &mut Workspace) {
    lat.fft_inverse(&mut ws.buf, &mut ws.scratch);
    transpose(ws.m, &ws.buf, &mut ws.tr);
    lat.fft_inverse(&mut ws.tr, &mut ws.scratch);
    transpose(ws.m, &ws.tr, &mut ws.buf);
}

fn fft2_forward(lat: &Lattice, ws: &mut Workspace) {
    lat.fft_forward(&mut ws.buf, &mut ws.scratch);
    transpose(ws.m, &ws.buf, &mut ws.tr);
    lat.fft_forward(&mut ws.tr, &mut ws.scratch);
    transpose(ws.m, &ws.tr, &mut ws.buf);
}

/// Transforms up to two coefficient vectors to physical grids through a
/// single complex FFT. `out_b` is filled with zeros when `b` is `None`.
pub fn grids_from_coeffs(
    lat: &Lattice,
    a: &[f64],
    b: Option<&[f64]>,
    out_a: &mut [f64],
    out_b: Option<&mut [f64]>,
    ws: &mut Workspace,
) {
    ws.buf.fill(Complex64::default());
    match b {
        Some(b) => {
            for pm in lat.plus_modes() {
                let (asf, acf) = (a[pm.sin_idx], a[pm.cos_idx]);
                let (asg, acg) = (b[pm.sin_idx], b[pm.cos_idx]);
                // c_f(+k) + i c_g(+k) and c_f(-k) + i c_g(-k)
                ws.buf[pm.grid_plus] =
                    Complex64::new(GAMMA * (acf + asg), GAMMA * (acg - asf));
                ws.buf[pm.grid_minus] =
                    Complex64::new(GAMMA * (acf - asg), GAMMA * (asf + acg));
            }
        }
        None => {
            for pm in lat.plus_modes() {
                let (asf, acf) = (a[pm.sin_idx], a[pm.cos_idx]);
                ws.buf[pm.grid_plus] = Complex64::new(GAMMA * acf, -GAMMA * asf);
                ws.buf[pm.grid_minus] = Complex64::new(GAMMA * acf, GAMMA * asf);
            }
        }
    }
    fft2_inverse(lat, ws);
    match out_b {
        Some(out_b) => {
            for ((g, oa), ob) in ws.buf.iter().zip(out_a.iter_mut()).zip(out_b.iter_mut()) {
                *oa = g.re;
                *ob = g.im;
            }
        }
        None => {
            for (g, oa) in ws.buf.iter().zip(out_a.iter_mut()) {
                *oa = g.re;
            }
        }
    }
}

/// Complex spectrum of a pair of real grids after a forward transform,
/// exposing the Hermitian-unpacked coefficients at `+k` / `-k`.
pub struct PairSpectrum<'a> {
    lat: &'a Lattice,
    buf: &'a [Complex64],
    inv_m2: f64,
}

impl PairSpectrum<'_> {
    /// Raw complex coefficients `(p_hat(k), q_hat(k))` of the two packed real
    /// fields at wavenumber `k` (given by grid slots of `+k` and `-k`).
    #[inline]
    pub fn unpack(&self, grid_plus: usize, grid_minus: usize) -> (Complex64, Complex64) {
        let hp = self.buf[grid_plus] * self.inv_m2;
        let hm = self.buf[grid_minus].conj() * self.inv_m2;
        let p = 0.5 * (hp + hm);
        let q = Complex64::new(0.0, -0.5) * (hp - hm);
        (p, q)
    }

    pub fn lattice(&self) -> &Lattice {
        self.lat
    }
}

/// Forward-transforms two real grids and hands the packed spectrum to
/// `consume`, which extracts whatever coefficient combination it needs.
pub fn with_forward_pair<R>(
    lat: &Lattice,
    ga: &[f64],
    gb: &[f64],
    ws: &mut Workspace,
    consume: impl FnOnce(PairSpectrum<'_>) -> R,
) -> R {
    for ((dst, &a), &b) in ws.buf.iter_mut().zip(ga.iter()).zip(gb.iter()) {
        *dst = Complex64::new(a, b);
    }
    fft2_forward(lat, ws);
    let m2 = (ws.m * ws.m) as f64;
    consume(PairSpectrum {
        lat,
        buf: &ws.buf,
        inv_m2: 1.0 / m2,
    })
}

/// Writes the real-basis coefficients of the field with complex coefficient
/// `c(k)` (as a function of the plus-mode) into `out`.
///
/// The closure receives the plus-mode table row and the unpacked pair
/// spectrum and must return the complex coefficient of the RESULT field at
/// `+k`.
#[inline]
pub fn store_from_complex(out: &mut [f64], pm: &super::lattice::PlusMode, c: Complex64) {
    out[pm.sin_idx] = -c.im / GAMMA;
    out[pm.cos_idx] = c.re / GAMMA;
}
