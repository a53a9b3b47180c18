//! DFT and FFT reference paths: the naive transform (oracle), radix-2
//! Cooley-Tukey, the four-step tiled decomposition in both its vector and
//! GEMM flavors, and FFT-based linear convolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::KernelError;

/// Transform direction. The inverse applies the 1/N normalization itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// How the R-point base transforms of the tiled decomposition are computed.
///
/// `Vector` uses the O(R log R) radix-2 FFT and maps onto butterfly-capable
/// vector hardware; `Gemm` uses the O(R^2) DFT matrix product and maps onto
/// matrix units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FftVariant {
    Vector,
    Gemm,
}

/// A tiled FFT plan: transform length `l`, tile size `r`, base-transform
/// variant and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftPlan {
    pub l: usize,
    pub r: usize,
    pub variant: FftVariant,
    pub direction: Direction,
}

impl FftPlan {
    pub fn new(l: usize, r: usize, variant: FftVariant, direction: Direction) -> Result<Self, KernelError> {
        let plan = FftPlan { l, r, variant, direction };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        if self.l == 0 || !self.l.is_power_of_two() {
            return Err(KernelError::PlanInvalid(format!(
                "L = {} must be a nonzero power of two",
                self.l
            )));
        }
        if self.r == 0 || !self.r.is_power_of_two() {
            return Err(KernelError::PlanInvalid(format!(
                "R = {} must be a nonzero power of two",
                self.r
            )));
        }
        if self.r > self.l {
            return Err(KernelError::PlanInvalid(format!(
                "R = {} exceeds L = {}",
                self.r, self.l
            )));
        }
        if self.l % self.r != 0 {
            return Err(KernelError::PlanInvalid(format!(
                "R = {} does not divide L = {}",
                self.r, self.l
            )));
        }
        Ok(())
    }
}

fn twiddle(n: usize, k: usize, direction: Direction) -> Complex64 {
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let angle = sign * 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// Naive O(N^2) discrete Fourier transform. The oracle for every other path.
///
/// X[k] = sum_n x[n] * exp(-2*pi*i*n*k/N); the inverse conjugates the kernel
/// and scales by 1/N.
pub fn dft_naive(x: &[Complex64], direction: Direction) -> Result<Vec<Complex64>, KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    let n = x.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &v) in x.iter().enumerate() {
            acc += v * twiddle(n, (i * k) % n, direction);
        }
        *slot = acc;
    }
    if direction == Direction::Inverse {
        let scale = 1.0 / n as f64;
        for v in &mut out {
            *v *= scale;
        }
    }
    Ok(out)
}

fn reverse_bits(mut x: usize, bits: u32) -> usize {
    let mut out = 0;
    for _ in 0..bits {
        out = (out << 1) | (x & 1);
        x >>= 1;
    }
    out
}

fn bit_reverse_permute(data: &mut [Complex64]) {
    let bits = data.len().trailing_zeros();
    for i in 0..data.len() {
        let j = reverse_bits(i, bits);
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Unnormalized forward radix-2 DIT FFT, counting butterflies as it goes.
fn fft_radix2_forward(data: &mut [Complex64], butterflies: &mut u64) {
    let n = data.len();
    if n == 1 {
        return;
    }
    bit_reverse_permute(data);
    let mut half = 1;
    while half < n {
        let step = 2 * half;
        for group in (0..n).step_by(step) {
            for j in 0..half {
                let w = twiddle(step, j, Direction::Forward);
                let a = data[group + j];
                let b = data[group + j + half] * w;
                data[group + j] = a + b;
                data[group + j + half] = a - b;
                *butterflies += 1;
            }
        }
        half = step;
    }
}

fn conjugate(data: &mut [Complex64]) {
    for v in data.iter_mut() {
        *v = v.conj();
    }
}

/// Radix-2 Cooley-Tukey FFT. Length must be a power of two.
pub fn fft_cooley_tukey(
    x: &[Complex64],
    direction: Direction,
) -> Result<Vec<Complex64>, KernelError> {
    fft_cooley_tukey_traced(x, direction).map(|(out, _)| out)
}

/// Like [`fft_cooley_tukey`] but also reports the number of butterflies
/// executed, which is (N/2) * log2(N).
pub fn fft_cooley_tukey_traced(
    x: &[Complex64],
    direction: Direction,
) -> Result<(Vec<Complex64>, u64), KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    if !x.len().is_power_of_two() {
        return Err(KernelError::NonPowerOfTwoLength(x.len()));
    }
    let mut data = x.to_vec();
    let mut butterflies = 0;
    match direction {
        Direction::Forward => fft_radix2_forward(&mut data, &mut butterflies),
        Direction::Inverse => {
            // inverse = conj(forward(conj(x))) / N, so one forward code path serves both
            conjugate(&mut data);
            fft_radix2_forward(&mut data, &mut butterflies);
            conjugate(&mut data);
            let scale = 1.0 / data.len() as f64;
            for v in &mut data {
                *v *= scale;
            }
        }
    }
    Ok((data, butterflies))
}

/// Four-step tiled FFT.
///
/// The length-L sequence is viewed as an R x (L/R) matrix; tile-sized
/// transforms run down the columns, a twiddle multiply follows, and the
/// rows (length L/R) recurse into the same decomposition until they fit in
/// one tile. The base transform is chosen by the plan variant.
pub fn fft_bailey(x: &[Complex64], plan: &FftPlan) -> Result<Vec<Complex64>, KernelError> {
    plan.validate()?;
    if x.len() != plan.l {
        return Err(KernelError::LengthMismatch { left: x.len(), right: plan.l });
    }
    match plan.direction {
        Direction::Forward => bailey_forward(x, plan.r, plan.variant),
        Direction::Inverse => {
            let mut conj_in: Vec<Complex64> = x.iter().map(|v| v.conj()).collect();
            let mut out = bailey_forward(&conj_in, plan.r, plan.variant)?;
            conj_in.clear();
            let scale = 1.0 / x.len() as f64;
            for v in &mut out {
                *v = v.conj() * scale;
            }
            Ok(out)
        }
    }
}

fn base_forward(x: &[Complex64], variant: FftVariant) -> Result<Vec<Complex64>, KernelError> {
    match variant {
        FftVariant::Vector => fft_cooley_tukey(x, Direction::Forward),
        FftVariant::Gemm => dft_naive(x, Direction::Forward),
    }
}

fn bailey_forward(
    x: &[Complex64],
    r: usize,
    variant: FftVariant,
) -> Result<Vec<Complex64>, KernelError> {
    let n = x.len();
    if n <= r {
        return base_forward(x, variant);
    }
    let cols = n / r;

    // Step 1: view x as an R x C matrix, row-major (row i is x[i*C .. i*C+C]).
    // Step 2: R-point transforms down each column.
    let mut stage = vec![Complex64::new(0.0, 0.0); n];
    let mut column = vec![Complex64::new(0.0, 0.0); r];
    for c in 0..cols {
        for i in 0..r {
            column[i] = x[i * cols + c];
        }
        let transformed = base_forward(&column, variant)?;
        for (i, v) in transformed.into_iter().enumerate() {
            stage[i * cols + c] = v;
        }
    }

    // Step 3: element-wise twiddle scaling by W_N^(s*c).
    for s in 0..r {
        for c in 0..cols {
            stage[s * cols + c] *= twiddle(n, (s * c) % n, Direction::Forward);
        }
    }

    // Step 4: length-C transforms along each row, recursing until C <= R.
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for s in 0..r {
        let row = &stage[s * cols..(s + 1) * cols];
        let transformed = bailey_forward(row, r, variant)?;
        // output index k*R + s reads the result matrix column-major
        for (k, v) in transformed.into_iter().enumerate() {
            out[k * r + s] = v;
        }
    }
    Ok(out)
}

/// Causal linear convolution of two length-L sequences via padded FFTs:
/// two forward transforms, a pointwise product, one inverse transform,
/// truncated back to length L.
pub fn fft_conv(u: &[Complex64], k: &[Complex64]) -> Result<Vec<Complex64>, KernelError> {
    if u.len() != k.len() {
        return Err(KernelError::LengthMismatch { left: u.len(), right: k.len() });
    }
    if u.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    if !u.len().is_power_of_two() {
        return Err(KernelError::NonPowerOfTwoLength(u.len()));
    }
    let l = u.len();
    let padded = 2 * l;
    let mut pu = vec![Complex64::new(0.0, 0.0); padded];
    let mut pk = vec![Complex64::new(0.0, 0.0); padded];
    pu[..l].copy_from_slice(u);
    pk[..l].copy_from_slice(k);
    let fu = fft_cooley_tukey(&pu, Direction::Forward)?;
    let fk = fft_cooley_tukey(&pk, Direction::Forward)?;
    let prod: Vec<Complex64> = fu.iter().zip(&fk).map(|(a, b)| a * b).collect();
    let full = fft_cooley_tukey(&prod, Direction::Inverse)?;
    Ok(full[..l].to_vec())
}
