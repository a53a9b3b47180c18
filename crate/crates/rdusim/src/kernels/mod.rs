//! Reference (oracle) implementations of the algorithms the accelerator
//! targets — DFT/FFT variants, prefix scans, dense GEMM — plus the
//! normalized work accounting used by the performance model.
//!
//! Everything here is pure and reentrant. The FFT and scan entry points are
//! the ground truth the fabric simulator is validated against, so they are
//! deliberately written in the most direct style possible.

mod fft;
mod gemm;
mod scan;
mod work;

pub use fft::{
    dft_naive, fft_bailey, fft_conv, fft_cooley_tukey, fft_cooley_tukey_traced, Direction,
    FftPlan, FftVariant,
};
pub use gemm::{gemm, Matrix};
pub use scan::{
    scan_blelloch, scan_blelloch_traced, scan_hillis_steele, scan_hillis_steele_traced,
    scan_sequential_exclusive, scan_tiled, ScanDesc, ScanTrace, ScanVariant,
};
pub use work::{work_count, ElementwiseOp, KernelWork, WorkCount};

/// Errors shared by the kernel reference implementations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    EmptyInput,
    NonPowerOfTwoLength(usize),
    PlanInvalid(String),
    LengthMismatch { left: usize, right: usize },
    ShapeMismatch(String),
    UnderSpecifiedKernel(String),
}

impl std::fmt::Display for KernelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelError::EmptyInput => write!(f, "input is empty"),
            KernelError::NonPowerOfTwoLength(n) => {
                write!(f, "length {n} is not a power of two")
            }
            KernelError::PlanInvalid(msg) => write!(f, "invalid FFT plan: {msg}"),
            KernelError::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            KernelError::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            KernelError::UnderSpecifiedKernel(msg) => {
                write!(f, "kernel under-specified: {msg}")
            }
        }
    }
}

impl std::error::Error for KernelError {}
