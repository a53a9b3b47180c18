//! Normalized work accounting.
//!
//! Every kernel kind is reduced to a count of `normalized_units` — the
//! quantity the per-tile throughput table is expressed in — plus a derived
//! real-FLOP figure used for cross-device FLOP reporting, and an exact op
//! count where the closed-form differs from what an implementation executes.
//!
//! Unit conventions (frozen; the published ratios only depend on units):
//!
//! | kind                 | normalized_units          | flops/unit |
//! |----------------------|---------------------------|------------|
//! | GEMM                 | M*N*K MACs                | 2          |
//! | FFT, vector variant  | L*log2(L) per transform   | 10         |
//! | FFT, GEMM variant    | R*L*log_R(L) per transform| 10         |
//! | scan (HS)            | N*log2(N) per channel     | 1          |
//! | scan (B / tiled)     | 2N per channel            | 1          |
//! | scan (C)             | N per channel             | 1          |
//! | element-wise         | element count             | ops/elem   |
//!
//! Both FFT variants carry the same per-unit constant so that their FLOP
//! ratio equals the unit ratio R/log2(R); the kernel-by-kernel device model
//! applies its own executed-FLOP basis where that differs (see `perf`).

use serde::{Deserialize, Serialize};

use super::fft::{FftPlan, FftVariant};
use super::scan::{ScanDesc, ScanVariant};
use super::KernelError;

pub const FLOPS_PER_FFT_UNIT: f64 = 10.0;
pub const FLOPS_PER_MAC: f64 = 2.0;
pub const FLOPS_PER_SCAN_OP: f64 = 1.0;

/// Element-wise kernel descriptor: a named op applied over a flat element
/// count, charged `ops_per_element` real operations each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementwiseOp {
    pub name: String,
    pub elements: u64,
    pub ops_per_element: u64,
}

/// A fully dimensioned kernel, the unit of work accounting and mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum KernelWork {
    Gemm { m: u64, n: u64, k: u64 },
    Fft { plan: FftPlan, batch: u64 },
    Scan { desc: ScanDesc, channels: u64 },
    Elementwise(ElementwiseOp),
}

impl KernelWork {
    pub fn kind_name(&self) -> &'static str {
        match self {
            KernelWork::Gemm { .. } => "gemm",
            KernelWork::Fft { .. } => "fft",
            KernelWork::Scan { .. } => "scan",
            KernelWork::Elementwise(_) => "elementwise",
        }
    }
}

/// Work totals for one kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkCount {
    /// Units in the kind's native currency (see module table).
    pub normalized_units: f64,
    /// normalized_units times the documented per-unit constant.
    pub real_flops: f64,
    /// Exact op count where the asymptotic formula over- or under-counts.
    pub exact_ops: f64,
}

fn log2(n: u64) -> f64 {
    (n as f64).log2()
}

/// Exact MAC count of the recursive tiled GEMM-FFT: each level performs
/// L*R column-transform MACs and recurses R-fold on rows of length L/R.
fn gemm_fft_exact_macs(l: u64, r: u64) -> f64 {
    if l <= r {
        return (l * l) as f64;
    }
    (l * r) as f64 + r as f64 * gemm_fft_exact_macs(l / r, r)
}

/// Compute the work totals for a dimensioned kernel.
pub fn work_count(kernel: &KernelWork) -> Result<WorkCount, KernelError> {
    match kernel {
        KernelWork::Gemm { m, n, k } => {
            if *m == 0 || *n == 0 || *k == 0 {
                return Err(KernelError::UnderSpecifiedKernel(
                    "GEMM dimensions must be nonzero".into(),
                ));
            }
            let macs = (*m as f64) * (*n as f64) * (*k as f64);
            Ok(WorkCount {
                normalized_units: macs,
                real_flops: macs * FLOPS_PER_MAC,
                exact_ops: macs,
            })
        }
        KernelWork::Fft { plan, batch } => {
            plan.validate()
                .map_err(|e| KernelError::UnderSpecifiedKernel(e.to_string()))?;
            if *batch == 0 {
                return Err(KernelError::UnderSpecifiedKernel("FFT batch is zero".into()));
            }
            let l = plan.l as f64;
            let (units, exact) = match plan.variant {
                FftVariant::Vector => {
                    (l * log2(plan.l as u64), (l / 2.0) * log2(plan.l as u64))
                }
                FftVariant::Gemm => (
                    plan.r as f64 * l * log2(plan.l as u64) / log2(plan.r as u64),
                    gemm_fft_exact_macs(plan.l as u64, plan.r as u64),
                ),
            };
            let b = *batch as f64;
            Ok(WorkCount {
                normalized_units: units * b,
                real_flops: units * b * FLOPS_PER_FFT_UNIT,
                exact_ops: exact * b,
            })
        }
        KernelWork::Scan { desc, channels } => {
            if desc.n == 0 || *channels == 0 {
                return Err(KernelError::UnderSpecifiedKernel(
                    "scan length and channels must be nonzero".into(),
                ));
            }
            let n = desc.n as f64;
            let (units, exact) = match desc.variant {
                ScanVariant::CScan => (n, n - 1.0),
                ScanVariant::HsScan => {
                    (n * log2(desc.n as u64), n * log2(desc.n as u64) - (n - 1.0))
                }
                ScanVariant::BScan | ScanVariant::Tiled => (2.0 * n, 2.0 * (n - 1.0)),
            };
            let c = *channels as f64;
            Ok(WorkCount {
                normalized_units: units * c,
                real_flops: units * c * FLOPS_PER_SCAN_OP,
                exact_ops: exact * c,
            })
        }
        KernelWork::Elementwise(op) => {
            let elems = op.elements as f64;
            Ok(WorkCount {
                normalized_units: elems,
                real_flops: elems * op.ops_per_element as f64,
                exact_ops: elems * op.ops_per_element as f64,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Direction;

    fn fft_kernel(l: usize, r: usize, variant: FftVariant) -> KernelWork {
        KernelWork::Fft {
            plan: FftPlan::new(l, r, variant, Direction::Forward).unwrap(),
            batch: 1,
        }
    }

    #[test]
    fn vector_fft_units_at_1m() {
        let w = work_count(&fft_kernel(1 << 20, 32, FftVariant::Vector)).unwrap();
        assert_eq!(w.normalized_units, 20_971_520.0); // 2^20 * 20
    }

    #[test]
    fn gemm_fft_units_at_1m() {
        let w = work_count(&fft_kernel(1 << 20, 32, FftVariant::Gemm)).unwrap();
        assert_eq!(w.normalized_units, 134_217_728.0); // 32 * 2^20 * 4
    }

    #[test]
    fn variant_ratio_is_r_over_log2r() {
        for l in [1usize << 18, 1 << 19, 1 << 20] {
            for r in [16usize, 32] {
                let v = work_count(&fft_kernel(l, r, FftVariant::Vector)).unwrap();
                let g = work_count(&fft_kernel(l, r, FftVariant::Gemm)).unwrap();
                let want = r as f64 / (r as f64).log2();
                let got = g.normalized_units / v.normalized_units;
                assert!((got - want).abs() / want < 1e-12, "L={l} R={r}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn scan_counts_n8() {
        let hs = work_count(&KernelWork::Scan {
            desc: ScanDesc { n: 8, variant: ScanVariant::HsScan, tile: 8 },
            channels: 1,
        })
        .unwrap();
        assert_eq!(hs.normalized_units, 24.0);
        assert_eq!(hs.exact_ops, 17.0);
        let b = work_count(&KernelWork::Scan {
            desc: ScanDesc { n: 8, variant: ScanVariant::BScan, tile: 8 },
            channels: 1,
        })
        .unwrap();
        assert_eq!(b.normalized_units, 16.0);
        assert_eq!(b.exact_ops, 14.0);
    }

    #[test]
    fn unit_gemm() {
        let w = work_count(&KernelWork::Gemm { m: 1, n: 1, k: 1 }).unwrap();
        assert_eq!(w.normalized_units, 1.0);
        assert_eq!(w.real_flops, 2.0);
    }

    #[test]
    fn traced_ops_match_exact_formula() {
        use crate::kernels::{scan_blelloch_traced, scan_hillis_steele_traced};
        for n in [4usize, 16, 64, 256] {
            let x: Vec<i64> = (0..n as i64).collect();
            let (_, hs) = scan_hillis_steele_traced(&x).unwrap();
            let (_, b) = scan_blelloch_traced(&x).unwrap();
            let hs_work = work_count(&KernelWork::Scan {
                desc: ScanDesc { n, variant: ScanVariant::HsScan, tile: n },
                channels: 1,
            })
            .unwrap();
            let b_work = work_count(&KernelWork::Scan {
                desc: ScanDesc { n, variant: ScanVariant::BScan, tile: n },
                channels: 1,
            })
            .unwrap();
            assert_eq!(hs.ops as f64, hs_work.exact_ops);
            assert_eq!(b.ops as f64, b_work.exact_ops);
        }
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(work_count(&KernelWork::Gemm { m: 0, n: 1, k: 1 }).is_err());
    }
}
