//! Functional model of a reconfigurable dataflow accelerator built from
//! pipelined SIMD compute tiles, together with the reference kernels it
//! accelerates and an analytical performance model for whole decoder layers.
//!
//! The crate is organized along the pipeline a study of such a machine needs:
//!
//! * [`kernels`] — reference FFT / scan / GEMM implementations and the
//!   normalized work accounting shared by everything else.
//! * [`fabric`] — value-level simulation of a single compute tile (PCU) in
//!   its six interconnect modes, checked against the kernel oracles.
//! * [`workloads`] — dataflow-graph builders for attention, FFT-convolution
//!   and scan decoder layers.
//! * [`mapper`] — spatial mapping of a graph onto a chip: per-kernel tile
//!   allocation, pipeline balancing and configuration partitioning.
//! * [`perf`] — roofline-style latency estimation for dataflow execution and
//!   kernel-by-kernel device execution, plus report export.
//! * [`presets`] — canned experiments sweeping decoder designs over devices.

pub mod config_io;
pub mod fabric;
pub mod kernels;
pub mod mapper;
pub mod perf;
pub mod presets;
pub mod verify;
pub mod workloads;
