//! Value-level model of a single compute tile: a `lanes x stages` grid of
//! functional units joined by mode-dependent inter-stage interconnects.
//!
//! A [`PcuConfig`] is immutable once built. [`build_mode_config`] wires one
//! of the six supported modes, [`pcu_eval`] streams frames through it, and
//! [`validate_config`] reports every structural violation. The FFT and scan
//! modes are checked against the reference kernels, which is the whole point
//! of keeping this simulator value-exact.

mod build;
mod eval;
mod validate;

pub use build::{
    build_mode_config, fft_mode_config, systolic_result_lanes, ModeParams, TwiddleTable,
};
pub use eval::{fu_eval, pcu_eval, EvalOutput};
pub use validate::{dump_config, interconnect_delta, validate_config, InterconnectDelta, Violation};

use num_complex::Complex;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Scalar element the fabric is generic over. One FU performs one `E`-valued
/// operation per cycle; FFT mode instantiates `E` with a complex type so a
/// butterfly stage is a single FU op per lane.
pub trait Element:
    Copy + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
}

macro_rules! impl_element {
    ($($t:ty),*) => {$(
        impl Element for $t {
            fn zero() -> Self { num_traits::Zero::zero() }
            fn one() -> Self { num_traits::One::one() }
        }
    )*};
}

impl_element!(f32, f64, i64, Complex<f32>, Complex<f64>);

/// Elements that expose roots of unity, needed to populate FFT twiddles.
pub trait ComplexElement: Element {
    /// exp(-2*pi*i * k / n)
    fn root_of_unity(n: usize, k: usize) -> Self;
}

impl ComplexElement for Complex<f64> {
    fn root_of_unity(n: usize, k: usize) -> Self {
        let angle = -2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        Complex::new(angle.cos(), angle.sin())
    }
}

impl ComplexElement for Complex<f32> {
    fn root_of_unity(n: usize, k: usize) -> Self {
        let angle = -2.0 * std::f32::consts::PI * (k as f32) / (n as f32);
        Complex::new(angle.cos(), angle.sin())
    }
}

/// Tile shape: SIMD width (`lanes`) by pipeline depth (`stages`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PcuGeometry {
    pub lanes: usize,
    pub stages: usize,
}

impl PcuGeometry {
    pub fn new(lanes: usize, stages: usize) -> Result<Self, FabricError> {
        if !lanes.is_power_of_two() || lanes == 0 {
            return Err(FabricError::NonPowerOfTwoLanes(lanes));
        }
        if stages == 0 {
            return Err(FabricError::UnsupportedGeometry("stages must be >= 1".into()));
        }
        Ok(PcuGeometry { lanes, stages })
    }

    pub fn log2_lanes(&self) -> usize {
        self.lanes.trailing_zeros() as usize
    }
}

/// Scalar op performed by one functional unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuOpKind {
    Add,
    Mul,
    /// Fused multiply-add: accumulates into the stage input. Legal in the
    /// systolic mode (partial-product chains) and in FFT mode, where a
    /// butterfly lane computes `stage_in + twiddle * partner` in one unit.
    Mac,
    /// Forwards the first selected input unchanged.
    Pass,
}

/// The four FU input sources: two cross-lane ports, the same-lane pipeline
/// port, and a per-FU constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FuInput {
    LaneA,
    LaneB,
    StageIn,
    Const,
}

/// One functional unit: an op over two selected inputs plus a constant.
/// For `Mac` the accumulation source is always `StageIn`; the selected pair
/// forms the product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuConfig<E> {
    pub op: FuOpKind,
    pub input_select: (FuInput, FuInput),
    pub constant: E,
}

impl<E: Element> FuConfig<E> {
    pub fn pass_through() -> Self {
        FuConfig { op: FuOpKind::Pass, input_select: (FuInput::StageIn, FuInput::Const), constant: E::zero() }
    }

    pub fn pass_const(value: E) -> Self {
        FuConfig { op: FuOpKind::Pass, input_select: (FuInput::Const, FuInput::StageIn), constant: value }
    }
}

/// Routable FU ports (the constant is per-FU, not routed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Port {
    LaneA,
    LaneB,
    StageIn,
}

/// A directed wire from a lane's previous-stage output (or a frame index,
/// for the input boundary) to a port of a destination lane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub src_lane: usize,
    pub dst_lane: usize,
    pub port: Port,
}

impl Link {
    pub fn new(src_lane: usize, dst_lane: usize, port: Port) -> Self {
        Link { src_lane, dst_lane, port }
    }

    pub fn is_cross_lane(&self) -> bool {
        self.src_lane != self.dst_lane
    }
}

/// All wiring of a tile. `input` connects frame indices to stage-0 ports
/// (the input distribution network; bit-reversal and shifts live here).
/// `boundaries[s]` connects stage `s` outputs to stage `s+1` ports, so the
/// list has `stages - 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct InterconnectMap {
    pub input: Vec<Link>,
    pub boundaries: Vec<Vec<Link>>,
}

/// Tile execution modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PcuMode {
    Elementwise,
    Systolic,
    Reduction,
    Fft,
    HsScan,
    BScan,
}

impl PcuMode {
    pub const ALL: [PcuMode; 6] = [
        PcuMode::Elementwise,
        PcuMode::Systolic,
        PcuMode::Reduction,
        PcuMode::Fft,
        PcuMode::HsScan,
        PcuMode::BScan,
    ];

    /// Minimum pipeline depth the mode needs on a given lane count.
    pub fn min_stages(&self, lanes: usize) -> usize {
        let m = lanes.trailing_zeros() as usize;
        match self {
            PcuMode::Elementwise | PcuMode::Systolic => 1,
            PcuMode::Reduction | PcuMode::Fft | PcuMode::HsScan => m.max(1),
            PcuMode::BScan => (2 * m).max(1),
        }
    }
}

impl std::fmt::Display for PcuMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PcuMode::Elementwise => "elementwise",
            PcuMode::Systolic => "systolic",
            PcuMode::Reduction => "reduction",
            PcuMode::Fft => "fft",
            PcuMode::HsScan => "hs_scan",
            PcuMode::BScan => "b_scan",
        };
        f.write_str(s)
    }
}

/// A complete tile configuration: geometry, mode, the stage-major FU grid
/// (`fu[stage][lane]`) and the interconnect map.
#[derive(Debug, Clone, PartialEq)]
pub struct PcuConfig<E> {
    pub geometry: PcuGeometry,
    pub mode: PcuMode,
    pub fu: Vec<Vec<FuConfig<E>>>,
    pub links: InterconnectMap,
}

/// Fabric-level errors.
#[derive(Debug, Clone, PartialEq)]
pub enum FabricError {
    UnsupportedGeometry(String),
    NonPowerOfTwoLanes(usize),
    ConfigInvalid(Vec<Violation>),
    WidthMismatch { expected: usize, got: usize },
    IllegalSelection { stage: usize, lane: usize },
}

impl std::fmt::Display for FabricError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FabricError::UnsupportedGeometry(msg) => write!(f, "unsupported geometry: {msg}"),
            FabricError::NonPowerOfTwoLanes(n) => {
                write!(f, "lane count {n} is not a power of two")
            }
            FabricError::ConfigInvalid(violations) => {
                write!(f, "config invalid: {} violation(s)", violations.len())
            }
            FabricError::WidthMismatch { expected, got } => {
                write!(f, "frame width {got} does not match {expected} lanes")
            }
            FabricError::IllegalSelection { stage, lane } => {
                write!(f, "illegal input selection at stage {stage}, lane {lane}")
            }
        }
    }
}

impl std::error::Error for FabricError {}
