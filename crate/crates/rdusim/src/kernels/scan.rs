//! Exclusive prefix-scan variants: the sequential oracle, the step-efficient
//! and work-efficient parallel forms, and the tiled composition used to map
//! long sequences onto fixed-width hardware.

use serde::{Deserialize, Serialize};
use std::ops::Add;

use super::KernelError;

/// Scan algorithm selector as carried by kernel descriptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVariant {
    /// Fully sequential, one element per step.
    CScan,
    /// Hillis-Steele: log2(N) steps, N*log2(N) work.
    HsScan,
    /// Blelloch: 2*log2(N) steps (up-sweep + down-sweep), 2N work.
    BScan,
    /// Per-tile scans plus a scan of tile totals.
    Tiled,
}

/// A dimensioned scan kernel: `n` elements per channel, exclusive form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDesc {
    pub n: usize,
    pub variant: ScanVariant,
    /// Tile length for the tiled variant; ignored otherwise.
    pub tile: usize,
}

/// Step and op counters reported by the traced scan entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanTrace {
    /// Parallel steps taken (each step is one sweep over the array).
    pub steps: usize,
    /// Additions actually performed.
    pub ops: usize,
}

/// Element bound for the scan routines: addition with an identity.
pub trait ScanElem: Copy + Add<Output = Self> {
    fn zero() -> Self;
}

impl ScanElem for i64 {
    fn zero() -> Self {
        0
    }
}

impl ScanElem for f64 {
    fn zero() -> Self {
        0.0
    }
}

/// Sequential exclusive scan: y[0] = 0, y[j] = y[j-1] + x[j-1].
///
/// This is the oracle every parallel variant is checked against.
pub fn scan_sequential_exclusive<T: ScanElem>(x: &[T]) -> Result<Vec<T>, KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    let mut out = Vec::with_capacity(x.len());
    let mut acc = T::zero();
    for &v in x {
        out.push(acc);
        acc = acc + v;
    }
    Ok(out)
}

fn padded_pow2<T: ScanElem>(x: &[T]) -> Vec<T> {
    let n = x.len().next_power_of_two();
    let mut data = Vec::with_capacity(n);
    data.extend_from_slice(x);
    data.resize(n, T::zero());
    data
}

/// Hillis-Steele exclusive scan.
///
/// Runs the inclusive step-efficient sweep — step i adds the value at
/// distance 2^(i-1) below each index — then shifts right by one and inserts
/// the identity to produce the exclusive form. Non-power-of-two lengths are
/// padded with the identity and truncated on output.
pub fn scan_hillis_steele<T: ScanElem>(x: &[T]) -> Result<Vec<T>, KernelError> {
    scan_hillis_steele_traced(x).map(|(out, _)| out)
}

pub fn scan_hillis_steele_traced<T: ScanElem>(
    x: &[T],
) -> Result<(Vec<T>, ScanTrace), KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    let orig_len = x.len();
    let mut data = padded_pow2(x);
    let n = data.len();
    let mut trace = ScanTrace { steps: 0, ops: 0 };
    let mut dist = 1;
    while dist < n {
        trace.steps += 1;
        let prev = data.clone();
        for j in dist..n {
            data[j] = prev[j] + prev[j - dist];
            trace.ops += 1;
        }
        dist <<= 1;
    }
    // inclusive -> exclusive: shift right, insert identity
    let mut out = Vec::with_capacity(orig_len);
    out.push(T::zero());
    out.extend_from_slice(&data[..orig_len - 1]);
    Ok((out, trace))
}

/// Blelloch exclusive scan: an up-sweep builds a reduction tree, the root is
/// replaced by the identity, and a down-sweep distributes prefixes back.
pub fn scan_blelloch<T: ScanElem>(x: &[T]) -> Result<Vec<T>, KernelError> {
    scan_blelloch_traced(x).map(|(out, _)| out)
}

pub fn scan_blelloch_traced<T: ScanElem>(x: &[T]) -> Result<(Vec<T>, ScanTrace), KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    let orig_len = x.len();
    let mut data = padded_pow2(x);
    let n = data.len();
    let mut trace = ScanTrace { steps: 0, ops: 0 };

    // up-sweep
    let mut dist = 1;
    while dist < n {
        trace.steps += 1;
        let step = dist * 2;
        let mut j = step - 1;
        while j < n {
            data[j] = data[j] + data[j - dist];
            trace.ops += 1;
            j += step;
        }
        dist = step;
    }

    if n > 1 {
        data[n - 1] = T::zero();
    }

    // down-sweep
    let mut dist = n / 2;
    while dist >= 1 {
        trace.steps += 1;
        let step = dist * 2;
        let mut j = step - 1;
        while j < n {
            let left = data[j - dist];
            data[j - dist] = data[j];
            data[j] = data[j] + left;
            trace.ops += 1;
            j += step;
        }
        if dist == 1 {
            break;
        }
        dist /= 2;
    }

    data.truncate(orig_len);
    Ok((data, trace))
}

/// Tiled exclusive scan: exclusive scans within each length-`r` tile, an
/// exclusive scan over the tile totals, and a per-tile offset add.
pub fn scan_tiled<T: ScanElem>(x: &[T], r: usize) -> Result<Vec<T>, KernelError> {
    if x.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    if r == 0 || !r.is_power_of_two() {
        return Err(KernelError::NonPowerOfTwoLength(r));
    }
    let orig_len = x.len();
    let mut data = x.to_vec();
    let rem = data.len() % r;
    if rem != 0 {
        data.resize(data.len() + (r - rem), T::zero());
    }
    let tiles = data.len() / r;

    let mut totals = Vec::with_capacity(tiles);
    let mut out = Vec::with_capacity(data.len());
    for t in 0..tiles {
        let tile = &data[t * r..(t + 1) * r];
        let scanned = scan_blelloch(tile)?;
        let total = scanned[r - 1] + tile[r - 1];
        totals.push(total);
        out.extend_from_slice(&scanned);
    }
    let offsets = scan_sequential_exclusive(&totals)?;
    for t in 0..tiles {
        for j in 0..r {
            out[t * r + j] = out[t * r + j] + offsets[t];
        }
    }
    out.truncate(orig_len);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let x: Vec<i64> = vec![2, 4, 6, 8];
        let want: Vec<i64> = vec![0, 2, 6, 12];
        assert_eq!(scan_sequential_exclusive(&x).unwrap(), want);
        assert_eq!(scan_hillis_steele(&x).unwrap(), want);
        assert_eq!(scan_blelloch(&x).unwrap(), want);
        assert_eq!(scan_tiled(&x, 2).unwrap(), want);
    }

    #[test]
    fn single_element_scans_to_zero() {
        let x: Vec<i64> = vec![41];
        assert_eq!(scan_sequential_exclusive(&x).unwrap(), vec![0]);
        assert_eq!(scan_hillis_steele(&x).unwrap(), vec![0]);
        assert_eq!(scan_blelloch(&x).unwrap(), vec![0]);
    }

    #[test]
    fn all_zero_stays_zero() {
        let x: Vec<i64> = vec![0; 16];
        assert_eq!(scan_hillis_steele(&x).unwrap(), vec![0; 16]);
        assert_eq!(scan_blelloch(&x).unwrap(), vec![0; 16]);
    }

    #[test]
    fn empty_input_is_an_error() {
        let x: Vec<i64> = vec![];
        assert_eq!(scan_sequential_exclusive(&x), Err(KernelError::EmptyInput));
        assert_eq!(scan_hillis_steele(&x), Err(KernelError::EmptyInput));
        assert_eq!(scan_blelloch(&x), Err(KernelError::EmptyInput));
    }

    #[test]
    fn parallel_variants_match_oracle_on_random_inputs() {
        let mut rng = crate::verify::test_rng(31);
        for _ in 0..1000 {
            let x = crate::verify::random_int_vec(&mut rng, 32);
            let want = scan_sequential_exclusive(&x).unwrap();
            assert_eq!(scan_hillis_steele(&x).unwrap(), want);
            assert_eq!(scan_blelloch(&x).unwrap(), want);
        }
    }

    #[test]
    fn non_power_of_two_lengths_pad_cleanly() {
        let mut rng = crate::verify::test_rng(37);
        for len in [3usize, 5, 9, 100] {
            let x = crate::verify::random_int_vec(&mut rng, len);
            let want = scan_sequential_exclusive(&x).unwrap();
            assert_eq!(scan_hillis_steele(&x).unwrap(), want);
            assert_eq!(scan_blelloch(&x).unwrap(), want);
            assert_eq!(scan_tiled(&x, 4).unwrap(), want);
        }
    }

    #[test]
    fn tiled_single_tile_equals_blelloch() {
        let mut rng = crate::verify::test_rng(41);
        let x = crate::verify::random_int_vec(&mut rng, 8);
        assert_eq!(scan_tiled(&x, 8).unwrap(), scan_blelloch(&x).unwrap());
    }

    #[test]
    fn step_counts_match_theory() {
        let x: Vec<i64> = (1..=32).collect();
        let (_, hs) = scan_hillis_steele_traced(&x).unwrap();
        assert_eq!(hs.steps, 5); // log2(32)
        assert_eq!(hs.ops, 32 * 5 - 31); // N*log2(N) - (N-1)
        let (_, b) = scan_blelloch_traced(&x).unwrap();
        assert_eq!(b.steps, 10); // 2*log2(32)
        assert_eq!(b.ops, 2 * 31); // 2*(N-1)
    }

    #[test]
    fn n8_op_counts() {
        let x: Vec<i64> = (1..=8).collect();
        let (_, hs) = scan_hillis_steele_traced(&x).unwrap();
        let (_, b) = scan_blelloch_traced(&x).unwrap();
        assert_eq!(hs.ops, 17);
        assert_eq!(b.ops, 14);
    }

    #[test]
    fn fold_oracle_agrees() {
        let mut rng = crate::verify::test_rng(43);
        let x = crate::verify::random_int_vec(&mut rng, 64);
        let got = scan_sequential_exclusive(&x).unwrap();
        for (j, &v) in got.iter().enumerate() {
            let want: i64 = x[..j].iter().sum();
            assert_eq!(v, want);
        }
    }
}
