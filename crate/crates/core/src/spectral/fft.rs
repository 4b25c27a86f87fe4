//! Multi-dimensional FFT over row-major complex arrays.
//!
//! Axis passes gather strided lanes into a contiguous scratch tile, run the
//! planned 1-d transforms and scatter back. Slabs along the leading axis are
//! independent, so the pass parallelizes over them without synchronization.

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Lanes per scratch tile; keeps gathers within a few cache lines.
const TILE: usize = 32;

fn plan(n: usize, dir: Direction) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    match dir {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    }
}

/// Transform along one axis, unnormalized in both directions.
pub fn fft_axis(data: &mut [Complex64], shape: &[usize], axis: usize, dir: Direction) {
    let n = shape[axis];
    let stride: usize = shape[axis + 1..].iter().product();
    let slab = n * stride;
    debug_assert_eq!(data.len() % slab, 0);
    let fft = plan(n, dir);

    if stride == 1 {
        // contiguous lanes: rustfft processes consecutive length-n chunks
        let lanes_per_chunk = ((1 << 16) / n).max(1);
        data.par_chunks_mut(lanes_per_chunk * n)
            .for_each(|chunk| fft.process(chunk));
        return;
    }

    data.par_chunks_mut(slab).for_each_init(
        || vec![Complex64::default(); TILE * n],
        |scratch, chunk| {
            let mut i0 = 0;
            while i0 < stride {
                let tl = TILE.min(stride - i0);
                for t in 0..tl {
                    for k in 0..n {
                        scratch[t * n + k] = chunk[k * stride + i0 + t];
                    }
                }
                fft.process(&mut scratch[..tl * n]);
                for t in 0..tl {
                    for k in 0..n {
                        chunk[k * stride + i0 + t] = scratch[t * n + k];
                    }
                }
                i0 += tl;
            }
        },
    );
}

/// Full transform over all axes. The inverse is normalized by `1/N_total`,
/// so `fft_all(Inverse)` undoes `fft_all(Forward)`.
pub fn fft_all(data: &mut [Complex64], shape: &[usize], dir: Direction) {
    for axis in 0..shape.len() {
        fft_axis(data, shape, axis, dir);
    }
    if dir == Direction::Inverse {
        let scale = 1.0 / data.len() as f64;
        data.par_chunks_mut(1 << 16).for_each(|chunk| {
            for v in chunk {
                *v *= scale;
            }
        });
    }
}
