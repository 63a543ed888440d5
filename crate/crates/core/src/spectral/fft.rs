//! Unnormalized 2D/3D complex FFTs over row-major buffers.
//!
//! Plans come from a per-thread planner; scratch buffers are allocated per
//! call, so every transform is safe to run from many workers at once.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, dir: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, dir))
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    const B: usize = 16;
    for r0 in (0..rows).step_by(B) {
        for c0 in (0..cols).step_by(B) {
            for r in r0..(r0 + B).min(rows) {
                for c in c0..(c0 + B).min(cols) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

/// In-place 2D transform of `data` laid out as `ny` rows of `nx` entries.
pub fn fft2(data: &mut [Complex64], nx: usize, ny: usize, dir: FftDirection) {
    debug_assert_eq!(data.len(), nx * ny);
    let row = plan(nx, dir);
    let col = plan(ny, dir);
    let mut scratch =
        vec![Complex64::default(); row.get_inplace_scratch_len().max(col.get_inplace_scratch_len())];
    row.process_with_scratch(data, &mut scratch);
    let mut t = vec![Complex64::default(); data.len()];
    transpose(data, &mut t, ny, nx);
    col.process_with_scratch(&mut t, &mut scratch);
    transpose(&t, data, nx, ny);
}

/// In-place 3D transform of `nt` stacked `ny x nx` slices.
pub fn fft3(data: &mut [Complex64], nx: usize, ny: usize, nt: usize, dir: FftDirection) {
    let plane = nx * ny;
    debug_assert_eq!(data.len(), plane * nt);
    for slice in data.chunks_exact_mut(plane) {
        fft2(slice, nx, ny, dir);
    }
    let time = plan(nt, dir);
    let mut scratch = vec![Complex64::default(); time.get_inplace_scratch_len()];
    let mut t = vec![Complex64::default(); data.len()];
    transpose(data, &mut t, nt, plane);
    time.process_with_scratch(&mut t, &mut scratch);
    transpose(&t, data, plane, nt);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft2(x: &[Complex64], nx: usize, ny: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); nx * ny];
        for q in 0..ny {
            for p in 0..nx {
                let mut acc = Complex64::default();
                for j in 0..ny {
                    for i in 0..nx {
                        let ph = -2.0 * PI * ((p * i) as f64 / nx as f64 + (q * j) as f64 / ny as f64);
                        acc += x[j * nx + i] * Complex64::from_polar(1.0, ph);
                    }
                }
                out[q * nx + p] = acc;
            }
        }
        out
    }

    #[test]
    fn matches_direct_summation() {
        let (nx, ny) = (8, 12);
        let x: Vec<Complex64> = (0..nx * ny)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut y = x.clone();
        fft2(&mut y, nx, ny, FftDirection::Forward);
        let z = naive_dft2(&x, nx, ny);
        for (a, b) in y.iter().zip(&z) {
            assert!((a - b).norm() < 1e-11);
        }
        fft2(&mut y, nx, ny, FftDirection::Inverse);
        for (a, b) in y.iter().zip(&x) {
            assert!((a / (nx * ny) as f64 - b).norm() < 1e-14);
        }
    }

    #[test]
    fn three_dimensional_roundtrip() {
        let (nx, ny, nt) = (8, 8, 6);
        let x: Vec<Complex64> = (0..nx * ny * nt)
            .map(|i| Complex64::new((i as f64).sqrt().sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut y = x.clone();
        fft3(&mut y, nx, ny, nt, FftDirection::Forward);
        // the (0,0,0) coefficient is the plain sum
        let sum: Complex64 = x.iter().sum();
        assert!((y[0] - sum).norm() < 1e-12);
        fft3(&mut y, nx, ny, nt, FftDirection::Inverse);
        let n = (nx * ny * nt) as f64;
        for (a, b) in y.iter().zip(&x) {
            assert!((a / n - b).norm() < 1e-14);
        }
    }
}
