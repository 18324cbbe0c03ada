//! Exact convolution over `Z/n1 x ... x Z/nk` (mixed-radix indexing, first
//! factor most significant).

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Which kernel produced a convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionKernel {
    Naive,
    Fft,
}

/// `out[c] = Σ_{a + b = c} f[a] g[b]` over the product of cyclic groups with
/// the given factor orders. Uses floating-point FFT when the a-priori error
/// bound is below 1/2 and the rounded output checks out, otherwise the naive
/// sparse loop.
pub fn cyclic_convolution(dims: &[usize], f: &[u64], g: &[u64]) -> (Vec<u64>, ConvolutionKernel) {
    let n: usize = dims.iter().product();
    assert_eq!(f.len(), n);
    assert_eq!(g.len(), n);
    let l1f: f64 = f.iter().map(|&x| x as f64).sum();
    let l1g: f64 = g.iter().map(|&x| x as f64).sum();
    let depth = (n.max(2) as f64).log2() + 1.0;
    let bound = 10.0 * f64::EPSILON * depth * l1f * l1g;
    if bound < 0.5 && n > 1 {
        if let Some(out) = fft_convolution(dims, f, g) {
            return (out, ConvolutionKernel::Fft);
        }
    }
    (naive_convolution(dims, f, g), ConvolutionKernel::Naive)
}

/// Mixed-radix addition of indices.
pub(crate) fn add_indices(dims: &[usize], a: usize, b: usize) -> usize {
    let mut out = 0;
    let mut stride = 1;
    let (mut ra, mut rb) = (a, b);
    for &d in dims.iter().rev() {
        let s = (ra % d + rb % d) % d;
        out += s * stride;
        stride *= d;
        ra /= d;
        rb /= d;
    }
    out
}

pub fn naive_convolution(dims: &[usize], f: &[u64], g: &[u64]) -> Vec<u64> {
    let n = f.len();
    let gs: Vec<(usize, u64)> = g.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
    let mut out = vec![0u64; n];
    for (a, &fa) in f.iter().enumerate() {
        if fa == 0 {
            continue;
        }
        for &(b, gb) in &gs {
            out[add_indices(dims, a, b)] += fa * gb;
        }
    }
    out
}

fn transform(dims: &[usize], data: &mut [Complex64], plans: &[Arc<dyn Fft<f64>>]) {
    let n = data.len();
    let mut inner = n;
    for (axis, &d) in dims.iter().enumerate() {
        inner /= d;
        if d == 1 {
            continue;
        }
        let plan = &plans[axis];
        let outer = n / (d * inner);
        let mut line = vec![Complex64::new(0.0, 0.0); d];
        for o in 0..outer {
            for i in 0..inner {
                let base = o * d * inner + i;
                for k in 0..d {
                    line[k] = data[base + k * inner];
                }
                plan.process(&mut line);
                for k in 0..d {
                    data[base + k * inner] = line[k];
                }
            }
        }
    }
}

fn fft_convolution(dims: &[usize], f: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    let n = f.len();
    let mut planner = FftPlanner::<f64>::new();
    let fwd: Vec<_> = dims.iter().map(|&d| planner.plan_fft(d, FftDirection::Forward)).collect();
    let inv: Vec<_> = dims.iter().map(|&d| planner.plan_fft(d, FftDirection::Inverse)).collect();
    let mut a: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    let mut b: Vec<Complex64> = g.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    transform(dims, &mut a, &fwd);
    transform(dims, &mut b, &fwd);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    transform(dims, &mut a, &inv);
    let scale = 1.0 / n as f64;
    let mut out = Vec::with_capacity(n);
    for z in a {
        let v = z.re * scale;
        let r = v.round();
        if (v - r).abs() > 0.25 || r < 0.0 {
            return None;
        }
        out.push(r as u64);
    }
    Some(out)
}
