//! Averages over the cube `[0, pi/2]^dim`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::poly::pairwise_sum;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Nodes on `[0, pi/2]` with weights summing to one.
fn averaging_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let t = x.iter().map(|&xi| FRAC_PI_2 * 0.5 * (xi + 1.0)).collect();
    let w = w.iter().map(|&wi| 0.5 * wi).collect();
    (t, w)
}

/// Integrand writing `width` components for one point of the cube.
pub type Integrand<'a> = &'a dyn Fn(&[f64], &mut [f64]);

/// Tensor Gauss-Legendre average with `n` nodes per axis.
pub fn tensor_average(dim: usize, n: usize, width: usize, f: Integrand) -> Vec<f64> {
    let mut out = vec![0.0; width];
    if dim == 0 {
        f(&[], &mut out);
        return out;
    }
    let (t, w) = averaging_rule(n);
    // partial[axis][c * n + i] holds the weighted contribution of node i on
    // that axis to component c, for the current prefix of outer indices.
    let mut partial = vec![vec![0.0; width * n]; dim];
    let mut idx = vec![0usize; dim];
    let mut point = vec![0.0; dim];
    let last = dim - 1;
    loop {
        for (p, &i) in point.iter_mut().zip(&idx) {
            *p = t[i];
        }
        f(&point, &mut out);
        let i = idx[last];
        for (c, v) in out.iter().enumerate() {
            partial[last][c * n + i] = w[i] * v;
        }
        let mut axis = last;
        loop {
            idx[axis] += 1;
            if idx[axis] < n {
                break;
            }
            idx[axis] = 0;
            if axis == 0 {
                return (0..width)
                    .map(|c| pairwise_sum(&mut partial[0][c * n..(c + 1) * n]))
                    .collect();
            }
            let j = idx[axis - 1];
            for c in 0..width {
                let s = pairwise_sum(&mut partial[axis][c * n..(c + 1) * n]);
                partial[axis - 1][c * n + j] = w[j] * s;
            }
            axis -= 1;
        }
    }
}

/// Additive recurrence with the generalised golden ratio in `dim` dimensions.
fn kronecker_alpha(dim: usize) -> Vec<f64> {
    let mut g = 2.0f64;
    for _ in 0..128 {
        g = (1.0 + g).powf(1.0 / (dim as f64 + 1.0));
    }
    (1..=dim).map(|j| g.powi(-(j as i32)).fract()).collect()
}

/// Kronecker-sequence average over the cube, offset by `shift` in the unit
/// cube.
///
/// The integrands used here depend on each angle through `cos^2`, so they
/// are `pi`-periodic and even about `pi / 2`; a sample `u` of the unit cube
/// maps to the angle `pi * u`.
pub fn kronecker_average(shift: &[f64], samples: usize, width: usize, f: Integrand) -> Vec<f64> {
    const CHUNK: usize = 4096;
    let dim = shift.len();
    let alpha = kronecker_alpha(dim);
    let mut u: Vec<f64> = shift.iter().map(|s| s.rem_euclid(1.0)).collect();
    let mut point = vec![0.0; dim];
    let mut out = vec![0.0; width];
    let mut chunk = vec![Vec::with_capacity(CHUNK); width];
    let mut totals = vec![Vec::new(); width];
    for k in 0..samples {
        for ((p, ui), a) in point.iter_mut().zip(u.iter_mut()).zip(&alpha) {
            *p = PI * *ui;
            *ui += a;
            if *ui >= 1.0 {
                *ui -= 1.0;
            }
        }
        f(&point, &mut out);
        for (c, v) in out.iter().enumerate() {
            chunk[c].push(*v);
        }
        if (k + 1) % CHUNK == 0 || k + 1 == samples {
            for c in 0..width {
                totals[c].push(pairwise_sum(&mut chunk[c]));
                chunk[c].clear();
            }
        }
    }
    totals
        .iter_mut()
        .map(|t| pairwise_sum(t) / samples.max(1) as f64)
        .collect()
}
