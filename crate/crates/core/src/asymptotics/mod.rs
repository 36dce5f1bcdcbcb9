//! Free energy and densities of the infinite `d`-dimensional grid.
//!
//! Every integral is an average over angles in `[0, pi/2]`, with
//! `D = x^2 + sum_s 4 a_s^2 cos^2(theta_s)`.

pub mod elliptic;
pub mod quadrature;

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
pub use elliptic::{
    carlson_rd, carlson_rf, ellip_e, ellip_e_inc, ellip_f, ellip_fe, ellip_k, ellip_ke, elliptic_suite, heuman_lambda,
    heuman_lambda_sc, jacobi_zeta, EllipticKind,
};
use quadrature::{kronecker_average, tensor_average, Integrand};

/// Largest number of axes integrated by tensor quadrature.
pub const TENSOR_MAX_AXES: usize = 4;

/// Tensor grids with more points than this estimate their error from half
/// the nodes instead of twice the nodes.
const DOUBLING_POINT_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityOptions {
    /// Gauss-Legendre nodes per axis.
    pub nodes: usize,
    /// Kronecker samples per shift.
    pub samples: usize,
    /// Seed for the two Kronecker shifts.
    pub seed: u64,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions {
            nodes: 64,
            samples: 1 << 20,
            seed: 0,
        }
    }
}

/// A value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub est_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub d: usize,
    pub rho_x: f64,
    /// One density per edge direction, in the order of the weights.
    pub rho_edges: Vec<f64>,
    pub phi: f64,
    pub method: String,
    pub est_error: f64,
}

impl DensityReport {
    /// `|rho_x + sum(rho_edges) - 1|`.
    pub fn sum_rule_residual(&self) -> f64 {
        (self.rho_x + self.rho_edges.iter().sum::<f64>() - 1.0).abs()
    }
}

/// Quadrature values with per-component error estimates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Averages {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub method: String,
}

impl Averages {
    pub fn max_error(&self) -> f64 {
        self.errors.iter().fold(0.0, |m, e| m.max(*e))
    }
}

fn check_options(opts: &DensityOptions) -> Result<()> {
    if opts.nodes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 nodes per axis, got {}", opts.nodes)));
    }
    if opts.samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    Ok(())
}

/// Averages `f` over `[0, pi/2]^axes`, by tensor quadrature for few axes
/// and a doubly shifted Kronecker sequence otherwise.
fn average(axes: usize, width: usize, opts: &DensityOptions, f: Integrand) -> Result<Averages> {
    check_options(opts)?;
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect::<Vec<_>>();
    if axes <= TENSOR_MAX_AXES {
        let n = opts.nodes;
        let values = tensor_average(axes, n, width, f);
        if axes == 0 {
            return Ok(Averages {
                errors: vec![0.0; width],
                values,
                method: "closed".into(),
            });
        }
        let doubled = (2 * n).checked_pow(axes as u32).is_some_and(|p| p <= DOUBLING_POINT_CAP);
        let other = if doubled { 2 * n } else { (n / 2).max(1) };
        let check = tensor_average(axes, other, width, f);
        Ok(Averages {
            errors: diff(&values, &check),
            values,
            method: format!("gauss-legendre {n}^{axes} (checked against {other}^{axes})"),
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let s1: Vec<f64> = (0..axes).map(|_| rng.gen()).collect();
        let s2: Vec<f64> = (0..axes).map(|_| rng.gen()).collect();
        let i1 = kronecker_average(&s1, opts.samples, width, f);
        let i2 = kronecker_average(&s2, opts.samples, width, f);
        Ok(Averages {
            errors: diff(&i1, &i2),
            values: i1.iter().zip(&i2).map(|(a, b)| 0.5 * (a + b)).collect(),
            method: format!("kronecker {}-dim, 2 shifts x {} samples, seed {}", axes, opts.samples, opts.seed),
        })
    }
}

fn check_weight(name: &str, w: f64, positive: bool) -> Result<()> {
    if !w.is_finite() || w < 0.0 || (positive && w == 0.0) {
        let need = if positive { "positive" } else { "non-negative" };
        return Err(Error::Domain(format!("weight {name} must be finite and {need}, got {w}")));
    }
    Ok(())
}

/// `Phi_3` by triple Gauss-Legendre quadrature.
pub fn free_energy_3d(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(free_energy_3d_estimate(a, b, c, x, 64)?.value)
}

pub fn free_energy_3d_estimate(a: f64, b: f64, c: f64, x: f64, nodes: usize) -> Result<Estimate> {
    for (n, w) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        check_weight(n, w, false)?;
    }
    if a == 0.0 && b == 0.0 && c == 0.0 && x == 0.0 {
        return Err(Error::Domain("free energy diverges when every weight is zero".into()));
    }
    let w2 = [4.0 * a * a, 4.0 * b * b, 4.0 * c * c];
    let x2 = x * x;
    let f = |t: &[f64], out: &mut [f64]| {
        let d: f64 = x2 + t.iter().zip(&w2).map(|(th, w)| w * th.cos().powi(2)).sum::<f64>();
        out[0] = 0.5 * d.ln();
    };
    let opts = DensityOptions {
        nodes,
        ..DensityOptions::default()
    };
    let avg = average(3, 1, &opts, &f)?;
    Ok(Estimate {
        value: avg.values[0],
        est_error: avg.errors[0],
    })
}

/// `Phi_d` for positive `x` or at least one positive weight, with the
/// average over the first angle done in closed form.
pub fn free_energy(weights: &[f64], x: f64, opts: &DensityOptions) -> Result<Estimate> {
    if weights.is_empty() {
        return Err(Error::InvalidInput("need at least one edge weight".into()));
    }
    check_weight("x", x, false)?;
    for (s, &w) in weights.iter().enumerate() {
        check_weight(&format!("a{}", s + 1), w, false)?;
    }
    if x == 0.0 && weights.iter().all(|&w| w == 0.0) {
        return Err(Error::Domain("free energy diverges when every weight is zero".into()));
    }
    let a1 = 4.0 * weights[0] * weights[0];
    let rest: Vec<f64> = weights[1..].iter().map(|w| 4.0 * w * w).collect();
    let x2 = x * x;
    let f = |t: &[f64], out: &mut [f64]| {
        let big_a: f64 = x2 + t.iter().zip(&rest).map(|(th, w)| w * th.cos().powi(2)).sum::<f64>();
        out[0] = (0.5 * (big_a.sqrt() + (big_a + a1).sqrt())).ln();
    };
    let avg = average(rest.len(), 1, opts, &f)?;
    Ok(Estimate {
        value: avg.values[0],
        est_error: avg.errors[0],
    })
}

/// Densities `[rho_x, rho_a1, ..., rho_ad]` as direct averages over all `d`
/// angles, valid for any non-negative weights with `D > 0` almost everywhere.
fn direct_densities(weights: &[f64], x: f64, opts: &DensityOptions) -> Result<Averages> {
    let w2: Vec<f64> = weights.iter().map(|w| 4.0 * w * w).collect();
    let x2 = x * x;
    let f = |t: &[f64], out: &mut [f64]| {
        let mut d = x2;
        for (s, (th, w)) in t.iter().zip(&w2).enumerate() {
            let term = w * th.cos().powi(2);
            out[s + 1] = term;
            d += term;
        }
        out[0] = x2;
        for o in out.iter_mut() {
            *o /= d;
        }
    };
    average(weights.len(), weights.len() + 1, opts, &f)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ElliptKey {
    edge: bool,
    first: u64,
    second: u64,
    rest: Vec<u64>,
}

/// One density in the elliptic form. `w1` is the direction whose density
/// is wanted (or the first of the pair for the monopoles), `w2` its partner
/// and `rest` the directions left as angles.
struct ElliptTerm {
    edge: bool,
    w1: f64,
    w2: f64,
    rest: Vec<f64>,
}

impl ElliptTerm {
    fn eval(&self, t: &[f64], x2: f64) -> Result<f64> {
        let s: f64 = t.iter().zip(&self.rest).map(|(th, w)| 4.0 * w * w * th.cos().powi(2)).sum();
        let base = x2 + s;
        let (p1, p2) = (base + 4.0 * self.w1 * self.w1, base + 4.0 * self.w2 * self.w2);
        let q = 4.0 * self.w1 * self.w2 / (p1 * p2).sqrt();
        if !self.edge {
            return Ok(x2 / (2.0 * PI * self.w1 * self.w2) * q * ellip_k(q)?);
        }
        let eps = (p2.sqrt() / (2.0 * self.w1)).atan();
        let kp = ((1.0 - q) * (1.0 + q)).sqrt();
        Ok(1.0 - heuman_lambda_sc(eps, q, kp)?)
    }
}

/// Densities `[rho_x, rho_a1, ..., rho_ad]` in the elliptic form, as
/// averages over `d - 2` angles. Needs positive weights and `d >= 2`.
fn elliptic_densities(weights: &[f64], x: f64, opts: &DensityOptions) -> Result<Averages> {
    let d = weights.len();
    let sorted_rest = |skip: [usize; 2]| {
        let mut r: Vec<f64> = (0..d).filter(|i| !skip.contains(i)).map(|i| weights[i]).collect();
        r.sort_by(f64::total_cmp);
        r
    };
    let bits = |v: &[f64]| v.iter().map(|w| w.to_bits()).collect::<Vec<_>>();
    let mut terms: Vec<ElliptTerm> = Vec::new();
    let mut slot: HashMap<ElliptKey, usize> = HashMap::new();
    let mut slot_of = Vec::with_capacity(d + 1);
    for target in std::iter::once(None).chain((0..d).map(Some)) {
        let (i, j) = match target {
            None => (0, 1),
            Some(0) => (0, 1),
            Some(s) => (s, 0),
        };
        let rest = sorted_rest([i, j]);
        let key = ElliptKey {
            edge: target.is_some(),
            first: weights[i].to_bits(),
            second: weights[j].to_bits(),
            rest: bits(&rest),
        };
        let idx = *slot.entry(key).or_insert_with(|| {
            terms.push(ElliptTerm {
                edge: target.is_some(),
                w1: weights[i],
                w2: weights[j],
                rest,
            });
            terms.len() - 1
        });
        slot_of.push(idx);
    }
    let x2 = x * x;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = |t: &[f64], out: &mut [f64]| {
        for (o, term) in out.iter_mut().zip(&terms) {
            *o = term.eval(t, x2).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            });
        }
    };
    let avg = average(d - 2, terms.len(), opts, &f)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(Averages {
        values: slot_of.iter().map(|&k| avg.values[k]).collect(),
        errors: slot_of.iter().map(|&k| avg.errors[k]).collect(),
        method: avg.method,
    })
}

fn sum_residual(v: &[f64]) -> f64 {
    (v.iter().sum::<f64>() - 1.0).abs()
}

/// Densities of the three-dimensional grid by triple quadrature, checked
/// against the single-integral elliptic forms when every weight is
/// positive.
pub fn rho_3(a: f64, b: f64, c: f64, x: f64) -> Result<DensityReport> {
    rho_3_with(a, b, c, x, &DensityOptions::default())
}

pub fn rho_3_with(a: f64, b: f64, c: f64, x: f64, opts: &DensityOptions) -> Result<DensityReport> {
    for (n, w) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        check_weight(n, w, false)?;
    }
    if x == 0.0 && [a, b, c].iter().filter(|&&w| w > 0.0).count() < 2 {
        return Err(Error::Domain("densities need x > 0 or two positive edge weights".into()));
    }
    let direct = rho_3_triple(a, b, c, x, opts)?;
    let phi = free_energy_3d_estimate(a, b, c, x, opts.nodes)?;
    let mut est_error = direct.max_error().max(phi.est_error).max(sum_residual(&direct.values));
    let mut method = format!("triple {}", direct.method);
    if [a, b, c, x].iter().all(|&w| w > 0.0) {
        match rho_3_elliptic(a, b, c, x, opts) {
            Ok(ell) => {
                let gap = ell.iter().zip(&direct.values).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
                est_error = est_error.max(gap);
                method.push_str("; elliptic route agrees");
            }
            Err(e) => method.push_str(&format!("; elliptic route unavailable: {e}")),
        }
    } else {
        method.push_str("; elliptic route skipped for a zero weight");
    }
    Ok(DensityReport {
        d: 3,
        rho_x: direct.values[0],
        rho_edges: direct.values[1..].to_vec(),
        phi: phi.value,
        method,
        est_error,
    })
}

/// `[rho_x, rho_a, rho_b, rho_c]` by triple quadrature.
pub fn rho_3_triple(a: f64, b: f64, c: f64, x: f64, opts: &DensityOptions) -> Result<Averages> {
    direct_densities(&[a, b, c], x, opts)
}

/// `[rho_x, rho_a, rho_b, rho_c]` from the single-integral elliptic forms.
pub fn rho_3_elliptic(a: f64, b: f64, c: f64, x: f64, opts: &DensityOptions) -> Result<Vec<f64>> {
    for (n, w) in [("a", a), ("b", b), ("c", c), ("x", x)] {
        check_weight(n, w, true)?;
    }
    Ok(elliptic_densities(&[a, b, c], x, opts)?.values)
}

/// Densities of the `d`-dimensional grid from the elliptic forms, as an
/// average over `d - 2` angles.
pub fn rho_d_x(d: usize, weights: &[f64], x: f64, opts: &DensityOptions) -> Result<DensityReport> {
    if d < 3 {
        return Err(Error::Domain(format!(
            "rho_d_x needs d >= 3, got {d}; use rho_3 or the two-dimensional closed form"
        )));
    }
    if weights.len() != d {
        return Err(Error::InvalidInput(format!("expected {d} edge weights, got {}", weights.len())));
    }
    check_weight("x", x, true)?;
    for (s, &w) in weights.iter().enumerate() {
        check_weight(&format!("a{}", s + 1), w, true)?;
    }
    let ell = elliptic_densities(weights, x, opts)?;
    let phi = free_energy(weights, x, opts)?;
    let est_error = ell.max_error().max(phi.est_error).max(sum_residual(&ell.values));
    Ok(DensityReport {
        d,
        rho_x: ell.values[0],
        rho_edges: ell.values[1..].to_vec(),
        phi: phi.value,
        method: ell.method,
        est_error,
    })
}

/// `rho_d_x` at unit edge weights for each `d`.
pub fn density_sweep(dims: impl IntoIterator<Item = usize>, x: f64, opts: &DensityOptions) -> Result<Vec<DensityReport>> {
    dims.into_iter().map(|d| rho_d_x(d, &vec![1.0; d], x, opts)).collect()
}
