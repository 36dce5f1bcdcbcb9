//! Product formulas for grid partition functions.
//!
//! Everything is accumulated as a sum of logarithms of the positive
//! quadratic factors, so large grids never overflow; the linear value is
//! reported alongside when it fits in a double.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{pairwise_sum, MPoly};

/// A closed-form evaluation. `value` is `sign * exp(log_value)` and is
/// infinite when that does not fit in a double.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaResult {
    pub value: f64,
    pub log_value: f64,
    pub sign: i8,
    pub parity_case: String,
    pub factor_log: Vec<(String, f64)>,
}

impl FormulaResult {
    fn from_factors(parity_case: String, factors: Vec<(String, f64, i8)>) -> FormulaResult {
        let sign = factors.iter().map(|f| f.2).product::<i8>();
        let mut logs: Vec<f64> = factors.iter().map(|f| f.1).collect();
        let log_value = if sign == 0 { f64::NEG_INFINITY } else { pairwise_sum(&mut logs) };
        let value = if sign == 0 { 0.0 } else { f64::from(sign) * log_value.exp() };
        FormulaResult {
            value,
            log_value,
            sign,
            parity_case,
            factor_log: factors.into_iter().map(|(n, l, _)| (n, l)).collect(),
        }
    }

    pub fn is_representable(&self) -> bool {
        self.value.is_finite()
    }
}

fn cos2(i: usize, m: usize) -> f64 {
    let c = (PI * i as f64 / (m + 1) as f64).cos();
    c * c
}

fn log_factor(v: f64) -> (f64, i8) {
    if v == 0.0 {
        (f64::NEG_INFINITY, 0)
    } else {
        (v.abs().ln(), if v > 0.0 { 1 } else { -1 })
    }
}

/// Sum of `ln(f)` over the multi-index box `1..=bound[p]`, together with
/// the sign of the product.
fn log_box_product(bounds: &[usize], f: impl Fn(&[usize]) -> f64) -> (f64, i8) {
    if bounds.contains(&0) {
        return (0.0, 1);
    }
    let mut idx = vec![1; bounds.len()];
    let mut logs = Vec::with_capacity(bounds.iter().product());
    let mut sign = 1i8;
    loop {
        let (l, s) = log_factor(f(&idx));
        if s == 0 {
            return (f64::NEG_INFINITY, 0);
        }
        sign *= s;
        logs.push(l);
        let mut p = 0;
        loop {
            if p == bounds.len() {
                return (pairwise_sum(&mut logs), sign);
            }
            idx[p] += 1;
            if idx[p] <= bounds[p] {
                break;
            }
            idx[p] = 1;
            p += 1;
        }
    }
}

/// Perfect-matching generating function of the `m x n` grid with
/// horizontal weight `a` and vertical weight `b`; both sides must be even.
pub fn kasteleyn_2d_dimers(m: usize, n: usize, a: f64, b: f64) -> Result<f64> {
    Ok(kasteleyn_2d_dimers_log(m, n, a, b)?.value)
}

pub fn kasteleyn_2d_dimers_log(m: usize, n: usize, a: f64, b: f64) -> Result<FormulaResult> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidSize("grid sides must be positive".into()));
    }
    if m % 2 == 1 || n % 2 == 1 {
        return Err(Error::UnsupportedParity(format!(
            "the dimer product formula needs both sides even, got {m} x {n}"
        )));
    }
    let scale = (m * n / 2) as f64 * 2f64.ln();
    let (l, s) = log_box_product(&[m / 2, n / 2], |ij| {
        a * a * cos2(ij[0], m) + b * b * cos2(ij[1], n)
    });
    Ok(FormulaResult::from_factors(
        "even-even".into(),
        vec![("2^(mn/2)".into(), scale, 1), ("product".into(), l, s)],
    ))
}

/// `prod_{k <= n/2} (x^2 + 4 c^2 cos^2(pi k / (n+1)))`.
#[allow(non_snake_case)]
pub fn S_factor(n: usize, c: f64, x: f64) -> f64 {
    let (l, s) = log_S(n, c, x);
    f64::from(s) * l.exp()
}

/// `prod_{j <= n/2} prod_{k <= l/2} (x^2 + 4 a^2 cos^2(pi k/(l+1)) + 4 b^2 cos^2(pi j/(n+1)))`.
#[allow(non_snake_case)]
pub fn T_factor(n: usize, l: usize, a: f64, b: f64, x: f64) -> f64 {
    let (lg, s) = log_T(n, l, a, b, x);
    f64::from(s) * lg.exp()
}

#[allow(non_snake_case)]
fn log_S(n: usize, c: f64, x: f64) -> (f64, i8) {
    log_box_product(&[n / 2], |k| x * x + 4.0 * c * c * cos2(k[0], n))
}

#[allow(non_snake_case)]
fn log_T(n: usize, l: usize, a: f64, b: f64, x: f64) -> (f64, i8) {
    log_box_product(&[n / 2, l / 2], |jk| {
        x * x + 4.0 * a * a * cos2(jk[1], l) + 4.0 * b * b * cos2(jk[0], n)
    })
}

/// Three-dimensional grid `l x m x n` with weights `a, b, c` along the three
/// axes and vertex weight `x`, from the eight-way parity case table.
pub fn z3_grid(l: usize, m: usize, n: usize, a: f64, b: f64, c: f64, x: f64) -> Result<FormulaResult> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::InvalidSize("grid dimensions must be positive".into()));
    }
    let (main, ms) = log_box_product(&[l / 2, m / 2, n / 2], |i| {
        x * x + 4.0 * a * a * cos2(i[0], l) + 4.0 * b * b * cos2(i[1], m) + 4.0 * c * c * cos2(i[2], n)
    });
    let mut f: Vec<(String, f64, i8)> = vec![("main^4".into(), 4.0 * main, ms.pow(4))];
    let sq = |name: &str, (lg, s): (f64, i8)| (format!("{name}^2"), 2.0 * lg, s * s);
    let t_nm = || sq("T_nm(b,c)", log_T(n, m, b, c, x));
    let t_nl = || sq("T_nl(a,c)", log_T(n, l, a, c, x));
    let t_ml = || sq("T_ml(a,b)", log_T(m, l, a, b, x));
    let s = |name: &str, (lg, s): (f64, i8)| (name.to_string(), lg, s);
    let parity = |v: usize| if v.is_multiple_of(2) { "even" } else { "odd" };
    match (l.is_multiple_of(2), m.is_multiple_of(2), n.is_multiple_of(2)) {
        (true, true, true) => {}
        (false, true, true) => f.push(t_nm()),
        (true, false, true) => f.push(t_nl()),
        (false, false, true) => {
            f.extend([t_nm(), t_nl(), s("S_n(c)", log_S(n, c, x))]);
        }
        (true, true, false) => f.push(t_ml()),
        (false, true, false) => {
            f.extend([t_nm(), t_ml(), s("S_m(b)", log_S(m, b, x))]);
        }
        (true, false, false) => {
            f.extend([t_nl(), t_ml(), s("S_l(a)", log_S(l, a, x))]);
        }
        (false, false, false) => {
            let (lx, sx) = log_factor(x);
            f.extend([
                ("x".to_string(), lx, sx),
                t_nm(),
                t_nl(),
                t_ml(),
                s("S_n(c)", log_S(n, c, x)),
                s("S_m(b)", log_S(m, b, x)),
                s("S_l(a)", log_S(l, a, x)),
            ]);
        }
    }
    Ok(FormulaResult::from_factors(
        format!("{}-{}-{}", parity(l), parity(m), parity(n)),
        f,
    ))
}

/// `d`-dimensional grid as a product over subsets `S` of the odd sides of
/// `T_S^(2^(d-1-|S|))`; when every side is odd the `S = [d]` term is the
/// literal factor `x`.
pub fn zd_grid(dims: &[usize], weights: &[f64], x: f64) -> Result<FormulaResult> {
    let d = dims.len();
    if d == 0 || dims.contains(&0) {
        return Err(Error::InvalidSize("grid dimensions must be positive".into()));
    }
    if weights.len() != d {
        return Err(Error::InvalidInput(format!("{} weights for {d} dimensions", weights.len())));
    }
    if d > 60 {
        return Err(Error::InvalidSize("at most 60 dimensions".into()));
    }
    let odd: Vec<usize> = (0..d).filter(|&i| dims[i] % 2 == 1).collect();
    let mut f = Vec::with_capacity(1 << odd.len());
    for mask in 0u64..(1u64 << odd.len()) {
        let in_s: Vec<bool> = {
            let mut v = vec![false; d];
            for (b, &i) in odd.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v[i] = true;
                }
            }
            v
        };
        let size = mask.count_ones() as usize;
        let name = format!(
            "T_{{{}}}",
            (0..d)
                .filter(|&i| in_s[i])
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        if size == d {
            let (lx, sx) = log_factor(x);
            f.push(("x".to_string(), lx, sx));
            continue;
        }
        let rest: Vec<usize> = (0..d).filter(|&i| !in_s[i]).collect();
        let bounds: Vec<usize> = rest.iter().map(|&p| dims[p] / 2).collect();
        let (lg, s) = log_box_product(&bounds, |idx| {
            x * x
                + rest
                    .iter()
                    .zip(idx)
                    .map(|(&p, &i)| 4.0 * weights[p] * weights[p] * cos2(i, dims[p]))
                    .sum::<f64>()
        });
        let power = 2f64.powi((d - 1 - size) as i32);
        let sp = if s < 0 && (d - 1 - size) == 0 { -1 } else if s == 0 { 0 } else { 1 };
        f.push((format!("{name}^{power}"), power * lg, sp));
    }
    let case = if odd.is_empty() {
        "all-even".to_string()
    } else {
        format!(
            "odd:{}",
            odd.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        )
    };
    Ok(FormulaResult::from_factors(case, f))
}

/// `(x^2 + a_1^2 + ... + a_d^2)^(2^(d-1))` for the `d`-cube.
pub fn hypercube_pf(weights: &[MPoly], x: &MPoly) -> Result<MPoly> {
    let d = weights.len();
    if d == 0 {
        return Err(Error::InvalidSize("hypercube needs d >= 1".into()));
    }
    if d > 32 {
        return Err(Error::ExponentOverflow);
    }
    let base = weights
        .iter()
        .try_fold(x.pow(2)?, |acc, a| Ok::<_, Error>(acc.add(&a.pow(2)?)))?;
    base.pow(1u32 << (d - 1))
}
