//! Elliptic integrals by modulus `k` (not parameter `m = k^2`).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k.abs()) || k.is_nan() {
        return Err(Error::Domain(format!("elliptic modulus must satisfy |k| < 1, got {k}")));
    }
    Ok(())
}

fn check_amplitude(phi: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2 + 1e-15).contains(&phi) {
        return Err(Error::Domain(format!("amplitude must lie in [0, pi/2], got {phi}")));
    }
    Ok(())
}

/// Complete integrals `(K(k), E(k))` by the arithmetic-geometric mean.
pub fn ellip_ke(k: f64) -> Result<(f64, f64)> {
    check_modulus(k)?;
    let mut a = 1.0f64;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut pow2 = 0.5;
    for _ in 0..64 {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    let kk = FRAC_PI_2 / a;
    Ok((kk, kk * (1.0 - sum)))
}

pub fn ellip_k(k: f64) -> Result<f64> {
    Ok(ellip_ke(k)?.0)
}

pub fn ellip_e(k: f64) -> Result<f64> {
    Ok(ellip_ke(k)?.1)
}

/// Carlson's symmetric integral `R_F(x, y, z)`.
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    const TOL: f64 = 1e-3;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let mu = (x + y + z) / 3.0;
        let (dx, dy, dz) = (1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu);
        if dx.abs().max(dy.abs()).max(dz.abs()) < TOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / mu.sqrt();
        }
    }
}

/// Carlson's integral `R_D(x, y, z)`, symmetric in `x` and `y`.
pub fn carlson_rd(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    const TOL: f64 = 1e-3;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 6.0;
    const C3: f64 = 9.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.25 * C3;
    const C6: f64 = 1.5 * C4;
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let ave = 0.2 * (x + y + 3.0 * z);
        let (dx, dy, dz) = ((ave - x) / ave, (ave - y) / ave, (ave - z) / ave);
        if dx.abs().max(dy.abs()).max(dz.abs()) < TOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let series = 1.0
                + ed * (-C1 + C5 * ed - C6 * dz * ee)
                + dz * (C2 * ee + dz * (-C3 * ec + dz * C4 * ea));
            return 3.0 * sum + fac * series / (ave * ave.sqrt());
        }
    }
}

/// Incomplete integrals `(F(phi, k), E(phi, k))` for `phi` in `[0, pi/2]`.
pub fn ellip_fe(phi: f64, k: f64) -> Result<(f64, f64)> {
    check_modulus(k)?;
    check_amplitude(phi)?;
    if phi == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (s, c) = phi.sin_cos();
    let c2 = c * c;
    let q = 1.0 - k * k * s * s;
    let rf = carlson_rf(c2, q, 1.0);
    let rd = carlson_rd(c2, q, 1.0);
    Ok((s * rf, s * rf - k * k * s * s * s * rd / 3.0))
}

pub fn ellip_f(phi: f64, k: f64) -> Result<f64> {
    Ok(ellip_fe(phi, k)?.0)
}

pub fn ellip_e_inc(phi: f64, k: f64) -> Result<f64> {
    Ok(ellip_fe(phi, k)?.1)
}

/// `Z(phi, k) = E(phi, k) - E(k) F(phi, k) / K(k)`.
pub fn jacobi_zeta(phi: f64, k: f64) -> Result<f64> {
    let (f, e) = ellip_fe(phi, k)?;
    let (kk, ek) = ellip_ke(k)?;
    Ok(e - ek / kk * f)
}

/// Heuman's lambda with the second argument given as an angle `y`:
/// `F(phi, cos y) / K(cos y) + (2/pi) K(sin y) Z(phi, cos y)`.
pub fn heuman_lambda(phi: f64, y: f64) -> Result<f64> {
    let (s, c) = y.sin_cos();
    heuman_lambda_sc(phi, s, c)
}

/// [`heuman_lambda`] with `sin y` and `cos y` supplied directly.
pub fn heuman_lambda_sc(phi: f64, sin_y: f64, cos_y: f64) -> Result<f64> {
    let (f, e) = ellip_fe(phi, cos_y)?;
    let (kc, ec) = ellip_ke(cos_y)?;
    let ks = ellip_k(sin_y)?;
    Ok(f / kc + 2.0 / PI * ks * (e - ec / kc * f))
}

/// Selector for [`elliptic_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    K,
    E,
    F,
    EIncomplete,
    JacobiZeta,
    HeumanLambda,
}

/// Evaluates one function of the suite; `args` is `[k]` for the complete
/// integrals, `[phi, k]` for the incomplete ones and `[phi, y]` for lambda.
pub fn elliptic_suite(kind: EllipticKind, args: &[f64]) -> Result<f64> {
    let want = match kind {
        EllipticKind::K | EllipticKind::E => 1,
        _ => 2,
    };
    if args.len() != want {
        return Err(Error::InvalidInput(format!("{kind:?} takes {want} argument(s), got {}", args.len())));
    }
    match kind {
        EllipticKind::K => ellip_k(args[0]),
        EllipticKind::E => ellip_e(args[0]),
        EllipticKind::F => ellip_f(args[0], args[1]),
        EllipticKind::EIncomplete => ellip_e_inc(args[0], args[1]),
        EllipticKind::JacobiZeta => jacobi_zeta(args[0], args[1]),
        EllipticKind::HeumanLambda => heuman_lambda(args[0], args[1]),
    }
}
