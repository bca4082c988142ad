//! Bracketed root finding: bisection with secant / inverse-quadratic
//! acceleration (Brent's method).

use crate::error::{Error, Result};

/// Stopping criteria for [`find_root`].
#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            x_tol: 1e-12,
            f_tol: 1e-13,
            max_iter: 200,
        }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_tol > 0.0) || !(self.f_tol > 0.0) || self.max_iter == 0 {
            return Err(Error::InvalidParams(format!(
                "root config requires positive tolerances and max_iter >= 1, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Find a root of `f` on the bracket [lo, hi] with f(lo)·f(hi) <= 0.
///
/// Returns x with |f(x)| <= f_tol or bracket width <= x_tol.
pub fn find_root<F>(f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(Error::NonFinite(a));
    }
    if !fb.is_finite() {
        return Err(Error::NonFinite(b));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NotBracketed { lo, hi });
    }

    // keep |f(b)| <= |f(a)|; c is the previous iterate
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..cfg.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * cfg.x_tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= cfg.f_tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // attempt inverse quadratic interpolation / secant
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite(b));
        }
    }
    Err(Error::RootNonConvergence(cfg.max_iter))
}
