//! Density evaluation through the trigonometric parametrization.
//!
//! For p > 1 the density W_{p,r} is described on the curve
//!     x = ρ(φ) = sin(pφ)^p / (sin φ · sin((p-1)φ)^{p-1}),
//!     W(ρ(φ)) = sin((p-1)φ)^{p-r-1} · sin φ · sin(rφ) / (π sin(pφ)^{p-r})
//! for 0 < φ < π/p, with ρ strictly decreasing onto (0, p^p (p-1)^{1-p}).
//! Evaluation at an x-value inverts ρ by bracketed root finding.
//!
//! For p = 1, 0 < r < 1 the density has the closed form
//!     W_{1,r}(x) = sin(rπ)/π · x^{r-1} (1-x)^{-r}  on (0, 1),
//! and p = r = 1 is the point mass at 1.
//!
//! Near φ = π/p the factor sin(pφ) vanishes; it is evaluated through the
//! reflected angle ψ = π/p - φ using sin(pφ) = sin(pψ), cos(pφ) = -cos(pψ),
//! which hold exactly because p·(π/p) = π. Quadrature therefore runs in the
//! ψ variable, whose singular endpoint sits at zero where f64 keeps full
//! precision.

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_points, QuadratureConfig};
use crate::numerics::roots::{find_root, RootConfig};
use crate::params::FcParams;
use std::f64::consts::PI;

/// Support interval of the distribution; `lo` is always 0 except for the
/// point mass at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SupportInterval {
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

/// Density limit at a support endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryBehavior {
    /// W(x) → +∞ approaching the endpoint from inside.
    Diverges,
    /// W(x) → 0 approaching the endpoint from inside.
    VanishesToZero,
}

/// One interior sample of the density curve. `phi` is present for p > 1
/// (the parametrized families) and absent for the p = 1 closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySample {
    pub phi: Option<f64>,
    pub x: f64,
    pub w: f64,
}

/// Interior samples ordered by strictly increasing x. Boundary points are
/// never sampled; divergent endpoints are reported through
/// [`boundary_behavior`], not as infinities in the grid.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    pub params: FcParams,
    pub samples: Vec<DensitySample>,
}

impl DensityGrid {
    /// Trapezoid-rule mass of the sampled section of the density.
    pub fn trapezoid_mass(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| 0.5 * (w[1].x - w[0].x) * (w[1].w + w[0].w))
            .sum()
    }
}

/// Right support endpoint p^p (p-1)^{1-p} for p > 1 (and 1 for p = 1).
pub fn upper_endpoint(p: f64) -> f64 {
    if p == 1.0 {
        1.0
    } else {
        (p * p.ln() + (1.0 - p) * (p - 1.0).ln()).exp()
    }
}

/// Trigonometric data of the curve at one angle, carrying both the angle φ
/// and the reflected angle ψ = π/p - φ so either endpoint can be resolved
/// to full precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CurvePoint {
    pub p: f64,
    pub phi: f64,
    pub sin_p: f64,
    pub cos_p: f64,
    pub sin_1: f64,
    pub cos_1: f64,
    pub sin_pm1: f64,
    pub cos_pm1: f64,
}

impl CurvePoint {
    /// Build from both angle coordinates; callers that only know one side
    /// derive the other by subtraction from π/p.
    pub fn new(p: f64, phi: f64, psi: f64) -> Self {
        // reflection identities: sin(pφ) = sin(pψ), cos(pφ) = -cos(pψ)
        let (sin_p, cos_p) = if psi < phi {
            let (s, c) = (p * psi).sin_cos();
            (s, -c)
        } else {
            (p * phi).sin_cos()
        };
        let (sin_1, cos_1) = phi.sin_cos();
        let (sin_pm1, cos_pm1) = ((p - 1.0) * phi).sin_cos();
        Self {
            p,
            phi,
            sin_p,
            cos_p,
            sin_1,
            cos_1,
            sin_pm1,
            cos_pm1,
        }
    }

    pub fn from_phi(p: f64, phi: f64) -> Self {
        Self::new(p, phi, PI / p - phi)
    }

    pub fn from_psi(p: f64, psi: f64) -> Self {
        Self::new(p, PI / p - psi, psi)
    }

    /// ln ρ(φ)
    pub fn ln_rho(&self) -> f64 {
        self.p * self.sin_p.ln() - self.sin_1.ln() - (self.p - 1.0) * self.sin_pm1.ln()
    }

    pub fn rho(&self) -> f64 {
        self.ln_rho().exp()
    }

    /// ρ'(φ)/ρ(φ) = p² cot(pφ) - cot(φ) - (p-1)² cot((p-1)φ); negative on the
    /// whole domain.
    pub fn log_derivative_rho(&self) -> f64 {
        self.p * self.p * (self.cos_p / self.sin_p)
            - self.cos_1 / self.sin_1
            - (self.p - 1.0) * (self.p - 1.0) * (self.cos_pm1 / self.sin_pm1)
    }

    /// sin(rφ). For r = p this factor vanishes at φ = π/p together with
    /// sin(pφ) and must go through the same reflection identity.
    pub fn sin_r(&self, r: f64) -> f64 {
        if r == self.p {
            self.sin_p
        } else {
            (r * self.phi).sin()
        }
    }

    /// cos(rφ), through the reflection identity when r = p.
    pub fn cos_r(&self, r: f64) -> f64 {
        if r == self.p {
            self.cos_p
        } else {
            (r * self.phi).cos()
        }
    }

    /// d/dφ [ln W(ρ(φ))] =
    /// (p-r-1)(p-1)cot((p-1)φ) + cot(φ) + r·cot(rφ) - p(p-r)cot(pφ).
    /// Shares its zeros and sign with d/dφ [W(ρ(φ))] since W > 0 inside.
    pub fn log_derivative_w(&self, r: f64) -> f64 {
        (self.p - r - 1.0) * (self.p - 1.0) * (self.cos_pm1 / self.sin_pm1)
            + self.cos_1 / self.sin_1
            + r * (self.cos_r(r) / self.sin_r(r))
            - self.p * (self.p - r) * (self.cos_p / self.sin_p)
    }

    /// ln W_{p,r}(ρ(φ)); requires 0 < r <= p so every factor is positive.
    pub fn ln_w(&self, r: f64) -> f64 {
        (self.p - r - 1.0) * self.sin_pm1.ln() + self.sin_1.ln() + self.sin_r(r).ln()
            - (self.p - r) * self.sin_p.ln()
            - PI.ln()
    }

    /// W(ρ(φ)) for arbitrary real r (negative values signal that the
    /// signed integrand leaves the probability region r <= p).
    pub fn w_signed(&self, r: f64) -> f64 {
        self.sin_pm1.powf(self.p - r - 1.0) * self.sin_1 * self.sin_r(r)
            / (PI * self.sin_p.powf(self.p - r))
    }
}

fn require_parametrized(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "the trigonometric parametrization requires p > 1, got p = {p}"
        )));
    }
    Ok(())
}

fn require_angle(p: f64, phi: f64) -> Result<()> {
    if !(phi > 0.0 && phi < PI / p) {
        return Err(Error::Domain(format!(
            "angle must lie in (0, pi/p) = (0, {}), got {phi}",
            PI / p
        )));
    }
    Ok(())
}

/// The decreasing parametrization ρ(φ) on (0, π/p), p > 1.
pub fn rho(p: f64, phi: f64) -> Result<f64> {
    require_parametrized(p)?;
    require_angle(p, phi)?;
    Ok(CurvePoint::from_phi(p, phi).rho())
}

/// dρ/dφ, strictly negative on (0, π/p).
pub fn rho_prime(p: f64, phi: f64) -> Result<f64> {
    require_parametrized(p)?;
    require_angle(p, phi)?;
    let cp = CurvePoint::from_phi(p, phi);
    Ok(cp.rho() * cp.log_derivative_rho())
}

/// W_{p,r}(ρ(φ)) for arbitrary real r. For r <= p this is the (nonnegative)
/// density on the curve; for r > p the same expression is the signed
/// integrand of the moment identity and may go negative.
pub fn w_parametrized(p: f64, r: f64, phi: f64) -> Result<f64> {
    require_parametrized(p)?;
    require_angle(p, phi)?;
    Ok(CurvePoint::from_phi(p, phi).w_signed(r))
}

/// Density value on the curve at angle φ.
pub fn density_on_curve(params: &FcParams, phi: f64) -> Result<f64> {
    require_parametrized(params.p())?;
    require_angle(params.p(), phi)?;
    Ok(CurvePoint::from_phi(params.p(), phi).w_signed(params.r()))
}

/// Support interval of the distribution.
pub fn support(params: &FcParams) -> SupportInterval {
    if params.is_point_mass() {
        return SupportInterval { lo: 1.0, hi: 1.0 };
    }
    SupportInterval {
        lo: 0.0,
        hi: upper_endpoint(params.p()),
    }
}

/// Density limits at the two support endpoints (at 0, at the upper end).
pub fn boundary_behavior(params: &FcParams) -> Result<(BoundaryBehavior, BoundaryBehavior)> {
    if params.is_point_mass() {
        return Err(Error::DegenerateMeasure);
    }
    let at_zero = if params.r() < params.p() {
        // W ~ x^{r/p - 1} with negative exponent
        BoundaryBehavior::Diverges
    } else {
        BoundaryBehavior::VanishesToZero
    };
    let at_hi = if params.p() == 1.0 {
        BoundaryBehavior::Diverges
    } else {
        BoundaryBehavior::VanishesToZero
    };
    Ok((at_zero, at_hi))
}

/// Offset of the inversion bracket from the angle-interval endpoints.
const INVERSION_DELTA: f64 = 1e-12;

/// Angle φ with ρ(φ) = x, for p > 1 and x in the open support.
pub(crate) fn invert_rho(p: f64, x: f64, cfg: &RootConfig) -> Result<f64> {
    require_parametrized(p)?;
    let b = PI / p;
    let hi_psi = b - INVERSION_DELTA;
    // ρ̂(ψ) = ρ(π/p - ψ) is increasing in ψ
    let rho_hat = |psi: f64| CurvePoint::from_psi(p, psi).rho();
    let lo_val = rho_hat(INVERSION_DELTA);
    let hi_val = rho_hat(hi_psi);
    // x astronomically close to an endpoint: clamp to the bracket edge
    if x <= lo_val {
        return Ok(b - INVERSION_DELTA);
    }
    if x >= hi_val {
        return Ok(b - hi_psi);
    }
    let psi = find_root(|psi| rho_hat(psi) - x, INVERSION_DELTA, hi_psi, cfg)?;
    Ok(b - psi)
}

/// Angle φ with ρ(φ) = x, for the parametrized families (p > 1).
pub fn angle_for(params: &FcParams, x: f64) -> Result<f64> {
    let sup = support(params);
    if !(x > sup.lo && x < sup.hi) {
        return Err(Error::OutsideSupport {
            x,
            lo: sup.lo,
            hi: sup.hi,
        });
    }
    invert_rho(params.p(), x, &RootConfig::default())
}

/// Density at a point x of the open support.
pub fn density_at(params: &FcParams, x: f64) -> Result<f64> {
    density_at_with(params, x, &RootConfig::default())
}

/// [`density_at`] with an explicit inversion tolerance.
pub fn density_at_with(params: &FcParams, x: f64, cfg: &RootConfig) -> Result<f64> {
    if params.is_point_mass() {
        return Err(Error::DegenerateMeasure);
    }
    let sup = support(params);
    if !(x > sup.lo && x < sup.hi) {
        return Err(Error::OutsideSupport {
            x,
            lo: sup.lo,
            hi: sup.hi,
        });
    }
    let (p, r) = (params.p(), params.r());
    if p == 1.0 {
        // closed form: sin(rπ)/π · x^{r-1} (1-x)^{-r}
        return Ok((r * PI).sin() / PI * x.powf(r - 1.0) * (1.0 - x).powf(-r));
    }
    let phi = invert_rho(p, x, cfg)?;
    Ok(CurvePoint::from_phi(p, phi).w_signed(r))
}

/// k-th moment by quadrature of x^k W(x) dx, evaluated in the ψ variable as
/// ∫ ρ^k · W(ρ) · |ρ'| dψ over (0, π/p).
pub fn moment_by_quadrature(params: &FcParams, k: usize, cfg: &QuadratureConfig) -> Result<f64> {
    if params.is_point_mass() {
        // every moment of the unit point mass is 1
        return Ok(1.0);
    }
    let (p, r) = (params.p(), params.r());
    if p == 1.0 {
        // closed form family: ∫ x^{k+r-1} (1-x)^{-r} scaled by sin(rπ)/π
        let scale = (r * PI).sin() / PI;
        return integrate_points(
            |pt| scale * pt.dist_lo.powf(k as f64 + r - 1.0) * pt.dist_hi.powf(-r),
            0.0,
            1.0,
            cfg,
        );
    }
    let b = PI / p;
    integrate_points(
        |pt| {
            let cp = CurvePoint::new(p, pt.dist_hi, pt.dist_lo);
            let cot_sum = cp.log_derivative_rho();
            let ln_term = (k as f64 + 1.0) * cp.ln_rho() + cp.ln_w(r) + cot_sum.abs().ln();
            ln_term.exp()
        },
        0.0,
        b,
        cfg,
    )
}

/// n density samples at angles uniformly spaced in (ε, π/p - ε) with
/// ε = (π/p)/(10 n), ordered by increasing x. The p = 1 family is sampled
/// uniformly in x on (ε, 1 - ε), ε = 1/(10 n).
pub fn density_grid(params: &FcParams, n: usize) -> Result<DensityGrid> {
    if params.is_point_mass() {
        return Err(Error::DegenerateMeasure);
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("grid needs n >= 2, got {n}")));
    }
    let (p, r) = (params.p(), params.r());
    let mut samples = Vec::with_capacity(n);
    if p == 1.0 {
        let eps = 1.0 / (10.0 * n as f64);
        let step = (1.0 - 2.0 * eps) / (n - 1) as f64;
        let scale = (r * PI).sin() / PI;
        for i in 0..n {
            let x = eps + i as f64 * step;
            let w = scale * x.powf(r - 1.0) * (1.0 - x).powf(-r);
            samples.push(DensitySample { phi: None, x, w });
        }
    } else {
        let b = PI / p;
        let eps = b / (10.0 * n as f64);
        let step = (b - 2.0 * eps) / (n - 1) as f64;
        // descending φ gives ascending x
        for i in (0..n).rev() {
            let phi = eps + i as f64 * step;
            let cp = CurvePoint::from_phi(p, phi);
            samples.push(DensitySample {
                phi: Some(phi),
                x: cp.rho(),
                w: cp.w_signed(r),
            });
        }
    }
    Ok(DensityGrid {
        params: *params,
        samples,
    })
}
