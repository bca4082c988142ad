//! Free cumulant transforms, free Levy-Khintchine data and numerical
//! verification of the closed integral representations.
//!
//! The representation used throughout: R(z) equals
//!     a z² + η z + ∫ (1/(1-zx) - 1 - zx·1_{[-1,1]}(x)) ν(dx)
//! with the free characteristic triplet (a, η, ν). Nonnegative drift-free
//! variants R(z) = η' z + ∫ (1/(1-zx) - 1) ν(dx) appear for the families
//! with Levy measure on (0, ∞). The equivalent generating pair (γ, σ) is
//! related by σ(dt) = t²/(1+t²)·ν(dt) off zero plus an atom a at zero, and
//! γ = η - ∫ t (1_{[-1,1]}(t) - 1/(1+t²)) ν(dt).
//!
//! Four closed-form Levy density families arise:
//!   - r = p, 1 < p < 2: density k_p(x)/|x| on (-1, 0) with
//!     k_p(x) = (-sin(pπ)/π) ((1+x)/(-x))^p
//!   - general 0 < r <= min{p/2, p-1} with p - r > 1: density W_{p-r,r}(x)
//!     on (0, (p-r)^{p-r}(p-r-1)^{1-(p-r)})
//!   - r = p - 1, 1 < p < 2: density (-sin(pπ)/π) x^{p-2} (1-x)^{1-p}
//!     on (0, 1)
//!   - self-decomposition remainders of the r = p family: k_{p,c}(x)/|x|
//!     on (-1, 0)

use crate::combinatorics::fuss_catalan_number;
use crate::density::{upper_endpoint, CurvePoint};
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_points, QuadratureConfig};
use crate::numerics::roots::RootConfig;
use crate::numerics::special::binom_real;
use crate::params::FcParams;
use std::f64::consts::PI;

/// Closed-form free Levy density families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevyDensitySpec {
    /// ν(dx) = k_p(x)/|x| dx on (-1, 0), for the r = p family, 1 < p < 2.
    MuPP { p: f64 },
    /// ν(dx) = W_{p-r,r}(x) dx on (0, (p-r)^{p-r}(p-r-1)^{1-(p-r)}),
    /// for 0 < r <= min{p/2, p-1} with p - r > 1.
    MuPrGeneral { p: f64, r: f64 },
    /// ν(dx) = (-sin(pπ)/π) x^{p-2}(1-x)^{1-p} dx on (0, 1),
    /// for the r = p - 1 family, 1 < p < 2.
    MuPPminus1 { p: f64 },
    /// ν(dx) = k_{p,c}(x)/|x| dx on (-1, 0): the Levy density of the
    /// self-decomposition remainder of the r = p family at scale c.
    RemainderPP { p: f64, c: f64 },
}

/// -sin(pπ)/π, the positive normalizer of the families with 1 < p < 2.
fn neg_sin_pi_over_pi(p: f64) -> f64 {
    -(p * PI).sin() / PI
}

impl LevyDensitySpec {
    pub fn mu_pp(p: f64) -> Result<Self> {
        if !(p > 1.0 && p < 2.0) {
            return Err(Error::InvalidParams(format!(
                "the r = p Levy density requires 1 < p < 2, got p = {p}"
            )));
        }
        Ok(Self::MuPP { p })
    }

    pub fn mu_pr_general(p: f64, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= (p / 2.0).min(p - 1.0)) {
            return Err(Error::InvalidParams(format!(
                "the general Levy density requires 0 < r <= min(p/2, p-1), got ({p}, {r})"
            )));
        }
        if !(p - r > 1.0) {
            return Err(Error::InvalidParams(format!(
                "the general Levy density requires p - r > 1, got p - r = {}",
                p - r
            )));
        }
        Ok(Self::MuPrGeneral { p, r })
    }

    pub fn mu_p_pminus1(p: f64) -> Result<Self> {
        if !(p > 1.0 && p < 2.0) {
            return Err(Error::InvalidParams(format!(
                "the r = p - 1 Levy density requires 1 < p < 2, got p = {p}"
            )));
        }
        Ok(Self::MuPPminus1 { p })
    }

    pub fn remainder_pp(p: f64, c: f64) -> Result<Self> {
        if !(p > 1.0 && p < 2.0) || !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParams(format!(
                "the remainder Levy density requires 1 < p < 2 and 0 < c < 1, got ({p}, {c})"
            )));
        }
        Ok(Self::RemainderPP { p, c })
    }

    /// Open support interval of the Levy measure.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::MuPP { .. } | Self::RemainderPP { .. } => (-1.0, 0.0),
            Self::MuPrGeneral { p, r } => (0.0, upper_endpoint(p - r)),
            Self::MuPPminus1 { .. } => (0.0, 1.0),
        }
    }

    fn check_support(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return Err(Error::OutsideSupport { x, lo, hi });
        }
        Ok(())
    }

    /// The k-function of the measure: ν(dx) = k(x)/|x| dx.
    pub fn k_function(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(match *self {
            Self::MuPP { p } => neg_sin_pi_over_pi(p) * ((1.0 + x) / -x).powf(p),
            Self::MuPrGeneral { p, r } => {
                let inner = FcParams::new(p - r, r).expect("validated at construction");
                x * crate::density::density_at(&inner, x)?
            }
            Self::MuPPminus1 { p } => {
                neg_sin_pi_over_pi(p) * x.powf(p - 1.0) * (1.0 - x).powf(1.0 - p)
            }
            Self::RemainderPP { p, c } => {
                let full = ((1.0 + x) / -x).powf(p);
                let inner = if x > -c { ((c + x) / -x).powf(p) } else { 0.0 };
                neg_sin_pi_over_pi(p) * (full - inner)
            }
        })
    }

    /// Density of ν with respect to Lebesgue measure at x.
    pub fn density(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        match *self {
            Self::MuPrGeneral { p, r } => {
                let inner = FcParams::new(p - r, r).expect("validated at construction");
                crate::density::density_at(&inner, x)
            }
            _ => Ok(self.k_function(x)? / x.abs()),
        }
    }

    /// ∫ x² h(x) ν(dx) for h smooth on the closed support. The x² factor
    /// absorbs the small-x divergence of the (-1, 0) families.
    pub fn integrate_x2_kernel<H>(&self, h: H, cfg: &QuadratureConfig) -> Result<f64>
    where
        H: Fn(f64) -> f64,
    {
        match *self {
            Self::MuPP { p } => {
                // y = -x: C ∫ y^{1-p} (1-y)^p h(-y) dy
                let c = neg_sin_pi_over_pi(p);
                let v = integrate_points(
                    |pt| pt.dist_lo.powf(1.0 - p) * pt.dist_hi.powf(p) * h(-pt.x),
                    0.0,
                    1.0,
                    cfg,
                )?;
                Ok(c * v)
            }
            Self::RemainderPP { p, c } => {
                // the (c + x) piece cuts off at x = -c; integrate the two
                // smooth pieces separately
                let scale = neg_sin_pi_over_pi(p);
                let full = integrate_points(
                    |pt| pt.dist_lo.powf(1.0 - p) * pt.dist_hi.powf(p) * h(-pt.x),
                    0.0,
                    1.0,
                    cfg,
                )?;
                let inner = integrate_points(
                    |pt| pt.dist_lo.powf(1.0 - p) * pt.dist_hi.powf(p) * h(-pt.x),
                    0.0,
                    c,
                    cfg,
                )?;
                Ok(scale * (full - inner))
            }
            Self::MuPPminus1 { p } => {
                let c = neg_sin_pi_over_pi(p);
                let v = integrate_points(
                    |pt| pt.dist_lo.powf(p) * pt.dist_hi.powf(1.0 - p) * h(pt.x),
                    0.0,
                    1.0,
                    cfg,
                )?;
                Ok(c * v)
            }
            Self::MuPrGeneral { .. } => self.integrate_kernel(|x| x * x * h(x), cfg),
        }
    }

    /// ∫ g(x) ν(dx) for g smooth; only the families whose density is itself
    /// integrable near 0 admit a kernel that does not vanish there.
    pub fn integrate_kernel<G>(&self, g: G, cfg: &QuadratureConfig) -> Result<f64>
    where
        G: Fn(f64) -> f64,
    {
        match *self {
            Self::MuPP { .. } | Self::RemainderPP { .. } => Err(Error::Domain(
                "kernel must vanish like x² at 0 for this family; use integrate_x2_kernel".into(),
            )),
            Self::MuPPminus1 { p } => {
                let c = neg_sin_pi_over_pi(p);
                let v = integrate_points(
                    |pt| pt.dist_lo.powf(p - 2.0) * pt.dist_hi.powf(1.0 - p) * g(pt.x),
                    0.0,
                    1.0,
                    cfg,
                )?;
                Ok(c * v)
            }
            Self::MuPrGeneral { p, r } => {
                let q = p - r;
                let b = PI / q;
                integrate_points(
                    |pt| {
                        let cp = CurvePoint::new(q, pt.dist_hi, pt.dist_lo);
                        let w_drho =
                            (cp.ln_w(r) + cp.ln_rho() + cp.log_derivative_rho().abs().ln()).exp();
                        g(cp.rho()) * w_drho
                    },
                    0.0,
                    b,
                    cfg,
                )
            }
        }
    }

    /// ∫ min{1, x²} ν(dx), finite for every admissible family.
    pub fn min1_x2_mass(&self, cfg: &QuadratureConfig) -> Result<f64> {
        match *self {
            Self::MuPP { .. } | Self::RemainderPP { .. } | Self::MuPPminus1 { .. } => {
                // support inside the unit interval: min{1, x²} = x²
                self.integrate_x2_kernel(|_| 1.0, cfg)
            }
            Self::MuPrGeneral { p, r } => {
                let (_, hi) = self.support();
                if hi <= 1.0 {
                    return self.integrate_x2_kernel(|_| 1.0, cfg);
                }
                // split at x = 1 where the kernel has a kink
                let q = p - r;
                let b = PI / q;
                let psi_split = b - crate::density::invert_rho(q, 1.0, &RootConfig::default())?;
                let inner = integrate_points(
                    |pt| {
                        // ψ = pt.x runs over (0, psi_split); x = ρ < 1 here
                        let cp = CurvePoint::new(q, b - pt.dist_lo, pt.dist_lo);
                        (cp.ln_w(r) + 3.0 * cp.ln_rho() + cp.log_derivative_rho().abs().ln()).exp()
                    },
                    0.0,
                    psi_split,
                    cfg,
                )?;
                let outer = integrate_points(
                    |pt| {
                        // ψ over (psi_split, b); φ = b - ψ is pt.dist_hi
                        let cp = CurvePoint::new(q, pt.dist_hi, pt.x);
                        (cp.ln_w(r) + cp.ln_rho() + cp.log_derivative_rho().abs().ln()).exp()
                    },
                    psi_split,
                    b,
                    cfg,
                )?;
                Ok(inner + outer)
            }
        }
    }
}

/// Which integral form the triplet's drift refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RIntegralForm {
    /// R(z) = a z² + η z + ∫ (1/(1-zx) - 1 - zx·1_{[-1,1]}) ν(dx)
    Compensated,
    /// R(z) = η z + ∫ (1/(1-zx) - 1) ν(dx), with η >= 0
    DriftFree,
}

/// Free characteristic data (a, η, ν) of a freely infinitely divisible
/// member of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeTriplet {
    pub a: f64,
    pub eta: f64,
    pub form: RIntegralForm,
    pub levy: Option<LevyDensitySpec>,
}

/// Generating-pair data (γ, σ): σ is the finite measure with an atom of
/// mass `sigma_atom_at_zero` at 0 and density t²/(1+t²)·ν off zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingPair {
    pub gamma: f64,
    pub sigma_atom_at_zero: f64,
    pub levy: Option<LevyDensitySpec>,
}

impl GeneratingPair {
    /// Density of σ off the atom.
    pub fn sigma_density(&self, x: f64) -> Result<f64> {
        match &self.levy {
            None => Ok(0.0),
            Some(spec) => Ok(x * x / (1.0 + x * x) * spec.density(x)?),
        }
    }

    /// Total mass of σ (atom plus absolutely continuous part).
    pub fn sigma_total_mass(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let off_atom = match &self.levy {
            None => 0.0,
            Some(spec) => spec.integrate_x2_kernel(|x| 1.0 / (1.0 + x * x), cfg)?,
        };
        Ok(self.sigma_atom_at_zero + off_atom)
    }
}

/// Closed-form free cumulant transform. Defined for the r = p family
/// ((1+z)^p - 1, z > -1) and the r = p - 1 family ((1-z)^{1-p} - 1, z < 1).
pub fn r_transform_closed(params: &FcParams, z: f64) -> Result<f64> {
    let (p, r) = (params.p(), params.r());
    if r == p {
        if !(z > -1.0) {
            return Err(Error::Domain(format!(
                "(1+z)^p - 1 requires z > -1, got z = {z}"
            )));
        }
        return Ok((p * z.ln_1p()).exp_m1());
    }
    if r == p - 1.0 {
        if !(z < 1.0) {
            return Err(Error::Domain(format!(
                "(1-z)^(1-p) - 1 requires z < 1, got z = {z}"
            )));
        }
        return Ok(((1.0 - p) * (-z).ln_1p()).exp_m1());
    }
    Err(Error::UnsupportedFamily { p, r })
}

/// Truncated free cumulant series Σ r_n z^n, n = 1..n_terms, guarded by a
/// growth bound: rejected when |z| · max_n |r_n|^{1/n} >= 1/2, which keeps
/// the geometric tail beyond n_terms below 2^{-n_terms}.
pub fn r_transform_series(params: &FcParams, z: f64, n_terms: usize) -> Result<f64> {
    let n_terms = n_terms.max(1);
    let (p, r) = (params.p(), params.r());
    let cumulants: Vec<f64> = (1..=n_terms)
        .map(|n| fuss_catalan_number(p - r, r, n))
        .collect();
    let growth = cumulants
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs().powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    if z.abs() * growth >= 0.5 {
        return Err(Error::SeriesDivergence { growth });
    }
    let mut sum = 0.0;
    let mut zn = 1.0;
    for c in &cumulants {
        zn *= z;
        sum += c * zn;
    }
    Ok(sum)
}

/// Free characteristic data for the families with a known representation.
pub fn free_triplet(params: &FcParams) -> Result<FreeTriplet> {
    let (p, r) = (params.p(), params.r());
    if p == 1.0 && r == 1.0 {
        // R(z) = z
        return Ok(FreeTriplet {
            a: 0.0,
            eta: 1.0,
            form: RIntegralForm::Compensated,
            levy: None,
        });
    }
    if p == 2.0 && r == 2.0 {
        // R(z) = 2z + z²
        return Ok(FreeTriplet {
            a: 1.0,
            eta: 2.0,
            form: RIntegralForm::Compensated,
            levy: None,
        });
    }
    if r == p && p > 1.0 && p < 2.0 {
        return Ok(FreeTriplet {
            a: 0.0,
            eta: p,
            form: RIntegralForm::Compensated,
            levy: Some(LevyDensitySpec::mu_pp(p)?),
        });
    }
    if r == p - 1.0 && p > 1.0 && p < 2.0 {
        return Ok(FreeTriplet {
            a: 0.0,
            eta: p - 1.0,
            form: RIntegralForm::Compensated,
            levy: Some(LevyDensitySpec::mu_p_pminus1(p)?),
        });
    }
    if r <= (p / 2.0).min(p - 1.0) && p - r > 1.0 {
        return Ok(FreeTriplet {
            a: 0.0,
            eta: 0.0,
            form: RIntegralForm::DriftFree,
            levy: Some(LevyDensitySpec::mu_pr_general(p, r)?),
        });
    }
    Err(Error::UnsupportedFamily { p, r })
}

/// Convert a triplet to its generating pair.
///
/// Compensated form (supports inside [-1, 1]): γ = η - ∫ t³/(1+t²) ν(dt).
/// Drift-free form: the [-1, 1] compensation cancels algebraically and
/// γ = η + ∫ t/(1+t²) ν(dt), with no indicator left over.
pub fn triplet_to_generating_pair(
    triplet: &FreeTriplet,
    cfg: &QuadratureConfig,
) -> Result<GeneratingPair> {
    let gamma = match (&triplet.levy, triplet.form) {
        (None, _) => triplet.eta,
        (Some(spec), RIntegralForm::Compensated) => {
            let (lo, hi) = spec.support();
            if lo < -1.0 || hi > 1.0 {
                return Err(Error::Domain(
                    "compensated conversion implemented for Levy support inside [-1, 1]".into(),
                ));
            }
            triplet.eta - spec.integrate_x2_kernel(|x| x / (1.0 + x * x), cfg)?
        }
        (Some(spec), RIntegralForm::DriftFree) => {
            triplet.eta + spec.integrate_kernel(|x| x / (1.0 + x * x), cfg)?
        }
    };
    Ok(GeneratingPair {
        gamma,
        sigma_atom_at_zero: triplet.a,
        levy: triplet.levy,
    })
}

fn require_open(p: f64, lo: f64, hi: f64, what: &str) -> Result<()> {
    if !(p > lo && p < hi) {
        return Err(Error::Domain(format!(
            "{what} requires p in ({lo}, {hi}), got p = {p}"
        )));
    }
    Ok(())
}

/// Check of the moment-sequence integral representation
///     C(p, n+2) = ∫_{-1}^0 x^n · (x sin(pπ)/π) ((1+x)/(-x))^p dx
/// for -1 < p < 2, p ∉ {0, 1}. Returns (quadrature value, product-formula
/// value). Evaluated after the substitution x = -y as a Beta-type integral.
pub fn verify_binom_integral(p: f64, n: usize, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    require_open(p, -1.0, 2.0, "the binomial integral representation")?;
    if p == 0.0 || p == 1.0 {
        return Err(Error::Domain(format!(
            "the binomial integral representation degenerates at p = {p}"
        )));
    }
    let i = integrate_points(
        |pt| pt.dist_lo.powf(n as f64 + 1.0 - p) * pt.dist_hi.powf(p),
        0.0,
        1.0,
        cfg,
    )?;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let lhs = sign * (p * PI).sin() / PI * i;
    let rhs = binom_real(p, n + 2);
    Ok((lhs, rhs))
}

/// Check of the weighted variant
///     (n+2) C(p, n+2) = -∫_{-1}^0 x^n · (p sin(pπ)/π) ((1+x)/(-x))^{p-1} dx
/// for 0 < p < 2, p ≠ 1.
pub fn verify_weighted_binom_integral(
    p: f64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    require_open(p, 0.0, 2.0, "the weighted binomial integral representation")?;
    if p == 1.0 {
        return Err(Error::Domain(
            "the weighted binomial integral representation degenerates at p = 1".into(),
        ));
    }
    let i = integrate_points(
        |pt| pt.dist_lo.powf(n as f64 + 1.0 - p) * pt.dist_hi.powf(p - 1.0),
        0.0,
        1.0,
        cfg,
    )?;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let lhs = sign * p * (p * PI).sin() / PI * i;
    let rhs = (n as f64 + 2.0) * binom_real(p, n + 2);
    Ok((lhs, rhs))
}

/// Levy-Khintchine check for the r = p family, 1 < p < 2:
/// p z + ∫ (compensated kernel) k_p(x)/|x| dx against (1+z)^p - 1.
///
/// The compensated kernel reduces to z²x²/(1-zx) on (-1, 0) ⊂ [-1, 1],
/// killing the cancellation at small x; after x = -y the integral term is
/// -sin(pπ)/π · z² ∫ y^{1-p} (1-y)^p / (1+zy) dy.
pub fn verify_lk_pp(p: f64, z: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    require_open(p, 1.0, 2.0, "the r = p Levy-Khintchine check")?;
    if !(z > -0.5 && z <= 0.0) {
        return Err(Error::Domain(format!(
            "the r = p Levy-Khintchine check requires z in (-0.5, 0], got {z}"
        )));
    }
    let rhs = (p * z.ln_1p()).exp_m1();
    if z == 0.0 {
        return Ok((0.0, rhs));
    }
    let i = integrate_points(
        |pt| pt.dist_lo.powf(1.0 - p) * pt.dist_hi.powf(p) / (1.0 + z * pt.x),
        0.0,
        1.0,
        cfg,
    )?;
    let lhs = p * z + neg_sin_pi_over_pi(p) * z * z * i;
    Ok((lhs, rhs))
}

/// Both stated forms of the r = p - 1 Levy-Khintchine identity, 1 < p < 2.
#[derive(Debug, Clone, Copy)]
pub struct LkPPminus1Check {
    /// (p-1) z + ∫ (compensated kernel) ν(dx)
    pub lhs_compensated: f64,
    /// ∫ (1/(1-zx) - 1) ν(dx)
    pub lhs_drift_free: f64,
    /// (1-z)^{1-p} - 1
    pub rhs: f64,
}

/// Levy-Khintchine check for the r = p - 1 family against
/// (1-z)^{1-p} - 1, for |z| < 1/2.
pub fn verify_lk_p_pminus1(p: f64, z: f64, cfg: &QuadratureConfig) -> Result<LkPPminus1Check> {
    require_open(p, 1.0, 2.0, "the r = p - 1 Levy-Khintchine check")?;
    if !(z > -0.5 && z < 0.5) {
        return Err(Error::Domain(format!(
            "the r = p - 1 Levy-Khintchine check requires |z| < 0.5, got {z}"
        )));
    }
    let rhs = ((1.0 - p) * (-z).ln_1p()).exp_m1();
    if z == 0.0 {
        return Ok(LkPPminus1Check {
            lhs_compensated: 0.0,
            lhs_drift_free: 0.0,
            rhs,
        });
    }
    let scale = neg_sin_pi_over_pi(p);
    // compensated kernel z²x²/(1-zx) against x^{p-2}(1-x)^{1-p}
    let i_comp = integrate_points(
        |pt| pt.dist_lo.powf(p) * pt.dist_hi.powf(1.0 - p) / (1.0 - z * pt.x),
        0.0,
        1.0,
        cfg,
    )?;
    let lhs_compensated = (p - 1.0) * z + scale * z * z * i_comp;
    // drift-free kernel zx/(1-zx)
    let i_free = integrate_points(
        |pt| pt.dist_lo.powf(p - 1.0) * pt.dist_hi.powf(1.0 - p) / (1.0 - z * pt.x),
        0.0,
        1.0,
        cfg,
    )?;
    let lhs_drift_free = scale * z * i_free;
    Ok(LkPPminus1Check {
        lhs_compensated,
        lhs_drift_free,
        rhs,
    })
}

/// Levy-Khintchine check for the general region 0 < r <= min{p/2, p-1},
/// p - r > 1: the drift-free integral against the cumulant series.
pub fn verify_lk_general(params: &FcParams, z: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let (p, r) = (params.p(), params.r());
    // constructor revalidates the parameter region
    let spec = LevyDensitySpec::mu_pr_general(p, r)?;
    if !(z > -0.5 && z <= 0.0) {
        return Err(Error::Domain(format!(
            "the general Levy-Khintchine check requires z in (-0.5, 0], got {z}"
        )));
    }
    let rhs = r_transform_series(params, z, 80)?;
    if z == 0.0 {
        return Ok((0.0, rhs));
    }
    let lhs = spec.integrate_kernel(|x| z * x / (1.0 - z * x), cfg)?;
    Ok((lhs, rhs))
}
