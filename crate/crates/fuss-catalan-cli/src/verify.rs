//! Verification batteries over built-in parameter grids, mirroring the
//! library's integral-representation checks with fixed tolerances.

use fuss_catalan::combinatorics::{cumulants_to_moments, free_cumulants, fuss_catalan_number};
use fuss_catalan::levy;
use fuss_catalan::numerics::quadrature::QuadratureConfig;
use fuss_catalan::params::FcParams;
use fuss_catalan::Result;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        (self.lhs - self.rhs).abs() <= self.tol
    }
}

#[derive(Debug, Clone)]
pub struct Battery {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Battery {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass()).count()
    }
}

const QCFG: QuadratureConfig = QuadratureConfig {
    rel_tol: 1e-10,
    abs_tol: 1e-12,
    max_levels: 12,
};

pub fn battery_binom() -> Result<Battery> {
    let mut checks = Vec::new();
    for &p in &[-0.5, 0.5, 1.2, 1.5, 1.8] {
        for n in 0..=6usize {
            let (lhs, rhs) = levy::verify_binom_integral(p, n, &QCFG)?;
            checks.push(Check {
                name: format!("binom p={p} n={n}"),
                lhs,
                rhs,
                tol: 1e-8,
            });
        }
    }
    Ok(Battery {
        name: "binom",
        checks,
    })
}

pub fn battery_weighted_binom() -> Result<Battery> {
    let mut checks = Vec::new();
    for &p in &[0.5, 1.2, 1.5, 1.8] {
        for n in 0..=6usize {
            let (lhs, rhs) = levy::verify_weighted_binom_integral(p, n, &QCFG)?;
            checks.push(Check {
                name: format!("weighted-binom p={p} n={n}"),
                lhs,
                rhs,
                tol: 1e-8,
            });
        }
    }
    Ok(Battery {
        name: "weighted-binom",
        checks,
    })
}

pub fn battery_lk_pp() -> Result<Battery> {
    let mut checks = Vec::new();
    for &p in &[1.2, 1.5, 1.8] {
        for &z in &[-0.45, -0.3, -0.15, -0.05] {
            let (lhs, rhs) = levy::verify_lk_pp(p, z, &QCFG)?;
            checks.push(Check {
                name: format!("lk-pp p={p} z={z}"),
                lhs,
                rhs,
                tol: 1e-8,
            });
        }
    }
    Ok(Battery {
        name: "lk-pp",
        checks,
    })
}

pub fn battery_lk_p_pminus1() -> Result<Battery> {
    let mut checks = Vec::new();
    for &p in &[1.2, 1.5, 1.8] {
        for &z in &[-0.45, -0.2, 0.1, 0.3, 0.45] {
            let c = levy::verify_lk_p_pminus1(p, z, &QCFG)?;
            checks.push(Check {
                name: format!("lk-p-pminus1 compensated p={p} z={z}"),
                lhs: c.lhs_compensated,
                rhs: c.rhs,
                tol: 1e-8,
            });
            checks.push(Check {
                name: format!("lk-p-pminus1 drift-free p={p} z={z}"),
                lhs: c.lhs_drift_free,
                rhs: c.rhs,
                tol: 1e-8,
            });
        }
    }
    Ok(Battery {
        name: "lk-p-pminus1",
        checks,
    })
}

pub fn battery_lk_general() -> Result<Battery> {
    let mut checks = Vec::new();
    for &(p, r, z) in &[
        (3.0, 1.0, -0.1),
        (3.0, 1.0, -0.05),
        (4.0, 1.5, -0.05),
        (4.0, 1.5, -0.02),
    ] {
        let params = FcParams::new(p, r)?;
        let (lhs, rhs) = levy::verify_lk_general(&params, z, &QCFG)?;
        checks.push(Check {
            name: format!("lk-general p={p} r={r} z={z}"),
            lhs,
            rhs,
            tol: 1e-6,
        });
    }
    Ok(Battery {
        name: "lk-general",
        checks,
    })
}

pub fn battery_moment_cumulant() -> Result<Battery> {
    let mut checks = Vec::new();
    for &(p, r) in &[(2.0, 1.0), (3.0, 1.0), (3.0, 2.0), (1.7, 1.7), (4.0, 1.5)] {
        let params = FcParams::new(p, r)?;
        let rebuilt = cumulants_to_moments(&free_cumulants(&params, 12)?)?;
        for n in 0..=12usize {
            let rhs = fuss_catalan_number(p, r, n);
            checks.push(Check {
                name: format!("moment-cumulant p={p} r={r} n={n}"),
                lhs: rebuilt.get(n).expect("reconstructed up to 12"),
                rhs,
                tol: 1e-10 * rhs.abs().max(1.0),
            });
        }
    }
    Ok(Battery {
        name: "moment-cumulant",
        checks,
    })
}

/// Batteries for one suite name; `all` runs everything in a fixed order.
pub fn run_suite(suite: &str) -> Result<Vec<Battery>> {
    Ok(match suite {
        "binom" => vec![battery_binom()?],
        "weighted-binom" => vec![battery_weighted_binom()?],
        "lk-pp" => vec![battery_lk_pp()?],
        "lk-p-pminus1" => vec![battery_lk_p_pminus1()?],
        "lk-general" => vec![battery_lk_general()?],
        "moment-cumulant" => vec![battery_moment_cumulant()?],
        "all" => vec![
            battery_binom()?,
            battery_weighted_binom()?,
            battery_lk_pp()?,
            battery_lk_p_pminus1()?,
            battery_lk_general()?,
            battery_moment_cumulant()?,
        ],
        other => {
            return Err(fuss_catalan::Error::InvalidParams(format!(
                "unknown suite {other}"
            )))
        }
    })
}
