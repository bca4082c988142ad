//! Payload assembly for each subcommand: library calls in, `Json` out.

use crate::json::{fmt_f64, Json};
use crate::verify::Battery;
use fuss_catalan::classify::{classification_report, HankelSource};
use fuss_catalan::combinatorics::{free_cumulants, moments};
use fuss_catalan::density::{angle_for, density_at, density_grid, DensityGrid};
use fuss_catalan::numerics::roots::RootConfig;
use fuss_catalan::params::FcParams;
use fuss_catalan::unimodal::{mode_scan, phase_transition_scan, solve_r0_mu2, TransitionMethod};
use fuss_catalan::{Error, Result};

pub fn numbers(p: f64, r: f64, n: usize) -> Result<Json> {
    let params = FcParams::new(p, r)?;
    let m = moments(&params, n)?;
    Ok(Json::obj(vec![(
        "values",
        Json::Array(m.values().iter().map(|&v| Json::Num(v)).collect()),
    )]))
}

pub fn cumulants(p: f64, r: f64, n: usize) -> Result<Json> {
    let params = FcParams::new(p, r)?;
    let c = free_cumulants(&params, n)?;
    Ok(Json::obj(vec![
        ("start_index", Json::Int(1)),
        (
            "values",
            Json::Array(c.values().iter().map(|&v| Json::Num(v)).collect()),
        ),
    ]))
}

pub fn density_point(p: f64, r: f64, x: f64) -> Result<Json> {
    let params = FcParams::new(p, r)?;
    let w = density_at(&params, x)?;
    let phi = if p > 1.0 {
        Json::Num(angle_for(&params, x)?)
    } else {
        Json::Null
    };
    Ok(Json::obj(vec![
        ("phi", phi),
        ("x", Json::Num(x)),
        ("density", Json::Num(w)),
    ]))
}

pub fn density_grid_data(p: f64, r: f64, n: usize) -> Result<DensityGrid> {
    let params = FcParams::new(p, r)?;
    density_grid(&params, n)
}

pub fn grid_to_csv(grid: &DensityGrid) -> String {
    let mut out = String::from("phi,x,density\n");
    for s in &grid.samples {
        if let Some(phi) = s.phi {
            out.push_str(&fmt_f64(phi));
        }
        out.push(',');
        out.push_str(&fmt_f64(s.x));
        out.push(',');
        out.push_str(&fmt_f64(s.w));
        out.push('\n');
    }
    out
}

pub fn grid_to_json(grid: &DensityGrid) -> Json {
    Json::obj(vec![(
        "samples",
        Json::Array(
            grid.samples
                .iter()
                .map(|s| {
                    Json::obj(vec![
                        ("phi", s.phi.map(Json::Num).unwrap_or(Json::Null)),
                        ("x", Json::Num(s.x)),
                        ("density", Json::Num(s.w)),
                    ])
                })
                .collect(),
        ),
    )])
}

fn source_name(s: HankelSource) -> &'static str {
    match s {
        HankelSource::CumulantShift2 => "cumulant-shift2",
        HankelSource::WeightedCumulantShift2 => "weighted-cumulant-shift2",
        HankelSource::Moment => "moment",
    }
}

pub fn classify(p: f64, r: f64, hankel_size: usize) -> Result<Json> {
    let params = FcParams::new(p, r)?;
    let rep = classification_report(&params, hankel_size)?;
    Ok(Json::obj(vec![
        ("fid", Json::Bool(rep.fid)),
        ("fsd", Json::Bool(rep.fsd)),
        ("free_regular", Json::Bool(rep.free_regular)),
        ("free_l1", Json::Bool(rep.free_l1)),
        (
            "free_l1_from_implication",
            Json::Bool(rep.free_l1_from_implication),
        ),
        (
            "hankel_evidence",
            Json::Array(
                rep.hankel_evidence
                    .iter()
                    .map(|h| {
                        Json::obj(vec![
                            ("size", Json::Int(h.size as i64)),
                            ("source", Json::Str(source_name(h.matrix_source).into())),
                            ("min_eigenvalue", Json::Num(h.min_eigenvalue)),
                            ("is_psd", Json::Bool(h.is_psd)),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "negative_cumulant_witness",
            rep.negative_cumulant_witness
                .map(|n| Json::Int(n as i64))
                .unwrap_or(Json::Null),
        ),
    ]))
}

pub fn modes(p: f64, r: f64, grid: usize) -> Result<Json> {
    let params = FcParams::new(p, r)?;
    let rep = mode_scan(&params, grid)?;
    Ok(Json::obj(vec![
        ("mode_count", Json::Int(rep.mode_count as i64)),
        (
            "mode_locations_x",
            Json::Array(rep.mode_locations_x.iter().map(|&x| Json::Num(x)).collect()),
        ),
        (
            "sign_pattern",
            Json::Array(
                rep.sign_pattern
                    .iter()
                    .map(|run| {
                        Json::obj(vec![
                            ("sign", Json::Int(run.sign as i64)),
                            ("x_lo", Json::Num(run.x_lo)),
                            ("x_hi", Json::Num(run.x_hi)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("grid_size", Json::Int(rep.grid_size as i64)),
    ]))
}

pub fn transition(p: f64, method: &str, tol: Option<f64>) -> Result<(Json, Vec<String>)> {
    let result = match method {
        "a-root" => {
            if p != 2.0 {
                return Err(Error::Domain(
                    "the closed transition equation applies to p = 2 only; use --method scan"
                        .into(),
                ));
            }
            let cfg = RootConfig {
                x_tol: tol.unwrap_or(1e-12),
                f_tol: 1e-13,
                max_iter: 200,
            };
            solve_r0_mu2(&cfg)?
        }
        "scan" => {
            let cfg = RootConfig {
                x_tol: tol.unwrap_or(1e-6),
                f_tol: 1e-13,
                max_iter: 200,
            };
            phase_transition_scan(p, p - 1.0, p - 0.01, &cfg)?
        }
        other => {
            return Err(Error::InvalidParams(format!("unknown method {other}")));
        }
    };
    let mut warnings = Vec::new();
    if result.exploratory {
        warnings.push(
            "no reference value exists for this p; the estimate is a scanner observation".into(),
        );
    }
    let json = Json::obj(vec![
        ("p", Json::Num(result.p)),
        ("r0_estimate", Json::Num(result.r0_estimate)),
        (
            "method",
            Json::Str(
                match result.method {
                    TransitionMethod::ARoot => "a-root",
                    TransitionMethod::ModeScan => "scan",
                }
                .into(),
            ),
        ),
        (
            "bracket",
            Json::Array(vec![
                Json::Num(result.bracket.0),
                Json::Num(result.bracket.1),
            ]),
        ),
        ("tolerance", Json::Num(result.tolerance)),
        ("exploratory", Json::Bool(result.exploratory)),
    ]);
    Ok((json, warnings))
}

pub fn verify_result(batteries: &[Battery]) -> (Json, bool) {
    let mut total_pass = 0usize;
    let mut total_fail = 0usize;
    let battery_json: Vec<Json> = batteries
        .iter()
        .map(|b| {
            let failed = b.failed();
            let passed = b.checks.len() - failed;
            total_pass += passed;
            total_fail += failed;
            Json::obj(vec![
                ("name", Json::Str(b.name.into())),
                (
                    "checks",
                    Json::Array(
                        b.checks
                            .iter()
                            .map(|c| {
                                Json::obj(vec![
                                    ("name", Json::Str(c.name.clone())),
                                    ("lhs", Json::Num(c.lhs)),
                                    ("rhs", Json::Num(c.rhs)),
                                    ("delta", Json::Num(c.lhs - c.rhs)),
                                    ("tol", Json::Num(c.tol)),
                                    ("pass", Json::Bool(c.pass())),
                                ])
                            })
                            .collect(),
                    ),
                ),
                ("passed", Json::Int(passed as i64)),
                ("failed", Json::Int(failed as i64)),
            ])
        })
        .collect();
    let all_pass = total_fail == 0;
    (
        Json::obj(vec![
            ("batteries", Json::Array(battery_json)),
            ("passed", Json::Int(total_pass as i64)),
            ("failed", Json::Int(total_fail as i64)),
        ]),
        all_pass,
    )
}
