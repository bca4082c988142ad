//! Classification of the (p, r) family: free infinite divisibility,
//! self-decomposability, regularity and the free L1 class, decided by the
//! exact region characterizations, with independent Hankel-matrix evidence.
//!
//! Regions (p >= 1, 0 < r <= p):
//!   - FID  ⇔  r <= min{p/2, p-1}  or  r = p with 1 <= p <= 2
//!   - FSD  ⇔  r = p with 1 <= p <= 2
//!   - free regular  ⇔  r <= min{p/2, p-1}  or  r = p ∈ {1, 2}
//!   - free L1  ⇔  r = p with 1 <= p <= 2 (free L1 ⊆ FSD, and FSD fails
//!     everywhere else)
//!
//! The numerical side: a compactly supported measure is FID iff its free
//! cumulant sequence is conditionally positive definite, i.e. the Hankel
//! matrices of the shift-by-2 sequence {r_{n+2}} are positive semidefinite;
//! FSD iff the same holds for the weighted sequence {n r_n}. Minimum
//! eigenvalues of those finite sections are the evidence.

use crate::combinatorics::{free_cumulants, fuss_catalan_number};
use crate::error::{Error, Result};
use crate::params::{FcParams, RealSequence};

/// Which sequence a Hankel section was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelSource {
    /// Free cumulants shifted by 2: `H[i][j] = r_{2+i+j}`.
    CumulantShift2,
    /// Weighted cumulants n·r_n shifted by 2: `H[i][j] = (2+i+j) r_{2+i+j}`.
    WeightedCumulantShift2,
    /// A plain moment sequence: `H[i][j] = m_{i+j}`.
    Moment,
}

/// Minimum-eigenvalue report for one Hankel section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelReport {
    pub size: usize,
    pub matrix_source: HankelSource,
    pub min_eigenvalue: f64,
    /// min_eigenvalue >= -1e-10 · max|entry| (relative threshold: the
    /// interesting determinants vanish polynomially at region boundaries).
    pub is_psd: bool,
}

/// Relative positive-semidefiniteness threshold.
const PSD_TOL: f64 = 1e-10;

/// Section `H[i][j] = seq[shift + i + j]` (absolute indices).
pub fn hankel_matrix(seq: &RealSequence, size: usize, shift: usize) -> Result<Vec<Vec<f64>>> {
    if size == 0 {
        return Err(Error::InvalidParams("hankel size must be >= 1".into()));
    }
    let mut h = vec![vec![0.0; size]; size];
    for i in 0..size {
        for j in 0..size {
            h[i][j] = seq.try_get(shift + i + j)?;
        }
    }
    Ok(h)
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
pub(crate) fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0][0]];
    }
    let frob: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|v| v * v))
        .sum::<f64>()
        .sqrt();
    let stop = (1e-15 * frob).max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[i][j].abs());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= stop * 1e-2 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let (app, aqq) = (a[p][p], a[q][q]);
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[p][k] = a[k][p];
                        a[k][q] = s * akp + c * akq;
                        a[q][k] = a[k][q];
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Minimum eigenvalue of the Hankel section seq[shift + i + j], 0 <= i, j < size.
pub fn hankel_min_eig(
    seq: &RealSequence,
    size: usize,
    shift: usize,
    source: HankelSource,
) -> Result<HankelReport> {
    let h = hankel_matrix(seq, size, shift)?;
    let scale = h
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    let min_eigenvalue = symmetric_eigenvalues(h)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(HankelReport {
        size,
        matrix_source: source,
        min_eigenvalue,
        is_psd: min_eigenvalue >= -PSD_TOL * scale,
    })
}

/// Freely infinitely divisible ⇔ r <= min{p/2, p-1} or r = p ∈ [1, 2]
/// (ties included).
pub fn classify_fid(params: &FcParams) -> bool {
    let (p, r) = (params.p(), params.r());
    r <= (p / 2.0).min(p - 1.0) || (r == p && (1.0..=2.0).contains(&p))
}

/// Freely self-decomposable ⇔ r = p ∈ [1, 2].
pub fn classify_fsd(params: &FcParams) -> bool {
    let (p, r) = (params.p(), params.r());
    r == p && (1.0..=2.0).contains(&p)
}

/// Free regular ⇔ r <= min{p/2, p-1} or r = p ∈ {1, 2}.
pub fn classify_free_regular(params: &FcParams) -> bool {
    let (p, r) = (params.p(), params.r());
    r <= (p / 2.0).min(p - 1.0) || (r == p && (p == 1.0 || p == 2.0))
}

/// Free L1 ⇔ r = p ∈ [1, 2]. Membership is established directly on that
/// segment; elsewhere it fails because free L1 ⊆ FSD.
pub fn classify_free_l1(params: &FcParams) -> bool {
    classify_fsd(params)
}

/// Hankel evidence for free infinite divisibility: sections of the
/// shift-by-2 cumulant sequence at sizes 1..=max_size.
pub fn numeric_fid_evidence(params: &FcParams, max_size: usize) -> Result<Vec<HankelReport>> {
    let max_size = max_size.max(1);
    let cumulants = free_cumulants(params, 2 + 2 * max_size)?;
    (1..=max_size)
        .map(|size| hankel_min_eig(&cumulants, size, 2, HankelSource::CumulantShift2))
        .collect()
}

/// Hankel evidence for free self-decomposability: same sections for the
/// weighted sequence {n r_n}.
pub fn numeric_fsd_evidence(params: &FcParams, max_size: usize) -> Result<Vec<HankelReport>> {
    let max_size = max_size.max(1);
    let cumulants = free_cumulants(params, 2 + 2 * max_size)?;
    let weighted: Vec<f64> = cumulants
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v)
        .collect();
    let weighted = RealSequence::new(1, weighted)?;
    (1..=max_size)
        .map(|size| hankel_min_eig(&weighted, size, 2, HankelSource::WeightedCumulantShift2))
        .collect()
}

/// Smallest even n <= n_max with A_n(p - r, r) <= 0, for p - 1 < r < p.
/// Such an n witnesses that the cumulant sequence is not conditionally
/// positive definite.
pub fn find_negative_even_cumulant(params: &FcParams, n_max: usize) -> Result<Option<usize>> {
    let (p, r) = (params.p(), params.r());
    if !(r > p - 1.0 && r < p) {
        return Err(Error::InvalidParams(format!(
            "negative-even-cumulant scan applies to p - 1 < r < p, got ({p}, {r})"
        )));
    }
    let mut n = 2;
    while n <= n_max {
        if fuss_catalan_number(p - r, r, n) <= 0.0 {
            return Ok(Some(n));
        }
        n += 2;
    }
    Ok(None)
}

/// Full classification with numerical evidence attached.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub params: FcParams,
    pub fid: bool,
    pub fsd: bool,
    pub free_regular: bool,
    pub free_l1: bool,
    /// True when free_l1 = false follows from the FSD characterization
    /// rather than from a statement about the free L1 class itself.
    pub free_l1_from_implication: bool,
    pub hankel_evidence: Vec<HankelReport>,
    pub negative_cumulant_witness: Option<usize>,
}

/// Assemble the report at the given maximum Hankel size (clamped to 8:
/// entries grow like the cumulants and eigenvalues lose accuracy beyond
/// that in 15-digit arithmetic).
pub fn classification_report(params: &FcParams, max_size: usize) -> Result<ClassificationReport> {
    let max_size = max_size.clamp(1, 8);
    let fid = classify_fid(params);
    let fsd = classify_fsd(params);
    let mut hankel_evidence = numeric_fid_evidence(params, max_size)?;
    hankel_evidence.extend(numeric_fsd_evidence(params, max_size)?);
    let (p, r) = (params.p(), params.r());
    let negative_cumulant_witness = if r > p - 1.0 && r < p {
        find_negative_even_cumulant(params, 200)?
    } else {
        None
    };
    Ok(ClassificationReport {
        params: *params,
        fid,
        fsd,
        free_regular: classify_free_regular(params),
        free_l1: classify_free_l1(params),
        free_l1_from_implication: !fsd,
        hankel_evidence,
        negative_cumulant_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::binom_real;
    use approx::assert_relative_eq;

    #[test]
    fn jacobi_matches_closed_forms() {
        // 2x2
        let eig = symmetric_eigenvalues(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let mut eig = eig;
        eig.sort_by(f64::total_cmp);
        assert_relative_eq!(eig[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(eig[1], 3.0, max_relative = 1e-12);
        // tridiagonal 3x3 with eigenvalues 2, 2 ± sqrt(2)
        let mut eig = symmetric_eigenvalues(vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ]);
        eig.sort_by(f64::total_cmp);
        assert_relative_eq!(eig[0], 2.0 - std::f64::consts::SQRT_2, max_relative = 1e-12);
        assert_relative_eq!(eig[1], 2.0, max_relative = 1e-12);
        assert_relative_eq!(eig[2], 2.0 + std::f64::consts::SQRT_2, max_relative = 1e-12);
    }

    #[test]
    fn hilbert_sections_are_psd() {
        // {1/(n+1)} is the moment sequence of the uniform law on (0, 1)
        let seq = RealSequence::new(0, (0..12).map(|n| 1.0 / (n as f64 + 1.0)).collect()).unwrap();
        for size in 1..=6 {
            let rep = hankel_min_eig(&seq, size, 0, HankelSource::Moment).unwrap();
            assert!(rep.is_psd, "Hilbert section size {size}: {rep:?}");
            assert!(rep.min_eigenvalue > 0.0);
        }
    }

    #[test]
    fn hankel_respects_sequence_length() {
        let seq = RealSequence::new(1, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(hankel_matrix(&seq, 2, 2).is_ok()); // needs index 4
        assert!(matches!(
            hankel_matrix(&seq, 3, 2),
            Err(Error::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn two_by_two_determinant_closed_forms() {
        // the three closed 2x2 minors over a grid in (1, 2)
        for i in 1..50 {
            let p = 1.0 + i as f64 / 50.0;
            // cumulants of the r = p family are C(p, n)
            let params = FcParams::new(p, p).unwrap();
            let cum = free_cumulants(&params, 6).unwrap();
            let h = hankel_matrix(&cum, 2, 2).unwrap();
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            let expected = (2.0 - p) * (1.0 + p) * p * p * (p - 1.0) * (p - 1.0) / 144.0;
            assert_relative_eq!(det, expected, max_relative = 1e-10);

            // weighted variant: (1/12) p³ (p-1)² (2-p)
            let weighted: Vec<f64> = cum
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * v)
                .collect();
            let weighted = RealSequence::new(1, weighted).unwrap();
            let h = hankel_matrix(&weighted, 2, 2).unwrap();
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            let expected = p * p * p * (p - 1.0) * (p - 1.0) * (2.0 - p) / 12.0;
            assert_relative_eq!(det, expected, max_relative = 1e-10);

            // r = p - 1 family: cumulants A_n(1, p-1), same determinant shape
            let a2 = fuss_catalan_number(1.0, p - 1.0, 2);
            let a3 = fuss_catalan_number(1.0, p - 1.0, 3);
            let a4 = fuss_catalan_number(1.0, p - 1.0, 4);
            let det = a2 * a4 - a3 * a3;
            let expected = p * p * (p - 1.0) * (p - 1.0) * (p + 1.0) * (2.0 - p) / 144.0;
            assert_relative_eq!(det, expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn determinant_spot_values_at_p_three_halves() {
        // (1/144)(2-p)(1+p)p²(p-1)² and (1/12)p³(p-1)²(2-p) at p = 3/2
        let cum = free_cumulants(&FcParams::new(1.5, 1.5).unwrap(), 6).unwrap();
        let h = hankel_matrix(&cum, 2, 2).unwrap();
        assert_relative_eq!(
            h[0][0] * h[1][1] - h[0][1] * h[1][0],
            0.0048828125,
            max_relative = 1e-12
        );
        let weighted: Vec<f64> = cum
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| (i + 1) as f64 * v)
            .collect();
        let w = RealSequence::new(1, weighted).unwrap();
        let h = hankel_matrix(&w, 2, 2).unwrap();
        assert_relative_eq!(
            h[0][0] * h[1][1] - h[0][1] * h[1][0],
            0.03515625,
            max_relative = 1e-12
        );
    }

    #[test]
    fn p_pminus1_cumulants_are_rising_binomials() {
        // A_n(1, p-1) = C(n - 2 + p, n)
        let p = 1.7;
        for n in 1..=8 {
            assert_relative_eq!(
                fuss_catalan_number(1.0, p - 1.0, n),
                binom_real(n as f64 - 2.0 + p, n),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn region_tests_match_stated_examples() {
        let fid = |p, r| classify_fid(&FcParams::new(p, r).unwrap());
        let fsd = |p, r| classify_fsd(&FcParams::new(p, r).unwrap());
        let reg = |p, r| classify_free_regular(&FcParams::new(p, r).unwrap());
        let l1 = |p, r| classify_free_l1(&FcParams::new(p, r).unwrap());

        assert!(fid(3.0, 1.0));
        assert!(!fid(2.0, 1.5));
        assert!(fid(1.7, 1.7));
        assert!(!fid(2.5, 2.5));
        // boundary ties included
        assert!(fid(3.0, 1.5)); // r = p/2
        assert!(fid(1.5, 0.5)); // r = p - 1
        assert!(fid(2.0, 2.0));
        assert!(fid(1.0, 1.0));

        assert!(fsd(1.5, 1.5));
        assert!(!fsd(2.5, 2.5));
        assert!(!fsd(3.0, 1.0));

        assert!(reg(3.0, 1.0));
        assert!(!reg(1.5, 1.5));
        assert!(reg(2.0, 2.0));
        assert!(reg(1.0, 1.0));

        assert!(l1(1.5, 1.5));
        assert!(l1(2.0, 2.0));
        assert!(!l1(3.0, 1.0));
    }

    #[test]
    fn implication_chain_on_grid() {
        // free L1 ⇒ FSD ⇒ FID and free regular ⇒ FID
        for i in 0..20 {
            let p = 1.0 + 3.0 * i as f64 / 19.0;
            for j in 1..=20 {
                let r = p * j as f64 / 20.0;
                let params = FcParams::new(p, r).unwrap();
                if classify_free_l1(&params) {
                    assert!(classify_fsd(&params));
                }
                if classify_fsd(&params) {
                    assert!(classify_fid(&params));
                }
                if classify_free_regular(&params) {
                    assert!(classify_fid(&params));
                }
            }
        }
    }

    #[test]
    fn evidence_examples() {
        // all cumulants 1: rank-one sections, PSD at every size
        let params = FcParams::new(2.0, 1.0).unwrap();
        for rep in numeric_fid_evidence(&params, 6).unwrap() {
            assert!(rep.is_psd, "{rep:?}");
        }
        // r = p beyond 2: not FID, a section goes negative
        let params = FcParams::new(2.5, 2.5).unwrap();
        assert!(numeric_fid_evidence(&params, 6)
            .unwrap()
            .iter()
            .any(|rep| !rep.is_psd));
        // p - 1 < r < p: negative section by size 3
        let params = FcParams::new(2.0, 1.5).unwrap();
        assert!(numeric_fid_evidence(&params, 3)
            .unwrap()
            .iter()
            .any(|rep| !rep.is_psd));
        // weighted evidence: (3, 1) is FID but not FSD
        let params = FcParams::new(3.0, 1.0).unwrap();
        assert!(numeric_fid_evidence(&params, 5)
            .unwrap()
            .iter()
            .all(|rep| rep.is_psd));
        assert!(numeric_fsd_evidence(&params, 6)
            .unwrap()
            .iter()
            .any(|rep| !rep.is_psd));
        // FSD member: weighted sections stay PSD
        let params = FcParams::new(1.5, 1.5).unwrap();
        assert!(numeric_fsd_evidence(&params, 6)
            .unwrap()
            .iter()
            .all(|rep| rep.is_psd));
    }

    #[test]
    fn negative_even_cumulant_witnesses() {
        let params = FcParams::new(2.0, 1.5).unwrap();
        assert_eq!(find_negative_even_cumulant(&params, 20).unwrap(), Some(6));
        let params = FcParams::new(1.5, 1.2).unwrap();
        assert_eq!(find_negative_even_cumulant(&params, 200).unwrap(), Some(4));
        // precondition: r <= p - 1 is outside the scan's region
        let params = FcParams::new(3.0, 1.0).unwrap();
        assert!(find_negative_even_cumulant(&params, 20).is_err());
    }

    #[test]
    fn report_assembly() {
        let params = FcParams::new(2.0, 1.5).unwrap();
        let rep = classification_report(&params, 6).unwrap();
        assert!(!rep.fid && !rep.fsd && !rep.free_regular && !rep.free_l1);
        assert!(rep.free_l1_from_implication);
        assert_eq!(rep.negative_cumulant_witness, Some(6));
        assert_eq!(rep.hankel_evidence.len(), 12);

        let params = FcParams::new(1.5, 1.5).unwrap();
        let rep = classification_report(&params, 6).unwrap();
        assert!(rep.fid && rep.fsd && !rep.free_regular && rep.free_l1);
        assert!(!rep.free_l1_from_implication);
        assert_eq!(rep.negative_cumulant_witness, None);
    }
}
