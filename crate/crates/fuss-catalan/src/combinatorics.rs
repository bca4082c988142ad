//! Fuss-Catalan numbers A_k(p, r), the moment and free-cumulant sequences
//! they generate, and the free moment–cumulant conversion.
//!
//! A_k(p, r) = (r / k!) · Π_{i=1}^{k-1} (kp + r - i); the k-th moment of the
//! distribution indexed by (p, r) is A_k(p, r) and its k-th free cumulant is
//! A_k(p - r, r).

use crate::error::{Error, Result};
use crate::params::{FcParams, RealSequence};

/// A_k(p, r) by the product formula, valid for arbitrary real p, r.
///
/// A_0 = 1 by the empty-product convention (also for r = 0, consistent with
/// the point mass at 0). When p, r and the result are integers the value is
/// exact whenever it stays below 2^53.
pub fn fuss_catalan_number(p: f64, r: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if let Some(v) = integer_case(p, r, k) {
        return v;
    }
    // r/k · Π_{i=1}^{k-1} (kp + r - i)/i keeps intermediates well scaled
    let kp_r = k as f64 * p + r;
    let mut acc = r / k as f64;
    for i in 1..k {
        acc *= (kp_r - i as f64) / i as f64;
    }
    acc
}

/// Exact evaluation via r/(kp+r) · C(kp+r, k) in u128 when p, r are small
/// nonnegative integers. C(kp+r, k) is built with the stepwise-exact
/// binomial recurrence; every intermediate is itself a binomial coefficient.
fn integer_case(p: f64, r: f64, k: usize) -> Option<f64> {
    if p.fract() != 0.0 || r.fract() != 0.0 || p < 0.0 || r < 0.0 || p > 64.0 || r > 64.0 || k > 64
    {
        return None;
    }
    let (pi, ri) = (p as u128, r as u128);
    let m = (k as u128) * pi + ri;
    if m < k as u128 {
        return None;
    }
    if ri == 0 {
        return Some(0.0);
    }
    // C(m, k): c · (m - k + i) stays below u128::MAX for the sizes we admit
    let mut c: u128 = 1;
    for i in 1..=(k as u128) {
        c = c.checked_mul(m - k as u128 + i)? / i;
    }
    // A_k = r · C(m, k) / m, exact by integrality of the result
    let num = c.checked_mul(ri)?;
    if num % m != 0 {
        return None;
    }
    Some((num / m) as f64)
}

/// Moment sequence m_0 .. m_{n_max}, m_k = A_k(p, r). Errors when an entry
/// overflows f64 (the values grow geometrically in k).
pub fn moments(params: &FcParams, n_max: usize) -> Result<RealSequence> {
    let vals = (0..=n_max)
        .map(|k| fuss_catalan_number(params.p(), params.r(), k))
        .collect();
    RealSequence::new(0, vals)
}

/// Free cumulant sequence r_1 .. r_{n_max}, r_k = A_k(p - r, r). Errors on
/// f64 overflow.
pub fn free_cumulants(params: &FcParams, n_max: usize) -> Result<RealSequence> {
    let n_max = n_max.max(1);
    let vals = (1..=n_max)
        .map(|k| fuss_catalan_number(params.p() - params.r(), params.r(), k))
        .collect();
    RealSequence::new(1, vals)
}

/// Free moment–cumulant relation M(z) = 1 + C(z·M(z)) solved for the moments:
/// m_n = Σ_{s=1}^{n} r_s · [z^{n-s}] M(z)^s.
pub fn cumulants_to_moments(cumulants: &RealSequence) -> Result<RealSequence> {
    if cumulants.start_index() != 1 {
        return Err(Error::InvalidParams(format!(
            "cumulant sequences are indexed from 1, got start_index = {}",
            cumulants.start_index()
        )));
    }
    let n = cumulants.len();
    let mut m = vec![1.0f64];
    for k in 1..=n {
        let powers = truncated_powers(&m, k);
        let mut mk = 0.0;
        for s in 1..=k {
            mk += cumulants.try_get(s)? * powers[s][k - s];
        }
        m.push(mk);
    }
    RealSequence::new(0, m)
}

/// Inverse of [`cumulants_to_moments`]: solve the same recursion for r_n.
/// Requires m_0 = 1.
pub fn moments_to_cumulants(moments: &RealSequence) -> Result<RealSequence> {
    if moments.start_index() != 0 {
        return Err(Error::InvalidParams(format!(
            "moment sequences are indexed from 0, got start_index = {}",
            moments.start_index()
        )));
    }
    let m0 = moments.try_get(0)?;
    if (m0 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "moment sequences must be normalized with m_0 = 1, got {m0}"
        )));
    }
    let n = moments.len() - 1;
    if n == 0 {
        return Err(Error::SequenceTooShort { needed: 1, have: 0 });
    }
    let m: Vec<f64> = moments.values().to_vec();
    let powers = truncated_powers(&m, n);
    let mut r = Vec::with_capacity(n);
    for k in 1..=n {
        // [z^0] M^k = 1, so the r_k term separates off
        let mut rk = m[k];
        for (s, rs) in r.iter().enumerate().map(|(i, v)| (i + 1, *v)) {
            if s < k {
                rk -= rs * powers[s][k - s];
            }
        }
        r.push(rk);
    }
    RealSequence::new(1, r)
}

/// powers[s][j] = [z^j] M(z)^s for s = 0..=n, j = 0..=n, with M truncated to
/// the coefficients provided (missing high coefficients contribute only to
/// orders the callers never read).
fn truncated_powers(m: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut powers = Vec::with_capacity(n + 1);
    let mut unit = vec![0.0; n + 1];
    unit[0] = 1.0;
    powers.push(unit);
    for s in 1..=n {
        let prev = &powers[s - 1];
        let mut next = vec![0.0; n + 1];
        for j in 0..=n {
            let mut acc = 0.0;
            for i in 0..=j {
                let mi = if i < m.len() { m[i] } else { 0.0 };
                acc += prev[j - i] * mi;
            }
            next[j] = acc;
        }
        powers.push(next);
    }
    powers
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Catalan numbers by the convolution recurrence, exact in u64.
    fn catalan(n: usize) -> Vec<f64> {
        let mut c = vec![1u64];
        for k in 0..n {
            let next: u64 = (0..=k).map(|i| c[i] * c[k - i]).sum();
            c.push(next);
        }
        c.into_iter().map(|v| v as f64).collect()
    }

    #[test]
    fn catalan_sequence_exact() {
        let expected = catalan(25);
        for (k, &c) in expected.iter().enumerate() {
            assert_eq!(fuss_catalan_number(2.0, 1.0, k), c, "k = {k}");
        }
    }

    #[test]
    fn small_product_values() {
        // p = 3, r = 1: 1, 1, 3, 12, 55
        let expected = [1.0, 1.0, 3.0, 12.0, 55.0];
        for (k, &v) in expected.iter().enumerate() {
            assert_eq!(fuss_catalan_number(3.0, 1.0, k), v);
        }
        assert_eq!(fuss_catalan_number(1.7, 0.4, 0), 1.0);
    }

    #[test]
    fn r_zero_gives_point_mass_moments() {
        assert_eq!(fuss_catalan_number(2.5, 0.0, 0), 1.0);
        for k in 1..=8 {
            assert_eq!(fuss_catalan_number(2.5, 0.0, k), 0.0);
        }
    }

    #[test]
    fn integer_and_product_paths_agree() {
        for k in 1..=20 {
            let exact = fuss_catalan_number(3.0, 2.0, k);
            // generic product path, written out independently
            let kp_r = 3.0 * k as f64 + 2.0;
            let mut acc = 2.0 / k as f64;
            for i in 1..k {
                acc *= (kp_r - i as f64) / i as f64;
            }
            assert_relative_eq!(exact, acc, max_relative = 1e-12);
        }
    }

    #[test]
    fn moment_sequences() {
        let m = moments(&FcParams::new(2.0, 1.0).unwrap(), 4).unwrap();
        assert_eq!(m.values(), &[1.0, 1.0, 2.0, 5.0, 14.0]);
        let m = moments(&FcParams::new(1.0, 1.0).unwrap(), 3).unwrap();
        assert_eq!(m.values(), &[1.0, 1.0, 1.0, 1.0]);
        let m = moments(&FcParams::new(2.0, 2.0).unwrap(), 2).unwrap();
        assert_eq!(m.values(), &[1.0, 2.0, 5.0]);
    }

    #[test]
    fn cumulant_sequences() {
        // free Poisson: all cumulants 1
        let c = free_cumulants(&FcParams::new(2.0, 1.0).unwrap(), 6).unwrap();
        assert_eq!(c.values(), &[1.0; 6]);
        // r = p: binomial coefficients C(p, n)
        let p = 1.7;
        let c = free_cumulants(&FcParams::new(p, p).unwrap(), 8).unwrap();
        for n in 1..=8 {
            assert_relative_eq!(
                c.get(n).unwrap(),
                crate::numerics::binom_real(p, n),
                max_relative = 1e-12
            );
        }
        // A_k(1, 2) = k + 1
        let c = free_cumulants(&FcParams::new(3.0, 2.0).unwrap(), 3).unwrap();
        assert_eq!(c.values(), &[2.0, 3.0, 4.0]);
    }

    #[test]
    fn free_poisson_moments_are_catalan() {
        let ones = RealSequence::new(1, vec![1.0; 8]).unwrap();
        let m = cumulants_to_moments(&ones).unwrap();
        let expected = catalan(8);
        for (k, &c) in expected.iter().enumerate() {
            assert_relative_eq!(m.get(k).unwrap(), c, max_relative = 1e-12);
        }
    }

    #[test]
    fn point_mass_cumulants() {
        // r_1 = c, rest 0 => m_k = c^k
        let c = 1.7;
        let cum = RealSequence::new(1, vec![c, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let m = cumulants_to_moments(&cum).unwrap();
        for k in 0..=5 {
            assert_relative_eq!(m.get(k).unwrap(), c.powi(k as i32), max_relative = 1e-12);
        }
        let back = moments_to_cumulants(&m).unwrap();
        assert_relative_eq!(back.get(1).unwrap(), c, max_relative = 1e-12);
        for k in 2..=5 {
            assert!(back.get(k).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn cumulant_identity_reconstructs_moments() {
        // moments rebuilt from A_n(p - r, r) match A_n(p, r)
        let params = FcParams::new(3.0, 1.3).unwrap();
        let rebuilt = cumulants_to_moments(&free_cumulants(&params, 12).unwrap()).unwrap();
        let direct = moments(&params, 12).unwrap();
        for k in 0..=12 {
            let (a, b) = (rebuilt.get(k).unwrap(), direct.get(k).unwrap());
            assert!(
                ((a - b) / b.abs().max(1.0)).abs() < 1e-10,
                "k = {k}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn catalan_moments_invert_to_ones() {
        let m = RealSequence::new(0, catalan(8)).unwrap();
        let c = moments_to_cumulants(&m).unwrap();
        for k in 1..=8 {
            assert!((c.get(k).unwrap() - 1.0).abs() < 1e-12, "r_{k}");
        }
    }

    #[test]
    fn conversion_roundtrip() {
        let vals = vec![0.3, -1.2, 2.1, 0.0, 4.4, -0.7];
        let cum = RealSequence::new(1, vals.clone()).unwrap();
        let back = moments_to_cumulants(&cumulants_to_moments(&cum).unwrap()).unwrap();
        for (k, v) in vals.iter().enumerate() {
            assert!((back.get(k + 1).unwrap() - v).abs() < 1e-12);
        }
    }

    #[test]
    fn conversion_validates_indexing() {
        let m = RealSequence::new(0, vec![1.0, 2.0]).unwrap();
        assert!(cumulants_to_moments(&m).is_err());
        let c = RealSequence::new(1, vec![1.0]).unwrap();
        assert!(moments_to_cumulants(&c).is_err());
        let bad = RealSequence::new(0, vec![2.0, 1.0]).unwrap();
        assert!(moments_to_cumulants(&bad).is_err());
    }
}
