//! Inequality verification campaigns, runnable as named suites.
//!
//! Suites check closed forms only (exact up to float rounding); the
//! Monte Carlo machinery is deliberately kept out, since a four-sigma
//! band cannot certify a tight inequality. Margins are normalized and
//! must stay above -1e-9; a pass with a negative margin is counted but
//! flagged as a warning by the CLI layer.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::closedform::{averaged_immanant, averaged_induced_immanant, matrix_element_integral};
use crate::error::{Error, Result};
use crate::matrixfn::{permanent, PsdSpec, Spectrum, SquareMatrix};
use crate::partitions::{all_partitions, dominates, multinomial, syt_count, Partition};
use crate::symchar::class_table;

/// Normalized margin floor below which a comparison fails.
pub const MARGIN_TOLERANCE: f64 = -1e-9;

/// How random PSD spectra are scaled after sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    None,
    /// Scale so the product of the eigenvalues is one.
    DetOne,
    /// Scale so the sum of the eigenvalues is one.
    TraceOne,
}

/// One checked comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_prime: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    /// `(lhs - rhs) / scale`; nonnegative when the inequality holds
    /// exactly.
    pub margin: f64,
    pub pass: bool,
}

/// Outcome of a verification suite; reproducible bit-for-bit from its
/// seed.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    /// Requested random draws (spectra or parameter triples).
    pub spectra: usize,
    /// Total comparisons performed.
    pub trials: usize,
    pub pass_count: usize,
    pub worst_margin: f64,
    pub seed: u64,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.pass_count == self.trials
    }

    pub fn warnings(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| c.pass && c.margin < 0.0)
            .count()
    }

    fn from_cases(suite: &str, n: usize, spectra: usize, seed: u64, cases: Vec<CaseRecord>) -> Self {
        let pass_count = cases.iter().filter(|c| c.pass).count();
        let worst_margin = cases.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
        VerificationReport {
            suite: suite.to_string(),
            n,
            spectra,
            trials: cases.len(),
            pass_count,
            worst_margin,
            seed,
            cases,
        }
    }
}

fn margin_of(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    (lhs - rhs) / scale
}

fn record(
    eta: Option<&Partition>,
    eta_prime: Option<&Partition>,
    spectrum: Option<&[f64]>,
    lhs: f64,
    rhs: f64,
) -> CaseRecord {
    let margin = margin_of(lhs, rhs);
    CaseRecord {
        eta: eta.cloned(),
        eta_prime: eta_prime.cloned(),
        spectrum: spectrum.map(|s| s.to_vec()),
        lhs,
        rhs,
        margin,
        pass: margin >= MARGIN_TOLERANCE,
    }
}

/// Random PSD spectrum: squared magnitudes of independent complex
/// Gaussians, optionally normalized to determinant or trace one.
pub fn random_psd_spectrum<R: Rng>(n: usize, rng: &mut R, normalization: Normalization) -> PsdSpec {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut values: Vec<f64> = (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            (re * scale).powi(2) + (im * scale).powi(2)
        })
        .collect();
    match normalization {
        Normalization::None => {}
        Normalization::DetOne => {
            let log_gm = values.iter().map(|x| x.ln()).sum::<f64>() / n as f64;
            let gm = log_gm.exp();
            values.iter_mut().for_each(|x| *x /= gm);
        }
        Normalization::TraceOne => {
            let sum: f64 = values.iter().sum();
            values.iter_mut().for_each(|x| *x /= sum);
        }
    }
    PsdSpec::new(values).expect("nonnegative by construction")
}

/// Averaged monotonicity: along the dominance order (larger first),
/// `multinomial(eta)^-1 * avg d_[eta] >= multinomial(eta')^-1 * avg d_[eta']`
/// for every comparable pair of partitions of `n`, over `trials`
/// random PSD spectra.
pub fn verify_monotonicity(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "monotonicity suite runs for 2 <= n <= 7, got {n}"
        )));
    }
    let partitions = all_partitions(n, None)?;
    let norms: Vec<f64> = partitions
        .iter()
        .map(|eta| multinomial(eta, n).map(|b| b as f64))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..trials {
        let spec = random_psd_spectrum(n, &mut rng, Normalization::None);
        let spectrum = spec.spectrum();
        let normalized: Vec<f64> = partitions
            .iter()
            .zip(&norms)
            .map(|(eta, norm)| {
                averaged_induced_immanant(&spectrum, eta).map(|v| v.re / norm)
            })
            .collect::<Result<_>>()?;
        for (i, hi) in partitions.iter().enumerate() {
            for (j, lo) in partitions.iter().enumerate() {
                if i == j || !dominates(hi, lo)? {
                    continue;
                }
                cases.push(record(
                    Some(hi),
                    Some(lo),
                    Some(spec.values()),
                    normalized[i],
                    normalized[j],
                ));
            }
        }
    }
    Ok(VerificationReport::from_cases(
        "monotonicity",
        n,
        trials,
        seed,
        cases,
    ))
}

/// Direct permanent form of the monotonicity reduction: for nonnegative
/// `b` and `eta` dominating `eta_prime`,
/// `per(b_j^{eta_i}) >= per(b_j^{eta'_i})` (missing parts give zero
/// exponents, i.e. all-ones rows).
pub fn verify_permanent_inequality(
    eta: &Partition,
    eta_prime: &Partition,
    b: &[f64],
) -> Result<bool> {
    if let Some(&bad) = b.iter().find(|&&x| !(x >= 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "base values must be nonnegative, got {bad}"
        )));
    }
    if !dominates(eta, eta_prime)? {
        return Err(Error::InvalidArgument(format!(
            "{eta} must dominate {eta_prime}"
        )));
    }
    let n = b.len();
    if eta.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {eta} has more parts than base values ({n})"
        )));
    }
    let lhs = power_matrix_permanent(eta, b)?;
    let rhs = power_matrix_permanent(eta_prime, b)?;
    Ok(margin_of(lhs, rhs) >= MARGIN_TOLERANCE)
}

fn power_matrix_permanent(exponents: &Partition, b: &[f64]) -> Result<f64> {
    let n = b.len();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let e = exponents.part_or_zero(i) as i32;
            b.iter().map(|&x| Complex64::new(x.powi(e), 0.0)).collect()
        })
        .collect();
    Ok(permanent(&SquareMatrix::from_rows(rows)?)?.re)
}

/// Suite wrapper around [`verify_permanent_inequality`]: random
/// nonnegative bases, all comparable pairs of partitions of `n`.
pub fn perm_ineq_suite(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "permanent-inequality suite runs for 2 <= n <= 7, got {n}"
        )));
    }
    let partitions = all_partitions(n, None)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..trials {
        let b = random_psd_spectrum(n, &mut rng, Normalization::None);
        for hi in &partitions {
            for lo in &partitions {
                if hi == lo || !dominates(hi, lo)? {
                    continue;
                }
                let lhs = power_matrix_permanent(hi, b.values())?;
                let rhs = power_matrix_permanent(lo, b.values())?;
                cases.push(record(Some(hi), Some(lo), Some(b.values()), lhs, rhs));
            }
        }
    }
    Ok(VerificationReport::from_cases(
        "perm-ineq",
        n,
        trials,
        seed,
        cases,
    ))
}

/// `phi(x) = A^x B^(n-x) + A^(n-x) B^x`.
pub fn phi(a: f64, b: f64, n: f64, x: f64) -> f64 {
    a.powf(x) * b.powf(n - x) + a.powf(n - x) * b.powf(x)
}

/// Closed-form derivative `[A^x B^(n-x) - B^x A^(n-x)] ln(A/B)`.
pub fn phi_derivative(a: f64, b: f64, n: f64, x: f64) -> f64 {
    (a.powf(x) * b.powf(n - x) - b.powf(x) * a.powf(n - x)) * (a / b).ln()
}

/// Checks that `phi` is nondecreasing on an ascending grid of points at
/// or beyond `n/2`, and that the closed-form derivative is nonnegative
/// there.
pub fn phi_monotone_check(a: f64, b: f64, n: u32, grid: &[f64]) -> Result<bool> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "phi bases must be positive, got A={a}, B={b}"
        )));
    }
    let half = n as f64 / 2.0;
    if grid.iter().any(|&x| x < half) {
        return Err(Error::InvalidArgument(format!(
            "grid points must be at least n/2 = {half}"
        )));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("grid must be ascending".into()));
    }
    let nf = n as f64;
    let values: Vec<f64> = grid.iter().map(|&x| phi(a, b, nf, x)).collect();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    let monotone = values.windows(2).all(|w| w[1] >= w[0] - tol);
    let derivative_sign = grid
        .iter()
        .all(|&x| phi_derivative(a, b, nf, x) >= -tol);
    Ok(monotone && derivative_sign)
}

/// Suite wrapper: seeded random `(A, B, n)` triples checked on a fixed
/// grid above `n/2`.
pub fn phi_suite(trials: usize, seed: u64, n: Option<u32>) -> Result<VerificationReport> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..trials {
        let a = (rng.random_range(0.5f64.ln()..=2.0f64.ln())).exp();
        let b = (rng.random_range(0.5f64.ln()..=2.0f64.ln())).exp();
        let n_exp = n.unwrap_or_else(|| rng.random_range(1..=8));
        let half = n_exp as f64 / 2.0;
        let grid: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 3.0].iter().map(|d| half + d).collect();
        let ok = phi_monotone_check(a, b, n_exp, &grid)?;
        let first = phi(a, b, n_exp as f64, grid[0]);
        let last = phi(a, b, n_exp as f64, grid[grid.len() - 1]);
        let mut case = record(None, None, Some(&[a, b, n_exp as f64]), last, first);
        case.pass = ok;
        cases.push(case);
    }
    Ok(VerificationReport::from_cases(
        "phi",
        n.map(|v| v as usize).unwrap_or(0),
        trials,
        seed,
        cases,
    ))
}

/// Averaged two-part dominance of the permanent:
/// `avg d_eta(A) / chi_eta(e) <= avg per(A)` for partitions with at most
/// two parts.
pub fn verify_james_liebeck_avg(n: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "james-liebeck suite runs for 2 <= n <= 6, got {n}"
        )));
    }
    let shapes: Vec<Partition> = all_partitions(n, Some(2))?;
    let row = Partition::new(vec![n])?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..trials {
        let spec = random_psd_spectrum(n, &mut rng, Normalization::None);
        let spectrum = spec.spectrum();
        let avg_per = averaged_immanant(&spectrum, &row)?.value.re;
        for eta in &shapes {
            let avg = averaged_immanant(&spectrum, eta)?;
            let normalized = avg.value.re / syt_count(eta)? as f64;
            // inequality: normalized <= avg_per, recorded as rhs-lhs margin
            cases.push(record(
                Some(eta),
                Some(&row),
                Some(spec.values()),
                avg_per,
                normalized,
            ));
        }
    }
    Ok(VerificationReport::from_cases(
        "james-liebeck",
        n,
        trials,
        seed,
        cases,
    ))
}

/// Identity-spectrum matrix-element integrals reduce to the delta at the
/// identity class: a pure character orthogonality identity routed
/// through the integral expansion. Checked for every cycle type of
/// degree `m`.
pub fn verify_integral_orthogonality(n: usize, m: usize) -> Result<bool> {
    Ok(integral_orthogonality_cases(n, m)?.iter().all(|c| c.pass))
}

fn integral_orthogonality_cases(n: usize, m: usize) -> Result<Vec<CaseRecord>> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "degree {m} exceeds dimension {n}"
        )));
    }
    let spec = Spectrum::ones(n);
    let table = class_table(m)?;
    let mut cases = Vec::new();
    for (idx, class) in table.classes().iter().enumerate() {
        let v = matrix_element_integral(&spec, class)?;
        let want = if idx == 0 { 1.0 } else { 0.0 };
        let dev = (v - Complex64::new(want, 0.0)).norm();
        let mut case = record(
            Some(class.partition()),
            None,
            None,
            v.re,
            want,
        );
        case.pass = dev <= 1e-12;
        case.margin = -dev;
        cases.push(case);
    }
    Ok(cases)
}

/// Report form of [`verify_integral_orthogonality`] over every degree
/// `m <= n`.
pub fn orthogonality_suite(n: usize) -> Result<VerificationReport> {
    let mut cases = Vec::new();
    for m in 1..=n {
        cases.extend(integral_orthogonality_cases(n, m)?);
    }
    Ok(VerificationReport::from_cases("theorem9", n, 0, 0, cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn monotonicity_worked_example() {
        // spec (1,2): normalized [2] value 7/3 exceeds normalized [1,1]
        // value 13/6
        let spectrum = Spectrum::from_reals(&[1.0, 2.0]).unwrap();
        let lhs = averaged_induced_immanant(&spectrum, &p(&[2])).unwrap().re / 1.0;
        let rhs = averaged_induced_immanant(&spectrum, &p(&[1, 1])).unwrap().re / 2.0;
        assert!((lhs - 7.0 / 3.0).abs() < 1e-12);
        assert!((rhs - 13.0 / 6.0).abs() < 1e-12);
        assert!(lhs >= rhs);
    }

    #[test]
    fn monotonicity_suite_passes_and_is_reproducible() {
        let r1 = verify_monotonicity(4, 10, 12345).unwrap();
        assert!(r1.all_pass(), "worst margin {}", r1.worst_margin);
        let r2 = verify_monotonicity(4, 10, 12345).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }

    #[test]
    fn identity_spectrum_is_the_equality_case() {
        // all normalized averaged induced immanants equal 1 at A = I
        let spectrum = Spectrum::ones(4);
        for eta in all_partitions(4, None).unwrap() {
            let v = averaged_induced_immanant(&spectrum, &eta).unwrap().re;
            let norm = multinomial(&eta, 4).unwrap() as f64;
            assert!((v / norm - 1.0).abs() < 1e-10, "eta {eta}");
        }
    }

    #[test]
    fn permanent_inequality_worked_example() {
        // eta = [2] (padded to exponents 2,0), eta' = [1,1], b = (1,2):
        // per [[1,4],[1,1]] = 5 >= per [[1,2],[1,2]] = 4
        assert!(verify_permanent_inequality(&p(&[2]), &p(&[1, 1]), &[1.0, 2.0]).unwrap());
        let lhs = power_matrix_permanent(&p(&[2]), &[1.0, 2.0]).unwrap();
        let rhs = power_matrix_permanent(&p(&[1, 1]), &[1.0, 2.0]).unwrap();
        assert!((lhs - 5.0).abs() < 1e-12);
        assert!((rhs - 4.0).abs() < 1e-12);
    }

    #[test]
    fn permanent_inequality_equality_cases() {
        // equal bases: both sides coincide
        assert!(verify_permanent_inequality(&p(&[3, 1]), &p(&[2, 2]), &[2.0, 2.0, 2.0, 2.0])
            .unwrap());
        // eta = eta'
        assert!(verify_permanent_inequality(&p(&[2, 1]), &p(&[2, 1]), &[0.5, 1.5, 2.5]).unwrap());
        // negative bases rejected
        assert!(verify_permanent_inequality(&p(&[2]), &p(&[1, 1]), &[1.0, -1.0]).is_err());
    }

    #[test]
    fn perm_ineq_suite_passes() {
        let r = perm_ineq_suite(4, 25, 7).unwrap();
        assert!(r.all_pass(), "worst margin {}", r.worst_margin);
    }

    #[test]
    fn phi_grid_examples() {
        assert!((phi(2.0, 1.0, 4.0, 2.0) - 8.0).abs() < 1e-12);
        assert!((phi(2.0, 1.0, 4.0, 3.0) - 10.0).abs() < 1e-12);
        assert!((phi(2.0, 1.0, 4.0, 4.0) - 17.0).abs() < 1e-12);
        assert!(phi_monotone_check(2.0, 1.0, 4, &[2.0, 3.0, 4.0]).unwrap());
        assert!(phi_monotone_check(3.0, 3.0, 5, &[2.5, 3.0, 4.0]).unwrap());
        assert!(phi_monotone_check(1.0, 3.0, 5, &[2.5, 3.0, 4.0, 5.0]).unwrap());
        assert!(phi_monotone_check(0.0, 1.0, 2, &[1.0]).is_err());
        assert!(phi_monotone_check(1.0, 1.0, 4, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn phi_suite_passes() {
        let r = phi_suite(200, 99, None).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn james_liebeck_worked_example() {
        let spectrum = Spectrum::from_reals(&[1.0, 2.0]).unwrap();
        let det = averaged_immanant(&spectrum, &p(&[1, 1])).unwrap().value.re;
        let per = averaged_immanant(&spectrum, &p(&[2])).unwrap().value.re;
        assert!((det - 2.0).abs() < 1e-12);
        assert!((per - 7.0 / 3.0).abs() < 1e-12);
        assert!(det <= per);
    }

    #[test]
    fn james_liebeck_suite_passes() {
        for n in 2..=5 {
            let r = verify_james_liebeck_avg(n, 20, 5).unwrap();
            assert!(r.all_pass(), "n {n}: worst {}", r.worst_margin);
        }
    }

    #[test]
    fn orthogonality_identity_holds() {
        for n in 1..=5 {
            for m in 1..=n {
                assert!(verify_integral_orthogonality(n, m).unwrap(), "n {n} m {m}");
            }
        }
        let report = orthogonality_suite(4).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn spectra_normalizations() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let det1 = random_psd_spectrum(4, &mut rng, Normalization::DetOne);
        let prod: f64 = det1.values().iter().product();
        assert!((prod - 1.0).abs() < 1e-10);
        let tr1 = random_psd_spectrum(4, &mut rng, Normalization::TraceOne);
        let sum: f64 = tr1.values().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}
