//! Numeric Schur polynomial evaluation.
//!
//! The working route is the power-sum expansion
//! `s_eta = sum_classes (size/m!) chi_eta(class) p_class`, which stays
//! finite at repeated eigenvalues (the all-ones point is the evaluation
//! everything else in this crate divides by). The hook content formula
//! supplies the exact integer value at the all-ones point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrixfn::Spectrum;
use crate::partitions::{ssyt_count, Partition};
use crate::symchar::{class_table, irreducible_character};

/// Power sums `p_k = sum_i lambda_i^k` for `k = 1..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSums {
    values: Vec<Complex64>,
}

impl PowerSums {
    /// `p_k`, 1-indexed.
    pub fn p(&self, k: usize) -> Complex64 {
        self.values[k - 1]
    }

    pub fn max_degree(&self) -> usize {
        self.values.len()
    }
}

/// Power sums of a spectrum up to degree `m`.
///
/// Eigenvalues are summed in a canonical order, so permuting the
/// spectrum yields bit-identical results.
pub fn power_sums(spec: &Spectrum, m: usize) -> Result<PowerSums> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "power sums need a positive degree".into(),
        ));
    }
    let mut sorted = spec.values().to_vec();
    sorted.sort_unstable_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite entries")
    });
    let mut values = vec![Complex64::ZERO; m];
    for &lambda in &sorted {
        let mut power = Complex64::ONE;
        for pk in values.iter_mut() {
            power *= lambda;
            *pk += power;
        }
    }
    Ok(PowerSums { values })
}

/// Numeric `s_eta(lambda_1, ..., lambda_n)` for `eta` a partition of `m`.
///
/// Vanishes (up to rounding) when `eta` has more parts than the
/// spectrum has nonzero entries.
pub fn schur_at_spectrum(eta: &Partition, spec: &Spectrum) -> Result<Complex64> {
    let m = eta.weight();
    if m == 0 {
        return Ok(Complex64::ONE);
    }
    let table = class_table(m)?;
    let chi = irreducible_character(eta)?;
    let ps = power_sums(spec, m)?;
    let order = table.group_order() as f64;
    let mut total = Complex64::ZERO;
    for (idx, class) in table.classes().iter().enumerate() {
        let chi_value = chi.value_at(idx);
        if chi_value == 0 {
            continue;
        }
        let mut p_class = Complex64::ONE;
        for &k in class.partition().parts() {
            p_class *= ps.p(k);
        }
        total += p_class * (table.sizes()[idx] as f64 * chi_value as f64 / order);
    }
    Ok(total)
}

/// Exact `s_eta(1, ..., 1)` with `n` ones: the semistandard tableau
/// count by the hook content formula. Zero when `eta` has more than `n`
/// parts.
pub fn schur_at_ones(eta: &Partition, n: usize) -> Result<u64> {
    ssyt_count(eta, n)
}
