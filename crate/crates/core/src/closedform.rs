//! Exact conjugation averages over the unitary group.
//!
//! Everything here reduces to three ingredients: symmetric-group
//! character values, Schur polynomial values at the spectrum, and the
//! same Schur polynomial at the all-ones point. No integration is
//! performed; the Monte Carlo estimators in [`crate::haar`] exist to
//! cross-check these formulas.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrixfn::Spectrum;
use crate::partitions::{all_partitions, syt_count, Partition};
use crate::schur::{schur_at_ones, schur_at_spectrum};
use crate::symchar::{class_table, irreducible_character, kostka, ClassFunction, CycleType};

/// The averaged immanant `chi_eta(e) * s_eta(spectrum) / s_eta(1^n)`,
/// with its ingredients kept for auditing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AveragedImmanant {
    pub eta: Partition,
    pub value: Complex64,
    pub schur_at_spec: Complex64,
    pub schur_at_ones: u64,
    pub chi_identity: u64,
    /// Set when `eta` has more parts than the spectrum has entries; the
    /// average is identically zero there and no division is attempted.
    pub rank_deficient: bool,
}

/// Average of the immanant of `u A u*` over Haar-distributed `u`, for
/// `eta` a partition of `m <= n`. Depends on `A` only through its
/// spectrum.
pub fn averaged_immanant(spec: &Spectrum, eta: &Partition) -> Result<AveragedImmanant> {
    let n = spec.len();
    if eta.len() > n {
        return Ok(AveragedImmanant {
            eta: eta.clone(),
            value: Complex64::ZERO,
            schur_at_spec: Complex64::ZERO,
            schur_at_ones: 0,
            chi_identity: syt_count(eta)?,
            rank_deficient: true,
        });
    }
    if eta.weight() > n {
        return Err(Error::InvalidArgument(format!(
            "averaged immanant needs weight <= spectrum length, got {} with {n} eigenvalues",
            eta
        )));
    }
    let chi_identity = syt_count(eta)?;
    let at_spec = schur_at_spectrum(eta, spec)?;
    let at_ones = schur_at_ones(eta, n)?;
    Ok(AveragedImmanant {
        eta: eta.clone(),
        value: at_spec * (chi_identity as f64 / at_ones as f64),
        schur_at_spec: at_spec,
        schur_at_ones: at_ones,
        chi_identity,
        rank_deficient: false,
    })
}

/// Average of the induced-character immanant `d_[eta]` of `u A u*`,
/// expanded through Kostka numbers:
/// `sum_lambda K_{lambda,eta} * averaged_immanant(lambda)`.
pub fn averaged_induced_immanant(spec: &Spectrum, eta: &Partition) -> Result<Complex64> {
    let m = eta.weight();
    if m > spec.len() {
        return Err(Error::InvalidArgument(format!(
            "averaged induced immanant needs weight <= spectrum length, got {} with {} eigenvalues",
            eta,
            spec.len()
        )));
    }
    let mut total = Complex64::ZERO;
    for lambda in all_partitions(m, None)? {
        let mult = kostka(&lambda, eta)?;
        if mult == 0 {
            continue;
        }
        total += averaged_immanant(spec, &lambda)?.value * mult as f64;
    }
    Ok(total)
}

/// One summand of the matrix-element integral expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralTerm {
    pub eta: Partition,
    pub value: Complex64,
}

/// The averaged product of matrix elements along a permutation:
/// `int prod_{i<m} (u A u*)[i, sigma(i)] du`, which depends on `sigma`
/// only through its cycle type. Evaluates
/// `sum_{eta |- m} (s_eta(spec)/s_eta(1^n)) * (chi_eta(e)/m!) * chi_eta(sigma)`,
/// skipping shapes with more than `n` parts (their Schur values vanish
/// and would otherwise divide zero by zero).
pub fn matrix_element_integral(spec: &Spectrum, sigma: &CycleType) -> Result<Complex64> {
    Ok(matrix_element_integral_terms(spec, sigma)?.0)
}

/// Same, returning the per-shape terms for reporting.
pub fn matrix_element_integral_terms(
    spec: &Spectrum,
    sigma: &CycleType,
) -> Result<(Complex64, Vec<IntegralTerm>)> {
    let n = spec.len();
    let m = sigma.degree();
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "permutation degree {m} exceeds spectrum length {n}"
        )));
    }
    let table = class_table(m)?;
    let class_index = table
        .index_of(sigma)
        .expect("cycle type indexes a class of its own degree");
    let order = table.group_order() as f64;
    let mut total = Complex64::ZERO;
    let mut terms = Vec::new();
    for eta in all_partitions(m, None)? {
        if eta.len() > n {
            continue;
        }
        let chi = irreducible_character(&eta)?;
        let chi_sigma = chi.value_at(class_index);
        if chi_sigma == 0 {
            continue;
        }
        let ratio = schur_at_spectrum(&eta, spec)? / schur_at_ones(&eta, n)? as f64;
        let value = ratio * (chi.at_identity() as f64 / order * chi_sigma as f64);
        total += value;
        terms.push(IntegralTerm { eta, value });
    }
    Ok((total, terms))
}

/// Trace of the conjugation-averaged tensor power on the submodule with
/// character `chi_v`: `sum_classes size * chi_v * I(A, class)`.
///
/// `chi_v` must be a genuine character — a nonnegative integer
/// combination of irreducibles — which is checked exactly before any
/// float work.
pub fn trace_on_submodule(spec: &Spectrum, chi_v: &ClassFunction) -> Result<Complex64> {
    let m = chi_v.degree();
    if m > spec.len() {
        return Err(Error::InvalidArgument(format!(
            "character degree {m} exceeds spectrum length {}",
            spec.len()
        )));
    }
    character_multiplicities(chi_v)?;
    let table = class_table(m)?;
    let mut total = Complex64::ZERO;
    for (idx, class) in table.classes().iter().enumerate() {
        let weight = chi_v.value_at(idx);
        if weight == 0 {
            continue;
        }
        let integral = matrix_element_integral(spec, class)?;
        total += integral * (table.sizes()[idx] as f64 * weight as f64);
    }
    Ok(total)
}

/// Exact multiplicities of `chi_v` against the irreducible characters;
/// errors when any is negative or fractional.
pub fn character_multiplicities(chi_v: &ClassFunction) -> Result<Vec<(Partition, u64)>> {
    let m = chi_v.degree();
    let table = class_table(m)?;
    let order = table.group_order() as i128;
    let mut mults = Vec::new();
    for eta in all_partitions(m, None)? {
        let chi = irreducible_character(&eta)?;
        let dot: i128 = table
            .sizes()
            .iter()
            .zip(chi_v.values().iter().zip(chi.values()))
            .map(|(&s, (&v, &x))| s as i128 * v as i128 * x as i128)
            .sum();
        if dot % order != 0 || dot < 0 {
            return Err(Error::InvalidArgument(format!(
                "class function is not a character: multiplicity of {eta} is {dot}/{order}"
            )));
        }
        let mult = (dot / order) as u64;
        if mult > 0 {
            mults.push((eta, mult));
        }
    }
    Ok(mults)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symchar::induced_character;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn spec(values: &[f64]) -> Spectrum {
        Spectrum::from_reals(values).unwrap()
    }

    #[test]
    fn determinant_shape_is_conjugation_invariant() {
        let avg = averaged_immanant(&spec(&[1.0, 2.0]), &p(&[1, 1])).unwrap();
        assert!((avg.value.re - 2.0).abs() < 1e-12);
        assert_eq!(avg.schur_at_ones, 1);
        assert_eq!(avg.chi_identity, 1);
    }

    #[test]
    fn row_shape_averaged_value() {
        let avg = averaged_immanant(&spec(&[1.0, 2.0]), &p(&[2])).unwrap();
        assert!((avg.value.re - 7.0 / 3.0).abs() < 1e-12, "{avg:?}");
        assert_eq!(avg.schur_at_ones, 3);
    }

    #[test]
    fn identity_spectrum_returns_the_character_degree() {
        for n in 1..=5 {
            for eta in all_partitions(n, None).unwrap() {
                let avg = averaged_immanant(&Spectrum::ones(n), &eta).unwrap();
                let want = syt_count(&eta).unwrap() as f64;
                assert!(
                    (avg.value.re - want).abs() < 1e-10 * want,
                    "eta {eta}: {avg:?}"
                );
            }
        }
    }

    #[test]
    fn too_many_parts_is_flagged_not_divided() {
        let avg = averaged_immanant(&spec(&[1.0, 2.0]), &p(&[1, 1, 1])).unwrap();
        assert!(avg.rank_deficient);
        assert_eq!(avg.value, Complex64::ZERO);
        assert_eq!(avg.schur_at_ones, 0);
    }

    #[test]
    fn weight_above_dimension_is_rejected() {
        assert!(matches!(
            averaged_immanant(&spec(&[1.0, 2.0]), &p(&[2, 2])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn induced_average_at_identity_spectrum_is_the_multinomial() {
        for n in 1..=5 {
            for eta in all_partitions(n, None).unwrap() {
                let v = averaged_induced_immanant(&Spectrum::ones(n), &eta).unwrap();
                let want = crate::partitions::multinomial(&eta, n).unwrap() as f64;
                assert!((v.re - want).abs() < 1e-10 * want, "eta {eta}: {v}");
            }
        }
    }

    #[test]
    fn induced_average_examples() {
        // column shape: regular character; spec (1,2) gives 7/3 + 2 = 13/3
        let v = averaged_induced_immanant(&spec(&[1.0, 2.0]), &p(&[1, 1])).unwrap();
        assert!((v.re - 13.0 / 3.0).abs() < 1e-12, "{v}");

        // row shape: the trivial character, i.e. the averaged permanent
        let v = averaged_induced_immanant(&spec(&[1.0, 2.0]), &p(&[2])).unwrap();
        let per = averaged_immanant(&spec(&[1.0, 2.0]), &p(&[2])).unwrap().value;
        assert!((v - per).norm() < 1e-12);
    }

    #[test]
    fn identity_spectrum_integral_is_the_delta_at_identity() {
        for m in 1..=5 {
            let table = class_table(m).unwrap();
            for (idx, class) in table.classes().iter().enumerate() {
                let v = matrix_element_integral(&Spectrum::ones(m), class).unwrap();
                let want = if idx == 0 { 1.0 } else { 0.0 };
                assert!(
                    (v.re - want).abs() <= 1e-12 && v.im.abs() <= 1e-12,
                    "m {m}, class {class}: {v}"
                );
            }
        }
    }

    #[test]
    fn two_eigenvalue_integral_closed_forms() {
        let (l1, l2) = (1.0, 2.0);
        let s = spec(&[l1, l2]);
        let e = CycleType::new(p(&[1, 1]));
        let swap = CycleType::new(p(&[2]));
        let first = 0.5 * (l1 * l1 + l2 * l2 + l1 * l2) / 3.0;
        let ve = matrix_element_integral(&s, &e).unwrap();
        let vs = matrix_element_integral(&s, &swap).unwrap();
        assert!((ve.re - (first + l1 * l2 / 2.0)).abs() < 1e-12, "{ve}");
        assert!((vs.re - (first - l1 * l2 / 2.0)).abs() < 1e-12, "{vs}");
        assert!((ve.re - 13.0 / 6.0).abs() < 1e-12);
        assert!((vs.re - 1.0 / 6.0).abs() < 1e-12);
        // their difference is the determinant
        assert!(((ve - vs).re - l1 * l2).abs() < 1e-12);
    }

    #[test]
    fn rank_one_integral_ignores_the_permutation() {
        // only the one-row shape supports a rank-one spectrum, so the
        // expansion collapses to its [m] term for every cycle type
        let s = spec(&[1.6, 0.0, 0.0]);
        for m in 1..=3 {
            let table = class_table(m).unwrap();
            let factorial: f64 = (1..=m).product::<usize>() as f64;
            let want = 1.6f64.powi(m as i32)
                / (factorial * schur_at_ones(&p(&[m]), 3).unwrap() as f64);
            for class in table.classes() {
                let v = matrix_element_integral(&s, class).unwrap();
                assert!(
                    (v.re - want).abs() < 1e-12 * want.max(1.0),
                    "m {m}, class {class}: {v} vs {want}"
                );
            }
        }
    }

    #[test]
    fn degree_above_spectrum_length_is_rejected() {
        let s = spec(&[1.0, 2.0]);
        assert!(matches!(
            matrix_element_integral(&s, &CycleType::new(p(&[2, 1]))),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn submodule_trace_reduces_to_the_named_cases() {
        let s = spec(&[0.8, 2.2, 1.1]);
        // single irreducible
        for eta in all_partitions(3, None).unwrap() {
            let chi = irreducible_character(&eta).unwrap();
            let via_trace = trace_on_submodule(&s, &chi).unwrap();
            let direct = averaged_immanant(&s, &eta).unwrap().value;
            assert!(
                (via_trace - direct).norm() < 1e-10 * direct.norm().max(1.0),
                "eta {eta}"
            );
        }
        // induced character
        for eta in all_partitions(3, None).unwrap() {
            let ind = induced_character(&eta).unwrap();
            let via_trace = trace_on_submodule(&s, &ind).unwrap();
            let direct = averaged_induced_immanant(&s, &eta).unwrap();
            assert!(
                (via_trace - direct).norm() < 1e-10 * direct.norm().max(1.0),
                "eta {eta}"
            );
        }
    }

    #[test]
    fn regular_character_trace_identity() {
        let s = spec(&[0.5, 1.5, 3.0]);
        let regular = induced_character(&p(&[1, 1, 1])).unwrap();
        let lhs = trace_on_submodule(&s, &regular).unwrap();
        let mut rhs = Complex64::ZERO;
        for eta in all_partitions(3, None).unwrap() {
            let deg = syt_count(&eta).unwrap() as f64;
            rhs += averaged_immanant(&s, &eta).unwrap().value * deg;
        }
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
        let identity = CycleType::new(p(&[1, 1, 1]));
        let via_integral = matrix_element_integral(&s, &identity).unwrap() * 6.0;
        assert!((lhs - via_integral).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn non_characters_are_rejected() {
        // chi_[2,1] - chi_[3] has a negative multiplicity
        let a = irreducible_character(&p(&[2, 1])).unwrap();
        let b = irreducible_character(&p(&[3])).unwrap();
        let diff = ClassFunction::linear_combination(&[(1, &a), (-1, &b)]).unwrap();
        assert!(matches!(
            trace_on_submodule(&spec(&[1.0, 1.0, 1.0]), &diff),
            Err(Error::InvalidArgument(_))
        ));
    }
}
