//! Statistical contracts of the Monte Carlo estimators: invariance
//! properties of the estimands, honesty of the reported standard
//! errors, and agreement with the closed forms along the diagonal-power
//! route.

mod common;

use haar_immanants::closedform::{averaged_immanant, averaged_induced_immanant};
use haar_immanants::haar::{
    haar_unitary, mc_average_df, mc_diagonal_power_product, mc_matrix_element_product,
    mc_matrix_element_product_perm,
};
use haar_immanants::matrixfn::{hermitian_spectrum, random_psd, SquareMatrix};
use haar_immanants::partitions::{all_partitions, multinomial, Partition};
use haar_immanants::symchar::{irreducible_character, CycleType};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn combined(a: f64, b: f64) -> f64 {
    (a * a + b * b).sqrt()
}

#[test]
fn estimand_is_invariant_under_fixed_conjugation() {
    // replacing A by vAv* moves every estimate within statistical error
    let n = 3;
    let a = random_psd(n, 3).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(100);
    let v = haar_unitary(n, &mut rng);
    let conjugated = v.mul(&a).mul(&v.adjoint());

    let chi = irreducible_character(&p(&[2, 1])).unwrap();
    let e1 = mc_average_df(&a, &chi, 40_000, 11, 2).unwrap();
    let e2 = mc_average_df(&conjugated, &chi, 40_000, 12, 2).unwrap();
    let gap = (e1.mean.re - e2.mean.re).abs();
    assert!(
        gap <= 4.0 * combined(e1.std_error, e2.std_error),
        "{e1:?} vs {e2:?}"
    );
}

#[test]
fn matrix_element_products_depend_only_on_the_cycle_type() {
    // two permutations of the same type, different supports
    let n = 4;
    let a = random_psd(n, 5).unwrap();
    // (0 1)(2)(3) and (2 3)(0)(1) are both of type [2,1,1]
    let e1 = mc_matrix_element_product_perm(&a, &[1, 0, 2, 3], 40_000, 21, 2).unwrap();
    let e2 = mc_matrix_element_product_perm(&a, &[0, 1, 3, 2], 40_000, 22, 2).unwrap();
    let gap = (e1.mean.re - e2.mean.re).abs();
    assert!(
        gap <= 4.0 * combined(e1.std_error, e2.std_error),
        "{e1:?} vs {e2:?}"
    );
    // and the canonical-representative path matches too
    let e3 = mc_matrix_element_product(&a, &CycleType::new(p(&[2, 1, 1])), 40_000, 23, 2).unwrap();
    let gap = (e1.mean.re - e3.mean.re).abs();
    assert!(gap <= 4.0 * combined(e1.std_error, e3.std_error));
}

#[test]
fn reported_standard_errors_cover_the_truth() {
    // over 50 seeds, the closed form lands within 2 sigma at least 40
    // times (~95% nominal coverage)
    let n = 2;
    let a = random_psd(n, 9).unwrap();
    let spec = hermitian_spectrum(&a).unwrap();
    let eta = p(&[2]);
    let truth = averaged_immanant(&spec, &eta).unwrap().value.re;
    let chi = irreducible_character(&eta).unwrap();
    let mut hits = 0;
    for seed in 0..50 {
        let est = mc_average_df(&a, &chi, 4_000, seed, 1).unwrap();
        if (est.mean.re - truth).abs() <= 2.0 * est.std_error {
            hits += 1;
        }
    }
    assert!(hits >= 40, "only {hits}/50 within two standard errors");
}

#[test]
fn diagonal_power_route_matches_the_kostka_route() {
    // multinomial(gamma) * int prod (A^u)_{ii}^{gamma_i} du equals the
    // averaged induced immanant, for every gamma at each size
    for n in 2..=4 {
        let a = random_psd(n, 50 + n as u64).unwrap();
        let spec = hermitian_spectrum(&a).unwrap();
        for gamma in all_partitions(n, None).unwrap() {
            let est = mc_diagonal_power_product(&a, &gamma, 100_000, 37, 2).unwrap();
            let scaled_mean = est.mean.re * multinomial(&gamma, n).unwrap() as f64;
            let scaled_se = est.std_error * multinomial(&gamma, n).unwrap() as f64;
            let closed = averaged_induced_immanant(&spec, &gamma).unwrap().re;
            assert!(
                (scaled_mean - closed).abs() <= 4.0 * scaled_se + 1e-9 * closed.abs().max(1.0),
                "n {n}, gamma {gamma}: {scaled_mean} vs {closed} (se {scaled_se})"
            );
        }
    }
}

#[test]
fn worker_splits_change_rounding_but_not_the_estimate() {
    let a = random_psd(3, 70).unwrap();
    let chi = irreducible_character(&p(&[3])).unwrap();
    let single = mc_average_df(&a, &chi, 20_000, 55, 1).unwrap();
    let split = mc_average_df(&a, &chi, 20_000, 55, 4).unwrap();
    // different streams, so only statistical agreement is expected
    let gap = (single.mean.re - split.mean.re).abs();
    assert!(gap <= 4.0 * combined(single.std_error, split.std_error));
    // but each configuration is exactly reproducible
    assert_eq!(split, mc_average_df(&a, &chi, 20_000, 55, 4).unwrap());
}

#[test]
fn identity_spectrum_estimates_are_exact_for_every_shape() {
    let id = SquareMatrix::identity(4);
    for eta in all_partitions(4, None).unwrap() {
        let chi = irreducible_character(&eta).unwrap();
        let est = mc_average_df(&id, &chi, 100, 1, 2).unwrap();
        let want = chi.at_identity() as f64;
        assert!((est.mean.re - want).abs() < 1e-10, "eta {eta}: {est:?}");
        assert!(est.std_error < 1e-12);
    }
}
