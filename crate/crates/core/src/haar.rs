//! Haar-random unitary sampling and streaming Monte Carlo estimation of
//! conjugation averages — the independent check on every closed form in
//! this crate.
//!
//! Determinism contract: an estimate is a pure function of
//! `(seed, samples, workers)`. Worker `w` draws from a ChaCha12 stream
//! derived as `seed_from_u64(seed)` + `set_stream(w)`, samples are split
//! `samples/workers` apiece (the first `samples % workers` workers take
//! one extra), and partial results merge in worker order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrixfn::{complex_gaussian_matrix, matrix_function, SquareMatrix};
use crate::partitions::Partition;
use crate::symchar::{ClassFunction, CycleType};

/// Streaming Monte Carlo result. `std_error` is the standard error of
/// the real component of the mean; the imaginary component is tracked
/// separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    pub std_error: f64,
    pub std_error_im: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Welford accumulator over complex samples, component-wise second
/// moments.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
}

impl Welford {
    fn push(&mut self, z: Complex64) {
        self.count += 1;
        let delta = z - self.mean;
        self.mean += delta / self.count as f64;
        let delta2 = z - self.mean;
        self.m2_re += delta.re * delta2.re;
        self.m2_im += delta.im * delta2.im;
    }

    /// Pairwise combination; associative up to rounding, applied in a
    /// fixed order for reproducibility.
    fn merge(a: Welford, b: Welford) -> Welford {
        if a.count == 0 {
            return b;
        }
        if b.count == 0 {
            return a;
        }
        let count = a.count + b.count;
        let delta = b.mean - a.mean;
        let w = b.count as f64 / count as f64;
        let cross = a.count as f64 * b.count as f64 / count as f64;
        Welford {
            count,
            mean: a.mean + delta * w,
            m2_re: a.m2_re + b.m2_re + delta.re * delta.re * cross,
            m2_im: a.m2_im + b.m2_im + delta.im * delta.im * cross,
        }
    }

    fn estimate(&self, seed: u64) -> MCEstimate {
        let k = self.count as f64;
        MCEstimate {
            mean: self.mean,
            std_error: (self.m2_re / (k * (k - 1.0))).sqrt(),
            std_error_im: (self.m2_im / (k * (k - 1.0))).sqrt(),
            samples: self.count,
            seed,
        }
    }
}

/// Haar-distributed random unitary.
///
/// A complex Ginibre matrix is QR-factored by modified Gram-Schmidt with
/// a reorthogonalization pass; normalizing each column by its positive
/// residual norm fixes the R diagonal positive, which is exactly the
/// phase convention under which Q is Haar.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> SquareMatrix {
    let g = complex_gaussian_matrix(n, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let mut r = Complex64::ZERO;
                for k in 0..n {
                    r += cols[i][k].conj() * cols[j][k];
                }
                for k in 0..n {
                    let correction = r * cols[i][k];
                    cols[j][k] -= correction;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            // Probability-zero degenerate draw; fall back to a basis vector.
            for k in 0..n {
                cols[j][k] = if k == j { Complex64::ONE } else { Complex64::ZERO };
            }
            continue;
        }
        for k in 0..n {
            cols[j][k] /= norm;
        }
    }
    let mut data = vec![Complex64::ZERO; n * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
    SquareMatrix::new(n, data).expect("finite by construction")
}

/// `u A u*`.
pub fn conjugate(a: &SquareMatrix, u: &SquareMatrix) -> SquareMatrix {
    u.mul(a).mul(&u.adjoint())
}

/// Splits `samples` over `workers`, runs `eval` on each Haar-conjugated
/// draw, and merges the per-worker accumulators in worker order.
fn mc_run<F>(n: usize, samples: u64, seed: u64, workers: usize, eval: F) -> Result<MCEstimate>
where
    F: Fn(&SquareMatrix) -> Complex64 + Sync,
{
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo estimation needs at least 2 samples, got {samples}"
        )));
    }
    if workers == 0 {
        return Err(Error::InvalidArgument("worker count must be positive".into()));
    }
    let workers = workers.min(samples as usize);
    let counts: Vec<u64> = (0..workers as u64)
        .map(|w| samples / workers as u64 + u64::from(w < samples % workers as u64))
        .collect();
    let run_worker = |w: usize| -> Welford {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(w as u64);
        let mut acc = Welford::default();
        for _ in 0..counts[w] {
            let u = haar_unitary(n, &mut rng);
            acc.push(eval(&u));
        }
        acc
    };
    let merged = if workers == 1 {
        run_worker(0)
    } else {
        let partials: Vec<Welford> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || run_worker(w)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        partials.into_iter().fold(Welford::default(), Welford::merge)
    };
    Ok(merged.estimate(seed))
}

/// Monte Carlo estimate of the conjugation average of `d_f`:
/// the mean of `d_f(u A u*)` over i.i.d. Haar draws.
pub fn mc_average_df(
    a: &SquareMatrix,
    f: &ClassFunction,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MCEstimate> {
    // Surface precondition violations before spawning workers.
    matrix_function(a, f)?;
    mc_run(a.dim(), samples, seed, workers, |u| {
        matrix_function(&conjugate(a, u), f).expect("preconditions checked")
    })
}

/// Monte Carlo estimate of `int prod_{i<m} (A^u)[i, sigma(i)] du` for the
/// canonical representative of a cycle type. The value depends on the
/// permutation only through its cycle type.
pub fn mc_matrix_element_product(
    a: &SquareMatrix,
    sigma: &CycleType,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MCEstimate> {
    mc_matrix_element_product_perm(a, &sigma.representative(), samples, seed, workers)
}

/// Same estimand for an explicit permutation of `0..m`.
pub fn mc_matrix_element_product_perm(
    a: &SquareMatrix,
    perm: &[usize],
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MCEstimate> {
    let m = perm.len();
    crate::symchar::cycle_type_of(perm)?;
    if m > a.dim() {
        return Err(Error::InvalidArgument(format!(
            "permutation degree {m} exceeds matrix dimension {}",
            a.dim()
        )));
    }
    mc_run(a.dim(), samples, seed, workers, |u| {
        let b = conjugate(a, u);
        let mut prod = Complex64::ONE;
        for (i, &j) in perm.iter().enumerate() {
            prod *= b.get(i, j);
        }
        prod
    })
}

/// Monte Carlo estimate of `int prod_i (A^u)[i, i]^{gamma_i} du` for
/// `gamma` a partition of the matrix dimension. Scaled by the
/// multinomial coefficient this estimates the averaged induced-character
/// immanant.
pub fn mc_diagonal_power_product(
    a: &SquareMatrix,
    gamma: &Partition,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MCEstimate> {
    if gamma.weight() != a.dim() {
        return Err(Error::InvalidArgument(format!(
            "exponent partition must have weight {}, got {}",
            a.dim(),
            gamma
        )));
    }
    let exponents: Vec<u32> = gamma.parts().iter().map(|&p| p as u32).collect();
    mc_run(a.dim(), samples, seed, workers, |u| {
        let b = conjugate(a, u);
        let mut prod = Complex64::ONE;
        for (i, &e) in exponents.iter().enumerate() {
            prod *= b.get(i, i).powu(e);
        }
        prod
    })
}
