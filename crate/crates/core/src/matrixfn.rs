//! Complex square matrices, spectra, and generalized matrix functions
//! `d_f(A) = sum_sigma f(sigma) prod_i A[i, sigma(i)]`.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symchar::{class_table, ClassFunction};

/// Permutation sums are iterated exhaustively; 10! is the ceiling.
pub const MAX_PERMUTATION_DEGREE: usize = 10;
/// Ryser's formula walks 2^n subsets; 24 keeps that in the seconds range.
pub const MAX_PERMANENT_DIM: usize = 24;

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{n}x{n} matrix needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(z) = data.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "matrix entries must be finite, got {z}"
            )));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "expected {n} entries per row in a {n}x{n} matrix"
            )));
        }
        SquareMatrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::ONE;
        }
        SquareMatrix { n, data }
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        let mut m = SquareMatrix::new(n, vec![Complex64::ZERO; n * n])?;
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> SquareMatrix {
        let n = self.n;
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        SquareMatrix { n, data }
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        SquareMatrix { n, data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Errs with the worst offending entry when `|A - A*|` exceeds `tol`
    /// anywhere.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let mut worst = 0.0;
        let mut at = (0, 0);
        for i in 0..self.n {
            for j in i..self.n {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                if dev > worst {
                    worst = dev;
                    at = (i, j);
                }
            }
        }
        if worst > tol {
            return Err(Error::NonHermitian(format!(
                "entry ({}, {}) deviates from the conjugate transpose by {:.3e} (tolerance {:.1e})",
                at.0, at.1, worst, tol
            )));
        }
        Ok(())
    }
}

/// Eigenvalue list (with multiplicity). Only the spectrum enters any of
/// the averaged closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_complex(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("spectrum must be nonempty".into()));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("spectrum entries must be finite".into()));
        }
        Ok(Spectrum { values })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Spectrum::from_complex(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn ones(n: usize) -> Self {
        Spectrum {
            values: vec![Complex64::ONE; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn sum_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum()
    }

    pub fn nonzero_count(&self, tol: f64) -> usize {
        self.values.iter().filter(|z| z.norm() > tol).count()
    }
}

/// A spectrum certified real and nonnegative, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PsdSpec {
    values: Vec<f64>,
}

impl PsdSpec {
    /// Accepts values down to -1e-10 (eigensolver noise), clamping them
    /// to zero.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("spectrum must be nonempty".into()));
        }
        if let Some(&bad) = values.iter().find(|&&x| !(x >= -1e-10) || !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "PSD spectrum entries must be nonnegative, got {bad}"
            )));
        }
        let mut values: Vec<f64> = values.iter().map(|&x| x.max(0.0)).collect();
        values.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
        Ok(PsdSpec { values })
    }

    pub fn from_spectrum(spec: &Spectrum) -> Result<Self> {
        if let Some(bad) = spec.values().iter().find(|z| z.im.abs() > 1e-10) {
            return Err(Error::InvalidArgument(format!(
                "PSD spectrum must be real, got eigenvalue {bad}"
            )));
        }
        PsdSpec::new(spec.values().iter().map(|z| z.re).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_reals(&self.values).expect("validated")
    }
}

/// Generalized matrix function `d_f(A)` for a class function `f` on
/// `S_m`, `m <= n`: the permutation sum runs over `S_m` acting on the
/// leading `m x m` block of `A`.
///
/// Permutations are iterated exhaustively, bucketed by cycle type so `f`
/// is read once per class.
pub fn matrix_function(a: &SquareMatrix, f: &ClassFunction) -> Result<Complex64> {
    let m = f.degree();
    if m > a.dim() {
        return Err(Error::InvalidArgument(format!(
            "class function degree {m} exceeds matrix dimension {}",
            a.dim()
        )));
    }
    if m > MAX_PERMUTATION_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "permutation sums are capped at degree {MAX_PERMUTATION_DEGREE}, got {m}"
        )));
    }
    let table = class_table(m)?;
    let code_of_class: HashMap<u64, usize> = table
        .classes()
        .iter()
        .enumerate()
        .map(|(idx, t)| (pack_cycle_type(t.partition().parts()), idx))
        .collect();
    let mut per_class = vec![Complex64::ZERO; table.len()];
    let n = a.dim();
    for_each_permutation(m, |perm| {
        let mut prod = Complex64::ONE;
        for (i, &j) in perm.iter().enumerate() {
            prod *= a.data[i * n + j];
        }
        let code = cycle_type_code(perm);
        per_class[code_of_class[&code]] += prod;
    });
    let mut total = Complex64::ZERO;
    for (idx, &sum) in per_class.iter().enumerate() {
        total += sum * f.value_at(idx) as f64;
    }
    Ok(total)
}

/// Packs descending cycle lengths into a u64 key (4 bits per part; fine
/// for degree <= 10).
fn pack_cycle_type(parts: &[usize]) -> u64 {
    parts.iter().fold(0u64, |acc, &p| (acc << 4) | p as u64)
}

/// Cycle type key of a permutation without allocating.
fn cycle_type_code(perm: &[usize]) -> u64 {
    let m = perm.len();
    let mut seen = [false; MAX_PERMUTATION_DEGREE];
    let mut lengths = [0usize; MAX_PERMUTATION_DEGREE];
    let mut count = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        lengths[count] = len;
        count += 1;
    }
    lengths[..count].sort_unstable_by(|a, b| b.cmp(a));
    pack_cycle_type(&lengths[..count])
}

/// Heap's algorithm; calls `visit` on every permutation of `0..m`.
fn for_each_permutation(m: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    visit(&perm);
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Permanent by Ryser's inclusion-exclusion with Gray-code column
/// updates, `O(2^n n)`.
pub fn permanent(a: &SquareMatrix) -> Result<Complex64> {
    let n = a.dim();
    if n > MAX_PERMANENT_DIM {
        return Err(Error::ResourceLimit(format!(
            "permanent is capped at dimension {MAX_PERMANENT_DIM}, got {n}"
        )));
    }
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut included = 0u32;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        if gray & (1 << j) != 0 {
            for i in 0..n {
                row_sums[i] += a.get(i, j);
            }
            included += 1;
        } else {
            for i in 0..n {
                row_sums[i] -= a.get(i, j);
            }
            included -= 1;
        }
        let mut prod = Complex64::ONE;
        for &s in &row_sums {
            prod *= s;
        }
        // (-1)^(n - |S|)
        if (n as u32 - included) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, sorted
/// descending. The off-diagonal Frobenius norm is driven below
/// `1e-12 * ||A||_F`.
pub fn hermitian_spectrum(a: &SquareMatrix) -> Result<Spectrum> {
    a.check_hermitian(1e-10)?;
    let n = a.dim();
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Spectrum::from_reals(&vec![0.0; n]);
    }
    let target = 1e-12 * norm;
    let mut w = a.clone();
    let mut converged = false;
    for _sweep in 0..60 {
        if off_diagonal_norm(&w) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut w, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&w) > target {
        return Err(Error::ResourceLimit(
            "Jacobi iteration failed to converge".into(),
        ));
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w.get(i, i).re).collect();
    eig.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
    Spectrum::from_reals(&eig)
}

fn off_diagonal_norm(w: &SquareMatrix) -> f64 {
    let n = w.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided unitary rotation in the (p, q) plane annihilating the
/// (p, q) entry: a diagonal phase absorbs arg(w_pq), then a real Jacobi
/// rotation zeroes the resulting real symmetric 2x2 block.
fn jacobi_rotate(w: &mut SquareMatrix, p: usize, q: usize) {
    let apq = w.get(p, q);
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = apq / mag;
    let app = w.get(p, p).re;
    let aqq = w.get(q, q).re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = w.dim();
    // Columns: A <- A U with U_pp = c, U_pq = s, U_qp = -s e^{-i phi},
    // U_qq = c e^{-i phi}.
    let phase_conj = phase.conj();
    for k in 0..n {
        let akp = w.get(k, p);
        let akq = w.get(k, q);
        w.set(k, p, akp * c - akq * phase_conj * s);
        w.set(k, q, akp * s + akq * phase_conj * c);
    }
    // Rows: A <- U* A.
    for k in 0..n {
        let apk = w.get(p, k);
        let aqk = w.get(q, k);
        w.set(p, k, apk * c - aqk * phase * s);
        w.set(q, k, apk * s + aqk * phase * c);
    }
    // The rotated diagonal is real up to rounding; pin it.
    let wpp = w.get(p, p);
    let wqq = w.get(q, q);
    w.set(p, p, Complex64::new(wpp.re, 0.0));
    w.set(q, q, Complex64::new(wqq.re, 0.0));
    w.set(p, q, Complex64::ZERO);
    w.set(q, p, Complex64::ZERO);
}

/// Matrix with independent standard complex Gaussian entries.
pub(crate) fn complex_gaussian_matrix<R: Rng>(n: usize, rng: &mut R) -> SquareMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let data = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    SquareMatrix { n, data }
}

/// Seeded random Hermitian positive semi-definite matrix `G G*` with `G`
/// complex Ginibre.
pub fn random_psd(n: usize, seed: u64) -> Result<SquareMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = complex_gaussian_matrix(n, &mut rng);
    Ok(g.mul(&g.adjoint()))
}

// ---------------------------------------------------------------------
// Matrix file formats
// ---------------------------------------------------------------------

/// Parses `{"n": 2, "rows": [[1, [0, 1]], [3, 4]]}`; an entry is a plain
/// number (real) or a two-element `[re, im]` array.
pub fn matrix_from_json_str(text: &str) -> Result<SquareMatrix> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("matrix JSON must be an object".into()))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Parse("matrix JSON needs an integer field \"n\"".into()))?
        as usize;
    let rows = obj
        .get("rows")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("matrix JSON needs an array field \"rows\"".into()))?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, got {}",
            rows.len()
        )));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| Error::Parse(format!("row {i} must hold {n} entries")))?;
        for (j, entry) in row.iter().enumerate() {
            data.push(json_entry(entry).ok_or_else(|| {
                Error::Parse(format!(
                    "entry ({i}, {j}) must be a number or a [re, im] pair"
                ))
            })?);
        }
    }
    SquareMatrix::new(n, data)
}

fn json_entry(v: &serde_json::Value) -> Option<Complex64> {
    if let Some(x) = v.as_f64() {
        return Some(Complex64::new(x, 0.0));
    }
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    Some(Complex64::new(pair[0].as_f64()?, pair[1].as_f64()?))
}

/// Parses a real matrix from CSV: `n` lines of `n` comma-separated
/// numbers.
pub fn matrix_from_csv_str(text: &str) -> Result<SquareMatrix> {
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map(|x| Complex64::new(x, 0.0))
                        .map_err(|e| Error::Parse(format!("CSV cell {cell:?}: {e}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("CSV matrix is empty".into()));
    }
    SquareMatrix::from_rows(rows)
}
