//! Brute-force oracles shared by the integration suites. Everything
//! here is deliberately independent of the library's evaluation paths:
//! tableaux are enumerated cell by cell, permanents summed over
//! permutations, characters counted from first principles.

#![allow(dead_code)]

use haar_immanants::matrixfn::{SquareMatrix, Spectrum};
use haar_immanants::partitions::Partition;
use num_complex::Complex64;

/// Permanent as a bare sum over all permutations.
pub fn naive_permanent(a: &SquareMatrix) -> Complex64 {
    let n = a.dim();
    let mut used = vec![false; n];
    fn rec(a: &SquareMatrix, row: usize, used: &mut [bool], acc: Complex64) -> Complex64 {
        let n = a.dim();
        if row == n {
            return acc;
        }
        let mut total = Complex64::ZERO;
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                total += rec(a, row + 1, used, acc * a.get(row, col));
                used[col] = false;
            }
        }
        total
    }
    rec(a, 0, &mut used, Complex64::ONE)
}

/// Standard Young tableaux of a shape, counted by placing the letters
/// `1..=m` one at a time into row-fill frontiers.
pub fn brute_syt_count(shape: &Partition) -> u64 {
    let rows = shape.len();
    let mut fill = vec![0usize; rows];
    fn rec(shape: &[usize], fill: &mut [usize], placed: usize, m: usize) -> u64 {
        if placed == m {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            if fill[i] < shape[i] && (i == 0 || fill[i - 1] > fill[i]) {
                fill[i] += 1;
                total += rec(shape, fill, placed + 1, m);
                fill[i] -= 1;
            }
        }
        total
    }
    rec(shape.parts(), &mut fill, 0, shape.weight())
}

/// Fillings of a shape with entries in `1..=max_entry`, weakly
/// increasing along rows and strictly increasing down columns. When
/// `content` is given, entry `k` must appear exactly `content[k-1]`
/// times.
pub fn brute_ssyt_count(shape: &Partition, max_entry: usize, content: Option<&[usize]>) -> u64 {
    let mut count = 0u64;
    for_each_ssyt(shape, max_entry, &mut |tableau| {
        if let Some(target) = content {
            let mut counts = vec![0usize; max_entry];
            for row in tableau {
                for &e in row {
                    counts[e - 1] += 1;
                }
            }
            let padded: Vec<usize> = (0..max_entry)
                .map(|i| target.get(i).copied().unwrap_or(0))
                .collect();
            if counts != padded {
                return;
            }
        }
        count += 1;
    });
    count
}

/// Sum over semistandard tableaux of the eigenvalue monomial
/// `prod_cells lambda_{entry}` — the monomial expansion of a Schur
/// polynomial.
pub fn monomial_schur(shape: &Partition, spec: &Spectrum) -> Complex64 {
    let n = spec.len();
    let mut total = Complex64::ZERO;
    for_each_ssyt(shape, n, &mut |tableau| {
        let mut prod = Complex64::ONE;
        for row in tableau {
            for &e in row {
                prod *= spec.values()[e - 1];
            }
        }
        total += prod;
    });
    total
}

fn for_each_ssyt(shape: &Partition, max_entry: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    let rows = shape.len();
    if rows == 0 {
        visit(&[]);
        return;
    }
    if rows > max_entry {
        return;
    }
    let mut tableau: Vec<Vec<usize>> = shape.parts().iter().map(|&w| vec![0; w]).collect();
    fn rec(
        shape: &[usize],
        tableau: &mut Vec<Vec<usize>>,
        cell: usize,
        cells: &[(usize, usize)],
        max_entry: usize,
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if cell == cells.len() {
            visit(tableau);
            return;
        }
        let (i, j) = cells[cell];
        let min_row = if j > 0 { tableau[i][j - 1] } else { 1 };
        let min_col = if i > 0 { tableau[i - 1][j] + 1 } else { 1 };
        for e in min_row.max(min_col)..=max_entry {
            tableau[i][j] = e;
            rec(shape, tableau, cell + 1, cells, max_entry, visit);
        }
        tableau[i][j] = 0;
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &w)| (0..w).map(move |j| (i, j)))
        .collect();
    rec(shape.parts(), &mut tableau, 0, &cells, max_entry, visit);
}

/// Complete homogeneous symmetric polynomials `h_0..=h_max` of the
/// spectrum, from the generating product `prod_i 1/(1 - lambda_i t)`
/// expanded one eigenvalue at a time.
pub fn complete_homogeneous(spec: &Spectrum, max: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::ZERO; max + 1];
    h[0] = Complex64::ONE;
    for &lambda in spec.values() {
        for k in 1..=max {
            let prev = h[k - 1];
            h[k] += lambda * prev;
        }
    }
    h
}

/// Jacobi–Trudi determinant `det(h_{eta_i - i + j})` — an evaluation
/// route through complete homogeneous polynomials, independent of the
/// character-based one.
pub fn jacobi_trudi_schur(eta: &Partition, spec: &Spectrum) -> Complex64 {
    let rows = eta.len();
    if rows == 0 {
        return Complex64::ONE;
    }
    let max_index = eta.parts()[0] + rows;
    let h = complete_homogeneous(spec, max_index);
    let mut m = vec![Complex64::ZERO; rows * rows];
    for i in 0..rows {
        for j in 0..rows {
            let idx = eta.parts()[i] as i64 - i as i64 + j as i64;
            m[i * rows + j] = if idx < 0 {
                Complex64::ZERO
            } else {
                h[idx as usize]
            };
        }
    }
    determinant_in_place(&mut m, rows)
}

fn determinant_in_place(m: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                m[a * n + col]
                    .norm()
                    .partial_cmp(&m[b * n + col].norm())
                    .unwrap()
            })
            .unwrap();
        if m[pivot * n + col].norm() == 0.0 {
            return Complex64::ZERO;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let diag = m[col * n + col];
        det *= diag;
        for row in col + 1..n {
            let factor = m[row * n + col] / diag;
            for j in col..n {
                let sub = factor * m[col * n + j];
                m[row * n + j] -= sub;
            }
        }
    }
    det
}

/// Value of the induced permutation character `[eta]` on a permutation
/// of the given cycle type, counted from the definition: the number of
/// ways to distribute the cycles into an ordered list of blocks whose
/// total lengths are `eta_1, eta_2, ...`.
pub fn coset_count_induced(eta: &Partition, cycle_type: &Partition) -> u64 {
    fn rec(cycles: &[usize], idx: usize, remaining: &mut [usize]) -> u64 {
        if idx == cycles.len() {
            return u64::from(remaining.iter().all(|&r| r == 0));
        }
        let len = cycles[idx];
        let mut total = 0;
        for b in 0..remaining.len() {
            if remaining[b] >= len {
                remaining[b] -= len;
                total += rec(cycles, idx + 1, remaining);
                remaining[b] += len;
            }
        }
        total
    }
    let mut remaining = eta.parts().to_vec();
    rec(cycle_type.parts(), 0, &mut remaining)
}

/// Relative closeness helper used across the suites.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
