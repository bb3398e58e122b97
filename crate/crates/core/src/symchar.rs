//! Conjugacy classes of the symmetric group, irreducible characters via
//! the Murnaghan–Nakayama rule, induced permutation characters, and
//! Kostka numbers.
//!
//! All character arithmetic is exact integer arithmetic; floats enter
//! only when characters meet spectra elsewhere in the crate.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{all_partitions, factorial_u128, Partition};

/// Largest symmetric-group degree served by the table builders.
pub const MAX_DEGREE: usize = 12;

/// Cycle type of a permutation: a partition of `m` recording cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(parts: Partition) -> Self {
        CycleType(parts)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    /// Degree of the symmetric group this class lives in.
    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    /// Canonical representative: cycles of the given lengths laid out
    /// consecutively on `0..m`. E.g. type [2,1] gives the permutation
    /// (0 1)(2) = [1, 0, 2].
    pub fn representative(&self) -> Vec<usize> {
        let m = self.degree();
        let mut perm = vec![0usize; m];
        let mut start = 0;
        for &len in self.0.parts() {
            for k in 0..len {
                perm[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        perm
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Cycle type of an explicit permutation of `0..m`.
pub fn cycle_type_of(perm: &[usize]) -> Result<CycleType> {
    let m = perm.len();
    let mut seen = vec![false; m];
    let mut lengths = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = *perm.get(i).filter(|&&t| t < m).ok_or_else(|| {
                Error::InvalidArgument(format!("not a permutation of 0..{m}: {perm:?}"))
            })?;
            len += 1;
        }
        if i != start {
            return Err(Error::InvalidArgument(format!(
                "not a permutation of 0..{m}: {perm:?}"
            )));
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CycleType(Partition::new(lengths)?))
}

/// The conjugacy classes of `S_m` with their cardinalities, in a fixed
/// order: identity class first, ascending toward the single `m`-cycle
/// class (the reverse of the partition enumeration order).
#[derive(Debug, Clone)]
pub struct ConjClassTable {
    m: usize,
    classes: Vec<CycleType>,
    sizes: Vec<u64>,
    index: HashMap<Vec<usize>, usize>,
}

impl ConjClassTable {
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class with the given cycle lengths (descending).
    pub fn index_of_parts(&self, parts: &[usize]) -> Option<usize> {
        self.index.get(parts).copied()
    }

    pub fn index_of(&self, t: &CycleType) -> Option<usize> {
        self.index_of_parts(t.partition().parts())
    }

    /// `m!` as u64; exact for every degree this table serves.
    pub fn group_order(&self) -> u64 {
        factorial_u128(self.m).expect("degree is capped") as u64
    }
}

/// Builds the conjugacy class table of `S_m`.
pub fn class_table(m: usize) -> Result<ConjClassTable> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "symmetric group degree must be positive".into(),
        ));
    }
    if m > MAX_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "character tables are capped at degree {MAX_DEGREE}, got {m}"
        )));
    }
    let mut classes: Vec<CycleType> = all_partitions(m, None)?
        .into_iter()
        .map(CycleType)
        .collect();
    classes.reverse();
    let group_order = factorial_u128(m)?;
    let sizes = classes
        .iter()
        .map(|t| (group_order / centralizer_order(t.partition())) as u64)
        .collect();
    let index = classes
        .iter()
        .enumerate()
        .map(|(i, t)| (t.partition().parts().to_vec(), i))
        .collect();
    Ok(ConjClassTable {
        m,
        classes,
        sizes,
        index,
    })
}

/// Centralizer order `z = prod_k k^{m_k} m_k!` for a cycle type.
fn centralizer_order(t: &Partition) -> u128 {
    let mut z: u128 = 1;
    let mut run = 0usize;
    let parts = t.parts();
    for i in 0..parts.len() {
        z *= parts[i] as u128;
        run += 1;
        if i + 1 == parts.len() || parts[i + 1] != parts[i] {
            z *= factorial_u128(run).expect("run length is small");
            run = 0;
        }
    }
    z
}

/// An integer-valued class function on `S_m`, indexed parallel to
/// [`ConjClassTable::classes`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    m: usize,
    values: Vec<i64>,
}

impl ClassFunction {
    pub fn new(m: usize, values: Vec<i64>) -> Result<Self> {
        let table = class_table(m)?;
        if values.len() != table.len() {
            return Err(Error::InvalidArgument(format!(
                "class function on S_{m} needs {} values, got {}",
                table.len(),
                values.len()
            )));
        }
        Ok(ClassFunction { m, values })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value on the identity class.
    pub fn at_identity(&self) -> i64 {
        self.values[0]
    }

    pub fn value_at(&self, class_index: usize) -> i64 {
        self.values[class_index]
    }

    /// `sum_i coeff_i * f_i` for class functions of equal degree.
    pub fn linear_combination(terms: &[(i64, &ClassFunction)]) -> Result<ClassFunction> {
        let Some(((_, first), rest)) = terms.split_first() else {
            return Err(Error::InvalidArgument(
                "linear combination needs at least one term".into(),
            ));
        };
        let m = first.m;
        if rest.iter().any(|(_, f)| f.m != m) {
            return Err(Error::InvalidArgument(
                "class functions in a combination must share a degree".into(),
            ));
        }
        let mut values = vec![0i64; first.values.len()];
        for (coeff, f) in terms {
            for (v, &x) in values.iter_mut().zip(&f.values) {
                *v += coeff * x;
            }
        }
        Ok(ClassFunction { m, values })
    }
}

/// Irreducible character of `S_m` labelled by a partition of `m`,
/// evaluated on every conjugacy class by the Murnaghan–Nakayama rule.
pub fn irreducible_character(eta: &Partition) -> Result<ClassFunction> {
    let m = eta.weight();
    let table = class_table(m)?;
    let mut memo: HashMap<(Vec<usize>, Vec<usize>), i64> = HashMap::new();
    let values = table
        .classes()
        .iter()
        .map(|class| murnaghan_nakayama(eta.parts(), class.partition().parts(), &mut memo))
        .collect();
    ClassFunction::new(m, values)
}

/// Recursive strip removal on beta numbers (first-column hook lengths),
/// memoized on (shape, remaining cycles).
fn murnaghan_nakayama(
    shape: &[usize],
    cycles: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    if cycles.is_empty() {
        // weight must be exhausted together with the cycles
        debug_assert!(shape.is_empty());
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = cycles[0];
    let rest = &cycles[1..];
    let rows = shape.len();
    // Beta numbers: strictly decreasing, beta_i = shape_i + rows - 1 - i.
    let beta: Vec<usize> = (0..rows).map(|i| shape[i] + rows - 1 - i).collect();
    let mut total = 0i64;
    for i in 0..rows {
        let b = beta[i];
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| target < x && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut new_beta: Vec<usize> = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let mut new_shape: Vec<usize> = new_beta
            .iter()
            .enumerate()
            .map(|(k, &bk)| bk + k + 1 - rows)
            .collect();
        while new_shape.last() == Some(&0) {
            new_shape.pop();
        }
        total += sign * murnaghan_nakayama(&new_shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Kostka number: semistandard Young tableaux of shape `lambda` and
/// content `eta`, counted by peeling horizontal strips.
pub fn kostka(lambda: &Partition, eta: &Partition) -> Result<u64> {
    if lambda.weight() != eta.weight() {
        return Err(Error::InvalidArgument(format!(
            "Kostka number requires equal weights: {} vs {}",
            lambda, eta
        )));
    }
    let mut memo = HashMap::new();
    Ok(kostka_rec(lambda.parts(), eta.parts(), &mut memo))
}

fn kostka_rec(
    shape: &[usize],
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), u64>,
) -> u64 {
    if content.is_empty() {
        return usize::from(shape.is_empty()) as u64;
    }
    let key = (shape.to_vec(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let strip = content[content.len() - 1];
    let rest = &content[..content.len() - 1];
    let mut total = 0u64;
    // Enumerate mu <= shape with shape/mu a horizontal strip of `strip`
    // cells: interlacing shape_{i+1} <= mu_i <= shape_i.
    let mut mu = vec![0usize; shape.len()];
    total += kostka_strip(shape, 0, strip, &mut mu, rest, memo);
    memo.insert(key, total);
    total
}

fn kostka_strip(
    shape: &[usize],
    row: usize,
    remaining: usize,
    mu: &mut Vec<usize>,
    rest: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), u64>,
) -> u64 {
    if row == shape.len() {
        if remaining > 0 {
            return 0;
        }
        let mut inner: Vec<usize> = mu.clone();
        while inner.last() == Some(&0) {
            inner.pop();
        }
        return kostka_rec(&inner, rest, memo);
    }
    let lo = shape.get(row + 1).copied().unwrap_or(0);
    let hi = shape[row];
    let mut total = 0;
    for keep in lo..=hi {
        let removed = hi - keep;
        if removed > remaining {
            continue;
        }
        // rows of mu must stay weakly decreasing
        if row > 0 && keep > mu[row - 1] {
            continue;
        }
        mu[row] = keep;
        total += kostka_strip(shape, row + 1, remaining - removed, mu, rest, memo);
    }
    total
}

/// The permutation character of `S_m` acting on cosets of the Young
/// subgroup for `eta` (induced from its trivial character), expanded as
/// `sum_lambda K_{lambda,eta} chi_lambda`.
pub fn induced_character(eta: &Partition) -> Result<ClassFunction> {
    let m = eta.weight();
    let table = class_table(m)?;
    let mut values = vec![0i64; table.len()];
    for lambda in all_partitions(m, None)? {
        let mult = kostka(&lambda, eta)?;
        if mult == 0 {
            continue;
        }
        let chi = irreducible_character(&lambda)?;
        for (v, &x) in values.iter_mut().zip(chi.values()) {
            *v += mult as i64 * x;
        }
    }
    ClassFunction::new(m, values)
}
