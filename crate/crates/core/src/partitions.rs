//! Integer partitions, the dominance order, and tableau counting formulas.
//!
//! Partitions are stored without trailing zeros so structural equality is
//! canonical equality. Prefix-sum comparisons pad with zeros implicitly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest weight accepted by the enumeration routines.
pub const MAX_ENUM_WEIGHT: usize = 64;

/// A partition: a weakly decreasing sequence of positive integers.
///
/// Serializes as a bare JSON array, e.g. `[3,1]`. The derived `Ord` is
/// lexicographic on the part sequence (descending-lex enumeration order),
/// not the dominance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that are not weakly
    /// decreasing or contain zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidArgument(format!(
                    "partition parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive, got {:?}",
                parts
            )));
        }
        Ok(Partition { parts })
    }

    /// The empty partition (weight 0); the base case of strip-removal
    /// recursions.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total weight `m = sum of parts`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `parts[i]`, reading zeros past the end.
    pub fn part_or_zero(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Conjugate (transposed Young diagram) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part_or_zero(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of the cell in row `i`, column `j` (0-indexed).
    fn hook(&self, conj: &Partition, i: usize, j: usize) -> usize {
        self.parts[i] - j + conj.parts[j] - i - 1
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A strictly descending chain in the dominance order whose consecutive
/// elements differ by a single cell moved between two rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominancePath {
    steps: Vec<Partition>,
}

impl DominancePath {
    pub fn steps(&self) -> &[Partition] {
        &self.steps
    }

    pub fn first(&self) -> &Partition {
        self.steps.first().expect("path is never empty")
    }

    pub fn last(&self) -> &Partition {
        self.steps.last().expect("path is never empty")
    }
}

/// All partitions of `m` (restricted to at most `max_parts` parts when
/// given), in descending lexicographic order: `[m]` first, `[1^m]` last.
pub fn all_partitions(m: usize, max_parts: Option<usize>) -> Result<Vec<Partition>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "partition weight must be positive".into(),
        ));
    }
    if m > MAX_ENUM_WEIGHT {
        return Err(Error::ResourceLimit(format!(
            "partition enumeration capped at weight {MAX_ENUM_WEIGHT}, got {m}"
        )));
    }
    let slots = max_parts.unwrap_or(m);
    if slots == 0 {
        return Err(Error::InvalidArgument(
            "max_parts must be positive".into(),
        ));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(m, m, slots, &mut current, &mut out);
    Ok(out)
}

fn descend(
    remaining: usize,
    max_part: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = max_part.min(remaining);
    // A feasibility cut: `slots` parts of size <= hi must cover `remaining`.
    for k in (1..=hi).rev() {
        if k * slots < remaining {
            break;
        }
        current.push(k);
        descend(remaining - k, k, slots - 1, current, out);
        current.pop();
    }
}

/// Dominance order: `a` dominates `b` iff every prefix sum of `a` is at
/// least the corresponding prefix sum of `b` (padding with zeros).
pub fn dominates(a: &Partition, b: &Partition) -> Result<bool> {
    if a.weight() != b.weight() {
        return Err(Error::InvalidArgument(format!(
            "dominance compares partitions of equal weight: {} vs {}",
            a, b
        )));
    }
    let rows = a.len().max(b.len());
    let (mut pa, mut pb) = (0usize, 0usize);
    for i in 0..rows {
        pa += a.part_or_zero(i);
        pb += b.part_or_zero(i);
        if pa < pb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A path from `a` down to `b` in the dominance order.
///
/// Each step moves one cell from a higher row to a lower one (strictly
/// decreasing in dominance) while staying above `b`; among the valid moves
/// the lexicographically largest successor is taken, so the result is
/// deterministic. `a == b` yields the single-step path `[a]`.
pub fn dominance_path(a: &Partition, b: &Partition) -> Result<DominancePath> {
    if a.weight() != b.weight() {
        return Err(Error::InvalidArgument(format!(
            "dominance path endpoints must have equal weight: {} vs {}",
            a, b
        )));
    }
    if !dominates(a, b)? {
        return Err(Error::NoPath(format!("{} does not dominate {}", a, b)));
    }
    let mut steps = vec![a.clone()];
    let mut current = a.clone();
    let m = a.weight();
    let move_budget = m * m + 1;
    for _ in 0..move_budget {
        if current == *b {
            return Ok(DominancePath { steps });
        }
        let next = best_downward_move(&current, b)?;
        steps.push(next.clone());
        current = next;
    }
    Err(Error::NoPath(format!(
        "no downward move chain from {} to {}",
        a, b
    )))
}

/// Lexicographically largest single-cell move from `c` that still
/// dominates `floor`.
fn best_downward_move(c: &Partition, floor: &Partition) -> Result<Partition> {
    let rows = c.len();
    let mut best: Option<Partition> = None;
    for i in 0..rows {
        // Destination may be an existing lower row or a fresh one.
        for j in i + 1..=rows {
            let mut parts = c.parts.clone();
            parts[i] -= 1;
            if j == rows {
                parts.push(1);
            } else {
                parts[j] += 1;
            }
            while parts.last() == Some(&0) {
                parts.pop();
            }
            let Ok(candidate) = Partition::new(parts) else {
                continue;
            };
            if !dominates(&candidate, floor)? {
                continue;
            }
            if best.as_ref().map_or(true, |b| candidate > *b) {
                best = Some(candidate);
            }
        }
    }
    best.ok_or_else(|| Error::NoPath(format!("no valid move below {} toward {}", c, floor)))
}

/// Number of standard Young tableaux of shape `eta`, by the hook length
/// formula. Equals the symmetric-group character degree for `eta`.
pub fn syt_count(eta: &Partition) -> Result<u64> {
    let m = eta.weight();
    if m == 0 {
        return Ok(1);
    }
    let conj = eta.conjugate();
    let numerator = factorial_u128(m)?;
    let mut hooks: u128 = 1;
    for i in 0..eta.len() {
        for j in 0..eta.parts[i] {
            hooks = hooks
                .checked_mul(eta.hook(&conj, i, j) as u128)
                .ok_or_else(|| overflow("hook product", eta))?;
        }
    }
    to_u64(numerator / hooks, "standard tableau count", eta)
}

/// Number of semistandard Young tableaux of shape `eta` with entries in
/// `1..=n`, by the hook content formula. Zero when `eta` has more than
/// `n` parts.
pub fn ssyt_count(eta: &Partition, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "alphabet size n must be positive".into(),
        ));
    }
    if eta.len() > n {
        return Ok(0);
    }
    if eta.is_empty() {
        return Ok(1);
    }
    let conj = eta.conjugate();
    let mut numerator: u128 = 1;
    let mut hooks: u128 = 1;
    for i in 0..eta.len() {
        for j in 0..eta.parts[i] {
            // content j - i can be negative; n + content stays positive
            // because i < n in any shape with at most n parts.
            let factor = (n + j - i) as u128;
            numerator = numerator
                .checked_mul(factor)
                .ok_or_else(|| overflow("content product", eta))?;
            hooks = hooks
                .checked_mul(eta.hook(&conj, i, j) as u128)
                .ok_or_else(|| overflow("hook product", eta))?;
        }
    }
    to_u64(numerator / hooks, "semistandard tableau count", eta)
}

/// Multinomial coefficient `n! / prod(eta_i!)` for `eta` a partition of `n`.
pub fn multinomial(eta: &Partition, n: usize) -> Result<u64> {
    if eta.weight() != n {
        return Err(Error::InvalidArgument(format!(
            "multinomial requires a partition of {n}, got {} of weight {}",
            eta,
            eta.weight()
        )));
    }
    let mut value = factorial_u128(n)?;
    for &p in &eta.parts {
        value /= factorial_u128(p)?;
    }
    to_u64(value, "multinomial coefficient", eta)
}

pub(crate) fn factorial_u128(k: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for i in 2..=k as u128 {
        acc = acc
            .checked_mul(i)
            .ok_or_else(|| Error::Overflow(format!("{k}! exceeds 128-bit range")))?;
    }
    Ok(acc)
}

fn to_u64(v: u128, what: &str, eta: &Partition) -> Result<u64> {
    u64::try_from(v).map_err(|_| overflow(what, eta))
}

fn overflow(what: &str, eta: &Partition) -> Error {
    Error::Overflow(format!("{what} for {eta} exceeds integer range"))
}
