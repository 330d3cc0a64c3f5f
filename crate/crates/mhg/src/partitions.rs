//! Integer partitions, horizontal strips, the linearized partition-tree
//! index, and bounded partition counting.
//!
//! Every series in this crate is indexed by the partitions `|κ| ≤ m` with at
//! most `n` parts. They form a tree (append a part `κ_{k+1} ≤ κ_k` to get a
//! child) which we linearize into dense integer indexes so that Jack-function
//! values can live in a flat table.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A partition: nonincreasing positive integer parts. Trailing zeros are
/// never stored.
#[derive(Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
    conj: OnceLock<Vec<usize>>,
}

impl Partition {
    /// Builds a partition, stripping trailing zeros. Errors if the parts are
    /// not nonincreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be nonincreasing, got {parts:?}"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition has an interior zero part: {parts:?}"
            )));
        }
        Ok(Self {
            parts,
            conj: OnceLock::new(),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Caller guarantees the parts are already nonincreasing and positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Self {
            parts,
            conj: OnceLock::new(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |κ|, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// κ_i with 1-based `i`; zero beyond the stored parts.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-based");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// κ′_j with 1-based `j`; zero beyond κ_1.
    pub fn conj_part(&self, j: usize) -> usize {
        assert!(j >= 1, "columns are 1-based");
        self.conj_parts().get(j - 1).copied().unwrap_or(0)
    }

    /// The conjugate as a slice, computed once on first use.
    pub fn conj_parts(&self) -> &[usize] {
        self.conj.get_or_init(|| conjugate_parts(&self.parts))
    }

    /// The conjugate partition κ′, with κ′_j = #{i : κ_i ≥ j}.
    pub fn conjugate(&self) -> Partition {
        Partition::from_parts_unchecked(self.conj_parts().to_vec())
    }
}

impl Clone for Partition {
    fn clone(&self) -> Self {
        Self {
            parts: self.parts.clone(),
            conj: OnceLock::new(),
        }
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn conjugate_parts(parts: &[usize]) -> Vec<usize> {
    let cols = parts.first().copied().unwrap_or(0);
    let mut conj = vec![0usize; cols];
    for &p in parts {
        for c in conj.iter_mut().take(p) {
            *c += 1;
        }
    }
    conj
}

/// True iff κ/μ is a horizontal strip: κ₁ ≥ μ₁ ≥ κ₂ ≥ μ₂ ≥ … with missing
/// parts read as zero. Implies μ ⊆ κ.
pub fn is_horizontal_strip(kappa: &Partition, mu: &Partition) -> bool {
    let rows = kappa.len().max(mu.len());
    for i in 1..=rows {
        if kappa.part(i) < mu.part(i) || mu.part(i) < kappa.part(i + 1) {
            return false;
        }
    }
    true
}

/// P_{mn}: the number of nonempty partitions of weight ≤ m with at most n
/// parts, via the recurrence p_k(i) = p_{k−1}(i−1) + p_k(i−k).
pub fn count_partitions_bounded(m: usize, n: usize) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "maximum part count must be at least 1, got {n}"
        )));
    }
    if m == 0 {
        return Ok(0);
    }
    let kmax = m.min(n);
    // p[k][i] = number of partitions of i with exactly k parts
    let mut prev = vec![0u64; m + 1]; // k = 0 row: p_0(0) = 1
    prev[0] = 1;
    let mut total: u64 = 0;
    let overflow = || Error::Resource(format!("partition count for m={m}, n={n} overflows u64"));
    for k in 1..=kmax {
        let mut cur = vec![0u64; m + 1];
        for i in 1..=m {
            let a = prev[i - 1];
            let b = if i >= k { cur[i - k] } else { 0 };
            cur[i] = a.checked_add(b).ok_or_else(overflow)?;
            total = total.checked_add(cur[i]).ok_or_else(overflow)?;
        }
        prev = cur;
    }
    Ok(total)
}

/// The linearized partition tree: every partition `|κ| ≤ m` with at most `n`
/// parts gets a distinct index N_κ in {0,…,P_{mn}}, with 0 reserved for the
/// empty partition and N_{(i)} = i for the one-part partitions.
///
/// `D(N_κ)` is the index of the child `(κ_1,…,κ_k,1)`, which makes the index
/// of any partition recoverable by the recurrence
/// `N_{(κ_1..κ_i)} = D(N_{(κ_1..κ_{i−1})}) + κ_i − 1`.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    m: usize,
    n: usize,
    d: Vec<u32>,
    count: usize,
}

/// Hard cap on table entries; beyond this the dense tables stop being a
/// desk-scale computation.
const MAX_TABLE_ENTRIES: u64 = 1 << 31;

impl PartitionTable {
    pub fn build(m: usize, n: usize) -> Result<Self> {
        let count64 = count_partitions_bounded(m, n)?;
        if count64 + 1 > MAX_TABLE_ENTRIES {
            return Err(Error::Resource(format!(
                "partition table for m={m}, n={n} needs P_mn+1 = {} entries",
                count64 + 1
            )));
        }
        let count = count64 as usize;
        let mut d = vec![0u32; count + 1];
        if m >= 1 {
            d[0] = 1;
        }
        let mut h = (m + 1) as u32;
        assign_children(&mut d, &mut h, 1, m, m, 0, n);
        debug_assert_eq!(h as usize, count + 1);
        Ok(Self { m, n, d, count })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Maximum part count indexed by the table.
    pub fn max_parts(&self) -> usize {
        self.n
    }

    /// P_{mn}, the number of indexed nonempty partitions.
    pub fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn child_pointer(&self, idx: usize) -> usize {
        self.d[idx] as usize
    }

    /// N_κ for a partition within the table's range.
    pub fn index(&self, kappa: &Partition) -> Result<usize> {
        self.index_parts(kappa.parts())
    }

    pub(crate) fn index_parts(&self, parts: &[usize]) -> Result<usize> {
        let out_of_range = || {
            Error::InvalidArgument(format!(
                "partition {parts:?} outside table range m={}, n={}",
                self.m, self.n
            ))
        };
        if parts.len() > self.n || parts.iter().sum::<usize>() > self.m {
            return Err(out_of_range());
        }
        let Some(&first) = parts.first() else {
            return Ok(0);
        };
        let mut nk = first;
        for &p in &parts[1..] {
            let child = self.d[nk] as usize;
            if child == 0 {
                return Err(out_of_range());
            }
            nk = child + p - 1;
        }
        Ok(nk)
    }
}

/// Assigns index blocks depth-first in the generation order of the series
/// sweep: κ_1 = 1..m outermost, κ_i = 1..min(κ_{i−1}, m−|prefix|).
fn assign_children(
    d: &mut [u32],
    h: &mut u32,
    row: usize,
    budget: usize,
    prev_part: usize,
    prefix_idx: u32,
    nmax: usize,
) {
    let r = prev_part.min(budget);
    let mut nk = 0u32;
    for v in 1..=r {
        if row == 1 {
            nk = v as u32;
        } else if v == 1 {
            d[prefix_idx as usize] = *h;
            nk = *h;
            *h += r as u32;
        } else {
            nk += 1;
        }
        if budget > v && row < nmax {
            assign_children(d, h, row + 1, budget - v, v, nk, nmax);
        }
    }
}

/// Builds a [`PartitionTable`] for `|κ| ≤ m`, at most `n` parts.
pub fn build_table(m: usize, n: usize) -> Result<PartitionTable> {
    PartitionTable::build(m, n)
}

/// N_κ lookup against a built table.
pub fn partition_index(kappa: &Partition, table: &PartitionTable) -> Result<usize> {
    table.index(kappa)
}

/// Visits every partition `|κ| ≤ m` with at most `n` parts in the tree order
/// of the series sweep. The callback receives the parts and the (1-based)
/// index of the part that changed relative to the previous visit; recursion
/// depth is bounded by `min(m, n)`.
pub fn enumerate_partitions(
    m: usize,
    n: usize,
    mut visit: impl FnMut(&[usize], usize),
) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "maximum part count must be at least 1, got {n}"
        )));
    }
    let mut kappa = Vec::with_capacity(m.min(n));
    enumerate_rec(&mut kappa, 1, m, n, &mut visit);
    Ok(())
}

fn enumerate_rec(
    kappa: &mut Vec<usize>,
    row: usize,
    budget: usize,
    nmax: usize,
    visit: &mut impl FnMut(&[usize], usize),
) {
    let prev = if row == 1 { budget } else { kappa[row - 2] };
    let r = prev.min(budget);
    kappa.push(0);
    for v in 1..=r {
        kappa[row - 1] = v;
        visit(kappa, row);
        if budget > v && row < nmax {
            enumerate_rec(kappa, row + 1, budget - v, nmax, visit);
        }
    }
    kappa.pop();
}
