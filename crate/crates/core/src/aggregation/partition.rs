use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};

/// A partition of the input positions `0..n` into non-empty blocks.
///
/// Block order is meaningful: solvers emit blocks aligned with the sorted
/// aggregated distribution, and coupling rows follow it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionRepr> for Partition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        Partition::new(r.blocks)
    }
}

impl From<Partition> for PartitionRepr {
    fn from(p: Partition) -> Self {
        PartitionRepr { blocks: p.blocks }
    }
}

impl Partition {
    /// Builds a partition of `0..n`, where `n` is the total number of indices.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::BadPartition(format!(
                        "index {i} out of range for {n} elements"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::BadPartition(format!("index {i} appears twice")));
                }
            }
        }
        if blocks.is_empty() {
            return Err(Error::BadPartition("no blocks".into()));
        }
        Ok(Partition { blocks, n })
    }

    /// Builds a partition from a block label per index (labels need not be
    /// contiguous); blocks are ordered by first occurrence.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut slot: Vec<Option<usize>> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if l >= slot.len() {
                slot.resize(l + 1, None);
            }
            let b = *slot[l].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
        }
        Partition::new(blocks)
    }

    /// Every index in its own block.
    pub fn singletons(n: usize) -> Result<Self> {
        Partition::new((0..n).map(|i| vec![i]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Number of indices covered.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub(crate) fn check_against(&self, p: &Dist) -> Result<()> {
        if self.n != p.len() {
            return Err(Error::BadPartition(format!(
                "partition covers {} indices but distribution has {}",
                self.n,
                p.len()
            )));
        }
        Ok(())
    }

    /// Block masses in block order (not re-sorted).
    pub fn block_sums(&self, p: &Dist) -> Result<Vec<f64>> {
        self.check_against(p)?;
        Ok(self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| p.mass_at(i)).sum())
            .collect())
    }

    /// Reorders blocks by non-increasing mass, stable on ties.
    pub(crate) fn sorted_by_mass(self, p: &Dist) -> Result<(Self, Vec<f64>)> {
        let sums = self.block_sums(p)?;
        let mut paired: Vec<(Vec<usize>, f64)> = self.blocks.into_iter().zip(sums).collect();
        paired.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (blocks, sums) = paired.into_iter().unzip();
        Ok((Partition { blocks, n: self.n }, sums))
    }
}

/// Calls `visit` with the restricted growth string of every partition of
/// `0..n` into exactly `m` blocks, in lexicographic order.
///
/// A restricted growth string has `labels[0] = 0` and each label at most one
/// more than the maximum before it.
pub fn for_each_rgs<F: FnMut(&[usize])>(n: usize, m: usize, mut visit: F) {
    if m == 0 || m > n {
        return;
    }
    let mut labels = vec![0usize; n];
    rgs_step(&mut labels, 1, 1, m, &mut visit);
}

fn rgs_step<F: FnMut(&[usize])>(
    labels: &mut [usize],
    pos: usize,
    used: usize,
    m: usize,
    visit: &mut F,
) {
    let n = labels.len();
    if pos == n {
        if used == m {
            visit(labels);
        }
        return;
    }
    let remaining = n - pos;
    let top = used.min(m - 1);
    for l in 0..=top {
        let now_used = used.max(l + 1);
        if m - now_used > remaining - 1 {
            continue;
        }
        labels[pos] = l;
        rgs_step(labels, pos + 1, now_used, m, visit);
    }
}

/// Stirling number of the second kind, `S(n, m)`.
pub fn stirling2(n: usize, m: usize) -> u128 {
    let mut row = vec![0u128; m + 1];
    row[0] = 1;
    for _ in 0..n {
        for k in (1..=m).rev() {
            row[k] = k as u128 * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    row[m]
}
