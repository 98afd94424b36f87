use rayon::prelude::*;

use super::{min_distance_at_least, verify_strength, OrthogonalArray, SymbolArray};
use crate::error::{Error, Result};

/// Split of an orthogonal array's rows into equal-size blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalPartition {
    parent: OrthogonalArray,
    blocks: Vec<Vec<usize>>,
    block_strength: usize,
}

impl OrthogonalPartition {
    /// Checks that the blocks are disjoint, cover every row and share a size.
    /// Strengths are checked separately.
    pub fn new(parent: OrthogonalArray, blocks: Vec<Vec<usize>>, block_strength: usize) -> Result<Self> {
        let r = parent.rows();
        if blocks.is_empty() {
            return Err(Error::invalid("partition has no blocks"));
        }
        let size = blocks[0].len();
        if size == 0 || blocks.iter().any(|b| b.len() != size) {
            return Err(Error::invalid("partition blocks differ in size"));
        }
        let mut hit = vec![false; r];
        for (bi, b) in blocks.iter().enumerate() {
            for &i in b {
                if i >= r {
                    return Err(Error::invalid(format!("block {bi} names row {i} of {r}")));
                }
                if std::mem::replace(&mut hit[i], true) {
                    return Err(Error::invalid(format!("row {i} appears twice (block {bi})")));
                }
            }
        }
        if let Some(i) = hit.iter().position(|h| !h) {
            return Err(Error::invalid(format!("row {i} is in no block")));
        }
        Ok(OrthogonalPartition {
            parent,
            blocks,
            block_strength,
        })
    }

    /// One block holding every row.
    pub fn trivial(parent: OrthogonalArray) -> Self {
        let k = parent.claimed_strength();
        let blocks = vec![(0..parent.rows()).collect()];
        OrthogonalPartition {
            parent,
            blocks,
            block_strength: k,
        }
    }

    /// Every row its own block; block strength 0.
    pub fn singletons(parent: OrthogonalArray) -> Self {
        let blocks = (0..parent.rows()).map(|i| vec![i]).collect();
        OrthogonalPartition {
            parent,
            blocks,
            block_strength: 0,
        }
    }

    pub fn parent(&self) -> &OrthogonalArray {
        &self.parent
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_strength(&self) -> usize {
        self.block_strength
    }

    pub fn block(&self, i: usize) -> SymbolArray {
        self.parent.select_rows(&self.blocks[i])
    }

    /// The same partition with the parent's rows reordered block by block,
    /// so block `i` occupies rows `i·s .. (i+1)·s`.
    pub fn contiguous(&self) -> Result<Self> {
        let order: Vec<usize> = self.blocks.concat();
        let parent = OrthogonalArray::new(self.parent.select_rows(&order), self.parent.claimed_strength())?;
        let s = self.block_size();
        let blocks = (0..self.len()).map(|i| (i * s..(i + 1) * s).collect()).collect();
        OrthogonalPartition::new(parent, blocks, self.block_strength)
    }

    /// The same blocks on a subset of the parent's columns. Claimed
    /// strengths are capped at the number of kept columns.
    pub fn restrict_columns(&self, cols: &[usize]) -> Result<Self> {
        let t = self.parent.claimed_strength().min(cols.len());
        let parent = OrthogonalArray::new(self.parent.select_cols(cols)?, t)?;
        OrthogonalPartition::new(parent, self.blocks.clone(), self.block_strength.min(cols.len()))
    }

    /// Every block has the declared block strength.
    pub fn verify(&self) -> bool {
        (0..self.len())
            .into_par_iter()
            .all(|i| verify_strength(&self.block(i), self.block_strength))
    }
}

/// Result of the sufficient conditions for a k-uniform mixture built from a
/// partition: the parent has strength `k` and every block has minimal
/// distance at least `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub k: usize,
    pub parent_strength_ok: bool,
    /// Blocks with two rows at distance `≤ k`.
    pub blocks_failing_distance: Vec<usize>,
    /// Two identical rows in the parent, if any.
    pub duplicate_rows: Option<(usize, usize)>,
    pub blocks: usize,
    pub block_size: usize,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.parent_strength_ok && self.blocks_failing_distance.is_empty() && self.duplicate_rows.is_none()
    }

    /// `1/m`, the purity of the resulting mixture.
    pub fn purity(&self) -> (u64, u64) {
        (1, self.blocks as u64)
    }
}

pub fn verify_mixed_state_partition(p: &OrthogonalPartition, k: usize) -> PartitionReport {
    let parent_strength_ok = verify_strength(p.parent(), k);
    let blocks_failing_distance = (0..p.len())
        .into_par_iter()
        .filter(|&i| !min_distance_at_least(&p.block(i), k + 1))
        .collect();
    PartitionReport {
        k,
        parent_strength_ok,
        blocks_failing_distance,
        duplicate_rows: p.parent().first_duplicate(),
        blocks: p.len(),
        block_size: p.block_size(),
    }
}
