use crate::error::{Error, Result};
use crate::oa::{hamming, verify_strength, OrthogonalArray, OrthogonalPartition};
use crate::search::{BudgetMeter, SearchBudget, SearchOutcome, SearchResult};

/// Parameters of a partition search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionSearch {
    pub blocks: usize,
    /// Rows sharing a block must differ in at least `k + 1` positions.
    pub k: usize,
    /// Optional strength every block must have.
    pub block_strength: Option<usize>,
}

type Bits = Vec<u64>;

fn set(b: &mut Bits, i: usize, v: bool) {
    if v {
        b[i / 64] |= 1 << (i % 64);
    } else {
        b[i / 64] &= !(1 << (i % 64));
    }
}

fn ones(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + t
            })
        })
    })
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

struct Search<'a> {
    oa: &'a OrthogonalArray,
    size: usize,
    block_strength: Option<usize>,
    compat: Vec<Bits>,
    free: Bits,
    blocks: Vec<Vec<usize>>,
    meter: BudgetMeter,
}

impl Search<'_> {
    fn block_ok(&self, block: &[usize]) -> bool {
        self.block_strength
            .is_none_or(|t| verify_strength(&self.oa.select_rows(block), t))
    }

    fn next_block(&mut self) -> bool {
        let Some(lead) = ones(&self.free).next() else {
            return true;
        };
        set(&mut self.free, lead, false);
        let cand = and(&self.compat[lead], &self.free);
        let mut block = vec![lead];
        let done = self.extend(&mut block, cand);
        if !done {
            set(&mut self.free, lead, true);
        }
        done
    }

    // Grows `block` from `cand`, taking candidates in increasing order.
    fn extend(&mut self, block: &mut Vec<usize>, cand: Bits) -> bool {
        if block.len() == self.size {
            if !self.block_ok(block) {
                return false;
            }
            self.blocks.push(block.clone());
            if self.next_block() {
                return true;
            }
            self.blocks.pop();
            return false;
        }
        let need = self.size - block.len();
        if count(&cand) < need {
            return false;
        }
        let order: Vec<usize> = ones(&cand).collect();
        for (pos, &row) in order.iter().enumerate() {
            if order.len() - pos < need || !self.meter.tick() {
                return false;
            }
            let mut rest = and(&cand, &self.compat[row]);
            for &earlier in &order[..=pos] {
                set(&mut rest, earlier, false);
            }
            set(&mut self.free, row, false);
            block.push(row);
            if self.extend(block, rest) {
                return true;
            }
            block.pop();
            set(&mut self.free, row, true);
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}

/// Exact-cover search for a partition of `oa` into `blocks` equal blocks of
/// pairwise distance at least `k + 1`.
///
/// Blocks are filled in order of their smallest free row, so each partition
/// is visited once. Exhausting the space proves that none exists.
pub fn partition_search(
    oa: &OrthogonalArray,
    params: PartitionSearch,
    budget: SearchBudget,
) -> Result<SearchResult<OrthogonalPartition>> {
    let r = oa.rows();
    let m = params.blocks;
    if m == 0 || !r.is_multiple_of(m) {
        return Err(Error::invalid(format!("{m} blocks do not divide {r} rows")));
    }
    let words = r.div_ceil(64);
    let compat: Vec<Bits> = (0..r)
        .map(|i| {
            let mut b = vec![0u64; words];
            for j in 0..r {
                if j != i && hamming(oa.row(i), oa.row(j)) > params.k {
                    set(&mut b, j, true);
                }
            }
            b
        })
        .collect();
    let mut free = vec![0u64; words];
    (0..r).for_each(|i| set(&mut free, i, true));
    let mut s = Search {
        oa,
        size: r / m,
        block_strength: params.block_strength,
        compat,
        free,
        blocks: Vec::with_capacity(m),
        meter: budget.start(),
    };
    let found = s.next_block();
    let nodes = s.meter.nodes();
    let outcome = if found {
        let strength = params.block_strength.unwrap_or(0);
        SearchOutcome::Found(OrthogonalPartition::new(oa.clone(), s.blocks, strength)?)
    } else if s.meter.exhausted() {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::ProvenNonexistent
    };
    Ok(SearchResult { outcome, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oa::{verify_mixed_state_partition, SymbolArray};

    fn even_weight() -> OrthogonalArray {
        let a =
            SymbolArray::from_digit_rows(2, &["0000", "0011", "0101", "0110", "1001", "1010", "1100", "1111"]).unwrap();
        OrthogonalArray::new(a, 3).unwrap()
    }

    #[test]
    fn finds_distance_two_halves() {
        let res = partition_search(
            &even_weight(),
            PartitionSearch {
                blocks: 2,
                k: 1,
                block_strength: None,
            },
            SearchBudget::UNLIMITED,
        )
        .unwrap();
        let p = res.outcome.found().unwrap();
        assert!(verify_mixed_state_partition(&p, 1).passed());
    }

    #[test]
    fn singletons_always_work() {
        let res = partition_search(
            &even_weight(),
            PartitionSearch {
                blocks: 8,
                k: 3,
                block_strength: None,
            },
            SearchBudget::UNLIMITED,
        )
        .unwrap();
        assert_eq!(res.outcome.found().unwrap().len(), 8);
    }

    #[test]
    fn impossible_distance_proven() {
        // Two blocks of four rows with pairwise distance 4 would need four
        // mutually complementary words.
        let res = partition_search(
            &even_weight(),
            PartitionSearch {
                blocks: 2,
                k: 3,
                block_strength: None,
            },
            SearchBudget::UNLIMITED,
        )
        .unwrap();
        assert!(matches!(res.outcome, SearchOutcome::ProvenNonexistent));
    }

    #[test]
    fn block_strength_filter() {
        let res = partition_search(
            &even_weight(),
            PartitionSearch {
                blocks: 2,
                k: 1,
                block_strength: Some(1),
            },
            SearchBudget::UNLIMITED,
        )
        .unwrap();
        let p = res.outcome.found().unwrap();
        assert!(p.verify());
    }

    #[test]
    fn rejects_indivisible() {
        let p = PartitionSearch {
            blocks: 3,
            k: 1,
            block_strength: None,
        };
        assert!(partition_search(&even_weight(), p, SearchBudget::UNLIMITED).is_err());
    }
}
