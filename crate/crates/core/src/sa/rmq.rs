//! Range-minimum structures over `u32` values.
//!
//! `Sparse` is the textbook `O(n log n)`-word table. `Blocked` is linear:
//! 64-wide blocks answered in-block by a stack bitmask, and a sparse table
//! over block minima.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmqKind {
    #[default]
    Sparse,
    Blocked,
}

#[derive(Debug, Clone)]
pub enum Rmq {
    Sparse(SparseTable),
    Blocked(BlockRmq),
}

impl Rmq {
    pub fn new(values: &[u32], kind: RmqKind) -> Rmq {
        match kind {
            RmqKind::Sparse => Rmq::Sparse(SparseTable::new(values)),
            RmqKind::Blocked => Rmq::Blocked(BlockRmq::new(values)),
        }
    }

    /// Minimum of `values[lo..=hi]`.
    #[inline]
    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        match self {
            Rmq::Sparse(t) => t.min(lo, hi),
            Rmq::Blocked(t) => t.min(lo, hi),
        }
    }

    /// Machine words held by the structure.
    pub fn words(&self) -> usize {
        match self {
            Rmq::Sparse(t) => t.levels.iter().map(Vec::len).sum(),
            Rmq::Blocked(t) => {
                t.values.len()
                    + 2 * t.masks.len()
                    + t.blocks.levels.iter().map(Vec::len).sum::<usize>()
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: &[u32]) -> SparseTable {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    #[inline]
    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi);
        let len = hi - lo + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let row = &self.levels[k];
        row[lo].min(row[hi + 1 - (1 << k)])
    }
}

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct BlockRmq {
    values: Vec<u32>,
    /// bit j of masks[i] set => position (block start + j) is on the
    /// min-stack after scanning up to i within its block
    masks: Vec<u64>,
    blocks: SparseTable,
}

impl BlockRmq {
    pub fn new(values: &[u32]) -> BlockRmq {
        let mut masks = vec![0u64; values.len()];
        let mut block_min = Vec::with_capacity(values.len() / BLOCK + 1);
        for (b, chunk) in values.chunks(BLOCK).enumerate() {
            let base = b * BLOCK;
            let mut stack: u64 = 0;
            for (j, &v) in chunk.iter().enumerate() {
                while stack != 0 {
                    let top = 63 - stack.leading_zeros() as usize;
                    if chunk[top] > v {
                        stack &= !(1u64 << top);
                    } else {
                        break;
                    }
                }
                stack |= 1u64 << j;
                masks[base + j] = stack;
            }
            block_min.push(*chunk.iter().min().unwrap());
        }
        BlockRmq {
            values: values.to_vec(),
            blocks: SparseTable::new(&block_min),
            masks,
        }
    }

    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> u32 {
        let base = lo - lo % BLOCK;
        let m = self.masks[hi] & (!0u64 << (lo - base));
        self.values[base + m.trailing_zeros() as usize]
    }

    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi);
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return self.in_block(lo, hi);
        }
        let mut best = self
            .in_block(lo, bl * BLOCK + BLOCK - 1)
            .min(self.in_block(bh * BLOCK, hi));
        if bl + 1 < bh {
            best = best.min(self.blocks.min(bl + 1, bh - 1));
        }
        best
    }
}
