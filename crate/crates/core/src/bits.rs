//! Fixed-width bit vectors backing [`crate::sets::DiagonalSet`].
//!
//! Width is fixed at construction; the padding bits of the last block are
//! kept zero so that equality, hashing and ordering can work block-wise.

use std::fmt;

const BLOCK_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    width: usize,
    blocks: Box<[u64]>,
}

impl Bits {
    pub fn new(width: usize) -> Self {
        let nblocks = (width / BLOCK_BITS) + usize::from(width % BLOCK_BITS != 0);
        Bits {
            width,
            blocks: vec![0u64; nblocks.max(1)].into_boxed_slice(),
        }
    }

    pub fn full(width: usize) -> Self {
        let mut b = Bits::new(width);
        for blk in b.blocks.iter_mut() {
            *blk = !0;
        }
        b.clear_padding();
        b
    }

    fn clear_padding(&mut self) {
        if self.width == 0 {
            self.blocks[0] = 0;
            return;
        }
        let used = self.width % BLOCK_BITS;
        if used != 0 {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= (1u64 << used) - 1;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        (self.blocks[i / BLOCK_BITS] >> (i % BLOCK_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.blocks[i / BLOCK_BITS] |= 1u64 << (i % BLOCK_BITS);
    }

    #[inline]
    pub fn unset(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.blocks[i / BLOCK_BITS] &= !(1u64 << (i % BLOCK_BITS));
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a &= !b;
        }
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Bits of `self` with index strictly greater than `i`.
    pub fn above(&self, i: usize) -> Bits {
        let mut out = self.clone();
        let blk = i / BLOCK_BITS;
        for b in out.blocks.iter_mut().take(blk) {
            *b = 0;
        }
        // mask away positions <= i inside the boundary block
        let pos = i % BLOCK_BITS;
        let keep = if pos == BLOCK_BITS - 1 { 0 } else { !0u64 << (pos + 1) };
        out.blocks[blk] &= keep;
        out
    }

    /// Do `self` and `other` agree on every bit with index strictly above `i`?
    pub fn eq_above(&self, other: &Bits, i: usize) -> bool {
        debug_assert_eq!(self.width, other.width);
        let blk = i / BLOCK_BITS;
        let pos = i % BLOCK_BITS;
        let keep = if pos == BLOCK_BITS - 1 { 0 } else { !0u64 << (pos + 1) };
        if (self.blocks[blk] ^ other.blocks[blk]) & keep != 0 {
            return false;
        }
        self.blocks[blk + 1..] == other.blocks[blk + 1..]
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            blocks: &self.blocks,
            block_idx: 0,
            current: self.blocks[0],
        }
    }

    /// Interpret the lowest 64 bits as a word (valid when width <= 64).
    pub fn low_word(&self) -> u64 {
        self.blocks[0]
    }

    pub fn from_word(width: usize, word: u64) -> Bits {
        debug_assert!(width <= BLOCK_BITS);
        let mut b = Bits::new(width);
        b.blocks[0] = word;
        b.clear_padding();
        b
    }
}

// Canonical order: compare as integers with bit i weighted 2^i.
impl Ord for Bits {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.blocks.iter().rev().zip(other.blocks.iter().rev()) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits[{}]{{", self.width)?;
        let mut first = true;
        for i in self.ones() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

pub struct Ones<'a> {
    blocks: &'a [u64],
    block_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.block_idx += 1;
            if self.block_idx >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.block_idx];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.block_idx * BLOCK_BITS + tz)
    }
}
