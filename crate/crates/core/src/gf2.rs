//! Dense bit vectors and column reduction over the two-element field.

use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.flip(*i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Index of the highest set bit.
    pub fn low(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|i| self.get(*i)).collect()
    }
}

/// A matrix stored as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColMatrix {
    pub rows: usize,
    pub cols: Vec<BitVec>,
}

impl ColMatrix {
    pub fn new(rows: usize, cols: Vec<BitVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.len() == rows));
        ColMatrix { rows, cols }
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows);
        for j in x.ones() {
            out.xor_assign(&self.cols[j]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BitVec::is_zero)
    }

    /// `self · other` (columns of the product are images of `other`'s columns).
    pub fn compose(&self, other: &ColMatrix) -> ColMatrix {
        ColMatrix::new(
            self.rows,
            other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        )
    }
}

/// Result of reducing a matrix: its rank and a basis of its kernel.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rank: usize,
    pub kernel: Vec<BitVec>,
}

/// Standard column reduction, tracking column operations to read off the kernel.
pub fn reduce(m: &ColMatrix) -> Reduction {
    let ncols = m.cols.len();
    let mut cols = m.cols.clone();
    let mut track: Vec<BitVec> = (0..ncols).map(|j| BitVec::from_ones(ncols, &[j])).collect();
    let mut pivot: HashMap<usize, usize> = HashMap::new();
    let mut kernel = Vec::new();
    for j in 0..ncols {
        while let Some(low) = cols[j].low() {
            match pivot.get(&low) {
                Some(&k) => {
                    let (left, right) = cols.split_at_mut(j);
                    right[0].xor_assign(&left[k]);
                    let (tl, tr) = track.split_at_mut(j);
                    tr[0].xor_assign(&tl[k]);
                }
                None => {
                    pivot.insert(low, j);
                    break;
                }
            }
        }
        if cols[j].is_zero() {
            kernel.push(track[j].clone());
        }
    }
    Reduction {
        rank: pivot.len(),
        kernel,
    }
}

/// Rank only; skips the bookkeeping needed for the kernel.
pub fn rank(m: &ColMatrix) -> usize {
    let mut cols = m.cols.clone();
    let mut pivot: HashMap<usize, usize> = HashMap::new();
    for j in 0..cols.len() {
        while let Some(low) = cols[j].low() {
            match pivot.get(&low) {
                Some(&k) => {
                    let (left, right) = cols.split_at_mut(j);
                    right[0].xor_assign(&left[k]);
                }
                None => {
                    pivot.insert(low, j);
                    break;
                }
            }
        }
    }
    pivot.len()
}
