use std::fmt;

use super::{Dimension, TruthTable, VecIndex};
use crate::error::{MbfError, Result};

/// Largest `n` for which [`build_matrix`] materializes `P_n`.
pub const MATRIX_MAX_N: u32 = 12;

/// Dense square 0/1 matrix with packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    side: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(side: usize) -> Self {
        let stride = side.div_ceil(64);
        Self {
            side,
            stride,
            data: vec![0; side * stride],
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.side && c < self.side);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.side && c < self.side);
        let w = &mut self.data[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.side);
        for r in 0..self.side {
            for c in 0..self.side {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Copies `block` into the square whose top-left corner is `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        for r in 0..block.side {
            for c in 0..block.side {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn row(&self, r: usize) -> Vec<bool> {
        (0..self.side).map(|c| self.get(r, c)).collect()
    }
}

impl fmt::Display for BitMatrix {
    /// One line per row, cells separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.side {
            for c in 0..self.side {
                if c > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{}\n{}", self.side, self.side, self)
    }
}

/// `P_n` assembled from `P_0 = [1]` and `P_m = [[P_{m-1}, P_{m-1}], [O, P_{m-1}]]`.
pub fn build_matrix(dim: Dimension) -> Result<BitMatrix> {
    if dim.n() > MATRIX_MAX_N {
        return Err(MbfError::MatrixTooLarge {
            n: dim.n(),
            max: MATRIX_MAX_N,
        });
    }
    let mut p = BitMatrix::zeros(1);
    p.set(0, 0, true);
    for _ in 0..dim.n() {
        let half = p.side();
        let mut next = BitMatrix::zeros(2 * half);
        next.place(0, 0, &p);
        next.place(0, half, &p);
        next.place(half, half, &p);
        p = next;
    }
    Ok(p)
}

/// Row `r_i` of `P_n`: the truth table of the conjunction `c_i`.
pub fn row_of(i: VecIndex, dim: Dimension) -> Result<TruthTable> {
    dim.check_index(i)?;
    let mut t = TruthTable::zeros(dim)?;
    t.or_row(i);
    Ok(t)
}

/// Negated column `j` of `P_n`: the truth table of the clause `d_j`.
pub fn clause_table(j: VecIndex, dim: Dimension) -> Result<TruthTable> {
    dim.check_index(j)?;
    let mut t = TruthTable::ones(dim)?;
    // walk every subset k of j, i.e. every k with p_kj = 1
    let mut k = j;
    loop {
        t.set(k, false);
        if k == 0 {
            break;
        }
        k = (k - 1) & j;
    }
    Ok(t)
}
