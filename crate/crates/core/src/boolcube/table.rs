use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use super::{precedes, Dimension, VecIndex};
use crate::error::{MbfError, Result};

/// Bit `63 - o` of word `p / 64` holds position `p` (with `o = p % 64`), so
/// comparing the word sequences as integers orders tables lexicographically
/// with position 0 most significant.
#[inline]
pub(crate) fn bit_of(pos: VecIndex) -> u64 {
    1u64 << (63 - (pos & 63))
}

/// Mask of the in-word slots that hold real positions.
#[inline]
pub(crate) fn valid_mask(dim: Dimension) -> u64 {
    if dim.n() >= 6 {
        !0
    } else {
        !0u64 << (64 - (1u32 << dim.n()))
    }
}

/// `SUPERSET_MASKS[s]` has the slot of every in-word offset `o ⊇ s` set.
pub(crate) const SUPERSET_MASKS: [u64; 64] = {
    let mut masks = [0u64; 64];
    let mut s = 0;
    while s < 64 {
        let mut o = 0;
        while o < 64 {
            if o & s == s {
                masks[s] |= 1u64 << (63 - o);
            }
            o += 1;
        }
        s += 1;
    }
    masks
};

pub(crate) fn word_count(dim: Dimension) -> usize {
    if dim.n() <= 6 {
        1
    } else {
        1usize << (dim.n() - 6)
    }
}

/// ORs the row `r_i` of the precedence matrix into a packed table.
pub(crate) fn or_row_words(words: &mut [u64], dim: Dimension, i: VecIndex) {
    let low = SUPERSET_MASKS[(i & 63) as usize];
    if dim.n() <= 6 {
        words[0] |= low & valid_mask(dim);
        return;
    }
    let high = (i >> 6) as usize;
    let mut w = high;
    while w < words.len() {
        words[w] |= low;
        w = (w + 1) | high;
    }
}

/// Largest position `p` with `after < p < before` whose bit is zero.
pub(crate) fn prev_zero(words: &[u64], before: VecIndex, after: VecIndex) -> Option<VecIndex> {
    let mut end = before;
    while end > after + 1 {
        let last = end - 1;
        let w = (last >> 6) as usize;
        let max_off = last & 63;
        let zeros = !words[w] & (!0u64 << (63 - max_off));
        if zeros != 0 {
            let p = ((w as u64) << 6) + (63 - zeros.trailing_zeros() as u64);
            return (p > after).then_some(p);
        }
        end = (w as u64) << 6;
    }
    None
}

/// Truth table of a Boolean function of `n` variables; position `j` holds `f(α_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    dim: Dimension,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-0 function.
    pub fn zeros(dim: Dimension) -> Result<Self> {
        dim.check_table_cap()?;
        Ok(Self {
            dim,
            words: vec![0; word_count(dim)],
        })
    }

    /// The constant-1 function.
    pub fn ones(dim: Dimension) -> Result<Self> {
        let mut t = Self::zeros(dim)?;
        let mask = valid_mask(dim);
        t.words.iter_mut().for_each(|w| *w = mask);
        Ok(t)
    }

    pub fn from_fn(dim: Dimension, mut f: impl FnMut(VecIndex) -> bool) -> Result<Self> {
        let mut t = Self::zeros(dim)?;
        for k in 0..dim.size() {
            if f(k) {
                t.set(k, true);
            }
        }
        Ok(t)
    }

    /// Builds a table from one bool per position, position 0 first.
    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let dim = Dimension::from_table_len(bits.len() as u64)?;
        Self::from_fn(dim, |k| bits[k as usize])
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    /// Number of positions, `2^n`.
    pub fn len(&self) -> u64 {
        self.dim.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, k: VecIndex) -> bool {
        assert!(
            k < self.len(),
            "position {k} out of range for n = {}",
            self.dim.n()
        );
        self.words[(k >> 6) as usize] & bit_of(k) != 0
    }

    #[inline]
    pub fn set(&mut self, k: VecIndex, value: bool) {
        assert!(
            k < self.len(),
            "position {k} out of range for n = {}",
            self.dim.n()
        );
        let w = &mut self.words[(k >> 6) as usize];
        if value {
            *w |= bit_of(k);
        } else {
            *w &= !bit_of(k);
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Positions holding a 1, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = VecIndex> + '_ {
        (0..self.len()).filter(move |&k| self.get(k))
    }

    /// Bitwise OR with the row `r_i` of the precedence matrix (the conjunction `c_i`).
    pub fn or_row(&mut self, i: VecIndex) {
        assert!(i < self.len());
        or_row_words(&mut self.words, self.dim, i);
    }

    pub fn is_constant_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_constant_one(&self) -> bool {
        let mask = valid_mask(self.dim);
        self.words.iter().all(|&w| w == mask)
    }

    /// Position of the leftmost 1, if any.
    pub fn leftmost_one(&self) -> Option<VecIndex> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|w| ((w as u64) << 6) + self.words[w].leading_zeros() as u64)
    }

    /// The `0`/`1` string with position 0 leftmost.
    pub fn to_bit_string(&self) -> String {
        (0..self.len())
            .map(|k| if self.get(k) { '1' } else { '0' })
            .collect()
    }

    /// `x` followed by the bit string read in 4-bit groups; needs `n >= 2`.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.dim.n() < 2 {
            return None;
        }
        let mut s = String::with_capacity(1 + (self.len() / 4) as usize);
        s.push('x');
        for group in 0..self.len() / 4 {
            let nibble = (0..4).fold(0u32, |acc, b| (acc << 1) | self.get(group * 4 + b) as u32);
            s.push(char::from_digit(nibble, 16).unwrap());
        }
        Some(s)
    }

    pub fn parse_bits(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(MbfError::Parse(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&bits)
    }

    pub fn parse_hex(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('x').unwrap_or(s);
        let mut bits = Vec::with_capacity(digits.len() * 4);
        for c in digits.chars() {
            let v = c.to_digit(16).ok_or_else(|| {
                MbfError::Parse(format!("unexpected character {c:?} in hex string"))
            })?;
            bits.extend((0..4).rev().map(|b| v >> b & 1 == 1));
        }
        Self::from_bools(&bits)
    }
}

impl FromStr for TruthTable {
    type Err = MbfError;

    /// Accepts either a bit string or an `x`-prefixed hex string.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('x') {
            Self::parse_hex(s)
        } else {
            Self::parse_bits(s)
        }
    }
}

impl PartialOrd for TruthTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TruthTable {
    /// Lexicographic order of the tables read as `2^n`-bit integers, position 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.dim.n(), self)
    }
}

/// A truth table known to be monotone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonotoneTable(TruthTable);

impl MonotoneTable {
    pub fn new(table: TruthTable) -> Result<Self> {
        match monotonicity_witness(&table) {
            None => Ok(Self(table)),
            Some((lower, upper)) => Err(MbfError::NotMonotone { lower, upper }),
        }
    }

    pub(crate) fn new_unchecked(table: TruthTable) -> Self {
        debug_assert!(monotonicity_witness(&table).is_none());
        Self(table)
    }

    pub(crate) fn table_mut_unchecked(&mut self) -> &mut TruthTable {
        &mut self.0
    }

    pub fn into_inner(self) -> TruthTable {
        self.0
    }
}

impl Deref for MonotoneTable {
    type Target = TruthTable;

    fn deref(&self) -> &TruthTable {
        &self.0
    }
}

impl TryFrom<TruthTable> for MonotoneTable {
    type Error = MbfError;

    fn try_from(t: TruthTable) -> Result<Self> {
        Self::new(t)
    }
}

impl FromStr for MonotoneTable {
    type Err = MbfError;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl fmt::Display for MonotoneTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A pair `(lower, upper)` differing in one bit with `f(lower) = 1`, `f(upper) = 0`.
///
/// Checking neighbours is enough: any comparable pair `α ⪯ β` is joined by a
/// chain that sets one bit at a time, and a violation on the pair forces a
/// violation on some link of that chain.
pub(crate) fn monotonicity_witness(t: &TruthTable) -> Option<(VecIndex, VecIndex)> {
    let n = t.dimension().n();
    for b in 0..n {
        let bit = 1u64 << b;
        for k in (0..t.len()).filter(|k| k & bit == 0) {
            if t.get(k) && !t.get(k | bit) {
                debug_assert!(precedes(k, k | bit));
                return Some((k, k | bit));
            }
        }
    }
    None
}
