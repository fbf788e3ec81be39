//! Lexicographic generation of all monotone Boolean functions.
//!
//! Every monotone `f ≠ 0̃` is the disjunction of the rows of `P_n` named by
//! its minimal true vectors. The generator walks the rows from the last one
//! to the first; from each partial disjunction `G` whose last added row is
//! `r_i` it branches on every zero position `j > i` of `G`, right to left,
//! into `G ∨ r_j`. Branching right to left makes the output strictly
//! increasing when tables are read as `2^n`-bit integers with position 0
//! most significant, and each function is reached exactly once (through its
//! minimal true vectors in increasing order).
//!
//! The recursion runs on an explicit stack so that its depth is observable;
//! the depth equals the size of the antichain being built, at most
//! `C(n, ⌊n/2⌋)`.

use std::ops::{ControlFlow, Range};

use rayon::prelude::*;

use crate::boolcube::{
    or_row_words, prev_zero, word_count, Dimension, MonotoneTable, TruthTable, VecIndex,
};
use crate::error::{MbfError, Result};

/// Largest `n` accepted by [`dedekind_count`].
pub const COUNT_MAX_N: u32 = 6;

/// Largest poset accepted by [`gen_poset`].
pub const POSET_MAX_SIZE: usize = 1 << 14;

/// Known values of `|M_n|` for `n = 0..=8`, the last two out of reach here.
pub const DEDEKIND_NUMBERS: [&str; 9] = [
    "2",
    "3",
    "6",
    "20",
    "168",
    "7581",
    "7828354",
    "2414682040998",
    "56130437228687557907788",
];

#[derive(Clone, Debug, Default)]
pub struct GenConfig {
    /// Emit only the functions strictly after this one.
    pub resume_from: Option<MonotoneTable>,
    /// Last outer-loop row to visit; only functions whose leftmost one is at
    /// or after this position are produced. Defaults to row 0.
    pub final_row: Option<VecIndex>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenStats {
    pub count: u64,
    pub max_recursion_depth: usize,
}

impl GenStats {
    fn merge(self, other: GenStats) -> GenStats {
        GenStats {
            count: self.count + other.count,
            max_recursion_depth: self.max_recursion_depth.max(other.max_recursion_depth),
        }
    }
}

/// Supplies rows of a precedence matrix in the packed table layout.
trait Rows {
    fn positions(&self) -> u64;
    fn stride(&self) -> usize;
    fn or_row(&self, g: &mut [u64], i: u64);
}

struct CubeRows(Dimension);

impl Rows for CubeRows {
    fn positions(&self) -> u64 {
        self.0.size()
    }

    fn stride(&self) -> usize {
        word_count(self.0)
    }

    #[inline]
    fn or_row(&self, g: &mut [u64], i: u64) {
        or_row_words(g, self.0, i);
    }
}

/// Rows of an arbitrary relation, materialized once.
struct MatrixRows {
    positions: u64,
    stride: usize,
    data: Vec<u64>,
}

impl Rows for MatrixRows {
    fn positions(&self) -> u64 {
        self.positions
    }

    fn stride(&self) -> usize {
        self.stride
    }

    fn or_row(&self, g: &mut [u64], i: u64) {
        let row = &self.data[i as usize * self.stride..][..self.stride];
        g.iter_mut().zip(row).for_each(|(a, b)| *a |= b);
    }
}

struct Frame {
    row: u64,
    next_before: u64,
}

struct Engine<'r, R> {
    rows: &'r R,
    tables: Vec<u64>,
    frames: Vec<Frame>,
    stats: GenStats,
}

impl<'r, R: Rows> Engine<'r, R> {
    fn new(rows: &'r R) -> Self {
        Self {
            rows,
            tables: Vec::new(),
            frames: Vec::new(),
            stats: GenStats::default(),
        }
    }

    fn push(&mut self, row: u64) {
        let stride = self.rows.stride();
        let parent = self.tables.len().checked_sub(stride);
        self.tables.resize(self.tables.len() + stride, 0);
        if let Some(start) = parent {
            self.tables
                .copy_within(start..start + stride, start + stride);
        }
        let top = self.tables.len() - stride;
        self.rows.or_row(&mut self.tables[top..], row);
        self.frames.push(Frame {
            row,
            next_before: self.rows.positions(),
        });
        self.stats.max_recursion_depth = self.stats.max_recursion_depth.max(self.frames.len());
    }

    fn pop(&mut self) {
        self.frames.pop();
        self.tables.truncate(self.tables.len() - self.rows.stride());
    }

    fn top(&self) -> &[u64] {
        &self.tables[self.tables.len() - self.rows.stride()..]
    }

    fn emit<E>(&mut self, sink: &mut E) -> Result<ControlFlow<()>>
    where
        E: FnMut(&[u64]) -> Result<ControlFlow<()>>,
    {
        self.stats.count += 1;
        let stride = self.rows.stride();
        sink(&self.tables[self.tables.len() - stride..])
    }

    /// Depth-first continuation of the current stack until it empties.
    fn drain<E>(&mut self, sink: &mut E) -> Result<ControlFlow<()>>
    where
        E: FnMut(&[u64]) -> Result<ControlFlow<()>>,
    {
        while let Some(frame) = self.frames.last() {
            match prev_zero(self.top(), frame.next_before, frame.row) {
                None => self.pop(),
                Some(j) => {
                    self.frames.last_mut().unwrap().next_before = j;
                    self.push(j);
                    if self.emit(sink)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Generates the subtrees rooted at the outer-loop rows `hi, hi-1, …, lo`.
    fn run_rows<E>(&mut self, hi: u64, lo: u64, sink: &mut E) -> Result<ControlFlow<()>>
    where
        E: FnMut(&[u64]) -> Result<ControlFlow<()>>,
    {
        if hi < lo {
            return Ok(ControlFlow::Continue(()));
        }
        for k in (lo..=hi).rev() {
            debug_assert!(self.frames.is_empty());
            self.push(k);
            if self.emit(sink)?.is_break() || self.drain(sink)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Rebuilds the stack as it stood right after `target` was emitted.
    /// Returns the outer-loop row of `target`.
    fn restore(&mut self, target: &[u64]) -> u64 {
        let first = first_one(target).expect("0̃ has no generation path");
        self.push(first);
        while let Some(j) = first_difference(target, self.top()) {
            self.frames.last_mut().unwrap().next_before = j;
            self.push(j);
        }
        first
    }
}

fn first_one(words: &[u64]) -> Option<u64> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|w| ((w as u64) << 6) + words[w].leading_zeros() as u64)
}

/// First position set in `target` but not in `current`.
fn first_difference(target: &[u64], current: &[u64]) -> Option<u64> {
    debug_assert!(target.iter().zip(current).all(|(t, c)| c & !t == 0));
    target
        .iter()
        .zip(current)
        .position(|(t, c)| t & !c != 0)
        .map(|w| ((w as u64) << 6) + (target[w] & !current[w]).leading_zeros() as u64)
}

/// Streams every monotone function of `dim` variables to `sink` in
/// lexicographic order, starting with `0̃` (or after `cfg.resume_from`).
pub fn gen_all<S>(dim: Dimension, cfg: &GenConfig, mut sink: S) -> Result<GenStats>
where
    S: FnMut(&MonotoneTable) -> Result<ControlFlow<()>>,
{
    let mut scratch = MonotoneTable::new_unchecked(TruthTable::zeros(dim)?);
    let final_row = cfg.final_row.unwrap_or(0);
    dim.check_index(final_row)?;
    let rows = CubeRows(dim);
    let mut engine = Engine::new(&rows);
    let mut emit = |words: &[u64]| {
        scratch
            .table_mut_unchecked()
            .words_mut()
            .copy_from_slice(words);
        sink(&scratch)
    };

    let start = match &cfg.resume_from {
        None => {
            engine.stats.count += 1;
            if emit(&vec![0; rows.stride()])?.is_break() {
                return Ok(engine.stats);
            }
            Some(dim.last_index())
        }
        Some(h) => {
            if h.dimension() != dim {
                return Err(MbfError::DimensionMismatch {
                    expected: dim.n(),
                    found: h.dimension().n(),
                });
            }
            if h.is_constant_zero() {
                Some(dim.last_index())
            } else {
                let first = engine.restore(h.words());
                if engine.drain(&mut emit)?.is_break() {
                    return Ok(engine.stats);
                }
                first.checked_sub(1)
            }
        }
    };
    if let Some(hi) = start {
        let _ = engine.run_rows(hi, final_row, &mut emit)?;
    }
    Ok(engine.stats)
}

/// [`gen_all`] from the start with default settings.
pub fn gen_simple<S>(dim: Dimension, sink: S) -> Result<GenStats>
where
    S: FnMut(&MonotoneTable) -> Result<ControlFlow<()>>,
{
    gen_all(dim, &GenConfig::default(), sink)
}

/// Streams the functions whose leftmost one lies in `rows`, in
/// lexicographic order. `0̃` is never produced.
pub fn gen_rows<S>(dim: Dimension, rows: Range<VecIndex>, mut sink: S) -> Result<GenStats>
where
    S: FnMut(&MonotoneTable) -> Result<ControlFlow<()>>,
{
    let mut scratch = MonotoneTable::new_unchecked(TruthTable::zeros(dim)?);
    let cube = CubeRows(dim);
    let mut engine = Engine::new(&cube);
    if let Some((hi, lo)) = clamp_rows(dim, rows) {
        let _ = engine.run_rows(hi, lo, &mut |words: &[u64]| {
            scratch
                .table_mut_unchecked()
                .words_mut()
                .copy_from_slice(words);
            sink(&scratch)
        })?;
    }
    Ok(engine.stats)
}

fn clamp_rows(dim: Dimension, rows: Range<VecIndex>) -> Option<(u64, u64)> {
    let end = rows.end.min(dim.size());
    (rows.start < end).then(|| (end - 1, rows.start))
}

fn count_rows(dim: Dimension, rows: Range<VecIndex>) -> Result<GenStats> {
    dim.check_table_cap()?;
    let cube = CubeRows(dim);
    let mut engine = Engine::new(&cube);
    if let Some((hi, lo)) = clamp_rows(dim, rows) {
        let _ = engine.run_rows(hi, lo, &mut |_: &[u64]| Ok(ControlFlow::Continue(())))?;
    }
    Ok(engine.stats)
}

/// Number of monotone functions whose leftmost one lies in `rows`.
pub fn count_partition(dim: Dimension, rows: Range<VecIndex>) -> Result<u64> {
    Ok(count_rows(dim, rows)?.count)
}

/// `|M_n|`, counted by generation with the outer rows spread over `threads`
/// workers (`0` picks the rayon default).
pub fn dedekind_count(dim: Dimension, threads: usize) -> Result<u64> {
    Ok(dedekind_stats(dim, threads)?.count)
}

/// Like [`dedekind_count`] but also reports the deepest recursion seen.
pub fn dedekind_stats(dim: Dimension, threads: usize) -> Result<GenStats> {
    if dim.n() > COUNT_MAX_N {
        return Err(MbfError::UnsupportedScale(format!(
            "counting M_{} by generation is infeasible; the known value is {}",
            dim.n(),
            DEDEKIND_NUMBERS
                .get(dim.n() as usize)
                .copied()
                .unwrap_or("not known")
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| MbfError::UnsupportedScale(e.to_string()))?;
    let per_row: Vec<GenStats> = pool.install(|| {
        (0..dim.size())
            .into_par_iter()
            .map(|i| count_rows(dim, i..i + 1))
            .collect::<Result<_>>()
    })?;
    let zero = GenStats {
        count: 1,
        max_recursion_depth: 0,
    };
    Ok(per_row.into_iter().fold(zero, GenStats::merge))
}

/// Generates every up-set (equivalently every antichain) of a finite poset
/// on `0..size` given by `relates(i, j)`, which reads "`i` is below or
/// equal to `j`". Index order must extend the partial order. Each up-set is
/// passed to `sink` as a membership vector, in lexicographic order, starting
/// with the empty one.
pub fn gen_poset<F, S>(size: usize, relates: F, mut sink: S) -> Result<GenStats>
where
    F: Fn(usize, usize) -> bool,
    S: FnMut(&[bool]) -> ControlFlow<()>,
{
    if size == 0 || size > POSET_MAX_SIZE {
        return Err(MbfError::UnsupportedScale(format!(
            "poset size {size} outside 1..={POSET_MAX_SIZE}"
        )));
    }
    let stride = size.div_ceil(64);
    let mut data = vec![0u64; size * stride];
    for i in 0..size {
        if !relates(i, i) {
            return Err(MbfError::InvalidRelation(format!(
                "{i} is not related to itself"
            )));
        }
        for j in 0..size {
            if relates(i, j) {
                if j < i {
                    return Err(MbfError::InvalidRelation(format!(
                        "{i} lies below {j} but has a larger index"
                    )));
                }
                data[i * stride + j / 64] |= 1 << (63 - j % 64);
            }
        }
    }
    // transitivity: everything above j is above i whenever i ≤ j
    for i in 0..size {
        for j in i + 1..size {
            if data[i * stride + j / 64] & (1 << (63 - j % 64)) != 0 {
                let (ri, rj) = (&data[i * stride..][..stride], &data[j * stride..][..stride]);
                if ri.iter().zip(rj).any(|(a, b)| b & !a != 0) {
                    return Err(MbfError::InvalidRelation(format!(
                        "not transitive through {i} ≤ {j}"
                    )));
                }
            }
        }
    }
    let rows = MatrixRows {
        positions: size as u64,
        stride,
        data,
    };
    let mut engine = Engine::new(&rows);
    let mut members = vec![false; size];
    let mut emit = |words: &[u64]| {
        for (p, m) in members.iter_mut().enumerate() {
            *m = words[p / 64] & (1 << (63 - p % 64)) != 0;
        }
        Ok(sink(&members))
    };
    engine.stats.count += 1;
    if emit(&vec![0; stride])?.is_continue() {
        let _ = engine.run_rows(size as u64 - 1, 0, &mut emit)?;
    }
    Ok(engine.stats)
}
