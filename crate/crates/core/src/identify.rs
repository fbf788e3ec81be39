//! Exact identification of an unknown monotone function by membership
//! queries alone.
//!
//! After locating the LFMT and LLMF vectors of `f`, the vector of `f` is
//! split into halves `g` and `h` (the subfunctions with `x_1 = 0` and
//! `x_1 = 1`, so `g ⪯ h`). The LFMT vector of `f` is that of `g` and the LLMF
//! vector of `f` is that of `h`; the missing LLMF of `g` and LFMT of `h` are
//! searched for and each half is identified the same way. Recursion stops at
//! segments whose extremal vectors already pin everything down: length 4,
//! the shape `0…01…1`, and the shape `0…0101…1`. Everything learned lives in
//! a [`KnowledgeStore`], which at the end holds exactly `minT(f)` and
//! `maxF(f)`.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::boolcube::{brute_max_f, brute_min_t, Dimension, MonotoneTable, VecIndex};
use crate::error::{MbfError, Result};
use crate::generator::{gen_rows, COUNT_MAX_N};
use crate::knowledge::KnowledgeStore;
use crate::oracle::{MembershipOracle, TableOracle};
use crate::search::{search_first_ext, search_last_ext, SearchWindow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentResult {
    pub min_t: Vec<VecIndex>,
    pub max_f: Vec<VecIndex>,
    /// Membership queries asked by this run.
    pub queries: u64,
    pub peak_tpi: usize,
    pub peak_tpc: usize,
    /// The two initial searches alone determined the function.
    pub initial_complete: bool,
}

impl IdentResult {
    /// `|minT(f)| + |maxF(f)|`.
    pub fn output_size(&self) -> u64 {
        (self.min_t.len() + self.max_f.len()) as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentifyOptions {
    /// Spend one query to recognize segments shaped like `(0,…,0,1)^k`.
    pub periodic_guard: bool,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        Self {
            periodic_guard: true,
        }
    }
}

/// Identifies the function behind `o`.
pub fn identify<O: MembershipOracle>(o: &mut O) -> Result<IdentResult> {
    identify_with(o, IdentifyOptions::default())
}

pub fn identify_with<O: MembershipOracle>(
    o: &mut O,
    options: IdentifyOptions,
) -> Result<IdentResult> {
    let dim = o.dimension();
    let asked_before = o.queries_asked();
    let mut run = Run {
        oracle: o,
        knowledge: KnowledgeStore::new(dim),
        options,
        max_depth: 2 * dim.n() as usize,
    };
    let initial = run.initial_searches()?;
    let snapshot = (
        run.knowledge.implicants().to_vec(),
        run.knowledge.clauses().to_vec(),
    );
    if let Some((lm1, rm0)) = initial {
        run.id_rec(0, dim.last_index(), lm1, rm0, 0)?;
    }
    let queries = run.oracle.queries_asked() - asked_before;
    let initial_complete =
        snapshot.0 == run.knowledge.implicants() && snapshot.1 == run.knowledge.clauses();
    let done = run.knowledge.finalize();
    Ok(IdentResult {
        min_t: done.min_t,
        max_f: done.max_f,
        queries,
        peak_tpi: done.peak_tpi,
        peak_tpc: done.peak_tpc,
        initial_complete,
    })
}

struct Run<'o, O> {
    oracle: &'o mut O,
    knowledge: KnowledgeStore,
    options: IdentifyOptions,
    max_depth: usize,
}

impl<O: MembershipOracle> Run<'_, O> {
    /// Queries `pos`, which must be unknown, and records the answer.
    fn ask_and_register(&mut self, pos: VecIndex) -> Result<bool> {
        debug_assert_eq!(self.knowledge.get_fun_value(pos), None);
        let v = self.oracle.query(pos)?;
        if v {
            self.knowledge.reg_implicant(pos)?;
        } else {
            self.knowledge.reg_clause(pos)?;
        }
        Ok(v)
    }

    /// LFMT and LLMF of the whole function, or `None` for a constant.
    fn initial_searches(&mut self) -> Result<Option<(VecIndex, VecIndex)>> {
        let dim = self.knowledge.dimension();
        if dim.n() == 0 {
            self.ask_and_register(0)?;
            return Ok(None);
        }
        let full = SearchWindow::full(dim);
        let lm1 = search_first_ext(self.oracle, &mut self.knowledge, full)?;
        match self.knowledge.get_fun_value(lm1) {
            Some(true) => {}
            // every probe answered 0; one more query tells 0̃ from x_1⋯x_n
            None => {
                if !self.ask_and_register(lm1)? {
                    return Ok(None);
                }
            }
            Some(false) => {
                return Err(MbfError::InconsistentOracle(format!(
                    "first true position {lm1} is known false"
                )))
            }
        }
        let rm0 = search_last_ext(self.oracle, &mut self.knowledge, full)?;
        let last_false = match self.knowledge.get_fun_value(rm0) {
            Some(v) => !v,
            None => !self.ask_and_register(rm0)?,
        };
        if !last_false {
            // 1̃: the implicant at position 0 is already registered
            return Ok(None);
        }
        Ok(Some((lm1, rm0)))
    }

    fn id_rec(
        &mut self,
        left: VecIndex,
        right: VecIndex,
        lm1: VecIndex,
        rm0: VecIndex,
        depth: usize,
    ) -> Result<()> {
        assert!(depth <= self.max_depth, "recursion deeper than 2n");
        // segments settled by the searches that produced lm1 and rm0
        if right - left <= 3 || lm1 > rm0 || lm1 + 1 == rm0 {
            return Ok(());
        }
        if self.options.periodic_guard && rm0 + 1 == right {
            let t = rm0 - 1;
            if self.knowledge.get_fun_value(t).is_none() {
                self.ask_and_register(t)?;
            }
        }
        let m = left + (right - left) / 2;
        if lm1 > m {
            // left half is 0̃
            return self.id_rec(m + 1, right, lm1, rm0, depth + 1);
        }
        if rm0 <= m {
            // right half is 1̃
            return self.id_rec(left, m, lm1, rm0, depth + 1);
        }
        let p0 = search_last_ext(
            self.oracle,
            &mut self.knowledge,
            SearchWindow { left, right: m },
        )?;
        self.id_rec(left, m, lm1, p0, depth + 1)?;
        let p1 = search_first_ext(
            self.oracle,
            &mut self.knowledge,
            SearchWindow { left: m + 1, right },
        )?;
        self.id_rec(m + 1, right, p1, rm0, depth + 1)
    }
}

/// Reference maxima and averages of the query count for `n = 1..=6`.
pub const REFERENCE_QUERY_STATS: [(u32, u64, f64); 6] = [
    (1, 2, 1.66),
    (2, 3, 2.66),
    (3, 6, 4.70),
    (4, 12, 8.95),
    (5, 22, 16.76),
    (6, 41, 30.65),
];

/// Aggregates from identifying every function of `M_n`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub n: u32,
    pub total: u64,
    pub q_max: u64,
    pub q_sum: u64,
    /// Functions per query count.
    pub q_histogram: BTreeMap<u64, u64>,
    /// Functions per 1% bin of `100·q/(n·m)`; `0̃` (and all of `n = 0`) excluded.
    pub ratio_histogram: BTreeMap<u64, u64>,
    pub peak_tpi_max: usize,
    pub peak_tpc_max: usize,
    /// Functions whose store at some point held more implicants than
    /// `|minT|` or more clauses than `|maxF|`.
    pub peak_excess_functions: u64,
    pub peak_excess_max: usize,
    pub initial_complete: u64,
    /// Functions other than `0̃` with `q > n·m`, and `0̃` unless `q = n·m + 1`.
    pub bound_violations: u64,
    /// Up to ten offending functions, as bit strings.
    pub violation_examples: Vec<String>,
}

impl SweepReport {
    pub fn q_ave(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.q_sum as f64 / self.total as f64
        }
    }

    /// The reference `(q_max, q_ave)` for this `n`, if any.
    pub fn reference(&self) -> Option<(u64, f64)> {
        REFERENCE_QUERY_STATS
            .iter()
            .find(|r| r.0 == self.n)
            .map(|r| (r.1, r.2))
    }

    fn record(&mut self, table: &MonotoneTable, r: &IdentResult) {
        let n = self.n as u64;
        let m = r.output_size();
        let is_zero = table.is_constant_zero();
        self.total += 1;
        self.q_sum += r.queries;
        self.q_max = self.q_max.max(r.queries);
        *self.q_histogram.entry(r.queries).or_default() += 1;
        if !is_zero && n > 0 {
            *self
                .ratio_histogram
                .entry(100 * r.queries / (n * m))
                .or_default() += 1;
        }
        self.peak_tpi_max = self.peak_tpi_max.max(r.peak_tpi);
        self.peak_tpc_max = self.peak_tpc_max.max(r.peak_tpc);
        let excess = r
            .peak_tpi
            .saturating_sub(r.min_t.len())
            .max(r.peak_tpc.saturating_sub(r.max_f.len()));
        if excess > 0 {
            self.peak_excess_functions += 1;
            self.peak_excess_max = self.peak_excess_max.max(excess);
        }
        self.initial_complete += r.initial_complete as u64;
        let within = if is_zero {
            r.queries == n * m + 1
        } else {
            r.queries <= n * m
        };
        if !within {
            self.bound_violations += 1;
            if self.violation_examples.len() < 10 {
                self.violation_examples.push(table.to_string());
            }
        }
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.total += other.total;
        self.q_sum += other.q_sum;
        self.q_max = self.q_max.max(other.q_max);
        for (q, c) in other.q_histogram {
            *self.q_histogram.entry(q).or_default() += c;
        }
        for (b, c) in other.ratio_histogram {
            *self.ratio_histogram.entry(b).or_default() += c;
        }
        self.peak_tpi_max = self.peak_tpi_max.max(other.peak_tpi_max);
        self.peak_tpc_max = self.peak_tpc_max.max(other.peak_tpc_max);
        self.peak_excess_functions += other.peak_excess_functions;
        self.peak_excess_max = self.peak_excess_max.max(other.peak_excess_max);
        self.initial_complete += other.initial_complete;
        self.bound_violations += other.bound_violations;
        self.violation_examples.extend(other.violation_examples);
        self.violation_examples.truncate(10);
        self
    }
}

/// Identifies one table behind a fresh oracle and checks the result
/// against the brute-force extremal sets.
pub fn identify_and_check(table: &MonotoneTable) -> Result<IdentResult> {
    let mut o = TableOracle::new(table.clone());
    let r = identify(&mut o)?;
    if r.min_t != brute_min_t(table)? || r.max_f != brute_max_f(table)? {
        return Err(MbfError::RecoveryMismatch {
            function: table.to_string(),
        });
    }
    Ok(r)
}

/// Identifies every function of `M_n` (generated lexicographically, rows
/// spread over `threads` workers), checks each recovery exactly and
/// aggregates the query statistics. The first mismatch in lexicographic
/// order aborts the sweep.
pub fn verify_sweep(dim: Dimension, threads: usize) -> Result<SweepReport> {
    if dim.n() > COUNT_MAX_N {
        return Err(MbfError::UnsupportedScale(format!(
            "sweeping M_{} is infeasible",
            dim.n()
        )));
    }
    let empty = SweepReport {
        n: dim.n(),
        ..Default::default()
    };
    let mut head = empty.clone();
    let zero = MonotoneTable::new_unchecked(crate::TruthTable::zeros(dim)?);
    head.record(&zero, &identify_and_check(&zero)?);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| MbfError::UnsupportedScale(e.to_string()))?;
    // rows descend so that the per-row results come out in lexicographic order
    let per_row: Vec<Result<SweepReport>> = pool.install(|| {
        (0..dim.size())
            .rev()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|i| {
                let mut part = empty.clone();
                let mut failure = None;
                gen_rows(dim, i..i + 1, |t| match identify_and_check(t) {
                    Ok(r) => {
                        part.record(t, &r);
                        Ok(ControlFlow::Continue(()))
                    }
                    Err(e) => {
                        failure = Some(e);
                        Ok(ControlFlow::Break(()))
                    }
                })?;
                failure.map_or(Ok(part), Err)
            })
            .collect()
    });
    per_row
        .into_iter()
        .try_fold(head, |acc, part| Ok(acc.merge(part?)))
}
