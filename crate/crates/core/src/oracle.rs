//! Membership oracles: the only way the learners read function values.
//!
//! Query accounting lives here rather than in the learners, so the reported
//! query count is whatever actually crossed this boundary.

use crate::boolcube::{
    antichain_witness, eval_from_min_t, Dimension, MonotoneTable, TruthTable, VecIndex,
};
use crate::error::{MbfError, Result};

/// Answers "is `α_k` a true vector of `f`?" for one fixed monotone `f`.
pub trait MembershipOracle {
    fn dimension(&self) -> Dimension;

    /// `f(α_k)`; counts as one query.
    fn query(&mut self, k: VecIndex) -> Result<bool>;

    fn queries_asked(&self) -> u64;
}

/// Something that can evaluate a monotone function without counting.
pub trait FunctionSource {
    fn dimension(&self) -> Dimension;
    fn value(&self, k: VecIndex) -> bool;
}

impl FunctionSource for MonotoneTable {
    fn dimension(&self) -> Dimension {
        TruthTable::dimension(self)
    }

    fn value(&self, k: VecIndex) -> bool {
        self.get(k)
    }
}

/// A monotone function given only by its minimal true vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinTSet {
    dim: Dimension,
    min_t: Vec<VecIndex>,
}

impl MinTSet {
    /// Validates range and the antichain property; the set is stored sorted.
    pub fn new(dim: Dimension, mut min_t: Vec<VecIndex>) -> Result<Self> {
        for &k in &min_t {
            dim.check_index(k)?;
        }
        min_t.sort_unstable();
        min_t.dedup();
        if let Some((a, b)) = antichain_witness(&min_t) {
            return Err(MbfError::NotAntichain { a, b });
        }
        Ok(Self { dim, min_t })
    }

    pub fn min_t(&self) -> &[VecIndex] {
        &self.min_t
    }
}

impl FunctionSource for MinTSet {
    fn dimension(&self) -> Dimension {
        self.dim
    }

    fn value(&self, k: VecIndex) -> bool {
        eval_from_min_t(&self.min_t, k)
    }
}

/// Append-only record of `(position, answer)` pairs.
pub type QueryLog = Vec<(VecIndex, bool)>;

/// Counting oracle over any [`FunctionSource`].
#[derive(Clone, Debug)]
pub struct Oracle<F> {
    source: F,
    asked: u64,
    log: Option<QueryLog>,
}

pub type TableOracle = Oracle<MonotoneTable>;
pub type MinTOracle = Oracle<MinTSet>;

impl<F: FunctionSource> Oracle<F> {
    pub fn new(source: F) -> Self {
        Self {
            source,
            asked: 0,
            log: None,
        }
    }

    /// Like [`Oracle::new`] but also records every query.
    pub fn with_log(source: F) -> Self {
        Self {
            source,
            asked: 0,
            log: Some(Vec::new()),
        }
    }

    pub fn source(&self) -> &F {
        &self.source
    }

    pub fn log(&self) -> Option<&QueryLog> {
        self.log.as_ref()
    }

    /// Query positions in the order asked; empty without a log.
    pub fn positions(&self) -> Vec<VecIndex> {
        self.log.iter().flatten().map(|&(k, _)| k).collect()
    }

    /// Zeroes the counter and clears the log.
    pub fn reset_count(&mut self) {
        self.asked = 0;
        if let Some(log) = &mut self.log {
            log.clear();
        }
    }
}

impl MinTOracle {
    pub fn from_min_t(dim: Dimension, min_t: Vec<VecIndex>) -> Result<Self> {
        Ok(Self::new(MinTSet::new(dim, min_t)?))
    }
}

impl<F: FunctionSource> MembershipOracle for Oracle<F> {
    fn dimension(&self) -> Dimension {
        self.source.dimension()
    }

    fn query(&mut self, k: VecIndex) -> Result<bool> {
        self.source.dimension().check_index(k)?;
        let answer = self.source.value(k);
        self.asked += 1;
        if let Some(log) = &mut self.log {
            log.push((k, answer));
        }
        Ok(answer)
    }

    fn queries_asked(&self) -> u64 {
        self.asked
    }
}

impl<O: MembershipOracle + ?Sized> MembershipOracle for &mut O {
    fn dimension(&self) -> Dimension {
        (**self).dimension()
    }

    fn query(&mut self, k: VecIndex) -> Result<bool> {
        (**self).query(k)
    }

    fn queries_asked(&self) -> u64 {
        (**self).queries_asked()
    }
}
