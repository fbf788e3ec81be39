//! Partial knowledge about an unknown monotone function.
//!
//! Implicants and clauses are both named by cube indices: implicant `i` is
//! the conjunction `c_i`, true exactly on the vectors above `α_i`; clause `j`
//! is the disjunction `d_j`, false exactly on the vectors below `α_j`. Hence
//! implicant `i` absorbs implicant `i'` iff `i ⪯ i'`, and clause `j` absorbs
//! clause `j'` iff `j' ⪯ j`. Both sets are kept as sorted antichains.

use crate::boolcube::{precedes, Dimension, VecIndex};
use crate::error::{MbfError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Registration {
    Implicant(VecIndex),
    Clause(VecIndex),
}

/// Temporary prime implicants and clauses found so far.
#[derive(Clone, Debug)]
pub struct KnowledgeStore {
    dim: Dimension,
    tpi: Vec<VecIndex>,
    tpc: Vec<VecIndex>,
    peak_tpi: usize,
    peak_tpc: usize,
    history: Option<Vec<Registration>>,
}

/// Final contents of a store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finalized {
    pub min_t: Vec<VecIndex>,
    pub max_f: Vec<VecIndex>,
    pub peak_tpi: usize,
    pub peak_tpc: usize,
}

impl KnowledgeStore {
    pub fn new(dim: Dimension) -> Self {
        Self {
            dim,
            tpi: Vec::new(),
            tpc: Vec::new(),
            peak_tpi: 0,
            peak_tpc: 0,
            history: None,
        }
    }

    /// A store that also records every registration call.
    pub fn with_history(dim: Dimension) -> Self {
        Self {
            history: Some(Vec::new()),
            ..Self::new(dim)
        }
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn implicants(&self) -> &[VecIndex] {
        &self.tpi
    }

    pub fn clauses(&self) -> &[VecIndex] {
        &self.tpc
    }

    pub fn peak_tpi(&self) -> usize {
        self.peak_tpi
    }

    pub fn peak_tpc(&self) -> usize {
        self.peak_tpc
    }

    pub fn history(&self) -> Option<&[Registration]> {
        self.history.as_deref()
    }

    /// `Some(f(α_pos))` when implied by the store, `None` when unknown.
    pub fn get_fun_value(&self, pos: VecIndex) -> Option<bool> {
        if self.tpi.iter().any(|&i| precedes(i, pos)) {
            Some(true)
        } else if self.tpc.iter().any(|&j| precedes(pos, j)) {
            Some(false)
        } else {
            None
        }
    }

    /// Records that `c_idx` is an implicant of the function.
    pub fn reg_implicant(&mut self, idx: VecIndex) -> Result<()> {
        self.dim.check_index(idx)?;
        if let Some(h) = &mut self.history {
            h.push(Registration::Implicant(idx));
        }
        if self.tpi.iter().any(|&i| precedes(i, idx)) {
            return Ok(());
        }
        if let Some(&j) = self.tpc.iter().find(|&&j| precedes(idx, j)) {
            return Err(MbfError::InconsistentOracle(format!(
                "implicant {idx} forces a 1 below clause {j}"
            )));
        }
        self.tpi.retain(|&i| !precedes(idx, i));
        insert_sorted(&mut self.tpi, idx);
        self.peak_tpi = self.peak_tpi.max(self.tpi.len());
        Ok(())
    }

    /// Records that `d_idx` is a clause (implicate) of the function.
    pub fn reg_clause(&mut self, idx: VecIndex) -> Result<()> {
        self.dim.check_index(idx)?;
        if let Some(h) = &mut self.history {
            h.push(Registration::Clause(idx));
        }
        if self.tpc.iter().any(|&j| precedes(idx, j)) {
            return Ok(());
        }
        if let Some(&i) = self.tpi.iter().find(|&&i| precedes(i, idx)) {
            return Err(MbfError::InconsistentOracle(format!(
                "clause {idx} forces a 0 above implicant {i}"
            )));
        }
        self.tpc.retain(|&j| !precedes(j, idx));
        insert_sorted(&mut self.tpc, idx);
        self.peak_tpc = self.peak_tpc.max(self.tpc.len());
        Ok(())
    }

    pub fn finalize(self) -> Finalized {
        Finalized {
            min_t: self.tpi,
            max_f: self.tpc,
            peak_tpi: self.peak_tpi,
            peak_tpc: self.peak_tpc,
        }
    }
}

fn insert_sorted(v: &mut Vec<VecIndex>, x: VecIndex) {
    if let Err(at) = v.binary_search(&x) {
        v.insert(at, x);
    }
}
