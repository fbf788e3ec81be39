//! Binary searches for the lexicographically first minimal true (LFMT) and
//! lexicographically last maximal false (LLMF) vectors.
//!
//! The rows of `P_n` in its upper half all hold a 1 at position
//! `2^{n-1} - 1` and those in its lower half a 0, and the same holds
//! recursively inside each `P_{n-1}` block. The first true position of a
//! monotone function is therefore found by plain bisection, and it is its
//! LFMT vector; dually the last false position is its LLMF vector.

use crate::boolcube::{Dimension, VecIndex};
use crate::error::{MbfError, Result};
use crate::knowledge::KnowledgeStore;
use crate::oracle::MembershipOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {
    /// Lexicographically first minimal true vector.
    Lfmt,
    /// Lexicographically last maximal false vector.
    Llmf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Zero,
    One,
}

/// Whether a simple search spends one extra query to detect a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantCheck {
    Skip,
    Confirm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub position: VecIndex,
    pub kind: VectorKind,
    /// Set when the confirming query showed there is no such vector.
    pub constant_detected: Option<Constant>,
}

/// Inclusive range of positions, in full-cube indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchWindow {
    pub left: VecIndex,
    pub right: VecIndex,
}

impl SearchWindow {
    pub fn new(left: VecIndex, right: VecIndex, dim: Dimension) -> Result<Self> {
        dim.check_index(right)?;
        if left > right {
            return Err(MbfError::IndexOutOfRange {
                index: left,
                n: dim.n(),
            });
        }
        Ok(Self { left, right })
    }

    pub fn full(dim: Dimension) -> Self {
        Self {
            left: 0,
            right: dim.last_index(),
        }
    }
}

/// Bisection for the first true position on the whole cube, with no prior
/// knowledge. Asks exactly `n` queries, plus one when confirming.
pub fn search_first_simple<O: MembershipOracle>(
    o: &mut O,
    check: ConstantCheck,
) -> Result<SearchResult> {
    let SearchWindow {
        mut left,
        mut right,
    } = SearchWindow::full(o.dimension());
    while left < right {
        let m = left + (right - left) / 2;
        if o.query(m)? {
            right = m;
        } else {
            left = m + 1;
        }
    }
    let constant_detected = match check {
        ConstantCheck::Confirm if !o.query(left)? => Some(Constant::Zero),
        _ => None,
    };
    Ok(SearchResult {
        position: left,
        kind: VectorKind::Lfmt,
        constant_detected,
    })
}

/// Bisection for the last false position on the whole cube, with no prior
/// knowledge. Asks exactly `n` queries, plus one when confirming.
pub fn search_last_simple<O: MembershipOracle>(
    o: &mut O,
    check: ConstantCheck,
) -> Result<SearchResult> {
    let SearchWindow {
        mut left,
        mut right,
    } = SearchWindow::full(o.dimension());
    while left < right {
        let m = left + (right - left) / 2 + 1;
        if o.query(m)? {
            right = m - 1;
        } else {
            left = m;
        }
    }
    let constant_detected = match check {
        ConstantCheck::Confirm if o.query(right)? => Some(Constant::One),
        _ => None,
    };
    Ok(SearchResult {
        position: right,
        kind: VectorKind::Llmf,
        constant_detected,
    })
}

/// Value at `pos` from knowledge, or from a membership query when unknown.
/// Returns the value and whether a query was spent.
pub(crate) fn value_or_query<O: MembershipOracle>(
    o: &mut O,
    k: &KnowledgeStore,
    pos: VecIndex,
) -> Result<(bool, bool)> {
    match k.get_fun_value(pos) {
        Some(v) => Ok((v, false)),
        None => Ok((o.query(pos)?, true)),
    }
}

/// Knowledge-aware search for the first true position in `w`.
///
/// Every queried 0 registers a clause; if any query answered 1, the final
/// position is registered as an implicant (each 1 found here lies below the
/// previous one, so only the last is kept).
pub fn search_first_ext<O: MembershipOracle>(
    o: &mut O,
    k: &mut KnowledgeStore,
    w: SearchWindow,
) -> Result<VecIndex> {
    let SearchWindow {
        mut left,
        mut right,
    } = w;
    let mut found = false;
    while left < right {
        let m = left + (right - left) / 2;
        match value_or_query(o, k, m)? {
            (true, queried) => {
                right = m;
                found |= queried;
            }
            (false, queried) => {
                left = m + 1;
                if queried {
                    k.reg_clause(m)?;
                }
            }
        }
    }
    if found {
        k.reg_implicant(left)?;
    }
    Ok(left)
}

/// Knowledge-aware search for the last false position in `w`.
///
/// Every queried 1 registers an implicant; if any query answered 0, the
/// final position is registered as a clause.
pub fn search_last_ext<O: MembershipOracle>(
    o: &mut O,
    k: &mut KnowledgeStore,
    w: SearchWindow,
) -> Result<VecIndex> {
    let SearchWindow {
        mut left,
        mut right,
    } = w;
    let mut found = false;
    while left < right {
        let m = left + (right - left) / 2 + 1;
        match value_or_query(o, k, m)? {
            (false, queried) => {
                left = m;
                found |= queried;
            }
            (true, queried) => {
                right = m - 1;
                if queried {
                    k.reg_implicant(m)?;
                }
            }
        }
    }
    if found {
        k.reg_clause(right)?;
    }
    Ok(right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalKind {
    MinTrue,
    MaxFalse,
}

/// Coordinate descent from `start` to a minimal true or maximal false vector.
///
/// If `start` is true, its one-coordinates are tried in order `x_1, …, x_n`:
/// each is cleared and kept cleared when the result is still true. A false
/// start is handled dually on its zero-coordinates. At most `n + 1` queries.
/// Other coordinate orders reach other, equally valid, extremal vectors.
pub fn gainanov_descend<O: MembershipOracle>(
    o: &mut O,
    start: VecIndex,
) -> Result<(VecIndex, ExtremalKind)> {
    let n = o.dimension().n();
    o.dimension().check_index(start)?;
    let value = o.query(start)?;
    let mut current = start;
    for t in 1..=n {
        let bit = 1u64 << (n - t);
        let set = current & bit != 0;
        if set != value {
            continue;
        }
        let candidate = current ^ bit;
        if o.query(candidate)? == value {
            current = candidate;
        }
    }
    let kind = if value {
        ExtremalKind::MinTrue
    } else {
        ExtremalKind::MaxFalse
    };
    Ok((current, kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcube::MonotoneTable;
    use crate::oracle::TableOracle;

    fn oracle(s: &str) -> TableOracle {
        TableOracle::with_log(s.parse::<MonotoneTable>().unwrap())
    }

    const TRACE_FN: &str = "0011001101110111";

    #[test]
    fn first_simple_trace() {
        let mut o = oracle(TRACE_FN);
        let r = search_first_simple(&mut o, ConstantCheck::Skip).unwrap();
        assert_eq!(r.position, 2);
        assert_eq!(o.positions(), [7, 3, 1, 2]);

        let mut o = oracle("01");
        let r = search_first_simple(&mut o, ConstantCheck::Skip).unwrap();
        assert_eq!((r.position, o.positions()), (1, vec![0]));

        let mut o = oracle("00110111");
        assert_eq!(
            search_first_simple(&mut o, ConstantCheck::Skip)
                .unwrap()
                .position,
            2
        );
    }

    #[test]
    fn last_simple_trace() {
        let mut o = oracle(TRACE_FN);
        let r = search_last_simple(&mut o, ConstantCheck::Skip).unwrap();
        assert_eq!(r.position, 12);
        assert_eq!(o.positions(), [8, 12, 14, 13]);

        let mut o = oracle("01");
        let r = search_last_simple(&mut o, ConstantCheck::Skip).unwrap();
        assert_eq!((r.position, o.positions()), (0, vec![1]));

        let mut o = oracle("00110111");
        assert_eq!(
            search_last_simple(&mut o, ConstantCheck::Skip)
                .unwrap()
                .position,
            4
        );
    }

    #[test]
    fn constant_confirmation() {
        let mut o = oracle("0000");
        let r = search_first_simple(&mut o, ConstantCheck::Confirm).unwrap();
        assert_eq!(r.constant_detected, Some(Constant::Zero));
        assert_eq!(o.queries_asked(), 3);

        let mut o = oracle("1111");
        let r = search_last_simple(&mut o, ConstantCheck::Confirm).unwrap();
        assert_eq!(r.constant_detected, Some(Constant::One));

        let mut o = oracle("0001");
        let r = search_first_simple(&mut o, ConstantCheck::Confirm).unwrap();
        assert_eq!((r.position, r.constant_detected), (3, None));
    }

    #[test]
    fn ext_with_empty_knowledge_matches_simple() {
        let d = Dimension::new(4).unwrap();
        let mut o = oracle(TRACE_FN);
        let mut k = KnowledgeStore::new(d);
        assert_eq!(
            search_last_ext(&mut o, &mut k, SearchWindow::full(d)).unwrap(),
            12
        );
        assert_eq!(o.positions(), [8, 12, 14, 13]);

        let mut o = oracle(TRACE_FN);
        let mut k = KnowledgeStore::new(d);
        assert_eq!(
            search_first_ext(&mut o, &mut k, SearchWindow::full(d)).unwrap(),
            2
        );
        assert_eq!(o.queries_asked(), 4);
        assert_eq!(k.implicants(), [2]);
    }

    #[test]
    fn implicant_from_first_search_saves_a_query() {
        let d = Dimension::new(4).unwrap();
        let mut o = oracle(TRACE_FN);
        let mut k = KnowledgeStore::new(d);
        search_first_ext(&mut o, &mut k, SearchWindow::full(d)).unwrap();
        o.reset_count();
        assert_eq!(
            search_last_ext(&mut o, &mut k, SearchWindow::full(d)).unwrap(),
            12
        );
        assert_eq!(o.positions(), [8, 12, 13]);
    }

    #[test]
    fn ext_windows() {
        let d = Dimension::new(4).unwrap();
        let mut o = oracle(TRACE_FN);
        let mut k = KnowledgeStore::new(d);
        assert_eq!(
            search_first_ext(&mut o, &mut k, SearchWindow::new(2, 2, d).unwrap()).unwrap(),
            2
        );
        assert_eq!(o.queries_asked(), 0);

        let d = Dimension::new(3).unwrap();
        let mut o = oracle("00110111");
        let mut k = KnowledgeStore::new(d);
        assert_eq!(
            search_first_ext(&mut o, &mut k, SearchWindow::new(4, 7, d).unwrap()).unwrap(),
            5
        );

        let mut o = oracle("11111111");
        let mut k = KnowledgeStore::new(d);
        assert_eq!(
            search_last_ext(&mut o, &mut k, SearchWindow::full(d)).unwrap(),
            0
        );
        assert!(o.log().unwrap().iter().all(|&(_, a)| a));
        assert!(k.clauses().is_empty());

        assert!(SearchWindow::new(5, 4, d).is_err());
        assert!(SearchWindow::new(0, 8, d).is_err());
    }

    #[test]
    fn gainanov_examples() {
        let mut o = oracle("00110111");
        let (pos, kind) = gainanov_descend(&mut o, 7).unwrap();
        assert_eq!((pos, kind), (2, ExtremalKind::MinTrue));
        assert!(o.queries_asked() <= 4);

        let mut o = oracle("00000000");
        assert_eq!(
            gainanov_descend(&mut o, 7).unwrap(),
            (7, ExtremalKind::MaxFalse)
        );
        let mut o = oracle("11111111");
        assert_eq!(
            gainanov_descend(&mut o, 0).unwrap(),
            (0, ExtremalKind::MinTrue)
        );
    }
}
