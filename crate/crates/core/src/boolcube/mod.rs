//! The Boolean cube `{0,1}^n`, the precedence relation `⪯` and the
//! precedence matrix `P_n`.
//!
//! A vector `α = (a_1, …, a_n)` is identified by its serial number
//! `#α = a_1·2^{n-1} + … + a_n`, so `a_1` is the most significant bit.
//! With that numbering `α_i ⪯ α_j` holds exactly when the set bits of `i`
//! are a subset of the set bits of `j`.

mod matrix;
mod table;

use std::fmt;
use std::sync::OnceLock;

pub use matrix::{build_matrix, clause_table, row_of, BitMatrix, MATRIX_MAX_N};
pub(crate) use table::{or_row_words, prev_zero, word_count};
pub use table::{MonotoneTable, TruthTable};

use crate::error::{MbfError, Result};

/// Serial number of a cube vector.
pub type VecIndex = u64;

/// Default ceiling on `n` for anything that materializes a truth table.
pub const DEFAULT_TABLE_CAP: u32 = 24;

/// Environment variable overriding [`DEFAULT_TABLE_CAP`].
pub const TABLE_CAP_ENV: &str = "MBF_TABLE_CAP";

/// Current truth-table cap, read once from `MBF_TABLE_CAP`.
pub fn table_cap() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(TABLE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .map(|v| v.min(Dimension::MAX))
            .unwrap_or(DEFAULT_TABLE_CAP)
    })
}

/// Number of variables `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    /// Largest `n` supported by 64-bit index arithmetic.
    pub const MAX: u32 = 63;

    pub fn new(n: u32) -> Result<Self> {
        if n > Self::MAX {
            return Err(MbfError::DimensionTooLarge { n, max: Self::MAX });
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.0
    }

    /// `2^n`, the number of cube vectors.
    #[inline]
    pub fn size(self) -> u64 {
        1u64 << self.0
    }

    /// `2^n - 1`, the index of the all-ones vector.
    #[inline]
    pub fn last_index(self) -> VecIndex {
        self.size() - 1
    }

    pub fn check_index(self, k: VecIndex) -> Result<()> {
        if k > self.last_index() {
            return Err(MbfError::IndexOutOfRange {
                index: k,
                n: self.0,
            });
        }
        Ok(())
    }

    pub fn check_table_cap(self) -> Result<()> {
        let cap = table_cap();
        if self.0 > cap {
            return Err(MbfError::TableTooLarge { n: self.0, cap });
        }
        Ok(())
    }

    pub(crate) fn from_table_len(len: u64) -> Result<Self> {
        if !len.is_power_of_two() {
            return Err(MbfError::Parse(format!(
                "table length {len} is not a power of two"
            )));
        }
        Self::new(len.trailing_zeros())
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `α_i ⪯ α_j` for in-range indices.
#[inline]
pub fn precedes(i: VecIndex, j: VecIndex) -> bool {
    i & !j == 0
}

/// Cell `p_ij` of `P_n` via the bit-subset test.
pub fn precedes_subset(i: VecIndex, j: VecIndex, dim: Dimension) -> Result<bool> {
    dim.check_index(i)?;
    dim.check_index(j)?;
    Ok(i & (!j & dim.last_index()) == 0)
}

/// Cell `p_ij` of `P_n` by descending through the block structure
/// `P_m = [[P_{m-1}, P_{m-1}], [O, P_{m-1}]]` until a diagonal, a zero block
/// or a `P_1` cell is reached.
pub fn precedes_blockdescent(i: VecIndex, j: VecIndex, dim: Dimension) -> Result<bool> {
    dim.check_index(i)?;
    dim.check_index(j)?;
    let (mut i, mut j, mut m) = (i, j, dim.n());
    loop {
        if i > j {
            return Ok(false);
        }
        if i == j || m <= 1 {
            return Ok(true);
        }
        m -= 1;
        let half = (1u64 << m) - 1;
        if i > half {
            i -= half + 1;
        }
        if j > half {
            j -= half + 1;
        }
    }
}

/// Negation-free conjunction named by its characteristic vector; index 0 is
/// the constant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conjunction(pub VecIndex);

/// Negation-free disjunction named by its anti-characteristic vector; index
/// `2^n - 1` is the constant 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(pub VecIndex);

/// 1-based variable numbers `x_t` whose coordinate in `index` equals `bit`.
fn coordinates_equal_to(index: VecIndex, dim: Dimension, bit: bool) -> Vec<u32> {
    (1..=dim.n())
        .filter(|&t| ((index >> (dim.n() - t)) & 1 == 1) == bit)
        .collect()
}

impl Conjunction {
    pub fn variables(self, dim: Dimension) -> Vec<u32> {
        coordinates_equal_to(self.0, dim, true)
    }

    /// Truth table of the conjunction, which is the row `r_i` of `P_n`.
    pub fn table(self, dim: Dimension) -> Result<TruthTable> {
        row_of(self.0, dim)
    }

    pub fn display(self, dim: Dimension) -> String {
        let vars = self.variables(dim);
        if vars.is_empty() {
            return "1".to_owned();
        }
        vars.iter().map(|t| format!("x{t}")).collect()
    }
}

impl Clause {
    pub fn variables(self, dim: Dimension) -> Vec<u32> {
        coordinates_equal_to(self.0, dim, false)
    }

    /// Truth table of the clause, the negated column `j` of `P_n`.
    pub fn table(self, dim: Dimension) -> Result<TruthTable> {
        clause_table(self.0, dim)
    }

    pub fn display(self, dim: Dimension) -> String {
        let vars = self.variables(dim);
        if vars.is_empty() {
            return "0".to_owned();
        }
        vars.iter()
            .map(|t| format!("x{t}"))
            .collect::<Vec<_>>()
            .join(" v ")
    }
}

/// `f(α_k)` for the function whose minimal true vectors are `min_t`.
pub fn eval_from_min_t(min_t: &[VecIndex], k: VecIndex) -> bool {
    min_t.iter().any(|&i| precedes(i, k))
}

/// `f(α_k)` for the function whose maximal false vectors are `max_f`.
pub fn eval_from_max_f(max_f: &[VecIndex], k: VecIndex) -> bool {
    !max_f.iter().any(|&j| precedes(k, j))
}

pub fn is_monotone(t: &TruthTable) -> bool {
    table::monotonicity_witness(t).is_none()
}

/// Two comparable members of `set`, if it is not an antichain.
pub fn antichain_witness(set: &[VecIndex]) -> Option<(VecIndex, VecIndex)> {
    for (x, &a) in set.iter().enumerate() {
        for &b in &set[x + 1..] {
            if precedes(a, b) || precedes(b, a) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Minimal true vectors by exhaustive scan.
pub fn brute_min_t(t: &TruthTable) -> Result<Vec<VecIndex>> {
    ensure_monotone(t)?;
    let n = t.dimension().n();
    Ok(t.iter_ones()
        .filter(|&k| (0..n).all(|b| k & (1 << b) == 0 || !t.get(k & !(1 << b))))
        .collect())
}

/// Maximal false vectors by exhaustive scan.
pub fn brute_max_f(t: &TruthTable) -> Result<Vec<VecIndex>> {
    ensure_monotone(t)?;
    let n = t.dimension().n();
    Ok((0..t.len())
        .filter(|&k| !t.get(k))
        .filter(|&k| (0..n).all(|b| k & (1 << b) != 0 || t.get(k | (1 << b))))
        .collect())
}

fn ensure_monotone(t: &TruthTable) -> Result<()> {
    match table::monotonicity_witness(t) {
        None => Ok(()),
        Some((lower, upper)) => Err(MbfError::NotMonotone { lower, upper }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    const CONJUNCTIONS_N3: [&str; 8] = [
        "11111111", "01010101", "00110011", "00010001", "00001111", "00000101", "00000011",
        "00000001",
    ];

    #[test]
    fn blockdescent_matches_rows_of_p3() {
        for (i, row) in CONJUNCTIONS_N3.iter().enumerate() {
            for (j, c) in row.chars().enumerate() {
                let expected = c == '1';
                assert_eq!(
                    precedes_blockdescent(i as u64, j as u64, dim(3)).unwrap(),
                    expected
                );
                assert_eq!(
                    precedes_subset(i as u64, j as u64, dim(3)).unwrap(),
                    expected
                );
            }
        }
        assert!(precedes_blockdescent(3, 7, dim(3)).unwrap());
        assert!(!precedes_blockdescent(4, 3, dim(3)).unwrap());
    }

    #[test]
    fn subset_examples() {
        assert!(precedes_subset(5, 7, dim(3)).unwrap());
        assert!(!precedes_subset(5, 6, dim(3)).unwrap());
        assert!(precedes_blockdescent(0, 0, dim(0)).unwrap());
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        assert!(matches!(
            precedes_subset(8, 1, dim(3)),
            Err(MbfError::IndexOutOfRange { index: 8, n: 3 })
        ));
        assert!(precedes_blockdescent(0, 16, dim(3)).is_err());
        assert!(Dimension::new(64).is_err());
    }

    #[test]
    fn diagonal_is_one() {
        for n in 0..8 {
            for i in 0..dim(n).size() {
                assert!(precedes_blockdescent(i, i, dim(n)).unwrap());
            }
        }
    }

    #[test]
    fn example_function_evaluators() {
        assert!(eval_from_min_t(&[2, 5], 7));
        assert!(!eval_from_min_t(&[2, 5], 4));
        assert!(!eval_from_min_t(&[], 3));
        assert!(!eval_from_max_f(&[1, 4], 0));
        assert!(eval_from_max_f(&[1, 4], 3));
        assert!(eval_from_max_f(&[], 0));
    }

    #[test]
    fn monotonicity_check() {
        assert!(is_monotone(&"00110111".parse().unwrap()));
        assert!(!is_monotone(&"01000000".parse().unwrap()));
        assert!(is_monotone(&TruthTable::ones(dim(5)).unwrap()));
        assert!(is_monotone(&"0".parse().unwrap()));
    }

    #[test]
    fn brute_force_extremal_vectors() {
        let t: TruthTable = "00110111".parse().unwrap();
        assert_eq!(brute_min_t(&t).unwrap(), vec![2, 5]);
        assert_eq!(brute_max_f(&t).unwrap(), vec![1, 4]);

        let t: TruthTable = "0011001101110111".parse().unwrap();
        assert_eq!(brute_min_t(&t).unwrap(), vec![2, 9]);
        assert_eq!(brute_max_f(&t).unwrap(), vec![5, 12]);

        for n in 0..5 {
            let zero = TruthTable::zeros(dim(n)).unwrap();
            assert!(brute_min_t(&zero).unwrap().is_empty());
            assert_eq!(brute_max_f(&zero).unwrap(), vec![dim(n).last_index()]);
        }

        let bad: TruthTable = "01000000".parse().unwrap();
        assert!(matches!(
            brute_min_t(&bad),
            Err(MbfError::NotMonotone { .. })
        ));
        assert!(brute_max_f(&bad).is_err());
    }

    #[test]
    fn conjunction_and_clause_names() {
        assert_eq!(Conjunction(3).variables(dim(3)), vec![2, 3]);
        assert_eq!(Conjunction(3).display(dim(3)), "x2x3");
        assert_eq!(Conjunction(0).display(dim(3)), "1");
        assert_eq!(Clause(6).display(dim(3)), "x3");
        assert_eq!(Clause(5).display(dim(3)), "x2");
        assert_eq!(Clause(7).display(dim(3)), "0");
        assert_eq!(Clause(0).display(dim(2)), "x1 v x2");
    }

    #[test]
    fn antichain_detection() {
        assert_eq!(antichain_witness(&[2, 5]), None);
        assert_eq!(antichain_witness(&[2, 3]), Some((2, 3)));
        assert_eq!(antichain_witness(&[]), None);
    }
}
