mod common;

use common::{all_tables, below, dim};
use mbf::knowledge::KnowledgeStore;
use mbf::oracle::{MembershipOracle, MinTOracle, TableOracle};
use mbf::search::{
    search_first_ext, search_first_simple, search_last_ext, search_last_simple, ConstantCheck,
    SearchWindow,
};

#[test]
fn simple_and_oracle_representations_agree() {
    for n in 0..=5 {
        for t in all_tables(n) {
            let min_t = common::min_t_of(n, |p| t.get(p));
            let mut a = TableOracle::new(t.clone());
            let mut b = MinTOracle::from_min_t(dim(n), min_t).unwrap();
            for p in 0..1u64 << n {
                assert_eq!(a.query(p).unwrap(), b.query(p).unwrap());
            }
            assert_eq!(a.queries_asked(), b.queries_asked());
        }
    }
}

#[test]
fn ext_on_empty_knowledge_matches_simple() {
    for n in 1..=4 {
        for t in all_tables(n) {
            let w = SearchWindow::full(dim(n));
            let mut s = TableOracle::with_log(t.clone());
            let first = search_first_simple(&mut s, ConstantCheck::Skip)
                .unwrap()
                .position;
            let mut e = TableOracle::with_log(t.clone());
            let got = search_first_ext(&mut e, &mut KnowledgeStore::new(dim(n)), w).unwrap();
            assert_eq!((got, e.positions()), (first, s.positions()), "{t}");

            let mut s = TableOracle::with_log(t.clone());
            let last = search_last_simple(&mut s, ConstantCheck::Skip)
                .unwrap()
                .position;
            let mut e = TableOracle::with_log(t.clone());
            let got = search_last_ext(&mut e, &mut KnowledgeStore::new(dim(n)), w).unwrap();
            assert_eq!((got, e.positions()), (last, s.positions()), "{t}");
        }
    }
}

/// The final position lies below every queried 1 of the first search, and
/// above every queried 0 of the last search, so registering only that
/// position loses nothing.
#[test]
fn final_position_absorbs_the_chain() {
    for n in 1..=5 {
        for t in all_tables(n) {
            let w = SearchWindow::full(dim(n));
            let mut o = TableOracle::with_log(t.clone());
            let first = search_first_ext(&mut o, &mut KnowledgeStore::new(dim(n)), w).unwrap();
            if t.get(first) {
                for &(p, a) in o.log().unwrap() {
                    assert!(!a || below(n, first, p), "{t}: {first} not below {p}");
                }
            }
            let mut o = TableOracle::with_log(t.clone());
            let last = search_last_ext(&mut o, &mut KnowledgeStore::new(dim(n)), w).unwrap();
            if !t.get(last) {
                for &(p, a) in o.log().unwrap() {
                    assert!(a || below(n, p, last), "{t}: {p} not below {last}");
                }
            }
        }
    }
}

#[test]
fn prior_knowledge_saves_queries() {
    for n in 1..=4 {
        for t in all_tables(n) {
            if t.is_constant_zero() || t.is_constant_one() {
                continue;
            }
            let want_first = common::min_t_of(n, |p| t.get(p))[0];
            let want_last = *common::max_f_of(n, |p| t.get(p)).last().unwrap();
            let w = SearchWindow::full(dim(n));
            let mut o = TableOracle::new(t.clone());
            let mut k = KnowledgeStore::new(dim(n));
            assert_eq!(search_first_ext(&mut o, &mut k, w).unwrap(), want_first);
            let after_first = o.queries_asked();
            assert_eq!(search_last_ext(&mut o, &mut k, w).unwrap(), want_last);
            assert!(after_first <= n as u64 && o.queries_asked() - after_first <= n as u64);

            // A store that already knows every value answers without queries.
            let mut full = KnowledgeStore::new(dim(n));
            for p in 0..1u64 << n {
                if t.get(p) {
                    full.reg_implicant(p).unwrap();
                } else {
                    full.reg_clause(p).unwrap();
                }
            }
            let mut o = TableOracle::new(t.clone());
            assert_eq!(search_first_ext(&mut o, &mut full, w).unwrap(), want_first);
            assert_eq!(search_last_ext(&mut o, &mut full, w).unwrap(), want_last);
            assert_eq!(o.queries_asked(), 0);
        }
    }
}
