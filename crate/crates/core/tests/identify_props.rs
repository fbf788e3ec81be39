mod common;

use std::collections::HashSet;

use common::{all_tables, dim, minimal_elements};
use mbf::boolcube::eval_from_min_t;
use mbf::identify::{identify, identify_with, IdentifyOptions};
use mbf::oracle::{MinTOracle, TableOracle};
use mbf::{MonotoneTable, TruthTable};
use proptest::prelude::*;

fn check_run(n: u32, min_t: Vec<u64>) -> Result<(), TestCaseError> {
    let max_f = common::max_f_of(n, |p| eval_from_min_t(&min_t, p));
    let mut o = MinTOracle::with_log(mbf::oracle::MinTSet::new(dim(n), min_t.clone()).unwrap());
    let r = identify(&mut o).unwrap();
    prop_assert_eq!(&r.min_t, &min_t);
    prop_assert_eq!(&r.max_f, &max_f);
    let positions = o.positions();
    prop_assert_eq!(positions.len() as u64, r.queries);
    prop_assert_eq!(
        positions.iter().collect::<HashSet<_>>().len(),
        positions.len()
    );

    let mut again = MinTOracle::with_log(mbf::oracle::MinTSet::new(dim(n), min_t.clone()).unwrap());
    identify(&mut again).unwrap();
    prop_assert_eq!(again.positions(), positions.clone());

    let table = TruthTable::from_fn(dim(n), |p| eval_from_min_t(&min_t, p)).unwrap();
    let mut t = TableOracle::with_log(MonotoneTable::new(table).unwrap());
    prop_assert_eq!(identify(&mut t).unwrap(), r);
    prop_assert_eq!(t.positions(), positions);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recovers_random_functions(n in 1..=7u32, seeds in prop::collection::vec(any::<u64>(), 0..12)) {
        let mask = (1u64 << n) - 1;
        let min_t = minimal_elements(n, seeds.into_iter().map(|s| s & mask).collect());
        check_run(n, min_t)?;
    }
}

#[test]
fn no_function_repeats_a_query() {
    for n in 0..=5 {
        for t in all_tables(n) {
            for guard in [true, false] {
                let mut o = TableOracle::with_log(t.clone());
                let r = identify_with(
                    &mut o,
                    IdentifyOptions {
                        periodic_guard: guard,
                    },
                )
                .unwrap();
                let p = o.positions();
                assert_eq!(p.iter().collect::<HashSet<_>>().len(), p.len(), "{t}");
                assert_eq!(r.min_t, common::min_t_of(n, |k| t.get(k)), "{t}");
                assert_eq!(r.max_f, common::max_f_of(n, |k| t.get(k)), "{t}");
            }
        }
    }
}

#[test]
fn large_dimension_through_min_t() {
    let n = 24;
    let mut o = MinTOracle::from_min_t(dim(n), vec![1, 2]).unwrap();
    let r = identify(&mut o).unwrap();
    assert_eq!(r.min_t, [1, 2]);
    assert_eq!(r.max_f, [(1u64 << n) - 4]);
    assert!(r.queries <= n as u64 * r.output_size());
}
