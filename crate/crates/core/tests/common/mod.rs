#![allow(dead_code)]

pub mod props;

use std::sync::OnceLock;

use charaudit::cli::compute_table;
use charaudit::cyclotomic::parse_cyc;
use charaudit::group::DEFAULT_ELEMENT_CAP;
use charaudit::{CharacterTable, CycNum};

pub const CORPUS: [&str; 10] = ["trivial", "c2", "c3", "s3", "d4", "q8", "a4", "s4", "a5", "sl23"];

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.grp", env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn table_of(name: &str) -> CharacterTable {
    compute_table(&fixture(name), DEFAULT_ELEMENT_CAP, None).unwrap()
}

pub fn corpus() -> &'static [(&'static str, CharacterTable)] {
    static CELL: OnceLock<Vec<(&'static str, CharacterTable)>> = OnceLock::new();
    CELL.get_or_init(|| CORPUS.iter().map(|&n| (n, table_of(n))).collect())
}

pub fn corpus_table(name: &str) -> &'static CharacterTable {
    &corpus().iter().find(|(n, _)| *n == name).unwrap().1
}

/// The order-69120 table, computed once per test binary.
pub fn big_table() -> &'static CharacterTable {
    static CELL: OnceLock<CharacterTable> = OnceLock::new();
    CELL.get_or_init(|| table_of("perfect_69120_2"))
}

/// A character table as printed in standard references: class sizes,
/// element orders and rows of values in expression syntax.
pub struct Literature {
    pub exponent: u32,
    pub sizes: Vec<usize>,
    pub orders: Vec<u64>,
    pub rows: Vec<Vec<&'static str>>,
}

pub fn literature(name: &str) -> Literature {
    let w = "z(3)";
    let w2 = "z(3)^2";
    let (exponent, sizes, orders, rows): (u32, Vec<usize>, Vec<u64>, Vec<Vec<&str>>) = match name {
        "trivial" => (1, vec![1], vec![1], vec![vec!["1"]]),
        "c2" => (2, vec![1, 1], vec![1, 2], vec![vec!["1", "1"], vec!["1", "-1"]]),
        "c3" => (
            3,
            vec![1, 1, 1],
            vec![1, 3, 3],
            vec![vec!["1", "1", "1"], vec!["1", w, w2], vec!["1", w2, w]],
        ),
        "s3" => (
            6,
            vec![1, 3, 2],
            vec![1, 2, 3],
            vec![vec!["1", "1", "1"], vec!["1", "-1", "1"], vec!["2", "0", "-1"]],
        ),
        // e, r², r, s, sr
        "d4" => (
            4,
            vec![1, 1, 2, 2, 2],
            vec![1, 2, 4, 2, 2],
            vec![
                vec!["1", "1", "1", "1", "1"],
                vec!["1", "1", "1", "-1", "-1"],
                vec!["1", "1", "-1", "1", "-1"],
                vec!["1", "1", "-1", "-1", "1"],
                vec!["2", "-2", "0", "0", "0"],
            ],
        ),
        // 1, -1, ±i, ±j, ±k
        "q8" => (
            4,
            vec![1, 1, 2, 2, 2],
            vec![1, 2, 4, 4, 4],
            vec![
                vec!["1", "1", "1", "1", "1"],
                vec!["1", "1", "1", "-1", "-1"],
                vec!["1", "1", "-1", "1", "-1"],
                vec!["1", "1", "-1", "-1", "1"],
                vec!["2", "-2", "0", "0", "0"],
            ],
        ),
        "a4" => (
            6,
            vec![1, 3, 4, 4],
            vec![1, 2, 3, 3],
            vec![
                vec!["1", "1", "1", "1"],
                vec!["1", "1", w, w2],
                vec!["1", "1", w2, w],
                vec!["3", "-1", "0", "0"],
            ],
        ),
        "s4" => (
            12,
            vec![1, 6, 3, 8, 6],
            vec![1, 2, 2, 3, 4],
            vec![
                vec!["1", "1", "1", "1", "1"],
                vec!["1", "-1", "1", "1", "-1"],
                vec!["2", "0", "2", "-1", "0"],
                vec!["3", "1", "-1", "0", "-1"],
                vec!["3", "-1", "-1", "0", "1"],
            ],
        ),
        "a5" => (
            30,
            vec![1, 15, 20, 12, 12],
            vec![1, 2, 3, 5, 5],
            vec![
                vec!["1", "1", "1", "1", "1"],
                vec!["3", "-1", "0", "1 + z(5) + z(5)^4", "1 + z(5)^2 + z(5)^3"],
                vec!["3", "-1", "0", "1 + z(5)^2 + z(5)^3", "1 + z(5) + z(5)^4"],
                vec!["4", "0", "1", "-1", "-1"],
                vec!["5", "1", "-1", "0", "0"],
            ],
        ),
        // 1, -1, order-4, g, g', -g, -g' with g of order 3
        "sl23" => (
            12,
            vec![1, 1, 6, 4, 4, 4, 4],
            vec![1, 2, 4, 3, 3, 6, 6],
            vec![
                vec!["1", "1", "1", "1", "1", "1", "1"],
                vec!["1", "1", "1", w, w2, w, w2],
                vec!["1", "1", "1", w2, w, w2, w],
                vec!["3", "3", "-1", "0", "0", "0", "0"],
                vec!["2", "-2", "0", "-1", "-1", "1", "1"],
                vec!["2", "-2", "0", "-z(3)", "-z(3)^2", w, w2],
                vec!["2", "-2", "0", "-z(3)^2", "-z(3)", w2, w],
            ],
        ),
        other => panic!("no literature table for {other}"),
    };
    Literature {
        exponent,
        sizes,
        orders,
        rows,
    }
}

/// True if some bijection of classes preserving size and element order
/// turns the computed rows into the literature rows, as multisets.
pub fn matches_literature(t: &CharacterTable, lit: &Literature) -> bool {
    let k = t.class_count();
    if k != lit.sizes.len() || t.conductor != lit.exponent {
        return false;
    }
    let expected: Vec<Vec<CycNum>> = lit
        .rows
        .iter()
        .map(|r| r.iter().map(|s| parse_cyc(s, lit.exponent).unwrap()).collect())
        .collect();
    let mut expected_sorted: Vec<Vec<String>> = expected
        .iter()
        .map(|r| r.iter().map(|v| v.render()).collect())
        .collect();
    expected_sorted.sort();

    // candidate images of each literature column
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            (0..k)
                .filter(|&m| {
                    t.classes.sizes[m] == lit.sizes[c] && t.classes.element_orders[m] == lit.orders[c]
                })
                .collect()
        })
        .collect();
    let mut assignment = vec![usize::MAX; k];
    search(0, &candidates, &mut assignment, &mut |perm| {
        let mut rows: Vec<Vec<String>> = t
            .values
            .iter()
            .map(|r| perm.iter().map(|&m| r[m].render()).collect())
            .collect();
        rows.sort();
        rows == expected_sorted
    })
}

fn search(
    c: usize,
    candidates: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if c == candidates.len() {
        return accept(assignment);
    }
    for &m in &candidates[c] {
        if assignment[..c].contains(&m) {
            continue;
        }
        assignment[c] = m;
        if search(c + 1, candidates, assignment, accept) {
            return true;
        }
    }
    false
}
