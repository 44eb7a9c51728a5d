use oppsym::{brute_force_aut, parse_cnf_to_graph, search, Mode, SearchConfig};

fn orders(text: &str) -> (String, String, String) {
    let g = parse_cnf_to_graph(text.as_bytes()).unwrap();
    let oracle = brute_force_aut(&g).unwrap().summary.order.to_string();
    let run = |mode| {
        search(&g, &SearchConfig::with_mode(mode))
            .unwrap()
            .stats
            .group_order
            .to_string()
    };
    (oracle, run(Mode::Baseline), run(Mode::Enhanced))
}

fn assert_order(text: &str, want: u64) {
    let want = want.to_string();
    assert_eq!(orders(text), (want.clone(), want.clone(), want), "{text}");
}

#[test]
fn two_binary_clauses() {
    // the clause edges and complement edges form a 4-cycle, and the graph
    // cannot tell the two kinds of edge apart
    assert_order("p cnf 2 2\n1 2 0\n-1 -2 0\n", 8);
}

#[test]
fn empty_formulas() {
    for (v, want) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
        assert_order(&format!("p cnf {v} 0\n"), want);
    }
}

#[test]
fn single_ternary_clause() {
    // flipping a variable would move the clause off its literals
    assert_order("p cnf 3 1\n1 2 3 0\n", 6);
}

#[test]
fn clauses_move_with_their_literals() {
    assert_order("p cnf 2 2\n1 0\n2 0\n", 2);
    assert_order("p cnf 2 2\n1 0\n-2 0\n", 2);
    // x1 <-> x2 swaps the clauses, x1 <-> -x2 fixes both
    assert_order("p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n", 4);
}
