#![no_main]

use libfuzzer_sys::fuzz_target;
use oppsym::parse_cnf_to_graph_limited;

fuzz_target!(|data: &[u8]| {
    // a tiny header can still declare millions of variables
    if let Ok(g) = parse_cnf_to_graph_limited(data, 1 << 16) {
        assert!(g.n() <= 1 << 16);
        assert!(g.edges().all(|(u, v)| u < v && (v as usize) < g.n()));
    }
});
