#![no_main]

use libfuzzer_sys::fuzz_target;
use oppsym::{parse_graph, search, SearchConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(g) = parse_graph(data) else {
        return;
    };
    // the writer and parser must agree on every accepted graph
    let again = parse_graph(g.to_native().as_bytes()).expect("reparse");
    assert_eq!(again.to_native(), g.to_native());
    if g.n() <= 64 {
        let config = SearchConfig {
            max_nodes: 10_000,
            ..SearchConfig::default()
        };
        let r = search(&g, &config).expect("search");
        for a in &r.generators {
            assert!(g.is_automorphism(a).unwrap());
        }
    }
});
