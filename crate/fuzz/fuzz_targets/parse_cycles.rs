#![no_main]

use libfuzzer_sys::fuzz_target;
use oppsym::Permutation;

fuzz_target!(|data: &[u8]| {
    let Some((&n, text)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(text) else {
        return;
    };
    if let Ok(p) = Permutation::parse_cycles(text, n as usize) {
        let printed = p.to_string();
        assert_eq!(Permutation::parse_cycles(&printed, n as usize).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }
});
