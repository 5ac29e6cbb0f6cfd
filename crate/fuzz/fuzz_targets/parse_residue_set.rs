#![no_main]

//! Fuzzes the target-set parser: members must come out distinct and
//! reduced, or the input must be rejected.

use libfuzzer_sys::fuzz_target;
use modsums::ResidueSet;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let q = data[0] as u32;
    if let Ok(text) = std::str::from_utf8(&data[1..]) {
        if let Ok(p) = ResidueSet::parse(q, text) {
            assert!(p.members().windows(2).all(|w| w[0] < w[1]));
            assert!(p.members().iter().all(|&r| r < q));
            assert!(p.len() <= q);
        }
    }
});
