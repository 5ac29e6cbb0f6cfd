#![no_main]

//! Fuzzes the residue-list parser. Arbitrary text must either produce a
//! valid configuration (every entry reduced into [0, q)) or a parse
//! error, never a panic.

use libfuzzer_sys::fuzz_target;
use modsums::Configuration;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let q = data[0] as u32;
    if let Ok(text) = std::str::from_utf8(&data[1..]) {
        if let Ok(c) = Configuration::parse(q, text) {
            assert!(c.residues().iter().all(|&a| a < q.max(1)));
            // a successful parse round-trips through its own rendering
            let rendered = c
                .residues()
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let back = Configuration::parse(q, &rendered).unwrap();
            assert_eq!(c, back);
        }
    }
});
