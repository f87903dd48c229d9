#![no_main]

use apcover::bfile::{diff_bfile, parse_bfile};
use apcover::oeis_a067549;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(entries) = parse_bfile(data) else {
        return;
    };
    let canonical: String = entries
        .iter()
        .map(|e| format!("{} {}\n", e.index, e.value))
        .collect();
    assert_eq!(parse_bfile(&canonical).as_ref(), Ok(&entries));

    let table = oeis_a067549(16);
    let diff = diff_bfile(&table, &entries);
    assert_eq!(diff.compared + diff.skipped, entries.len());
    assert!(diff.mismatches <= diff.compared);
});
