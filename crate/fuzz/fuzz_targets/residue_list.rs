#![no_main]

use apcover::parse::parse_residue_list;
use apcover::{ModulusSystem, ResidueAssignment};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(residues) = parse_residue_list(data) else {
        return;
    };
    if residues.len() > 64 {
        return;
    }
    let system = ModulusSystem::first_primes(residues.len()).expect("first primes are valid");
    let assignment = ResidueAssignment::new(&system, &residues).expect("lengths match");
    for ((&reduced, &raw), &p) in assignment.residues().iter().zip(&residues).zip(system.moduli()) {
        assert!(reduced < p);
        assert_eq!((raw % p as i128 - reduced as i128) % p as i128, 0);
    }
});
