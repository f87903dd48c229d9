#![no_main]

use apcover::determinant::signed_free_count;
use apcover::parse::parse_modulus_list;
use apcover::{available_det, build_available_matrix, build_free_matrix, det_bareiss, free_det, ModulusSystem};
use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;

fuzz_target!(|data: &str| {
    let Ok(moduli) = parse_modulus_list(data) else {
        return;
    };
    for coprime in [false, true] {
        let Ok(system) = ModulusSystem::new(&moduli, coprime) else {
            continue;
        };
        assert_eq!(system.moduli(), &moduli[..]);
        assert_eq!(ModulusSystem::new(system.moduli(), coprime).as_ref(), Ok(&system));
        if system.len() <= 10 {
            assert_eq!(
                BigInt::from(available_det(&system)),
                det_bareiss(&build_available_matrix(&system))
            );
            assert_eq!(
                BigInt::from(free_det(&system)),
                signed_free_count(&system, &det_bareiss(&build_free_matrix(&system)))
            );
        }
    }
});
