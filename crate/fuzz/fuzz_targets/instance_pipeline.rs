#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Semantic fuzzing: any instance that survives validation must
    // satisfy the Euler identity exactly, and validated equivariant
    // structures must make the coboundary equivariant (the sign
    // convention is forced by the eta axioms). The decomposition may
    // report errors but must not panic.
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(instance) = sheaftree::instance::parse_instance(text) else {
        return;
    };
    let s = &instance.sheaf;
    if s.tree().n_vertices() > 8 || s.total_vdim() > 12 || s.total_edim() > 12 {
        return;
    }
    let (lhs, rhs) = s.euler_check();
    assert_eq!(lhs, rhs, "euler identity must hold for every valid sheaf");
    if let Some(es) = &instance.equivariant {
        if es.group().order() <= 8 {
            es.check_coboundary_equivariance(true)
                .expect("validated eta data makes the coboundary equivariant");
            let _ = sheaftree::decompose::induction_decompose(es);
        }
    }
});
