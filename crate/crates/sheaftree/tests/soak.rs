//! Long-running randomized soak of the decomposition engine. Ignored by
//! default; run on demand with `cargo test --test soak -- --ignored`.

use sheaftree::decompose::{induction_decompose, rank0, verify_decomposition, DecomposeError};
use sheaftree::field::FieldSpec;
use sheaftree::generate::{catalog, random_equivariant, Rng};
use sheaftree::rep::{is_invariant_subspace, is_irreducible, Irreducibility};

#[test]
#[ignore = "long soak; run explicitly"]
fn decompose_soak_over_random_equivariant_instances() {
    let fields = [FieldSpec::rationals(), FieldSpec::prime_field(5).unwrap()];
    let entries = catalog();
    let mut certified = 0usize;
    let mut zero = 0usize;
    let mut hypothesis = 0usize;
    let mut inconclusive = 0usize;
    for (ei, entry) in entries.iter().enumerate() {
        for (fi, field) in fields.into_iter().enumerate() {
            for round in 0..40u64 {
                let seed = 0x50a6_0000 ^ ((ei as u64) << 20) ^ ((fi as u64) << 10) ^ round;
                let mut rng = Rng::new(seed);
                let es = random_equivariant(&mut rng, entry, field, 3);
                match induction_decompose(&es) {
                    Ok(result) => {
                        assert!(result.trace.len() <= rank0(&es) + 1, "{}", entry.name);
                        match verify_decomposition(&es, &result) {
                            Ok(cert) => {
                                assert!(!cert.determinant.is_zero());
                                if cert.h0_rep.dim() == 0 {
                                    zero += 1;
                                } else {
                                    certified += 1;
                                }
                            }
                            Err(DecomposeError::CertificationFailed(why)) => {
                                // tolerable only when H0 is not provably
                                // irreducible (reducible pairs can exhaust
                                // the bounded intertwiner sweep)
                                let rho = es.rep_on_h0().unwrap();
                                if let Irreducibility::Yes = is_irreducible(&rho) {
                                    panic!(
                                        "{}: certification failed on irreducible H0: {why}",
                                        entry.name
                                    );
                                }
                                inconclusive += 1;
                            }
                            Err(other) => panic!("{}: {other}", entry.name),
                        }
                    }
                    Err(DecomposeError::HypothesisViolated(ev)) => {
                        let rho = es.rep_on_h0().unwrap();
                        assert!(
                            !is_irreducible(&rho).is_yes(),
                            "{}: hypothesis flagged on an irreducible H0",
                            entry.name
                        );
                        assert!(ev.witness.dim() > 0 && ev.witness.dim() < rho.dim());
                        assert!(is_invariant_subspace(&rho, &ev.witness));
                        hypothesis += 1;
                    }
                    Err(e) => panic!("{}: {e}", entry.name),
                }
            }
        }
    }
    println!(
        "soak outcomes: certified={certified} zero={zero} hypothesis={hypothesis} inconclusive={inconclusive}"
    );
}
