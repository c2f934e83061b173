//! Acceptance suite: one test per criterion, exact arithmetic throughout
//! (zero tolerance). Each test prints a PASS line; criteria 5 and 8 drive
//! the compiled binary and check its exit codes and serialized
//! certificates.

use serde_json::Value;
use sheaftree::decompose::{
    build_r_t, elliptic_as_sheaf, elliptic_subsheaf, induction_decompose, unifacial_data,
    verify_decomposition,
};
use sheaftree::field::FieldSpec;
use sheaftree::fixtures as fx;
use sheaftree::generate::{
    catalog, random_equivariant, random_multifacial_sheaf, random_no_elliptic_sheaf, random_sheaf,
    random_subsheaf, random_tree, Rng,
};
use sheaftree::matrix::Matrix;
use sheaftree::rep::is_invariant_subspace;
use sheaftree::sheaf::{
    build_quotient, les_connecting, subsheaf_inclusion, ShortExactSeq,
};
use sheaftree::subspace::Subspace;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::rationals(), FieldSpec::prime_field(5).unwrap()]
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../sheaftree/fixtures")
        .join(name)
}

fn run_binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sheaftree"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
    )
}

#[test]
fn criterion_1_euler_identity() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..500u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0100_0000 + i);
        let tree = random_tree(&mut rng, 12);
        let s = random_sheaf(&mut rng, &tree, field, 3);
        let (lhs, rhs) = s.euler_check();
        assert_eq!(lhs, rhs, "euler identity failed on instance {i}");
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(checked >= 500);
    assert!(
        elapsed.as_secs() < 30,
        "euler corpus exceeded the 30 s budget: {elapsed:?}"
    );
    println!("ACCEPTANCE 1 (euler identity, {checked} instances, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_elliptic_cohomology() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..500u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0100_0000 + i); // the same corpus as criterion 1
        let tree = random_tree(&mut rng, 12);
        let s = random_sheaf(&mut rng, &tree, field, 3);
        let ell = elliptic_subsheaf(&s);
        let expected: usize = ell.vsub.iter().map(Subspace::dim).sum();
        let (ell_sheaf, _) = elliptic_as_sheaf(&s).expect("elliptic family is closed");
        let coh = ell_sheaf.cohomology();
        assert_eq!(coh.h0_dim, expected, "H0 of the elliptic subsheaf, instance {i}");
        assert_eq!(coh.h1_dim, 0, "H1 of the elliptic subsheaf, instance {i}");
        checked += 1;
    }
    println!(
        "ACCEPTANCE 2 (elliptic H0 = sum of stalk parts and H1 = 0, {checked} instances, {:?}): PASS",
        start.elapsed()
    );
}

#[test]
fn criterion_3_unifacial_vanishing() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..300u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0300_0000 + i);
        let tree = random_tree(&mut rng, 12);
        let s = random_no_elliptic_sheaf(&mut rng, &tree, field, 3);
        let u = unifacial_data(&s).expect("elliptic part vanishes by construction");
        let rt = build_r_t(&s, &u).expect("R/T construction");
        let coh = rt.suni.cohomology();
        assert_eq!(coh.h1_dim, 0, "H1(S^uni) != 0 on instance {i}");
        let t_total: usize = rt.t_sheaf.edims().iter().sum();
        assert_eq!(coh.h0_dim, t_total, "dim H0(S^uni) != sum dim T_e on instance {i}");
        let les = les_connecting(&rt.ses).expect("LES of T -> R -> S^uni");
        assert!(les.is_exact(), "T/R/S^uni LES not exact on instance {i}");
        assert_eq!(les.delta.rows(), les.delta.cols(), "delta not square on instance {i}");
        assert!(les.delta.is_invertible(), "delta not invertible on instance {i}");
        checked += 1;
    }
    println!(
        "ACCEPTANCE 3 (H1(S^uni) = 0, dim H0(S^uni) = sum T, delta bijective, {checked} instances, {:?}): PASS",
        start.elapsed()
    );
}

#[test]
fn criterion_4_multifacial_vanishing() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..300u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0400_0000 + i);
        let tree = random_tree(&mut rng, 12);
        let s = random_multifacial_sheaf(&mut rng, &tree, field, 3);
        assert_eq!(s.h0_dim(), 0, "multifacial sheaf with H0 != 0 on instance {i}");
        // star blocks: build_r_t verifies each block is square invertible
        let u = unifacial_data(&s).expect("multifacial implies no elliptic part");
        build_r_t(&s, &u).expect("star blocks of R");
        checked += 1;
    }
    // the star-block assertion with nonzero unifacial data, on the
    // elliptic-free corpus of criterion 3
    for i in 0..300u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0300_0000 + i);
        let tree = random_tree(&mut rng, 12);
        let s = random_no_elliptic_sheaf(&mut rng, &tree, field, 3);
        let u = unifacial_data(&s).expect("elliptic part vanishes");
        build_r_t(&s, &u).expect("star blocks of R");
    }
    println!(
        "ACCEPTANCE 4 (multifacial H0 = 0 and invertible star blocks, {checked}+300 instances, {:?}): PASS",
        start.elapsed()
    );
}

fn matrix_from_json(field: FieldSpec, v: &Value) -> Matrix {
    let rows = v["rows"].as_u64().unwrap() as usize;
    let cols = v["cols"].as_u64().unwrap() as usize;
    let entries: Vec<_> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| field.parse_scalar(s.as_str().unwrap()).unwrap())
        .collect();
    Matrix::new(rows, cols, field, entries).unwrap()
}

#[test]
fn criterion_5_theorem_end_to_end() {
    let start = Instant::now();
    let corpus = [
        ("fix_edge.json", "EdgeInduced"),
        ("fix_star3_ell.json", "VertexInduced"),
        ("fix_star3_c3.json", "VertexInduced"),
        ("fix_star4_d4.json", "VertexInduced"),
        ("fix_path3_recursed.json", "VertexInduced"),
    ];
    let q = FieldSpec::rationals();
    for (name, expected_variant) in corpus {
        let path = fixture(name);
        let (code, stdout) = run_binary(&["decompose", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: expected exit 0");
        let report: Value = serde_json::from_str(&stdout).expect("report is JSON");
        let results = &report["results"];
        assert_eq!(
            results["decomposition"]["variant"].as_str().unwrap(),
            expected_variant,
            "{name}"
        );
        // re-verify the serialized certificate: the intertwiner equation
        // must hold exactly for every group element, with det != 0
        let cert = &results["certificate"];
        let a = matrix_from_json(q, &cert["intertwiner"]);
        assert!(a.is_invertible(), "{name}: intertwiner not invertible");
        let induced = cert["induced"]["matrices"].as_object().unwrap();
        let h0 = cert["h0_rep"]["matrices"].as_object().unwrap();
        assert_eq!(induced.len(), h0.len());
        for (g, ind_m) in induced {
            let ind_m = matrix_from_json(q, ind_m);
            let h0_m = matrix_from_json(q, &h0[g]);
            assert_eq!(ind_m.mul(&a), a.mul(&h0_m), "{name}: equation fails at element {g}");
        }
        let det = q.parse_scalar(cert["determinant"].as_str().unwrap()).unwrap();
        assert!(!det.is_zero(), "{name}: zero determinant");
    }
    // the recursed fixture's trace must include a quotient step
    let (_, stdout) = run_binary(&["decompose", fixture("fix_path3_recursed.json").to_str().unwrap()]);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let trace: Vec<&str> = report["results"]["decomposition"]["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(trace.contains(&"QuotientRecursed"), "trace: {trace:?}");

    // in-process verification of the same corpus
    for es in [
        fx::fix_edge(),
        fx::fix_star3_ell(),
        fx::fix_star3_c3(),
        fx::fix_star4_d4(),
        fx::fix_path3_recursed(),
    ] {
        let result = induction_decompose(&es).expect("decomposition succeeds");
        let cert = verify_decomposition(&es, &result).expect("certificate exists");
        for &g in cert.h0_rep.elements() {
            assert_eq!(
                cert.induced.rho(g).mul(&cert.intertwiner),
                cert.intertwiner.mul(cert.h0_rep.rho(g))
            );
        }
        assert!(!cert.determinant.is_zero());
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "end-to-end corpus exceeded the 60 s budget: {elapsed:?}"
    );
    println!("ACCEPTANCE 5 (certified decompositions on the fixture corpus, {elapsed:?}): PASS");
}

#[test]
fn criterion_6_coboundary_equivariance() {
    let start = Instant::now();
    let mut observable_mutations = 0;
    for entry in catalog() {
        for (j, field) in fields().into_iter().enumerate() {
            for round in 0..3u64 {
                let mut rng = Rng::new(0x0600_0000 + round + j as u64 * 31);
                let es = random_equivariant(&mut rng, &entry, field, 3);
                es.check_coboundary_equivariance(true)
                    .unwrap_or_else(|e| panic!("{} with sign: {e}", entry.name));
                // the mutation: dropping the sign must break equivariance
                // exactly on the instances where an orientation reversal
                // acts on a nonzero edge stalk
                if es.check_coboundary_equivariance(false).is_err() {
                    observable_mutations += 1;
                }
            }
        }
    }
    // the mutation must actually be observable somewhere in the catalog
    let es = fx::fix_star2_c2();
    es.check_coboundary_equivariance(true).unwrap();
    assert!(
        es.check_coboundary_equivariance(false).is_err(),
        "dropping the orientation sign went undetected on the sign-observable fixture"
    );
    assert!(observable_mutations > 0, "no catalog instance exposed the sign mutation");
    println!(
        "ACCEPTANCE 6 (coboundary equivariance with the orientation sign; {observable_mutations} catalog mutations detected, {:?}): PASS",
        start.elapsed()
    );
}

#[test]
fn criterion_7_les_exactness() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..200u64 {
        let field = fields()[(i % 2) as usize];
        let mut rng = Rng::new(0x0700_0000 + i);
        let tree = random_tree(&mut rng, 12);
        let s = random_sheaf(&mut rng, &tree, field, 3);
        let sub = random_subsheaf(&mut rng, &s);
        let (a, incl) = subsheaf_inclusion(&s, &sub).expect("closed by construction");
        let q = build_quotient(&s, &sub).expect("quotient");
        let ses = ShortExactSeq::new(a, s.clone(), q.sheaf, incl, q.proj).expect("cellwise exact");
        let report = les_connecting(&ses).expect("LES computes");
        assert!(
            report.is_exact(),
            "six-term sequence not exact on instance {i}: {:?} dims {:?}",
            report.exact_at,
            report.dims
        );
        checked += 1;
    }
    println!(
        "ACCEPTANCE 7 (six-term LES exact on {checked} random subsheaf inclusions, {:?}): PASS",
        start.elapsed()
    );
}

#[test]
fn criterion_8_negative_path() {
    let start = Instant::now();
    let path = fixture("fix_edge_reducible.json");
    let (code, stdout) = run_binary(&["decompose", path.to_str().unwrap()]);
    assert_eq!(code, 2, "reducible instance must exit 2");
    let report: Value = serde_json::from_str(&stdout).expect("report is JSON");
    let witness = &report["results"]["hypothesis_evidence"]["witness"];
    let q = FieldSpec::rationals();
    let dim = witness["dim"].as_u64().unwrap() as usize;
    let ambient = witness["ambient_dim"].as_u64().unwrap() as usize;
    assert!(dim > 0 && dim < ambient, "witness must be proper and nonzero");
    let vectors: Vec<Vec<_>> = witness["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|s| q.parse_scalar(s.as_str().unwrap()).unwrap())
                .collect()
        })
        .collect();
    let subspace = Subspace::from_vectors(ambient, q, &vectors);
    // the witness is verified invariant against a fresh H0 representation
    let es = fx::fix_edge_reducible();
    let rho = es.rep_on_h0().unwrap();
    assert_eq!(rho.dim(), ambient);
    assert!(
        is_invariant_subspace(&rho, &subspace),
        "reported witness is not invariant"
    );
    println!(
        "ACCEPTANCE 8 (reducible H0 exits 2 with a verified invariant witness, {:?}): PASS",
        start.elapsed()
    );
}
