//! Property tests for the exact linear algebra layer.

use proptest::prelude::*;
use sheaftree::field::{FieldSpec, Scalar};
use sheaftree::matrix::Matrix;
use sheaftree::subspace::Subspace;

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::rationals()),
        Just(FieldSpec::prime_field(2).unwrap()),
        Just(FieldSpec::prime_field(5).unwrap()),
        Just(FieldSpec::prime_field(97).unwrap()),
    ]
}

fn arb_matrix() -> impl Strategy<Value = Matrix> {
    (arb_field(), 0usize..5, 0usize..5).prop_flat_map(|(field, rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols)
            .prop_map(move |vals| Matrix::from_i64(rows, cols, field, &vals))
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in arb_matrix()) {
        let rank = m.rref().rank;
        let nullity = m.kernel_basis().dim();
        prop_assert_eq!(rank + nullity, m.cols());
    }

    #[test]
    fn rref_idempotent(m in arb_matrix()) {
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn kernel_vectors_annihilate(m in arb_matrix()) {
        let k = m.kernel_basis();
        for i in 0..k.dim() {
            let image = m.apply(&k.basis_vector(i));
            prop_assert!(image.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_is_exact(m in arb_matrix(), raw in proptest::collection::vec(-4i64..=4, 0..5)) {
        // build a consistent right-hand side from a random preimage
        let field = m.field();
        let x: Vec<Scalar> = (0..m.cols()).map(|i| {
            field.from_i64(raw.get(i).copied().unwrap_or(1))
        }).collect();
        let rhs = m.apply(&x);
        let sol = m.solve(&rhs).expect("consistent by construction");
        prop_assert_eq!(m.apply(&sol), rhs);
    }

    #[test]
    fn dimension_formula(
        field in arb_field(),
        ambient in 0usize..5,
        raw_a in proptest::collection::vec(-3i64..=3, 0..20),
        raw_b in proptest::collection::vec(-3i64..=3, 0..20),
    ) {
        let build = |raw: &[i64]| {
            let rows = if ambient == 0 { 0 } else { raw.len() / ambient.max(1) };
            let vectors: Vec<Vec<Scalar>> = (0..rows)
                .map(|r| (0..ambient).map(|c| field.from_i64(raw[r * ambient + c])).collect())
                .collect();
            Subspace::from_vectors(ambient, field, &vectors)
        };
        let a = build(&raw_a);
        let b = build(&raw_b);
        let sum = a.sum(&b).unwrap();
        let inter = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + inter.dim());
        prop_assert!(sum.contains_subspace(&a));
        prop_assert!(a.contains_subspace(&inter));
    }

    #[test]
    fn quotient_map_contract(
        field in arb_field(),
        ambient in 0usize..5,
        raw in proptest::collection::vec(-3i64..=3, 0..20),
    ) {
        let rows = if ambient == 0 { 0 } else { raw.len() / ambient.max(1) };
        let vectors: Vec<Vec<Scalar>> = (0..rows)
            .map(|r| (0..ambient).map(|c| field.from_i64(raw[r * ambient + c])).collect())
            .collect();
        let sub = Subspace::from_vectors(ambient, field, &vectors);
        let (proj, section) = sheaftree::subspace::quotient_map(ambient, &sub).unwrap();
        prop_assert_eq!(proj.rows(), ambient - sub.dim());
        prop_assert!(proj.mul(&section).is_identity());
        prop_assert_eq!(proj.kernel_basis(), sub);
    }
}

/// Over tiny prime fields, `intersect` agrees with brute-force
/// enumeration of the two spans.
#[test]
fn intersect_matches_bruteforce_over_small_fields() {
    for p in [2u64, 3, 5] {
        let field = FieldSpec::prime_field(p).unwrap();
        let mut seed = 0xfeedu64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for ambient in 1usize..=3 {
            for _ in 0..40 {
                let mk = |next: &mut dyn FnMut() -> i64| {
                    let rows = (next().unsigned_abs() as usize) % (ambient + 1);
                    let vectors: Vec<Vec<Scalar>> = (0..rows)
                        .map(|_| (0..ambient).map(|_| field.from_i64(next() % 7)).collect())
                        .collect();
                    Subspace::from_vectors(ambient, field, &vectors)
                };
                let a = mk(&mut next);
                let b = mk(&mut next);
                let fast = a.intersect(&b).unwrap();
                let slow = bruteforce_intersection(field, p, &a, &b);
                assert_eq!(fast, slow, "p={p} ambient={ambient}");
            }
        }
    }
}

fn enumerate_span(field: FieldSpec, p: u64, s: &Subspace) -> Vec<Vec<Scalar>> {
    let k = s.dim();
    let total = (p as usize).pow(k as u32);
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut v = vec![field.zero(); s.ambient_dim()];
        for i in 0..k {
            let c = field.from_i64((rem % p as usize) as i64);
            rem /= p as usize;
            for (j, b) in s.basis_vector(i).iter().enumerate() {
                v[j] = field.add(&v[j], &field.mul(&c, b));
            }
        }
        out.push(v);
    }
    out.sort_by_key(|v| format!("{v:?}"));
    out.dedup();
    out
}

fn bruteforce_intersection(field: FieldSpec, p: u64, a: &Subspace, b: &Subspace) -> Subspace {
    let in_b: Vec<Vec<Scalar>> = enumerate_span(field, p, b);
    let common: Vec<Vec<Scalar>> = enumerate_span(field, p, a)
        .into_iter()
        .filter(|v| in_b.contains(v))
        .collect();
    Subspace::from_vectors(a.ambient_dim(), field, &common)
}
