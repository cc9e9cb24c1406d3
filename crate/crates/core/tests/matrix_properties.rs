mod common;

use common::{arb_rep, dual, settings};
use proptest::prelude::*;
use vvmf_core::{
    direct_sum, mat_mul, mat_pow, parity_split, rank, snap_integer, tensor_kappa, validate,
    ComplexMatrix, Tolerance, C64,
};

fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        ComplexMatrix::new(n, n, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

/// B·C with B of size n×r and C of size r×n, small integer entries.
fn arb_low_rank() -> impl Strategy<Value = (ComplexMatrix, usize)> {
    (1usize..6, 0usize..4).prop_flat_map(|(n, r)| {
        let r = r.min(n);
        (
            prop::collection::vec(-3i32..=3, n * r),
            prop::collection::vec(-3i32..=3, r * n),
            Just(n),
            Just(r),
        )
            .prop_map(|(b, c, n, r)| {
                let b = ComplexMatrix::from_fn(n, r, |i, j| C64::new(b[i * r + j] as f64, 0.0));
                let c = ComplexMatrix::from_fn(r, n, |i, j| C64::new(0.0, c[i * n + j] as f64));
                (mat_mul(&b, &c).unwrap(), r)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn powers_add(m in (1usize..5).prop_flat_map(arb_matrix), a in 0u64..6, b in 0u64..6) {
        let lhs = mat_pow(&m, a + b).unwrap();
        let rhs = mat_mul(&mat_pow(&m, a).unwrap(), &mat_pow(&m, b).unwrap()).unwrap();
        let scale = 1.0 + lhs.max_abs();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn rank_ignores_row_order((m, r) in arb_low_rank(), seed in any::<u64>()) {
        let tol = Tolerance::default();
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        // a deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let k = rank(&m, tol);
        prop_assert!(k <= r);
        prop_assert_eq!(rank(&m.permute_rows(&perm), tol), k);
    }

    #[test]
    fn snapping_is_idempotent(n in -1_000_000i64..1_000_000, noise in -4e-10f64..4e-10) {
        let tol = Tolerance::default();
        let once = snap_integer(n as f64 + noise, tol).unwrap();
        prop_assert_eq!(once, n);
        prop_assert_eq!(snap_integer(once as f64, tol).unwrap(), once);
    }

    #[test]
    fn twists_compose(rep in arb_rep(), a in -20i64..20, b in -20i64..20) {
        let tol = settings().tol;
        let lhs = tensor_kappa(&tensor_kappa(&rep, a), b);
        let rhs = tensor_kappa(&rep, a + b);
        prop_assert!(lhs.s_image().approx_eq(rhs.s_image(), tol));
        prop_assert!(lhs.t_image().approx_eq(rhs.t_image(), tol));
        prop_assert!(validate(&lhs, tol, 4096, None).is_ok());
    }

    #[test]
    fn dual_of_sum_is_sum_of_duals(a in arb_rep(), b in arb_rep()) {
        let tol = settings().tol;
        let lhs = dual(&direct_sum(&a, &b));
        let rhs = direct_sum(&dual(&a), &dual(&b));
        prop_assert!(lhs.s_image().approx_eq(rhs.s_image(), tol));
        prop_assert!(lhs.t_image().approx_eq(rhs.t_image(), tol));
    }

    #[test]
    fn parity_parts_carry_the_traces(rep in arb_rep()) {
        let tol = settings().tol;
        let split = parity_split(&rep, tol).unwrap();
        prop_assert_eq!(split.even_part.degree() + split.odd_part.degree(), rep.degree());
        for (whole, e, o) in [
            (rep.s_image(), split.even_part.s_image(), split.odd_part.s_image()),
            (rep.t_image(), split.even_part.t_image(), split.odd_part.t_image()),
        ] {
            prop_assert!((whole.trace() - e.trace() - o.trace()).norm() < 1e-8);
        }
        let e2 = mat_mul(split.even_part.s_image(), split.even_part.s_image()).unwrap();
        prop_assert!(e2.approx_eq(&ComplexMatrix::identity(split.even_part.degree()), tol));
        let o2 = mat_mul(split.odd_part.s_image(), split.odd_part.s_image()).unwrap();
        prop_assert!(o2.approx_eq(&ComplexMatrix::identity(split.odd_part.degree()).scale(C64::new(-1.0, 0.0)), tol));
        prop_assert!(validate(&split.even_part, tol, 4096, None).is_ok());
        prop_assert!(validate(&split.odd_part, tol, 4096, None).is_ok());
    }
}
