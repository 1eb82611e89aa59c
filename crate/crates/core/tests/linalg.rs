use filiform_core::linalg::{inverse, kernel_basis, rank, rref, solve_affine, Rational, RationalMatrix, Subspace};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec((-3i64..=3, 1i64..=3), c), r).prop_map(move |rows| {
            let dense: Vec<Vec<Rational>> =
                rows.into_iter().map(|row| row.into_iter().map(|(p, q)| Rational::new(p, q)).collect()).collect();
            RationalMatrix::from_dense(c, &dense)
        })
    })
}

#[test]
fn hand_computed_rref() {
    let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 7], &[1, 2, 4]]);
    let (r, pivots) = rref(&m);
    assert_eq!(pivots, vec![0, 2]);
    assert_eq!(r.to_dense()[0], vec![Rational::from(1), Rational::from(2), Rational::zero()]);
    assert_eq!(kernel_basis(&m), vec![vec![Rational::from(-2), Rational::from(1), Rational::zero()]]);
}

#[test]
fn inconsistent_system() {
    let m = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
    assert!(solve_affine(&m, &[Rational::from(1), Rational::from(3)]).unwrap().is_none());
    let s = solve_affine(&m, &[Rational::from(1), Rational::from(2)]).unwrap().unwrap();
    assert_eq!(s.homogeneous.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(6, 7)) {
        let (r, pivots) = rref(&m);
        let (rr, pivots2) = rref(&r);
        prop_assert_eq!(pivots, pivots2);
        prop_assert_eq!(r.to_dense(), rr.to_dense());
    }

    #[test]
    fn rank_nullity_and_transpose(m in matrix(6, 7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in &k {
            prop_assert!(m.annihilates(v));
        }
    }

    #[test]
    fn row_space_is_preserved(m in matrix(6, 7)) {
        let (r, _) = rref(&m);
        prop_assert_eq!(Subspace::span(m.cols(), &m.to_dense()), Subspace::span(m.cols(), &r.to_dense()));
    }

    #[test]
    fn affine_solutions_solve(m in matrix(5, 6), x in proptest::collection::vec(-4i64..=4, 6)) {
        let x: Vec<Rational> = x.into_iter().take(m.cols()).map(Rational::from).collect();
        let b = m.mul_vec(&x);
        let s = solve_affine(&m, &b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&s.particular), b);
        prop_assert_eq!(s.homogeneous.len(), kernel_basis(&m).len());
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(5, 5).prop_filter("square", |m| m.rows() == m.cols())) {
        match inverse(&m) {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv).to_dense(), RationalMatrix::identity(m.rows()).to_dense());
                prop_assert_eq!(inv.mul(&m).to_dense(), RationalMatrix::identity(m.rows()).to_dense());
            }
            None => prop_assert!(rank(&m) < m.rows()),
        }
    }
}
