mod common;

use common::{is_cocycle, rat, slot, Dense};
use filiform_core::cohomology::{differential2, z02_basis, z02_restricted, Cochain2, Cochain3};
use filiform_core::deformation::*;
use filiform_core::families::{psi_ks, rho_ks, varrho_ij};
use filiform_core::{canonical_triples, BasisElement, Rational, SuperAlgebra, SuperVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use BasisElement::{X, Y};

fn x(i: usize) -> SuperVector {
    SuperVector::basis(X(i))
}

fn y(i: usize) -> SuperVector {
    SuperVector::basis(Y(i))
}

fn negated(c: &Cochain3) -> Vec<SuperVector> {
    c.iter().map(|(_, v)| -v).collect()
}

#[test]
fn order_zero_is_jacobi() {
    let d = Deformation::new(SuperAlgebra::model(3, 2), vec![]).unwrap();
    assert!(deformation_residual(&d, 0).unwrap().is_zero());
    assert!(deformation_residual(&d, 1).is_err());
    let broken = SuperAlgebra::model(3, 2).with_bracket(X(1), X(2), x(1)).unwrap();
    let d = Deformation::new(broken, vec![]).unwrap();
    assert!(!deformation_residual(&d, 0).unwrap().is_zero());
}

#[test]
fn order_one_is_minus_the_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, m) in [(3, 2), (4, 3), (2, 2)] {
        let a = SuperAlgebra::model(n, m);
        for _ in 0..10 {
            let phi = Cochain2::random(n, m, &mut rng, 0.2);
            let d = Deformation::new(a.clone(), vec![phi.clone()]).unwrap();
            let r = deformation_residual(&d, 1).unwrap();
            let dphi = differential2(&a, &phi).unwrap();
            assert_eq!(r.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), negated(&dphi));
        }
    }
}

#[test]
fn order_two_against_dense_jacobiator() {
    let nu1 = rho_ks(3, 2, 1, 1).unwrap();
    let d = Deformation::new(SuperAlgebra::model(3, 2), vec![nu1.clone(), Cochain2::zero(3, 2)]).unwrap();
    let r = deformation_residual(&d, 2).unwrap();
    assert_eq!(r, nr_square(&nu1));
    // The t^2 coefficient of Jac(mu + t nu1) is Jac(nu1).
    let dense = Dense::from_cochain(&nu1);
    let jac = dense.jacobiator();
    let dim = dense.dim;
    for t in canonical_triples(3, 2) {
        let [a, b, c] = t.map(|e| slot(3, e));
        let v = r.get(&t);
        for k in 0..dim {
            let expected = jac[((a * dim + b) * dim + c) * dim + k];
            let e = filiform_core::SuperAlgebra::model(3, 2).element(k);
            assert_eq!(rat(&v.coeff(e)), expected, "{t:?} component {e}");
        }
    }
    // nu1 o nu1 vanishes: [X1,[X1,Y1]] pairs only with X-values.
    assert!(r.is_zero());
}

#[test]
fn order_two_nonzero_square() {
    let mut nu1 = Cochain2::zero(3, 1).with(X(1), X(2), x(1)).unwrap();
    nu1.set(X(1), X(3), x(2)).unwrap();
    let sq = nr_square(&nu1);
    assert!(!sq.is_zero());
    let dense = Dense::from_cochain(&nu1);
    assert!(!dense.is_lie());
}

#[test]
fn first_order_examples() {
    assert!(check_first_order(&SuperAlgebra::model(3, 2), &Cochain2::zero(3, 2)).unwrap());
    let v = varrho_ij(4, 3, 1, 2).unwrap();
    assert!(check_first_order(&SuperAlgebra::model(4, 3), &v).unwrap());
    assert!(is_cocycle(&Dense::model(4, 3), &v));
    let b = Cochain2::zero(3, 2).with(Y(1), Y(1), x(1)).unwrap();
    assert!(!check_first_order(&SuperAlgebra::model(3, 2), &b).unwrap());
}

#[test]
fn applying_cocycles() {
    let l = SuperAlgebra::model(3, 2);
    let same = apply_cocycle(&l, &Cochain2::zero(3, 2)).unwrap();
    assert_eq!(same.algebra, l);
    assert!(same.is_lie());

    let psi = psi_ks(3, 1, 3).unwrap();
    let p = apply_cocycle(&SuperAlgebra::model(3, 0), &psi).unwrap();
    assert_eq!(p.algebra.bracket_basis(X(1), X(2)), &x(3));
    assert_eq!(p.is_lie(), nr_square(&psi).is_zero());
    assert!(p.is_lie());
    assert!(p.algebra.is_filiform());

    // varrho_{1,1} is nonzero on X0, which the construction excludes.
    let mut phi = rho_ks(3, 2, 1, 1).unwrap();
    phi.add_scaled(&Rational::one(), &varrho_ij(3, 2, 1, 1).unwrap());
    assert!(apply_cocycle(&l, &phi).is_err());
    let hits_x0 = Cochain2::zero(3, 2).with(X(1), X(2), x(0)).unwrap();
    assert!(apply_cocycle(&l, &hits_x0).is_err());
}

#[test]
fn rho_perturbations_and_filiformity() {
    let l = SuperAlgebra::model(3, 2);
    let p = apply_cocycle(&l, &rho_ks(3, 2, 1, 1).unwrap()).unwrap();
    assert!(p.is_lie());
    // [X1, Y1] = Y1 makes ad X1 non-nilpotent on G1.
    assert_eq!(p.algebra.super_nilindex(), None);
    let p = apply_cocycle(&l, &rho_ks(3, 2, 1, 2).unwrap()).unwrap();
    assert!(p.is_lie());
    assert!(p.algebra.is_filiform());
}

/// Cocycles of `L_{n,m}` vanishing on `X0` and avoiding `X0`.
fn admissible_cocycles(n: usize, m: usize) -> Vec<Cochain2> {
    z02_restricted(&SuperAlgebra::model(n, m), |c| c.target != X(0) && c.arguments().0 != X(0)).unwrap().vectors()
}

#[test]
fn jacobi_of_sum_is_the_quadratic_term() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, m) in [(3, 2), (4, 2), (3, 3)] {
        let basis = admissible_cocycles(n, m);
        let l = SuperAlgebra::model(n, m);
        for _ in 0..25 {
            let mut phi = Cochain2::zero(n, m);
            for b in &basis {
                if rng.gen_bool(0.3) {
                    phi.add_scaled(&Rational::from_integer(rng.gen_range(-2..=2)), b);
                }
            }
            let p = apply_cocycle(&l, &phi).unwrap();
            assert_eq!(p.is_lie(), nr_square(&phi).is_zero());
        }
    }
}

#[test]
fn filiform_perturbations_are_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (n, m) = (4, 2);
    let l = SuperAlgebra::model(n, m);
    let z = z02_basis(&l).unwrap();
    let mut seen = 0;
    for _ in 0..400 {
        // one or two filtration-raising values
        let mut phi = Cochain2::zero(n, m);
        for _ in 0..rng.gen_range(1..=2) {
            let a = rng.gen_range(1..n);
            let b = rng.gen_range(a + 1..=n);
            let t = rng.gen_range((a + b + 1).min(n)..=n);
            phi.set(X(a), X(b), SuperVector::term(X(t), Rational::from_integer(rng.gen_range(-2..=2)))).unwrap();
        }
        if rng.gen_bool(0.5) {
            let a = rng.gen_range(1..=n);
            if a < m {
                phi.set(X(a), Y(1), y(a + 1)).unwrap();
            }
        }
        let p = apply_cocycle(&l, &phi).unwrap();
        let constraints = check_filiform_constraints(n, m, &phi).unwrap();
        if p.is_lie() && constraints.passed() && p.algebra.is_filiform() {
            seen += 1;
            assert!(z.contains(&phi), "{phi:?}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn filiform_constraint_examples() {
    let zero = check_filiform_constraints(4, 2, &Cochain2::zero(4, 2)).unwrap();
    assert!(zero.passed());
    assert_eq!(zero.alpha, Some(Rational::zero()));

    let bad = Cochain2::zero(4, 2).with(X(0), X(1), x(3)).unwrap();
    let r = check_filiform_constraints(4, 2, &bad).unwrap();
    assert!(!r.checks[0].passed);

    let psi = psi_ks(4, 1, 4).unwrap().with_odd_dimension(2).unwrap();
    let r = check_filiform_constraints(4, 2, &psi).unwrap();
    assert!(r.passed());
    assert_eq!(r.alpha, Some(Rational::zero()));

    let diag = Cochain2::zero(4, 0).with(X(1), X(3), x(4)).unwrap();
    let r = check_filiform_constraints(4, 0, &diag).unwrap();
    assert!(!r.checks[2].passed);
    assert_eq!(r.alpha, None);

    let mut odd_n = Cochain2::zero(5, 0).with(X(1), X(4), x(5)).unwrap();
    odd_n.set(X(2), X(3), -x(5)).unwrap();
    let r = check_filiform_constraints(5, 0, &odd_n).unwrap();
    assert!(r.passed());
    assert_eq!(r.alpha, Some(Rational::from_integer(-1)));

    let low = Cochain2::zero(3, 2).with(X(1), Y(1), y(1)).unwrap();
    let r = check_filiform_constraints(3, 2, &low).unwrap();
    assert!(!r.checks[3].passed);
    let low_even = Cochain2::zero(4, 0).with(X(1), X(2), x(3)).unwrap();
    assert!(!check_filiform_constraints(4, 0, &low_even).unwrap().checks[1].passed);
}

#[test]
fn condition_n_examples() {
    for (n, m) in [(3, 2), (5, 4), (2, 1)] {
        let d = Deformation::new(SuperAlgebra::model(n, m), vec![]).unwrap();
        assert!(check_condition_n(&d, 3));
    }
    let nu1 = Cochain2::zero(3, 1).with(X(1), X(2), x(1)).unwrap();
    let d = Deformation::new(SuperAlgebra::abelian(3, 1), vec![nu1]).unwrap();
    assert!(check_condition_n(&d, 1));
    assert!(!check_condition_n(&d, 3));

    let d = Deformation::new(SuperAlgebra::model(3, 2), vec![varrho_ij(3, 2, 1, 1).unwrap()]).unwrap();
    // nu_t(X0, nu_t(X0, Y1)) = t Y2 + t^2 Y1
    assert!(check_condition_n(&d, 0));
    assert!(!check_condition_n(&d, 1));

    let psi = psi_ks(3, 1, 3).unwrap().with_odd_dimension(2).unwrap();
    let d = Deformation::new(SuperAlgebra::model(3, 2), vec![psi]).unwrap();
    assert!(check_condition_n(&d, 6));
}

#[test]
fn report_for_a_filiform_direction() {
    let r = analyze(3, 2, &rho_ks(3, 2, 1, 2).unwrap(), 3).unwrap();
    assert!(r.jacobi && r.first_order && r.second_order && r.condition_n);
    assert_eq!(r.nilindex, Some((3, 2)));
    let r = analyze(3, 2, &rho_ks(3, 2, 1, 1).unwrap(), 3).unwrap();
    assert!(r.jacobi && !r.condition_n);
    assert_eq!(r.nilindex, None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn first_order_residual_iff_cocycle(n in 1usize..=4, m in 0usize..=4, seed in any::<u64>(), sparse in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SuperAlgebra::model(n, m);
        let phi = if sparse {
            Cochain2::random(n, m, &mut rng, 0.05)
        } else {
            let basis = z02_basis(&a).unwrap().vectors();
            let mut c = Cochain2::zero(n, m);
            for b in &basis {
                c.add_scaled(&Rational::from_integer(rng.gen_range(-2..=2)), b);
            }
            c
        };
        let d = Deformation::new(a.clone(), vec![phi.clone()]).unwrap();
        let r = deformation_residual(&d, 1).unwrap();
        prop_assert_eq!(r.is_zero(), check_first_order(&a, &phi).unwrap());
        prop_assert_eq!(r.is_zero(), z02_basis(&a).unwrap().contains(&phi));
    }
}
