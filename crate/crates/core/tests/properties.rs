mod common;

use common::*;
use haargap::cotlar_stein::{operator_norm, MatrixFamily};
use haargap::entropy::{
    component_entropy_cap, conjectured_bound, dispersive_exponent, entropy_lower_bound,
    haar_entropy, lyapunov_spectrum, DispersiveQuery,
};
use haargap::supports::{enumerate_symmetric_closed, SupportSet};
use haargap::{CartanElement, Rational, RootSystem};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn direction(n: usize) -> impl Strategy<Value = CartanElement> {
    prop::collection::vec((-30i64..=30, 1i64..=8), n - 1).prop_map(move |parts| {
        let mut coords: Vec<Rational> = parts.into_iter().map(|(p, q)| r(p, q)).collect();
        let s: Rational = coords.iter().sum();
        coords.push(-s);
        CartanElement::new(coords).unwrap()
    })
}

fn direction_and_perm() -> impl Strategy<Value = (CartanElement, Vec<usize>)> {
    (3usize..=5).prop_flat_map(|n| {
        (
            direction(n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

fn positive_scalar() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=9).prop_map(|(p, q)| r(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weyl_invariance((x, perm) in direction_and_perm()) {
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let y = x.permuted(&perm);
        prop_assert_eq!(entropy_lower_bound(&rs, &y).unwrap(), entropy_lower_bound(&rs, &x).unwrap());
        prop_assert_eq!(haar_entropy(&rs, &y).unwrap(), haar_entropy(&rs, &x).unwrap());
    }

    #[test]
    fn roots_transform_with_the_weyl_group((x, perm) in direction_and_perm()) {
        // w sends e_k to e_{perm[k]}: (w·α)(w·X) = α(X)
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let y = x.permuted(&perm);
        for root in rs.roots() {
            let image = rs.index_of(perm[root.i], perm[root.j]).unwrap();
            prop_assert_eq!(rs.evaluate(image, &y).unwrap(), rs.evaluate_root(root, &x).unwrap());
        }
    }

    #[test]
    fn dominant_representative_is_idempotent((x, _) in direction_and_perm()) {
        let d = x.dominant_representative();
        prop_assert!(d.is_dominant());
        prop_assert_eq!(d.dominant_representative(), d.clone());
        prop_assert!(x.weyl_orbit().contains(&d));
    }

    #[test]
    fn positive_homogeneity((x, _) in direction_and_perm(), c in positive_scalar()) {
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let cx = x.scaled(&c);
        prop_assert_eq!(entropy_lower_bound(&rs, &cx).unwrap(), &c * entropy_lower_bound(&rs, &x).unwrap());
        prop_assert_eq!(haar_entropy(&rs, &cx).unwrap(), &c * haar_entropy(&rs, &x).unwrap());
        let pair = SupportSet::from_pairs(&rs, &[(0, 1)]).unwrap();
        prop_assert_eq!(
            component_entropy_cap(&rs, &pair, &cx).unwrap(),
            &c * component_entropy_cap(&rs, &pair, &x).unwrap()
        );
    }

    #[test]
    fn positivity_and_ruelle_pesin((x, _) in direction_and_perm()) {
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let lb = entropy_lower_bound(&rs, &x).unwrap();
        prop_assert!(lb <= haar_entropy(&rs, &x).unwrap());
        prop_assert_eq!(lb.clone(), lower_bound_oracle(x.coords()));
        if !x.is_zero() {
            let amax = rs.alpha_max(&x).unwrap();
            prop_assert!(amax.is_positive());
            prop_assert!(lb >= amax / r(2, 1));
        }
    }

    #[test]
    fn bridge_identity((x, _) in direction_and_perm()) {
        prop_assume!(!x.is_zero());
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let d = x.dominant_representative();
        let chi = lyapunov_spectrum(&rs, &d).unwrap().chi_max;
        let q = DispersiveQuery::new(chi.recip(), d.clone()).unwrap();
        prop_assert_eq!(dispersive_exponent(&q, &rs).unwrap() * chi, entropy_lower_bound(&rs, &d).unwrap());
    }

    #[test]
    fn caps_of_symmetric_supports((x, _) in direction_and_perm()) {
        let rs = RootSystem::type_a(x.dim()).unwrap();
        let neg = x.negated();
        for s in enumerate_symmetric_closed(&rs).unwrap() {
            prop_assert_eq!(
                component_entropy_cap(&rs, &s, &x).unwrap(),
                component_entropy_cap(&rs, &s, &neg).unwrap()
            );
        }
        prop_assert_eq!(
            component_entropy_cap(&rs, &SupportSet::full(&rs), &x).unwrap(),
            haar_entropy(&rs, &x).unwrap()
        );
        prop_assert!(component_entropy_cap(&rs, &SupportSet::empty(&rs), &x).unwrap().is_zero());
    }

    #[test]
    fn norm_scales_with_modulus(seed in any::<u64>(), rows in 1usize..=12, cols in 1usize..=12,
                                re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let m = MatrixFamily::random_gaussian(seed, 1, rows, cols).unwrap().members()[0].clone();
        let c = Complex64::new(re, im);
        let base = operator_norm(&m).unwrap();
        let scaled = operator_norm(&m.map(|z| z * c)).unwrap();
        prop_assert!((scaled - c.norm() * base).abs() <= 1e-9 * (c.norm() * base).max(1e-300));
        prop_assert!((base - svd_norm(&m)).abs() <= 1e-8 * base.max(1.0));
    }

    #[test]
    fn norm_triangle_inequality(seed in any::<u64>(), rows in 1usize..=16, cols in 1usize..=16) {
        let f = MatrixFamily::random_gaussian(seed, 2, rows, cols).unwrap();
        let (a, b) = (&f.members()[0], &f.members()[1]);
        let lhs = operator_norm(&(a + b)).unwrap();
        prop_assert!(lhs <= (operator_norm(a).unwrap() + operator_norm(b).unwrap()) * (1.0 + 1e-10));
    }
}

#[test]
fn sharpness_on_extremely_irregular_orbits() {
    for n in 2..=8 {
        let rs = RootSystem::type_a(n).unwrap();
        let orbit = CartanElement::extremely_irregular(n).weyl_orbit();
        assert_eq!(orbit.len(), n);
        for x in orbit {
            assert_eq!(
                entropy_lower_bound(&rs, &x).unwrap(),
                conjectured_bound(&rs, &x).unwrap(),
                "n={n} X={x}"
            );
        }
    }
}

#[test]
fn sum_of_positive_roots_is_two_rho() {
    for n in 2..=9 {
        let rs = RootSystem::type_a(n).unwrap();
        let mut sum = vec![Rational::zero(); n];
        for &a in rs.positive_roots() {
            for (s, v) in sum.iter_mut().zip(&rs.roots()[a].vector) {
                *s += v;
            }
        }
        let expected: Vec<Rational> = (1..=n as i64).map(|k| r(n as i64 + 1 - 2 * k, 1)).collect();
        assert_eq!(sum, expected);
    }
}

#[test]
fn addition_table_matches_vector_sums() {
    for n in 2..=6 {
        let rs = RootSystem::type_a(n).unwrap();
        for a in 0..rs.len() {
            for b in 0..rs.len() {
                let v: Vec<Rational> = rs.roots()[a]
                    .vector
                    .iter()
                    .zip(&rs.roots()[b].vector)
                    .map(|(x, y)| x + y)
                    .collect();
                let found = rs.roots().iter().position(|c| c.vector == v);
                assert_eq!(rs.sum(a, b), found, "n={n} a={a} b={b}");
            }
        }
    }
}
