use num_traits::Zero;
use proptest::prelude::*;

use sl2branch::exact::{frac, int, parse_scalar, format_scalar, BivariatePolynomial, ComplexExact, ExactMatrix, ExactScalar, Var};
use sl2branch::fences::{fence_region, fusion_chamber_of, sign_re, FenceSpec, FusionChamber};
use sl2branch::fusion::{c_bruteforce, c_closed_form, g_function};
use sl2branch::o4o3::{c_big_closed_form, canonical_o3, canonical_o4, delta_eps_of, param_map, param_map_inverse};
use sl2branch::rankin_cohen::rc_operator;
use sl2branch::sl2::pieri_multiplicity;
use sl2branch::verma::{verma_hom_dim, verma_x_block_from_models, verma_x_matrix};
use sl2branch::Sign;

fn small_rational() -> impl Strategy<Value = ExactScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn gaussian() -> impl Strategy<Value = ComplexExact> {
    (small_rational(), small_rational()).prop_map(|(re, im)| ComplexExact::new(re, im))
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| ExactMatrix::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

fn bivariate() -> impl Strategy<Value = BivariatePolynomial> {
    proptest::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = BivariatePolynomial::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, int(c));
        }
        p
    })
}

fn sum(a: &BivariatePolynomial, b: &BivariatePolynomial) -> BivariatePolynomial {
    let mut out = a.clone();
    for ((i, j), c) in b.terms() {
        out.add_term(i, j, c.clone());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_width(m in matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn derivative_obeys_leibniz(p in bivariate(), q in bivariate(), var in prop_oneof![Just(Var::Z), Just(Var::W)]) {
        let lhs = (&p * &q).partial_derivative(var);
        let rhs = sum(&(&p.partial_derivative(var) * &q), &(&p * &q.partial_derivative(var)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_restriction_is_multiplicative(p in bivariate(), q in bivariate()) {
        prop_assert_eq!((&p * &q).restrict_diagonal(), &p.restrict_diagonal() * &q.restrict_diagonal());
    }

    #[test]
    fn scalar_text_round_trips(x in small_rational()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn complex_text_round_trips(z in gaussian()) {
        prop_assert_eq!(ComplexExact::parse(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn fusion_chambers_partition_the_quadrant(l1 in 1i64..=40, l2 in 1i64..=40, l3 in 1i64..=40) {
        let holding: Vec<FusionChamber> = FusionChamber::ALL.into_iter().filter(|c| c.holds(l1, l2, l3)).collect();
        prop_assert_eq!(holding.len(), 1);
        prop_assert_eq!(fusion_chamber_of(l1, l2, l3), Some(holding[0]));
    }

    #[test]
    fn pieri_indicator_is_odd_northeast(l1 in 1i64..=10, l2 in 1i64..=10, l3 in 1i64..=10) {
        let mult = pieri_multiplicity((l1 - 1) as u32, (l2 - 1) as u32, (l3 - 1) as u32);
        prop_assert_eq!(mult == 1, fusion_chamber_of(l1, l2, l3) == Some(FusionChamber::OddNorthEast));
    }

    #[test]
    fn fence_region_holds_base_and_keeps_fence_signs(
        x1 in -6i64..=6, x2 in -6i64..=6, mu in -6i64..=6, half in any::<bool>(),
    ) {
        let shift = if half { frac(1, 2) } else { ExactScalar::zero() };
        let c = |n: i64| ComplexExact::real(int(n) + &shift);
        let spec = match FenceSpec::new(c(x1), c(x2), ComplexExact::from_int(mu)) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let region = fence_region(&spec);
        prop_assert_eq!(region.contains(spec.xi1(), spec.xi2()), Ok(true));
        let value = |a: Sign, b: Sign, l1: &ComplexExact, l2: &ComplexExact| {
            sign_re(&(&(&l1.scale(&a.scalar()) + &l2.scale(&b.scalar())) + spec.mu()))
        };
        for (l1, l2) in region.points_in(-6, 6) {
            for (a, b) in Sign::pairs() {
                if spec.is_active(a, b) {
                    prop_assert_eq!(value(a, b, &l1, &l2), value(a, b, spec.xi1(), spec.xi2()));
                }
            }
        }
    }

    #[test]
    fn o4_canonical_form_is_idempotent_and_orbit_constant(l1 in gaussian(), l2 in gaussian()) {
        let c = canonical_o4(&l1, &l2);
        prop_assert_eq!(canonical_o4(&c.0, &c.1), c.clone());
        prop_assert_eq!(canonical_o4(&l2, &l1), c.clone());
        prop_assert_eq!(canonical_o4(&-&l1, &-&l2), c.clone());
        prop_assert_eq!(canonical_o4(&-&l2, &-&l1), c);
    }

    #[test]
    fn o3_canonical_form_is_idempotent_and_orbit_constant(nu in gaussian()) {
        let c = canonical_o3(&nu);
        prop_assert_eq!(canonical_o3(&c), c.clone());
        prop_assert_eq!(canonical_o3(&-&nu), c);
    }

    #[test]
    fn param_map_inverts(l1 in gaussian(), l2 in gaussian(), nu in gaussian()) {
        let (a, b, c) = param_map(&l1, &l2, &nu);
        prop_assert_eq!(param_map_inverse(&a, &b, &c), (l1, l2, nu));
    }

    #[test]
    fn o4_constant_matches_fusion_constant(l1 in gaussian(), l2 in gaussian(), nu in gaussian(), i in 1u8..=2, kappa in sign()) {
        let (lp, lpp, lppp) = param_map(&l1, &l2, &nu);
        let (d, e) = delta_eps_of(i, kappa).unwrap();
        let big = c_big_closed_form(&l1, &l2, &nu, i, kappa);
        let small = c_closed_form(&lp, &lpp, &lppp, d, e);
        match (big, small) {
            (Ok(b), Ok(s)) => prop_assert_eq!(b, s),
            (b, s) => prop_assert!(b.is_err() && s.is_err()),
        }
    }

    #[test]
    fn closed_form_against_g_function(m in 0i64..=12, n in 0i64..=12, k in 0i64..=24, d in sign(), e in sign()) {
        let c = |x: i64| ComplexExact::from_int(x);
        let closed = c_closed_form(&c(m + 1), &c(n + 1), &c(k + 1), d, e).unwrap();
        let g = g_function(m, n, k, d, e) / int(8 * (m + 1) * (n + 1));
        let expected = if d == e { g } else { -g };
        prop_assert_eq!(closed, ComplexExact::real(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bruteforce_constant_matches_g_function((m, n, l) in (0u32..=5, 0u32..=5).prop_flat_map(|(m, n)| (Just(m), Just(n), 0..=m.min(n))), d in sign(), e in sign()) {
        let k = (m + n - 2 * l) as i64;
        let c = c_bruteforce(m, n, l, d, e).unwrap();
        prop_assert_eq!(c * int(8 * (m as i64 + 1) * (n as i64 + 1)), g_function(m as i64, n as i64, k, d, e));
    }

    #[test]
    fn rankin_cohen_is_equivariant((m, n, l) in (0u32..=8, 0u32..=8).prop_flat_map(|(m, n)| (Just(m), Just(n), 0..=m.min(n)))) {
        prop_assert!(rc_operator(m, n, l).unwrap().is_equivariant());
    }

    #[test]
    fn verma_entries_match_truncated_models(a in -8i64..=8, b in -8i64..=8, c in -8i64..=8) {
        match verma_x_matrix(a, b, c) {
            Some((_, x)) => prop_assert_eq!(verma_x_block_from_models(a, b, c), Some(x)),
            None => prop_assert!((a + b - c) < 0 || (a + b - c) % 2 != 0),
        }
        let dim = verma_hom_dim(a, b, c);
        let compatible = a + b - c >= 0 && (a + b - c) % 2 == 0;
        prop_assert!(dim <= 2);
        prop_assert_eq!(dim >= 1, compatible);
    }
}
