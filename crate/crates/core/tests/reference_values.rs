//! Frozen reference values. Where a value is not a quoted formula it is
//! recomputed here from an independent hand oracle before being pinned.

use num_traits::Zero;

use sl2branch::exact::{frac, int, BivariatePolynomial, ComplexExact, ExactMatrix, UnivariatePolynomial, Var};
use sl2branch::fences::{fence_membership, fusion_chamber_of, FenceSpec, FusionChamber};
use sl2branch::fusion::{bilinear_expansion, c_bruteforce, c_closed_form};
use sl2branch::o4o3::{c_big_closed_form, delta_eps_of, param_map, param_map_inverse};
use sl2branch::rankin_cohen::{gamma_form_coefficients, rc_coefficients};
use sl2branch::sl2::{spectral_projector, weight_functional, WeightModule};
use sl2branch::translation::{
    classify_xi, ktype_multiplicity_discrete, reconstruct_weights, translation_scalar_c2, translation_scalar_c3, TranslationDatum,
    XiChamber,
};
use sl2branch::verma::{fusion_lw_hom_dim, verma_hom_dim};
use sl2branch::Sign::{self, Minus, Plus};

fn c(n: i64) -> ComplexExact {
    ComplexExact::from_int(n)
}

fn cq(n: i64, d: i64) -> ComplexExact {
    ComplexExact::real(frac(n, d))
}

#[test]
fn kernel_of_row_minus_one_minus_one() {
    let m = ExactMatrix::from_i64(&[&[-1, -1]]).unwrap();
    let basis = m.kernel_basis();
    assert_eq!(basis.len(), 1);
    assert_eq!(&basis[0][0] + &basis[0][1], int(0));
    assert!(!basis[0][0].is_zero());
    assert_eq!(ExactMatrix::zeros(1, 2).kernel_basis().len(), 2);
    assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
}

#[test]
fn polynomial_examples() {
    let z = BivariatePolynomial::z();
    let w = BivariatePolynomial::w();
    let z3_minus_zw = &(&(&z * &z) * &z) - &(&z * &w);
    let expected = &(&(&z * &z) * &BivariatePolynomial::constant(int(3))) - &w;
    assert_eq!(z3_minus_zw.partial_derivative(Var::Z), expected);
    assert!(z.partial_derivative(Var::W).is_zero());

    let p = &(&(&(&z * &z) * &w) * &BivariatePolynomial::constant(int(2))) - &(&(&w * &w) * &w);
    assert_eq!(p.restrict_diagonal(), UnivariatePolynomial::monomial(3, int(1)));
    assert!((&z - &w).restrict_diagonal().is_zero());
}

#[test]
fn module_casimir_scalars() {
    assert_eq!(WeightModule::finite_irrep(1).unwrap().casimir_scalar(), Some(int(3)));
    let v2 = WeightModule::finite_irrep(2).unwrap();
    assert_eq!(v2.weights(), &[int(2), int(0), int(-2)]);
    assert_eq!(v2.casimir_scalar(), Some(int(8)));
    assert_eq!(WeightModule::adjoint_c3().casimir_scalar(), Some(int(8)));
}

#[test]
fn projection_fixes_top_vector_of_v1_tensor_c2() {
    let t = WeightModule::tensor(&WeightModule::finite_irrep(1).unwrap(), &WeightModule::natural_c2());
    let p = spectral_projector(&t.casimir(), &[int(8), int(0)], &int(8));
    let v = vec![int(1), int(0), int(0), int(0)];
    assert_eq!(p.apply(&v), v);
}

#[test]
fn weight_functionals() {
    let v2 = WeightModule::finite_irrep(2).unwrap();
    assert!(!weight_functional(&v2, &int(0)).unwrap().matrix().is_zero());
    assert!(weight_functional(&v2, &int(1)).unwrap().matrix().is_zero());
    let v0 = WeightModule::finite_irrep(0).unwrap();
    assert_eq!(weight_functional(&v0, &int(0)).unwrap().matrix(), &ExactMatrix::identity(1));
}

#[test]
fn c2_translation_scalars() {
    let s = |l, n, d, e| translation_scalar_c2(&TranslationDatum::new(c(l), c(n), d, e)).unwrap();
    assert_eq!(s(2, 1, Plus, Plus), c(1));
    assert_eq!(s(2, -1, Minus, Minus), c(0));
    assert_eq!(s(2, -1, Plus, Plus), cq(1, 2));
}

#[test]
fn c3_translation_scalars() {
    // ((lambda + delta)^2 - nu^2) / (4 lambda (lambda + delta)) with the values below.
    let s = |l, d, n| translation_scalar_c3(&c(l), d, &c(n)).unwrap();
    assert_eq!(s(2, Plus, 3), c(0));
    assert_eq!(s(2, Plus, 1), cq(2, 3));
    assert_eq!(s(3, Minus, 0), cq(1, 3));
}

#[test]
fn weights_by_translation() {
    assert_eq!(reconstruct_weights(0).unwrap(), vec![0]);
    assert_eq!(reconstruct_weights(2).unwrap(), vec![2, 0, -2]);
    assert_eq!(reconstruct_weights(5).unwrap(), vec![5, 3, 1, -1, -3, -5]);
}

#[test]
fn xi_chambers() {
    let k = |l, n| classify_xi(&c(l), &c(n), &c(1), &c(0)).unwrap();
    assert_eq!(k(3, 5), XiChamber::Even);
    assert_eq!(k(1, 2), XiChamber::OddUp);
    assert_eq!(k(4, 1), XiChamber::OddRight);
}

#[test]
fn discrete_series_ktypes() {
    assert_eq!(ktype_multiplicity_discrete(1, 0), 0);
    assert_eq!(ktype_multiplicity_discrete(1, 1), 0);
    assert_eq!(ktype_multiplicity_discrete(1, 2), 1);
    // 6 lies in 3 + 1 + 2N; a truncated lowest-weight model agrees.
    assert_eq!(ktype_multiplicity_discrete(3, 6), 1);
    let m = WeightModule::truncated_lowest_weight(&int(3), 20).unwrap();
    assert_eq!(m.weight_space(&int(6)).len(), 1);
}

#[test]
fn rankin_cohen_coefficients() {
    assert_eq!(rc_coefficients(3, 4, 0).unwrap(), vec![int(1)]);
    assert_eq!(gamma_form_coefficients(&int(2), &int(2), 0), vec![int(1)]);
    // Factorial form at m = n = 1, l = 1 is -d_z + d_w; the gamma form is its negative.
    assert_eq!(rc_coefficients(1, 1, 1).unwrap(), vec![int(-1), int(1)]);
    assert_eq!(gamma_form_coefficients(&int(2), &int(2), 1), vec![int(1), int(-1)]);
    let g = gamma_form_coefficients(&frac(1, 2), &int(2), 1);
    assert_eq!(g.len(), 2);
    assert!(g.iter().all(|x| !x.is_zero()));
}

/// g_{delta eps}(m, n; k) spelled out from the four products.
fn g_oracle(m: i64, n: i64, k: i64, d: Sign, e: Sign) -> i64 {
    match (d, e) {
        (Plus, Plus) => (m + n - k + 2) * (m + n + k + 4),
        (Plus, Minus) => (n - m + k) * (m - n + k + 2),
        (Minus, Plus) => (m - n + k) * (n - m + k + 2),
        (Minus, Minus) => (m + n - k) * (m + n + k + 2),
    }
}

#[test]
fn fusion_constants_at_one_one() {
    for (d, e, expected) in [(Plus, Plus, frac(1, 2)), (Plus, Minus, frac(1, 4)), (Minus, Minus, int(0))] {
        let c = c_bruteforce(1, 1, 0, d, e).unwrap();
        assert_eq!(c, expected);
        assert_eq!(c, frac(g_oracle(1, 1, 2, d, e), 32));
    }
}

#[test]
fn closed_form_values() {
    assert_eq!(c_closed_form(&c(2), &c(2), &c(3), Plus, Plus).unwrap(), cq(1, 2));
    assert_eq!(c_closed_form(&c(2), &c(2), &c(3), Plus, Minus).unwrap(), cq(-1, 4));
    assert_eq!(c_closed_form(&c(4), &c(7), &c(10), Minus, Minus).unwrap(), c(0));
}

#[test]
fn bilinear_expansion_constants() {
    let one = UnivariatePolynomial::constant(int(1));
    for (m, n) in [(0, 0), (2, 3), (4, 1)] {
        let pp = bilinear_expansion(Plus, Plus, &one, &one, m, n).unwrap();
        assert_eq!(pp, BivariatePolynomial::constant(int(m as i64 + n as i64 + 2)));
        assert!(bilinear_expansion(Minus, Minus, &one, &one, m, n).unwrap().is_zero());
    }
    // (+,-) with F = 1, G = w and m = n = 1: (z - w) m G' + (m+1) n F G = z - w + 2w = z + w.
    let w = UnivariatePolynomial::monomial(1, int(1));
    let got = bilinear_expansion(Plus, Minus, &one, &w, 1, 1).unwrap();
    assert_eq!(got, &BivariatePolynomial::z() + &BivariatePolynomial::w());
}

#[test]
fn verma_and_fusion_oracle_values() {
    assert_eq!(verma_hom_dim(0, 0, -2), 2);
    assert_eq!(verma_hom_dim(-1, -1, -4), 1);
    assert_eq!(verma_hom_dim(0, 0, -1), 0);
    assert_eq!(fusion_lw_hom_dim(1, 1, 3), 1);
    assert_eq!(fusion_lw_hom_dim(2, 2, 3), 0);
    assert_eq!(fusion_lw_hom_dim(1, 1, 5), 1);
}

#[test]
fn fence_membership_examples() {
    let third = FenceSpec::new(c(1), cq(1, 3), c(0)).unwrap();
    for (i, j) in [(0, 0), (2, 0), (4, 6)] {
        let (l1, l2) = (&c(1) + &c(i), &cq(1, 3) + &c(j));
        for (a, b) in Sign::pairs() {
            assert_eq!(fence_membership(&l1, &l2, &third, a, b), Ok(true));
        }
    }
    let spec = FenceSpec::new(c(3), c(2), c(-6)).unwrap();
    assert_eq!(fence_membership(&c(3), &c(2), &spec, Plus, Plus), Ok(true));
    assert_eq!(fence_membership(&c(5), &c(2), &spec, Plus, Plus), Ok(false));
}

#[test]
fn fusion_chamber_examples() {
    assert_eq!(fusion_chamber_of(2, 6, 3), Some(FusionChamber::OddUp));
    assert_eq!(fusion_chamber_of(2, 3, 3), Some(FusionChamber::Even));
    assert_eq!(fusion_chamber_of(1, 1, 3), Some(FusionChamber::OddSouthWest));
}

#[test]
fn o4o3_values() {
    assert_eq!(param_map(&cq(3, 2), &cq(1, 2), &c(1)), (c(2), c(1), c(2)));
    assert_eq!(param_map_inverse(&c(2), &c(1), &c(2)), (cq(3, 2), cq(1, 2), c(1)));
    assert!(param_map(&c(5), &c(5), &c(1)).1.is_zero());
    assert_eq!(delta_eps_of(1, Plus).unwrap(), (Plus, Plus));
    assert_eq!(delta_eps_of(2, Plus).unwrap(), (Plus, Minus));
    assert_eq!(delta_eps_of(1, Minus).unwrap(), (Minus, Minus));
    assert_eq!(delta_eps_of(2, Minus).unwrap(), (Minus, Plus));
    let big = c_big_closed_form(&cq(3, 2), &cq(1, 2), &c(1), 1, Plus).unwrap();
    assert_eq!(big, cq(3, 4));
    assert_eq!(big, c_closed_form(&c(2), &c(1), &c(2), Plus, Plus).unwrap());
    assert_eq!(c_big_closed_form(&cq(3, 2), &cq(1, 2), &c(1), 2, Plus).unwrap(), c(0));
}
