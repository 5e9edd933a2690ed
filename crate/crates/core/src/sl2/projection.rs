use std::collections::BTreeSet;

use num_traits::One;

use super::{Intertwiner, Sl2Error, Symmetry, WeightModule};
use crate::exact::{ExactMatrix, ExactScalar};

/// `prod_{s in nodes, s != target} (omega - s) / (target - s)`.
///
/// Repeated nodes contribute repeated factors. Primary projections use
/// distinct nodes; callers that need the raw polynomial (for instance when
/// two nodes collide at a special parameter) pass them as they are.
pub fn spectral_projector(omega: &ExactMatrix, nodes: &[ExactScalar], target: &ExactScalar) -> ExactMatrix {
    let n = omega.rows();
    let mut acc = ExactMatrix::identity(n);
    for s in nodes.iter().filter(|s| *s != target) {
        let shifted = omega - &ExactMatrix::scalar(n, s);
        let factor = shifted.scale(&(ExactScalar::one() / (target - s)));
        acc = &acc * &factor;
    }
    acc
}

/// Projection onto the `target` eigenspace of the Casimir element.
///
/// `spectrum` must list every Casimir eigenvalue of `m` (checked on interior
/// columns) without repetition.
pub fn primary_projection(
    m: &WeightModule,
    spectrum: &[ExactScalar],
    target: &ExactScalar,
) -> Result<Intertwiner, Sl2Error> {
    let mut seen = BTreeSet::new();
    for s in spectrum {
        if !seen.insert(s) {
            return Err(Sl2Error::RepeatedSpectrum(s.clone()));
        }
    }
    if !seen.contains(target) {
        return Err(Sl2Error::TargetAbsent(target.clone()));
    }
    let omega = m.casimir();
    let n = m.dim();
    let mut annihilator = ExactMatrix::identity(n);
    for s in spectrum {
        annihilator = &annihilator * &(&omega - &ExactMatrix::scalar(n, s));
    }
    if !annihilator.columns_are_zero(&m.interior(spectrum.len())) {
        return Err(Sl2Error::IncompleteSpectrum);
    }
    let p = spectral_projector(&omega, spectrum, target);
    Intertwiner::checked(m.clone(), m.clone(), p, Symmetry::Sl2, spectrum.len() - 1)
}

/// The weight-`nu` coordinate functional `M -> C_nu` (zero if `nu` is not a weight).
pub fn weight_functional(m: &WeightModule, nu: &ExactScalar) -> Result<Intertwiner, Sl2Error> {
    let space = m.weight_space(nu);
    if space.len() > 1 {
        return Err(Sl2Error::AmbiguousWeight {
            nu: nu.clone(),
            multiplicity: space.len(),
        });
    }
    let mut row = ExactMatrix::zeros(1, m.dim());
    if let Some(&i) = space.first() {
        row.set(0, i, ExactScalar::one());
    }
    Intertwiner::checked(m.clone(), WeightModule::character(nu), row, Symmetry::Cartan, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v1_c2() -> WeightModule {
        WeightModule::tensor(&WeightModule::finite_irrep(1).unwrap(), &WeightModule::natural_c2())
    }

    #[test]
    fn v1_c2_upper_projection_has_rank_three() {
        let p = primary_projection(&v1_c2(), &[int(8), int(0)], &int(8)).unwrap();
        assert!(p.is_equivariant());
        assert_eq!(p.rank(), 3);
        let q = primary_projection(&v1_c2(), &[int(8), int(0)], &int(0)).unwrap();
        assert_eq!(q.rank(), 1);
        assert!((p.matrix() + q.matrix()) == ExactMatrix::identity(4));
    }

    #[test]
    fn single_node_projection_is_identity() {
        let m = WeightModule::finite_irrep(3).unwrap();
        let p = primary_projection(&m, &[int(15)], &int(15)).unwrap();
        assert_eq!(p.matrix(), &ExactMatrix::identity(4));
    }

    #[test]
    fn highest_weight_vector_is_fixed() {
        // 1 (x) f+ has weight 2 and therefore lies in V_2.
        let p = primary_projection(&v1_c2(), &[int(8), int(0)], &int(8)).unwrap();
        let e = vec![int(1), int(0), int(0), int(0)];
        assert_eq!(p.apply(&e), e);
    }

    #[test]
    fn projection_rejects_bad_spectra() {
        let m = v1_c2();
        assert!(matches!(
            primary_projection(&m, &[int(8), int(8)], &int(8)),
            Err(Sl2Error::RepeatedSpectrum(_))
        ));
        assert!(matches!(
            primary_projection(&m, &[int(8), int(0)], &int(3)),
            Err(Sl2Error::TargetAbsent(_))
        ));
        assert!(matches!(
            primary_projection(&m, &[int(8)], &int(8)),
            Err(Sl2Error::IncompleteSpectrum)
        ));
    }

    #[test]
    fn weight_functionals_on_v2() {
        let v2 = WeightModule::finite_irrep(2).unwrap();
        let t = weight_functional(&v2, &int(0)).unwrap();
        assert!(t.is_equivariant());
        assert!(!t.matrix().is_zero());
        assert!(weight_functional(&v2, &int(1)).unwrap().matrix().is_zero());
        let v0 = WeightModule::finite_irrep(0).unwrap();
        assert_eq!(weight_functional(&v0, &int(0)).unwrap().matrix(), &ExactMatrix::identity(1));
    }

    #[test]
    fn ambiguous_weight_is_an_error() {
        assert!(matches!(
            weight_functional(&v1_c2(), &int(0)),
            Err(Sl2Error::AmbiguousWeight { multiplicity: 2, .. })
        ));
    }
}
