//! Fences `alpha lambda' + beta lambda'' + mu = 0`, the regions they cut out of
//! the parameter lattice, the five fusion chambers of `N+^2`, and sweeps that
//! test multiplicities for constancy per chamber.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::exact::scalar::sign;
use crate::exact::{int, ComplexExact};
use crate::report::{Axis, MultiplicityReport, PointRecord, ReportMetadata};
use crate::sign::Sign;
use crate::sl2::{pieri_multiplicity, weight_functional, WeightModule};
use crate::translation::{classify_xi, ParameterLattice, TranslationError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FenceError {
    #[error("fence base parameters must be nonzero")]
    SingularBase,
    #[error("({0}, {1}) is not in the parameter lattice of the fence")]
    OutsideLattice(String, String),
}

/// Base point `(xi', xi'')` and shift `mu` of a fence system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FenceSpec {
    xi1: ComplexExact,
    xi2: ComplexExact,
    mu: ComplexExact,
    lattice1: ParameterLattice,
    lattice2: ParameterLattice,
}

impl FenceSpec {
    pub fn new(xi1: ComplexExact, xi2: ComplexExact, mu: ComplexExact) -> Result<Self, FenceError> {
        let lattice1 = ParameterLattice::new(xi1.clone()).map_err(|_| FenceError::SingularBase)?;
        let lattice2 = ParameterLattice::new(xi2.clone()).map_err(|_| FenceError::SingularBase)?;
        Ok(FenceSpec {
            xi1,
            xi2,
            mu,
            lattice1,
            lattice2,
        })
    }

    pub fn xi1(&self) -> &ComplexExact {
        &self.xi1
    }

    pub fn xi2(&self) -> &ComplexExact {
        &self.xi2
    }

    pub fn mu(&self) -> &ComplexExact {
        &self.mu
    }

    /// Membership in `Lambda(xi') x Lambda(xi'')` intersected with `(xi', xi'') + (Z^2)_even`.
    pub fn lattice_contains(&self, l1: &ComplexExact, l2: &ComplexExact) -> bool {
        if !self.lattice1.contains(l1) || !self.lattice2.contains(l2) {
            return false;
        }
        let d1 = l1 - &self.xi1;
        let d2 = l2 - &self.xi2;
        d1.is_integer() && d2.is_integer() && (&d1 - &d2).is_even_integer()
    }

    fn combination(&self, a: Sign, b: Sign, l1: &ComplexExact, l2: &ComplexExact) -> ComplexExact {
        &(&l1.scale(&a.scalar()) + &l2.scale(&b.scalar())) + &self.mu
    }

    /// Whether the `(alpha, beta)` fence is active (the base combination is an odd integer).
    pub fn is_active(&self, alpha: Sign, beta: Sign) -> bool {
        self.combination(alpha, beta, &self.xi1, &self.xi2).is_odd_integer()
    }
}

/// Sign of the real part (exact sign for real values).
pub fn sign_re(z: &ComplexExact) -> i8 {
    sign(&z.re)
}

/// Membership of `(lambda', lambda'')` in `D_{alpha beta}`.
///
/// Inactive fences admit every lattice point. Active ones require
/// `alpha lambda' + beta lambda'' + mu` to have the sign of the base value,
/// where a zero base value only admits points on the fence itself.
pub fn fence_membership(
    l1: &ComplexExact,
    l2: &ComplexExact,
    spec: &FenceSpec,
    alpha: Sign,
    beta: Sign,
) -> Result<bool, FenceError> {
    if !spec.lattice_contains(l1, l2) {
        return Err(FenceError::OutsideLattice(l1.to_string(), l2.to_string()));
    }
    if !spec.is_active(alpha, beta) {
        return Ok(true);
    }
    let base = spec.combination(alpha, beta, &spec.xi1, &spec.xi2);
    let here = spec.combination(alpha, beta, l1, l2);
    Ok(sign_re(&here) == sign_re(&base))
}

/// The intersection `D(xi', xi''; mu)` of the four fence sets.
#[derive(Clone, Debug)]
pub struct FenceRegion {
    spec: FenceSpec,
}

pub fn fence_region(spec: &FenceSpec) -> FenceRegion {
    FenceRegion { spec: spec.clone() }
}

impl FenceRegion {
    pub fn spec(&self) -> &FenceSpec {
        &self.spec
    }

    pub fn contains(&self, l1: &ComplexExact, l2: &ComplexExact) -> Result<bool, FenceError> {
        for (a, b) in Sign::pairs() {
            if !fence_membership(l1, l2, &self.spec, a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice points of the window `[lo, hi]^2` (integer offsets from the base) inside the region.
    pub fn points_in(&self, lo: i64, hi: i64) -> Vec<(ComplexExact, ComplexExact)> {
        let mut out = Vec::new();
        for i in lo..=hi {
            for j in lo..=hi {
                let l1 = &self.spec.xi1 + &ComplexExact::from_int(i);
                let l2 = &self.spec.xi2 + &ComplexExact::from_int(j);
                if self.contains(&l1, &l2) == Ok(true) {
                    out.push((l1, l2));
                }
            }
        }
        out
    }
}

/// The five chambers of `N+^2` for a fixed third parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FusionChamber {
    #[serde(rename = "even")]
    Even,
    #[serde(rename = "odd-up")]
    OddUp,
    #[serde(rename = "odd-northeast")]
    OddNorthEast,
    #[serde(rename = "odd-right")]
    OddRight,
    #[serde(rename = "odd-southwest")]
    OddSouthWest,
}

impl FusionChamber {
    pub const ALL: [FusionChamber; 5] = [
        FusionChamber::Even,
        FusionChamber::OddUp,
        FusionChamber::OddNorthEast,
        FusionChamber::OddRight,
        FusionChamber::OddSouthWest,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FusionChamber::Even => "even",
            FusionChamber::OddUp => "odd-up",
            FusionChamber::OddNorthEast => "odd-northeast",
            FusionChamber::OddRight => "odd-right",
            FusionChamber::OddSouthWest => "odd-southwest",
        }
    }

    /// Membership by the defining closed inequalities alone.
    pub fn holds(self, l1: i64, l2: i64, l3: i64) -> bool {
        let odd = (l1 + l2 + l3).rem_euclid(2) == 1;
        let spread = (l1 - l2).abs();
        match self {
            FusionChamber::Even => !odd,
            FusionChamber::OddUp => odd && l2 - l1 > l3,
            FusionChamber::OddNorthEast => odd && spread < l3 && l1 + l2 > l3,
            FusionChamber::OddRight => odd && l1 - l2 > l3,
            FusionChamber::OddSouthWest => odd && spread < l3 && l1 + l2 < l3,
        }
    }
}

impl fmt::Display for FusionChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Chamber of `(lambda', lambda'')` in `N+^2` for third parameter `lambda'''`.
/// Returns `None` if a parameter is not positive or no inequality holds.
pub fn fusion_chamber_of(l1: i64, l2: i64, l3: i64) -> Option<FusionChamber> {
    if l1 < 1 || l2 < 1 || l3 < 1 {
        return None;
    }
    FusionChamber::ALL.into_iter().find(|c| c.holds(l1, l2, l3))
}

/// Evaluates `multiplicity` and `chamber` at every point (in parallel) and
/// reports constancy per chamber. Records are sorted by point.
pub fn stability_sweep<M, C>(
    points: Vec<Vec<i64>>,
    multiplicity: M,
    chamber: C,
    window: Vec<Axis>,
    metadata: ReportMetadata,
) -> MultiplicityReport
where
    M: Fn(&[i64]) -> u64 + Sync,
    C: Fn(&[i64]) -> String + Sync,
{
    let records: Vec<PointRecord> = points
        .into_par_iter()
        .map(|p| PointRecord {
            value: multiplicity(&p),
            chamber: chamber(&p),
            point: p,
        })
        .collect();
    MultiplicityReport::from_records(window, records, metadata)
}

fn grid(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `[V_{l1-1} (x) V_{l2-1} : V_{l3-1}]` over `1..=max` squared, chambered by [`fusion_chamber_of`].
pub fn pieri_sweep(l3: i64, max: i64) -> MultiplicityReport {
    let k = (l3 - 1) as u32;
    stability_sweep(
        grid(&[(1, max), (1, max)]),
        |p| pieri_multiplicity((p[0] - 1) as u32, (p[1] - 1) as u32, k) as u64,
        |p| fusion_chamber_of(p[0], p[1], l3).map_or("none".into(), |c| c.label().into()),
        vec![Axis::new("lambda1", 1, max), Axis::new("lambda2", 1, max)],
        ReportMetadata {
            anchor: format!("tensor multiplicity [V_m (x) V_n : V_k] with lambda''' = {l3}, chambered by the five fusion chambers"),
            ..Default::default()
        },
    )
}

fn xi_label(lambda: i64, nu: i64) -> String {
    let c = |x| ComplexExact::from_int(x);
    classify_xi(&c(lambda), &c(nu), &c(1), &c(0)).map_or_else(|e: TranslationError| format!("error: {e}"), |x| x.label().into())
}

/// Weight multiplicities `[V_{lambda-1} : C_nu]` over `1..=max` x `-max..=max`.
pub fn su2_weight_sweep(max: i64) -> MultiplicityReport {
    stability_sweep(
        grid(&[(1, max), (-max, max)]),
        |p| WeightModule::finite_irrep(p[0] - 1).expect("positive").weight_space(&int(p[1])).len() as u64,
        |p| xi_label(p[0], p[1]),
        vec![Axis::new("lambda", 1, max), Axis::new("nu", -max, max)],
        ReportMetadata {
            anchor: "weight multiplicities of V_{lambda-1}, chambered by parity and the up/right/down regions".into(),
            ..Default::default()
        },
    )
}

/// `[Pi_lambda : C_nu]` read off truncated lowest-weight models, over `1..=max` x `-max..=max`.
///
/// The truncation is long enough that every weight in the window sits at least
/// `margin` steps from the cut.
pub fn ktype_sweep(max: i64, margin: usize) -> MultiplicityReport {
    let truncation = (max as usize).max(4) + margin;
    stability_sweep(
        grid(&[(1, max), (-max, max)]),
        |p| {
            let m = WeightModule::truncated_lowest_weight(&int(p[0]), truncation).expect("long enough");
            let t = weight_functional(&m, &int(p[1])).expect("weights are simple");
            u64::from(!t.matrix().is_zero())
        },
        |p| xi_label(p[0], p[1]),
        vec![Axis::new("lambda", 1, max), Axis::new("nu", -max, max)],
        ReportMetadata {
            anchor: "K-type multiplicities of holomorphic discrete series models, chambered by parity and the up/right/down regions".into(),
            truncation: Some(truncation),
            margin: Some(margin),
            ..Default::default()
        },
    )
}

/// Chamber of a Verma triple `(a, b, c)` for the fences induced at
/// `(lambda', lambda''; lambda''') = (a+1, b+1; c+1)`: the third parameter,
/// the lattice containing the point, and the signs of the active fences.
/// A zero parameter gets sign `0`, which splits the singular lines into their own chambers.
pub fn verma_chamber(a: i64, b: i64, c: i64) -> String {
    let (l1, l2, l3) = (a + 1, b + 1, c + 1);
    let sg = |x: i64| match x.signum() {
        1 => '+',
        0 => '0',
        _ => '-',
    };
    let class = if (l1 + l2).rem_euclid(2) == 0 { "even" } else { "odd" };
    let mut key = format!("c={c}|{}{}|lattice-{class}", sg(l1), sg(l2));
    if (l1 + l2 + l3).rem_euclid(2) == 1 {
        key.push_str("|fences:");
        for (al, be) in Sign::pairs() {
            let v = al.value() * l1 + be.value() * l2 + l3;
            key.push(sg(v));
        }
    } else {
        key.push_str("|inactive");
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn c(n: i64) -> ComplexExact {
        ComplexExact::from_int(n)
    }

    #[test]
    fn inactive_fences_admit_everything() {
        let spec = FenceSpec::new(ComplexExact::real(frac(1, 2)), ComplexExact::real(frac(1, 3)), c(0)).unwrap();
        let region = fence_region(&spec);
        let pts = region.points_in(-3, 3);
        // half of the 49 offsets satisfy the even-difference lattice condition
        assert_eq!(pts.len(), 25);
        assert!(FenceSpec::new(c(1), c(0), c(0)).is_err());
    }

    #[test]
    fn active_fence_examples() {
        let spec = FenceSpec::new(c(3), c(2), c(-6)).unwrap();
        assert!(fence_membership(&c(3), &c(2), &spec, Sign::Plus, Sign::Plus).unwrap());
        assert!(!fence_membership(&c(5), &c(2), &spec, Sign::Plus, Sign::Plus).unwrap());
        assert!(fence_membership(&c(4), &c(2), &spec, Sign::Plus, Sign::Plus).is_err());
    }

    #[test]
    fn region_contains_base_point() {
        let spec = FenceSpec::new(c(1), c(1), c(-3)).unwrap();
        let region = fence_region(&spec);
        assert!(region.contains(&c(1), &c(1)).unwrap());
        let pts = region.points_in(0, 6);
        assert!(pts.iter().all(|(a, b)| {
            let (a, b) = (a.re.clone(), b.re.clone());
            &a + &b <= int(2)
        }));
    }

    #[test]
    fn fusion_chamber_examples() {
        assert_eq!(fusion_chamber_of(2, 6, 3), Some(FusionChamber::OddUp));
        assert_eq!(fusion_chamber_of(2, 3, 3), Some(FusionChamber::Even));
        assert_eq!(fusion_chamber_of(1, 1, 3), Some(FusionChamber::OddSouthWest));
        assert_eq!(fusion_chamber_of(0, 1, 3), None);
    }

    #[test]
    fn verma_chamber_keys() {
        assert_eq!(verma_chamber(-1, 3, 0), "c=0|0+|lattice-even|fences:+-+-");
        assert_eq!(verma_chamber(0, 0, -2), "c=-2|++|lattice-even|fences:+---");
        assert!(verma_chamber(0, 0, -1).ends_with("inactive"));
    }

    #[test]
    fn small_pieri_sweep_is_stable() {
        let r = pieri_sweep(3, 8);
        assert_eq!(r.violations(), 0);
        assert_eq!(r.chambers_with_value(1), vec!["odd-northeast"]);
    }
}
