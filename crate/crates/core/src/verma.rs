//! Exact hom-space dimensions between Verma and lowest-weight modules, and
//! region scans comparing the observed multiplicity-two region with closed
//! predicates.

use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{int, ExactMatrix, ExactScalar};
use crate::fences::{fusion_chamber_of, stability_sweep, verma_chamber};
use crate::report::{Axis, MultiplicityReport, ReportMetadata};
use crate::sl2::WeightModule;

fn level(a: i64, b: i64, c: i64) -> Option<usize> {
    let s = a + b - c;
    (s >= 0 && s % 2 == 0).then_some((s / 2) as usize)
}

/// Matrix of `X` from the weight-`c` space of `M(a) (x) M(b)` to the weight-`(c+2)` space,
/// in the bases `Y^p v_a (x) Y^{d-p} v_b`. Returns the level `d` and the `d x (d+1)` matrix,
/// or `None` when `c` is not a weight of the tensor product.
pub fn verma_x_matrix(a: i64, b: i64, c: i64) -> Option<(usize, ExactMatrix)> {
    let d = level(a, b, c)?;
    let di = d as i64;
    let mut m = ExactMatrix::zeros(d, d + 1);
    for p in 0..=d {
        let pi = p as i64;
        if p > 0 {
            m.set(p - 1, p, int(pi * (a - pi + 1)));
        }
        if p < d {
            let q = di - pi;
            m.set(p, p, int(q * (b - q + 1)));
        }
    }
    Some((d, m))
}

/// `dim Hom(M(c), M(a) (x) M(b))`, the number of independent singular vectors of weight `c`.
pub fn verma_hom_dim(a: i64, b: i64, c: i64) -> u64 {
    match verma_x_matrix(a, b, c) {
        None => 0,
        Some((d, m)) => (d + 1 - m.rank()) as u64,
    }
}

/// The same `X` block cut out of a tensor product of truncated highest-weight models.
pub fn verma_x_block_from_models(a: i64, b: i64, c: i64) -> Option<ExactMatrix> {
    let d = level(a, b, c)?;
    let n = (d + 1).max(4);
    let ma = WeightModule::truncated_highest_weight(&int(a), n).ok()?;
    let mb = WeightModule::truncated_highest_weight(&int(b), n).ok()?;
    let t = WeightModule::tensor(&ma, &mb);
    let source = t.weight_space(&int(c));
    let target = t.weight_space(&int(c + 2));
    Some(t.x().submatrix(&target, &source))
}

/// Matrix of `Y` on the weight-`(l3+1)` space of `Pi_{l1} (x) Pi_{l2}` (lowest-weight modules
/// with lowest weights `l1+1`, `l2+1`), basis `v_a (x) v_{d-a}`. `None` if the weight does not occur.
pub fn fusion_lw_y_matrix(l1: i64, l2: i64, l3: i64) -> Option<(usize, ExactMatrix)> {
    let s = l3 - l1 - l2 - 1;
    if s < 0 || s % 2 != 0 {
        return None;
    }
    let d = (s / 2) as usize;
    let di = d as i64;
    let mut m = ExactMatrix::zeros(d, d + 1);
    for a in 0..=d {
        let ai = a as i64;
        if a > 0 {
            m.set(a - 1, a, int(-ai * (l1 + ai)));
        }
        if a < d {
            let q = di - ai;
            m.set(a, a, int(-q * (l2 + q)));
        }
    }
    Some((d, m))
}

/// Lowest-weight vectors of weight `l3+1` in `Pi_{l1} (x) Pi_{l2}`.
pub fn fusion_lw_kernel(l1: i64, l2: i64, l3: i64) -> Vec<Vec<ExactScalar>> {
    match fusion_lw_y_matrix(l1, l2, l3) {
        None => Vec::new(),
        Some((_, m)) => m.kernel_basis(),
    }
}

/// `dim Hom(Pi_{l3}, Pi_{l1} (x) Pi_{l2})`.
pub fn fusion_lw_hom_dim(l1: i64, l2: i64, l3: i64) -> u64 {
    match fusion_lw_y_matrix(l1, l2, l3) {
        None => 0,
        Some((d, m)) => (d + 1 - m.rank()) as u64,
    }
}

/// A closed predicate proposed to describe where an oracle takes a given value.
#[derive(Clone, Copy, Debug)]
pub struct RegionPredicate {
    pub name: &'static str,
    pub formula: &'static str,
    /// Oracle value the predicate is meant to single out.
    pub value: u64,
    /// Points on which the comparison is made.
    pub domain: fn(i64, i64, i64) -> bool,
    pub holds: fn(i64, i64, i64) -> bool,
}

fn weight_compatible(a: i64, b: i64, c: i64) -> bool {
    (a + b - c).rem_euclid(2) == 0
}

pub const OBSERVED_REGION: RegionPredicate = RegionPredicate {
    name: "observed",
    formula: "a >= 0, b >= 0, |a-b| <= -c-2, a+b+c >= -2",
    value: 2,
    domain: weight_compatible,
    holds: |a, b, c| a >= 0 && b >= 0 && (a - b).abs() <= -c - 2 && a + b + c >= -2,
};

pub const SYMMETRIC_SUM_BELOW: RegionPredicate = RegionPredicate {
    name: "symmetric-sum-below",
    formula: "a+b+c <= -2, |a-b| <= -c-2",
    value: 2,
    domain: weight_compatible,
    holds: |a, b, c| a + b + c <= -2 && (a - b).abs() <= -c - 2,
};

pub const ONE_SIDED_SUM_BELOW: RegionPredicate = RegionPredicate {
    name: "one-sided-sum-below",
    formula: "a+b+c <= -2, a-b <= -c-2",
    value: 2,
    domain: weight_compatible,
    holds: |a, b, c| a + b + c <= -2 && a - b <= -c - 2,
};

pub const VERMA_PREDICATES: [RegionPredicate; 3] = [OBSERVED_REGION, SYMMETRIC_SUM_BELOW, ONE_SIDED_SUM_BELOW];

/// `l3 >= l1 + l2 + 1` with `l1 + l2 - l3` odd.
pub fn fusion_rule_holds(l1: i64, l2: i64, l3: i64) -> bool {
    l3 > l1 + l2 && (l1 + l2 - l3).rem_euclid(2) == 1
}

pub const FUSION_RULE: RegionPredicate = RegionPredicate {
    name: "fusion-rule",
    formula: "l3 >= l1+l2+1, l1+l2-l3 odd",
    value: 1,
    domain: |_, _, _| true,
    holds: fusion_rule_holds,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub point: [i64; 3],
    pub multiplicity: u64,
    pub predicate_holds: bool,
}

/// Point-by-point comparison of `multiplicity == value` with one predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateComparison {
    pub predicate: String,
    pub formula: String,
    pub value: u64,
    pub compared: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
}

impl PredicateComparison {
    pub fn exact(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Oracle values over a box, the points where the value changes between
/// neighbours, and comparisons with closed predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionScan {
    pub report: MultiplicityReport,
    pub boundary: Vec<[i64; 3]>,
    pub comparisons: Vec<PredicateComparison>,
}

impl RegionScan {
    pub fn comparison(&self, predicate: &str) -> Option<&PredicateComparison> {
        self.comparisons.iter().find(|c| c.predicate == predicate)
    }

    pub fn values(&self) -> std::collections::BTreeSet<u64> {
        self.report.records.iter().map(|r| r.value).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Verma,
    FusionLowestWeight,
}

pub fn compare_predicate(report: &MultiplicityReport, predicate: &RegionPredicate) -> PredicateComparison {
    let rows: Vec<_> = report
        .records
        .par_iter()
        .filter(|r| (predicate.domain)(r.point[0], r.point[1], r.point[2]))
        .map(|r| {
            let (a, b, c) = (r.point[0], r.point[1], r.point[2]);
            let holds = (predicate.holds)(a, b, c);
            let agree = holds == (r.value == predicate.value);
            (
                agree,
                Disagreement {
                    point: [a, b, c],
                    multiplicity: r.value,
                    predicate_holds: holds,
                },
            )
        })
        .collect();
    PredicateComparison {
        predicate: predicate.name.into(),
        formula: predicate.formula.into(),
        value: predicate.value,
        compared: rows.len(),
        agreements: rows.iter().filter(|(a, _)| *a).count(),
        disagreements: rows.into_iter().filter(|(a, _)| !*a).map(|(_, d)| d).collect(),
    }
}

/// Points whose value differs from some neighbour in the window. Neighbours are
/// the unit steps `d` in `{-1,0,1}^3` with `d_a + d_b - d_c` even, so that weight
/// compatibility is preserved along the step.
pub fn value_boundary(report: &MultiplicityReport) -> Vec<[i64; 3]> {
    let lookup: std::collections::HashMap<&[i64], u64> =
        report.records.iter().map(|r| (r.point.as_slice(), r.value)).collect();
    let mut steps = Vec::new();
    for da in -1..=1i64 {
        for db in -1..=1i64 {
            for dc in -1..=1i64 {
                if (da, db, dc) != (0, 0, 0) && (da + db - dc).rem_euclid(2) == 0 {
                    steps.push([da, db, dc]);
                }
            }
        }
    }
    report
        .records
        .iter()
        .filter(|r| {
            steps.iter().any(|d| {
                let q: Vec<i64> = (0..3).map(|i| r.point[i] + d[i]).collect();
                lookup.get(q.as_slice()).is_some_and(|&v| v != r.value)
            })
        })
        .map(|r| [r.point[0], r.point[1], r.point[2]])
        .collect()
}

fn cube(lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// Verma hom dimensions on `[-w, w]^3`, chambered by [`verma_chamber`], with the
/// multiplicity-two region compared against [`VERMA_PREDICATES`].
pub fn verma_region_scan(w: i64) -> RegionScan {
    let report = stability_sweep(
        cube(-w, w),
        |p| verma_hom_dim(p[0], p[1], p[2]),
        |p| verma_chamber(p[0], p[1], p[2]),
        ["a", "b", "c"].map(|n| Axis::new(n, -w, w)).to_vec(),
        ReportMetadata {
            anchor: "dim Hom(M(c), M(a) (x) M(b)) for Verma modules, chambered by the induced fences at (a+1, b+1; c+1)".into(),
            sign_convention_notes: vec![
                "a zero parameter (a = -1 or b = -1) carries sign 0 in the chamber key".into(),
                "predicates are compared on triples with a+b-c even".into(),
            ],
            ..Default::default()
        },
    );
    let comparisons = VERMA_PREDICATES.iter().map(|p| compare_predicate(&report, p)).collect();
    RegionScan {
        boundary: value_boundary(&report),
        report,
        comparisons,
    }
}

/// Lowest-weight fusion multiplicities on `[1, w]^3`, chambered by the five fusion chambers.
pub fn fusion_lw_scan(w: i64) -> RegionScan {
    let report = stability_sweep(
        cube(1, w),
        |p| fusion_lw_hom_dim(p[0], p[1], p[2]),
        |p| fusion_chamber_of(p[0], p[1], p[2]).map_or("none".into(), |c| c.label().into()),
        ["lambda1", "lambda2", "lambda3"].map(|n| Axis::new(n, 1, w)).to_vec(),
        ReportMetadata {
            anchor: "dim Hom(Pi_l3, Pi_l1 (x) Pi_l2) for holomorphic discrete series, chambered by the five fusion chambers".into(),
            ..Default::default()
        },
    );
    RegionScan {
        boundary: value_boundary(&report),
        comparisons: vec![compare_predicate(&report, &FUSION_RULE)],
        report,
    }
}

pub fn region_scan(w: i64, oracle: Oracle) -> RegionScan {
    match oracle {
        Oracle::Verma => verma_region_scan(w),
        Oracle::FusionLowestWeight => fusion_lw_scan(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verma_examples() {
        assert_eq!(verma_hom_dim(0, 0, -2), 2);
        assert_eq!(verma_hom_dim(-1, -1, -4), 1);
        assert_eq!(verma_hom_dim(0, 0, -1), 0);
        assert_eq!(verma_hom_dim(0, 0, 2), 0);
        assert_eq!(verma_hom_dim(3, 2, 5), 1);
    }

    #[test]
    fn closed_matrix_matches_models() {
        for (a, b, c) in [(0, 0, -2), (2, 1, -3), (-1, 3, 0), (1, 1, -4), (-2, -3, -9)] {
            let (_, m) = verma_x_matrix(a, b, c).unwrap();
            assert_eq!(verma_x_block_from_models(a, b, c).unwrap(), m, "{a} {b} {c}");
        }
    }

    #[test]
    fn lowest_weight_examples() {
        assert_eq!(fusion_lw_hom_dim(1, 1, 3), 1);
        assert_eq!(fusion_lw_hom_dim(2, 2, 3), 0);
        assert_eq!(fusion_lw_hom_dim(1, 1, 5), 1);
        let (_, m) = fusion_lw_y_matrix(1, 1, 5).unwrap();
        assert_eq!(m, ExactMatrix::from_rows(vec![vec![int(-2), int(-2)]]).unwrap());
        assert_eq!(fusion_lw_kernel(1, 1, 3), vec![vec![int(1)]]);
    }

    #[test]
    fn small_scan() {
        let scan = verma_region_scan(4);
        assert!(scan.comparison("observed").unwrap().exact());
        assert!(scan.values().iter().all(|v| *v <= 2));
        assert!(scan.boundary.contains(&[0, 0, -2]));
        let lw = fusion_lw_scan(6);
        assert_eq!(lw.report.violations(), 0);
        assert_eq!(lw.report.chambers_with_value(1), vec!["odd-southwest"]);
        assert!(lw.comparison("fusion-rule").unwrap().exact());
    }
}
