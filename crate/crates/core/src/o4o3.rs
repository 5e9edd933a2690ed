//! Reformulation of the fusion scalars `c` for `o(4) > o(3)`: parameter maps,
//! Weyl-group representatives and the closed form `C_{i, delta}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{frac, int, ComplexExact};
use crate::fusion::{c_closed_form, FusionError};
use crate::report::{Outcome, ReportItem, VerificationReport};
use crate::sign::Sign;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum O4O3Error {
    #[error("lambda1 = +-lambda2 makes the reformulated scalar singular")]
    Singular,
    #[error("index i must be 1 or 2, got {0}")]
    BadIndex(u8),
}

/// `(lambda1, lambda2, nu) -> (lambda1 + lambda2, lambda1 - lambda2, 2 nu)`.
pub fn param_map(l1: &ComplexExact, l2: &ComplexExact, nu: &ComplexExact) -> (ComplexExact, ComplexExact, ComplexExact) {
    (l1 + l2, l1 - l2, nu.scale(&int(2)))
}

pub fn param_map_inverse(
    lp: &ComplexExact,
    lpp: &ComplexExact,
    lppp: &ComplexExact,
) -> (ComplexExact, ComplexExact, ComplexExact) {
    let half = frac(1, 2);
    ((lp + lpp).scale(&half), (lp - lpp).scale(&half), lppp.scale(&half))
}

/// `(i, kappa) -> (delta, epsilon)`: `1+ -> ++`, `2+ -> +-`, `2- -> -+`, `1- -> --`.
pub fn delta_eps_of(i: u8, kappa: Sign) -> Result<(Sign, Sign), O4O3Error> {
    match (i, kappa) {
        (1, k) => Ok((k, k)),
        (2, k) => Ok((k, k.flip())),
        _ => Err(O4O3Error::BadIndex(i)),
    }
}

/// `(lambda_i + nu + delta/2)(lambda_i - nu + delta/2) / (2 (lambda1^2 - lambda2^2))`.
pub fn c_big_closed_form(
    l1: &ComplexExact,
    l2: &ComplexExact,
    nu: &ComplexExact,
    i: u8,
    delta: Sign,
) -> Result<ComplexExact, O4O3Error> {
    let li = match i {
        1 => l1,
        2 => l2,
        _ => return Err(O4O3Error::BadIndex(i)),
    };
    let den = (&(l1 * l1) - &(l2 * l2)).scale(&int(2));
    if den.is_zero() {
        return Err(O4O3Error::Singular);
    }
    let shifted = li + &ComplexExact::real(delta.scalar() * frac(1, 2));
    let num = &(&shifted + nu) * &(&shifted - nu);
    Ok(num.checked_div(&den).expect("nonzero"))
}

/// Lexicographically largest member of `{(l1, l2), (l2, l1), (-l1, -l2), (-l2, -l1)}`.
pub fn canonical_o4(l1: &ComplexExact, l2: &ComplexExact) -> (ComplexExact, ComplexExact) {
    let orbit = [
        (l1.clone(), l2.clone()),
        (l2.clone(), l1.clone()),
        (-l1, -l2),
        (-l2, -l1),
    ];
    orbit.into_iter().max().expect("nonempty")
}

/// `nu` or `-nu`, whichever has `Re >= 0`, ties broken by `Im >= 0`.
pub fn canonical_o3(nu: &ComplexExact) -> ComplexExact {
    let neg = -nu;
    if neg > *nu {
        neg
    } else {
        nu.clone()
    }
}

/// Random Gaussian rational `(a + b i) / d` with `|a|, |b| <= 12`, `1 <= d <= 6`.
pub fn random_gaussian_rational<R: Rng>(rng: &mut R) -> ComplexExact {
    let d = rng.gen_range(1..=6);
    ComplexExact::new(frac(rng.gen_range(-12..=12), d), frac(rng.gen_range(-12..=12), d))
}

fn identity_holds(l1: &ComplexExact, l2: &ComplexExact, nu: &ComplexExact) -> Result<Vec<Outcome>, O4O3Error> {
    let (lp, lpp, lppp) = param_map(l1, l2, nu);
    let mut out = Vec::new();
    for i in [1u8, 2] {
        for kappa in Sign::BOTH {
            let (d, e) = delta_eps_of(i, kappa)?;
            let big = c_big_closed_form(l1, l2, nu, i, kappa)?;
            let small = match c_closed_form(&lp, &lpp, &lppp, d, e) {
                Ok(v) => v,
                Err(FusionError::SingularLambda) => return Err(O4O3Error::Singular),
                Err(e) => unreachable!("{e}"),
            };
            out.push(Outcome::compare(
                || format!("(l1, l2, nu) = ({l1}, {l2}, {nu}), (i, delta) = ({i}, {kappa})"),
                &small,
                &big,
            ));
        }
    }
    Ok(out)
}

/// Checks `C_{i, delta} = c_{delta epsilon} o param_map` at `samples` seeded random
/// nonsingular Gaussian-rational points and on the integer grid `|lambda_i| <= grid`,
/// `|nu| <= grid`. Singular points are skipped and counted.
pub fn verify_reformulation(samples: usize, seed: u64, grid: i64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(samples);
    let mut skipped_random = 0;
    while points.len() < samples {
        let p = (
            random_gaussian_rational(&mut rng),
            random_gaussian_rational(&mut rng),
            random_gaussian_rational(&mut rng),
        );
        if (&p.0 * &p.0) == (&p.1 * &p.1) {
            skipped_random += 1;
            continue;
        }
        points.push(p);
    }
    let run = |pts: Vec<(ComplexExact, ComplexExact, ComplexExact)>| -> (Vec<Outcome>, usize) {
        let results: Vec<_> = pts.par_iter().map(|(a, b, c)| identity_holds(a, b, c)).collect();
        let skipped = results.iter().filter(|r| r.is_err()).count();
        (results.into_iter().filter_map(Result::ok).flatten().collect(), skipped)
    };
    let (sampled, _) = run(points);
    let mut grid_points = Vec::new();
    for a in -grid..=grid {
        for b in -grid..=grid {
            for n in -grid..=grid {
                grid_points.push((a.into(), b.into(), n.into()));
            }
        }
    }
    let (on_grid, skipped_grid) = run(grid_points);
    let mut report = VerificationReport::new("o4o3");
    report.push(
        ReportItem::new(
            "o4o3-sampled",
            "C_{i,delta}(l1, l2; nu) = c_{delta epsilon}(l1+l2, l1-l2; 2 nu) at random Gaussian-rational points",
        )
        .with_outcomes(sampled)
        .value("samples", samples.to_string())
        .value("seed", seed.to_string())
        .value("skipped_singular", skipped_random.to_string()),
    );
    report.push(
        ReportItem::new(
            "o4o3-integer-grid",
            "C_{i,delta}(l1, l2; nu) = c_{delta epsilon}(l1+l2, l1-l2; 2 nu) on the integer grid",
        )
        .with_outcomes(on_grid)
        .value("grid", grid.to_string())
        .value("skipped_singular", skipped_grid.to_string()),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ComplexExact {
        ComplexExact::real(frac(n, d))
    }

    #[test]
    fn param_map_examples() {
        let (a, b, c) = param_map(&q(3, 2), &q(1, 2), &q(1, 1));
        assert_eq!((a.clone(), b.clone(), c.clone()), (q(2, 1), q(1, 1), q(2, 1)));
        assert_eq!(param_map_inverse(&a, &b, &c), (q(3, 2), q(1, 2), q(1, 1)));
    }

    #[test]
    fn correspondence_table() {
        assert_eq!(delta_eps_of(1, Sign::Plus).unwrap(), (Sign::Plus, Sign::Plus));
        assert_eq!(delta_eps_of(2, Sign::Plus).unwrap(), (Sign::Plus, Sign::Minus));
        assert_eq!(delta_eps_of(2, Sign::Minus).unwrap(), (Sign::Minus, Sign::Plus));
        assert_eq!(delta_eps_of(1, Sign::Minus).unwrap(), (Sign::Minus, Sign::Minus));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(c_big_closed_form(&q(3, 2), &q(1, 2), &q(1, 1), 1, Sign::Plus).unwrap(), q(3, 4));
        assert_eq!(c_big_closed_form(&q(3, 2), &q(1, 2), &q(1, 1), 2, Sign::Plus).unwrap(), q(0, 1));
        assert!(c_big_closed_form(&q(1, 2), &q(-1, 2), &q(1, 1), 1, Sign::Plus).is_err());
    }

    #[test]
    fn canonical_forms() {
        let (a, b) = canonical_o4(&q(-3, 1), &q(1, 1));
        assert_eq!((a.clone(), b.clone()), (q(3, 1), q(-1, 1)));
        assert_eq!(canonical_o4(&a, &b), (a, b));
        assert_eq!(canonical_o3(&ComplexExact::new(int(0), int(-2))), ComplexExact::new(int(0), int(2)));
        assert_eq!(canonical_o3(&q(-1, 2)), q(1, 2));
    }

    #[test]
    fn reformulation_small() {
        let r = verify_reformulation(20, 7, 2);
        assert!(r.passed());
    }
}
