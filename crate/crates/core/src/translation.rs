//! Translation identities for sl2 restricted to its Cartan subalgebra, weight
//! reconstruction by induction, and the stability regions of the `(lambda, nu)` plane.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{int, ComplexExact, ExactMatrix, ExactScalar};
use crate::report::{Outcome, ReportItem, VerificationReport};
use crate::sign::Sign;
use crate::sl2::{primary_projection, spectral_projector, weight_functional, Sl2Error, WeightModule};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum TranslationError {
    #[error("singular infinitesimal character lambda = 0")]
    SingularLambda,
    #[error("lambda = {0} coincides with -delta")]
    LambdaIsMinusDelta(String),
    #[error("{point} is not in the parameter set {lattice}")]
    OutsideLattice { point: String, lattice: String },
    #[error("nu = {nu} is not in Z + {eta}")]
    OutsideCharacterLattice { nu: String, eta: String },
    #[error("weight induction is inconclusive at n = {0}")]
    InductionInconclusive(u32),
    #[error(transparent)]
    Module(#[from] Sl2Error),
}

/// Parameters of the two-dimensional translation identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationDatum {
    pub lambda: ComplexExact,
    pub nu: ComplexExact,
    pub delta: Sign,
    pub epsilon: Sign,
}

impl TranslationDatum {
    pub fn new(lambda: impl Into<ComplexExact>, nu: impl Into<ComplexExact>, delta: Sign, epsilon: Sign) -> Self {
        TranslationDatum {
            lambda: lambda.into(),
            nu: nu.into(),
            delta,
            epsilon,
        }
    }

    /// `lambda + delta (1 + epsilon nu)`.
    pub fn numerator(&self) -> ComplexExact {
        let inner = &ComplexExact::one() + &self.nu.scale(&self.epsilon.scalar());
        &self.lambda + &inner.scale(&self.delta.scalar())
    }
}

/// `(lambda + delta(1 + epsilon nu)) / (2 lambda)`.
pub fn translation_scalar_c2(d: &TranslationDatum) -> Result<ComplexExact, TranslationError> {
    if d.lambda.is_zero() {
        return Err(TranslationError::SingularLambda);
    }
    Ok(d.numerator().checked_div(&d.lambda.scale(&int(2))).expect("nonzero"))
}

/// `((lambda + delta)^2 - nu^2) / (2 lambda (lambda + delta))`.
pub fn translation_scalar_c3(lambda: &ComplexExact, delta: Sign, nu: &ComplexExact) -> Result<ComplexExact, TranslationError> {
    if lambda.is_zero() {
        return Err(TranslationError::SingularLambda);
    }
    let shifted = lambda + &ComplexExact::from_int(delta.value());
    if shifted.is_zero() {
        return Err(TranslationError::LambdaIsMinusDelta(lambda.to_string()));
    }
    let num = &(&shifted * &shifted) - &(nu * nu);
    let den = (lambda * &shifted).scale(&int(2));
    Ok(num.checked_div(&den).expect("nonzero"))
}

/// Distinct weights carried by basis vectors with headroom at least `degree`.
pub fn interior_weights(m: &WeightModule, degree: usize) -> Vec<ExactScalar> {
    let set: BTreeSet<ExactScalar> = m.interior(degree).into_iter().map(|i| m.weight(i).clone()).collect();
    set.into_iter().rev().collect()
}

fn sq_minus_one(x: &ExactScalar) -> ExactScalar {
    x * x - ExactScalar::one()
}

/// Checks the two-dimensional translation identity
/// `(T (x) pr_eps) pr_{lambda -> lambda+delta}(u (x) f_eps) = c T(u) (x) f_eps`
/// for every interior basis vector `u`, every `nu` in `nus` and all `(delta, eps)`.
/// `T` is the weight-`nu` functional and `c` comes from [`translation_scalar_c2`].
pub fn verify_translation_c2(
    m: &WeightModule,
    lambda: &ExactScalar,
    nus: &[ExactScalar],
) -> Result<VerificationReport, TranslationError> {
    if lambda.is_zero() {
        return Err(TranslationError::SingularLambda);
    }
    let c2 = WeightModule::natural_c2();
    let a = WeightModule::tensor(m, &c2);
    let one = ExactScalar::one();
    let spectrum = [sq_minus_one(&(lambda + &one)), sq_minus_one(&(lambda - &one))];
    let interior = m.interior(1);
    let mut item = ReportItem::new(
        "translation-c2",
        "projection of u(x)f_eps onto the lambda+delta component, read through T(x)pr_eps, equals (lambda+delta(1+eps nu))/(2 lambda) T(u)",
    );
    let mut equivariance = ReportItem::new(
        "translation-c2-projection-equivariance",
        "the Casimir projections on M(x)C2 commute with H, X, Y",
    );
    for delta in Sign::BOTH {
        let target = sq_minus_one(&(lambda + delta.scalar()));
        let proj = primary_projection(&a, &spectrum, &target)?;
        equivariance.record(Outcome::check(
            || format!("{} lambda={lambda} delta={delta}", m.kind()),
            proj.is_equivariant(),
            || ("equivariant".into(), "not equivariant".into()),
        ));
        let cols: Vec<usize> = interior.iter().flat_map(|&u| [2 * u, 2 * u + 1]).collect();
        let absent = proj.matrix().columns_are_zero(&cols);
        for nu in nus {
            let t = weight_functional(m, nu)?;
            let t_row = t.matrix().row(0);
            let target_index = t_row.iter().position(|x| !x.is_zero());
            for eps in Sign::BOTH {
                let datum = TranslationDatum::new(lambda.clone(), nu.clone(), delta, eps);
                let c = translation_scalar_c2(&datum)?.re;
                let s = if eps == Sign::Plus { 0 } else { 1 };
                for &u in &interior {
                    let lhs = match target_index {
                        Some(i) => proj.matrix().get(2 * i + s, 2 * u + s).clone(),
                        None => ExactScalar::zero(),
                    };
                    let rhs = &c * &t_row[u];
                    let case = || format!("{} lambda={lambda} nu={nu} delta={delta} eps={eps} u={u}", m.kind());
                    let outcome = if absent && lhs == rhs {
                        Outcome::Vacuous
                    } else {
                        Outcome::compare(case, &rhs, &lhs)
                    };
                    item.record(outcome);
                }
            }
        }
    }
    let mut report = VerificationReport::new("translation-c2");
    report.push(item);
    report.push(equivariance);
    Ok(report)
}

/// Checks, for `M (x) C3` with `C3` the adjoint module and `pr` the `H`-coordinate:
/// `pr Omega~(u(x)H) = 0`, `pr Omega~^2 (u(x)H) = 16(lambda^2-1)u - 16 H^2 u` with
/// `Omega~ = Omega - lambda^2 - 7`, the factorised projector identity, and the full
/// three-dimensional translation identity with [`translation_scalar_c3`].
pub fn verify_translation_c3(
    m: &WeightModule,
    lambda: &ExactScalar,
    nus: &[ExactScalar],
) -> Result<VerificationReport, TranslationError> {
    if lambda.is_zero() {
        return Err(TranslationError::SingularLambda);
    }
    let c3 = WeightModule::adjoint_c3();
    let b = WeightModule::tensor(m, &c3);
    let n = b.dim();
    let omega = b.casimir();
    let lambda_sq = lambda * lambda;
    let omega_t = &omega - &ExactMatrix::scalar(n, &(&lambda_sq + int(7)));
    let omega_t2 = &omega_t * &omega_t;
    let interior = m.interior(2);
    let h_index = |i: usize| 3 * i + 1;
    let label = |u: usize| format!("{} lambda={lambda} u={u}", m.kind());

    let mut first = ReportItem::new(
        "translation-c3-first-power",
        "H-coordinate of (Omega - lambda^2 - 7)(u(x)H) vanishes",
    );
    let mut second = ReportItem::new(
        "translation-c3-second-power",
        "H-coordinate of (Omega - lambda^2 - 7)^2 (u(x)H) equals 16(lambda^2-1)u - 16 H^2 u",
    );
    for &u in &interior {
        let col = h_index(u);
        let w = m.weight(u);
        let ok1 = (0..m.dim()).all(|i| omega_t.get(h_index(i), col).is_zero());
        first.record(Outcome::check(|| label(u), ok1, || ("0".into(), "nonzero".into())));
        let expected = int(16) * (&lambda_sq - ExactScalar::one() - w * w);
        let ok2 = (0..m.dim()).all(|i| {
            let e = if i == u { expected.clone() } else { ExactScalar::zero() };
            omega_t2.get(h_index(i), col) == &e
        });
        second.record(Outcome::check(
            || label(u),
            ok2,
            || (expected.to_string(), omega_t2.get(col, col).to_string()),
        ));
    }

    let mut factorised = ReportItem::new(
        "translation-c3-projector-factorisation",
        "the spectral polynomial equals lambda(lambda+delta)/2 times the Lagrange projection and reduces to ((lambda+delta)^2 - H^2)/4 on u(x)H",
    );
    let mut item = ReportItem::new(
        "translation-c3",
        "projection of u(x)H onto the lambda+2delta component, read through T(x)pr, equals ((lambda+delta)^2-nu^2)/(2 lambda(lambda+delta)) T(u)",
    );
    for delta in Sign::BOTH {
        let shifted = lambda + delta.scalar();
        if shifted.is_zero() {
            item.notes.push(format!("delta={delta} skipped: lambda = -delta"));
            continue;
        }
        let target = sq_minus_one(&(lambda + int(2 * delta.value())));
        let nodes = [sq_minus_one(lambda), sq_minus_one(&(lambda - int(2 * delta.value())))];
        let proj = spectral_projector(&omega, &nodes, &target);
        let kappa = int(4) * (ExactScalar::one() + delta.scalar() * lambda);
        let half = lambda * &shifted / int(2);
        for &u in &interior {
            let col = h_index(u);
            let mut e = vec![ExactScalar::zero(); n];
            e[col] = ExactScalar::one();
            let v1 = omega_t.apply(&e);
            let v2 = omega_t.apply(&v1);
            let phi: Vec<ExactScalar> = (0..n)
                .map(|r| (&v2[r] + (&kappa + int(8)) * &v1[r] + int(8) * &kappa * &e[r]) / int(64))
                .collect();
            let w = m.weight(u);
            let reduced = (&shifted * &shifted - w * w) / int(4);
            let ok = (0..n).all(|r| phi[r] == &half * proj.get(r, col))
                && (0..m.dim()).all(|i| {
                    let expect = if i == u { reduced.clone() } else { ExactScalar::zero() };
                    phi[h_index(i)] == expect
                });
            factorised.record(Outcome::check(
                || format!("{} delta={delta}", label(u)),
                ok,
                || (reduced.to_string(), phi[col].to_string()),
            ));
        }
        for nu in nus {
            let t = weight_functional(m, nu)?;
            let t_row = t.matrix().row(0);
            let target_index = t_row.iter().position(|x| !x.is_zero());
            let c = translation_scalar_c3(&lambda.clone().into(), delta, &nu.clone().into())?.re;
            for &u in &interior {
                let lhs = match target_index {
                    Some(i) => proj.get(h_index(i), h_index(u)).clone(),
                    None => ExactScalar::zero(),
                };
                let rhs = &c * &t_row[u];
                item.record(Outcome::compare(
                    || format!("{} nu={nu} delta={delta}", label(u)),
                    &rhs,
                    &lhs,
                ));
            }
        }
    }
    let mut report = VerificationReport::new("translation-c3");
    report.push(first);
    report.push(second);
    report.push(factorised);
    report.push(item);
    Ok(report)
}

/// Weights of `V_n` obtained from `V_0 = C_0` by the translation induction alone.
///
/// Step `n-1 -> n` uses `lambda = n`: a weight `nu` of `V_{n-1}` produces the
/// weight `nu + eps` of `V_n` whenever the two-dimensional translation scalar
/// is nonzero. Conversely, with `lambda = n+1` and `delta = -1, eps = -`,
/// a weight `nu` of `V_n` forces `nu - 1` to be a weight of `V_{n-1}` unless the
/// scalar vanishes. The step succeeds when the two bounds meet.
pub fn reconstruct_weights(n: u32) -> Result<Vec<i64>, TranslationError> {
    let mut weights: BTreeSet<i64> = BTreeSet::from([0]);
    for step in 1..=n {
        let lower_lambda = int(step as i64);
        let mut lower = BTreeSet::new();
        for &nu in &weights {
            for eps in Sign::BOTH {
                let d = TranslationDatum::new(lower_lambda.clone(), int(nu), Sign::Plus, eps);
                if !translation_scalar_c2(&d)?.is_zero() {
                    lower.insert(nu + eps.value());
                }
            }
        }
        // Every other candidate is excluded because its downward translate is
        // not a weight of V_{step-1} while the gating scalar is nonzero.
        let upper_lambda = int(step as i64 + 1);
        let lo = weights.iter().next().copied().unwrap_or(0) - 2;
        let hi = weights.iter().next_back().copied().unwrap_or(0) + 2;
        let mut upper = BTreeSet::new();
        for nu in lo..=hi {
            let d = TranslationDatum::new(upper_lambda.clone(), int(nu), Sign::Minus, Sign::Minus);
            if weights.contains(&(nu - 1)) || translation_scalar_c2(&d)?.is_zero() {
                upper.insert(nu);
            }
        }
        if lower != upper {
            return Err(TranslationError::InductionInconclusive(step));
        }
        weights = lower;
    }
    Ok(weights.into_iter().rev().collect())
}

/// How members of the parameter set are selected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeRule {
    /// `Z + xi` for nonintegral `xi`.
    Shifted,
    PositiveIntegers,
    NegativeIntegers,
}

/// Parameter set of a coherent family through a nonsingular `xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterLattice {
    xi: ComplexExact,
    rule: LatticeRule,
}

impl ParameterLattice {
    pub fn new(xi: ComplexExact) -> Result<Self, TranslationError> {
        if xi.is_zero() {
            return Err(TranslationError::SingularLambda);
        }
        let rule = if !xi.is_integer() {
            LatticeRule::Shifted
        } else if xi.re.is_positive() {
            LatticeRule::PositiveIntegers
        } else {
            LatticeRule::NegativeIntegers
        };
        Ok(ParameterLattice { xi, rule })
    }

    pub fn xi(&self) -> &ComplexExact {
        &self.xi
    }

    pub fn rule(&self) -> LatticeRule {
        self.rule
    }

    pub fn contains(&self, lambda: &ComplexExact) -> bool {
        match self.rule {
            LatticeRule::Shifted => (lambda - &self.xi).is_integer(),
            LatticeRule::PositiveIntegers => lambda.is_integer() && lambda.re.is_positive(),
            LatticeRule::NegativeIntegers => lambda.is_integer() && lambda.re.is_negative(),
        }
    }
}

impl fmt::Display for ParameterLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            LatticeRule::Shifted => write!(f, "Z+({})", self.xi),
            LatticeRule::PositiveIntegers => f.write_str("N+"),
            LatticeRule::NegativeIntegers => f.write_str("N-"),
        }
    }
}

/// Region of the `(lambda, nu)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum XiChamber {
    #[serde(rename = "even")]
    Even,
    #[serde(rename = "odd-up")]
    OddUp,
    #[serde(rename = "odd-right")]
    OddRight,
    #[serde(rename = "odd-down")]
    OddDown,
    #[serde(rename = "odd-left")]
    OddLeft,
    #[serde(rename = "generic")]
    Generic,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl XiChamber {
    pub fn label(self) -> &'static str {
        match self {
            XiChamber::Even => "even",
            XiChamber::OddUp => "odd-up",
            XiChamber::OddRight => "odd-right",
            XiChamber::OddDown => "odd-down",
            XiChamber::OddLeft => "odd-left",
            XiChamber::Generic => "generic",
            XiChamber::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for XiChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Region of `(lambda, nu)` inside `Lambda(xi) x (Z + eta)`.
///
/// The parity branch is decided by the point itself: `lambda - nu` even gives
/// `Even`, nonintegral gives `Generic`, odd gives the unique region among
/// up/right/down/left whose inequality holds, or `Unclassified` if none does.
pub fn classify_xi(
    lambda: &ComplexExact,
    nu: &ComplexExact,
    xi: &ComplexExact,
    eta: &ComplexExact,
) -> Result<XiChamber, TranslationError> {
    let lattice = ParameterLattice::new(xi.clone())?;
    if !lattice.contains(lambda) {
        return Err(TranslationError::OutsideLattice {
            point: lambda.to_string(),
            lattice: lattice.to_string(),
        });
    }
    if !(nu - eta).is_integer() {
        return Err(TranslationError::OutsideCharacterLattice {
            nu: nu.to_string(),
            eta: eta.to_string(),
        });
    }
    let diff = lambda - nu;
    if diff.is_even_integer() {
        return Ok(XiChamber::Even);
    }
    if !diff.is_odd_integer() {
        return Ok(XiChamber::Generic);
    }
    let (l, v) = (&lambda.re, &nu.re);
    let one = ExactScalar::one();
    let chamber = if v >= &(l.abs() + &one) {
        XiChamber::OddUp
    } else if l >= &(v.abs() + &one) {
        XiChamber::OddRight
    } else if v <= &(-l.abs() - &one) {
        XiChamber::OddDown
    } else if l <= &(-v.abs() - &one) {
        XiChamber::OddLeft
    } else {
        XiChamber::Unclassified
    };
    Ok(chamber)
}

/// `[Pi_lambda : C_nu]` for the holomorphic discrete series: 1 iff `nu` is in `lambda + 1 + 2N`.
pub fn ktype_multiplicity_discrete(lambda: i64, nu: i64) -> u8 {
    u8::from(nu > lambda && (nu - lambda - 1) % 2 == 0)
}
