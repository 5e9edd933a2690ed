//! Named verification suites over their default windows.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::exact::{format_scalar, int, ExactScalar, UnivariatePolynomial};
use crate::fusion::{
    bilinear_expansion, c_bruteforce_with, g_form_scalar, pipeline_polynomial, rc_pipeline, verify_fusion_translation,
    verify_lw_translation, FusionTranslationRow,
};
use crate::rankin_cohen::{gamma_form_coefficients, probe_value_closed, rc_coefficients, rc_operator};
use crate::report::{Outcome, ReportItem, VerificationReport, Witness};
use crate::sign::Sign;
use crate::sl2::WeightModule;
use crate::translation::{
    classify_xi, interior_weights, ktype_multiplicity_discrete, reconstruct_weights, verify_translation_c2,
    verify_translation_c3, XiChamber,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    TranslationC2,
    TranslationC3,
    Fusion,
    O4O3,
    Weights,
    Ktypes,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["translation-c2", "translation-c3", "fusion", "o4o3", "weights", "ktypes", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TranslationC2 => "translation-c2",
            Suite::TranslationC3 => "translation-c3",
            Suite::Fusion => "fusion",
            Suite::O4O3 => "o4o3",
            Suite::Weights => "weights",
            Suite::Ktypes => "ktypes",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "translation-c2" => Suite::TranslationC2,
            "translation-c3" => Suite::TranslationC3,
            "fusion" => Suite::Fusion,
            "o4o3" => Suite::O4O3,
            "weights" => Suite::Weights,
            "ktypes" => Suite::Ktypes,
            "all" => Suite::All,
            other => return Err(format!("unknown suite '{other}' (expected one of {})", Suite::NAMES.join(", "))),
        })
    }
}

/// Window parameters shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest highest weight of the finite-dimensional modules in the translation suites.
    pub translation_max: u32,
    /// Lowest-weight parameters `1..=lw_max` for truncated models.
    pub lw_max: i64,
    pub truncation: usize,
    /// Interior margin for the two-dimensional identity; the three-dimensional one uses one more.
    pub margin: usize,
    /// `m, n <= fusion_max` for fusion constants.
    pub fusion_max: u32,
    /// `m, n <= expansion_max` for the bilinear expansions.
    pub expansion_max: u32,
    pub weights_max: u32,
    pub ktype_lambda_max: i64,
    pub ktype_truncation: usize,
    pub samples: usize,
    pub seed: u64,
    pub o4o3_grid: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            translation_max: 10,
            lw_max: 8,
            truncation: 40,
            margin: 1,
            fusion_max: 8,
            expansion_max: 6,
            weights_max: 20,
            ktype_lambda_max: 10,
            ktype_truncation: 60,
            samples: 100,
            seed: 1729,
            o4o3_grid: 6,
        }
    }
}

fn error_item(identity: &str, anchor: &str, case: String, err: impl fmt::Display) -> ReportItem {
    ReportItem::new(identity, anchor).with_outcomes([Outcome::Fail(Witness {
        case,
        expected: "computation succeeds".into(),
        actual: err.to_string(),
    })])
}

/// Finite irreps `V_m` (`lambda = m+1`, every weight) and truncated lowest-weight models.
fn translation_suite(cfg: &SuiteConfig, three: bool) -> VerificationReport {
    let name = if three { "translation-c3" } else { "translation-c2" };
    let margin = if three { cfg.margin + 1 } else { cfg.margin };
    let mut cases: Vec<(WeightModule, ExactScalar, Vec<ExactScalar>)> = Vec::new();
    for m in 0..=cfg.translation_max {
        let module = WeightModule::finite_irrep(m as i64).expect("nonnegative");
        let nus = interior_weights(&module, 0);
        cases.push((module, int(m as i64 + 1), nus));
    }
    for lambda in 1..=cfg.lw_max {
        let module = WeightModule::truncated_lowest_weight(&int(lambda), cfg.truncation).expect("long enough");
        let nus = interior_weights(&module, margin);
        cases.push((module, int(lambda), nus));
    }
    let reports: Vec<VerificationReport> = cases
        .par_iter()
        .map(|(module, lambda, nus)| {
            let r = if three {
                verify_translation_c3(module, lambda, nus)
            } else {
                verify_translation_c2(module, lambda, nus)
            };
            r.unwrap_or_else(|e| {
                let mut rep = VerificationReport::new(name);
                rep.push(error_item(name, "translation identity", format!("{} lambda={lambda}", module.kind()), e));
                rep
            })
        })
        .collect();
    let mut out = VerificationReport::new(name);
    for r in reports {
        out.merge(r);
    }
    for item in &mut out.items {
        item.values.insert("finite_max".into(), cfg.translation_max.to_string());
        item.values.insert("lowest_weight_max".into(), cfg.lw_max.to_string());
        item.values.insert("truncation".into(), cfg.truncation.to_string());
        item.values.insert("margin".into(), margin.to_string());
    }
    out
}

pub fn translation_c2_suite(cfg: &SuiteConfig) -> VerificationReport {
    translation_suite(cfg, false)
}

pub fn translation_c3_suite(cfg: &SuiteConfig) -> VerificationReport {
    translation_suite(cfg, true)
}

/// Weights of `V_n` rebuilt from the trivial module by translation, against the `H`-spectrum.
pub fn weights_suite(cfg: &SuiteConfig) -> VerificationReport {
    let outcomes: Vec<Outcome> = (0..=cfg.weights_max)
        .into_par_iter()
        .map(|n| {
            let direct: Vec<i64> = interior_weights(&WeightModule::finite_irrep(n as i64).expect("nonnegative"), 0)
                .iter()
                .map(|w| crate::exact::scalar::to_i64(w).expect("integral"))
                .collect();
            match reconstruct_weights(n) {
                Ok(w) => Outcome::compare(|| format!("n={n}"), &format!("{direct:?}"), &format!("{w:?}")),
                Err(e) => Outcome::Fail(Witness {
                    case: format!("n={n}"),
                    expected: format!("{direct:?}"),
                    actual: e.to_string(),
                }),
            }
        })
        .collect();
    let mut r = VerificationReport::new("weights");
    r.push(
        ReportItem::new(
            "weights-by-translation",
            "weights of V_n obtained from the trivial module by C2 translation equal the H-spectrum",
        )
        .with_outcomes(outcomes)
        .value("n_max", cfg.weights_max.to_string()),
    );
    r
}

/// K-type multiplicities of truncated lowest-weight models against the closed predicate
/// and against the odd-up chamber indicator.
pub fn ktypes_suite(cfg: &SuiteConfig) -> VerificationReport {
    let n = cfg.ktype_truncation;
    let rows: Vec<(Vec<Outcome>, Vec<Outcome>)> = (1..=cfg.ktype_lambda_max)
        .into_par_iter()
        .map(|lambda| {
            let module = WeightModule::truncated_lowest_weight(&int(lambda), n).expect("long enough");
            let top = lambda + 1 + 2 * (n as i64 - cfg.margin as i64);
            let mut model = Vec::new();
            let mut chamber = Vec::new();
            for nu in -top..=top {
                let closed = ktype_multiplicity_discrete(lambda, nu) as usize;
                let observed = module.weight_space(&int(nu)).len();
                model.push(Outcome::compare(|| format!("lambda={lambda} nu={nu}"), &closed, &observed));
                let xi = classify_xi(&lambda.into(), &nu.into(), &1.into(), &0.into());
                let indicator = matches!(xi, Ok(XiChamber::OddUp)) as usize;
                chamber.push(Outcome::compare(|| format!("lambda={lambda} nu={nu}"), &closed, &indicator));
            }
            (model, chamber)
        })
        .collect();
    let (model, chamber): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let mut r = VerificationReport::new("ktypes");
    r.push(
        ReportItem::new(
            "ktype-formula",
            "[Pi_lambda : C_nu] = 1 iff nu is in lambda+1+2N, against truncated lowest-weight models",
        )
        .with_outcomes(model.into_iter().flatten())
        .value("lambda_max", cfg.ktype_lambda_max.to_string())
        .value("truncation", n.to_string())
        .value("margin", cfg.margin.to_string()),
    );
    r.push(
        ReportItem::new(
            "ktype-chamber-indicator",
            "the K-type predicate is the indicator of the odd-up chamber of the parameter lattice through 1",
        )
        .with_outcomes(chamber.into_iter().flatten()),
    );
    r
}

fn row_case(m: u32, n: u32, l: u32, row: &FusionTranslationRow) -> String {
    format!("m={m} n={n} l={l} ({}{})", row.delta, row.epsilon)
}

/// Rankin–Cohen operators, brute-force fusion constants against both closed forms,
/// bilinear expansions and the lowest-weight triple `(1, 1, 3)`.
pub fn fusion_suite(cfg: &SuiteConfig) -> VerificationReport {
    let max = cfg.fusion_max;
    let pairs: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();

    let mut equivariance = ReportItem::new("rankin-cohen-equivariance", "R_{m,n}^k commutes with H, X, Y");
    let mut probe = ReportItem::new(
        "rankin-cohen-probe-value",
        "R_{m,n}^k(z^l (x) 1) = (-1)^l n!/(n-l)!",
    )
    .note("the coefficient of d_z^l in R_{m,n}^k is (-1)^l n!/(l!(n-l)!); applying d_z^l to z^l contributes the extra l!");
    let mut leading = ReportItem::new(
        "rankin-cohen-leading-coefficient",
        "coefficient of d_z^l in R_{m,n}^k equals (-1)^l n!/(l!(n-l)!)",
    );
    let mut gamma = ReportItem::new(
        "rankin-cohen-gamma-form",
        "gamma-ratio coefficients at (m+1, n+1) equal (-1)^l times the factorial coefficients",
    )
    .note("both gamma ratios are polynomials in the parameters, so no pole can survive");
    let mut g_form = ReportItem::new(
        "fusion-constant-g-form",
        "8 lambda' lambda'' c_{delta eps} = g_{delta eps}(m, n; k) with c from the matrix pipeline",
    );
    let mut same_sign = ReportItem::new(
        "fusion-constant-closed-form-same-signs",
        "c from the pipeline equals (delta l' + eps l'' + 1 + l''')(delta l' + eps l'' + 1 - l''')/(8 l' l'') for (+,+) and (-,-)",
    );
    let mut mixed = ReportItem::new(
        "fusion-constant-closed-form-mixed-signs",
        "|c| from the pipeline equals |(delta l' + eps l'' + 1 + l''')(delta l' + eps l'' + 1 - l''')/(8 l' l'')| for (+,-) and (-,+)",
    );
    let mut plus_plus = ReportItem::new(
        "fusion-plus-plus-scalar",
        "c_{++} = (l+1)(m+n-l+2) / (2(m+1)(n+1)) at the probe z^l (x) 1",
    );
    let mut probes = ReportItem::new(
        "fusion-probe-independence",
        "the scalar is the same for every monomial probe u (x) v; probes with T(u (x) v) = 0 give 0",
    );
    let mut sign_mismatches = 0usize;

    type CaseOut = (u32, u32, u32, Result<Vec<FusionTranslationRow>, String>, bool, ExactScalar);
    let cases: Vec<CaseOut> = pairs
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let pipeline = rc_pipeline(m, n);
            (0..=m.min(n))
                .map(|l| {
                    let pipeline = match &pipeline {
                        Ok(p) => p,
                        Err(e) => return (m, n, l, Err(e.to_string()), false, ExactScalar::default()),
                    };
                    let r = match rc_operator(m, n, l) {
                        Ok(r) => r,
                        Err(e) => return (m, n, l, Err(e.to_string()), false, ExactScalar::default()),
                    };
                    let k = m + n - 2 * l;
                    let rows = verify_fusion_translation(
                        pipeline,
                        |w| r.matrix().apply(w),
                        &(0..=m as usize).flat_map(|i| (0..=n as usize).map(move |j| (i, j))).collect::<Vec<_>>(),
                        (l as usize, 0),
                        (m as i64 + 1, n as i64 + 1, k as i64 + 1),
                    )
                    .map_err(|e| e.to_string());
                    (m, n, l, rows, r.is_equivariant(), r.probe_value())
                })
                .collect::<Vec<_>>()
        })
        .collect();

    for (m, n, l, rows, equivariant, value) in cases {
        let case = || format!("m={m} n={n} l={l}");
        equivariance.record(Outcome::check(case, equivariant, || ("equivariant".into(), "not equivariant".into())));
        probe.record(Outcome::compare(case, &probe_value_closed(n, l), &value));
        let coeffs = rc_coefficients(m, n, l).expect("in range");
        let printed = probe_value_closed(n, l) / ExactScalar::from_integer(crate::exact::scalar::factorial(l as u64));
        leading.record(Outcome::compare(case, &printed, &coeffs[0]));
        let sign = if l % 2 == 0 { int(1) } else { int(-1) };
        let expected_gamma: Vec<String> = coeffs.iter().map(|c| format_scalar(&(&sign * c))).collect();
        let got_gamma: Vec<String> = gamma_form_coefficients(&int(m as i64 + 1), &int(n as i64 + 1), l)
            .iter()
            .map(format_scalar)
            .collect();
        gamma.record(Outcome::compare(case, &expected_gamma.join(","), &got_gamma.join(",")));
        let rows = match rows {
            Ok(rows) => rows,
            Err(e) => {
                let w = Witness {
                    case: case(),
                    expected: "consistent scalar across probes".into(),
                    actual: e,
                };
                probes.record(Outcome::Fail(w));
                continue;
            }
        };
        probes.record(Outcome::Pass);
        let (lp, lpp) = (int(m as i64 + 1), int(n as i64 + 1));
        for row in &rows {
            let c = || row_case(m, n, l, row);
            let scaled = int(8) * &lp * &lpp * &row.pipeline;
            let g = crate::fusion::g_function(m as i64, n as i64, (m + n - 2 * l) as i64, row.delta, row.epsilon);
            g_form.record(Outcome::compare(c, &g, &scaled));
            if row.delta == row.epsilon {
                same_sign.record(Outcome::compare(c, &row.closed_form, &row.pipeline));
            } else {
                let abs = |x: &ExactScalar| if x < &ExactScalar::default() { -x.clone() } else { x.clone() };
                mixed.record(Outcome::compare(c, &abs(&row.closed_form), &abs(&row.pipeline)));
                if row.pipeline != row.closed_form {
                    sign_mismatches += 1;
                }
            }
            if (row.delta, row.epsilon) == (Sign::Plus, Sign::Plus) {
                let expected = int((l as i64 + 1) * (m as i64 + n as i64 - l as i64 + 2))
                    / int(2 * (m as i64 + 1) * (n as i64 + 1));
                plus_plus.record(Outcome::compare(c, &expected, &row.pipeline));
            }
        }
    }
    for item in [&mut equivariance, &mut probe, &mut leading, &mut gamma, &mut g_form, &mut same_sign, &mut mixed, &mut plus_plus, &mut probes] {
        item.values.insert("m_max".into(), max.to_string());
        item.values.insert("n_max".into(), max.to_string());
    }
    mixed.values.insert("sign_mismatches".into(), sign_mismatches.to_string());
    let mixed = if sign_mismatches > 0 {
        mixed.flag(format!(
            "for (+,-) and (-,+) the closed form equals -g/(8 l' l''), the negative of the pipeline value, in {sign_mismatches} nonzero cases"
        ))
    } else {
        mixed
    };

    let mut report = VerificationReport::new("fusion");
    for item in [equivariance, probe, leading, gamma, g_form, same_sign, mixed, plus_plus, probes] {
        report.push(item);
    }
    report.push(expansion_item(cfg.expansion_max));
    report.push(lowest_weight_item());
    report
}

fn expansion_item(max: u32) -> ReportItem {
    let pairs: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    let outcomes: Vec<Outcome> = pairs
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let pipeline = rc_pipeline(m, n).expect("nonsingular");
            let mut out = Vec::new();
            for (d, e) in Sign::pairs() {
                for i in 0..=m {
                    for j in 0..=n {
                        let f = UnivariatePolynomial::monomial(i, int(1));
                        let g = UnivariatePolynomial::monomial(j, int(1));
                        let closed = bilinear_expansion(d, e, &f, &g, m, n).expect("degrees in range");
                        let matrix = pipeline_polynomial(&pipeline, d, e, &f, &g);
                        out.push(Outcome::check(
                            || format!("m={m} n={n} ({d}{e}) F=z^{i} G=w^{j}"),
                            closed == matrix,
                            || (format!("{closed:?}"), format!("{matrix:?}")),
                        ));
                    }
                }
            }
            out
        })
        .collect();
    ReportItem::new(
        "bilinear-expansions",
        "closed expansions of 2(m+1)(n+1)(id (x) pr) pr_{delta eps} H(F, G) equal the matrix pipeline",
    )
    .with_outcomes(outcomes)
    .value("m_max", max.to_string())
    .value("n_max", max.to_string())
}

fn lowest_weight_item() -> ReportItem {
    let item = ReportItem::new(
        "fusion-lowest-weight-triple",
        "for Pi_1 (x) Pi_1 -> Pi_3 on truncated models the pipeline scalar equals g(l'-1, l''-1; l'''-1)/(8 l' l'') with l' = lambda1",
    )
    .value("truncation", "30")
    .value("margin", "2");
    match verify_lw_translation((1, 1, 3), 30, 2, 6) {
        Ok(rows) => {
            let outcomes: Vec<Outcome> = rows
                .iter()
                .map(|r| Outcome::compare(|| format!("({}{})", r.delta, r.epsilon), &r.g_form, &r.pipeline))
                .collect();
            let values: Vec<String> = rows.iter().map(|r| format!("{}{}={}", r.delta, r.epsilon, format_scalar(&r.pipeline))).collect();
            item.with_outcomes(outcomes).value("pipeline", values.join(" "))
        }
        Err(e) => item.with_outcomes([Outcome::Fail(Witness {
            case: "(1, 1, 3)".into(),
            expected: "pipeline runs".into(),
            actual: e.to_string(),
        })]),
    }
}

pub fn o4o3_suite(cfg: &SuiteConfig) -> VerificationReport {
    crate::o4o3::verify_reformulation(cfg.samples, cfg.seed, cfg.o4o3_grid)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    match suite {
        Suite::TranslationC2 => translation_c2_suite(cfg),
        Suite::TranslationC3 => translation_c3_suite(cfg),
        Suite::Fusion => fusion_suite(cfg),
        Suite::O4O3 => o4o3_suite(cfg),
        Suite::Weights => weights_suite(cfg),
        Suite::Ktypes => ktypes_suite(cfg),
        Suite::All => {
            let mut all = VerificationReport::new("all");
            for s in [Suite::TranslationC2, Suite::TranslationC3, Suite::Fusion, Suite::O4O3, Suite::Weights, Suite::Ktypes] {
                all.append(run_suite(s, cfg));
            }
            all
        }
    }
}

/// `c` via the pipeline for one `(m, n, l, delta, eps)`, alongside both closed forms.
pub fn fusion_scalars(m: u32, n: u32, l: u32, delta: Sign, epsilon: Sign) -> Result<[ExactScalar; 3], crate::fusion::FusionError> {
    let pipeline = rc_pipeline(m, n)?;
    let c = c_bruteforce_with(&pipeline, m, n, l, delta, epsilon)?.c;
    let k = (m + n - 2 * l) as i64;
    let g = g_form_scalar(m as i64 + 1, n as i64 + 1, k + 1, delta, epsilon)?;
    let closed = crate::fusion::c_closed_form(&(m as i64 + 1).into(), &(n as i64 + 1).into(), &(k + 1).into(), delta, epsilon)?;
    Ok([c, g, closed.re])
}
