//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::cell::OnceCell;
use std::process::{Command, ExitCode};
use std::time::Instant;

use sl2branch::exact::scalar::{factorial, from_bigint};
use sl2branch::exact::ExactScalar;
use sl2branch::fences::{ktype_sweep, pieri_sweep, su2_weight_sweep};
use sl2branch::rankin_cohen::rc_operator;
use sl2branch::report::{Status, VerificationReport};
use sl2branch::sl2::tensor_decomposition;
use sl2branch::suites::{run_suite, Suite, SuiteConfig};
use sl2branch::verma::{fusion_lw_hom_dim, fusion_rule_holds, verma_region_scan, OBSERVED_REGION, VERMA_PREDICATES};

type Verdict = (bool, String);
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

fn pieri_predicate(m: u32, n: u32, k: u32) -> usize {
    usize::from(m.abs_diff(n) <= k && k <= m + n && (m + n - k).is_multiple_of(2))
}

fn pieri() -> Verdict {
    let mut bad = Vec::new();
    for m in 0..=12 {
        for n in 0..=12 {
            for (k, mult) in tensor_decomposition(m, n) {
                if mult != pieri_predicate(m, n, k) {
                    bad.push(format!("({m},{n},{k}) -> {mult}"));
                }
            }
        }
    }
    (bad.is_empty(), format!("169 pairs, mismatches: {}", bad.len()))
}

/// Every named item present, none failing, none vacuous-only.
fn items_pass(report: &VerificationReport, names: &[&str]) -> Verdict {
    let mut bad = Vec::new();
    for name in names {
        match report.item(name) {
            None => bad.push(format!("{name}: missing")),
            Some(i) if i.status != Status::Pass || i.checked == 0 => {
                bad.push(format!("{name}: {} ({}/{} failed)", i.status, i.failed, i.checked))
            }
            Some(_) => {}
        }
    }
    let checks: usize = names.iter().filter_map(|n| report.item(n)).map(|i| i.checked).sum();
    if bad.is_empty() {
        (true, format!("{checks} exact checks"))
    } else {
        (false, bad.join("; "))
    }
}

fn suite_passes(suite: Suite, cfg: &SuiteConfig) -> Verdict {
    let report = run_suite(suite, cfg);
    let names: Vec<&str> = report.items.iter().map(|i| i.identity.as_str()).collect();
    items_pass(&report, &names)
}

fn translation_c3(cfg: &SuiteConfig) -> Verdict {
    let report = run_suite(Suite::TranslationC3, cfg);
    let margins_ok = report.items.iter().all(|i| i.values.get("margin").map(String::as_str) == Some("2"));
    let names: Vec<&str> = report.items.iter().map(|i| i.identity.as_str()).collect();
    let (ok, detail) = items_pass(&report, &names);
    (ok && margins_ok && names.len() >= 4, format!("{detail}, interior margin 2: {margins_ok}"))
}

fn fusion_constants(report: &VerificationReport) -> Verdict {
    let (ok, detail) = items_pass(report, &["fusion-constant-g-form", "fusion-constant-closed-form-same-signs"]);
    let mixed = report.item("fusion-constant-closed-form-mixed-signs");
    let mixed_ok = mixed.is_some_and(|i| i.status == Status::Flagged && i.failed == 0 && i.checked > 0);
    (ok && mixed_ok, format!("{detail}, mixed-sign item flagged: {mixed_ok}"))
}

/// `(-1)^l n! / (l! (n-l)!)`
fn binomial_value(n: u32, l: u32) -> ExactScalar {
    let v = from_bigint(factorial(n.into())) / from_bigint(factorial(l.into()) * factorial((n - l).into()));
    if l % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `(-1)^l n! / (n-l)!`
fn falling_value(n: u32, l: u32) -> ExactScalar {
    binomial_value(n, l) * from_bigint(factorial(l.into()))
}

fn rankin_cohen(report: &VerificationReport) -> Verdict {
    let (mut total, mut not_equivariant, mut printed_mismatch, mut falling_mismatch) = (0, 0, 0, 0);
    let mut first = None;
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            for l in 0..=m.min(n) {
                let op = rc_operator(m, n, l).expect("order in range");
                total += 1;
                if !op.is_equivariant() {
                    not_equivariant += 1;
                }
                let value = op.probe_value();
                if value != binomial_value(n, l) {
                    printed_mismatch += 1;
                    first.get_or_insert(format!("m={m} n={n} l={l}: R(z^l (x) 1) = {value}, printed form gives {}", binomial_value(n, l)));
                }
                if value != falling_value(n, l) {
                    falling_mismatch += 1;
                }
            }
        }
    }
    let (pp_ok, _) = items_pass(report, &["fusion-plus-plus-scalar"]);
    let ok = not_equivariant == 0 && printed_mismatch == 0 && pp_ok;
    let mut detail = format!(
        "{total} operators, non-equivariant {not_equivariant}, value vs (-1)^l n!/(l!(n-l)!) mismatches {printed_mismatch}, \
         value vs (-1)^l n!/(n-l)! mismatches {falling_mismatch}, (l+1)(m+n-l+2) scalar: {pp_ok}"
    );
    if let Some(f) = first {
        detail.push_str(&format!("; first: {f}"));
    }
    (ok, detail)
}

fn fusion_rule() -> Verdict {
    let mut bad = 0;
    for a in 1..=12 {
        for b in 1..=12 {
            for c in 1..=12 {
                if fusion_lw_hom_dim(a, b, c) != u64::from(fusion_rule_holds(a, b, c)) {
                    bad += 1;
                }
            }
        }
    }
    (bad == 0, format!("1728 triples, mismatches: {bad}"))
}

fn verma() -> Verdict {
    let scan = verma_region_scan(20);
    let values = scan.values();
    let values_ok = values.iter().all(|v| *v <= 2) && values.contains(&2);
    let violations = scan.report.violations();
    let observed = scan.comparison(OBSERVED_REGION.name).is_some_and(|c| c.exact());
    let table: Vec<String> = VERMA_PREDICATES
        .iter()
        .filter_map(|p| scan.comparison(p.name))
        .map(|c| format!("{}: {} agree / {} disagree", c.predicate, c.agreements, c.disagreements.len()))
        .collect();
    let emitted = table.len() == VERMA_PREDICATES.len();
    (
        values_ok && violations == 0 && observed && emitted,
        format!(
            "values {values:?}, {} chambers, violations {violations}, observed region exact: {observed}; {}",
            scan.report.verdicts.len(),
            table.join("; ")
        ),
    )
}

fn stability() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut pieri_one = true;
    let mut pieri_violations = 0;
    for l3 in 1..=9 {
        let r = pieri_sweep(l3, 25);
        pieri_violations += r.violations();
        pieri_one &= r.verdict("odd-northeast").is_none_or(|v| v.value == Some(1));
    }
    ok &= pieri_violations == 0 && pieri_one;
    parts.push(format!("pieri violations {pieri_violations}, odd-northeast = 1: {pieri_one}"));

    let su2 = su2_weight_sweep(30);
    let su2_right = su2.verdict("odd-right").is_some_and(|v| v.value == Some(1));
    ok &= su2.violations() == 0 && su2_right;
    parts.push(format!("su2 violations {}, odd-right = 1: {su2_right}", su2.violations()));

    let kt = ktype_sweep(30, 1);
    let kt_up = kt.verdict("odd-up").is_some_and(|v| v.value == Some(1));
    ok &= kt.violations() == 0 && kt_up;
    parts.push(format!("k-type violations {}, odd-up = 1: {kt_up}", kt.violations()));
    (ok, parts.join("; "))
}

fn o4o3(cfg: &SuiteConfig) -> Verdict {
    let report = run_suite(Suite::O4O3, cfg);
    let (ok, detail) = items_pass(&report, &["o4o3-sampled", "o4o3-integer-grid"]);
    let sampled = report.item("o4o3-sampled").map_or(0, |i| i.checked);
    (ok && sampled >= 100, format!("{detail}, sampled checks {sampled}"))
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sl2branch"))
            .args(["verify", "all"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let code = a.status.code();
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap_or_default();
    let flagged = report["items"]
        .as_array()
        .map_or(0, |items| items.iter().filter(|i| i["status"] == "flagged").count());
    (
        identical && code == Some(0) && flagged == 1,
        format!("identical: {identical}, exit {code:?}, flagged items {flagged}"),
    )
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let fusion_report = OnceCell::new();
    let fusion = || fusion_report.get_or_init(|| run_suite(Suite::Fusion, &cfg));

    let criteria: Vec<Criterion> = vec![
        ("pieri rule, m, n <= 12", Box::new(pieri)),
        ("C^2 translation identity", Box::new(|| suite_passes(Suite::TranslationC2, &cfg))),
        ("C^3 translation identity and intermediates", Box::new(|| translation_c3(&cfg))),
        ("fusion constants", Box::new(|| fusion_constants(fusion()))),
        ("Rankin-Cohen equivariance and probe value", Box::new(|| rankin_cohen(fusion()))),
        ("bilinear expansions", Box::new(|| items_pass(fusion(), &["bilinear-expansions"]))),
        ("weight reconstruction by translation", Box::new(|| suite_passes(Suite::Weights, &cfg))),
        ("discrete-series K-type formula", Box::new(|| suite_passes(Suite::Ktypes, &cfg))),
        ("fusion rule, lambda_i <= 12", Box::new(fusion_rule)),
        ("Verma oracle", Box::new(verma)),
        ("stability sweeps", Box::new(stability)),
        ("o(4)/o(3) reformulation", Box::new(|| o4o3(&cfg))),
        ("determinism of verify all", Box::new(determinism)),
    ];

    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check();
        let secs = start.elapsed().as_secs_f64();
        if !ok {
            failures += 1;
        }
        println!("{} criterion {:>2} {name} [{secs:.1}s]: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of 13 criteria passed", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
