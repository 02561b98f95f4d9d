//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them; the test names themselves
//! double as the pass/fail report).
//!
//! Tolerances are the contract values, pinned here as constants; no
//! criterion defers to later calibration.

use std::process::Command;
use std::time::Instant;

use ladderpoly::certify::{certify_family, default_drift_grid, float_drift, CheckStatus};
use ladderpoly::family::Family;
use ladderpoly::ladder::{algebra_checks, ladder_state, LadderFamily};
use ladderpoly::limits::{
    default_grid, fit_order, meixner_laguerre_raw_error, LimitKind, LimitSchedule,
};
use ladderpoly::normalized::{
    relative_residual, HydrogenStates, NcRelation, NormalizedFamily,
};
use ladderpoly::scalar::Rational;
use ladderpoly::wigner::{WignerEvaluator, WignerRelation};
use ladderpoly::build_by_recurrence;

// Contract tolerances.
const EXACT_CERTIFY_BUDGET_SECS: f64 = 30.0;
const CONTINUOUS_RESIDUAL_REL: f64 = 1e-10;
const WIGNER_DUALITY_ABS: f64 = 1e-12;
const WIGNER_UNITARITY_ABS: f64 = 1e-10;
const WIGNER_RELATION_REL: f64 = 1e-10;
const SPIN_HALF_CLOSED_FORM_ABS: f64 = 1e-14;
const COMMUTATOR_ABS: f64 = 1e-12;
const LADDER_SUP_ABS: f64 = 1e-9;
const MEIXNER_CLOSED_FORM_ABS: f64 = 1e-12;
const MEIXNER_ORDER_RANGE: (f64, f64) = (0.8, 1.2);
const KRAVCHUK_PEAK_REL: f64 = 0.01;
const HYDROGEN_RESIDUAL_REL: f64 = 1e-10;
const HYDROGEN_OVERLAP_ABS: f64 = 1e-8;
const DRIFT_REL: f64 = 1e-12;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn beta_grid() -> Vec<f64> {
    (0..7).map(|k| 0.3 + 0.4 * k as f64).collect()
}

#[test]
fn criterion_1_exact_certification() {
    let start = Instant::now();
    let mut cases: Vec<(Family<Rational>, usize)> = Vec::new();
    for size in [4i64, 8, 16] {
        cases.push((Family::kravchuk(q(1, 2), size).unwrap(), size as usize));
    }
    for gamma in [1i64, 2, 3] {
        for (mn, md) in [(1i64, 4i64), (1, 2)] {
            cases.push((Family::meixner(q(gamma, 1), q(mn, md)).unwrap(), 10));
        }
    }
    for (family, n_max) in &cases {
        let report = certify_family(family, *n_max).unwrap();
        assert!(
            report.passed(),
            "{} {:?}: first failure {:?}",
            report.family,
            report.params,
            report.first_failure()
        );
        for check in &report.checks {
            assert_eq!(
                check.status,
                CheckStatus::Exact,
                "{} check '{}' did not run exactly",
                report.family,
                check.name
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < EXACT_CERTIFY_BUDGET_SECS, "took {elapsed:.1} s");
    println!(
        "ACCEPTANCE criterion 1 (exact certification, {} configs, {elapsed:.2} s): PASS",
        cases.len()
    );
}

/// (C1) residual relative to its largest term, float route.
fn c1_residual(family: &Family<f64>, n_max: usize, grid: &[f64]) -> f64 {
    let seq = build_by_recurrence(family, n_max).unwrap();
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        let p = seq.poly(n);
        let lambda = family.eigenvalue(n);
        for &s in grid {
            let terms = [
                family.sigma().eval(&s) * p.derivative().derivative().eval(&s),
                family.tau().eval(&s) * p.derivative().eval(&s),
                lambda * p.eval(&s),
            ];
            worst = worst.max(relative_residual(&terms));
        }
    }
    worst
}

#[test]
fn criterion_2_continuous_residuals() {
    // Hermite: n <= 10, |s| <= 8.
    let hermite_grid: Vec<f64> = (-32..=32).map(|k| k as f64 * 0.25).collect();
    let hermite: Family<f64> = Family::hermite();
    let c1 = c1_residual(&hermite, 10, &hermite_grid);
    assert!(c1 < CONTINUOUS_RESIDUAL_REL, "hermite C1: {c1}");
    let nf = NormalizedFamily::new(hermite, 11).unwrap();
    let mut nc1: f64 = 0.0;
    for n in 0..=10 {
        for &s in &hermite_grid {
            nc1 = nc1.max(nf.nc_residual(NcRelation::Nc1, n, s).unwrap());
        }
    }
    assert!(nc1 < CONTINUOUS_RESIDUAL_REL, "hermite NC1: {nc1}");

    // Laguerre: alpha in {0, 1/2, 2}, n <= 10, s in (0, 30].
    let laguerre_grid: Vec<f64> = (1..=60).map(|k| k as f64 * 0.5).collect();
    for alpha in [0.0, 0.5, 2.0] {
        let family = Family::laguerre(alpha).unwrap();
        let c1 = c1_residual(&family, 10, &laguerre_grid);
        assert!(c1 < CONTINUOUS_RESIDUAL_REL, "laguerre({alpha}) C1: {c1}");
        let nf = NormalizedFamily::new(family, 11).unwrap();
        let mut nc1: f64 = 0.0;
        for n in 0..=10 {
            for &s in &laguerre_grid {
                nc1 = nc1.max(nf.nc_residual(NcRelation::Nc1, n, s).unwrap());
            }
        }
        assert!(nc1 < CONTINUOUS_RESIDUAL_REL, "laguerre({alpha}) NC1: {nc1}");
    }
    println!("ACCEPTANCE criterion 2 (continuous C1/NC1 residuals): PASS");
}

#[test]
fn criterion_3_wigner_suite() {
    let mut worst_duality: f64 = 0.0;
    let mut worst_unitarity: f64 = 0.0;
    let mut worst_relation: f64 = 0.0;
    for two_j in 1..=12i64 {
        for &beta in &beta_grid() {
            let ev = WignerEvaluator::new(two_j, beta).unwrap();
            for two_m in ev.index_range() {
                worst_unitarity = worst_unitarity.max((ev.row_norm(two_m).unwrap() - 1.0).abs());
                for two_mp in ev.index_range() {
                    let lhs = ev.d(two_m, two_mp).unwrap();
                    let sign = if ((two_m - two_mp) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    worst_duality =
                        worst_duality.max((lhs - sign * ev.d(two_mp, two_m).unwrap()).abs());
                    for rel in [
                        WignerRelation::Nd1,
                        WignerRelation::Nd2,
                        WignerRelation::Nd3,
                        WignerRelation::Nd4,
                    ] {
                        worst_relation = worst_relation
                            .max(ev.relation_residual(rel, two_m, two_mp).unwrap());
                    }
                }
            }
        }
    }
    assert!(worst_duality < WIGNER_DUALITY_ABS, "duality: {worst_duality}");
    assert!(worst_unitarity < WIGNER_UNITARITY_ABS, "unitarity: {worst_unitarity}");
    assert!(worst_relation < WIGNER_RELATION_REL, "relations: {worst_relation}");

    // d^(1/2) against the closed 2x2 form.
    let mut worst_half: f64 = 0.0;
    for &beta in &beta_grid() {
        let ev = WignerEvaluator::new(1, beta).unwrap();
        let (c, s) = ((0.5 * beta).cos(), (0.5 * beta).sin());
        worst_half = worst_half
            .max((ev.d(1, 1).unwrap() - c).abs())
            .max((ev.d(1, -1).unwrap() + s).abs())
            .max((ev.d(-1, 1).unwrap() - s).abs())
            .max((ev.d(-1, -1).unwrap() - c).abs());
    }
    assert!(worst_half < SPIN_HALF_CLOSED_FORM_ABS, "spin-1/2: {worst_half}");
    println!(
        "ACCEPTANCE criterion 3 (wigner duality {worst_duality:.1e}, unitarity \
         {worst_unitarity:.1e}, relations {worst_relation:.1e}): PASS"
    );
}

#[test]
fn criterion_4_algebra_closure() {
    // Wigner: finite representations close exactly at every entry.
    for two_j in [1i64, 3, 5, 8, 12] {
        let checks = algebra_checks(&LadderFamily::Wigner { two_j }, (two_j + 1) as usize).unwrap();
        for c in &checks {
            assert!(c.residual < COMMUTATOR_ABS, "wigner 2j={two_j} {}: {}", c.relation, c.residual);
        }
        // The as-printed bracket order [A+, A-] does not close; that finding
        // is surfaced, not silently corrected.
        assert!(checks[0].printed_residual > 0.1);
    }
    // Hermite, Laguerre, Meixner at truncation size 12, interior indices.
    for (family, label) in [
        (LadderFamily::Hermite, "hermite"),
        (LadderFamily::Laguerre { alpha: 0.5 }, "laguerre"),
        (LadderFamily::Meixner { gamma: 1.0, mu: 0.5 }, "meixner"),
        (LadderFamily::Meixner { gamma: 3.0, mu: 0.25 }, "meixner'"),
    ] {
        for c in algebra_checks(&family, 12).unwrap() {
            assert!(c.residual < COMMUTATOR_ABS, "{label} {}: {}", c.relation, c.residual);
        }
    }
    println!("ACCEPTANCE criterion 4 (so(3)/su(1,1) closure at 1e-12): PASS");
}

#[test]
fn criterion_5_ladder_construction() {
    // Hermite on |s| <= 6.
    let fam: Family<f64> = Family::hermite();
    let nf = NormalizedFamily::new(fam.clone(), 10).unwrap();
    let grid: Vec<f64> = (-24..=24).map(|k| k as f64 * 0.25).collect();
    for n in 0..=10usize {
        let st = ladder_state(&fam, n, &grid).unwrap();
        assert!(st.norm_checked, "hermite n = {n} norm");
        for (i, &s) in grid.iter().enumerate() {
            let direct = nf.psi(n, s).unwrap();
            assert!(
                (st.values[i] - direct).abs() < LADDER_SUP_ABS,
                "hermite n = {n} s = {s}"
            );
        }
    }
    // Laguerre alpha in {0, 1} on (0, 20].
    for alpha in [0.0, 1.0] {
        let fam = Family::laguerre(alpha).unwrap();
        let nf = NormalizedFamily::new(fam.clone(), 10).unwrap();
        let grid: Vec<f64> = (1..=40).map(|k| k as f64 * 0.5).collect();
        for n in 0..=10usize {
            let st = ladder_state(&fam, n, &grid).unwrap();
            assert!(st.norm_checked, "laguerre({alpha}) n = {n} norm");
            for (i, &s) in grid.iter().enumerate() {
                let direct = nf.psi(n, s).unwrap();
                assert!(
                    (st.values[i] - direct).abs() < LADDER_SUP_ABS,
                    "laguerre({alpha}) n = {n} s = {s}"
                );
            }
        }
    }
    // Meixner gamma = 1, mu = 1/2 on x <= 30.
    let fam = Family::meixner(1.0, 0.5).unwrap();
    let nf = NormalizedFamily::new(fam.clone(), 10).unwrap();
    let grid: Vec<f64> = (0..=30).map(|x| x as f64).collect();
    for n in 0..=10usize {
        let st = ladder_state(&fam, n, &grid).unwrap();
        assert!(st.norm_checked, "meixner n = {n} norm");
        for (i, &x) in grid.iter().enumerate() {
            let direct = nf.psi_lattice(n, x as i64).unwrap();
            assert!(
                (st.values[i] - direct).abs() < LADDER_SUP_ABS,
                "meixner n = {n} x = {x}"
            );
        }
    }
    println!("ACCEPTANCE criterion 5 (ladder route matches direct route at 1e-9): PASS");
}

#[test]
fn criterion_6_limits() {
    let h_schedule: Vec<f64> = (0..5).map(|k| 0.1 * 2f64.powi(-k)).collect();
    let s_grid = default_grid(LimitKind::MeixnerToLaguerre);

    // (a) n = 1, alpha = 0: measured error equals s h/(1-h) pointwise, float
    // route within 1e-12, rational route exactly.
    for &h in &h_schedule {
        for &s in &s_grid {
            let err = meixner_laguerre_raw_error::<f64>(1, &0.0, &h, &s).unwrap();
            let closed = s * h / (1.0 - h);
            assert!(
                (err.abs() - closed).abs() < MEIXNER_CLOSED_FORM_ABS,
                "h = {h} s = {s}: {} vs {closed}",
                err.abs()
            );
        }
    }
    for k in 0..5 {
        let h = q(1, 10) * q(1, 1 << k);
        let s = q(7, 2);
        let err = meixner_laguerre_raw_error::<Rational>(1, &q(0, 1), &h, &s).unwrap();
        assert_eq!(-err, s * h.clone() / (q(1, 1) - h));
    }

    // (b) n <= 4: strict decrease and fitted order in [0.8, 1.2] (n = 0 is
    // identically zero, the trivial constant case).
    let sched = LimitSchedule::meixner_laguerre(0.0, h_schedule.clone(), s_grid).unwrap();
    for entry in sched.run(0).unwrap() {
        assert_eq!(entry.sup_error, 0.0, "n = 0 must be exact");
    }
    for n in 1..=4usize {
        let entries = sched.run(n).unwrap();
        for w in entries.windows(2) {
            assert!(
                w[1].sup_error < w[0].sup_error,
                "meixner n = {n}: {} !< {}",
                w[1].sup_error,
                w[0].sup_error
            );
        }
        let order = fit_order(
            &entries.iter().map(|e| e.param).collect::<Vec<_>>(),
            &entries.iter().map(|e| e.sup_error).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(
            (MEIXNER_ORDER_RANGE.0..=MEIXNER_ORDER_RANGE.1).contains(&order),
            "meixner n = {n} order {order}"
        );
    }

    // (c) Kravchuk -> Hermite: strict decrease for n <= 2, and the n = 0
    // rescaled peak at N = 1024 within 1% of pi^(-1/4).
    let sched = LimitSchedule::kravchuk_hermite(
        vec![16, 64, 256, 1024],
        default_grid(LimitKind::KravchukToHermite),
    )
    .unwrap();
    for n in 0..=2usize {
        let entries = sched.run(n).unwrap();
        for w in entries.windows(2) {
            assert!(
                w[1].sup_error < w[0].sup_error,
                "kravchuk n = {n}: {} !< {}",
                w[1].sup_error,
                w[0].sup_error
            );
        }
    }
    let nf = NormalizedFamily::new(Family::kravchuk(0.5, 1024).unwrap(), 1).unwrap();
    let peak = 512f64.powf(0.25) * nf.psi_lattice(0, 512).unwrap();
    let target = std::f64::consts::PI.powf(-0.25);
    assert!(
        (peak - target).abs() / target < KRAVCHUK_PEAK_REL,
        "peak {peak} vs {target}"
    );
    println!("ACCEPTANCE criterion 6 (limits: closed form, monotone, order): PASS");
}

#[test]
fn criterion_7_hydrogen() {
    let hydrogen = HydrogenStates::new(4).unwrap();
    let mut worst: f64 = 0.0;
    let mut s = 0.1;
    while s <= 30.0 {
        for (n, l) in [(1usize, 0usize), (2, 0), (2, 1), (3, 1)] {
            worst = worst.max(hydrogen.residual(n, l, s).unwrap());
        }
        s += 0.1;
    }
    assert!(worst < HYDROGEN_RESIDUAL_REL, "hydrogen residual: {worst}");
    // off-diagonal overlaps with weight 1/s among same-l states
    let o12 = hydrogen.overlap(1, 2, 0).unwrap().abs();
    let o23 = hydrogen.overlap(2, 3, 1).unwrap().abs();
    assert!(o12 < HYDROGEN_OVERLAP_ABS, "overlap (1,0)-(2,0): {o12}");
    assert!(o23 < HYDROGEN_OVERLAP_ABS, "overlap (2,1)-(3,1): {o23}");
    println!("ACCEPTANCE criterion 7 (hydrogen Sturm-Liouville, {worst:.1e}): PASS");
}

#[test]
fn criterion_8_float_drift() {
    let mut worst: f64 = 0.0;
    for size in [4i64, 8, 16] {
        let family = Family::kravchuk(q(1, 2), size).unwrap();
        let grid = default_drift_grid(&family, size);
        worst = worst.max(float_drift(&family, size as usize, &grid).unwrap());
    }
    for gamma in [1i64, 2, 3] {
        for (mn, md) in [(1i64, 4i64), (1, 2)] {
            let family = Family::meixner(q(gamma, 1), q(mn, md)).unwrap();
            let grid: Vec<Rational> = (0..=40).map(|x| q(x, 1)).collect();
            worst = worst.max(float_drift(&family, 10, &grid).unwrap());
        }
    }
    assert!(worst < DRIFT_REL, "drift: {worst}");
    println!("ACCEPTANCE criterion 8 (float drift vs oracle {worst:.1e} < 1e-12): PASS");
}

#[test]
fn criterion_9_determinism() {
    let bin = env!("CARGO_BIN_EXE_ladderpoly");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["tabulate", "--family", "kravchuk", "--p", "1/2", "--N", "4", "--nmax", "4"],
        vec!["tabulate", "--family", "wigner", "--j", "3/2", "--beta", "1.1", "--format", "json"],
        vec!["check", "certify", "--family", "meixner", "--gamma", "2", "--mu", "1/3", "--nmax", "8"],
        vec!["check", "commutators", "--family", "wigner", "--j", "3"],
        vec!["limits", "meixner-laguerre", "--n", "1", "--alpha", "0", "--h", "0.1,0.05,0.025,0.0125"],
        vec!["limits", "kravchuk-hermite", "--n", "0", "--N", "16,64,256,1024"],
    ];
    for args in &invocations {
        let run = || {
            let out = Command::new(bin).args(args).output().expect("spawn ladderpoly");
            (out.status.code(), out.stdout)
        };
        let (code_a, bytes_a) = run();
        let (code_b, bytes_b) = run();
        assert_eq!(code_a, Some(0), "{args:?} exited nonzero");
        assert_eq!(code_a, code_b);
        assert_eq!(bytes_a, bytes_b, "{args:?} produced differing bytes");
        assert!(!bytes_a.is_empty());
    }
    println!(
        "ACCEPTANCE criterion 9 (byte-identical reruns across {} commands): PASS",
        invocations.len()
    );
}

/// Exit-code contract spot checks (0 pass / 1 check failure / 2 usage).
#[test]
fn exit_code_contract() {
    let bin = env!("CARGO_BIN_EXE_ladderpoly");
    let code = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .expect("spawn")
            .status
            .code()
            .unwrap()
    };
    assert_eq!(code(&["check", "certify", "--family", "kravchuk", "--N", "4"]), 0);
    // invalid parameter -> usage error
    assert_eq!(code(&["tabulate", "--family", "kravchuk", "--p", "3/2", "--N", "4"]), 2);
    assert_eq!(code(&["tabulate", "--family", "meixner", "--mu", "2"]), 2);
    // unknown flag -> clap usage error
    assert_eq!(code(&["tabulate", "--no-such-flag"]), 2);
    // unwritable output -> i/o error
    assert_eq!(
        code(&[
            "tabulate",
            "--family",
            "hermite",
            "--out",
            "/nonexistent-dir/table.csv"
        ]),
        3
    );
    println!("exit-code contract: PASS");
}
