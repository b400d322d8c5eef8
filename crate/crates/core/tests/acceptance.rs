//! Acceptance checks: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture` or `--show-output`). The
//! checks combine exact coefficientwise identities, frozen exact counts,
//! and loose numeric sanity bounds; a handful also carry wall-clock caps.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;

use latan_core::cluster::Model;
use latan_core::enumerate::{count, EnumOptions};
use latan_core::expansion::{
    gc_coefficients, lambda_pred, ratio_report, zc_coefficients, EulerRational,
};
use latan_core::generating::{step_weight, ModelSeriesBundle};
use latan_core::lace::{lace_survey, pi0, pi_solve};
use latan_core::lattice::Point;
use latan_core::onept::OnePointExpansion;
use latan_core::polyd::{poly_from_proper, proper_counts};
use latan_core::series::{coeff_int, coeff_ratio, coeff_to_f64, Series, SiteSeries};
use latan_core::verify::{run_suite, Suite};

const BOTH: [Model; 2] = [Model::Tree, Model::Animal];
const DIMS: [usize; 2] = [2, 3];

fn opts() -> EnumOptions {
    EnumOptions::default()
}

/// Prints the criterion's line and fails the test on any recorded problem
/// or a blown time cap.
fn conclude(index: u32, name: &str, started: Instant, mut failures: Vec<String>, cap: Option<f64>) {
    let elapsed = started.elapsed().as_secs_f64();
    if let Some(cap) = cap {
        if elapsed > cap {
            failures.push(format!("took {elapsed:.2}s, cap {cap}s"));
        }
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {index:02} {status} {name} ({elapsed:.2}s)");
    assert!(failures.is_empty(), "criterion {index:02}: {failures:?}");
}

/// Folds a suite report into the failure list.
fn fold_suite(failures: &mut Vec<String>, suite: Suite, model: Model, d: usize, order: usize) {
    match run_suite(suite, model, d, order, &opts()) {
        Ok(report) => {
            for check in &report.checks {
                if !check.passed {
                    failures.push(format!(
                        "{suite} {}: {} at {}: {}",
                        model, check.identity, check.location, check.detail
                    ));
                }
            }
        }
        Err(e) => failures.push(format!("{suite} {model} d={d} N={order}: {e}")),
    }
}

#[test]
fn acceptance_01_one_dimensional_closed_form() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        match count(model, 1, 20, &[], &opts()) {
            Ok(table) => {
                for (n, c) in table.counts.iter().enumerate() {
                    if *c != BigUint::from(n + 1) {
                        failures.push(format!("{model} n={n}: {c} != {}", n + 1));
                    }
                }
            }
            Err(e) => failures.push(format!("{model}: {e}")),
        }
    }
    conclude(
        1,
        "d=1 counts equal n+1 through size 20",
        started,
        failures,
        Some(1.0),
    );
}

#[test]
fn acceptance_02_planted_counts_from_the_two_point_function() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        for d in DIMS {
            let bundle = ModelSeriesBundle::build(model, d, 6, &opts()).unwrap();
            let s = Point::unit(d, 0);
            let expected = &bundle.one_point.shift_up(1) - &bundle.two_point.get(&s).shift_up(1);
            if let Some(k) = bundle.planted.first_mismatch(&expected) {
                failures.push(format!("{model} d={d}: r differs at z^{k}"));
            }
        }
    }
    conclude(
        2,
        "r = z*g - z*G(s) for both models, d in {2,3}, N=6",
        started,
        failures,
        Some(60.0),
    );
}

#[test]
fn acceptance_03_one_point_inclusion_exclusion() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        for d in DIMS {
            let bundle = ModelSeriesBundle::build(model, d, 6, &opts()).unwrap();
            let e = OnePointExpansion::build(model, d, 6, &opts()).unwrap();
            let reconstructed = &e.alternating_sum() + &bundle.origin_cycle;
            if let Some(k) = reconstructed.first_mismatch(&bundle.one_point) {
                failures.push(format!("{model} d={d}: g differs at z^{k}"));
            }
        }
    }
    conclude(
        3,
        "g = Gamma0 - Gamma1 + Gamma2 - Gamma3 + Gamma4_tail + g_cycle for both models, d in {2,3}, N=6",
        started,
        failures,
        Some(600.0),
    );
}

#[test]
fn acceptance_04_interaction_factorizations_and_partitions() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        for d in DIMS {
            fold_suite(&mut failures, Suite::Gams, model, d, 6);
        }
    }
    conclude(
        4,
        "four product factorizations plus the Gamma2 and Gamma3 partitions, d in {2,3}, N=6",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_05_lace_consistency_for_trees() {
    let started = Instant::now();
    let mut failures = Vec::new();
    match pi_solve(Model::Tree, 2, 6, &opts()) {
        Ok((_, pi_hat)) => {
            let survey = lace_survey(Model::Tree, 2, 6, &opts()).unwrap();
            let p1 = survey.pi1.sum();
            let p2 = survey.pi2.sum();
            if pi_hat.coeff(2) != -p1.coeff(2) {
                failures.push("z^2 correction differs from the one-intersection sum".into());
            }
            if pi_hat.coeff(3) != &-p1.coeff(3) + &p2.coeff(3) {
                failures.push("z^3 correction differs from the two-term sum".into());
            }
            if !(survey.certified(2) && survey.certified(3)) {
                failures.push(format!(
                    "interval covers fail to certify sizes 2 and 3: {:?}",
                    survey.max_cover
                ));
            }
        }
        Err(e) => failures.push(format!("solve: {e}")),
    }
    conclude(
        5,
        "solved correction: zero residual, direct sums at z^2 and z^3, covers certified (trees, d=2, N=6)",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_06_animal_square_counts() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for d in DIMS {
        let squares = coeff_int((2 * d as i64) * (2 * d as i64 - 2) / 2);
        let bundle = ModelSeriesBundle::build(Model::Animal, d, 4, &opts()).unwrap();
        if bundle.origin_cycle.coeff(4) != squares {
            failures.push(format!("d={d}: [z^4] g_cycle != (2d)(2d-2)/2"));
        }
        let p0 = pi0(d, 4, &opts()).unwrap().sum();
        if p0.coeff(4) != &coeff_int(3) * &squares {
            failures.push(format!(
                "d={d}: [z^4] self-intersection sum != 3(2d)(2d-2)/2"
            ));
        }
    }
    conclude(
        6,
        "square counts: [z^4] g_cycle and [z^4] zero-step correction, d in {2,3}",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_07_susceptibility_against_the_one_point_derivative() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        for d in DIMS {
            let bundle = ModelSeriesBundle::build(model, d, 6, &opts()).unwrap();
            let mut derivative = Series::zero(6);
            for n in 0..=6 {
                derivative
                    .add_to_coeff(n, &(&coeff_int(n as i64 + 1) * &bundle.one_point.coeff(n)));
            }
            match model {
                Model::Tree => {
                    if let Some(k) = bundle.susceptibility.first_mismatch(&derivative) {
                        failures.push(format!("tree d={d}: chi differs at z^{k}"));
                    }
                }
                Model::Animal => {
                    for n in 0..=6 {
                        if bundle.susceptibility.coeff(n) > derivative.coeff(n) {
                            failures.push(format!("animal d={d}: chi exceeds bound at z^{n}"));
                            break;
                        }
                    }
                }
            }
        }
    }
    conclude(
        7,
        "chi equals d/dz(z g) for trees and is bounded by it for animals, d in {2,3}, N=6",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_08_intersecting_pair_decomposition() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for model in BOTH {
        fold_suite(&mut failures, Suite::Qdecomp, model, 2, 6);
    }
    conclude(
        8,
        "Q splits by minimal connection, obeys the split-sum bound, and [z^1] Q(s) = 2 (d=2, N=6)",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_09_dimension_polynomials() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let tree = proper_counts(Model::Tree, 5, &opts()).unwrap();
    let animal = proper_counts(Model::Animal, 5, &opts()).unwrap();
    for (model, table) in [(Model::Tree, &tree), (Model::Animal, &animal)] {
        let polys: Vec<_> = (0..=5).map(|n| poly_from_proper(table, n)).collect();
        for d in 1..=4usize {
            let direct = count(model, d, 5, &[], &opts()).unwrap();
            for (n, (poly, c)) in polys.iter().zip(&direct.counts).enumerate() {
                let expected =
                    latan_core::series::Coeff::from_integer(num_bigint::BigInt::from(c.clone()));
                if poly.eval_int(d as i64) != expected {
                    failures.push(format!("{model} d={d} n={n}: polynomial misses the count"));
                }
            }
        }
        for (n, poly) in polys.iter().enumerate() {
            if poly.degree() != Some(n) {
                failures.push(format!("{model} n={n}: degree {:?}", poly.degree()));
            }
        }
    }
    for n in 0..=5 {
        let diff = &poly_from_proper(&animal, n) - &poly_from_proper(&tree, n);
        if !diff.degree().is_none_or(|deg| deg + 2 <= n) {
            failures.push(format!(
                "cyclic correction at n={n} has degree {:?}",
                diff.degree()
            ));
        }
    }
    conclude(
        9,
        "count polynomials match d=1..4, have degree n, and cyclic corrections drop two degrees (n<=5)",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_10_restricted_two_point_step_bound() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut animal_note = "holds".to_string();
    for model in BOTH {
        let bundle = ModelSeriesBundle::build(model, 2, 6, &opts()).unwrap();
        let kernel = SiteSeries::step_kernel(2, 6);
        for i in 1..=3usize {
            let weight = step_weight(&bundle.one_point, 2, i);
            let rhs = kernel
                .convolve_power(i)
                .unwrap()
                .convolve(&bundle.two_point)
                .unwrap()
                .mul_series(&weight);
            let mut worst = None;
            'sites: for (x, series) in bundle.two_point_min[i].iter() {
                let bound = rhs.get(x);
                for k in 0..=6 {
                    if series.coeff(k) > bound.coeff(k) {
                        worst = Some(format!("x={x} z^{k}"));
                        break 'sites;
                    }
                }
            }
            match (model, worst) {
                (Model::Tree, Some(w)) => {
                    failures.push(format!("tree bound fails for i={i} at {w}"))
                }
                (Model::Animal, Some(w)) => animal_note = format!("fails for i={i} at {w}"),
                _ => {}
            }
        }
    }
    conclude(
        10,
        &format!(
            "G^(i) <= (2dzg)^i (D^*i * G) for trees, i<=3, d=2, N=6 (animal comparison: {animal_note})"
        ),
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_11_step_kernel_return_moments() {
    let started = Instant::now();
    let mut failures = Vec::new();
    fold_suite(&mut failures, Suite::Dkernel, Model::Tree, 6, 6);
    let d4 = SiteSeries::step_kernel(2, 0)
        .convolve_power(4)
        .unwrap()
        .get(&Point::origin(2))
        .coeff(0);
    if d4 != coeff_ratio(9, 64) {
        failures.push("four-step return probability at d=2 differs from 9/64".into());
    }
    conclude(
        11,
        "(2d)^m D^*2m(0) <= (2m-1)!! for m<=3, d<=6, and D^*4(0) = 9/64 at d=2",
        started,
        failures,
        None,
    );
}

#[test]
fn acceptance_12_expansion_tables_and_growth_ratios() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let r = coeff_ratio;
    let e1 = |num: i64, den: i64| EulerRational::new(coeff_int(0), r(num, den), coeff_int(0));
    let tree_zc = vec![
        EulerRational::from_rational(r(1, 1)),
        EulerRational::from_rational(r(3, 2)),
        EulerRational::from_rational(r(115, 24)),
        EulerRational::from_rational(r(309, 16)),
        EulerRational::from_rational(r(619103, 5760)),
        EulerRational::from_rational(r(543967, 768)),
    ];
    let corrections = [
        EulerRational::zero(),
        EulerRational::zero(),
        e1(-1, 2),
        e1(-2, 1),
        e1(-113, 12),
        EulerRational::new(coeff_int(0), r(-395, 12), r(-55, 24)),
    ];
    let animal_zc: Vec<EulerRational> = tree_zc
        .iter()
        .zip(&corrections)
        .map(|(row, c)| row + c)
        .collect();
    if zc_coefficients(Model::Tree, 6).unwrap() != tree_zc {
        failures.push("tree critical-point rows differ from the frozen table".into());
    }
    if zc_coefficients(Model::Animal, 6).unwrap() != animal_zc {
        failures.push("animal critical-point rows differ from the frozen table".into());
    }
    let tree_gc = vec![
        EulerRational::one(),
        EulerRational::from_rational(r(3, 2)),
        EulerRational::from_rational(r(263, 24)),
    ];
    let animal_gc = vec![
        EulerRational::one(),
        EulerRational::from_rational(r(3, 2)),
        EulerRational::new(r(263, 24), r(-1, 1), coeff_int(0)),
    ];
    if gc_coefficients(Model::Tree) != tree_gc {
        failures.push("tree one-point rows differ from the frozen table".into());
    }
    if gc_coefficients(Model::Animal) != animal_gc {
        failures.push("animal one-point rows differ from the frozen table".into());
    }
    match ratio_report(Model::Tree, 3, 7, &opts()) {
        Ok(report) => {
            let last = coeff_to_f64(report.ratios.last().expect("seven ratios"));
            let pred = lambda_pred(Model::Tree, 3);
            if !(last < pred && pred / last < 2.0) {
                failures.push(format!("final ratio {last} vs prediction {pred}"));
            }
            if report.counts.iter().any(BigUint::is_zero) {
                failures.push("a count vanished".into());
            }
        }
        Err(e) => failures.push(format!("ratio report: {e}")),
    }
    conclude(
        12,
        "expansion tables verbatim; tree d=3 final ratio within a factor 2 of the prediction",
        started,
        failures,
        None,
    );
}
