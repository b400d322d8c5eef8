//! Builds the output tables for each subcommand from the core engine.

use std::collections::BTreeMap;
use std::path::PathBuf;

use latan_core::cache::{cache_gc, cache_ls, cached_count};
use latan_core::cluster::Model;
use latan_core::enumerate::EnumOptions;
use latan_core::error::Result;
use latan_core::expansion::{expansion_table, format_float, lambda_pred, ratio_report};
use latan_core::generating::{q_pair, q_pair_min_split, ModelSeriesBundle};
use latan_core::lace::{lace_survey, pi0, pi_solve};
use latan_core::lattice::Point;
use latan_core::onept::OnePointExpansion;
use latan_core::polyd::{poly_from_proper, proper_counts};
use latan_core::series::{coeff_to_f64, format_coeff, Series};
use latan_core::verify::{run_suite, Suite};

use crate::output::Table;

/// Everything a subcommand needs from the global flags.
pub struct Ctx {
    pub model: Model,
    pub d: usize,
    pub order: usize,
    pub options: EnumOptions,
    pub cache_dir: PathBuf,
}

/// Cluster counts through the requested size, via the disk cache.
pub fn count_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let counts = cached_count(
        ctx.model,
        ctx.d,
        ctx.order,
        &[],
        &ctx.options,
        &ctx.cache_dir,
    )?;
    let mut table = Table::new("counts", &["n", "count"]);
    for (n, c) in counts.counts.iter().enumerate() {
        table.push(vec![n.to_string(), c.to_string()]);
    }
    Ok(vec![table])
}

/// The headline generating functions: one-point, cycle part, planted
/// counts, and the susceptibility.
pub fn series_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let bundle = ModelSeriesBundle::build(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let mut table = Table::new("series", &["n", "g", "g_cycle", "r", "chi"]);
    for n in 0..=ctx.order {
        table.push(vec![
            n.to_string(),
            format_coeff(&bundle.one_point.coeff(n)),
            format_coeff(&bundle.origin_cycle.coeff(n)),
            format_coeff(&bundle.planted.coeff(n)),
            format_coeff(&bundle.susceptibility.coeff(n)),
        ]);
    }
    Ok(vec![table])
}

/// The intersecting-pair quantity at a unit vector, split by minimal
/// connection length, plus its spatial support profile.
pub fn q_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let q = q_pair(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let s = Point::unit(ctx.d, 0);
    let split = q_pair_min_split(ctx.model, ctx.d, ctx.order, &s, &ctx.options)?;
    let kept: Vec<usize> = (0..split.len()).filter(|&m| !split[m].is_zero()).collect();
    let mut headers = vec!["n".to_string(), "Q(s)".to_string()];
    headers.extend(kept.iter().map(|m| format!("Q^{m}(s)")));
    let mut table = Table {
        name: "q_at_s".to_string(),
        headers,
        rows: Vec::new(),
    };
    let qs = q.get(&s);
    for n in 0..=ctx.order {
        let mut row = vec![n.to_string(), format_coeff(&qs.coeff(n))];
        row.extend(kept.iter().map(|&m| format_coeff(&split[m].coeff(n))));
        table.push(row);
    }
    let mut by_norm: BTreeMap<u32, usize> = BTreeMap::new();
    for (x, _) in q.iter() {
        *by_norm.entry(x.l1_norm()).or_insert(0) += 1;
    }
    let mut support = Table::new("q_support", &["l1", "sites"]);
    for (norm, sites) in by_norm {
        support.push(vec![norm.to_string(), sites.to_string()]);
    }
    Ok(vec![table, support])
}

/// The solved two-point correction next to its direct configuration sums
/// and the interval-cover certification of each size.
pub fn pi_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let (_, pi_hat) = pi_solve(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let survey = lace_survey(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let p0 = match ctx.model {
        Model::Animal => pi0(ctx.d, ctx.order, &ctx.options)?.sum(),
        Model::Tree => Series::zero(ctx.order),
    };
    let p1 = survey.pi1.sum();
    let p2 = survey.pi2.sum();
    let animal = ctx.model == Model::Animal;
    let mut headers = vec!["n", "pi_hat"];
    if animal {
        headers.push("pi0_hat");
    }
    headers.extend(["pi1_hat", "pi2_hat", "max_cover", "certified"]);
    let mut table = Table::new("pi", &headers);
    for n in 0..=ctx.order {
        let mut row = vec![n.to_string(), format_coeff(&pi_hat.coeff(n))];
        if animal {
            row.push(format_coeff(&p0.coeff(n)));
        }
        row.extend([
            format_coeff(&p1.coeff(n)),
            format_coeff(&p2.coeff(n)),
            survey.max_cover[n].to_string(),
            survey.certified(n).to_string(),
        ]);
        table.push(row);
    }
    Ok(vec![table])
}

/// The one-point inclusion-exclusion pieces and their alternating sum.
pub fn gamma_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let bundle = ModelSeriesBundle::build(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let e = OnePointExpansion::build(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let alternating = e.alternating_sum();
    let mut table = Table::new(
        "gamma",
        &[
            "n",
            "gamma0",
            "gamma1",
            "gamma2",
            "gamma3",
            "gamma4_tail",
            "alternating",
            "g_cycle",
            "g",
        ],
    );
    for n in 0..=ctx.order {
        table.push(vec![
            n.to_string(),
            format_coeff(&e.gamma0.coeff(n)),
            format_coeff(&e.gamma1.coeff(n)),
            format_coeff(&e.gamma2.coeff(n)),
            format_coeff(&e.gamma3.coeff(n)),
            format_coeff(&e.gamma4_tail.coeff(n)),
            format_coeff(&alternating.coeff(n)),
            format_coeff(&bundle.origin_cycle.coeff(n)),
            format_coeff(&bundle.one_point.coeff(n)),
        ]);
    }
    Ok(vec![table])
}

/// Cluster-count polynomials in the dimension, with the underlying
/// proper-dimension counts.
pub fn polyd_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let proper = proper_counts(ctx.model, ctx.order, &ctx.options)?;
    let mut headers = vec!["n".to_string()];
    headers.extend((0..=ctx.order).map(|k| format!("k={k}")));
    let mut counts = Table {
        name: "proper_counts".to_string(),
        headers,
        rows: Vec::new(),
    };
    for n in 0..=ctx.order {
        let mut row = vec![n.to_string()];
        row.extend((0..=ctx.order).map(|k| proper.get(n, k).to_string()));
        counts.push(row);
    }
    let mut headers = vec![
        "n".to_string(),
        "degree".to_string(),
        "polynomial".to_string(),
    ];
    headers.extend((0..=ctx.order).map(|k| format!("c{k}")));
    let mut polys = Table {
        name: "polynomials".to_string(),
        headers,
        rows: Vec::new(),
    };
    for n in 0..=ctx.order {
        let poly = poly_from_proper(&proper, n);
        let degree = poly
            .degree()
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-".to_string());
        let mut row = vec![n.to_string(), degree, poly.to_string()];
        row.extend((0..=ctx.order).map(|k| format_coeff(&poly.coeff(k))));
        polys.push(row);
    }
    Ok(vec![counts, polys])
}

const RIGOROUS: &str = "rigorous";
const PREDICTED: &str = "physics-literature, no rigorous error estimate";

/// The critical-point and one-point expansion tables with float partial
/// sums and the growth prediction at each listed dimension.
pub fn expansion_tables(model: Model, order: usize, dims: &[usize]) -> Result<Vec<Table>> {
    let t = expansion_table(model, order, dims)?;
    let mut zc = Table::new("zc", &["order", "coefficient", "status"]);
    for row in &t.zc {
        zc.push(vec![
            row.order.to_string(),
            row.coefficient.to_string(),
            (if row.rigorous { RIGOROUS } else { PREDICTED }).to_string(),
        ]);
    }
    let mut gc = Table::new("gc", &["order", "coefficient", "status"]);
    for row in &t.gc {
        gc.push(vec![
            row.order.to_string(),
            row.coefficient.to_string(),
            (if row.rigorous { RIGOROUS } else { PREDICTED }).to_string(),
        ]);
    }
    let mut headers = vec!["d".to_string()];
    headers.extend(t.zc.iter().map(|row| format!("through u^{}", row.order)));
    let mut zc_partials = Table {
        name: "zc_partials".to_string(),
        headers,
        rows: Vec::new(),
    };
    for (i, &d) in t.dims.iter().enumerate() {
        let mut row = vec![d.to_string()];
        row.extend(t.zc_partials[i].iter().map(|&x| format_float(x)));
        zc_partials.push(row);
    }
    let mut headers = vec!["d".to_string()];
    headers.extend(t.gc.iter().map(|row| format!("through u^{}", row.order)));
    let mut gc_partials = Table {
        name: "gc_partials".to_string(),
        headers,
        rows: Vec::new(),
    };
    for (i, &d) in t.dims.iter().enumerate() {
        let mut row = vec![d.to_string()];
        row.extend(t.gc_partials[i].iter().map(|&x| format_float(x)));
        gc_partials.push(row);
    }
    let mut pred = Table::new("lambda_pred", &["d", "lambda_pred"]);
    for &d in &t.dims {
        pred.push(vec![d.to_string(), format_float(lambda_pred(model, d))]);
    }
    Ok(vec![zc, gc, zc_partials, gc_partials, pred])
}

/// Successive count ratios next to the three-term growth prediction.
pub fn ratio_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let report = ratio_report(ctx.model, ctx.d, ctx.order, &ctx.options)?;
    let mut table = Table::new("ratios", &["n", "count", "ratio", "float"]);
    for (n, c) in report.counts.iter().enumerate() {
        let (ratio, float) = match report.ratios.get(n) {
            Some(r) => (format_coeff(r), format_float(coeff_to_f64(r))),
            None => ("-".to_string(), "-".to_string()),
        };
        table.push(vec![n.to_string(), c.to_string(), ratio, float]);
    }
    let mut pred = Table::new("prediction", &["quantity", "value"]);
    pred.push(vec![
        "lambda_pred".to_string(),
        format_float(report.lambda_pred),
    ]);
    if let Some(last) = report.ratios.last() {
        let last = coeff_to_f64(last);
        pred.push(vec!["final_ratio".to_string(), format_float(last)]);
        pred.push(vec![
            "pred_over_final".to_string(),
            format_float(report.lambda_pred / last),
        ]);
    }
    Ok(vec![table, pred])
}

/// Runs the named identity suites; the flag reports whether every check
/// passed.
pub fn verify_tables(ctx: &Ctx, suites: &[Suite]) -> Result<(Vec<Table>, bool)> {
    let mut table = Table::new(
        "checks",
        &["suite", "identity", "location", "status", "detail"],
    );
    let mut all_passed = true;
    for &suite in suites {
        let report = run_suite(suite, ctx.model, ctx.d, ctx.order, &ctx.options)?;
        for check in &report.checks {
            all_passed &= check.passed;
            table.push(vec![
                suite.name().to_string(),
                check.identity.clone(),
                check.location.clone(),
                (if check.passed { "ok" } else { "FAIL" }).to_string(),
                check.detail.clone(),
            ]);
        }
    }
    Ok((vec![table], all_passed))
}

/// Lists the cache entries.
pub fn cache_ls_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let mut table = Table::new("entries", &["file", "bytes", "valid", "detail"]);
    for info in cache_ls(&ctx.cache_dir)? {
        table.push(vec![
            info.file_name,
            info.bytes.to_string(),
            info.valid.to_string(),
            info.detail,
        ]);
    }
    Ok(vec![table])
}

/// Removes invalid cache entries.
pub fn cache_gc_tables(ctx: &Ctx) -> Result<Vec<Table>> {
    let report = cache_gc(&ctx.cache_dir)?;
    let mut table = Table::new("gc", &["removed", "kept", "bytes_freed"]);
    table.push(vec![
        report.removed.to_string(),
        report.kept.to_string(),
        report.bytes_freed.to_string(),
    ]);
    Ok(vec![table])
}
