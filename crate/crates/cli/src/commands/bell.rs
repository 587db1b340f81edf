use rand::Rng;
use serde_json::json;
use std::f64::consts::PI;
use supersinglet_core::bell::{
    corr_closed_m1, corr_closed_m2, corr_exact, correlation_bruteforce, maximize_violation_with,
    CorrelationModel, CorrelationSpec, OptimizerConfig,
};
use supersinglet_core::qcore::make_nn_supersinglet_capped;
use supersinglet_core::{Caps, Error, Result};

use super::Ctx;
use crate::cli::Model;
use crate::output::{envelope, num, Report, Table};

const DEFAULT_N: [usize; 8] = [2, 3, 4, 5, 10, 50, 200, 1000];

fn model_of(m: Model) -> CorrelationModel {
    match m {
        Model::Published => CorrelationModel::Published,
        Model::Exact => CorrelationModel::Exact,
    }
}

pub(super) fn bell_max(ctx: &Ctx, ns: &[usize], ms: &[usize], model: Model) -> Result<Report> {
    let mut pairs = Vec::new();
    for &m in ms {
        if ns.is_empty() {
            let min = if m == 2 { 4 } else { 2 };
            pairs.extend(DEFAULT_N.iter().filter(|&&n| n >= min).map(|&n| (n, m)));
        } else {
            pairs.extend(ns.iter().map(|&n| (n, m)));
        }
    }
    let cfg = OptimizerConfig::default();
    let results = pairs
        .iter()
        .map(|&(n, m)| maximize_violation_with(model_of(model), n, m, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["N", "m", "max_violation"]);
    for r in &results {
        table.push(vec![r.n.to_string(), r.m.to_string(), format!("{:.6}", r.value)]);
    }
    let summary = results
        .iter()
        .map(|r| format!("N={} m={}: {:.4}", r.n, r.m, r.value))
        .collect::<Vec<_>>()
        .join(", ");
    let body = json!({
        "model": format!("{model:?}").to_lowercase(),
        "grid_points": cfg.grid_points,
        "angle_tol": cfg.angle_tol,
        "results": results,
    });
    Ok(Report { json: envelope("bell-max", ctx.seed, body), table: Some(table), summary })
}

pub(super) fn corr_check(ctx: &Ctx, ns: &[usize], ms: &[usize], trials: usize, tol: f64) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one angle pair".into()));
    }
    let caps = ctx.caps(|c: &mut Caps| &mut c.nn_max);
    let mut rng = ctx.rng();
    let mut table = Table::new(vec!["N", "m", "max_err_published", "max_err_exact", "pass"]);
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &n in ns {
        let state = make_nn_supersinglet_capped(n, &caps)?;
        for &m in ms {
            let published: fn(usize, f64) -> f64 = match m {
                1 if n >= 2 => corr_closed_m1,
                2 if n >= 4 => corr_closed_m2,
                1 | 2 => {
                    skipped.push(json!({"N": n, "m": m}));
                    continue;
                }
                _ => return Err(Error::InvalidInput(format!("unsupported split m={m}"))),
            };
            let (mut err_pub, mut err_exact) = (0.0f64, 0.0f64);
            for _ in 0..trials {
                let alpha = rng.random_range(-PI..PI);
                let beta = rng.random_range(-PI..PI);
                let spec = CorrelationSpec::planar(n, n, m, alpha, beta)?;
                let brute = correlation_bruteforce(&state, &spec)?;
                err_pub = err_pub.max((published(n, beta - alpha) - brute).abs());
                err_exact = err_exact.max((corr_exact(n, m, beta - alpha) - brute).abs());
            }
            let pass = err_pub < tol;
            table.push(vec![
                n.to_string(),
                m.to_string(),
                num(err_pub),
                num(err_exact),
                pass.to_string(),
            ]);
            rows.push(json!({
                "N": n,
                "m": m,
                "max_err_published": err_pub,
                "max_err_exact": err_exact,
                "pass": pass,
            }));
        }
    }
    let failed = rows.iter().filter(|r| r["pass"] == false).count();
    let summary = format!(
        "{} (N, m) cases, {failed} with published closed form off by ≥ {tol:e}",
        rows.len()
    );
    let body = json!({
        "trials": trials,
        "tolerance": tol,
        "results": rows,
        "skipped": skipped,
    });
    Ok(Report { json: envelope("corr-check", ctx.seed, body), table: Some(table), summary })
}
