use serde_json::json;
use supersinglet_core::dfsub::{df_basis_capped, encoding_efficiency};
use supersinglet_core::qcore::make_qubit_supersinglet;
use supersinglet_core::{Caps, Result};

use super::Ctx;
use crate::output::{envelope, num, Report, Table};

/// The basis is built (and the rank computed) only up to the cap; past it the
/// row carries the closed-form quantities alone.
pub(super) fn df(ctx: &Ctx, ns: &[usize]) -> Result<Report> {
    let caps = ctx.caps(|c: &mut Caps| &mut c.df_max);
    let mut table = Table::new(vec![
        "N",
        "dimension",
        "log2_dimension",
        "efficiency",
        "asymptotic",
        "rank",
        "singlet_residual",
    ]);
    let mut rows = Vec::new();
    for &n in ns {
        let report = encoding_efficiency(n)?;
        let (rank, residual) = if n <= caps.df_max {
            let basis = df_basis_capped(n, &caps)?;
            let residual = if n <= caps.qubit_max {
                Some(basis.projection_residual(&make_qubit_supersinglet(n)?)?)
            } else {
                None
            };
            (Some(basis.rank), residual)
        } else {
            (None, None)
        };
        let opt = |x: Option<String>| x.unwrap_or_default();
        table.push(vec![
            n.to_string(),
            report.dimension.to_string(),
            num(report.encoded_qubits),
            num(report.efficiency),
            num(report.asymptotic),
            opt(rank.map(|r| r.to_string())),
            opt(residual.map(num)),
        ]);
        let mut row = serde_json::to_value(&report).expect("report serializes");
        row["rank"] = json!(rank);
        row["singlet_residual"] = json!(residual);
        row["rank_matches"] = json!(rank.map(|r| r.to_string() == report.dimension.to_string()));
        rows.push(row);
    }
    let summary = format!("{} rows; basis built for N ≤ {}", rows.len(), caps.df_max);
    Ok(Report {
        json: envelope("df", ctx.seed, json!({ "results": rows })),
        table: Some(table),
        summary,
    })
}
