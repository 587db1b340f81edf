use rand::Rng;
use serde_json::json;
use std::collections::BTreeMap;
use supersinglet_core::protocols::{
    distribute_and_test_capped, generate_table_capped, ldp_run_with, nsp_assign, ssp_run,
    DeclarationOrder, DtestOutcome, LdpBehaviors, LdpVerdict, LengthThreshold, Role,
    SequenceTable, SspOutcome, Strategy, TableSource, TamperModel,
};
use supersinglet_core::stats::chi_square_gof;
use supersinglet_core::{Caps, Error, Result, SeededRng};

use super::Ctx;
use crate::cli::{Liar, Order, Source};
use crate::output::{envelope, joined, Report, Table};

/// Largest party count for which the column histogram over all N! permutations is reported.
const HISTOGRAM_MAX: usize = 8;

fn source_of(s: Source) -> TableSource {
    match s {
        Source::Quantum => TableSource::Quantum,
        Source::Direct => TableSource::Direct,
    }
}

fn make_table(ctx: &Ctx, n: usize, l: usize, source: Source, rng: &mut SeededRng) -> Result<SequenceTable> {
    let caps = ctx.caps(|c: &mut Caps| &mut c.nn_max);
    generate_table_capped(n, l, source_of(source), &caps, rng)
}

pub(super) fn table(ctx: &Ctx, n: usize, l: usize, source: Source) -> Result<Report> {
    let t = make_table(ctx, n, l, source, &mut ctx.rng())?;
    let chi = if n <= HISTOGRAM_MAX {
        let hist = t.column_histogram();
        let k = hist.len();
        Some(chi_square_gof(&hist, &vec![1.0 / k as f64; k])?)
    } else {
        None
    };
    let mut header = vec!["position".to_string()];
    header.extend((0..n).map(|k| format!("party{k}")));
    let mut csv = Table::new(header);
    for j in 0..t.len() {
        let mut row = vec![j.to_string()];
        row.extend(t.column(j).iter().map(ToString::to_string));
        csv.push(row);
    }
    let summary = format!(
        "{n} × {l} table from {source:?} source; columns are permutations: {}",
        t.columns_are_permutations()
    );
    let body = json!({
        "N": n,
        "L": l,
        "source": source_of(source),
        "columns_are_permutations": t.columns_are_permutations(),
        "chi_square": chi,
        "rows": t.rows(),
    });
    Ok(Report { json: envelope("table", ctx.seed, body), table: Some(csv), summary })
}

pub(super) fn nsp(ctx: &Ctx, n: usize, l: usize, source: Source) -> Result<Report> {
    let t = make_table(ctx, n, l, source, &mut ctx.rng())?;
    let mut csv = Table::new(vec!["round", "victims", "self_assigned"]);
    let mut rounds = Vec::with_capacity(l);
    let mut self_counts = vec![0usize; n];
    for j in 0..l {
        let a = nsp_assign(&t, j)?;
        if !a.is_bijection() {
            return Err(Error::Internal(format!("round {j} is not a bijection")));
        }
        for &p in &a.self_assigned {
            self_counts[p] += 1;
        }
        csv.push(vec![j.to_string(), joined(&a.victims), joined(&a.self_assigned)]);
        rounds.push(a);
    }
    let rates: Vec<f64> = self_counts.iter().map(|&c| c as f64 / l as f64).collect();
    let summary = format!(
        "{l} rounds for {n} parties; self-assignment rates {} (expected {:.4})",
        joined(&rates.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()),
        1.0 / n as f64
    );
    let body = json!({
        "N": n,
        "L": l,
        "source": source_of(source),
        "self_assignment_counts": self_counts,
        "self_assignment_rates": rates,
        "expected_rate": 1.0 / n as f64,
        "rounds": rounds,
    });
    Ok(Report { json: envelope("nsp", ctx.seed, body), table: Some(csv), summary })
}

pub(super) fn ssp(
    ctx: &Ctx,
    n: usize,
    l: usize,
    dishonest: &[usize],
    order: Order,
    source: Source,
) -> Result<Report> {
    let mut rng = ctx.rng();
    let t = make_table(ctx, n, l, source, &mut rng)?;
    let mut behaviors = vec![Strategy::Honest; n];
    for &k in dishonest {
        if k >= n {
            return Err(Error::InvalidInput(format!("party {k} does not exist (N={n})")));
        }
        behaviors[k] = Strategy::DeclareFalseShare;
    }
    let base: Vec<usize> = (1..n).collect();
    let order = match order {
        Order::Rotating => DeclarationOrder::Rotating(base),
        Order::Fixed => DeclarationOrder::Fixed(base),
    };
    let report = ssp_run(&t, &behaviors, &order, &mut rng)?;
    let mut csv = Table::new(vec!["round", "order", "declared", "outcome", "digit", "detector"]);
    for r in &report.rounds {
        let declared: Vec<usize> = r.declarations.iter().map(|d| d.symbol).collect();
        let (outcome, digit, detector) = match r.outcome {
            SspOutcome::Recovered { digit } => ("recovered", digit.to_string(), String::new()),
            SspOutcome::Aborted { detector, .. } => ("aborted", String::new(), detector.to_string()),
        };
        csv.push(vec![
            r.round.to_string(),
            joined(&r.order),
            joined(&declared),
            outcome.into(),
            digit,
            detector,
        ]);
    }
    let correct = report
        .key
        .iter()
        .zip(t.row(0))
        .filter(|(k, d)| k.is_some_and(|k| k == **d))
        .count();
    let summary = format!(
        "{l} rounds, {} aborted (rate {:.4}), {correct} recovered digits match the dealer",
        report.aborted, report.detection_rate
    );
    let body = json!({
        "N": n,
        "L": l,
        "source": source_of(source),
        "dishonest": dishonest,
        "dealer_row": t.row(0),
        "correct_digits": correct,
        "report": report,
    });
    Ok(Report { json: envelope("ssp", ctx.seed, body), table: Some(csv), summary })
}

pub(super) struct LdpArgs {
    pub liar: Liar,
    pub l: usize,
    pub trials: usize,
    pub message: Option<u8>,
    pub inject: Option<usize>,
    pub sigmas: f64,
    pub source: Source,
}

fn verdict_label(v: &LdpVerdict) -> &'static str {
    match v {
        LdpVerdict::Consistent => "consistent",
        LdpVerdict::ALies => "a-lies",
        LdpVerdict::BLies => "b-lies",
        LdpVerdict::RejectMessage { .. } => "reject-message",
    }
}

fn behaviors_for(args: &LdpArgs, message: u8) -> Result<LdpBehaviors> {
    let a = match (args.liar, args.inject) {
        (Liar::A, Some(_)) => {
            return Err(Error::InvalidInput("--inject already makes A dishonest; drop --liar A".into()))
        }
        (_, Some(n)) => Strategy::InjectFakePositions { n },
        (Liar::A, None) => Strategy::SendDifferentMessages {
            to_b: message,
            to_c: (message + 2) % 3,
        },
        _ => Strategy::Honest,
    };
    let b = match args.liar {
        Liar::B => Strategy::ForwardAlteredMessage { to_c: (message + 1) % 3 },
        _ => Strategy::Honest,
    };
    Ok(LdpBehaviors { a, b })
}

pub(super) fn ldp(ctx: &Ctx, args: LdpArgs) -> Result<Report> {
    if args.trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    if args.message.is_some_and(|m| m > 2) {
        return Err(Error::InvalidInput("messages are trits (0, 1 or 2)".into()));
    }
    if !(args.sigmas.is_finite() && args.sigmas >= 0.0) {
        return Err(Error::InvalidInput("--sigmas must be a non-negative number".into()));
    }
    let threshold = LengthThreshold { sigmas: args.sigmas };
    let expected = match (args.liar, args.inject) {
        (Liar::A, _) | (_, Some(_)) => Some(Role::A),
        (Liar::B, None) => Some(Role::B),
        (Liar::None, None) => None,
    };
    let runs = ctx.rng().batch(args.trials, |_, rng| {
        let message = args.message.unwrap_or_else(|| rng.random_range(0..3));
        let behaviors = behaviors_for(&args, message)?;
        let t = make_table(ctx, 3, args.l, args.source, rng)?;
        ldp_run_with(&t, &behaviors, message, threshold, rng)
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let mut counts: BTreeMap<&str, usize> =
        ["consistent", "a-lies", "b-lies", "reject-message"].iter().map(|&k| (k, 0)).collect();
    let mut correct = 0;
    let mut csv = Table::new(vec!["trial", "message", "verdict", "statistic"]);
    let mut trials = Vec::with_capacity(runs.len());
    for (k, tr) in runs.iter().enumerate() {
        *counts.get_mut(verdict_label(&tr.verdict)).expect("known label") += 1;
        if tr.verdict.culprit() == expected {
            correct += 1;
        }
        let statistic = tr.l_bc.len() + tr.l_bc_forwarded.len();
        csv.push(vec![
            k.to_string(),
            tr.m_ab.to_string(),
            verdict_label(&tr.verdict).into(),
            statistic.to_string(),
        ]);
        trials.push(json!({
            "trial": k,
            "message": tr.m_ab,
            "verdict": tr.verdict,
            "statistic": statistic,
        }));
    }
    let fraction = correct as f64 / runs.len() as f64;
    let summary = format!(
        "{} trials, liar {:?}: {}; correct-verdict fraction {fraction:.4}",
        runs.len(),
        args.liar,
        counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    );
    let mut body = json!({
        "L": args.l,
        "liar": match args.liar {
            Liar::None => "none",
            Liar::A => "A",
            Liar::B => "B",
        },
        "inject": args.inject,
        "length_sigmas": args.sigmas,
        "source": source_of(args.source),
        "trials": runs.len(),
        "verdict_counts": counts,
        "expected_culprit": expected,
        "correct_fraction": fraction,
        "results": trials,
    });
    if let [only] = runs.as_slice() {
        body["transcript"] = serde_json::to_value(only).expect("transcript serializes");
    }
    Ok(Report { json: envelope("ldp", ctx.seed, body), table: Some(csv), summary })
}

pub(super) fn dtest(
    ctx: &Ctx,
    n: usize,
    l: usize,
    test_fraction: f64,
    tamper: f64,
    trials: usize,
    source: Source,
) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let model = if tamper > 0.0 {
        TamperModel::CorruptColumns { fraction: tamper }
    } else if tamper == 0.0 {
        TamperModel::None
    } else {
        return Err(Error::InvalidInput(format!("tamper fraction must lie in [0, 1], got {tamper}")));
    };
    let caps = ctx.caps(|c: &mut Caps| &mut c.nn_max);
    let runs = ctx.rng().batch(trials, |_, rng| {
        distribute_and_test_capped(n, l, test_fraction, model, source_of(source), &caps, rng)
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let aborts = runs.iter().filter(|r| !r.accepted()).count();
    let tested = runs[0].tested;
    let bound = 1.0 - (1.0 - tamper).powi(tested as i32);
    let mut csv = Table::new(vec!["trial", "tested", "corrupted", "outcome", "position"]);
    let mut rows = Vec::with_capacity(runs.len());
    for (k, r) in runs.iter().enumerate() {
        let (outcome, position) = match &r.outcome {
            DtestOutcome::Accept { .. } => ("accept", None),
            DtestOutcome::Abort { position, .. } => ("abort", Some(*position)),
        };
        csv.push(vec![
            k.to_string(),
            r.tested.to_string(),
            r.corrupted.to_string(),
            outcome.into(),
            position.map(|p| p.to_string()).unwrap_or_default(),
        ]);
        rows.push(json!({
            "trial": k,
            "tested": r.tested,
            "corrupted": r.corrupted,
            "outcome": outcome,
            "position": position,
        }));
    }
    let rate = aborts as f64 / runs.len() as f64;
    let summary = format!(
        "{} trials, {aborts} aborted (rate {rate:.4}, predicted ≥ {bound:.4})",
        runs.len()
    );
    let mut body = json!({
        "N": n,
        "L": l,
        "test_fraction": test_fraction,
        "tamper": model,
        "source": source_of(source),
        "trials": runs.len(),
        "aborts": aborts,
        "abort_rate": rate,
        "predicted_min_abort_rate": bound,
        "results": rows,
    });
    if let [only] = runs.as_slice() {
        body["report"] = serde_json::to_value(only).expect("report serializes");
    }
    Ok(Report { json: envelope("dtest", ctx.seed, body), table: Some(csv), summary })
}
