use serde_json::json;
use supersinglet_core::measurement::JointSampler;
use supersinglet_core::qcore::{
    invariance_check, make_nn_supersinglet_capped, make_pair_singlet,
    make_qubit_supersinglet_capped, random_rotation, random_special_unitary, random_unitary,
};
use supersinglet_core::stats::chi_square_gof;
use supersinglet_core::{Caps, Direction, Error, LocalOperator, Result, SeededRng, StateVector};

use super::Ctx;
use crate::cli::{Family, Group, StateArgs};
use crate::output::{envelope, joined, num, Report, Table};

pub(super) struct Built {
    pub family: &'static str,
    pub state: StateVector,
}

pub(super) fn build(ctx: &Ctx, args: &StateArgs) -> Result<Built> {
    match args.family {
        Family::Nn => {
            let n = args.n.unwrap_or(3);
            if args.d.is_some_and(|d| d != n) {
                return Err(Error::InvalidInput("the nn family has d = N".into()));
            }
            let caps = ctx.caps(|c: &mut Caps| &mut c.nn_max);
            Ok(Built { family: "nn", state: make_nn_supersinglet_capped(n, &caps)? })
        }
        Family::Qubit => {
            let n = args.n.unwrap_or(4);
            if args.d.is_some_and(|d| d != 2) {
                return Err(Error::InvalidInput("the qubit family has d = 2".into()));
            }
            let caps = ctx.caps(|c: &mut Caps| &mut c.qubit_max);
            Ok(Built { family: "qubit", state: make_qubit_supersinglet_capped(n, &caps)? })
        }
        Family::Pair => {
            if args.n.is_some_and(|n| n != 2) {
                return Err(Error::InvalidInput("the pair family has N = 2".into()));
            }
            Ok(Built { family: "pair", state: make_pair_singlet(args.d.unwrap_or(2))? })
        }
    }
}

pub(super) fn state(ctx: &Ctx, args: &StateArgs) -> Result<Report> {
    let Built { family, state } = build(ctx, args)?;
    let mut table = Table::new(vec!["index", "digits", "re", "im"]);
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm() > 0.0 {
            table.push(vec![
                i.to_string(),
                joined(&state.digits_of(i)),
                num(a.re),
                num(a.im),
            ]);
        }
    }
    let summary = format!(
        "{family} state: N={} d={}, {} nonzero amplitudes, norm² = {}",
        state.num_sites(),
        state.local_dim(),
        table.rows.len(),
        state.norm_sqr()
    );
    let json = envelope(
        "state",
        ctx.seed,
        json!({
            "family": family,
            "N": state.num_sites(),
            "d": state.local_dim(),
            "state": state,
        }),
    );
    Ok(Report { json, table: Some(table), summary })
}

fn draw(group: Group, d: usize, rng: &mut SeededRng) -> LocalOperator {
    match group {
        Group::Unitary => random_unitary(d, rng),
        Group::Special => random_special_unitary(d, rng),
        Group::Rotation => random_rotation(d, rng),
    }
}

pub(super) fn invariance(
    ctx: &Ctx,
    args: &StateArgs,
    trials: usize,
    group: Option<Group>,
    tol: f64,
) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let Built { family, state } = build(ctx, args)?;
    let group = group.unwrap_or(if family == "pair" { Group::Rotation } else { Group::Unitary });
    let results = ctx.rng().batch(trials, |_, rng| {
        let u = draw(group, state.local_dim(), rng);
        invariance_check(&state, &u)
    });
    let mut table = Table::new(vec!["trial", "deviation", "phase"]);
    let mut rows = Vec::with_capacity(trials);
    let mut worst = 0.0f64;
    for (k, r) in results.into_iter().enumerate() {
        let r = r?;
        worst = worst.max(r.deviation);
        let phase = r.overlap.arg();
        table.push(vec![k.to_string(), num(r.deviation), num(phase)]);
        rows.push(json!({"trial": k, "deviation": r.deviation, "phase": phase}));
    }
    let pass = worst < tol;
    let group_name = format!("{group:?}").to_lowercase();
    let summary = format!(
        "{family} N={} d={}: max deviation {worst:e} over {trials} {group_name} draws ({})",
        state.num_sites(),
        state.local_dim(),
        if pass { "invariant" } else { "NOT invariant" }
    );
    let json = envelope(
        "invariance",
        ctx.seed,
        json!({
            "family": family,
            "N": state.num_sites(),
            "d": state.local_dim(),
            "group": group_name,
            "trials": trials,
            "tolerance": tol,
            "max_deviation": worst,
            "pass": pass,
            "results": rows,
        }),
    );
    Ok(Report { json, table: Some(table), summary })
}

pub(super) fn sample(
    ctx: &Ctx,
    args: &StateArgs,
    trials: usize,
    direction: Option<(f64, f64)>,
) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let Built { family, state } = build(ctx, args)?;
    let mut rng = ctx.rng();
    let direction = match direction {
        Some((theta, phi)) if theta.is_finite() && phi.is_finite() => Direction::new(theta, phi),
        Some(_) => return Err(Error::InvalidInput("direction angles must be finite".into())),
        None => Direction::random(&mut rng),
    };
    let sampler = JointSampler::new(&state, direction)?;
    let mut counts = vec![0u64; sampler.distribution().probabilities().len()];
    let mut table = Table::new(vec!["sample", "outcomes"]);
    let mut records = Vec::with_capacity(trials);
    let mut violations = 0usize;
    for k in 0..trials {
        let idx = sampler.sample_index(&mut rng);
        counts[idx] += 1;
        let outcomes = sampler.distribution().digits_of(idx);
        let record = supersinglet_core::measurement::OutcomeRecord { direction, outcomes };
        if family == "nn" && !record.is_permutation() {
            violations += 1;
        }
        table.push(vec![k.to_string(), joined(&record.outcomes)]);
        records.push(record);
    }
    let test = chi_square_gof(&counts, sampler.distribution().probabilities())?;
    let summary = format!(
        "{trials} samples of {family} N={} along (θ={:.6}, φ={:.6}); χ² p-value {:.4}",
        state.num_sites(),
        direction.theta,
        direction.phi,
        test.p_value
    );
    let mut body = json!({
        "family": family,
        "N": state.num_sites(),
        "d": state.local_dim(),
        "direction": direction,
        "samples": trials,
        "chi_square": test,
        "records": records,
    });
    if family == "nn" {
        body["permutation_violations"] = json!(violations);
    }
    Ok(Report { json: envelope("sample", ctx.seed, body), table: Some(table), summary })
}
