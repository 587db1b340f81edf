mod bell;
mod df;
mod protocols;
mod states;

use supersinglet_core::{Caps, Result, SeededRng};

use crate::cli::{Command, Common};
use crate::output::Report;

/// Settings shared by every command.
pub struct Ctx {
    pub seed: u64,
    pub cap: Option<usize>,
}

impl Ctx {
    pub fn rng(&self) -> SeededRng {
        SeededRng::new(self.seed)
    }

    /// Default caps with the override, if any, applied to the fields `pick` selects.
    pub fn caps(&self, pick: impl Fn(&mut Caps) -> &mut usize) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = self.cap {
            *pick(&mut caps) = c;
        }
        caps
    }
}

pub fn run(command: &Command, common: &Common) -> Result<Report> {
    let ctx = Ctx {
        seed: common.seed,
        cap: common.cap,
    };
    match command {
        Command::State(args) => states::state(&ctx, args),
        Command::Invariance { state, trials, group, tol } => {
            states::invariance(&ctx, state, *trials, *group, *tol)
        }
        Command::Sample { state, trials, theta, phi } => {
            states::sample(&ctx, state, *trials, theta.zip(*phi))
        }
        Command::Table { n, l, source } => protocols::table(&ctx, *n, *l, *source),
        Command::BellMax { n, m, model } => bell::bell_max(&ctx, n, m, *model),
        Command::CorrCheck { n, m, trials, tol } => bell::corr_check(&ctx, n, m, *trials, *tol),
        Command::Nsp { n, l, source } => protocols::nsp(&ctx, *n, *l, *source),
        Command::Ssp { n, l, dishonest, order, source } => {
            protocols::ssp(&ctx, *n, *l, dishonest, *order, *source)
        }
        Command::Ldp { liar, l, trials, message, inject, sigmas, source } => protocols::ldp(
            &ctx,
            protocols::LdpArgs {
                liar: *liar,
                l: *l,
                trials: *trials,
                message: *message,
                inject: *inject,
                sigmas: *sigmas,
                source: *source,
            },
        ),
        Command::Dtest { n, l, test_fraction, tamper, trials, source } => {
            protocols::dtest(&ctx, *n, *l, *test_fraction, *tamper, *trials, *source)
        }
        Command::Df { n } => df::df(&ctx, n),
    }
}
