//! Counterexample search: run axiom checkers over batches of seeded random
//! games and collect violations with reproduction bundles.

use serde_json::json;

use crate::axioms::{
    check_cssc, check_irec, check_nespg, check_po, check_ssc, check_wispc, check_wsc, wc_probe,
    AxiomId, AxiomReport, Solution,
};
use crate::game::NTUGame;
use crate::rational::rat_int;
use crate::reductions::{epsilon_sequence, Epsilon};

use super::gen::{impoverish, random_game, GenConfig};
use super::io::game_to_json;
use super::HarnessError;

#[derive(Clone, Debug)]
pub struct ViolationRecord {
    pub trial: u32,
    pub seed: u64,
    pub axiom: AxiomId,
    pub report: AxiomReport,
    pub game: NTUGame,
    /// The impoverished partner when the violated axiom needed one.
    pub partner: Option<NTUGame>,
}

impl ViolationRecord {
    /// Everything needed to replay this violation without the generator.
    pub fn bundle(&self) -> serde_json::Value {
        json!({
            "trial": self.trial,
            "seed": self.seed,
            "axiom": self.axiom.name(),
            "game": game_to_json(&self.game),
            "partner": self.partner.as_ref().map(game_to_json),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub trials: u32,
    pub checks_run: u32,
    pub violations: Vec<ViolationRecord>,
}

impl SearchOutcome {
    pub fn found_violation(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// The seed of one search trial: a fixed odd stride over the base seed
/// keeps the stream deterministic and collision-free, and lets reports be
/// replayed trial by trial.
pub fn trial_seed(base: u64, trial: u32) -> u64 {
    base.wrapping_add(u64::from(trial).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs one axiom checker against one game, constructing the partner
/// artifacts some axioms need: an impoverishment pair for
/// antimonotonicity, a halving perturbation sequence seeded at a sampled
/// solution point for the continuity probe.
pub fn check_axiom_on_game(
    sol: &Solution,
    axiom: AxiomId,
    game: &NTUGame,
    seed: u64,
) -> Result<(AxiomReport, Option<NTUGame>), HarnessError> {
    Ok(match axiom {
        AxiomId::Po => (check_po(sol, game), None),
        AxiomId::Nespg => (check_nespg(sol, game), None),
        AxiomId::Irec => (check_irec(sol, game), None),
        AxiomId::Ssc => (check_ssc(sol, game), None),
        AxiomId::Cssc => (check_cssc(sol, game), None),
        AxiomId::Wsc => (check_wsc(sol, game), None),
        AxiomId::Wispc => (check_wispc(sol, game), None),
        AxiomId::Am => {
            let partner = impoverish(game, seed ^ AM_PARTNER_SALT);
            let report = crate::axioms::check_am(sol, game, &partner);
            (report, Some(partner))
        }
        AxiomId::Wc => {
            let points = sol.evaluate(game).sample_points();
            match points.into_iter().next() {
                None => (
                    AxiomReport {
                        axiom: AxiomId::Wc,
                        verdict: crate::axioms::Verdict::NotApplicable,
                        witness: None,
                        notes: vec!["solution empty, no sequence to probe".to_string()],
                    },
                    None,
                ),
                Some(x) => {
                    let eps = Epsilon::new(rat_int(1)).expect("positive");
                    let seq = epsilon_sequence(game, &x, &eps, 4)?;
                    (wc_probe(&seq, game, &x, sol)?, None)
                }
            }
        }
    })
}

/// Decorrelates the impoverishment draw from the game draw.
const AM_PARTNER_SALT: u64 = 0xA11D_0011_D011_A5E5;

/// Draws `trials` seeded games and runs the requested axiom checkers on
/// each, recording every violation with a replayable bundle. Deterministic
/// in the configuration seed.
pub fn counterexample_search(
    sol: &Solution,
    axioms: &[AxiomId],
    cfg: &GenConfig,
    trials: u32,
) -> Result<SearchOutcome, HarnessError> {
    cfg.validate()?;
    let mut outcome = SearchOutcome::default();
    for trial in 0..trials {
        let seed = trial_seed(cfg.seed, trial);
        let game = random_game(&cfg.clone().with_seed(seed))?;
        for &axiom in axioms {
            let (report, partner) = check_axiom_on_game(sol, axiom, &game, seed)?;
            outcome.checks_run += 1;
            if report.is_violated() {
                outcome.violations.push(ViolationRecord {
                    trial,
                    seed,
                    axiom,
                    report,
                    game: game.clone(),
                    partner,
                });
            }
        }
        outcome.trials += 1;
    }
    Ok(outcome)
}
