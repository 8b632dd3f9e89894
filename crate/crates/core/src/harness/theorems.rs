//! Desk checks replaying the three characterization results on concrete
//! games: the core passes every axiom in each theorem's list, the
//! containment lemmas hold contrapositively for the built-in non-core
//! solutions, and the perturbation constructions behave exactly as the
//! proofs claim.

use std::time::{Duration, Instant};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::axioms::{
    check_am, check_cssc, check_irec, check_nespg, check_po, check_ssc, check_wispc, check_wsc,
    wc_probe, AxiomId, AxiomReport, Solution, Verdict, Witness,
};
use crate::game::{Coalition, NTUGame, PayoffVector, PlayerId};
use crate::predicates;
use crate::rational::{format_rational, rat_int, Rational};
use crate::reductions::{epsilon_sequence, epsilon_x_game, ws_reduced, x_epsilon, Epsilon};
use crate::region::{core_region, hausdorff_linf, ir_region, Region};

use super::gen::impoverish;
use super::io::game_to_json;
use super::HarnessError;

/// One verified claim of a theorem check.
#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub id: String,
    pub passed: bool,
    pub details: String,
    /// Everything needed to replay a failed claim.
    pub bundle: Option<Value>,
}

impl ClaimResult {
    fn pass(id: &str, details: impl Into<String>) -> ClaimResult {
        ClaimResult {
            id: id.to_string(),
            passed: true,
            details: details.into(),
            bundle: None,
        }
    }

    fn fail(id: &str, details: impl Into<String>, bundle: Value) -> ClaimResult {
        ClaimResult {
            id: id.to_string(),
            passed: false,
            details: details.into(),
            bundle: Some(bundle),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremCheckResult {
    pub theorem: u8,
    pub claims: Vec<ClaimResult>,
    pub elapsed: Duration,
}

impl TheoremCheckResult {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

fn bundle(game: &NTUGame, inputs: Value) -> Value {
    json!({ "game": game_to_json(game), "inputs": inputs })
}

/// The axiom list of the first characterization: PO, NESPG, SSC and CSSC
/// hold for the core on the game and all its subgames; any built-in
/// solution exceeding the core fails PO or SSC; and every core point
/// passes the converse-consistency premise on every reduced game.
pub fn check_theorem1(game: &NTUGame) -> TheoremCheckResult {
    let start = Instant::now();
    let core = Solution::core();
    let mut claims = Vec::new();

    let mut failures = Vec::new();
    for t in game.players().nonempty_subsets() {
        let sub = game.subgame(t).expect("subset of players");
        for report in [
            check_po(&core, &sub),
            check_nespg(&core, &sub),
            check_ssc(&core, &sub),
            check_cssc(&core, &sub),
        ] {
            if report.is_violated() {
                failures.push(format!("subgame {t}: {report}"));
            }
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "core-axioms-on-subgames",
            "po, nespg, ssc, cssc hold for the core on every subgame",
        )
    } else {
        ClaimResult::fail(
            "core-axioms-on-subgames",
            failures.join("; "),
            bundle(game, json!({})),
        )
    });

    let core_r = core_region(game);
    let mut failures = Vec::new();
    for sol in [
        Solution::pareto(),
        Solution::ir(),
        Solution::ir_pareto(),
        Solution::feasible(),
    ] {
        let sr = sol.evaluate(game);
        if sr.is_subset_of(&core_r).expect("same players") {
            continue;
        }
        let po = check_po(&sol, game);
        let ssc = check_ssc(&sol, game);
        if !po.is_violated() && !ssc.is_violated() {
            failures.push(format!(
                "{} exceeds the core yet passes both po and ssc",
                sol.name()
            ));
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "containment-contrapositive",
            "every built-in exceeding the core fails po or ssc",
        )
    } else {
        ClaimResult::fail(
            "containment-contrapositive",
            failures.join("; "),
            bundle(game, json!({})),
        )
    });

    let mut failures = Vec::new();
    for x in core_r.sample_points() {
        for s in game.players().proper_nonempty_subsets() {
            let reduced =
                crate::reductions::ss_reduced(game, s, &x).expect("core points are Pareto");
            let xs = x.restrict(s).expect("subset");
            if !core_region(&reduced)
                .contains_point(&xs)
                .expect("same players")
            {
                failures.push(format!("x={x} S={s}"));
            }
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "core-points-reduce-into-cores",
            "every sampled core point restricts into the core of every reduced game",
        )
    } else {
        ClaimResult::fail(
            "core-points-reduce-into-cores",
            failures.join("; "),
            bundle(game, json!({})),
        )
    });

    TheoremCheckResult {
        theorem: 1,
        claims,
        elapsed: start.elapsed(),
    }
}

/// The perturbation construction of the second characterization, verified
/// with the core in the solution seat.
pub fn check_theorem2(
    game: &NTUGame,
    x: &PayoffVector,
    eps: &Epsilon,
) -> Result<TheoremCheckResult, HarnessError> {
    if !predicates::in_core(game, x) {
        return Err(HarnessError::NotInCore);
    }
    let start = Instant::now();
    let inputs = json!({
        "x": payoff_values(x),
        "eps": format_rational(eps.value()),
    });
    let mut claims = Vec::new();

    let perturbed = epsilon_x_game(game, x, eps)?;
    let raised = x_epsilon(x, eps);

    let mut failures = Vec::new();
    let n = game.players().len();
    for s in game.players().proper_nonempty_subsets() {
        if s.len() <= 1 || s.len() >= n {
            continue;
        }
        let sub = perturbed.subgame(s).expect("subset");
        if !core_region(&sub).is_empty() {
            failures.push(format!("subgame on {s} has a nonempty core"));
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "intermediate-subgame-cores-empty",
            "all perturbed subgames between singletons and the grand coalition have empty cores",
        )
    } else {
        ClaimResult::fail(
            "intermediate-subgame-cores-empty",
            failures.join("; "),
            bundle(game, inputs.clone()),
        )
    });

    let core_perturbed = core_region(&perturbed);
    let singleton = Region::point(&raised);
    claims.push(if core_perturbed == singleton {
        ClaimResult::pass(
            "perturbed-core-is-the-raised-point",
            format!("core of the singleton-raised game is exactly {{{raised}}}"),
        )
    } else {
        ClaimResult::fail(
            "perturbed-core-is-the-raised-point",
            format!("expected {{{raised}}}, got {core_perturbed}"),
            bundle(game, inputs.clone()),
        )
    });

    let eps_game = crate::reductions::epsilon_game(game, x, eps)?;
    claims.push(
        if core_region(&eps_game)
            .contains_point(&raised)
            .expect("same players")
        {
            ClaimResult::pass(
                "raised-point-in-epsilon-core",
                "the raised point stays in the core of the epsilon game",
            )
        } else {
            ClaimResult::fail(
                "raised-point-in-epsilon-core",
                format!("{raised} is not in the core of the epsilon game"),
                bundle(game, inputs.clone()),
            )
        },
    );

    claims.push(check_wc_sequence(game, x, eps, &inputs)?);

    Ok(TheoremCheckResult {
        theorem: 2,
        claims,
        elapsed: start.elapsed(),
    })
}

fn check_wc_sequence(
    game: &NTUGame,
    x: &PayoffVector,
    eps: &Epsilon,
    inputs: &Value,
) -> Result<ClaimResult, HarnessError> {
    let seq = epsilon_sequence(game, x, eps, 6)?;
    let n = rat_int(game.players().len() as i64);
    let mut last: Option<Rational> = None;
    let mut eps_j = eps.value().clone();
    for (j, (game_j, _)) in seq.iter().enumerate() {
        let d = hausdorff_linf(game_j, game).expect("same players");
        if d <= Rational::zero() {
            return Ok(ClaimResult::fail(
                "wc-sequence",
                format!("distance at step {j} is not positive"),
                bundle(game, inputs.clone()),
            ));
        }
        if d > &eps_j / &n {
            return Ok(ClaimResult::fail(
                "wc-sequence",
                format!("distance at step {j} exceeds eps_j/|N|"),
                bundle(game, inputs.clone()),
            ));
        }
        if let Some(prev) = &last {
            if d > *prev {
                return Ok(ClaimResult::fail(
                    "wc-sequence",
                    format!("distance increases at step {j}"),
                    bundle(game, inputs.clone()),
                ));
            }
        }
        last = Some(d);
        eps_j = &eps_j / rat_int(2);
    }
    let probe = wc_probe(&seq, game, x, &Solution::core())?;
    Ok(match probe.verdict {
        Verdict::Pass => ClaimResult::pass(
            "wc-sequence",
            "halving sequence contracts and the probe accepts the limit",
        ),
        _ => ClaimResult::fail(
            "wc-sequence",
            format!("probe did not pass: {probe}"),
            bundle(game, inputs.clone()),
        ),
    })
}

/// How a containment replay ended.
#[derive(Clone, Debug)]
pub enum ReplayOutcome {
    /// The solution stays inside the individually rational set; there is
    /// nothing to replay.
    NoNonIrPoints,
    /// The replay produced a concrete axiom violation.
    Violation(ReplayViolation),
    /// The replay chain broke down; this indicates a checker bug.
    Inconsistent(String),
}

#[derive(Clone, Debug)]
pub struct ReplayViolation {
    pub axiom: AxiomId,
    pub report: AxiomReport,
    /// The game the violating report was produced on (the original game,
    /// a weak-secession reduction, or a singleton subgame).
    pub game: NTUGame,
    /// Which stage of the replay the violation lives on.
    pub context: String,
}

/// Replays the individual-rationality containment argument against a
/// solution holding a non-IR point: pick such a point, weak-secession
/// reduce onto a pair containing the underpaid player when needed, and
/// corner the solution into a PO, IREC, WSC or WISPC violation.
pub fn lemma31_replay(sol: &Solution, game: &NTUGame) -> ReplayOutcome {
    let non_ir = sol
        .evaluate(game)
        .difference(&ir_region(game))
        .expect("same players");
    if non_ir.is_empty() {
        return ReplayOutcome::NoNonIrPoints;
    }

    let po = check_po(sol, game);
    if po.is_violated() {
        return ReplayOutcome::Violation(ReplayViolation {
            axiom: AxiomId::Po,
            report: po,
            game: game.clone(),
            context: "original game".to_string(),
        });
    }

    let Some(x) = non_ir.sample_points().into_iter().next() else {
        return ReplayOutcome::Inconsistent("nonempty region yielded no samples".to_string());
    };
    let b = game.b_vector();
    let Some(underpaid) = game
        .players()
        .members()
        .find(|p| x.get(*p).expect("member") < b.get(*p).expect("member"))
    else {
        return ReplayOutcome::Inconsistent(format!(
            "sampled non-IR point {x} has no underpaid player"
        ));
    };

    let (stage, point) = if game.num_players() == 2 {
        (game.clone(), x.clone())
    } else {
        let partner = game
            .players()
            .members()
            .find(|p| *p != underpaid)
            .expect("at least two players");
        let pair = Coalition::singleton(underpaid).union(Coalition::singleton(partner));
        // PO passed, so the sampled solution point is efficient and the
        // reduction precondition holds.
        let reduced = match ws_reduced(game, pair, &x) {
            Ok(r) => r,
            Err(e) => return ReplayOutcome::Inconsistent(format!("reduction failed: {e}")),
        };
        let xs = x.restrict(pair).expect("subset");
        if !sol
            .evaluate(&reduced)
            .contains_point(&xs)
            .expect("same players")
        {
            return ReplayOutcome::Violation(ReplayViolation {
                axiom: AxiomId::Wsc,
                report: AxiomReport {
                    axiom: AxiomId::Wsc,
                    verdict: Verdict::Violated,
                    witness: Some(Witness::ReducedMembership { x, s: pair }),
                    notes: vec!["containment replay".to_string()],
                },
                game: game.clone(),
                context: "original game".to_string(),
            });
        }
        (reduced, xs)
    };

    replay_on_pair(sol, &stage, &point, underpaid)
}

fn replay_on_pair(
    sol: &Solution,
    game: &NTUGame,
    x: &PayoffVector,
    underpaid: PlayerId,
) -> ReplayOutcome {
    debug_assert_eq!(game.num_players(), 2);
    let singleton = Coalition::singleton(underpaid);
    let sub = game.subgame(singleton).expect("member of the pair");

    let po = check_po(sol, &sub);
    if po.is_violated() {
        return ReplayOutcome::Violation(ReplayViolation {
            axiom: AxiomId::Po,
            report: po,
            game: sub.clone(),
            context: format!("single-player subgame on {singleton}"),
        });
    }
    if sol.evaluate(&sub).is_empty() {
        let irec = check_irec(sol, &sub);
        if irec.is_violated() {
            return ReplayOutcome::Violation(ReplayViolation {
                axiom: AxiomId::Irec,
                report: irec,
                game: sub.clone(),
                context: format!("single-player subgame on {singleton}"),
            });
        }
        return ReplayOutcome::Inconsistent(
            "empty singleton solution did not violate irec".to_string(),
        );
    }
    // The singleton solution is nonempty and efficient, hence exactly the
    // singleton maximum; the underpaid agreement now gaps it.
    let wispc = check_wispc(sol, game);
    if wispc.is_violated() {
        return ReplayOutcome::Violation(ReplayViolation {
            axiom: AxiomId::Wispc,
            report: wispc,
            game: game.clone(),
            context: "pair game".to_string(),
        });
    }
    ReplayOutcome::Inconsistent(format!(
        "agreement {x} underpays {underpaid} yet wispc passed on the pair"
    ))
}

/// The axiom list of the third characterization: PO, IREC, WSC, WISPC on
/// the game and all subgames, AM on impoverishment pairs, the containment
/// replay against every built-in exceeding the IR set, and the same
/// perturbation machinery as the second theorem.
pub fn check_theorem3(
    game: &NTUGame,
    x: &PayoffVector,
    eps: &Epsilon,
) -> Result<TheoremCheckResult, HarnessError> {
    if !predicates::in_core(game, x) {
        return Err(HarnessError::NotInCore);
    }
    let start = Instant::now();
    let core = Solution::core();
    let inputs = json!({
        "x": payoff_values(x),
        "eps": format_rational(eps.value()),
    });
    let mut claims = Vec::new();

    let mut failures = Vec::new();
    for t in game.players().nonempty_subsets() {
        let sub = game.subgame(t).expect("subset");
        for report in [
            check_po(&core, &sub),
            check_irec(&core, &sub),
            check_wsc(&core, &sub),
            check_wispc(&core, &sub),
        ] {
            if report.is_violated() {
                failures.push(format!("subgame {t}: {report}"));
            }
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "core-axioms-on-subgames",
            "po, irec, wsc, wispc hold for the core on every subgame",
        )
    } else {
        ClaimResult::fail(
            "core-axioms-on-subgames",
            failures.join("; "),
            bundle(game, inputs.clone()),
        )
    });

    let mut failures = Vec::new();
    for k in 0..2u64 {
        let poorer = impoverish(game, 0x5EED_A110 ^ k);
        let report = check_am(&core, game, &poorer);
        if report.is_violated() {
            failures.push(format!("pair {k}: {report}"));
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass("core-antimonotonicity", "am holds on impoverishment pairs")
    } else {
        ClaimResult::fail(
            "core-antimonotonicity",
            failures.join("; "),
            bundle(game, inputs.clone()),
        )
    });

    let ir = ir_region(game);
    let mut failures = Vec::new();
    for sol in [
        Solution::pareto(),
        Solution::ir(),
        Solution::ir_pareto(),
        Solution::feasible(),
    ] {
        if sol
            .evaluate(game)
            .is_subset_of(&ir)
            .expect("same players")
        {
            continue;
        }
        match lemma31_replay(&sol, game) {
            ReplayOutcome::Violation(v) => {
                if !matches!(
                    v.axiom,
                    AxiomId::Po | AxiomId::Irec | AxiomId::Wsc | AxiomId::Wispc
                ) {
                    failures.push(format!("{}: unexpected axiom {}", sol.name(), v.axiom));
                }
            }
            ReplayOutcome::NoNonIrPoints => {
                failures.push(format!(
                    "{} exceeds the IR set but the replay found no witness",
                    sol.name()
                ));
            }
            ReplayOutcome::Inconsistent(msg) => {
                failures.push(format!("{}: {msg}", sol.name()));
            }
        }
    }
    claims.push(if failures.is_empty() {
        ClaimResult::pass(
            "ir-containment-replay",
            "every built-in exceeding the IR set fails po, irec, wsc or wispc",
        )
    } else {
        ClaimResult::fail(
            "ir-containment-replay",
            failures.join("; "),
            bundle(game, inputs.clone()),
        )
    });

    let construction = check_theorem2(game, x, eps)?;
    for mut claim in construction.claims {
        claim.id = format!("containment-machinery/{}", claim.id);
        claims.push(claim);
    }

    Ok(TheoremCheckResult {
        theorem: 3,
        claims,
        elapsed: start.elapsed(),
    })
}

fn payoff_values(x: &PayoffVector) -> Value {
    Value::Array(
        x.values()
            .iter()
            .map(|v| Value::String(format_rational(v)))
            .collect(),
    )
}

/// A solution that is the core plus one planted non-IR efficient point of
/// `game` (restricted to subgames and reduced games with at least two
/// players, where it stays feasible). Returns the solution and the planted
/// point; `None` for single-player games.
///
/// The planted point pins the first player to the highest first coordinate
/// any grand generator reaches, so it is efficient, and underpays some
/// other player by a unit below both its generator bound and its singleton
/// maximum.
pub fn planted_solution(game: &NTUGame) -> Option<(Solution, PayoffVector)> {
    if game.num_players() < 2 {
        return None;
    }
    let players = game.players();
    let first = players.members().next().expect("nonempty");
    let second = players
        .members()
        .find(|p| *p != first)
        .expect("two players");
    let pinned = game
        .grand_generators()
        .generators()
        .iter()
        .max_by(|a, b| {
            a.get(first)
                .expect("member")
                .cmp(b.get(first).expect("member"))
                .then_with(|| a.cmp(b))
        })
        .expect("nonempty generator set")
        .clone();
    let b = game.b_vector();
    let values: Vec<Rational> = players
        .members()
        .map(|p| {
            let cap = pinned.get(p).expect("member").clone();
            if p == second {
                let floor = cap.min(b.get(p).expect("member").clone());
                floor - rat_int(1)
            } else {
                cap
            }
        })
        .collect();
    let planted = PayoffVector::new(players, values).expect("dimension matches");
    debug_assert!(predicates::is_pareto(game, &planted));
    debug_assert!(!predicates::is_individually_rational(game, &planted));

    let point = planted.clone();
    let sol = Solution::from_fn("core-planted", move |h| {
        let mut region = core_region(h);
        if h.num_players() >= 2 && h.players().is_subset_of(point.coalition()) {
            let restricted = point.restrict(h.players()).expect("subset");
            if h.grand_generators().hull_contains(&restricted) {
                region = region
                    .union(&Region::point(&restricted))
                    .expect("same players");
            }
        }
        region
    });
    Some((sol, planted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{random_game, GenConfig};
    use crate::rational::rat;
    use crate::testutil::{game_a, pv};

    #[test]
    fn theorem1_on_game_a() {
        let r = check_theorem1(&game_a());
        assert!(r.passed(), "{:?}", r.claims);
    }

    #[test]
    fn theorem1_on_single_player_game() {
        let g = crate::game::NTUGame::from_rows(&[0], &[(&[0], &[&[rat(5, 1)]])]).unwrap();
        let r = check_theorem1(&g);
        assert!(r.passed(), "{:?}", r.claims);
    }

    #[test]
    fn theorem2_on_game_a() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat(1, 1), rat(1, 1)]);
        let eps = Epsilon::new(rat(1, 1)).unwrap();
        let r = check_theorem2(&g, &x, &eps).unwrap();
        assert!(r.passed(), "{:?}", r.claims);
    }

    #[test]
    fn theorem2_rejects_non_core_point() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat(0, 1), rat(0, 1)]);
        let eps = Epsilon::new(rat(1, 1)).unwrap();
        assert!(matches!(
            check_theorem2(&g, &x, &eps),
            Err(HarnessError::NotInCore)
        ));
    }

    #[test]
    fn theorem3_on_game_a() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat(1, 1), rat(1, 1)]);
        let eps = Epsilon::new(rat(1, 2)).unwrap();
        let r = check_theorem3(&g, &x, &eps).unwrap();
        assert!(r.passed(), "{:?}", r.claims);
    }

    #[test]
    fn replay_finds_wispc_for_pareto_on_game_a() {
        let outcome = lemma31_replay(&Solution::pareto(), &game_a());
        let ReplayOutcome::Violation(v) = outcome else {
            panic!("expected a violation, got {outcome:?}");
        };
        assert_eq!(v.axiom, AxiomId::Wispc);
    }

    #[test]
    fn replay_skips_ir_solutions() {
        assert!(matches!(
            lemma31_replay(&Solution::ir(), &game_a()),
            ReplayOutcome::NoNonIrPoints
        ));
    }

    #[test]
    fn replay_finds_po_for_feasible() {
        let ReplayOutcome::Violation(v) = lemma31_replay(&Solution::feasible(), &game_a()) else {
            panic!("expected a violation");
        };
        assert_eq!(v.axiom, AxiomId::Po);
    }

    #[test]
    fn planted_solution_violates_wispc_via_replay() {
        let g = game_a();
        let (sol, planted) = planted_solution(&g).unwrap();
        assert!(crate::predicates::is_pareto(&g, &planted));
        assert!(!crate::predicates::is_individually_rational(&g, &planted));
        let ReplayOutcome::Violation(v) = lemma31_replay(&sol, &g) else {
            panic!("expected a violation");
        };
        assert_eq!(v.axiom, AxiomId::Wispc);
    }

    #[test]
    fn planted_solution_on_three_players_reduces_then_violates() {
        let g = random_game(&GenConfig::new(11, 3)).unwrap();
        let (sol, planted) = planted_solution(&g).unwrap();
        assert!(crate::predicates::is_pareto(&g, &planted));
        assert!(!crate::predicates::is_individually_rational(&g, &planted));
        let ReplayOutcome::Violation(v) = lemma31_replay(&sol, &g) else {
            panic!("expected a violation");
        };
        assert_eq!(v.axiom, AxiomId::Wispc, "{:?}", v.report);
    }

    #[test]
    fn planted_none_for_single_player() {
        let g = crate::game::NTUGame::from_rows(&[0], &[(&[0], &[&[rat(5, 1)]])]).unwrap();
        assert!(planted_solution(&g).is_none());
    }

    #[test]
    fn wispc_witness_revalidates_on_pair() {
        // The criterion-7 shape at |N| = 2: check_wispc directly reports a
        // re-checkable pair.
        let g = game_a();
        let (sol, _) = planted_solution(&g).unwrap();
        let report = check_wispc(&sol, &g);
        assert!(report.is_violated());
        let Some(Witness::ProximalGap { s, x, y }) = &report.witness else {
            panic!("expected a proximal gap");
        };
        let max_x = s.members().map(|p| x.get(p).unwrap()).max().unwrap();
        let min_y = s.members().map(|p| y.get(p).unwrap()).min().unwrap();
        assert!(max_x < min_y);
        assert!(sol
            .evaluate(&g)
            .contains_point(x)
            .unwrap());
        let sub = g.subgame(*s).unwrap();
        assert!(sol.evaluate(&sub).contains_point(y).unwrap());
    }
}
